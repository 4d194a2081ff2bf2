#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ltrsyn/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ltrsyn: weighting-augmented loop-recovery compensator design"};
    app.require_subcommand(1);

    ltr::cli::CommonOptions opt;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "design configuration (JSON)")
            ->required();
        cmd->add_option("--out", opt.out_dir, "output directory (overrides config)");
        cmd->add_option("--rho", opt.rho_override, "recovery parameter: 'auto' or a value");
    };

    CLI::App* design = app.add_subcommand("design", "solve one bound combination");
    add_common(design);

    CLI::App* sweep = app.add_subcommand("sweep", "solve every bound-grid combination");
    add_common(sweep);
    sweep->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1, 64));

    CLI::App* analyze = app.add_subcommand("analyze", "frequency/time-domain curves");
    add_common(analyze);
    analyze->add_option("--design", opt.design_path, "prior solution.csv to analyze");
    analyze->add_option("--grid-ppd", opt.grid_ppd, "curve points per decade")
        ->check(CLI::Range(2, 5000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? ltr::cli::kExitUsage : ltr::cli::kExitOk;
    }

    try {
        if (design->parsed())
            return ltr::cli::run_design(opt);
        if (sweep->parsed())
            return ltr::cli::run_sweep(opt);
        if (analyze->parsed())
            return ltr::cli::run_analyze(opt);
        std::cerr << "no subcommand given\n";
        return ltr::cli::kExitUsage;
    } catch (const ltr::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return ltr::cli::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return ltr::cli::kExitUsage;
    } catch (const ltr::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return ltr::cli::kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ltr::cli::kExitNumerical;
    }
}
