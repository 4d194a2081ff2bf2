#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ltrsyn/analysis.hpp"
#include "ltrsyn/csv.hpp"
#include "ltrsyn/errors.hpp"
#include "ltrsyn/lqg.hpp"
#include "ltrsyn/spec_solver.hpp"

namespace ltr::cli {

namespace {

namespace fs = std::filesystem;

struct ResolvedTaus {
    double tau11 = 0.0, tau12 = 0.0, tau21 = 0.0, tau22 = 0.0;
    bool from_solver = false;
    DesignOutcome outcome;  // populated when from_solver
    std::optional<double> rho_from_artifact;
};

DesignConfig load_with_overrides(const CommonOptions& opt) {
    DesignConfig cfg = load_config(opt.config_path);
    if (opt.out_dir)
        cfg.output_dir = *opt.out_dir;
    if (opt.rho_override) {
        if (*opt.rho_override == "auto") {
            cfg.rho.automatic = true;
        } else {
            try {
                cfg.rho.fixed_value = std::stod(*opt.rho_override);
            } catch (const std::exception&) {
                throw ConfigError("--rho expects 'auto' or a number");
            }
            if (!(cfg.rho.fixed_value > 0.0))
                throw ConfigError("--rho must be positive");
            cfg.rho.automatic = false;
        }
    }
    return cfg;
}

std::string fmt(double v) { return format_number(v); }

bool taus_valid(const DesignConfig& cfg, double omega0, const ResolvedTaus& t) {
    const bool lag_ok = 0.0 < t.tau22 && t.tau22 <= t.tau21 * (1.0 + 1e-12) && t.tau21 < omega0;
    const bool lead_ok = omega0 < t.tau11 && t.tau11 <= t.tau12 * (1.0 + 1e-12);
    (void)cfg;
    return lag_ok && lead_ok;
}

// solution.csv is read back by `analyze`, so its numbers are stored with
// round-trip-exact precision
void write_solution_csv(const fs::path& dir, const ResolvedTaus& t, bool valid,
                        double omega0, double rho, double gap_db,
                        const std::string& reason) {
    CsvWriter csv((dir / "solution.csv").string(),
                  {"tau11", "tau12", "tau21", "tau22", "valid", "res_low1", "res_low2",
                   "res_high1", "res_high2", "omega0", "rho", "recovery_gap_db", "reason"});
    std::array<double, 4> res{0.0, 0.0, 0.0, 0.0};
    if (t.from_solver) {
        res = {t.outcome.lag.relative_residuals[0], t.outcome.lag.relative_residuals[1],
               t.outcome.lead.relative_residuals[0], t.outcome.lead.relative_residuals[1]};
    }
    std::string clean = reason;
    for (char& c : clean)
        if (c == ',')
            c = ';';
    csv.row({format_exact(t.tau11), format_exact(t.tau12), format_exact(t.tau21),
             format_exact(t.tau22), valid ? "1" : "0", format_exact(res[0]),
             format_exact(res[1]), format_exact(res[2]), format_exact(res[3]),
             format_exact(omega0), format_exact(rho), format_exact(gap_db), clean});
}

void write_compensator_csv(const fs::path& dir, const StateSpaceModel& K) {
    CsvWriter csv((dir / "compensator.csv").string(), {"block", "i", "j", "value"});
    const auto emit = [&](const char* name, const Eigen::MatrixXd& M) {
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            for (Eigen::Index j = 0; j < M.cols(); ++j)
                csv.row({name, std::to_string(i), std::to_string(j), format_exact(M(i, j))});
    };
    emit("A", K.A);
    emit("B", K.B);
    emit("C", K.C);
    emit("D", K.D);
    const RationalTransferFunction tf = to_rational(K);
    for (std::size_t i = 0; i < tf.num.coeffs().size(); ++i)
        csv.row({"num_coeff", std::to_string(i), "0", format_exact(tf.num.coeffs()[i])});
    for (std::size_t i = 0; i < tf.den.coeffs().size(); ++i)
        csv.row({"den_coeff", std::to_string(i), "0", format_exact(tf.den.coeffs()[i])});
}

struct AchievedMagnitudes {
    double s0_w11_db, s0_w12_db, ks0_w21_db, ks0_w22_db;
};

AchievedMagnitudes achieved(const LqgDesign& d, const DesignConfig& cfg) {
    const auto mag_db = [&](LoopKind kind, double w) {
        return 20.0 * std::log10(std::abs(loop_eval(d, kind, w)));
    };
    return {mag_db(LoopKind::S_nom, cfg.omega11), mag_db(LoopKind::S_nom, cfg.omega12),
            mag_db(LoopKind::KS_nom, cfg.omega21), mag_db(LoopKind::KS_nom, cfg.omega22)};
}

void write_report(const fs::path& dir, const DesignConfig& cfg, const LqgDesign& d,
                  const ResolvedTaus& t, bool valid, double omega0,
                  const RhoSelection& rho_sel, const std::string& mode) {
    std::ofstream out(dir / "report.txt", std::ios::binary);
    const Classification cls = classify(d.g0);
    out << "ltrsyn design report\n";
    out << "mode = " << mode << "\n";
    out << "plant_order = " << d.plant.order() << "\n";
    out << "plant_stable = " << (cls.stable ? "yes" : "no") << "\n";
    out << "plant_minimum_phase = " << (cls.minimum_phase ? "yes" : "no") << "\n";
    out << "lead_order = " << cfg.lead_order << "\n";
    out << "lag_order = " << cfg.lag_order << "\n";
    out << "omega0 = " << fmt(omega0) << "\n";
    out << "tau11 = " << fmt(t.tau11) << "\n";
    out << "tau12 = " << fmt(t.tau12) << "\n";
    out << "tau21 = " << fmt(t.tau21) << "\n";
    out << "tau22 = " << fmt(t.tau22) << "\n";
    out << "separation_conditions = " << (valid ? "satisfied" : "violated") << "\n";
    out << "rho = " << fmt(d.rho) << "\n";
    out << "rho_policy = " << (cfg.rho.automatic ? "auto" : "fixed") << "\n";
    out << "recovery_gap_db = " << fmt(rho_sel.gap_db) << "\n";
    out << "care_residual_filter = " << fmt(d.kbf_residual) << "\n";
    out << "care_residual_regulator = " << fmt(d.lqr_residual) << "\n";
    out << "care_residual_nominal = " << fmt(d.nominal_kbf_residual) << "\n";

    const AchievedMagnitudes a = achieved(d, cfg);
    out << "s0_w11_db = " << fmt(a.s0_w11_db) << "\n";
    out << "s0_w12_db = " << fmt(a.s0_w12_db) << "\n";
    out << "ks0_w21_db = " << fmt(a.ks0_w21_db) << "\n";
    out << "ks0_w22_db = " << fmt(a.ks0_w22_db) << "\n";
    if (cfg.bounds_db) {
        out << "bound_m11_db = " << fmt((*cfg.bounds_db)[0]) << "\n";
        out << "bound_m12_db = " << fmt((*cfg.bounds_db)[1]) << "\n";
        out << "bound_m21_db = " << fmt((*cfg.bounds_db)[2]) << "\n";
        out << "bound_m22_db = " << fmt((*cfg.bounds_db)[3]) << "\n";
    }

    const MarginReport m = margins([&](double w) { return loop_eval(d, LoopKind::G0K, w); });
    out << "gain_margin = " << (m.gm_finite ? fmt(m.gain_margin) : "inf") << "\n";
    out << "gain_margin_frequency = " << (m.gm_finite ? fmt(m.gm_frequency) : "none") << "\n";
    out << "phase_margin_deg = " << (m.pm_finite ? fmt(m.phase_margin_deg) : "inf") << "\n";
    out << "phase_margin_frequency = " << (m.pm_finite ? fmt(m.pm_frequency) : "none") << "\n";

    const TimeSeries step =
        step_response(closed_loop_nominal(d.plant, d.compensator), 1.0, 1e-4);
    double peak = 0.0;
    for (double y : step.y)
        peak = std::max(peak, y);
    out << "step_final = " << fmt(step.y.back()) << "\n";
    out << "step_peak = " << fmt(peak) << "\n";
}

std::map<std::string, std::string> read_solution_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open design artifact: " + path);
    std::string header, data;
    if (!std::getline(in, header) || !std::getline(in, data))
        throw ConfigError("design artifact is missing rows: " + path);
    const auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        return cells;
    };
    const std::vector<std::string> keys = split(header);
    const std::vector<std::string> vals = split(data);
    if (vals.size() < keys.size() - 1)  // trailing empty reason cell is fine
        throw ConfigError("design artifact row is malformed: " + path);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < keys.size() && i < vals.size(); ++i)
        row[keys[i]] = vals[i];
    return row;
}

ResolvedTaus resolve_taus(const DesignConfig& cfg, const PlantContext& ctx,
                          const CommonOptions& opt) {
    ResolvedTaus t;
    if (opt.design_path) {
        const auto row = read_solution_csv(*opt.design_path);
        const auto get = [&](const char* key) {
            const auto it = row.find(key);
            if (it == row.end())
                throw ConfigError(std::string("design artifact lacks column ") + key);
            return std::stod(it->second);
        };
        t.tau11 = get("tau11");
        t.tau12 = get("tau12");
        t.tau21 = get("tau21");
        t.tau22 = get("tau22");
        if (row.count("rho"))
            t.rho_from_artifact = std::stod(row.at("rho"));
        return t;
    }
    if (cfg.pinned_taus) {
        t.tau11 = (*cfg.pinned_taus)[0];
        t.tau12 = (*cfg.pinned_taus)[1];
        t.tau21 = (*cfg.pinned_taus)[2];
        t.tau22 = (*cfg.pinned_taus)[3];
        return t;
    }
    t.from_solver = true;
    t.outcome = solve_design_pairs(ctx, cfg.specs());
    t.tau11 = t.outcome.tau11;
    t.tau12 = t.outcome.tau12;
    t.tau21 = t.outcome.tau21;
    t.tau22 = t.outcome.tau22;
    return t;
}

LqgDesign build_design(const DesignConfig& cfg, const PlantContext& ctx,
                       const ResolvedTaus& t, RhoSelection& rho_sel) {
    const WeightingPair lead{t.tau11, t.tau12, cfg.lead_order, WeightingKind::lead};
    const WeightingPair lag{t.tau21, t.tau22, cfg.lag_order, WeightingKind::lag};
    RhoPolicy policy = cfg.rho;
    if (t.rho_from_artifact) {
        policy.automatic = false;
        policy.fixed_value = *t.rho_from_artifact;
    }
    return synthesize_with_policy(ctx.g0, lead, lag, policy, cfg.omega11, ctx.omega0,
                                  &rho_sel);
}

std::string design_mode(const ResolvedTaus& t) {
    if (t.from_solver)
        return "designed";
    if (t.tau11 == 1.0 && t.tau12 == 1.0 && t.tau21 == 1.0 && t.tau22 == 1.0)
        return "nominal";
    return "pinned";
}

} // namespace

int run_design(const CommonOptions& opt) {
    const DesignConfig cfg = load_with_overrides(opt);
    if (!cfg.pinned_taus && !cfg.bounds_db)
        throw ConfigError("design needs bounds_db or pinned weightings in the config");
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    const PlantContext ctx = make_plant_context(cfg.plant());
    const ResolvedTaus t = resolve_taus(cfg, ctx, opt);

    if (t.from_solver && !t.outcome.feasible) {
        write_solution_csv(dir, t, false, ctx.omega0, 0.0, 0.0, t.outcome.failure_reason);
        std::ofstream report(dir / "report.txt", std::ios::binary);
        report << "ltrsyn design report\n";
        report << "mode = infeasible\n";
        report << "omega0 = " << fmt(ctx.omega0) << "\n";
        report << "reason = " << t.outcome.failure_reason << "\n";
        std::cerr << "design infeasible: " << t.outcome.failure_reason << "\n";
        return kExitInfeasible;
    }

    RhoSelection rho_sel;
    const LqgDesign design = build_design(cfg, ctx, t, rho_sel);
    const bool valid = t.from_solver ? true : taus_valid(cfg, ctx.omega0, t);

    write_solution_csv(dir, t, valid, ctx.omega0, design.rho, rho_sel.gap_db, "");
    write_compensator_csv(dir, design.compensator);
    write_report(dir, cfg, design, t, valid, ctx.omega0, rho_sel, design_mode(t));
    std::cout << "design artifacts written to " << dir.string() << "\n";
    return kExitOk;
}

int run_sweep(const CommonOptions& opt) {
    const DesignConfig cfg = load_with_overrides(opt);
    if (!cfg.bound_grids)
        throw ConfigError("sweep needs bound_grids_db in the config");
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    const PlantContext ctx = make_plant_context(cfg.plant());

    SweepRequest req;
    req.base.omega11 = cfg.omega11;
    req.base.omega12 = cfg.omega12;
    req.base.omega21 = cfg.omega21;
    req.base.omega22 = cfg.omega22;
    req.base.lead_order = cfg.lead_order;
    req.base.lag_order = cfg.lag_order;
    const auto& g = *cfg.bound_grids;
    req.m11 = BoundGrid(g[0].min_db, g[0].max_db, g[0].count);
    req.m12 = BoundGrid(g[1].min_db, g[1].max_db, g[1].count);
    req.m21 = BoundGrid(g[2].min_db, g[2].max_db, g[2].count);
    req.m22 = BoundGrid(g[3].min_db, g[3].max_db, g[3].count);
    // the sweep overwrites these per combination
    req.base.m11_db = req.m11.at(0);
    req.base.m12_db = req.m12.at(0);
    req.base.m21_db = req.m21.at(0);
    req.base.m22_db = req.m22.at(0);

    const std::vector<SolutionRecord> records = sweep(ctx, req, opt.jobs);

    CsvWriter csv((dir / "sweep.csv").string(),
                  {"m11_db", "m12_db", "m21_db", "m22_db", "tau11", "tau12", "tau21",
                   "tau22", "valid", "reason"});
    std::size_t valid_count = 0;
    for (const auto& rec : records) {
        std::string reason = rec.failure_reason;
        for (char& c : reason)
            if (c == ',')
                c = ';';
        const bool lag_ok = rec.lag.converged;
        const bool lead_ok = rec.lead.converged;
        csv.row({fmt(rec.m11_db), fmt(rec.m12_db), fmt(rec.m21_db), fmt(rec.m22_db),
                 lead_ok ? fmt(rec.lead.tau1) : "", lead_ok ? fmt(rec.lead.tau2) : "",
                 lag_ok ? fmt(rec.lag.tau1) : "", lag_ok ? fmt(rec.lag.tau2) : "",
                 rec.valid ? "1" : "0", reason});
        if (rec.valid)
            ++valid_count;
    }

    std::ofstream summary(dir / "sweep_summary.txt", std::ios::binary);
    summary << "combinations = " << records.size() << "\n";
    summary << "valid = " << valid_count << "\n";
    summary << "omega0 = " << fmt(ctx.omega0) << "\n";
    std::cout << "swept " << records.size() << " combinations (" << valid_count
              << " valid) into " << dir.string() << "\n";
    return kExitOk;
}

int run_analyze(const CommonOptions& opt) {
    const DesignConfig cfg = load_with_overrides(opt);
    if (!opt.design_path && !cfg.pinned_taus)
        throw ConfigError("analyze needs --design <solution.csv> or pinned weightings");
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    const PlantContext ctx = make_plant_context(cfg.plant());
    const ResolvedTaus t = resolve_taus(cfg, ctx, opt);
    RhoSelection rho_sel;
    const LqgDesign design = build_design(cfg, ctx, t, rho_sel);

    const double lo = 1e-1, hi = 1e5;
    const auto write_bode = [&](const std::string& kind, const FrequencyEvaluator& eval) {
        const FrequencyCurve curve = sample_curve(eval, lo, hi, opt.grid_ppd, kind);
        const std::vector<double> phase = unwrapped_phase_deg(curve.values);
        CsvWriter csv((dir / ("bode_" + kind + ".csv")).string(),
                      {"omega", "magnitude_db", "phase_deg"});
        for (std::size_t i = 0; i < curve.omegas.size(); ++i)
            csv.row({fmt(curve.omegas[i]), fmt(20.0 * std::log10(std::abs(curve.values[i]))),
                     fmt(phase[i])});
    };
    const auto loop_fn = [&](LoopKind kind) {
        return [&design, kind](double w) { return loop_eval(design, kind, w); };
    };
    write_bode("M0", loop_fn(LoopKind::M0));
    write_bode("M", loop_fn(LoopKind::M));
    write_bode("L", loop_fn(LoopKind::L));
    write_bode("G0K", loop_fn(LoopKind::G0K));
    write_bode("S_nom", loop_fn(LoopKind::S_nom));
    write_bode("KS_nom", loop_fn(LoopKind::KS_nom));
    write_bode("S_kbf", loop_fn(LoopKind::S_kbf));
    write_bode("W1", [&](double w) { return evaluate(design.w1, w); });
    write_bode("W2", [&](double w) { return evaluate(design.w2, w); });

    const auto write_nyquist = [&](const std::string& kind, LoopKind lk) {
        const FrequencyCurve curve = sample_curve(loop_fn(lk), lo, hi, opt.grid_ppd, kind);
        CsvWriter csv((dir / ("nyquist_" + kind + ".csv")).string(), {"re", "im"});
        for (const auto& v : curve.values)
            csv.row({fmt(v.real()), fmt(v.imag())});
    };
    write_nyquist("M", LoopKind::M);
    write_nyquist("G0K", LoopKind::G0K);

    const TimeSeries step =
        step_response(closed_loop_nominal(design.plant, design.compensator), 1.0, 1e-4);
    CsvWriter step_csv((dir / "step.csv").string(), {"t", "y"});
    for (std::size_t i = 0; i < step.t.size(); ++i)
        step_csv.row({fmt(step.t[i]), fmt(step.y[i])});

    const MarginReport m = margins(loop_fn(LoopKind::G0K));
    std::ofstream mt(dir / "margins.txt", std::ios::binary);
    mt << "gain_margin = " << (m.gm_finite ? fmt(m.gain_margin) : "inf") << "\n";
    mt << "gain_margin_frequency = " << (m.gm_finite ? fmt(m.gm_frequency) : "none") << "\n";
    mt << "phase_margin_deg = " << (m.pm_finite ? fmt(m.phase_margin_deg) : "inf") << "\n";
    mt << "phase_margin_frequency = " << (m.pm_finite ? fmt(m.pm_frequency) : "none") << "\n";
    mt << "rho = " << fmt(design.rho) << "\n";
    std::cout << "analysis artifacts written to " << dir.string() << "\n";
    return kExitOk;
}

} // namespace ltr::cli
