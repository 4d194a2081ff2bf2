#pragma once

#include <optional>
#include <string>

#include "ltrsyn/config.hpp"

namespace ltr::cli {

// exit codes: 0 success, 1 usage/config error, 2 infeasible design,
// 3 numerical failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string config_path;
    std::optional<std::string> out_dir;      // overrides config output_dir
    std::optional<std::string> rho_override; // "auto" or a number
    int jobs = 4;
    int grid_ppd = 200;
    std::optional<std::string> design_path;  // analyze: prior solution.csv
};

int run_design(const CommonOptions& opt);
int run_sweep(const CommonOptions& opt);
int run_analyze(const CommonOptions& opt);

} // namespace ltr::cli
