#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ltrsyn/lqg.hpp"
#include "ltrsyn/spec_solver.hpp"

namespace ltr {

struct BoundGridConfig {
    double min_db = 0.0;
    double max_db = 0.0;
    int count = 1;
};

/// Parsed design configuration (JSON, schema_version 1). See the README for
/// the schema. Bounds are given in dB; either scalar bounds, bound grids, or
/// pinned weighting coefficients must be present depending on the command.
struct DesignConfig {
    int schema_version = 1;
    std::vector<double> plant_num;
    std::vector<double> plant_den;
    int lead_order = 1;
    int lag_order = 1;
    double omega11 = 0.0, omega12 = 0.0, omega21 = 0.0, omega22 = 0.0;
    std::optional<std::array<double, 4>> bounds_db;              // m11 m12 m21 m22
    std::optional<std::array<BoundGridConfig, 4>> bound_grids;   // same order
    std::optional<std::array<double, 4>> pinned_taus;            // tau11 tau12 tau21 tau22
    RhoPolicy rho;
    std::string output_dir = "out";

    RationalTransferFunction plant() const;
    DesignSpecs specs() const;  // requires bounds_db
};

/// Loads and validates a configuration file. Throws ConfigError with a
/// field-path diagnostic on malformed input.
DesignConfig load_config(const std::string& path);

} // namespace ltr
