#include "ltrsyn/config.hpp"

#include <fstream>

#include <json.hpp>

#include "ltrsyn/errors.hpp"

namespace ltr {

namespace {

using nlohmann::json;

const json& require(const json& node, const char* key, const std::string& path) {
    if (!node.contains(key))
        throw ConfigError("config error at " + path + ": missing field '" + key + "'");
    return node.at(key);
}

double require_number(const json& node, const char* key, const std::string& path) {
    const json& v = require(node, key, path);
    if (!v.is_number())
        throw ConfigError("config error at " + path + "/" + key + ": expected a number");
    return v.get<double>();
}

int require_int(const json& node, const char* key, const std::string& path) {
    const json& v = require(node, key, path);
    if (!v.is_number_integer())
        throw ConfigError("config error at " + path + "/" + key + ": expected an integer");
    return v.get<int>();
}

std::vector<double> require_number_array(const json& node, const char* key,
                                         const std::string& path) {
    const json& v = require(node, key, path);
    if (!v.is_array() || v.empty())
        throw ConfigError("config error at " + path + "/" + key + ": expected a nonempty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& item : v) {
        if (!item.is_number())
            throw ConfigError("config error at " + path + "/" + key + ": expected numbers");
        out.push_back(item.get<double>());
    }
    return out;
}

BoundGridConfig parse_grid(const json& node, const std::string& path) {
    BoundGridConfig g;
    g.min_db = require_number(node, "min_db", path);
    g.max_db = require_number(node, "max_db", path);
    g.count = require_int(node, "count", path);
    if (g.count < 1)
        throw ConfigError("config error at " + path + "/count: must be >= 1");
    return g;
}

} // namespace

RationalTransferFunction DesignConfig::plant() const {
    return {Polynomial(plant_num), Polynomial(plant_den)};
}

DesignSpecs DesignConfig::specs() const {
    if (!bounds_db)
        throw ConfigError("config error: scalar bounds_db required for this command");
    DesignSpecs s;
    s.omega11 = omega11;
    s.omega12 = omega12;
    s.omega21 = omega21;
    s.omega22 = omega22;
    s.m11_db = (*bounds_db)[0];
    s.m12_db = (*bounds_db)[1];
    s.m21_db = (*bounds_db)[2];
    s.m22_db = (*bounds_db)[3];
    s.lead_order = lead_order;
    s.lag_order = lag_order;
    return s;
}

DesignConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config parse error: ") + err.what());
    }

    DesignConfig cfg;
    cfg.schema_version = require_int(root, "schema_version", "");
    if (cfg.schema_version != 1)
        throw ConfigError("config error at /schema_version: unsupported version " +
                          std::to_string(cfg.schema_version));

    const json& plant = require(root, "plant", "");
    cfg.plant_num = require_number_array(plant, "numerator", "/plant");
    cfg.plant_den = require_number_array(plant, "denominator", "/plant");

    const json& orders = require(root, "orders", "");
    cfg.lead_order = require_int(orders, "lead", "/orders");
    cfg.lag_order = require_int(orders, "lag", "/orders");
    if (cfg.lead_order < 1 || cfg.lag_order < 1)
        throw ConfigError("config error at /orders: weighting orders must be >= 1");

    const json& freq = require(root, "frequencies", "");
    cfg.omega11 = require_number(freq, "omega11", "/frequencies");
    cfg.omega12 = require_number(freq, "omega12", "/frequencies");
    cfg.omega21 = require_number(freq, "omega21", "/frequencies");
    cfg.omega22 = require_number(freq, "omega22", "/frequencies");
    if (!(0.0 < cfg.omega11 && cfg.omega11 < cfg.omega12 && cfg.omega12 < cfg.omega21 &&
          cfg.omega21 < cfg.omega22))
        throw ConfigError("config error at /frequencies: need 0 < omega11 < omega12 < "
                          "omega21 < omega22");

    if (root.contains("bounds_db")) {
        const json& b = root.at("bounds_db");
        cfg.bounds_db = std::array<double, 4>{
            require_number(b, "m11", "/bounds_db"), require_number(b, "m12", "/bounds_db"),
            require_number(b, "m21", "/bounds_db"), require_number(b, "m22", "/bounds_db")};
    }
    if (root.contains("bound_grids_db")) {
        const json& g = root.at("bound_grids_db");
        cfg.bound_grids = std::array<BoundGridConfig, 4>{
            parse_grid(require(g, "m11", "/bound_grids_db"), "/bound_grids_db/m11"),
            parse_grid(require(g, "m12", "/bound_grids_db"), "/bound_grids_db/m12"),
            parse_grid(require(g, "m21", "/bound_grids_db"), "/bound_grids_db/m21"),
            parse_grid(require(g, "m22", "/bound_grids_db"), "/bound_grids_db/m22")};
    }
    if (root.contains("weightings")) {
        const json& w = root.at("weightings");
        cfg.pinned_taus = std::array<double, 4>{
            require_number(w, "tau11", "/weightings"), require_number(w, "tau12", "/weightings"),
            require_number(w, "tau21", "/weightings"), require_number(w, "tau22", "/weightings")};
        for (double t : *cfg.pinned_taus)
            if (!(t > 0.0))
                throw ConfigError("config error at /weightings: coefficients must be positive");
    }

    if (root.contains("rho")) {
        const json& r = root.at("rho");
        if (r.is_string() && r.get<std::string>() == "auto") {
            cfg.rho.automatic = true;
        } else if (r.is_number()) {
            cfg.rho.automatic = false;
            cfg.rho.fixed_value = r.get<double>();
            if (!(cfg.rho.fixed_value > 0.0))
                throw ConfigError("config error at /rho: must be positive");
        } else {
            throw ConfigError("config error at /rho: expected \"auto\" or a number");
        }
    }
    if (root.contains("recovery_gap_db")) {
        const json& g = root.at("recovery_gap_db");
        if (!g.is_number() || !(g.get<double>() > 0.0))
            throw ConfigError("config error at /recovery_gap_db: expected a positive number");
        cfg.rho.gap_db = g.get<double>();
    }
    if (root.contains("output_dir")) {
        const json& o = root.at("output_dir");
        if (!o.is_string())
            throw ConfigError("config error at /output_dir: expected a string");
        cfg.output_dir = o.get<std::string>();
    }

    // plant must be a proper rational function
    try {
        const RationalTransferFunction tf = cfg.plant();
        if (!tf.proper())
            throw ConfigError("config error at /plant: transfer function must be proper");
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("config error at /plant: ") + err.what());
    }
    return cfg;
}

} // namespace ltr
