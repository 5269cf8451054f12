/// @file config.hpp
/// @brief Run configuration: a `key = value` document, one entry per line,
/// `#` starts a comment. Parsing is fail-closed.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grid.hpp"
#include "solver.hpp"

namespace radswirl {

enum class StudyMode { single, refine, threshold, mms };

inline const char* to_string(StudyMode m) {
    switch (m) {
        case StudyMode::single: return "single";
        case StudyMode::refine: return "refine";
        case StudyMode::threshold: return "threshold";
        case StudyMode::mms: return "mms";
    }
    return "?";
}

inline const std::vector<std::string>& ledger_columns() {
    static const std::vector<std::string> cols = {
        "t",           "mass",         "energy",           "dissipation_cum", "energy_residual",
        "sup_rho",     "G_boundary_direct", "G_boundary_formula", "transport_residual_norm", "supnorm_ineq_slack",
        "rho_u3",      "rho_u_2pd",    "dist_rho_L2",      "dist_gradu_L2",   "A1sq",
        "A2sq",        "A3sq",         "cap_ok"};
    return cols;
}

struct RunConfig {
    FluidParams params;
    std::size_t N = 0;
    SolverConfig solver;
    /// Unset means 1e-10 times the mean initial density.
    std::optional<double> rho_floor;
    std::string preset;
    std::string profile_path;
    StudyMode study = StudyMode::single;
    int levels = 3;
    std::string out = "ledger.csv";
    /// Exponent offset for int rho |u|^{2+delta}; NaN selects the default.
    double moment_delta = std::numeric_limits<double>::quiet_NaN();
    /// Ledger columns to write, in header order.
    std::vector<std::string> columns = ledger_columns();
};

/// A configuration problem tied to one key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what) : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "mu",           "beta",   "gamma",  "R",   "N",           "cfl",          "dt_max",  "t_end",
        "rho_floor",    "viscous_scheme", "advect_scheme", "snapshot_every", "preset", "profile_path", "study",
        "levels",       "out",    "moment_delta", "columns"};
    return keys;
}

namespace detail {

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

/// Closest known key: by edit distance (whole key, or the key's leading part
/// of the same length), else the key sharing the longest leading run of at
/// least four characters ("viscocity" -> "viscous_scheme").
inline std::string nearest_key(const std::string& key) {
    std::string best;
    std::size_t best_d = std::numeric_limits<std::size_t>::max();
    for (const std::string& k : config_keys()) {
        std::size_t d = edit_distance(key, k);
        if (k.size() > key.size()) d = std::min(d, edit_distance(key, std::string_view(k).substr(0, key.size())) + 1);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    if (best_d <= std::max<std::size_t>(2, key.size() / 3)) return best;

    std::string by_prefix;
    std::size_t longest = 3;
    for (const std::string& k : config_keys()) {
        const auto [ki, _] = std::mismatch(key.begin(), key.end(), k.begin(), k.end());
        const auto run = static_cast<std::size_t>(ki - key.begin());
        if (run > longest) {
            longest = run;
            by_prefix = k;
        }
    }
    return by_prefix;
}

inline std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    const auto e = s.find_last_not_of(" \t\r");
    s.erase(e == std::string::npos ? 0 : e + 1);
    return s;
}

inline double parse_real(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty() || !std::isfinite(x))
        throw ConfigError(key, "key '" + key + "': expected a finite number, got '" + v + "'");
    return x;
}

inline long long parse_integer(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty()) throw ConfigError(key, "key '" + key + "': expected an integer, got '" + v + "'");
    return x;
}

}  // namespace detail

/// Parses and validates a configuration document. Required keys: mu, beta,
/// gamma, R, N, t_end. Exactly one of preset / profile_path.
inline RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", "line " + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
            const std::string near = detail::nearest_key(key);
            throw ConfigError(key, "unknown key '" + key + "'" + (near.empty() ? "" : " (did you mean '" + near + "'?)"));
        }
        if (kv.count(key)) throw ConfigError(key, "key '" + key + "' given twice");
        kv[key] = value;
    }

    for (const char* req : {"mu", "beta", "gamma", "R", "N", "t_end"})
        if (!kv.count(req)) throw ConfigError(req, std::string("missing required key '") + req + "'");

    RunConfig cfg;
    auto real = [&](const char* k) { return detail::parse_real(k, kv.at(k)); };
    auto check = [](bool ok, const char* key, const std::string& why) {
        if (!ok) throw ConfigError(key, std::string("key '") + key + "': " + why);
    };

    cfg.params.mu = real("mu");
    check(cfg.params.mu > 0.0, "mu", "must be > 0");
    cfg.params.beta = real("beta");
    check(cfg.params.beta > 0.0, "beta", "must be > 0");
    cfg.params.gamma = real("gamma");
    check(cfg.params.gamma > 1.0, "gamma", "must be > 1");
    cfg.params.R = real("R");
    check(cfg.params.R > 0.0, "R", "must be > 0");
    const long long n = detail::parse_integer("N", kv.at("N"));
    check(n >= 4, "N", "must be >= 4");
    cfg.N = static_cast<std::size_t>(n);
    cfg.solver.t_end = real("t_end");
    check(cfg.solver.t_end > 0.0, "t_end", "must be > 0");

    if (kv.count("cfl")) {
        cfg.solver.cfl = real("cfl");
        check(cfg.solver.cfl > 0.0 && cfg.solver.cfl <= 1.0, "cfl", "must lie in (0, 1]");
    }
    if (kv.count("dt_max")) {
        cfg.solver.dt_max = real("dt_max");
        check(cfg.solver.dt_max > 0.0, "dt_max", "must be > 0");
    }
    if (kv.count("rho_floor")) {
        cfg.rho_floor = real("rho_floor");
        check(*cfg.rho_floor >= 0.0, "rho_floor", "must be >= 0");
    }
    if (kv.count("viscous_scheme")) {
        const std::string& v = kv.at("viscous_scheme");
        if (v == "implicit_euler") cfg.solver.viscous_scheme = ViscousScheme::implicit_euler;
        else if (v == "crank_nicolson") cfg.solver.viscous_scheme = ViscousScheme::crank_nicolson;
        else check(false, "viscous_scheme", "expected implicit_euler or crank_nicolson, got '" + v + "'");
    }
    if (kv.count("advect_scheme")) {
        const std::string& v = kv.at("advect_scheme");
        if (v == "upwind1") cfg.solver.advect_scheme = AdvectScheme::upwind1;
        else if (v == "muscl2") cfg.solver.advect_scheme = AdvectScheme::muscl2;
        else check(false, "advect_scheme", "expected upwind1 or muscl2, got '" + v + "'");
    }
    if (kv.count("snapshot_every")) {
        const long long s = detail::parse_integer("snapshot_every", kv.at("snapshot_every"));
        check(s >= 1 && s <= std::numeric_limits<int>::max(), "snapshot_every", "must be >= 1");
        cfg.solver.snapshot_every = static_cast<int>(s);
    }
    if (kv.count("preset")) cfg.preset = kv.at("preset");
    if (kv.count("profile_path")) cfg.profile_path = kv.at("profile_path");
    if (!cfg.preset.empty() && !cfg.profile_path.empty())
        throw ConfigError("profile_path", "keys 'preset' and 'profile_path' are mutually exclusive");
    if (kv.count("preset")) check(!cfg.preset.empty(), "preset", "must not be empty");
    if (kv.count("profile_path")) check(!cfg.profile_path.empty(), "profile_path", "must not be empty");
    if (kv.count("study")) {
        const std::string& v = kv.at("study");
        if (v == "single") cfg.study = StudyMode::single;
        else if (v == "refine") cfg.study = StudyMode::refine;
        else if (v == "threshold") cfg.study = StudyMode::threshold;
        else if (v == "mms") cfg.study = StudyMode::mms;
        else check(false, "study", "expected single, refine, threshold or mms, got '" + v + "'");
    }
    if (kv.count("levels")) {
        const long long l = detail::parse_integer("levels", kv.at("levels"));
        check(l >= 2 && l <= 6, "levels", "must lie in [2, 6]");
        cfg.levels = static_cast<int>(l);
    }
    if (kv.count("out")) {
        cfg.out = kv.at("out");
        check(!cfg.out.empty(), "out", "must not be empty");
    }
    if (kv.count("moment_delta")) {
        cfg.moment_delta = real("moment_delta");
        check(cfg.moment_delta >= 0.0, "moment_delta", "must be >= 0");
    }
    if (kv.count("columns")) {
        std::vector<std::string> wanted;
        std::stringstream ss(kv.at("columns"));
        std::string c;
        while (std::getline(ss, c, ',')) {
            c = detail::trim(c);
            check(std::find(ledger_columns().begin(), ledger_columns().end(), c) != ledger_columns().end(), "columns",
                  "unknown ledger column '" + c + "'");
            wanted.push_back(c);
        }
        check(!wanted.empty(), "columns", "must name at least one column");
        cfg.columns.clear();
        for (const std::string& col : ledger_columns())
            if (std::find(wanted.begin(), wanted.end(), col) != wanted.end()) cfg.columns.push_back(col);
    }
    return cfg;
}

}  // namespace radswirl
