/// @file presets.hpp
/// @brief Named initial states, one per parameter regime, and tabulated
/// profiles read from CSV.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "physics.hpp"
#include "threshold.hpp"

namespace radswirl {

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"equilibrium",      "decaying_swirl",  "beta_ge_1_large",
                                                   "beta_between",     "beta_eq_1",       "beta_lt_1_small",
                                                   "beta_lt_1_rejected"};
    return names;
}

/// Throws std::invalid_argument when `name` is unknown or the parameters
/// fall outside the preset's regime.
inline void check_preset_regime(const std::string& name, const FluidParams& p) {
    auto fail = [&](const std::string& why) { throw std::invalid_argument("preset '" + name + "' requires " + why); };
    if (std::find(preset_names().begin(), preset_names().end(), name) == preset_names().end())
        throw std::invalid_argument("unknown preset '" + name + "'");
    if (name == "beta_ge_1_large" && !(p.beta >= 1.0)) fail("beta >= 1");
    if (name == "beta_between" && !(p.beta > 1.0 && p.beta <= p.gamma)) fail("1 < beta <= gamma");
    if (name == "beta_eq_1" && p.beta != 1.0) fail("beta == 1");
    if ((name == "beta_lt_1_small" || name == "beta_lt_1_rejected") && !(p.beta < 1.0)) fail("0 < beta < 1");
}

/// First positive zero of J1.
inline constexpr double kBesselJ1Zero = 3.8317059702075125;

namespace detail {
template <class Rho, class Ur, class Ut>
FlowState sample_profile(const RadialGrid& grid, Rho rho, Ur ur, Ut ut) {
    FlowState s = FlowState::zeros(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.r(i);
        s.rho[i] = rho(r);
        s.u_r[i] = ur(r);
        s.u_theta[i] = ut(r);
    }
    return s;
}
}  // namespace detail

/// Builds the initial state of a named preset. Velocities use the first
/// Bessel mode J1(j r / R), which vanishes at the wall together with its
/// image under the viscous operator, so the data meet the first-order
/// compatibility conditions and no initial boundary layer forms. The
/// beta < 1 presets scale the density against the threshold a0 computed
/// from the discrete ||grad u0||_L2: peak 0.9 a0 (admitted) or 2 a0 (rejected).
inline FlowState make_preset(const std::string& name, const FluidParams& params, const RadialGrid& grid) {
    params.validate();
    check_preset_regime(name, params);
    const double k = std::numbers::pi / params.R;
    const double kb = kBesselJ1Zero / params.R;
    auto mode = [kb](double r) { return std::cyl_bessel_j(1.0, kb * r); };
    auto zero = [](double) { return 0.0; };
    if (name == "equilibrium") return detail::sample_profile(grid, [](double) { return 1.0; }, zero, zero);
    if (name == "decaying_swirl")
        return detail::sample_profile(
            grid, [](double) { return 1.0; }, zero, [&](double r) { return mode(r); });
    if (name == "beta_ge_1_large" || name == "beta_between" || name == "beta_eq_1")
        return detail::sample_profile(
            grid, [k](double r) { return 1.0 + 0.8 * std::cos(k * r); }, [&](double r) { return 2.0 * mode(r); },
            [&](double r) { return 2.0 * mode(r); });

    // beta < 1: velocity first, then the density scale from a0.
    FlowState s = detail::sample_profile(
        grid, [](double) { return 1.0; }, zero, [&](double r) { return 0.2 * mode(r); });
    const ThresholdInputs in{params.mu, params.beta, params.gamma, params.R, grad_u_l2(grid, s)};
    const double a0 = solve_a0(in).a0;
    const bool small = name == "beta_lt_1_small";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double c = std::cos(k * grid.r(i));
        s.rho[i] = small ? a0 * (0.6 + 0.3 * c) : a0 * (1.5 + 0.5 * c);
    }
    return s;
}

struct ProfileRow {
    double r = 0.0;
    double rho0 = 0.0;
    double ur0 = 0.0;
    double utheta0 = 0.0;
};

namespace detail {

/// Reads a 4-column numeric CSV with the exact header `names`; rows are
/// sorted by the first column. Errors name the first bad data row.
inline std::vector<std::array<double, 4>> read_table_csv(std::istream& in, const std::array<const char*, 4>& names,
                                                         const std::string& what) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(what + ": empty file");
    auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        const auto e = s.find_last_not_of(" \t\r");
        s.erase(e == std::string::npos ? 0 : e + 1);
        return s;
    };
    const std::string header =
        std::string(names[0]) + "," + names[1] + "," + names[2] + "," + names[3];
    {
        std::stringstream hs(line);
        std::string col, joined;
        while (std::getline(hs, col, ',')) joined += (joined.empty() ? "" : ",") + trim(col);
        if (joined != header) throw std::invalid_argument(what + ": header must be '" + header + "'");
    }
    std::vector<std::array<double, 4>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::string where =
            what + ": data row " + std::to_string(rows.size() + 1) + " (line " + std::to_string(lineno) + ")";
        std::stringstream ls(line);
        std::string cell;
        std::array<double, 4> v{};
        for (int c = 0; c < 4; ++c) {
            if (!std::getline(ls, cell, ',')) throw std::invalid_argument(where + ": fewer than 4 columns");
            cell = trim(cell);
            std::size_t used = 0;
            try {
                v[c] = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != cell.size()) throw std::invalid_argument(where + ": cannot parse '" + cell + "'");
            if (!std::isfinite(v[c])) throw std::invalid_argument(where + ": non-finite " + names[c]);
        }
        rows.push_back(v);
    }
    if (rows.size() < 2) throw std::invalid_argument(what + ": need at least two rows");
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return rows;
}

/// Piecewise-linear interpolation of columns 1..3 at x, constant outside.
inline std::array<double, 3> interpolate_row(const std::vector<std::array<double, 4>>& rows, double x) {
    auto it = std::lower_bound(rows.begin(), rows.end(), x, [](const auto& a, double v) { return a[0] < v; });
    if (it == rows.begin()) return {(*it)[1], (*it)[2], (*it)[3]};
    if (it == rows.end()) return {rows.back()[1], rows.back()[2], rows.back()[3]};
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double w = (b[0] == a[0]) ? 0.0 : (x - a[0]) / (b[0] - a[0]);
    return {(1 - w) * a[1] + w * b[1], (1 - w) * a[2] + w * b[2], (1 - w) * a[3] + w * b[3]};
}

}  // namespace detail

/// Reads `r,rho0,ur0,utheta0` rows (header required, any row order).
inline std::vector<ProfileRow> read_profile_csv(std::istream& in) {
    std::vector<ProfileRow> rows;
    for (const auto& v : detail::read_table_csv(in, {"r", "rho0", "ur0", "utheta0"}, "profile")) {
        if (v[1] < 0.0) throw std::invalid_argument("profile: negative rho0 at r = " + std::to_string(v[0]));
        rows.push_back({v[0], v[1], v[2], v[3]});
    }
    return rows;
}

inline std::vector<ProfileRow> read_profile_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("profile: cannot open '" + path + "'");
    return read_profile_csv(f);
}

/// Linear interpolation of tabulated rows onto the grid centers, constant
/// beyond the tabulated range.
inline FlowState interpolate_profile(const RadialGrid& grid, const std::vector<ProfileRow>& rows) {
    std::vector<std::array<double, 4>> table;
    for (const ProfileRow& p : rows) table.push_back({p.r, p.rho0, p.ur0, p.utheta0});
    FlowState s = FlowState::zeros(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto v = detail::interpolate_row(table, grid.r(i));
        s.rho[i] = v[0];
        s.u_r[i] = v[1];
        s.u_theta[i] = v[2];
    }
    return s;
}

}  // namespace radswirl
