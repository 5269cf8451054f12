/// @file studies.hpp
/// @brief Refinement ladders for the ledger identities and the manufactured
/// solution, and the threshold report.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "ledger_io.hpp"
#include "manufactured.hpp"
#include "run.hpp"
#include "threshold.hpp"

namespace radswirl {

/// Residuals at or below this are round-off; their order is "saturated".
inline constexpr double kSaturationFloor = 1e-12;

/// log2(coarse / fine), NaN when either side is saturated or missing.
inline double observed_order(double coarse, double fine) {
    if (!(coarse > kSaturationFloor) || !(fine > kSaturationFloor)) return std::numeric_limits<double>::quiet_NaN();
    return std::log2(coarse / fine);
}

struct LevelResiduals {
    std::size_t N = 0;
    double dt_max = 0.0;
    std::size_t steps = 0;
    double energy = 0.0;     ///< max_t |E + D - E0| / E0
    double G = 0.0;          ///< max_t |G formula - G direct|
    double transport = 0.0;  ///< max_t transport residual (NaN: never evaluated)
};

/// Maxima of the identity residuals over one ledger; NaN rows are skipped.
inline LevelResiduals ledger_residuals(std::span<const DiagRecord> ledger) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    LevelResiduals out;
    out.G = nan;
    out.transport = nan;
    if (ledger.empty()) return out;
    const double e0 = ledger.front().energy;
    for (const DiagRecord& r : ledger) {
        out.energy = std::max(out.energy, std::abs(r.energy_residual) / (e0 > 0.0 ? e0 : 1.0));
        if (!std::isnan(r.G_boundary_formula)) {
            const double d = std::abs(r.G_boundary_formula - r.G_boundary_direct);
            out.G = std::isnan(out.G) ? d : std::max(out.G, d);
        }
        if (!std::isnan(r.transport_residual_norm))
            out.transport = std::isnan(out.transport) ? r.transport_residual_norm
                                                      : std::max(out.transport, r.transport_residual_norm);
    }
    return out;
}

using InitialBuilder = std::function<FlowState(const RadialGrid&)>;

/// Level j runs with N0 2^j cells, dt_max / 2^j and snapshot_every 2^j, so
/// ledger rows of all levels fall on the same times.
inline SolverConfig level_config(SolverConfig base, int j) {
    const int s = 1 << j;
    base.dt_max /= s;
    base.snapshot_every *= s;
    return base;
}

inline std::vector<LevelResiduals> run_refinement(const FluidParams& params, std::size_t n0, const SolverConfig& base,
                                                  int levels, const InitialBuilder& initial,
                                                  const RunOptions& opt = {}) {
    if (levels < 2 || levels > 6) throw std::invalid_argument("run_refinement: levels must lie in [2, 6]");
    std::vector<LevelResiduals> table;
    for (int j = 0; j < levels; ++j) {
        const RadialGrid grid(n0 << j, params.R);
        const SolverConfig cfg = level_config(base, j);
        const RunResult res = run(params, grid, initial(grid), cfg, nullptr, opt);
        LevelResiduals lv = ledger_residuals(res.ledger);
        lv.N = grid.size();
        lv.dt_max = cfg.dt_max;
        lv.steps = res.steps;
        table.push_back(lv);
    }
    return table;
}

namespace detail {
inline std::string order_cell(const std::vector<double>& col, std::size_t j) {
    if (j == 0) return "";
    if (col[j - 1] <= kSaturationFloor && col[j] <= kSaturationFloor) return "saturated";
    const double p = observed_order(col[j - 1], col[j]);
    return format_real(p);
}
}  // namespace detail

inline void write_refinement_table(std::ostream& os, const std::vector<LevelResiduals>& t) {
    std::vector<double> e, g, tr;
    for (const auto& l : t) {
        e.push_back(l.energy);
        g.push_back(l.G);
        tr.push_back(l.transport);
    }
    os << "level,N,dt_max,steps,energy_residual,energy_order,G_discrepancy,G_order,transport_residual,transport_order\n";
    for (std::size_t j = 0; j < t.size(); ++j)
        os << j << ',' << t[j].N << ',' << format_real(t[j].dt_max) << ',' << t[j].steps << ','
           << format_real(e[j]) << ',' << detail::order_cell(e, j) << ',' << format_real(g[j]) << ','
           << detail::order_cell(g, j) << ',' << format_real(tr[j]) << ',' << detail::order_cell(tr, j) << '\n';
}

struct MmsLevel {
    std::size_t N = 0;
    double dt_max = 0.0;
    double err_rho = 0.0;
    double err_ur = 0.0;
    double err_utheta = 0.0;
};

/// L2 errors at t_end against the smooth manufactured solution.
inline std::vector<MmsLevel> run_mms_study(const FluidParams& params, std::size_t n0, const SolverConfig& base,
                                           int levels) {
    if (levels < 2 || levels > 6) throw std::invalid_argument("run_mms_study: levels must lie in [2, 6]");
    const ManufacturedSolution ms = smooth_solution(params.R);
    const MmsSource src = mms_sources(params, ms);
    std::vector<MmsLevel> out;
    for (int j = 0; j < levels; ++j) {
        const RadialGrid grid(n0 << j, params.R);
        const SolverConfig cfg = level_config(base, j);
        const RunResult res = run(params, grid, ms.sample(grid, 0.0), cfg, &src);
        const FlowState exact = ms.sample(grid, res.final_state.t);
        auto err = [&](const Field& a, const Field& b) {
            Field d(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
            return lp_norm(grid, d, 2.0);
        };
        out.push_back({grid.size(), cfg.dt_max, err(res.final_state.rho, exact.rho),
                       err(res.final_state.u_r, exact.u_r), err(res.final_state.u_theta, exact.u_theta)});
    }
    return out;
}

inline void write_mms_table(std::ostream& os, const std::vector<MmsLevel>& t) {
    std::vector<double> a, b, c;
    for (const auto& l : t) {
        a.push_back(l.err_rho);
        b.push_back(l.err_ur);
        c.push_back(l.err_utheta);
    }
    os << "level,N,dt_max,err_rho,order_rho,err_ur,order_ur,err_utheta,order_utheta\n";
    for (std::size_t j = 0; j < t.size(); ++j)
        os << j << ',' << t[j].N << ',' << format_real(t[j].dt_max) << ',' << format_real(a[j]) << ','
           << detail::order_cell(a, j) << ',' << format_real(b[j]) << ',' << detail::order_cell(b, j) << ','
           << format_real(c[j]) << ',' << detail::order_cell(c, j) << '\n';
}

inline void print_threshold_report(std::ostream& os, const ThresholdInputs& in, const ThresholdReport& rep) {
    os << "threshold  mu=" << format_real(in.mu) << " beta=" << format_real(in.beta) << " gamma=" << format_real(in.gamma)
       << " R=" << format_real(in.R) << " ||grad u0||=" << format_real(in.grad_u0_L2) << '\n'
       << "  a0            " << format_real(rep.a0) << '\n'
       << "  cap           " << format_real(rep.cap) << '\n'
       << "  0.99 cap      " << format_real(rep.sharp_cap) << '\n'
       << "  target        " << format_real(rep.target) << '\n'
       << "  K(a0)-target  " << format_real(rep.residual) << '\n'
       << "  iterations    " << rep.iterations << '\n'
       << "  K terms:\n"
       << "    theta(a0)           " << format_real(rep.terms.theta_a) << '\n'
       << "    theta(energy rho)   " << format_real(rep.terms.theta_energy) << '\n'
       << "    max of the two      " << format_real(rep.terms.max_term) << '\n'
       << "    xi term             " << format_real(rep.terms.xi_term) << '\n'
       << "    swirl term          " << format_real(rep.terms.swirl_term) << '\n'
       << "    boundary term       " << format_real(rep.terms.boundary_term) << '\n'
       << "    mass term           " << format_real(rep.terms.mass_term) << '\n'
       << "    product term        " << format_real(rep.terms.product_term) << '\n';
}

inline const char* threshold_csv_header() {
    return "mu,beta,gamma,R,grad_u0_L2,a0,cap,sharp_cap,target,residual,iterations,theta_a,theta_energy,xi_term,"
           "swirl_term,boundary_term,mass_term,product_term";
}

inline std::string threshold_csv_row(const ThresholdInputs& in, const ThresholdReport& r) {
    std::string s;
    for (double v : {in.mu, in.beta, in.gamma, in.R, in.grad_u0_L2, r.a0, r.cap, r.sharp_cap, r.target, r.residual})
        s += format_real(v) + ",";
    s += std::to_string(r.iterations);
    for (double v : {r.terms.theta_a, r.terms.theta_energy, r.terms.xi_term, r.terms.swirl_term, r.terms.boundary_term,
                     r.terms.mass_term, r.terms.product_term})
        s += "," + format_real(v);
    return s;
}

}  // namespace radswirl
