/// @file diagnostics.hpp
/// @brief Verification ledger: conserved quantities, exact identities of the
/// radial system, and the functionals entering the density bounds.
///
/// Identity checks never look inside the solver. Time derivatives are taken
/// from snapshots with three-point Lagrange weights, so any residual carries
/// the O(dt + h) truncation of both the scheme and the check and is meant to
/// be read under refinement.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "physics.hpp"

namespace radswirl {

struct DiagRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double dissipation_cum = 0.0;
    double energy_residual = 0.0;
    double sup_rho = 0.0;
    double G_boundary_direct = 0.0;
    double G_boundary_formula = 0.0;
    double transport_residual_norm = 0.0;
    double supnorm_ineq_slack = 0.0;
    double rho_u3 = 0.0;
    double rho_u_2pd = 0.0;
    double dist_rho_L2 = 0.0;
    double dist_gradu_L2 = 0.0;
    double A1sq = 0.0;
    double A2sq = 0.0;
    double A3sq = 0.0;
    /// 1 / 0 for beta < 1 runs; -1 when no cap applies (beta >= 1).
    int cap_ok = -1;
};

// ---------------------------------------------------------------------------
// Scalars of one snapshot

/// E = 1/2 int rho |u|^2 + int rho^gamma / (gamma - 1).
inline double energy(const FluidParams& params, const RadialGrid& grid, const FlowState& s) {
    check_state(grid, s);
    Field e(grid.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = 0.5 * s.rho[i] * (s.u_r[i] * s.u_r[i] + s.u_theta[i] * s.u_theta[i]) +
               std::pow(s.rho[i], params.gamma) / (params.gamma - 1.0);
    return integrate_disk(grid, e);
}

/// mu ||grad u||^2 + ||sqrt(mu + lambda) div u||^2.
inline double dissipation_rate(const FluidParams& params, const RadialGrid& grid, const FlowState& s) {
    const Field g2 = grad_u_squared(grid, s);
    const Field div = divergence(grid, s);
    Field d(grid.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = params.mu * g2[i] + (params.mu + std::pow(s.rho[i], params.beta)) * div[i] * div[i];
    return integrate_disk(grid, d);
}

/// int rho |u|^exponent dx with |u|^2 = u_r^2 + u_theta^2.
inline double weighted_moment(const RadialGrid& grid, const FlowState& s, double exponent) {
    check_state(grid, s);
    if (!(exponent >= 2.0)) throw std::invalid_argument("weighted_moment: exponent must be >= 2");
    Field f(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = s.rho[i] * std::pow(std::hypot(s.u_r[i], s.u_theta[i]), exponent);
    return integrate_disk(grid, f);
}

/// Default exponent offset for int rho |u|^{2+delta}:
/// min(1/2, (gamma-1)/(2(gamma+1))) (sup rho + 1)^{-1/2}.
inline double default_moment_delta(const FluidParams& params, double sup_rho) {
    const double c = std::min(0.5, (params.gamma - 1.0) / (2.0 * (params.gamma + 1.0)));
    return c / std::sqrt(sup_rho + 1.0);
}

/// Right-hand side bound of the cubic moment for beta < 1 runs:
/// int rho0 |u0|^3 + 3 sqrt2 7^(gamma/beta) mu^(gamma/beta - 1) R E0.
inline double cubic_moment_bound(const FluidParams& params, double rho_u3_initial, double energy_initial) {
    const double gb = params.gamma / params.beta;
    return rho_u3_initial +
           3.0 * std::numbers::sqrt2 * std::pow(7.0, gb) * std::pow(params.mu, gb - 1.0) * params.R * energy_initial;
}

struct AsymptoticMetrics {
    double dist_rho = 0.0;
    double dist_gradu = 0.0;
};

/// (||rho - rho_s||_{L^p}, ||grad u||_{L^p}).
inline AsymptoticMetrics asymptotic_metrics(const RadialGrid& grid, const FlowState& s, double rho_s, double p) {
    check_state(grid, s);
    if (std::isnan(p) || p < 1.0) throw std::invalid_argument("asymptotic_metrics: p must be >= 1");
    Field dev(grid.size());
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = s.rho[i] - rho_s;
    Field g = grad_u_squared(grid, s);
    for (double& v : g) v = std::sqrt(v);
    return {lp_norm(grid, dev, p), lp_norm(grid, g, p)};
}

/// (1/sqrt(2 pi)) ||grad u||_{L^2} - ||u||_{L^inf}.
inline double supnorm_slack(const RadialGrid& grid, const FlowState& s) {
    const double grad = grad_u_l2(grid, s);
    const double sup = lp_norm(grid, speed(s), kSupNorm);
    return grad / std::sqrt(2.0 * std::numbers::pi) - sup;
}

// ---------------------------------------------------------------------------
// Snapshot time derivatives

/// Three snapshots at increasing, distinct times.
struct SnapshotTriple {
    const FlowState* a = nullptr;
    const FlowState* b = nullptr;
    const FlowState* c = nullptr;
};

/// Weights w with d/dt f(t_at) ~ w0 f(t0) + w1 f(t1) + w2 f(t2).
inline std::array<double, 3> derivative_weights(double t0, double t1, double t2, double t_at) {
    if (!(t0 < t1 && t1 < t2)) throw std::invalid_argument("derivative_weights: times must increase strictly");
    const double x = t_at;
    return {((x - t1) + (x - t2)) / ((t0 - t1) * (t0 - t2)), ((x - t0) + (x - t2)) / ((t1 - t0) * (t1 - t2)),
            ((x - t0) + (x - t1)) / ((t2 - t0) * (t2 - t1))};
}

/// Pointwise time derivative of per-state fields using the triple.
template <class FieldOf>
Field snapshot_derivative(const SnapshotTriple& tri, double t_at, FieldOf&& field_of) {
    const auto w = derivative_weights(tri.a->t, tri.b->t, tri.c->t, t_at);
    const Field fa = field_of(*tri.a), fb = field_of(*tri.b), fc = field_of(*tri.c);
    Field d(fa.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = w[0] * fa[i] + w[1] * fb[i] + w[2] * fc[i];
    return d;
}

template <class ScalarOf>
double snapshot_derivative_scalar(const SnapshotTriple& tri, double t_at, ScalarOf&& scalar_of) {
    const auto w = derivative_weights(tri.a->t, tri.b->t, tri.c->t, t_at);
    return w[0] * scalar_of(*tri.a) + w[1] * scalar_of(*tri.b) + w[2] * scalar_of(*tri.c);
}

// ---------------------------------------------------------------------------
// Boundary representation of the effective viscous flux

/// int_0^R rho u_r r^2 dr.
inline double radial_momentum_moment(const RadialGrid& grid, const FlowState& s) {
    Field m(grid.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = s.rho[i] * s.u_r[i];
    return radial_moment(grid, m, 2);
}

/// (1/R^2) { d/dt int rho u_r r^2 dr + int 2 G r dr - int rho |u|^2 r dr }.
inline double boundary_flux_formula(const FluidParams& params, const RadialGrid& grid, const FlowState& s,
                                    double dmoment_dt) {
    const EffectiveFlux eff = effective_viscous_flux(params, grid, s);
    Field ke(grid.size());
    for (std::size_t i = 0; i < ke.size(); ++i)
        ke[i] = s.rho[i] * (s.u_r[i] * s.u_r[i] + s.u_theta[i] * s.u_theta[i]);
    const double R = grid.radius();
    return (dmoment_dt + 2.0 * radial_moment(grid, eff.G, 1) - radial_moment(grid, ke, 1)) / (R * R);
}

/// Formula minus extrapolated G(R, t) at the middle snapshot of the triple.
inline double boundary_flux_discrepancy(const FluidParams& params, const RadialGrid& grid, const SnapshotTriple& tri,
                                        double t_at, const FlowState& at) {
    const double dm =
        snapshot_derivative_scalar(tri, t_at, [&](const FlowState& s) { return radial_momentum_moment(grid, s); });
    return boundary_flux_formula(params, grid, at, dm) - effective_viscous_flux(params, grid, at).G_boundary;
}

/// Series of formula - direct at every interior snapshot (centered
/// differences). Needs at least three snapshots.
inline std::vector<double> boundary_flux_check(const FluidParams& params, const RadialGrid& grid,
                                               std::span<const FlowState> states) {
    if (states.size() < 3) throw std::invalid_argument("boundary_flux_check: need at least 3 snapshots");
    std::vector<double> out;
    for (std::size_t k = 1; k + 1 < states.size(); ++k) {
        const SnapshotTriple tri{&states[k - 1], &states[k], &states[k + 1]};
        out.push_back(boundary_flux_discrepancy(params, grid, tri, states[k].t, states[k]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transport structure of theta + xi

inline Field theta_plus_xi(const FluidParams& params, const RadialGrid& grid, const FlowState& s, double floor) {
    Field f = theta_of_rho(params, s.rho, floor);
    const Field xi = xi_field(grid, s);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += xi[i];
    return f;
}

/// Residual of
///   (theta + xi)_t + u_r d_r(theta + xi) + int_R^r rho (u_r^2 - u_th^2)/s ds
///     + P - Pbar + G(R, t) = 0
/// at snapshot `at` (one of the triple), convection upwinded.
inline Field transport_residual_field(const FluidParams& params, const RadialGrid& grid, const SnapshotTriple& tri,
                                      const FlowState& at, double floor = kDefaultThetaFloor) {
    for (const FlowState* s : {tri.a, tri.b, tri.c})
        for (double r : s->rho)
            if (r < floor)
                throw std::domain_error("transport residual: density below the theta floor (vacuum)");
    const std::size_t n = grid.size();
    const double h = grid.h();
    const Field dt_f = snapshot_derivative(tri, at.t, [&](const FlowState& s) { return theta_plus_xi(params, grid, s, floor); });
    const Field f = theta_plus_xi(params, grid, at, floor);
    const Field centrifugal = centrifugal_integral(grid, at);
    const EffectiveFlux eff = effective_viscous_flux(params, grid, at);
    const Field p = pressure(params, at.rho);
    Field res(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = at.u_r[i];
        double grad;
        if (u >= 0.0) {
            const double fm = (i == 0) ? f[0] : f[i - 1];
            grad = (f[i] - fm) / h;
        } else {
            grad = (i + 1 < n) ? (f[i + 1] - f[i]) / h : (f[i] - f[i - 1]) / h;
        }
        res[i] = dt_f[i] + u * grad + centrifugal[i] + p[i] - eff.Pbar + eff.G_boundary;
    }
    return res;
}

/// Centered residual field from three consecutive snapshots.
inline Field transport_structure_residual(const FluidParams& params, const RadialGrid& grid,
                                          std::span<const FlowState> states, double floor = kDefaultThetaFloor) {
    if (states.size() < 3) throw std::invalid_argument("transport_structure_residual: need 3 consecutive snapshots");
    const SnapshotTriple tri{&states[0], &states[1], &states[2]};
    return transport_residual_field(params, grid, tri, states[1], floor);
}

// ---------------------------------------------------------------------------
// A-functionals

struct AFunctionals {
    double A1sq = 0.0;
    double A2sq = 0.0;
    double A3sq = 0.0;
};

/// A1^2 = int G^2/(2mu+lambda) + mu w^2, A2^2 = int rho |udot|^2,
/// A3^2 = int (2mu+lambda) div^2 + mu w^2, given d_t u at the snapshot.
/// The material derivative uses upwind convection and the polar curvature
/// terms; it is weighted by rho, so vacuum cells contribute zero.
inline AFunctionals a_functionals_with_rate(const FluidParams& params, const RadialGrid& grid, const FlowState& s,
                                            std::span<const double> dur_dt, std::span<const double> dut_dt) {
    const std::size_t n = grid.size();
    const double h = grid.h();
    const EffectiveFlux eff = effective_viscous_flux(params, grid, s);
    const Field div = divergence(grid, s);
    const Field w = vorticity(grid, s);
    const Field lam = bulk_viscosity(params, s.rho);
    auto upwind = [&](const Field& f, std::size_t i, double a) {
        const double fm = (i == 0) ? -f[0] : f[i - 1];
        const double fp = (i + 1 < n) ? f[i + 1] : wall_ghost(f[n - 1], f[n - 2]);
        return a >= 0.0 ? (f[i] - fm) / h : (fp - f[i]) / h;
    };
    Field a1(n), a2(n), a3(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = 2.0 * params.mu + lam[i];
        const double r = grid.r(i);
        const double ur = s.u_r[i], ut = s.u_theta[i];
        const double udot_r = dur_dt[i] + ur * upwind(s.u_r, i, ur) - ut * ut / r;
        const double udot_t = dut_dt[i] + ur * upwind(s.u_theta, i, ur) + ur * ut / r;
        a1[i] = eff.G[i] * eff.G[i] / k + params.mu * w[i] * w[i];
        a2[i] = s.rho[i] * (udot_r * udot_r + udot_t * udot_t);
        a3[i] = k * div[i] * div[i] + params.mu * w[i] * w[i];
    }
    return {integrate_disk(grid, a1), integrate_disk(grid, a2), integrate_disk(grid, a3)};
}

/// A-functionals at `s` with d_t u from the backward difference to `prev`.
inline AFunctionals a_functionals(const FluidParams& params, const RadialGrid& grid, const FlowState& s,
                                  const FlowState* prev) {
    if (prev == nullptr) throw std::invalid_argument("a_functionals: previous snapshot required");
    check_state(grid, *prev);
    const double dt = s.t - prev->t;
    if (!(dt > 0.0)) throw std::invalid_argument("a_functionals: previous snapshot must be earlier");
    Field dr(grid.size()), dtt(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        dr[i] = (s.u_r[i] - prev->u_r[i]) / dt;
        dtt[i] = (s.u_theta[i] - prev->u_theta[i]) / dt;
    }
    return a_functionals_with_rate(params, grid, s, dr, dtt);
}

// ---------------------------------------------------------------------------
// Ledger-level checks

/// E(t) + dissipation_cum(t) - E(0) for every row.
inline std::vector<double> energy_equality_residual(std::span<const DiagRecord> ledger) {
    if (ledger.size() < 2) throw std::invalid_argument("energy_equality_residual: need at least 2 ledger rows");
    std::vector<double> out;
    out.reserve(ledger.size());
    for (const DiagRecord& row : ledger) out.push_back(row.energy + row.dissipation_cum - ledger.front().energy);
    return out;
}

/// Density cap (7 mu)^{1/beta}.
inline double density_cap(const FluidParams& params) { return std::pow(7.0 * params.mu, 1.0 / params.beta); }

struct DiagnosticsOptions {
    double rho_s = 0.0;
    double moment_delta = 0.0;
    double energy_initial = 0.0;
    double theta_floor = kDefaultThetaFloor;
};

/// Fills every DiagRecord column for snapshot `at`. `tri` supplies d/dt:
/// A2 uses it whenever present; the boundary formula and the transport
/// residual need `centered` (at is the middle snapshot) and are NaN
/// otherwise, as are all derivative columns when `tri` is null.
inline DiagRecord make_record(const FluidParams& params, const RadialGrid& grid, const FlowState& at,
                              const SnapshotTriple* tri, bool centered, double dissipation_cum,
                              const DiagnosticsOptions& opt) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    DiagRecord row;
    row.t = at.t;
    row.mass = integrate_disk(grid, at.rho);
    row.energy = energy(params, grid, at);
    row.dissipation_cum = dissipation_cum;
    row.energy_residual = row.energy + dissipation_cum - opt.energy_initial;
    row.sup_rho = lp_norm(grid, at.rho, kSupNorm);
    row.G_boundary_direct = effective_viscous_flux(params, grid, at).G_boundary;
    row.supnorm_ineq_slack = supnorm_slack(grid, at);
    row.rho_u3 = weighted_moment(grid, at, 3.0);
    row.rho_u_2pd = weighted_moment(grid, at, 2.0 + opt.moment_delta);
    const AsymptoticMetrics am = asymptotic_metrics(grid, at, opt.rho_s, 2.0);
    row.dist_rho_L2 = am.dist_rho;
    row.dist_gradu_L2 = am.dist_gradu;
    row.G_boundary_formula = nan;
    row.transport_residual_norm = nan;
    if (tri != nullptr && centered) {
        row.G_boundary_formula = row.G_boundary_direct + boundary_flux_discrepancy(params, grid, *tri, at.t, at);
        bool positive = true;
        for (const FlowState* s : {tri->a, tri->b, tri->c})
            for (double r : s->rho) positive = positive && r >= opt.theta_floor;
        if (positive)
            row.transport_residual_norm =
                lp_norm(grid, transport_residual_field(params, grid, *tri, at, opt.theta_floor), 2.0);
    }
    Field dr(grid.size(), 0.0), dtt(grid.size(), 0.0);
    if (tri != nullptr) {
        dr = snapshot_derivative(*tri, at.t, [](const FlowState& s) { return s.u_r; });
        dtt = snapshot_derivative(*tri, at.t, [](const FlowState& s) { return s.u_theta; });
    }
    const AFunctionals a = a_functionals_with_rate(params, grid, at, dr, dtt);
    row.A1sq = a.A1sq;
    row.A2sq = tri != nullptr ? a.A2sq : nan;
    row.A3sq = a.A3sq;
    row.cap_ok = params.beta < 1.0 ? (row.sup_rho <= density_cap(params) ? 1 : 0) : -1;
    return row;
}

}  // namespace radswirl
