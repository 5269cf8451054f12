/// @file physics.hpp
/// @brief Constitutive laws and discrete radial operators on a RadialGrid.
///
/// Velocity components are odd about r = 0 and vanish at r = R; density-like
/// scalars are even about r = 0. All derivatives are second-order centered
/// differences that close the stencil with ghost values encoding those
/// parities, so no quantity is ever evaluated at r = 0.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "grid.hpp"

namespace radswirl {

struct FlowState {
    double t = 0.0;
    Field rho;
    Field u_r;
    Field u_theta;

    static FlowState zeros(const RadialGrid& grid, double t = 0.0) {
        return FlowState{t, Field(grid.size(), 0.0), Field(grid.size(), 0.0), Field(grid.size(), 0.0)};
    }
};

inline void check_state(const RadialGrid& grid, const FlowState& s) {
    detail::check_size(grid, s.rho, "state.rho");
    detail::check_size(grid, s.u_r, "state.u_r");
    detail::check_size(grid, s.u_theta, "state.u_theta");
}

inline bool is_finite(const FlowState& s) {
    auto ok = [](const Field& f) {
        for (double v : f)
            if (!std::isfinite(v)) return false;
        return true;
    };
    return std::isfinite(s.t) && ok(s.rho) && ok(s.u_r) && ok(s.u_theta);
}

// ---------------------------------------------------------------------------
// Ghost closures

/// Ghost value beyond r = R for a field vanishing at the wall: the quadratic
/// through (R, 0) and the two outermost centers, evaluated at R + h/2.
inline double wall_ghost(double last, double second_last) { return -2.0 * last + second_last / 3.0; }

/// Wall value implied by the ghost closure (zero up to round-off).
inline double wall_value(double ghost, double last, double second_last) {
    // Quadratic through r = R + h/2, R - h/2, R - 3h/2 evaluated at R.
    return 0.375 * ghost + 0.75 * last - 0.125 * second_last;
}

/// d/dr at cell centers for a field that is odd about r = 0 and zero at R.
inline Field ddr_odd_dirichlet(const RadialGrid& grid, std::span<const double> f) {
    const std::size_t n = grid.size();
    detail::check_size(grid, f, "ddr_odd_dirichlet");
    const double inv2h = 0.5 / grid.h();
    Field d(n);
    const double left = -f[0];
    const double right = wall_ghost(f[n - 1], f[n - 2]);
    for (std::size_t i = 0; i < n; ++i) {
        const double fm = (i == 0) ? left : f[i - 1];
        const double fp = (i + 1 == n) ? right : f[i + 1];
        d[i] = (fp - fm) * inv2h;
    }
    return d;
}

/// d/dr at cell centers for a field even about r = 0 with no wall condition
/// (one-sided second-order difference in the last cell).
inline Field ddr_even(const RadialGrid& grid, std::span<const double> f) {
    const std::size_t n = grid.size();
    detail::check_size(grid, f, "ddr_even");
    const double h = grid.h();
    Field d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double fm = (i == 0) ? f[0] : f[i - 1];
        d[i] = (f[i + 1] - fm) / (2.0 * h);
    }
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

/// Linear extrapolation of a cell-centered field to r = R.
inline double extrapolate_to_wall(std::span<const double> f) {
    const std::size_t n = f.size();
    return 1.5 * f[n - 1] - 0.5 * f[n - 2];
}

// ---------------------------------------------------------------------------
// Constitutive laws

inline Field pressure(const FluidParams& params, std::span<const double> rho) {
    Field p(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (rho[i] < 0.0) throw std::invalid_argument("pressure: negative density at cell " + std::to_string(i));
        p[i] = std::pow(rho[i], params.gamma);
    }
    return p;
}

inline Field bulk_viscosity(const FluidParams& params, std::span<const double> rho) {
    Field lam(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (rho[i] < 0.0) throw std::invalid_argument("bulk_viscosity: negative density at cell " + std::to_string(i));
        lam[i] = std::pow(rho[i], params.beta);
    }
    return lam;
}

inline double sound_speed(const FluidParams& params, double rho) {
    return rho > 0.0 ? std::sqrt(params.gamma * std::pow(rho, params.gamma - 1.0)) : 0.0;
}

// ---------------------------------------------------------------------------
// Kinematics

/// div u = d_r u_r + u_r / r.
inline Field divergence(const RadialGrid& grid, const FlowState& s) {
    check_state(grid, s);
    Field d = ddr_odd_dirichlet(grid, s.u_r);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += s.u_r[i] / grid.r(i);
    return d;
}

/// Scalar vorticity w = d_2 u_1 - d_1 u_2. With e_theta = (x_2/r, -x_1/r)
/// this reduces to d_r u_theta + u_theta / r; the radial part drops out.
inline Field vorticity(const RadialGrid& grid, const FlowState& s) {
    check_state(grid, s);
    Field w = ddr_odd_dirichlet(grid, s.u_theta);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += s.u_theta[i] / grid.r(i);
    return w;
}

/// |grad u|^2 = (d_r u_r)^2 + (d_r u_theta)^2 + (u_r^2 + u_theta^2) / r^2.
inline Field grad_u_squared(const RadialGrid& grid, const FlowState& s) {
    check_state(grid, s);
    const Field dr = ddr_odd_dirichlet(grid, s.u_r);
    const Field dt = ddr_odd_dirichlet(grid, s.u_theta);
    Field g(grid.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = grid.r(i);
        g[i] = dr[i] * dr[i] + dt[i] * dt[i] + (s.u_r[i] * s.u_r[i] + s.u_theta[i] * s.u_theta[i]) / (r * r);
    }
    return g;
}

inline double grad_u_l2(const RadialGrid& grid, const FlowState& s) {
    return std::sqrt(integrate_disk(grid, grad_u_squared(grid, s)));
}

inline Field speed(const FlowState& s) {
    Field v(s.u_r.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::hypot(s.u_r[i], s.u_theta[i]);
    return v;
}

// ---------------------------------------------------------------------------
// Effective viscous flux

struct EffectiveFlux {
    Field G;
    double Pbar = 0.0;
    double G_boundary = 0.0;
};

/// G = (2 mu + lambda) div u - (P - Pbar); G(R) by linear extrapolation.
inline EffectiveFlux effective_viscous_flux(const FluidParams& params, const RadialGrid& grid, const FlowState& s) {
    const Field div = divergence(grid, s);
    const Field p = pressure(params, s.rho);
    const Field lam = bulk_viscosity(params, s.rho);
    EffectiveFlux out;
    out.Pbar = mean_disk(grid, p);
    out.G.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.G[i] = (2.0 * params.mu + lam[i]) * div[i] - (p[i] - out.Pbar);
    out.G_boundary = extrapolate_to_wall(out.G);
    return out;
}

// ---------------------------------------------------------------------------
// Transport-structure fields

inline constexpr double kDefaultThetaFloor = 1e-12;

/// theta(rho) = 2 mu log rho + rho^beta / beta, with rho clamped to >= floor.
inline double theta(const FluidParams& params, double rho, double floor = kDefaultThetaFloor) {
    const double r = std::max(rho, floor);
    return 2.0 * params.mu * std::log(r) + std::pow(r, params.beta) / params.beta;
}

inline Field theta_of_rho(const FluidParams& params, std::span<const double> rho, double floor = kDefaultThetaFloor) {
    if (!(floor > 0.0)) throw std::invalid_argument("theta_of_rho: floor must be > 0");
    Field out(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) out[i] = theta(params, rho[i], floor);
    return out;
}

/// int_R^{r_i} f(s) ds at every center for an integrand vanishing at r = R
/// (trapezoid rule, marching inward from the wall).
inline Field integral_from_wall(const RadialGrid& grid, std::span<const double> f) {
    detail::check_size(grid, f, "integral_from_wall");
    const std::size_t n = grid.size();
    const double h = grid.h();
    Field out(n);
    out[n - 1] = -0.25 * h * f[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) out[k] = out[k + 1] - 0.5 * h * (f[k] + f[k + 1]);
    return out;
}

/// xi(r) = int_R^r rho u_r ds.
inline Field xi_field(const RadialGrid& grid, const FlowState& s) {
    check_state(grid, s);
    Field flux(grid.size());
    for (std::size_t i = 0; i < flux.size(); ++i) flux[i] = s.rho[i] * s.u_r[i];
    return integral_from_wall(grid, flux);
}

/// int_R^r rho (u_r^2 - u_theta^2) / s ds.
inline Field centrifugal_integral(const RadialGrid& grid, const FlowState& s) {
    check_state(grid, s);
    Field f(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = s.rho[i] * (s.u_r[i] * s.u_r[i] - s.u_theta[i] * s.u_theta[i]) / grid.r(i);
    return integral_from_wall(grid, f);
}

}  // namespace radswirl
