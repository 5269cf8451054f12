/// @file initial_data.hpp
/// @brief Regularized initial data: mollified density and the velocity
/// solving the compatibility system
///   -mu Lap u0 - grad((mu + lambda(rho0)) div u0) + grad P(rho0) = sqrt(rho0) g,
///   u0 = 0 on the boundary.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "physics.hpp"
#include "tridiagonal.hpp"
#include "viscous.hpp"

namespace radswirl {

namespace detail {

/// Piecewise-linear radial profile through the centers, even about r = 0
/// and constant beyond the last center.
inline double radial_profile(const RadialGrid& grid, std::span<const double> f, double s) {
    const std::size_t n = grid.size();
    const double h = grid.h();
    if (s <= grid.r(0)) return f[0];
    if (s >= grid.r(n - 1)) return f[n - 1];
    const double x = s / h - 0.5;
    const auto i = static_cast<std::size_t>(x);
    const double w = x - static_cast<double>(i);
    return (1.0 - w) * f[i] + w * f[std::min(i + 1, n - 1)];
}

}  // namespace detail

/// rho0^delta = rho0 * eta_delta + delta with eta the standard C-infinity
/// bump of radius delta in 2D. Quadrature over the kernel support is polar
/// and normalized, so constants are reproduced exactly.
inline Field mollify_density(const RadialGrid& grid, std::span<const double> rho0, double delta) {
    detail::check_size(grid, rho0, "mollify_density");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("mollify_density: delta must be > 0");
    for (double v : rho0)
        if (!(v >= 0.0)) throw std::invalid_argument("mollify_density: density must be >= 0");

    constexpr int n_rad = 32;
    constexpr int n_ang = 64;
    struct Node {
        double dist;
        double cosang;
        double weight;
    };
    std::vector<Node> nodes;
    nodes.reserve(n_rad * n_ang);
    double total = 0.0;
    for (int k = 0; k < n_rad; ++k) {
        const double s = (k + 0.5) / n_rad;  // |y| / delta
        const double eta = std::exp(-1.0 / (1.0 - s * s));
        for (int j = 0; j < n_ang; ++j) {
            const double phi = 2.0 * std::numbers::pi * (j + 0.5) / n_ang;
            const double w = eta * s;
            nodes.push_back({s * delta, std::cos(phi), w});
            total += w;
        }
    }
    Field out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.r(i);
        double acc = 0.0;
        for (const Node& nd : nodes) {
            const double d2 = x * x + nd.dist * nd.dist - 2.0 * x * nd.dist * nd.cosang;
            acc += nd.weight * detail::radial_profile(grid, rho0, std::sqrt(std::max(d2, 0.0)));
        }
        out[i] = acc / total + delta;
    }
    return out;
}

struct CompatibilityVelocity {
    Field u_r;
    Field u_theta;
};

/// Two decoupled Dirichlet problems in r:
///   -d_r((2mu + lambda(rho0))(d_r u_r + u_r/r)) + d_r P(rho0) = sqrt(rho0) g_r
///   -mu (d_rr u_th + d_r u_th / r - u_th / r^2)             = sqrt(rho0) g_th
inline CompatibilityVelocity solve_compatibility_velocity(const FluidParams& params, const RadialGrid& grid,
                                                          std::span<const double> rho0, std::span<const double> g_r,
                                                          std::span<const double> g_theta) {
    params.validate();
    detail::check_size(grid, rho0, "solve_compatibility_velocity: rho0");
    detail::check_size(grid, g_r, "solve_compatibility_velocity: g_r");
    detail::check_size(grid, g_theta, "solve_compatibility_velocity: g_theta");
    for (double v : rho0)
        if (!(v > 0.0))
            throw LinearSolveError("solve_compatibility_velocity: rho0 must be bounded below by a positive constant");

    const std::size_t n = grid.size();
    Field kappa(n), kappa_mu(n, params.mu);
    for (std::size_t i = 0; i < n; ++i) kappa[i] = 2.0 * params.mu + std::pow(rho0[i], params.beta);
    const Field p = pressure(params, rho0);
    const Field dp = ddr_even(grid, p);

    auto negate = [](Tridiagonal a) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            a.lower[i] = -a.lower[i];
            a.diag[i] = -a.diag[i];
            a.upper[i] = -a.upper[i];
        }
        return a;
    };
    Field rhs_r(n), rhs_t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sq = std::sqrt(rho0[i]);
        rhs_r[i] = sq * g_r[i] - dp[i];
        rhs_t[i] = sq * g_theta[i];
    }
    CompatibilityVelocity out;
    out.u_r = solve(negate(viscous_operator(grid, kappa)), std::move(rhs_r));
    out.u_theta = solve(negate(viscous_operator(grid, kappa_mu)), std::move(rhs_t));
    return out;
}

}  // namespace radswirl
