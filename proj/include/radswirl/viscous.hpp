/// @file viscous.hpp
/// @brief Discrete radial viscous operator d_r( kappa (1/r) d_r (r u) ).
///
/// Both viscous terms of the radial system share this structure:
///   radial:  d_r((2 mu + lambda)(d_r u_r + u_r/r))      kappa = 2 mu + lambda
///   swirl :  mu (d_rr u_th + d_r u_th / r - u_th / r^2)  kappa = mu
/// The face flux kappa_f D_f uses D_f = (r u)'/r at interior faces, the
/// limit 2 u_0 / r_0 at the origin and the quadratic wall ghost at r = R.
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "physics.hpp"
#include "tridiagonal.hpp"

namespace radswirl {

/// Face viscosities from cell values (arithmetic mean inside, end-cell value
/// at r = 0, bounded linear extrapolation at r = R).
inline Field face_coefficients(std::span<const double> kappa) {
    const std::size_t n = kappa.size();
    Field kf(n + 1);
    kf[0] = kappa[0];
    for (std::size_t f = 1; f < n; ++f) kf[f] = 0.5 * (kappa[f - 1] + kappa[f]);
    kf[n] = std::max(1.5 * kappa[n - 1] - 0.5 * kappa[n - 2], std::min(kappa[n - 1], kappa[n - 2]));
    return kf;
}

/// Assembles A with (A u)_i = (Phi_{i+1} - Phi_i) / h.
inline Tridiagonal viscous_operator(const RadialGrid& grid, std::span<const double> kappa) {
    detail::check_size(grid, kappa, "viscous_operator");
    const std::size_t n = grid.size();
    const double h = grid.h();
    const Field kf = face_coefficients(kappa);
    Tridiagonal a(n);

    // Phi_f = cm * u_{f-1} + cp * u_f at interior faces.
    for (std::size_t f = 1; f < n; ++f) {
        const double s = kf[f] / (h * grid.face(f));
        const double cm = -s * grid.r(f - 1);
        const double cp = s * grid.r(f);
        // row f-1 gets +Phi_f / h, row f gets -Phi_f / h
        a.diag[f - 1] += cm / h;
        a.upper[f - 1] += cp / h;
        a.lower[f] -= cm / h;
        a.diag[f] -= cp / h;
    }
    // Origin face: Phi_0 = kappa_0 * 2 u_0 / r_0, enters row 0 with a minus sign.
    a.diag[0] -= kf[0] * 2.0 / (grid.r(0) * h);
    // Wall face: Phi_N = kappa_N (-3 r_{N-1} u_{N-1} + r_{N-2} u_{N-2} / 3) / (h R).
    {
        const double s = kf[n] / (h * grid.radius());
        a.diag[n - 1] += -3.0 * s * grid.r(n - 1) / h;
        a.lower[n - 1] += s * grid.r(n - 2) / (3.0 * h);
    }
    return a;
}

inline Field apply_viscous(const RadialGrid& grid, std::span<const double> kappa, std::span<const double> u) {
    detail::check_size(grid, u, "apply_viscous");
    return viscous_operator(grid, kappa).apply(Field(u.begin(), u.end()));
}

/// Solves (diag(rho) - tau A) u = rhs for the implicit viscous stage.
inline Field implicit_viscous_solve(const Tridiagonal& a, std::span<const double> rho, Field rhs, double tau) {
    const std::size_t n = a.size();
    Tridiagonal m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.diag[i] = rho[i] - tau * a.diag[i];
        m.lower[i] = -tau * a.lower[i];
        m.upper[i] = -tau * a.upper[i];
    }
    if (!m.diagonally_dominant())
        throw LinearSolveError("viscous solve: system is not diagonally dominant (time step too large)");
    return solve(m, std::move(rhs));
}

/// One theta-scheme substep for rho du/dt = A u over tau:
/// (rho - theta tau A) u_new = rho u + (1 - theta) tau A u.
inline Field viscous_substep(const RadialGrid& grid, std::span<const double> rho, std::span<const double> kappa,
                             std::span<const double> u, double tau, double theta_weight) {
    const std::size_t n = grid.size();
    const Tridiagonal a = viscous_operator(grid, kappa);
    const Field au = a.apply(Field(u.begin(), u.end()));
    Field rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = rho[i] * u[i] + (1.0 - theta_weight) * tau * au[i];
    return implicit_viscous_solve(a, rho, std::move(rhs), theta_weight * tau);
}

}  // namespace radswirl
