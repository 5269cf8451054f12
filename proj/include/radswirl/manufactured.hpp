/// @file manufactured.hpp
/// @brief Manufactured solutions and the forcing that makes them exact.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "grid.hpp"
#include "jet.hpp"
#include "physics.hpp"

namespace radswirl {

/// Closed-form fields (rho*, u_r*, u_theta*) of (r, t). Each callable is
/// differentiated by passing a Jet in either argument.
struct ManufacturedSolution {
    std::function<Jet(Jet, Jet)> rho;
    std::function<Jet(Jet, Jet)> u_r;
    std::function<Jet(Jet, Jet)> u_theta;

    FlowState sample(const RadialGrid& grid, double t) const {
        FlowState s = FlowState::zeros(grid, t);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Jet r(grid.r(i));
            s.rho[i] = rho(r, Jet(t)).v;
            s.u_r[i] = u_r(r, Jet(t)).v;
            s.u_theta[i] = u_theta(r, Jet(t)).v;
        }
        return s;
    }
};

/// Right-hand sides added to the mass, radial-momentum and swirl-momentum
/// equations. Empty callables mean no forcing.
struct MmsSource {
    std::function<double(double, double)> s_mass;
    std::function<double(double, double)> s_mom_r;
    std::function<double(double, double)> s_mom_theta;

    bool active() const { return static_cast<bool>(s_mass) || static_cast<bool>(s_mom_r) || static_cast<bool>(s_mom_theta); }
};

struct SourceValues {
    double mass = 0.0;
    double mom_r = 0.0;
    double mom_theta = 0.0;
};

/// Residual of the radial system at (r, t) for the manufactured fields.
inline SourceValues manufactured_residual(const FluidParams& params, const ManufacturedSolution& ms, double r, double t) {
    const Jet rr = Jet::variable(r);
    const Jet tc(t);
    const Jet rho = ms.rho(rr, tc);
    const Jet u = ms.u_r(rr, tc);
    const Jet v = ms.u_theta(rr, tc);

    const Jet rc(r);
    const Jet tt = Jet::variable(t);
    const Jet rho_t = ms.rho(rc, tt);
    const Jet mu_t = rho_t * ms.u_r(rc, tt);
    const Jet nu_t = rho_t * ms.u_theta(rc, tt);

    const double mu = params.mu;
    const Jet m = rho * u;
    const Jet kappa = 2.0 * mu + pow(rho, params.beta);
    const double div = u.d + u.v / r;
    const double div_r = u.dd + u.d / r - u.v / (r * r);
    const Jet p = pow(rho, params.gamma);

    SourceValues s;
    s.mass = rho_t.d + m.d + m.v / r;
    s.mom_r = mu_t.d + (m * u).d + rho.v * (u.v * u.v - v.v * v.v) / r - (kappa.d * div + kappa.v * div_r) + p.d;
    s.mom_theta = nu_t.d + (m * v).d + 2.0 * m.v * v.v / r - mu * (v.dd + v.d / r - v.v / (r * r));
    return s;
}

/// Builds the forcing for `ms`. The manufactured velocity must vanish at
/// r = 0 and r = R (checked on t in [0, 10]).
inline MmsSource mms_sources(const FluidParams& params, const ManufacturedSolution& ms, double bc_tol = 1e-10) {
    params.validate();
    if (!ms.rho || !ms.u_r || !ms.u_theta) throw std::invalid_argument("mms_sources: manufactured fields incomplete");
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.25 * k;
        for (double r : {0.0, params.R}) {
            const double ur = ms.u_r(Jet(r), Jet(t)).v;
            const double ut = ms.u_theta(Jet(r), Jet(t)).v;
            if (std::abs(ur) > bc_tol || std::abs(ut) > bc_tol)
                throw std::invalid_argument("mms_sources: manufactured velocity violates the no-slip condition at r = " +
                                            std::to_string(r) + ", t = " + std::to_string(t));
        }
    }
    MmsSource src;
    src.s_mass = [params, ms](double r, double t) { return manufactured_residual(params, ms, r, t).mass; };
    src.s_mom_r = [params, ms](double r, double t) { return manufactured_residual(params, ms, r, t).mom_r; };
    src.s_mom_theta = [params, ms](double r, double t) { return manufactured_residual(params, ms, r, t).mom_theta; };
    return src;
}

/// Equilibrium (rho_s, 0, 0).
inline ManufacturedSolution equilibrium_solution(double rho_s) {
    ManufacturedSolution ms;
    ms.rho = [rho_s](Jet, Jet) { return Jet(rho_s); };
    ms.u_r = [](Jet, Jet) { return Jet(0.0); };
    ms.u_theta = [](Jet, Jet) { return Jet(0.0); };
    return ms;
}

/// Smooth time-dependent solution with swirl, regular at the origin.
inline ManufacturedSolution smooth_solution(double R) {
    const double k = std::numbers::pi / R;
    ManufacturedSolution ms;
    ms.rho = [k](Jet r, Jet t) { return 1.0 + 0.1 * sin(t) * cos(k * r); };
    ms.u_r = [R](Jet r, Jet t) {
        const Jet x = r / R;
        return 0.2 * x * (1.0 - x * x) * (1.0 + 0.5 * sin(t));
    };
    ms.u_theta = [k](Jet r, Jet t) { return 0.3 * sin(k * r) * cos(t); };
    return ms;
}

}  // namespace radswirl
