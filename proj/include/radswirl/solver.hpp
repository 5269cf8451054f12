/// @file solver.hpp
/// @brief Time integration of the radial compressible Navier-Stokes system
/// with swirl.
///
/// Each step is an implicit-explicit Runge-Kutta update:
///   - explicit part: finite volumes on the measure r dr for
///       (r rho)_t + (r rho u_r)_r                      = 0
///       (r rho u_r)_t + (r rho u_r^2)_r                = rho u_th^2 - r P_r
///       (r L)_t + (r L u_r)_r                          = 0,   L = r rho u_th
///     with a local Lax-Friedrichs flux and first-order or MUSCL (MC limiter)
///     reconstruction;
///   - implicit part: the radial viscous operators (viscous.hpp); lambda is
///     taken at the stage density, which the explicit mass update provides
///     before the solve.
/// crank_nicolson pairs Heun (SSP-RK2) for the explicit part with the
/// trapezoidal rule for the viscous part; implicit_euler pairs forward and
/// backward Euler. The viscous and pressure forces enter every stage
/// together, which keeps the no-slip wall balance free of splitting error.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <span>
#include <string>
#include <utility>

#include "grid.hpp"
#include "manufactured.hpp"
#include "physics.hpp"
#include "tridiagonal.hpp"
#include "viscous.hpp"

namespace radswirl {

enum class ViscousScheme { implicit_euler, crank_nicolson };
enum class AdvectScheme { upwind1, muscl2 };

inline const char* to_string(ViscousScheme s) {
    return s == ViscousScheme::implicit_euler ? "implicit_euler" : "crank_nicolson";
}
inline const char* to_string(AdvectScheme s) { return s == AdvectScheme::upwind1 ? "upwind1" : "muscl2"; }

struct SolverConfig {
    double cfl = 0.4;
    double t_end = 1.0;
    double dt_max = 1e-2;
    double rho_floor = 0.0;
    ViscousScheme viscous_scheme = ViscousScheme::crank_nicolson;
    AdvectScheme advect_scheme = AdvectScheme::muscl2;
    int snapshot_every = 10;

    void validate() const {
        if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
        if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be finite and >= 0");
        if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be > 0");
        if (!(rho_floor >= 0.0)) throw std::invalid_argument("rho_floor must be >= 0");
        if (snapshot_every < 1) throw std::invalid_argument("snapshot_every must be >= 1");
    }
};

/// Non-finite values or a broken linear solve during time stepping.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double time, bool numerical)
        : std::runtime_error(what), time_(time), numerical_(numerical) {}
    double time() const { return time_; }
    /// True when the failure is a NaN/Inf in the fields rather than a linear solve.
    bool numerical() const { return numerical_; }

private:
    double time_;
    bool numerical_;
};

/// dt = min(dt_max, cfl h / max_i(|u_r| + c_i)), c = sqrt(gamma rho^(gamma-1)).
inline double stable_dt(const FluidParams& params, const RadialGrid& grid, const FlowState& s, const SolverConfig& cfg) {
    check_state(grid, s);
    if (!is_finite(s)) throw SolverError("stable_dt: non-finite field values", s.t, true);
    double speed_max = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        speed_max = std::max(speed_max, std::abs(s.u_r[i]) + sound_speed(params, s.rho[i]));
    if (speed_max == 0.0) return cfg.dt_max;
    return std::min(cfg.dt_max, cfg.cfl * grid.h() / speed_max);
}

namespace detail {

/// Cell integrals per unit angle of (rho, rho u_r, r rho u_theta) over r dr.
struct Conserved {
    Field mass;
    Field mom;
    Field ang;
};

inline double mc_limiter(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    const double m = std::min({2.0 * std::abs(a), 2.0 * std::abs(b), 0.5 * std::abs(a + b)});
    return a > 0.0 ? m : -m;
}

/// Face traces: left[f] comes from cell f-1, right[f] from cell f.
struct Traces {
    Field left;
    Field right;
};

/// An even field (ghost_lo == f[0]) has a smooth extremum at r = 0, so the
/// first cell takes the one-sided slope (f[1] - f[0]) / 2 instead of the
/// clipped limiter value; its face-1 trace still lies between f[0] and f[1].
inline Traces reconstruct(std::span<const double> f, double ghost_lo, double ghost_hi, AdvectScheme scheme) {
    const std::size_t n = f.size();
    Traces tr{Field(n + 1, 0.0), Field(n + 1, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        double slope = 0.0;
        if (scheme == AdvectScheme::muscl2) {
            const double fm = (i == 0) ? ghost_lo : f[i - 1];
            const double fp = (i + 1 == n) ? ghost_hi : f[i + 1];
            slope = (i == 0 && ghost_lo == f[0]) ? 0.5 * (fp - f[i]) : mc_limiter(f[i] - fm, fp - f[i]);
        }
        tr.right[i] = f[i] - 0.5 * slope;
        tr.left[i + 1] = f[i] + 0.5 * slope;
    }
    return tr;
}

/// Values at faces 0..N-1 from the four-point interpolant (-1, 9, 9, -1)/16;
/// parity ghosts at r = 0 and one closure ghost past r = R. Face N is left 0.
inline Field face_interpolant(std::span<const double> f, double parity, double ghost_hi) {
    const std::size_t n = f.size();
    auto at = [&](std::ptrdiff_t i) {
        if (i < 0) return parity * f[static_cast<std::size_t>(-i - 1)];
        if (i >= static_cast<std::ptrdiff_t>(n)) return ghost_hi;
        return f[static_cast<std::size_t>(i)];
    };
    Field out(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::ptrdiff_t>(k);
        out[k] = (-at(i - 2) + 9.0 * at(i - 1) + 9.0 * at(i) - at(i + 1)) / 16.0;
    }
    return out;
}

/// Time derivative of the Conserved cell integrals for the inviscid part.
/// upwind1 is the first-order local Lax-Friedrichs scheme. muscl2 keeps the
/// Lax-Friedrichs dissipation on the jump of MC-limited traces and takes the
/// central part from four-point face values; near the wall this keeps the
/// flux error third order, so the last cell is not a first-order source.
inline Conserved inviscid_rate(const FluidParams& params, const RadialGrid& grid, const FlowState& s,
                               AdvectScheme scheme, const MmsSource* mms) {
    const std::size_t n = grid.size();
    const double h = grid.h();
    const double rho_hi = std::max(0.0, 3.0 * s.rho[n - 1] - 3.0 * s.rho[n - 2] + s.rho[n - 3]);
    const double ur_hi = wall_ghost(s.u_r[n - 1], s.u_r[n - 2]);
    const double ut_hi = wall_ghost(s.u_theta[n - 1], s.u_theta[n - 2]);
    const Traces rho = reconstruct(s.rho, s.rho[0], rho_hi, scheme);
    const Traces ur = reconstruct(s.u_r, -s.u_r[0], ur_hi, scheme);
    const Traces ut = reconstruct(s.u_theta, -s.u_theta[0], ut_hi, scheme);
    const bool high = scheme == AdvectScheme::muscl2;
    Field rho_c, ur_c, ut_c;
    if (high) {
        rho_c = face_interpolant(s.rho, 1.0, rho_hi);
        ur_c = face_interpolant(s.u_r, -1.0, ur_hi);
        ut_c = face_interpolant(s.u_theta, -1.0, ut_hi);
    }

    // Face fluxes already multiplied by the face radius; face 0 and face N
    // carry no convective flux since r = 0 there or u_r = 0 at the wall.
    Field fm(n + 1, 0.0), fu(n + 1, 0.0), fl(n + 1, 0.0), pface(n + 1, 0.0);
    for (std::size_t f = 1; f < n; ++f) {
        const double rl = rho.left[f], rr = rho.right[f];
        const double ul = ur.left[f], uR = ur.right[f];
        const double vl = ut.left[f], vr = ut.right[f];
        const double a = std::max(std::abs(ul) + sound_speed(params, rl), std::abs(uR) + sound_speed(params, rr));
        const double rf = grid.face(f);
        double cm, cu, cl, cp;
        if (high) {
            const double rc = rho_c[f], uc = ur_c[f], vc = ut_c[f];
            cm = rc * uc;
            cu = rc * uc * uc;
            cl = rc * uc * vc;
            cp = std::pow(std::max(rc, 0.0), params.gamma);
        } else {
            cm = 0.5 * (rl * ul + rr * uR);
            cu = 0.5 * (rl * ul * ul + rr * uR * uR);
            cl = 0.5 * (rl * ul * vl + rr * uR * vr);
            cp = 0.5 * (std::pow(rl, params.gamma) + std::pow(rr, params.gamma));
        }
        fm[f] = rf * (cm - 0.5 * a * (rr - rl));
        fu[f] = rf * (cu - 0.5 * a * (rr * uR - rl * ul));
        fl[f] = rf * rf * (cl - 0.5 * a * (rr * vr - rl * vl));
        pface[f] = cp;
    }
    if (high) {
        pface[0] = std::pow(std::max(rho_c[0], 0.0), params.gamma);
        const double rho_wall = (15.0 * s.rho[n - 1] - 10.0 * s.rho[n - 2] + 3.0 * s.rho[n - 3]) / 8.0;
        pface[n] = std::pow(std::max(rho_wall, 0.0), params.gamma);
    } else {
        pface[0] = std::pow(rho.right[0], params.gamma);
        pface[n] = std::pow(rho.left[n], params.gamma);
    }

    Conserved rate{Field(n), Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.r(i);
        rate.mass[i] = -(fm[i + 1] - fm[i]);
        rate.mom[i] = -(fu[i + 1] - fu[i]) + h * s.rho[i] * s.u_theta[i] * s.u_theta[i] - r * (pface[i + 1] - pface[i]);
        rate.ang[i] = -(fl[i + 1] - fl[i]);
    }
    if (mms != nullptr && mms->active()) {
        for (std::size_t i = 0; i < n; ++i) {
            const double r = grid.r(i);
            const double vol = r * h;
            if (mms->s_mass) rate.mass[i] += vol * mms->s_mass(r, s.t);
            if (mms->s_mom_r) rate.mom[i] += vol * mms->s_mom_r(r, s.t);
            if (mms->s_mom_theta) rate.ang[i] += vol * r * mms->s_mom_theta(r, s.t);
        }
    }
    return rate;
}

/// Primitive state from stage densities and velocity solves.
struct ImexStage {
    Field rho;
    Field rhs_r;  ///< rho u_r before the implicit viscous term
    Field rhs_t;  ///< rho u_theta before the implicit viscous term
};

/// base + sum_k c_k rate_k, in primitive per-area form.
inline ImexStage explicit_stage(const RadialGrid& grid, const FlowState& s, double dt,
                                std::initializer_list<std::pair<double, const Conserved*>> rates) {
    const std::size_t n = grid.size();
    ImexStage st{Field(n), Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double vol = grid.r(i) * grid.h();
        double m = s.rho[i] * vol, p = s.rho[i] * s.u_r[i] * vol, l = grid.r(i) * s.rho[i] * s.u_theta[i] * vol;
        for (const auto& [c, rate] : rates) {
            m += dt * c * rate->mass[i];
            p += dt * c * rate->mom[i];
            l += dt * c * rate->ang[i];
        }
        st.rho[i] = m / vol;
        st.rhs_r[i] = p / vol;
        st.rhs_t[i] = l / (grid.r(i) * vol);
    }
    return st;
}

}  // namespace detail

/// Advances `s` by dt. Throws SolverError on a failed viscous solve or on
/// non-finite output.
inline FlowState step(const FluidParams& params, const RadialGrid& grid, const FlowState& s, const SolverConfig& cfg,
                      double dt, const MmsSource* mms = nullptr) {
    check_state(grid, s);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step: dt must be positive and finite");
    const std::size_t n = grid.size();
    // The density of every stage is explicit, so lambda is evaluated at the
    // stage density and each implicit solve stays linear and tridiagonal.
    auto radial_operator = [&](std::span<const double> rho) {
        Field kappa(n);
        for (std::size_t i = 0; i < n; ++i) kappa[i] = 2.0 * params.mu + std::pow(rho[i], params.beta);
        return viscous_operator(grid, kappa);
    };
    const Tridiagonal a_t = viscous_operator(grid, Field(n, params.mu));

    FlowState out = FlowState::zeros(grid, s.t + dt);
    try {
        const detail::Conserved e0 = detail::inviscid_rate(params, grid, s, cfg.advect_scheme, mms);
        if (cfg.viscous_scheme == ViscousScheme::implicit_euler) {
            detail::ImexStage st = detail::explicit_stage(grid, s, dt, {{1.0, &e0}});
            out.rho = st.rho;
            out.u_r = implicit_viscous_solve(radial_operator(st.rho), st.rho, std::move(st.rhs_r), dt);
            out.u_theta = implicit_viscous_solve(a_t, st.rho, std::move(st.rhs_t), dt);
        } else {
            const double half = 0.5 * dt;
            const Field av_r = radial_operator(s.rho).apply(s.u_r);
            const Field av_t = a_t.apply(s.u_theta);
            auto solve_stage = [&](detail::ImexStage st, double t) {
                FlowState x = FlowState::zeros(grid, t);
                for (std::size_t i = 0; i < n; ++i) {
                    st.rhs_r[i] += half * av_r[i];
                    st.rhs_t[i] += half * av_t[i];
                }
                x.rho = st.rho;
                x.u_r = implicit_viscous_solve(radial_operator(st.rho), st.rho, std::move(st.rhs_r), half);
                x.u_theta = implicit_viscous_solve(a_t, st.rho, std::move(st.rhs_t), half);
                return x;
            };
            const FlowState mid = solve_stage(detail::explicit_stage(grid, s, dt, {{1.0, &e0}}), s.t + dt);
            const detail::Conserved e1 = detail::inviscid_rate(params, grid, mid, cfg.advect_scheme, mms);
            out = solve_stage(detail::explicit_stage(grid, s, dt, {{0.5, &e0}, {0.5, &e1}}), s.t + dt);
        }
    } catch (const LinearSolveError& e) {
        throw SolverError(e.what(), s.t, false);
    }
    for (double& r : out.rho) r = std::max(r, cfg.rho_floor);
    out.t = s.t + dt;
    if (!is_finite(out)) throw SolverError("step: non-finite field values", s.t, true);
    return out;
}

/// Step with dt from stable_dt().
inline FlowState step(const FluidParams& params, const RadialGrid& grid, const FlowState& s, const SolverConfig& cfg,
                      const MmsSource* mms = nullptr) {
    return step(params, grid, s, cfg, stable_dt(params, grid, s, cfg), mms);
}

}  // namespace radswirl
