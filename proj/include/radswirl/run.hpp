/// @file run.hpp
/// @brief Run driver: advances a state to t_end and records the ledger.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "manufactured.hpp"
#include "solver.hpp"

namespace radswirl {

struct RunResult {
    FlowState final_state;
    std::vector<DiagRecord> ledger;
    std::size_t steps = 0;
    double rho_s = 0.0;
    double min_dt = std::numeric_limits<double>::infinity();
    double max_dt = 0.0;
};

struct RunOptions {
    /// Exponent offset for int rho |u|^{2+delta}; NaN selects the default
    /// from the initial sup of rho.
    double moment_delta = std::numeric_limits<double>::quiet_NaN();
    double theta_floor = kDefaultThetaFloor;
    /// Optional fixed step; when > 0 it replaces stable_dt().
    double fixed_dt = 0.0;
};

namespace detail {

struct Snapshot {
    FlowState state;
    double dissipation_cum = 0.0;
};

}  // namespace detail

/// Advances state0 to cfg.t_end. One ledger row every cfg.snapshot_every
/// steps plus the final state; deterministic for fixed inputs. Rows use the
/// neighbouring steps for time derivatives: centered in general, forward at
/// t = 0 (where the centered-only columns are NaN), and a look-ahead step
/// past t_end for the final row.
inline RunResult run(const FluidParams& params, const RadialGrid& grid, const FlowState& state0,
                     const SolverConfig& cfg, const MmsSource* mms = nullptr, const RunOptions& opt = {}) {
    params.validate();
    cfg.validate();
    check_state(grid, state0);
    if (!is_finite(state0)) throw SolverError("run: initial state has non-finite values", state0.t, true);

    RunResult result;
    const double mass0 = integrate_disk(grid, state0.rho);
    result.rho_s = mass0 / grid.area();
    DiagnosticsOptions dopt;
    dopt.rho_s = result.rho_s;
    dopt.energy_initial = energy(params, grid, state0);
    dopt.theta_floor = opt.theta_floor;
    dopt.moment_delta = std::isnan(opt.moment_delta)
                            ? default_moment_delta(params, lp_norm(grid, state0.rho, kSupNorm))
                            : opt.moment_delta;

    const double t_final = state0.t + cfg.t_end;
    auto record = [&](const detail::Snapshot& at, const FlowState* a, const FlowState* b, const FlowState* c,
                      bool centered) {
        const SnapshotTriple tri{a, b, c};
        result.ledger.push_back(make_record(params, grid, at.state, a != nullptr ? &tri : nullptr, centered,
                                            at.dissipation_cum, dopt));
    };

    std::deque<detail::Snapshot> window;  // the last three steps
    window.push_back({state0, 0.0});
    double rate_prev = dissipation_rate(params, grid, state0);
    double diss = 0.0;
    double last_dt = 0.0;
    std::size_t n = 0;
    bool want_previous = false;  // row requested at step n - 1

    while (window.back().state.t < t_final) {
        const FlowState& current = window.back().state;
        double dt = opt.fixed_dt > 0.0 ? opt.fixed_dt : stable_dt(params, grid, current, cfg);
        const double remaining = t_final - current.t;
        if (dt >= remaining) dt = remaining;
        else if (2.0 * dt > remaining) dt = 0.5 * remaining;
        FlowState next = step(params, grid, current, cfg, dt, mms);
        if (dt == remaining) next.t = t_final;
        ++n;
        last_dt = dt;
        result.min_dt = std::min(result.min_dt, dt);
        result.max_dt = std::max(result.max_dt, dt);
        const double rate = dissipation_rate(params, grid, next);
        diss += 0.5 * dt * (rate_prev + rate);
        rate_prev = rate;
        window.push_back({std::move(next), diss});
        if (window.size() > 3) window.pop_front();

        if (n == 2) record(window[0], &window[0].state, &window[1].state, &window[2].state, false);
        if (want_previous) record(window[1], &window[0].state, &window[1].state, &window[2].state, true);
        want_previous = n % static_cast<std::size_t>(cfg.snapshot_every) == 0 && window.back().state.t < t_final;
    }

    const detail::Snapshot& last = window.back();
    if (n == 0) {
        record(last, nullptr, nullptr, nullptr, false);
    } else {
        if (n == 1) record(window[0], nullptr, nullptr, nullptr, false);
        FlowState ahead;
        bool have_ahead = true;
        try {
            ahead = step(params, grid, last.state, cfg, last_dt, mms);
        } catch (const SolverError&) {
            have_ahead = false;
        }
        const FlowState& before = window[window.size() - 2].state;
        if (have_ahead) record(last, &before, &last.state, &ahead, true);
        else if (n >= 2) record(last, &window[0].state, &window[1].state, &last.state, false);
        else record(last, nullptr, nullptr, nullptr, false);
    }

    result.final_state = last.state;
    result.steps = n;
    return result;
}

}  // namespace radswirl
