// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "radswirl/radswirl.hpp"

using namespace radswirl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %-28s %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

FluidParams params_for(const std::string& preset) {
    if (preset == "beta_ge_1_large" || preset == "beta_between") return {1.0, 1.5, 2.0, 1.0};
    if (preset == "beta_lt_1_small" || preset == "beta_lt_1_rejected") return {1.0, 0.75, 1.5, 1.0};
    return {1.0, 1.0, 1.4, 1.0};
}

SolverConfig with_floor(SolverConfig cfg, const RadialGrid& g, const FlowState& s0) {
    cfg.rho_floor = 1e-10 * mean_disk(g, s0.rho);
    return cfg;
}

struct PresetRun {
    RunResult result;
    double seconds = 0.0;
    double h = 0.0;
};

// Minimum observed order over consecutive levels; NaN entries fail.
double min_order(const std::vector<double>& e) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < e.size(); ++j) {
        const double p = std::log2(e[j - 1] / e[j]);
        m = std::isnan(p) ? -std::numeric_limits<double>::infinity() : std::min(m, p);
    }
    return m;
}

std::string series(const std::vector<double>& e) {
    std::string s;
    for (double v : e) s += (s.empty() ? "" : " ") + fmt(v);
    return s;
}

std::map<std::string, PresetRun> run_all_presets() {
    std::map<std::string, PresetRun> out;
    for (const std::string& name : preset_names()) {
        const FluidParams p = params_for(name);
        const RadialGrid g(256, p.R);
        const FlowState s0 = make_preset(name, p, g);
        SolverConfig cfg;
        cfg.t_end = 5.0;
        const auto t0 = Clock::now();
        PresetRun pr;
        pr.result = run(p, g, s0, with_floor(cfg, g, s0));
        pr.seconds = seconds_since(t0);
        pr.h = g.h();
        out.emplace(name, std::move(pr));
    }
    return out;
}

void criterion_mass(const std::map<std::string, PresetRun>& runs) {
    double worst = 0.0, slowest = 0.0;
    for (const auto& [name, pr] : runs) {
        const double m0 = pr.result.ledger.front().mass;
        for (const DiagRecord& r : pr.result.ledger) worst = std::max(worst, std::abs(r.mass - m0) / m0);
        slowest = std::max(slowest, pr.seconds);
    }
    report(1, "mass conservation", worst <= 1e-12 && slowest <= 60.0,
           "max drift " + fmt(worst) + ", slowest preset " + fmt(slowest) + " s (N=256, t_end=5)");
}

void criterion_equilibrium(const PresetRun& pr) {
    double worst = 0.0;
    for (const DiagRecord& r : pr.result.ledger) {
        for (double v : {r.energy_residual, r.dissipation_cum, r.G_boundary_direct, r.G_boundary_formula,
                         r.G_boundary_formula - r.G_boundary_direct, r.transport_residual_norm, r.dist_rho_L2,
                         r.dist_gradu_L2, r.energy - pr.result.ledger.front().energy})
            if (!std::isnan(v)) worst = std::max(worst, std::abs(v));
    }
    report(2, "equilibrium fixed point", worst <= 1e-12, "max residual " + fmt(worst));
}

struct Ladder {
    std::vector<LevelResiduals> levels;
    double seconds = 0.0;
};

Ladder identity_ladder(const std::string& preset, int levels) {
    const FluidParams p = params_for(preset);
    SolverConfig base;
    base.cfl = 1.0;
    base.dt_max = 0.01;
    base.snapshot_every = 5;
    base.t_end = 1.0;
    const auto t0 = Clock::now();
    Ladder l;
    l.levels = run_refinement(p, 64, base, levels, [&](const RadialGrid& g) { return make_preset(preset, p, g); });
    l.seconds = seconds_since(t0);
    return l;
}

void criterion_slack(const std::map<std::string, PresetRun>& runs) {
    double worst = std::numeric_limits<double>::infinity();
    std::string where;
    for (const auto& [name, pr] : runs)
        for (const DiagRecord& r : pr.result.ledger) {
            const double margin = r.supnorm_ineq_slack + 10.0 * pr.h * r.dist_gradu_L2;
            if (margin < worst) {
                worst = margin;
                where = name;
            }
        }
    report(6, "sup-norm inequality", worst >= 0.0, "min margin " + fmt(worst) + " (" + where + ")");
}

void criterion_mms() {
    const FluidParams p{1.0, 1.0, 1.4, 1.0};
    SolverConfig base;
    base.t_end = 1.0;
    base.dt_max = 0.01;
    const auto table = run_mms_study(p, 64, base, 3);
    std::vector<double> a, b, c;
    for (const auto& l : table) {
        a.push_back(l.err_rho);
        b.push_back(l.err_ur);
        c.push_back(l.err_utheta);
    }
    const double order = std::min({min_order(a), min_order(b), min_order(c)});
    report(7, "MMS convergence", order >= 1.8,
           "min order " + fmt(order) + "; rho " + series(a) + "; u_r " + series(b) + "; u_theta " + series(c));
}

void criterion_threshold() {
    const auto t0 = Clock::now();
    double worst_res = 0.0;
    bool monotone = true;
    for (double mu : {0.5, 1.0, 2.0})
        for (double beta : {0.25, 0.5, 0.75})
            for (double gamma : {1.5, 2.0, 3.0}) {
                const ThresholdInputs in{mu, beta, gamma, 1.0, 1.0};
                const ThresholdReport rep = solve_a0(in);
                const double k = K_of_a(in, rep.a0);
                worst_res = std::max(worst_res, std::abs(k - rep.target) / std::max(1.0, std::abs(rep.target)));
                // 50 log-spaced points spanning three decades around a0.
                double prev = -std::numeric_limits<double>::infinity();
                for (int i = 0; i < 50; ++i) {
                    const double a = rep.a0 * std::pow(10.0, -1.5 + 3.0 * i / 49.0);
                    const double ka = K_of_a(in, a);
                    if (!(ka > prev)) monotone = false;
                    prev = ka;
                }
            }
    const double secs = seconds_since(t0);
    report(8, "threshold arithmetic", worst_res <= 1e-10 && monotone && secs <= 10.0,
           "max relative residual " + fmt(worst_res) + ", monotone " + (monotone ? "yes" : "no") + ", " + fmt(secs) +
               " s");
}

void criteria_small_density() {
    const std::string name = "beta_lt_1_small";
    const FluidParams p = params_for(name);
    const RadialGrid g(256, p.R);
    const FlowState s0 = make_preset(name, p, g);
    const ThresholdInputs in{p.mu, p.beta, p.gamma, p.R, grad_u_l2(g, s0)};
    const AdmissibilityResult v = admissibility_verdict(in, lp_norm(g, s0.rho, kSupNorm));
    SolverConfig cfg;
    cfg.t_end = 20.0;
    const RunResult res = run(p, g, s0, with_floor(cfg, g, s0));

    const double cap = density_cap(p);
    const double allowance = 0.99 * cap + 0.01 * cap;
    double sup = 0.0;
    bool flags = true;
    for (const DiagRecord& r : res.ledger) {
        sup = std::max(sup, r.sup_rho);
        flags = flags && r.cap_ok == 1;
    }
    report(9, "density cap", v.verdict == Verdict::admitted && flags && sup <= cap && sup <= allowance,
           std::string("verdict ") + to_string(v.verdict) + ", max sup rho " + fmt(sup) + " vs cap " + fmt(cap) +
               " (t_end=20, N=256)");

    const double bound = cubic_moment_bound(p, res.ledger.front().rho_u3, res.ledger.front().energy);
    double peak = 0.0;
    for (const DiagRecord& r : res.ledger) peak = std::max(peak, r.rho_u3);
    report(10, "cubic moment monitor", peak <= bound, "max rho|u|^3 " + fmt(peak) + " vs bound " + fmt(bound));
}

void criterion_decay() {
    const std::string name = "beta_ge_1_large";
    const FluidParams p = params_for(name);
    const RadialGrid g(256, p.R);
    const FlowState s0 = make_preset(name, p, g);
    SolverConfig cfg;
    cfg.t_end = 50.0;
    const RunResult res = run(p, g, s0, with_floor(cfg, g, s0));
    const DiagRecord& first = res.ledger.front();
    const DiagRecord& last = res.ledger.back();
    const double fr = last.dist_rho_L2 / first.dist_rho_L2;
    const double fg = last.dist_gradu_L2 / first.dist_gradu_L2;
    bool monotone = true;
    for (std::size_t k = 1; k < res.ledger.size(); ++k) {
        const DiagRecord& a = res.ledger[k - 1];
        const DiagRecord& b = res.ledger[k];
        if (a.t < 25.0) continue;
        if (b.dist_rho_L2 > a.dist_rho_L2 || b.dist_gradu_L2 > a.dist_gradu_L2) monotone = false;
    }
    report(11, "asymptotic decay", fr <= 0.05 && fg <= 0.05 && monotone,
           "final/initial rho " + fmt(fr) + ", grad u " + fmt(fg) + ", non-increasing over final half " +
               (monotone ? "yes" : "no"));
}

void criterion_compat() {
    const FluidParams p{0.8, 0.6, 1.5, 1.0};
    const double pi = std::numbers::pi;
    auto rho = [pi](Jet r) { return 1.0 + 0.3 * cos(pi * r); };
    auto ur = [pi](Jet r) { return sin(pi * r) * (1.0 + 0.5 * r * r); };
    auto ut = [](Jet r) { return r * (1.0 - r * r) * (1.0 - r * r); };
    std::vector<double> er, et;
    for (std::size_t n : {64u, 128u, 256u}) {
        const RadialGrid g(n, p.R);
        Field r0(n), gr(n), gt(n), dr(n), dt(n);
        // Forward application of the compatibility operator to the exact field.
        for (std::size_t i = 0; i < n; ++i) {
            const double r = g.r(i);
            const Jet x = Jet::variable(r);
            const Jet d = rho(x), u = ur(x), w = ut(x);
            const Jet kappa = 2.0 * p.mu + pow(d, p.beta);
            const double div = u.d + u.v / r;
            const double ddiv = u.dd + u.d / r - u.v / (r * r);
            r0[i] = d.v;
            gr[i] = (-(kappa.d * div + kappa.v * ddiv) + pow(d, p.gamma).d) / std::sqrt(d.v);
            gt[i] = -p.mu * (w.dd + w.d / r - w.v / (r * r)) / std::sqrt(d.v);
        }
        const CompatibilityVelocity u = solve_compatibility_velocity(p, g, r0, gr, gt);
        for (std::size_t i = 0; i < n; ++i) {
            dr[i] = u.u_r[i] - ur(Jet(g.r(i))).v;
            dt[i] = u.u_theta[i] - ut(Jet(g.r(i))).v;
        }
        er.push_back(lp_norm(g, dr, 2.0));
        et.push_back(lp_norm(g, dt, 2.0));
    }
    const double order = std::min(min_order(er), min_order(et));
    report(12, "compatibility round trip", order >= 1.8,
           "min order " + fmt(order) + "; u_r " + series(er) + "; u_theta " + series(et));
}

// Runs one criterion and turns an escaped exception into a FAIL line.
void guarded(int id, const std::string& name, const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    std::map<std::string, PresetRun> runs;
    try {
        runs = run_all_presets();
    } catch (const std::exception& e) {
        report(1, "mass conservation", false, std::string("exception: ") + e.what());
        report(2, "equilibrium fixed point", false, "preset runs failed");
        report(6, "sup-norm inequality", false, "preset runs failed");
    }
    if (!runs.empty()) {
        criterion_mass(runs);
        criterion_equilibrium(runs.at("equilibrium"));
    }

    guarded(3, "energy equality", [] {
        const Ladder l = identity_ladder("decaying_swirl", 4);
        std::vector<double> e, gdis;
        for (const auto& lv : l.levels) {
            e.push_back(lv.energy);
            gdis.push_back(lv.G);
        }
        const double pe = min_order(e), pg = min_order(gdis);
        report(3, "energy equality", pe >= 1.0 && l.seconds <= 300.0,
               "min order " + fmt(pe) + "; residuals " + series(e) + "; ladder " + fmt(l.seconds) + " s");
        report(4, "boundary flux representation", pg >= 1.0, "min order " + fmt(pg) + "; discrepancies " + series(gdis));
    });

    guarded(5, "transport structure", [] {
        double worst = std::numeric_limits<double>::infinity();
        std::string detail;
        for (const std::string name : {"decaying_swirl", "beta_ge_1_large", "beta_between", "beta_eq_1"}) {
            const Ladder l = identity_ladder(name, 4);
            std::vector<double> tr;
            for (const auto& lv : l.levels) tr.push_back(lv.transport);
            const double p = min_order(tr);
            worst = std::min(worst, p);
            detail += name + " " + fmt(p) + "; ";
        }
        report(5, "transport structure", worst >= 1.0, "min orders: " + detail);
    });

    if (!runs.empty()) criterion_slack(runs);
    guarded(7, "MMS convergence", criterion_mms);
    guarded(8, "threshold arithmetic", criterion_threshold);
    guarded(9, "density cap", criteria_small_density);
    guarded(11, "asymptotic decay", criterion_decay);
    guarded(12, "compatibility round trip", criterion_compat);

    std::printf("%d criterion failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
