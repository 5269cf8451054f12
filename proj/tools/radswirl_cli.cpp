// Batch front-end: run, refine, threshold, mms, compat.
// Exit codes: 0 ok, 1 I/O error, 2 config error, 3 solver failure, 4 invariant
// violation.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "radswirl/radswirl.hpp"

namespace {

using namespace radswirl;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInvariant = 4;
constexpr int kExitIo = 1;

constexpr double kMassTolerance = 1e-12;

struct Failure {
    int code;
    std::string message;
};

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("", "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

InitialBuilder initial_builder(const RunConfig& cfg) {
    if (!cfg.preset.empty()) {
        try {
            check_preset_regime(cfg.preset, cfg.params);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("preset", e.what());
        }
        return [cfg](const RadialGrid& g) { return make_preset(cfg.preset, cfg.params, g); };
    }
    if (!cfg.profile_path.empty()) {
        std::vector<ProfileRow> rows;
        try {
            rows = read_profile_csv(cfg.profile_path);
        } catch (const std::exception& e) {
            throw ConfigError("profile_path", e.what());
        }
        return [rows](const RadialGrid& g) { return interpolate_profile(g, rows); };
    }
    throw ConfigError("preset", "one of 'preset' or 'profile_path' is required");
}

SolverConfig solver_config(const RunConfig& cfg, const FlowState& s0, const RadialGrid& grid) {
    SolverConfig sc = cfg.solver;
    sc.rho_floor = cfg.rho_floor ? *cfg.rho_floor : 1e-10 * mean_disk(grid, s0.rho);
    return sc;
}

RunOptions run_options(const RunConfig& cfg) {
    RunOptions o;
    o.moment_delta = cfg.moment_delta;
    return o;
}

int cmd_run(const RunConfig& cfg) {
    const InitialBuilder initial = initial_builder(cfg);
    const RadialGrid grid(cfg.N, cfg.params.R);
    const FlowState s0 = initial(grid);
    const SolverConfig sc = solver_config(cfg, s0, grid);

    bool admitted = false;
    if (cfg.params.beta < 1.0) {
        const ThresholdInputs in{cfg.params.mu, cfg.params.beta, cfg.params.gamma, cfg.params.R, grad_u_l2(grid, s0)};
        const AdmissibilityResult v = admissibility_verdict(in, lp_norm(grid, s0.rho, kSupNorm));
        admitted = v.verdict == Verdict::admitted;
        std::cout << "admissibility: " << to_string(v.verdict) << " (a0 = " << format_real(v.a0)
                  << ", cap = " << format_real(v.cap) << ")\n";
    }

    const RunResult res = run(cfg.params, grid, s0, sc, nullptr, run_options(cfg));
    write_ledger_csv(cfg.out, res.ledger, cfg.columns);
    std::cout << "steps " << res.steps << ", ledger rows " << res.ledger.size() << " -> " << cfg.out << '\n';

    const double m0 = res.ledger.front().mass;
    for (std::size_t k = 0; k < res.ledger.size(); ++k) {
        const DiagRecord& row = res.ledger[k];
        const double drift = std::abs(row.mass - m0) / m0;
        if (!(drift <= kMassTolerance))
            throw Failure{kExitInvariant, "mass drift " + format_real(drift) + " at ledger row " + std::to_string(k) +
                                              " (t = " + format_real(row.t) + ")"};
        if (admitted && row.cap_ok != 1)
            throw Failure{kExitInvariant, "density cap exceeded at ledger row " + std::to_string(k) +
                                              " (t = " + format_real(row.t) + ", sup rho = " + format_real(row.sup_rho) +
                                              ")"};
    }
    return kExitOk;
}

int cmd_refine(const RunConfig& cfg) {
    const InitialBuilder initial = initial_builder(cfg);
    const RadialGrid grid(cfg.N, cfg.params.R);
    const SolverConfig sc = solver_config(cfg, initial(grid), grid);
    const auto table = run_refinement(cfg.params, cfg.N, sc, cfg.levels, initial, run_options(cfg));
    write_refinement_table(std::cout, table);
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open '" + cfg.out + "' for writing");
    write_refinement_table(f, table);
    return kExitOk;
}

int cmd_mms(const RunConfig& cfg) {
    const auto table = run_mms_study(cfg.params, cfg.N, cfg.solver, cfg.levels);
    write_mms_table(std::cout, table);
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open '" + cfg.out + "' for writing");
    write_mms_table(f, table);
    return kExitOk;
}

int cmd_threshold(const RunConfig& cfg) {
    if (!(cfg.params.beta < 1.0))
        throw ConfigError("beta", "threshold requires 0 < beta < 1; for beta >= 1 global existence needs no smallness "
                                  "threshold on the initial density");
    double grad = 0.0;
    if (!cfg.preset.empty() || !cfg.profile_path.empty()) {
        const RadialGrid grid(cfg.N, cfg.params.R);
        grad = grad_u_l2(grid, initial_builder(cfg)(grid));
    }
    const ThresholdInputs in{cfg.params.mu, cfg.params.beta, cfg.params.gamma, cfg.params.R, grad};
    const ThresholdReport rep = solve_a0(in);
    print_threshold_report(std::cout, in, rep);
    const bool fresh = !std::filesystem::exists(cfg.out) || std::filesystem::file_size(cfg.out) == 0;
    std::ofstream f(cfg.out, std::ios::app);
    if (!f) throw std::runtime_error("cannot open '" + cfg.out + "' for appending");
    if (fresh) f << threshold_csv_header() << '\n';
    f << threshold_csv_row(in, rep) << '\n';
    return kExitOk;
}

/// Reads `r,rho0,g_r,g_theta`, solves the compatibility system on the grid and
/// writes `r,rho0,ur0,utheta0`, which is itself a valid profile file.
int cmd_compat(const RunConfig& cfg, const std::string& input, const std::string& out) {
    std::ifstream in(input);
    if (!in) throw ConfigError("input", "cannot open '" + input + "'");
    std::vector<std::array<double, 4>> rows;
    try {
        rows = detail::read_table_csv(in, {"r", "rho0", "g_r", "g_theta"}, "compat input");
    } catch (const std::invalid_argument& e) {
        throw ConfigError("input", e.what());
    }
    const RadialGrid grid(cfg.N, cfg.params.R);
    Field rho(grid.size()), gr(grid.size()), gt(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto v = detail::interpolate_row(rows, grid.r(i));
        rho[i] = v[0];
        gr[i] = v[1];
        gt[i] = v[2];
    }
    CompatibilityVelocity u;
    try {
        u = solve_compatibility_velocity(cfg.params, grid, rho, gr, gt);
    } catch (const LinearSolveError& e) {
        throw Failure{kExitSolver, e.what()};
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
    f << "r,rho0,ur0,utheta0\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        f << format_real(grid.r(i)) << ',' << format_real(rho[i]) << ',' << format_real(u.u_r[i]) << ','
          << format_real(u.u_theta[i]) << '\n';
    std::cout << "compatibility velocity on " << grid.size() << " cells -> " << out << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial compressible Navier-Stokes with swirl: runs, verification studies and thresholds"};
    app.require_subcommand(1);

    std::string config_path, out_override, compat_input;
    int levels_override = 0;

    auto* run_cmd = app.add_subcommand("run", "Run the study named in the config (default: single run, writes the ledger)");
    auto* refine_cmd = app.add_subcommand("refine", "Refinement ladder of the ledger identity residuals");
    auto* threshold_cmd = app.add_subcommand("threshold", "Solve the smallness threshold a0 (beta < 1)");
    auto* mms_cmd = app.add_subcommand("mms", "Manufactured-solution convergence study");
    auto* compat_cmd = app.add_subcommand("compat", "Solve the compatibility system for a given rho0 and g");
    for (auto* c : {run_cmd, refine_cmd, threshold_cmd, mms_cmd, compat_cmd}) {
        c->add_option("config", config_path, "Configuration file (key = value)")->required();
        c->add_option("-o,--out", out_override, "Output path (overrides 'out')");
    }
    for (auto* c : {refine_cmd, mms_cmd})
        c->add_option("-l,--levels", levels_override, "Refinement levels (overrides 'levels')")->check(CLI::Range(2, 6));
    compat_cmd->add_option("-i,--input", compat_input, "CSV with columns r,rho0,g_r,g_theta")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path);
        if (!out_override.empty()) cfg.out = out_override;
        if (levels_override != 0) cfg.levels = levels_override;

        StudyMode mode = cfg.study;
        if (refine_cmd->parsed()) mode = StudyMode::refine;
        if (threshold_cmd->parsed()) mode = StudyMode::threshold;
        if (mms_cmd->parsed()) mode = StudyMode::mms;
        if (compat_cmd->parsed()) return cmd_compat(cfg, compat_input, cfg.out);
        switch (mode) {
            case StudyMode::single: return cmd_run(cfg);
            case StudyMode::refine: return cmd_refine(cfg);
            case StudyMode::threshold: return cmd_threshold(cfg);
            case StudyMode::mms: return cmd_mms(cfg);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver failure at t = " << format_real(e.time()) << ": " << e.what() << '\n';
        return kExitSolver;
    } catch (const Failure& f) {
        std::cerr << (f.code == kExitInvariant ? "invariant violation: " : "failure: ") << f.message << '\n';
        return f.code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}
