#include "voltfrac/run_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "voltfrac/solver.hpp"

namespace voltfrac {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          int cadence) {
    std::ofstream out(path);
    out << "t,x_index,u\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (k % cadence != 0 && k + 1 != traj.size()) continue;
        for (std::size_t i = 0; i < traj.states[k].values.size(); ++i)
            out << num(traj.times[k]) << ',' << i << ','
                << num(traj.states[k].values[i]) << '\n';
    }
}

void write_diagnostics_csv(const std::string& path, const Trajectory& traj,
                           int cadence) {
    std::ofstream out(path);
    out << "t,min,max,dist_to_equilibrium,mean,continuity_increment\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (k % cadence != 0 && k + 1 != traj.size()) continue;
        const StepDiagnostics& d = traj.diag[k];
        out << num(traj.times[k]) << ',' << num(d.min_u) << ',' << num(d.max_u) << ','
            << num(d.dist_to_equilibrium) << ',' << num(d.mean) << ','
            << num(d.continuity_increment) << '\n';
    }
}

void write_summary(const std::string& path, const RunConfig& cfg,
                   const Trajectory& traj, const DiagnosticsReport* rep,
                   const std::string& status) {
    std::ofstream out(path);
    out << "status = " << status << "\n";
    out << "steps_completed = " << traj.size() << "\n";
    if (!traj.times.empty()) out << "final_time = " << num(traj.times.back()) << "\n";
    if (rep) {
        out << "final_stationary_residual = " << num(rep->final_stationary_residual) << "\n";
        out << "final_dist_to_equilibrium = " << num(rep->final_dist_to_equilibrium) << "\n";
        out << "min_margin = " << num(rep->min_margin) << "\n";
        out << "max_u = " << num(rep->max_u) << "\n";
        out << "sup_bound = " << num(rep->sup_bound) << "\n";
        out << "continuity_modulus = " << num(rep->continuity_modulus) << "\n";
        out << "positivity_monitor = " << (rep->positivity_ok ? "pass" : "fail") << "\n";
        out << "bound_monitor = " << (rep->bound_ok ? "pass" : "fail") << "\n";
    }
    out << "# materialized configuration\n";
    for (const auto& [k, v] : cfg.echo()) out << k << " = " << v << "\n";
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    for (const auto& [k, v] : cfg.echo()) log << "config " << k << " = " << v << "\n";

    NodalField u0 = cfg.make_initial_condition();
    SolverConfig scfg = cfg.make_solver_config();

    auto flush = [&](const Trajectory& traj, const DiagnosticsReport* rep,
                     const std::string& status) {
        write_trajectory_csv(cfg.output_dir + "/trajectory.csv", traj, cfg.output_cadence);
        write_diagnostics_csv(cfg.output_dir + "/diagnostics.csv", traj,
                              cfg.output_cadence);
        write_summary(cfg.output_dir + "/summary.txt", cfg, traj, rep, status);
    };

    try {
        Trajectory traj = solve(cfg.model, cfg.grid, u0, scfg);
        DiagnosticsReport rep = run_diagnostics(traj, cfg.model);
        flush(traj, &rep, "completed");
        log << "run completed: " << traj.size() << " steps, final dist to 1/sqrt(b) = "
            << num(rep.final_dist_to_equilibrium) << "\n";
        log << "positivity monitor: " << (rep.positivity_ok ? "pass" : "fail")
            << ", bound monitor: " << (rep.bound_ok ? "pass" : "fail") << "\n";
        if (!rep.positivity_ok || !rep.bound_ok) return kExitCheckFailed;
        return kExitOk;
    } catch (const BlowupError& e) {
        log << "blow-up: " << e.what() << "\n";
        if (e.partial) flush(*e.partial, nullptr, "blowup");
        return kExitBlowup;
    } catch (const PicardStallError& e) {
        log << "non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const NonConvergenceError& e) {
        log << "non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& log,
               const std::string& report_dir) {
    std::vector<CheckResult> results = run_verify_suite(suite, seed);
    log << "# verify suite=" << suite << " seed=" << seed << "\n";
    log << "# name,value,threshold,comparison,pass\n";
    bool all = true;
    std::string lines;
    for (const CheckResult& c : results) {
        std::string line = c.suite + "." + c.name + "," + num(c.value) + "," +
                           num(c.threshold) + "," + (c.is_margin ? ">=" : "<=") + "," +
                           (c.pass ? "pass" : "FAIL");
        lines += line + "\n";
        log << line << "\n";
        all = all && c.pass;
    }
    if (!report_dir.empty()) {
        std::filesystem::create_directories(report_dir);
        std::ofstream out(report_dir + "/verify_report.csv");
        out << "# suite=" << suite << " seed=" << seed << "\n";
        out << "name,value,threshold,comparison,pass\n" << lines;
    }
    log << (all ? "ALL CHECKS PASS" : "CHECK FAILURES PRESENT") << "\n";
    return all ? kExitOk : kExitCheckFailed;
}

std::vector<ConvergenceLevel> converge_study(const RunConfig& cfg, int levels) {
    if (levels < 3) throw std::invalid_argument("converge_study: levels must be >= 3");
    NodalField u0 = cfg.make_initial_condition();

    std::vector<Trajectory> runs(levels);
    std::vector<int> Ns(levels);
    for (int l = 0; l < levels; ++l) {
        RunConfig c2 = cfg;
        c2.time_N = cfg.time_N << l;
        Ns[l] = c2.time_N;
        runs[l] = solve(c2.model, c2.grid, u0, c2.make_solver_config());
    }
    const Trajectory& fine = runs[levels - 1];
    std::vector<ConvergenceLevel> out(levels);
    for (int l = 0; l < levels; ++l) {
        out[l].time_intervals = Ns[l];
        if (l == levels - 1) {
            out[l].error_vs_finest = std::numeric_limits<double>::quiet_NaN();
            out[l].observed_order = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        int stride = 1 << (levels - 1 - l);
        double err = 0.0;
        for (std::size_t k = 0; k < runs[l].size(); ++k) {
            const auto& a = runs[l].states[k].values;
            const auto& b = fine.states[k * stride].values;
            for (std::size_t i = 0; i < a.size(); ++i)
                err = std::max(err, std::fabs(a[i] - b[i]));
        }
        out[l].error_vs_finest = err;
        out[l].exact_regime = err < 1e-10;
    }
    for (int l = 0; l + 2 < levels; ++l) {
        if (out[l].exact_regime || out[l + 1].exact_regime)
            out[l].observed_order = std::numeric_limits<double>::quiet_NaN();
        else
            out[l].observed_order =
                std::log2(out[l].error_vs_finest / out[l + 1].error_vs_finest);
    }
    if (levels >= 2)
        out[levels - 2].observed_order = std::numeric_limits<double>::quiet_NaN();
    return out;
}

int cmd_converge(const RunConfig& cfg, int levels, std::ostream& log) {
    try {
        auto study = converge_study(cfg, levels);
        log << "# N,error_vs_finest,observed_order,flag\n";
        for (const auto& lv : study) {
            log << lv.time_intervals << ',' << num(lv.error_vs_finest) << ','
                << num(lv.observed_order) << ','
                << (lv.exact_regime ? "exact_regime" : "-") << "\n";
        }
        return kExitOk;
    } catch (const BlowupError& e) {
        log << "blow-up during study: " << e.what() << "\n";
        return kExitBlowup;
    }
}

}  // namespace voltfrac
