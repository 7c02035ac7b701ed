#include <CLI11.hpp>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "voltfrac/run_io.hpp"

using namespace voltfrac;

int main(int argc, char** argv) {
    CLI::App app{"time-space fractional Volterra population solver"};
    app.require_subcommand(1);

    std::string config_path, out_dir_override;
    std::uint64_t seed = 12345;
    bool seed_given = false;
    int threads = 0;
    app.add_option("--out-dir", out_dir_override, "override output directory");
    app.add_option("--seed", seed, "seed for randomized sweeps")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--threads", threads, "OpenMP thread count (0 = library default)");

    auto* run = app.add_subcommand("run", "solve one configured problem");
    run->add_option("config", config_path, "config file")->required();
    run->fallthrough();

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "specfun|fracops|spectral|model|solver|all");
    verify->fallthrough();

    int levels = 3;
    auto* converge = app.add_subcommand("converge", "time-refinement order study");
    converge->add_option("config", config_path, "config file")->required();
    converge->add_option("--levels", levels, "number of refinement levels (>= 3)");
    converge->fallthrough();

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (app.got_subcommand(run)) {
            RunConfig cfg = parse_config(config_path);
            if (!out_dir_override.empty()) cfg.output_dir = out_dir_override;
            if (seed_given) cfg.seed = seed;
            return cmd_run(cfg, std::cout);
        }
        if (app.got_subcommand(verify)) {
            return cmd_verify(suite, seed, std::cout, out_dir_override);
        }
        if (app.got_subcommand(converge)) {
            RunConfig cfg = parse_config(config_path);
            if (seed_given) cfg.seed = seed;
            return cmd_converge(cfg, levels, std::cout);
        }
    } catch (const ConfigParseError& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ConfigValidationError& e) {
        std::cerr << "config validation error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
