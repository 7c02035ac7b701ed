#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "voltfrac/model.hpp"
#include "voltfrac/solver.hpp"

namespace voltfrac {

class ConfigParseError : public std::runtime_error {
public:
    explicit ConfigParseError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigValidationError : public std::runtime_error {
public:
    explicit ConfigValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Initial data recipes the harness can build on a grid.
struct InitialCondition {
    enum class Kind { Constant, Cosine, RandomSmooth };
    Kind kind = Kind::Constant;
    double value = 0.5;   // constant level
    double base = 0.5;    // cosine/random base level
    double amp = 0.2;     // perturbation amplitude
    int mode = 1;         // cosine mode index
};

struct RunConfig {
    ModelParams model;
    GridSpec grid;
    double time_T = 1.0;
    int time_N = 256;
    double time_grading = -1.0;  // -1 = auto (scheme-dependent default)
    Scheme scheme = Scheme::L1Spectral;
    double picard_tol = 1e-10;
    int picard_max_iters = 50;
    double blowup_threshold = 1e6;
    bool reaction_enabled = true;
    InitialCondition ic;
    std::string output_dir = "out";
    int output_cadence = 1;
    std::string verify_suite = "all";
    std::uint64_t seed = 12345;

    // All settings after default materialization, for the run log.
    std::map<std::string, std::string> echo() const;

    TimeMesh make_mesh() const;
    SolverConfig make_solver_config() const;
    NodalField make_initial_condition() const;
};

// Flat key-value format with dotted section prefixes (model.alpha, grid.N,
// kernel.kind, solver.scheme, output.dir, ...). '#' starts a comment.
// Unknown and duplicate keys are rejected; validation reports every violated
// invariant at once.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace voltfrac
