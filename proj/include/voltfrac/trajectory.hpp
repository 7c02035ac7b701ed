#pragma once

#include <vector>

#include "voltfrac/grid.hpp"

namespace voltfrac {

struct StepDiagnostics {
    double min_u = 0.0;
    double max_u = 0.0;
    double dist_to_equilibrium = 0.0;  // ||u - 1/sqrt(b)||_inf
    double mean = 0.0;
    double continuity_increment = 0.0;  // ||u(t_k) - u(t_{k-1})||_L2, 0 at k=0
};

// Time-indexed sequence of nodal states plus per-step diagnostics.
// Append-only during a run, immutable afterwards.
struct Trajectory {
    GridSpec grid;
    std::vector<double> times;
    std::vector<NodalField> states;
    std::vector<StepDiagnostics> diag;

    std::size_t size() const { return times.size(); }
};

}  // namespace voltfrac
