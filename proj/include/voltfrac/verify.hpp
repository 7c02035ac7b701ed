#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voltfrac/specfun.hpp"

namespace voltfrac {

// One verification check: `pass` is value <= threshold for residuals and
// value >= threshold for margins.
struct CheckResult {
    std::string suite;
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool is_margin = false;
    bool pass = false;
};

CheckResult residual_check(const std::string& suite, const std::string& name,
                           double value, double threshold);
CheckResult margin_check(const std::string& suite, const std::string& name,
                         double value, double threshold);

// Runs the named suite ("specfun", "fracops", "spectral", "model", "solver"
// or "all"). The seed drives the randomized property sweeps and is recorded
// in the report.
std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          std::uint64_t seed);

// Building blocks shared between `verify` and the acceptance suite.
namespace checks {

std::vector<CheckResult> specfun(std::uint64_t seed);
std::vector<CheckResult> fracops(std::uint64_t seed);
std::vector<CheckResult> spectral(std::uint64_t seed);
std::vector<CheckResult> model(std::uint64_t seed);
std::vector<CheckResult> solver(std::uint64_t seed);

// Max subordination residual (S or P form) over alpha in {0.3,0.5,0.8} and
// a 50-point grid of lambda t^alpha in [0,10].
double subordination_grid_residual(bool p_form);

// Single-mode problem with the reaction off: u0 = e_2 on [0,pi],
// alpha = 0.6, sigma = 0.7, against E_{alpha,1}(-lambda_2^sigma t^alpha) e_2.
// Returns the max-over-time error normalized by ||exact(t)||_inf.
double linear_mode_error_picard(int time_intervals);
double linear_mode_error_l1(int time_intervals);

// Homogeneous run u0 = 0.2, a=b=1, exponential gamma=1, alpha=0.7 on [0,10]:
// L_inf gap between the PDE solve and the fractional Adams reference.
double oracle_equivalence_gap(int pde_intervals, int ode_intervals);

// u(1) / (eps E_{alpha,1}(1)) for the nonlinear run from u0 == eps.
double instability_growth_ratio(double eps, double alpha, int time_intervals);

// MildPicard vs L1Spectral on the asymptotics problem restricted to [0,T]:
// max over shared nodes of the L_inf state gap.
double scheme_cross_gap(double T, int time_intervals);

// One seeded positivity/bound run (criterion ranges); the mesh is sized by
// the explicit-reaction stability limit and the horizon shrinks to keep the
// step count bounded.
struct RandomRunOutcome {
    double min_margin = 0.0;       // min over steps of min u
    double max_over_bound = 0.0;   // max_u / (sup_bound (1+1e-6))
    double horizon = 0.0;
    int steps = 0;
};
RandomRunOutcome random_positive_run(std::uint64_t seed, int index);

// Worst convex-chain violation on a solver trajectory sampled at a fixed
// interior point, x(t) = u(x_mid, t), with the stated mesh size.
double convex_chain_on_trajectory(int time_intervals);

// Gronwall envelope self-consistency: residual of psi0 + C I^alpha psi - psi
// for psi(t) = psi0 E_{alpha,1}(C t^alpha).
double gronwall_equality_residual(double alpha, double C, int time_intervals);

}  // namespace checks

}  // namespace voltfrac
