#pragma once

#include <memory>
#include <stdexcept>

#include "voltfrac/model.hpp"
#include "voltfrac/specfun.hpp"
#include "voltfrac/time_mesh.hpp"
#include "voltfrac/trajectory.hpp"

namespace voltfrac {

enum class Scheme { MildPicard, L1Spectral };

struct SolverConfig {
    Scheme scheme = Scheme::L1Spectral;
    TimeMesh mesh;
    double picard_tol = 1e-10;
    int picard_max_iters = 50;
    double blowup_threshold = 1e6;
    // monitors run every step; this is the emission cadence for the CSVs
    int diagnostics_every = 1;
    bool reaction_enabled = true;
    SeriesControl series;

    void validate() const;
};

// The blow-up alternative as a runtime signal: the sup-norm passed the
// configured threshold at `time`. Carries whatever prefix of the
// trajectory was completed.
class BlowupError : public std::runtime_error {
public:
    BlowupError(double t, double norm, std::shared_ptr<Trajectory> partial);
    double time;
    double sup_norm;
    std::shared_ptr<Trajectory> partial;
};

class PicardStallError : public std::runtime_error {
public:
    explicit PicardStallError(const std::string& what) : std::runtime_error(what) {}
};

// Integrate D^alpha u + (-Delta_N)^sigma u = u(1+au-bu^2) - a u K*u with
// Neumann data from u0 >= 0. MildPicard iterates the integral form
// u = S_alpha(t) u0 + int_0^t P_alpha(t-s) f(s) ds globally, splitting the
// mesh into windows when the iteration stalls; L1Spectral combines the L1
// Caputo history sum with an implicit modal linear part and explicit
// reaction.
Trajectory solve(const ModelParams& params, const GridSpec& grid,
                 const NodalField& u0, const SolverConfig& cfg);

struct ReferenceOdeOptions {
    bool clamp_conv_to_initial = false;  // force K*u == u0 (full-memory limit)
    double blowup_threshold = 1e6;
};

// Spatially homogeneous reduction D^alpha U = U(1+aU-bU^2) - aU K*U by a
// fractional Adams predictor-corrector on a uniform mesh; the independent
// high-resolution oracle for homogeneous PDE runs.
SampledFn reference_ode(const ModelParams& params, double u0,
                        std::shared_ptr<const TimeMesh> mesh,
                        const ReferenceOdeOptions& opts = {});

struct DiagnosticsReport {
    double min_margin = 0.0;        // min over steps of min u
    double sup_bound = 0.0;         // max(||u0||_inf, R)
    double max_u = 0.0;             // max over steps of max u
    double continuity_modulus = 0.0;  // sup of L2 increments on [delta, T]
    double final_dist_to_equilibrium = 0.0;
    double final_stationary_residual = 0.0;
    bool positivity_ok = false;     // min_margin >= -1e-8
    bool bound_ok = false;          // max_u <= sup_bound (1 + 1e-6)
};

// delta < 0 selects max(t_1, 0.01 T) for the continuity window.
DiagnosticsReport run_diagnostics(const Trajectory& traj, const ModelParams& params,
                                  double delta = -1.0);

struct ZeroInstabilityResult {
    double ratio = 0.0;     // u(1) / (eps E_{alpha,1}(1))
    bool zero_input = false;  // eps == 0: zero stays zero
};

// Runs the full nonlinear solver from u0 == eps on [0,1] and compares the
// growth against the linearized factor E_{alpha,1}(1).
ZeroInstabilityResult zero_instability_check(const ModelParams& params,
                                             const GridSpec& grid, double eps,
                                             int time_intervals = 512);

}  // namespace voltfrac
