#include "voltfrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "voltfrac/spectral.hpp"

namespace voltfrac {

void SolverConfig::validate() const {
    std::ostringstream os;
    bool bad = false;
    if (!(picard_tol > 0.0)) { os << "picard_tol must be > 0; "; bad = true; }
    if (picard_max_iters < 1) { os << "picard_max_iters must be >= 1; "; bad = true; }
    if (!(blowup_threshold > 0.0)) { os << "blowup_threshold must be > 0; "; bad = true; }
    if (diagnostics_every < 1) { os << "diagnostics_every must be >= 1; "; bad = true; }
    if (mesh.nodes.size() < 2) { os << "time mesh missing; "; bad = true; }
    series.validate();
    if (bad) throw std::invalid_argument("SolverConfig: " + os.str());
}

BlowupError::BlowupError(double t, double norm, std::shared_ptr<Trajectory> p)
    : std::runtime_error("blow-up monitor tripped at t=" + std::to_string(t) +
                         " with sup-norm " + std::to_string(norm)),
      time(t), sup_norm(norm), partial(std::move(p)) {}

namespace {

double pow_diff(double A, double B, double p) {
    if (B == 0.0) return std::pow(A, p);
    return -std::pow(A, p) * std::expm1(p * std::log(B / A));
}

struct ModeTable {
    std::vector<double> lambda_sigma;  // lambda_n^sigma, mode-ordered
    int m1 = 0, m2 = 0;
};

ModeTable make_mode_table(const GridSpec& grid, double sigma) {
    ModeTable mt;
    mt.m1 = grid.modes[0];
    mt.m2 = grid.modes[1];
    mt.lambda_sigma.resize(grid.mode_count());
    for (int n1 = 0; n1 < mt.m1; ++n1)
        for (int n2 = 0; n2 < mt.m2; ++n2) {
            double lam = neumann_eigenvalue(grid, n1, n2);
            mt.lambda_sigma[static_cast<std::size_t>(n1) * mt.m2 + n2] =
                (lam == 0.0) ? 0.0 : std::pow(lam, sigma);
        }
    return mt;
}

StepDiagnostics make_step_diag(const NodalField& u, const NodalField* prev,
                               double u_star, double cell_w) {
    StepDiagnostics d;
    double mn = u.values[0], mx = u.values[0], sum = 0.0, dist = 0.0, inc2 = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double v = u.values[i];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        sum += v;
        dist = std::max(dist, std::fabs(v - u_star));
        if (prev) {
            double dv = v - prev->values[i];
            inc2 += dv * dv;
        }
    }
    d.min_u = mn;
    d.max_u = mx;
    d.mean = sum / u.values.size();
    d.dist_to_equilibrium = dist;
    d.continuity_increment = prev ? std::sqrt(inc2 * cell_w) : 0.0;
    return d;
}

void check_finite(const NodalField& u, double t) {
    for (double v : u.values)
        if (!std::isfinite(v))
            throw std::runtime_error("solver produced non-finite state at t=" +
                                     std::to_string(t));
}

// Modal state of the memory term K*u; exponential kernels carry a recursive
// accumulator, other kernels re-sum the stored modal history.
class ConvolutionState {
public:
    ConvolutionState(const KernelSpec& k, std::size_t n_modes)
        : kernel_(k), acc_(n_modes, 0.0) {}

    // conv at time[idx] given modal history u_hat[0..idx]
    std::vector<double> at(const std::vector<double>& times,
                           const std::vector<std::vector<double>>& u_hat,
                           std::size_t idx) const {
        std::vector<double> out(acc_.size(), 0.0);
        if (idx == 0) return out;
        if (kernel_.kind == KernelSpec::Kind::Exponential && idx == acc_idx_) return acc_;
        double T = times[idx];
        for (std::size_t j = 0; j < idx; ++j) {
            double s0 = times[j], s1 = times[j + 1], h = s1 - s0;
            double w0, w1;
            if (kernel_.kind == KernelSpec::Kind::Exponential) {
                double E0 = std::exp(-kernel_.rate * (T - s0));
                double E1 = std::exp(-kernel_.rate * (T - s1));
                double m0 = E1 - E0;
                double m1 = h * E1 - m0 / kernel_.rate;
                w0 = m0 - m1 / h;
                w1 = m1 / h;
            } else {
                w0 = 0.5 * h * kernel_eval(kernel_, T - s0);
                w1 = 0.5 * h * kernel_eval(kernel_, T - s1);
            }
            for (std::size_t n = 0; n < out.size(); ++n)
                out[n] += w0 * u_hat[j][n] + w1 * u_hat[j + 1][n];
        }
        return out;
    }

    // advance the exponential accumulator from idx-1 to idx
    void advance(const std::vector<double>& times,
                 const std::vector<std::vector<double>>& u_hat, std::size_t idx) {
        if (kernel_.kind != KernelSpec::Kind::Exponential) { acc_idx_ = idx; return; }
        double s0 = times[idx - 1], s1 = times[idx], h = s1 - s0;
        double decay = std::exp(-kernel_.rate * h);
        double m0 = 1.0 - decay;  // moments anchored at t = s1
        double m1 = h - m0 / kernel_.rate;
        double w0 = m0 - m1 / h, w1 = m1 / h;
        for (std::size_t n = 0; n < acc_.size(); ++n)
            acc_[n] = decay * acc_[n] + w0 * u_hat[idx - 1][n] + w1 * u_hat[idx][n];
        acc_idx_ = idx;
    }

    ConvolutionState snapshot() const { return *this; }

private:
    KernelSpec kernel_;
    std::vector<double> acc_;
    std::size_t acc_idx_ = 0;
};

struct SchemeContext {
    const ModelParams& params;
    const GridSpec& grid;
    const SolverConfig& cfg;
    CosinePlan plan;
    ModeTable mt;
    double u_star;

    SchemeContext(const ModelParams& p, const GridSpec& g, const SolverConfig& c)
        : params(p), grid(g), cfg(c), plan(g), mt(make_mode_table(g, p.sigma)),
          u_star(p.equilibrium()) {}

    // modal reaction term f(u) at one node
    std::vector<double> modal_reaction(const std::vector<double>& u_hat_k,
                                       const std::vector<double>& conv_hat_k) const {
        ModalField cu(grid, grid.modes), cc(grid, grid.modes);
        cu.coeff = u_hat_k;
        cc.coeff = conv_hat_k;
        NodalField un = plan.to_nodal(cu);
        NodalField cn = plan.to_nodal(cc);
        NodalField f = reaction(un, cn, params.a, params.b);
        return plan.to_modal(f).coeff;
    }
};

Trajectory assemble_trajectory(SchemeContext& ctx, const std::vector<double>& times,
                               const std::vector<std::vector<double>>& u_hat) {
    Trajectory traj;
    traj.grid = ctx.grid;
    double cw = ctx.grid.cell_weight();
    auto partial = [&](std::size_t upto) {
        auto p = std::make_shared<Trajectory>(traj);
        p->times.resize(upto);
        p->states.resize(upto);
        p->diag.resize(upto);
        return p;
    };
    for (std::size_t k = 0; k < times.size(); ++k) {
        ModalField c(ctx.grid, ctx.grid.modes);
        c.coeff = u_hat[k];
        NodalField u = ctx.plan.to_nodal(c);
        check_finite(u, times[k]);
        const NodalField* prev = k ? &traj.states.back() : nullptr;
        StepDiagnostics d = make_step_diag(u, prev, ctx.u_star, cw);
        traj.times.push_back(times[k]);
        traj.states.push_back(std::move(u));
        traj.diag.push_back(d);
        double sup = std::max(std::fabs(d.min_u), std::fabs(d.max_u));
        if (sup > ctx.cfg.blowup_threshold)
            throw BlowupError(times[k], sup, partial(k));
    }
    return traj;
}

// ---------------------------------------------------------------- L1 scheme

Trajectory solve_l1(SchemeContext& ctx, const NodalField& u0) {
    const TimeMesh& mesh = ctx.cfg.mesh;
    const auto& t = mesh.nodes;
    const std::size_t K = mesh.intervals;
    const std::size_t M = ctx.grid.mode_count();
    const double alpha = ctx.params.alpha;
    const double rg2a = rgamma(2.0 - alpha);

    std::vector<std::vector<double>> u_hat(K + 1);
    u_hat[0] = ctx.plan.to_modal(u0).coeff;

    // mode-major increments du[n][j] = u_hat[j+1][n] - u_hat[j][n]
    std::vector<std::vector<double>> du(M);
    for (auto& row : du) row.reserve(K);

    ConvolutionState conv(ctx.params.kernel, M);
    std::vector<double> c_row(K, 0.0);

    for (std::size_t k = 1; k <= K; ++k) {
        double h = t[k] - t[k - 1];
        double c_lead = std::pow(h, -alpha) * rg2a;
        for (std::size_t j = 0; j + 1 < k; ++j)
            c_row[j] = rg2a * pow_diff(t[k] - t[j], t[k] - t[j + 1], 1.0 - alpha) /
                       (t[j + 1] - t[j]);

        std::vector<double> f_hat(M, 0.0);
        if (ctx.cfg.reaction_enabled) {
            std::vector<double> conv_hat = conv.at(t, u_hat, k - 1);
            f_hat = ctx.modal_reaction(u_hat[k - 1], conv_hat);
        }

        u_hat[k].resize(M);
        auto& uk = u_hat[k];
        const auto& ukm1 = u_hat[k - 1];
#pragma omp parallel for if (M > 16)
        for (long long n = 0; n < static_cast<long long>(M); ++n) {
            double hist = 0.0;
            const double* dun = du[n].data();
            for (std::size_t j = 0; j + 1 < k; ++j) hist += c_row[j] * dun[j];
            uk[n] = (c_lead * ukm1[n] - hist + f_hat[n]) /
                    (c_lead + ctx.mt.lambda_sigma[n]);
        }
        for (std::size_t n = 0; n < M; ++n) du[n].push_back(uk[n] - ukm1[n]);
        conv.advance(t, u_hat, k);

        // cheap modal blow-up guard; the exact nodal check runs at assembly
        double mag = 0.0;
        for (double v : uk) mag = std::max(mag, std::fabs(v));
        if (!std::isfinite(mag) || mag > 1e3 * ctx.cfg.blowup_threshold) {
            std::vector<std::vector<double>> prefix(u_hat.begin(), u_hat.begin() + k);
            std::vector<double> times(t.begin(), t.begin() + k);
            Trajectory part = assemble_trajectory(ctx, times, prefix);
            throw BlowupError(t[k], mag, std::make_shared<Trajectory>(std::move(part)));
        }
    }
    return assemble_trajectory(ctx, t, u_hat);
}

// ------------------------------------------------------------ Picard scheme

// Mode factors F_n(g) = E_{alpha,1}(-lambda_n^sigma g^alpha) tabulated per
// time gap; the P-propagator weight over [s_j, s_{j+1}] anchored at t_k is
// exact per mode: (F_n(t_k - s_{j+1}) - F_n(t_k - s_j)) / lambda_n^sigma.
class PicardWeights {
public:
    PicardWeights(SchemeContext& ctx) : ctx_(ctx), t_(ctx.cfg.mesh.nodes) {
        const std::size_t M = ctx.grid.mode_count();
        const std::size_t K = t_.size() - 1;
        uniform_ = ctx.cfg.mesh.is_uniform();
        if (!uniform_) {
            double need = 0.5 * static_cast<double>(K) * (K + 1) * M * 8.0;
            if (need > 512.0 * 1024 * 1024)
                throw std::invalid_argument(
                    "MildPicard: non-uniform mesh weight table would exceed 512 MB; "
                    "use a uniform mesh or fewer nodes");
        }
        const double alpha = ctx.params.alpha;
        if (uniform_) {
            gap_.assign((K + 1) * M, 1.0);
            for (std::size_t m = 1; m <= K; ++m) {
                double ta = std::pow(t_[m], alpha);
#pragma omp parallel for if (M > 16)
                for (long long n = 0; n < static_cast<long long>(M); ++n)
                    gap_[m * M + n] = mittag_leffler(
                        alpha, 1.0, -ctx.mt.lambda_sigma[n] * ta, ctx.cfg.series);
            }
        } else {
            tri_.resize(K + 1);
            for (std::size_t k = 1; k <= K; ++k) {
                tri_[k].resize(k * M);
#pragma omp parallel for if (M * k > 64)
                for (long long j = 0; j < static_cast<long long>(k); ++j) {
                    double ta = std::pow(t_[k] - t_[j], alpha);
                    for (std::size_t n = 0; n < M; ++n)
                        tri_[k][j * M + n] = mittag_leffler(
                            alpha, 1.0, -ctx.mt.lambda_sigma[n] * ta, ctx.cfg.series);
                }
            }
        }
    }

    // F_n(t_k - t_j), j < k; F == 1 at zero gap
    double factor(std::size_t k, std::size_t j, std::size_t n) const {
        if (j == k) return 1.0;
        if (uniform_) return gap_[(k - j) * gap_stride() + n];
        return tri_[k][j * gap_stride() + n];
    }

    double weight(std::size_t k, std::size_t j, std::size_t n, double alpha) const {
        double ls = ctx_.mt.lambda_sigma[n];
        if (ls == 0.0) {
            double g1 = t_[k] - t_[j], g2 = t_[k] - t_[j + 1];
            return pow_diff(g1, g2, alpha) * rgamma(1.0 + alpha);
        }
        return (factor(k, j + 1, n) - factor(k, j, n)) / ls;
    }

private:
    std::size_t gap_stride() const { return ctx_.grid.mode_count(); }
    SchemeContext& ctx_;
    const std::vector<double>& t_;
    bool uniform_ = false;
    std::vector<double> gap_;                 // uniform: [gap m][mode]
    std::vector<std::vector<double>> tri_;    // general: [k][j*M+n]
};

Trajectory solve_picard(SchemeContext& ctx, const NodalField& u0) {
    const TimeMesh& mesh = ctx.cfg.mesh;
    const auto& t = mesh.nodes;
    const std::size_t K = mesh.intervals;
    const std::size_t M = ctx.grid.mode_count();
    const double alpha = ctx.params.alpha;

    PicardWeights W(ctx);
    std::vector<double> u0_hat = ctx.plan.to_modal(u0).coeff;

    // S_alpha(t_k) u0 as both the linear part and the initial guess
    std::vector<std::vector<double>> s_part(K + 1), u_hat(K + 1), f_hat(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        s_part[k].resize(M);
        for (std::size_t n = 0; n < M; ++n)
            s_part[k][n] = W.factor(k, 0, n) * u0_hat[n];
        u_hat[k] = s_part[k];
    }

    ConvolutionState conv_frozen(ctx.params.kernel, M);

    auto compute_f = [&](std::size_t j, const ConvolutionState& base) {
        if (!ctx.cfg.reaction_enabled) { f_hat[j].assign(M, 0.0); return; }
        ConvolutionState c = base;
        std::vector<double> conv_hat;
        if (j == 0) conv_hat.assign(M, 0.0);
        else conv_hat = c.at(t, u_hat, j);
        f_hat[j] = ctx.modal_reaction(u_hat[j], conv_hat);
    };

    compute_f(0, conv_frozen);

    std::size_t lo = 1;
    std::size_t win = K;  // current window size in nodes; adapt on stalls
    int total_iters = 0;

    while (lo <= K) {
        std::size_t hi = std::min(K, lo + win - 1);

        // frozen tail: subintervals [t_j, t_j+1] with j+1 <= lo-1
        std::vector<std::vector<double>> tail(hi - lo + 1,
                                              std::vector<double>(M, 0.0));
#pragma omp parallel for schedule(dynamic)
        for (long long kk = static_cast<long long>(lo); kk <= static_cast<long long>(hi); ++kk) {
            auto& row = tail[kk - lo];
            for (std::size_t j = 0; j + 1 <= lo - 1; ++j)
                for (std::size_t n = 0; n < M; ++n)
                    row[n] += 0.5 * (f_hat[j][n] + f_hat[j + 1][n]) *
                              W.weight(kk, j, n, alpha);
        }

        bool converged = false;
        double best_delta = std::numeric_limits<double>::infinity();
        std::vector<std::vector<double>> u_new(hi - lo + 1);
        for (int it = 0; it < ctx.cfg.picard_max_iters; ++it) {
            ++total_iters;
            // reaction at window nodes from the current iterate
            ConvolutionState cwin = conv_frozen;
            for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
                if (ctx.params.kernel.kind == KernelSpec::Kind::Exponential)
                    cwin.advance(t, u_hat, j);
                compute_f(j, cwin);
            }
#pragma omp parallel for schedule(dynamic)
            for (long long kk = static_cast<long long>(lo); kk <= static_cast<long long>(hi); ++kk) {
                std::size_t k = static_cast<std::size_t>(kk);
                std::vector<double> acc = tail[k - lo];
                for (std::size_t j = lo - 1; j < k; ++j)
                    for (std::size_t n = 0; n < M; ++n)
                        acc[n] += 0.5 * (f_hat[j][n] + f_hat[j + 1][n]) *
                                  W.weight(k, j, n, alpha);
                for (std::size_t n = 0; n < M; ++n) acc[n] += s_part[k][n];
                u_new[k - lo] = std::move(acc);
            }
            // sup-norm of the update over the window (nodal)
            double delta = 0.0;
            for (std::size_t k = lo; k <= hi; ++k) {
                ModalField d(ctx.grid, ctx.grid.modes);
                for (std::size_t n = 0; n < M; ++n)
                    d.coeff[n] = u_new[k - lo][n] - u_hat[k][n];
                delta = std::max(delta, norm_linf(ctx.plan.to_nodal(d)));
                u_hat[k] = u_new[k - lo];
            }
            if (!std::isfinite(delta)) break;
            if (delta < ctx.cfg.picard_tol) { converged = true; break; }
            if (it >= 4 && delta > 2.0 * best_delta) break;  // diverging
            best_delta = std::min(best_delta, delta);
        }

        if (!converged) {
            if (hi == lo) {
                std::ostringstream os;
                os << "MildPicard stalled on a single-node window at t=" << t[lo]
                   << " after " << total_iters << " total iterations";
                throw PicardStallError(os.str());
            }
            win = std::max<std::size_t>(1, (hi - lo + 1) / 2);
            // reset the window nodes to the converged boundary value
            for (std::size_t k = lo; k <= hi; ++k) u_hat[k] = u_hat[lo - 1];
            continue;
        }

        // freeze: recompute f on final values, advance the frozen conv state
        for (std::size_t j = lo; j <= hi; ++j) {
            if (ctx.params.kernel.kind == KernelSpec::Kind::Exponential)
                conv_frozen.advance(t, u_hat, j);
            compute_f(j, conv_frozen);
        }
        lo = hi + 1;
        win = std::min(K, win * 2);
    }
    return assemble_trajectory(ctx, t, u_hat);
}

}  // namespace

Trajectory solve(const ModelParams& params, const GridSpec& grid,
                 const NodalField& u0, const SolverConfig& cfg) {
    params.validate();
    grid.validate();
    cfg.validate();
    if (!u0.grid.same_as(grid))
        throw std::invalid_argument("solve: u0 grid does not match");
    double mn = 0.0, mx = 0.0;
    for (double v : u0.values) { mn = std::min(mn, v); mx = std::max(mx, std::fabs(v)); }
    // the population model assumes nonnegative data; pure linear runs
    // (reaction off) admit sign-changing modes
    if (cfg.reaction_enabled && mn < -1e-14 * std::max(1.0, mx))
        throw std::invalid_argument("solve: u0 must be nonnegative");
    if (mx >= cfg.blowup_threshold)
        throw std::invalid_argument("solve: blowup_threshold must exceed ||u0||_inf");
    if (cfg.reaction_enabled)
        for (int d = 0; d < grid.dim; ++d)
            if (grid.points[d] < 2 * grid.modes[d])
                throw std::invalid_argument(
                    "solve: cubic reaction needs N >= 2M points for dealiasing");

    SchemeContext ctx(params, grid, cfg);
    if (cfg.scheme == Scheme::L1Spectral) return solve_l1(ctx, u0);
    return solve_picard(ctx, u0);
}

DiagnosticsReport run_diagnostics(const Trajectory& traj, const ModelParams& params,
                                  double delta) {
    if (traj.size() == 0) throw std::invalid_argument("run_diagnostics: empty trajectory");
    DiagnosticsReport r;
    double T = traj.times.back();
    if (delta < 0.0) delta = std::max(traj.size() > 1 ? traj.times[1] : 0.0, 0.01 * T);
    double u0_norm = std::max(std::fabs(traj.diag[0].min_u), std::fabs(traj.diag[0].max_u));
    r.sup_bound = std::max(u0_norm, carrying_root(params.a, params.b));
    r.min_margin = traj.diag[0].min_u;
    r.max_u = traj.diag[0].max_u;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        r.min_margin = std::min(r.min_margin, traj.diag[k].min_u);
        r.max_u = std::max(r.max_u, traj.diag[k].max_u);
        if (k > 0 && traj.times[k] >= delta)
            r.continuity_modulus = std::max(r.continuity_modulus,
                                            traj.diag[k].continuity_increment);
    }
    r.final_dist_to_equilibrium = traj.diag.back().dist_to_equilibrium;
    r.final_stationary_residual =
        stationary_residual(traj.states.back(), params.sigma, params.b);
    r.positivity_ok = r.min_margin >= -1e-8;
    r.bound_ok = r.max_u <= r.sup_bound * (1.0 + 1e-6);
    return r;
}

ZeroInstabilityResult zero_instability_check(const ModelParams& params,
                                             const GridSpec& grid, double eps,
                                             int time_intervals) {
    params.validate();
    if (!(eps >= 0.0 && eps <= 1e-4))
        throw std::domain_error("zero_instability_check: need 0 <= eps <= 1e-4");
    ZeroInstabilityResult out;
    if (eps == 0.0) {
        out.zero_input = true;
        out.ratio = 0.0;  // zero stays zero
        return out;
    }
    SolverConfig cfg;
    cfg.scheme = Scheme::MildPicard;
    cfg.mesh = TimeMesh::uniform(1.0, time_intervals);
    NodalField u0(grid);
    std::fill(u0.values.begin(), u0.values.end(), eps);
    Trajectory traj = solve(params, grid, u0, cfg);
    double growth = mittag_leffler(params.alpha, 1.0, 1.0);
    out.ratio = traj.diag.back().max_u / (eps * growth);
    return out;
}

}  // namespace voltfrac
