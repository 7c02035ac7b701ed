#include "voltfrac/verify.hpp"

#include <cmath>
#include <random>

#include "voltfrac/fracops.hpp"
#include "voltfrac/model.hpp"
#include "voltfrac/quadrature.hpp"
#include "voltfrac/solver.hpp"
#include "voltfrac/spectral.hpp"

namespace voltfrac {

CheckResult residual_check(const std::string& suite, const std::string& name,
                           double value, double threshold) {
    CheckResult c;
    c.suite = suite;
    c.name = name;
    c.value = value;
    c.threshold = threshold;
    c.is_margin = false;
    c.pass = std::isfinite(value) && value <= threshold;
    return c;
}

CheckResult margin_check(const std::string& suite, const std::string& name,
                         double value, double threshold) {
    CheckResult c;
    c.suite = suite;
    c.name = name;
    c.value = value;
    c.threshold = threshold;
    c.is_margin = true;
    c.pass = std::isfinite(value) && value >= threshold;
    return c;
}

namespace checks {

namespace {

// random band-limited positive field: base + sum c_k e_k, shifted >= floor
NodalField random_smooth_positive(const GridSpec& g, std::mt19937_64& rng,
                                  double base, double amp, double floor_frac = 0.1) {
    std::normal_distribution<double> N01(0.0, 1.0);
    int kmax = std::min(6, g.modes[0] - 1);
    std::vector<double> c(kmax + 1, 0.0);
    for (int k = 1; k <= kmax; ++k) c[k] = amp * N01(rng) / (k * k);
    NodalField u(g);
    const int N1 = g.points[0], N2 = g.points[1];
    double lowest = std::numeric_limits<double>::infinity();
    for (int i1 = 0; i1 < N1; ++i1) {
        double x = g.length[0] * (i1 + 0.5) / N1;
        double v = base;
        for (int k = 1; k <= kmax; ++k) v += c[k] * std::cos(k * M_PI * x / g.length[0]);
        lowest = std::min(lowest, v);
        for (int i2 = 0; i2 < N2; ++i2)
            u.values[static_cast<std::size_t>(i1) * N2 + i2] = v;
    }
    double floor_v = floor_frac * base;
    if (lowest < floor_v)
        for (double& v : u.values) v += floor_v - lowest;
    return u;
}

ModelParams reference_params(double alpha, double sigma, double a, double b,
                             double gamma = 1.0) {
    ModelParams p;
    p.alpha = alpha;
    p.sigma = sigma;
    p.a = a;
    p.b = b;
    p.kernel = KernelSpec::exponential(gamma);
    return p;
}

}  // namespace

std::vector<CheckResult> specfun(std::uint64_t seed) {
    std::vector<CheckResult> out;
    SeriesControl ctl;

    out.push_back(residual_check("specfun", "ml_golden_exp",
                                 std::fabs(mittag_leffler(1, 1, 1) - std::exp(1.0)), 1e-9));
    out.push_back(residual_check("specfun", "ml_golden_const_term",
                                 std::fabs(mittag_leffler(0.5, 0.7, 0.0) - rgamma(0.7)), 1e-12));
    out.push_back(residual_check(
        "specfun", "ml_golden_erfc",
        std::fabs(mittag_leffler(0.5, 1, -1) - std::exp(1.0) * std::erfc(1.0)), 1e-9));
    out.push_back(residual_check(
        "specfun", "ml_golden_cos",
        std::fabs(mittag_leffler(2, 1, -(M_PI / 2) * (M_PI / 2))), 1e-9));

    // series vs integral branch on an annulus around the switch radius
    double overlap = 0.0;
    for (double a : {0.7, 0.85})
        for (double z : {-4.6, -5.0, -5.4}) {
            double t = mittag_leffler_branch(a, 1.0, z, ctl, MlBranch::Taylor);
            double i = mittag_leffler_branch(a, 1.0, z, ctl, MlBranch::Integral);
            overlap = std::max(overlap, std::fabs(t - i));
        }
    out.push_back(residual_check("specfun", "ml_branch_overlap", overlap, 1e-8));

    double asym = 0.0;
    for (double a : {0.3, 0.5, 0.8})
        for (double z : {-35.0, -60.0}) {
            double s = mittag_leffler_branch(a, 1.0, z, ctl, MlBranch::Asymptotic);
            double i = mittag_leffler_branch(a, 1.0, z, ctl, MlBranch::Integral);
            asym = std::max(asym, std::fabs(s - i));
        }
    out.push_back(residual_check("specfun", "ml_asymptotic_vs_integral", asym, 1e-9));

    // E_{alpha,1}(-z) strictly decreasing and positive on z >= 0
    double mono = 0.0;
    for (double a : {0.3, 0.5, 0.8}) {
        double prev = mittag_leffler(a, 1.0, 0.0);
        for (double z = 0.5; z <= 50.0; z += 0.5) {
            double v = mittag_leffler(a, 1.0, -z);
            mono = std::max(mono, v - prev);  // must be negative
            if (v <= 0.0) mono = std::max(mono, 1.0);
            prev = v;
        }
    }
    out.push_back(residual_check("specfun", "ml_monotone_decreasing", mono, 0.0));

    double gg = 0.0;
    gg = std::max(gg, std::fabs(gamma_fn(0.5) - std::sqrt(M_PI)) / std::sqrt(M_PI));
    gg = std::max(gg, std::fabs(gamma_fn(1.0) - 1.0));
    gg = std::max(gg, std::fabs(gamma_fn(5.0) - 24.0) / 24.0);
    gg = std::max(gg, std::fabs(gamma_fn(1.5) - 0.5 * std::sqrt(M_PI)) / (0.5 * std::sqrt(M_PI)));
    out.push_back(residual_check("specfun", "gamma_goldens_rel", gg, 1e-12));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-50.0, 50.0);
    double grec = 0.0;
    for (int i = 0; i < 500; ++i) {
        double x = U(rng);
        if (x < 0.5 && std::fabs(x - std::round(x)) < 1e-2) continue;
        if (std::fabs(x) < 1e-3) continue;
        double lhs = gamma_fn(x + 1.0);
        double rhs = x * gamma_fn(x);
        grec = std::max(grec, std::fabs(lhs - rhs) / std::fabs(lhs));
    }
    out.push_back(residual_check("specfun", "gamma_recurrence_rel", grec, 1e-12));

    double wc = 0.0;
    for (double tau = 0.0; tau <= 8.0; tau += 0.5)
        wc = std::max(wc, std::fabs(wright_phi(0.5, tau) -
                                    std::exp(-0.25 * tau * tau) / std::sqrt(M_PI)));
    out.push_back(residual_check("specfun", "wright_half_closed_form", wc, 1e-9));

    double wm = 0.0;
    for (double a : {0.3, 0.5, 0.8})
        for (int d : {0, 1, 2}) {
            double cut = wright_tail_cutoff(a, 1e-8, d);
            double q = integrate_gk(
                [&](double tau) { return std::pow(tau, d) * wright_phi(a, tau); }, 0.0,
                cut, 1e-11);
            wm = std::max(wm, std::fabs(q - wright_moment(a, d)));
        }
    out.push_back(residual_check("specfun", "wright_moments", wm, 1e-6));
    return out;
}

std::vector<CheckResult> fracops(std::uint64_t seed) {
    (void)seed;
    std::vector<CheckResult> out;

    {
        auto mesh = std::make_shared<TimeMesh>(TimeMesh::uniform(1.0, 512));
        SampledFn f = SampledFn::sample(mesh, [](double t) { return t; });
        SampledFn d = caputo_derivative(f, 0.5);
        double want = 2.0 / std::sqrt(M_PI);  // t^{0.5}/Gamma(1.5) at t=1
        out.push_back(residual_check("fracops", "caputo_power_rule_linear",
                                     std::fabs(d.values.back() - want), 1e-12));
    }
    {
        auto m1 = std::make_shared<TimeMesh>(TimeMesh::uniform(1.0, 512));
        auto m2 = std::make_shared<TimeMesh>(TimeMesh::uniform(1.0, 1024));
        auto sq = [](double t) { return t * t; };
        double r1 = verify_fundamental(SampledFn::sample(m1, sq), 0.5);
        double r2 = verify_fundamental(SampledFn::sample(m2, sq), 0.5);
        out.push_back(residual_check("fracops", "fundamental_relation_t2_N1024", r2, 1e-3));
        out.push_back(margin_check("fracops", "fundamental_refinement_ratio", r1 / r2, 2.0));
    }
    {
        auto m1 = std::make_shared<TimeMesh>(TimeMesh::uniform(1.0, 512));
        auto m2 = std::make_shared<TimeMesh>(TimeMesh::uniform(1.0, 1024));
        auto mk = [&](std::shared_ptr<TimeMesh> m) {
            SampledFn x = SampledFn::sample(m, [](double t) { return t; });
            SampledFn y = SampledFn::sample(m, [](double t) { return 1.0 - t; });
            return verify_int_by_parts(x, y, 0.5);
        };
        double r1 = mk(m1), r2 = mk(m2);
        out.push_back(residual_check("fracops", "int_by_parts_N512", r1, 1e-2));
        out.push_back(margin_check("fracops", "int_by_parts_refinement_ratio", r1 / r2, 1.8));
    }
    {
        auto mesh = std::make_shared<TimeMesh>(TimeMesh::uniform(1.0, 1024));
        SampledFn x = SampledFn::sample(mesh, [](double t) { return t; });
        out.push_back(residual_check("fracops", "convex_chain_linear",
                                     verify_convex_chain(x, 0.5), 1e-4));
    }
    out.push_back(residual_check("fracops", "gronwall_envelope_equality",
                                 checks::gronwall_equality_residual(0.6, 1.5, 2048), 1e-4));
    return out;
}

std::vector<CheckResult> spectral(std::uint64_t seed) {
    std::vector<CheckResult> out;
    GridSpec g = GridSpec::interval(M_PI, 64, 16);
    CosinePlan plan(g);

    double eig = 0.0;
    for (int n = 0; n < 8; ++n)
        eig = std::max(eig, std::fabs(neumann_eigenvalue_1d(n, M_PI) - n * n));
    out.push_back(residual_check("spectral", "eigenvalues_unit_interval", eig, 1e-12));

    // discrete orthonormality of the retained basis
    double ortho = 0.0;
    for (int m = 0; m < g.modes[0]; ++m)
        for (int n = m; n < g.modes[0]; ++n) {
            double acc = 0.0;
            for (int i = 0; i < g.points[0]; ++i) {
                double x = g.length[0] * (i + 0.5) / g.points[0];
                acc += neumann_eigenfunction_1d(m, g.length[0], x) *
                       neumann_eigenfunction_1d(n, g.length[0], x);
            }
            acc *= g.cell_weight();
            ortho = std::max(ortho, std::fabs(acc - (m == n ? 1.0 : 0.0)));
        }
    out.push_back(residual_check("spectral", "basis_orthonormality", ortho, 1e-12));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N01(0.0, 1.0);
    {
        ModalField c(g, g.modes);
        for (auto& v : c.coeff) v = N01(rng);
        NodalField f = plan.to_nodal(c);
        ModalField c2 = plan.to_modal(f);
        double rt = 0.0, par = 0.0, l2 = inner_l2(f, f), sum = 0.0;
        for (std::size_t n = 0; n < c.coeff.size(); ++n) {
            rt = std::max(rt, std::fabs(c.coeff[n] - c2.coeff[n]));
            sum += c.coeff[n] * c.coeff[n];
        }
        par = std::fabs(l2 - sum);
        out.push_back(residual_check("spectral", "transform_roundtrip", rt, 1e-12));
        out.push_back(residual_check("spectral", "parseval", par, 1e-12));
    }
    {
        ModalField c(g, g.modes);
        for (auto& v : c.coeff) v = N01(rng);
        ModalField two = frac_laplacian(frac_laplacian(c, 0.3), 0.3);
        ModalField one = frac_laplacian(c, 0.6);
        double d = 0.0;
        for (std::size_t n = 0; n < c.coeff.size(); ++n)
            d = std::max(d, std::fabs(two.coeff[n] - one.coeff[n]));
        out.push_back(residual_check("spectral", "frac_laplacian_power_law", d, 1e-12));
    }
    {
        // contraction and mean conservation of S_alpha
        double worst = 0.0, mean_dev = 0.0;
        for (double t : {0.1, 1.0, 10.0})
            for (double a : {0.3, 0.7}) {
                ModalField c(g, g.modes);
                for (auto& v : c.coeff) v = 1.0;
                ModalField s = apply_S_alpha(c, t, a, 0.6);
                for (std::size_t n = 0; n < s.coeff.size(); ++n)
                    worst = std::max(worst, std::fabs(s.coeff[n]) - 1.0);
                mean_dev = std::max(mean_dev, std::fabs(s.coeff[0] - 1.0));
            }
        out.push_back(residual_check("spectral", "s_alpha_contraction", worst, 0.0));
        out.push_back(residual_check("spectral", "s_alpha_mean_conservation", mean_dev, 1e-15));
    }

    out.push_back(residual_check("spectral", "subordination_S",
                                 subordination_grid_residual(false), 1e-6));
    out.push_back(residual_check("spectral", "subordination_P",
                                 subordination_grid_residual(true), 1e-6));

    {
        GridSpec gs = GridSpec::interval(2.0, 128, 16);
        double margin = std::numeric_limits<double>::infinity();
        int idx = 0;
        for (int i = 0; i < 100; ++i) {
            NodalField u = random_smooth_positive(gs, rng, 1.0, 0.6);
            double p = (idx % 2 == 0) ? 3.0 : 4.0;
            double s = (idx / 2 % 2 == 0) ? 0.4 : 0.8;
            ++idx;
            margin = std::min(margin, verify_stroock_varopoulos(u, s, p));
        }
        out.push_back(margin_check("spectral", "stroock_varopoulos_sweep", margin, -1e-8));
    }
    {
        ModalField cu(g, g.modes), cv(g, g.modes);
        for (auto& v : cu.coeff) v = N01(rng);
        for (auto& v : cv.coeff) v = N01(rng);
        out.push_back(residual_check(
            "spectral", "laplacian_symmetry",
            verify_symmetry(plan.to_nodal(cu), plan.to_nodal(cv), 0.7), 1e-10));
    }
    return out;
}

std::vector<CheckResult> model(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    {
        std::uniform_real_distribution<double> U(1e-3, 10.0);
        double quad = 0.0;
        bool order = true;
        for (int i = 0; i < 200; ++i) {
            double a = U(rng), b = U(rng);
            double R = carrying_root(a, b);
            quad = std::max(quad, std::fabs(1.0 + a * R - b * R * R) /
                                      std::max(1.0, b * R * R));
            if (R < 1.0 / std::sqrt(b)) order = false;
        }
        out.push_back(residual_check("model", "carrying_root_quadratic_rel", quad, 1e-12));
        out.push_back(margin_check("model", "carrying_root_dominates", order ? 1.0 : 0.0, 1.0));
        out.push_back(residual_check(
            "model", "carrying_root_golden_ratio",
            std::fabs(carrying_root(1.0, 1.0) - 0.5 * (1.0 + std::sqrt(5.0))), 1e-12));
    }
    {
        double mass = 0.0;
        for (double gamma : {0.5, 1.0, 2.0}) {
            for (auto kind : {KernelSpec::exponential(gamma), KernelSpec::gamma_order2(gamma)}) {
                double cut = 60.0 / gamma;
                double q = integrate_gk([&](double t) { return kernel_eval(kind, t); },
                                        0.0, cut, 1e-12);
                mass = std::max(mass, std::fabs(q - 1.0));
            }
        }
        out.push_back(residual_check("model", "kernel_unit_mass", mass, 1e-10));
    }
    {
        // recursive vs direct convolution on a random trajectory
        GridSpec g = GridSpec::interval(1.0, 16, 4);
        Trajectory traj;
        traj.grid = g;
        std::normal_distribution<double> N01(0.0, 1.0);
        double t = 0.0;
        std::uniform_real_distribution<double> H(0.01, 0.05);
        for (int k = 0; k < 60; ++k) {
            NodalField u(g);
            for (auto& v : u.values) v = 1.0 + 0.3 * N01(rng);
            traj.times.push_back(t);
            traj.states.push_back(std::move(u));
            t += H(rng);
        }
        KernelSpec kern = KernelSpec::exponential(1.3);
        double diff = 0.0;
        NodalField direct = convolve_history(traj, kern, traj.size() - 1);
        NodalField rec = convolve_history_recursive(traj, kern, traj.size() - 1);
        for (std::size_t i = 0; i < direct.values.size(); ++i)
            diff = std::max(diff, std::fabs(direct.values[i] - rec.values[i]));
        out.push_back(residual_check("model", "conv_recursive_vs_direct", diff, 1e-8));

        // monotonicity: u >= v pointwise in history implies K*u >= K*v
        Trajectory lower = traj;
        for (auto& st : lower.states)
            for (auto& v : st.values) v -= 0.1;
        double mono = std::numeric_limits<double>::infinity();
        for (auto kind : {KernelSpec::exponential(0.8), KernelSpec::gamma_order2(1.2)}) {
            NodalField cu = convolve_history(traj, kind, traj.size() - 1);
            NodalField cv = convolve_history(lower, kind, traj.size() - 1);
            for (std::size_t i = 0; i < cu.values.size(); ++i)
                mono = std::min(mono, cu.values[i] - cv.values[i]);
        }
        out.push_back(margin_check("model", "convolution_monotone", mono, -1e-14));
    }
    {
        GridSpec g = GridSpec::interval(M_PI, 64, 16);
        double b = 1.7, a = 0.9;
        double us = 1.0 / std::sqrt(b);
        NodalField u(g), conv(g);
        std::fill(u.values.begin(), u.values.end(), us);
        std::fill(conv.values.begin(), conv.values.end(), us);
        NodalField f = reaction(u, conv, a, b);
        double eq = norm_linf(f);
        out.push_back(residual_check("model", "reaction_equilibrium_zero", eq, 1e-14));

        double R = carrying_root(a, b);
        std::fill(u.values.begin(), u.values.end(), R);
        std::fill(conv.values.begin(), conv.values.end(), R);
        f = reaction(u, conv, a, b);
        double want = -a * R * R;
        out.push_back(residual_check("model", "reaction_at_carrying_root",
                                     std::fabs(f.values[0] - want), 1e-12));

        // u >= R pointwise => non-delay part u(1+au-bu^2) <= 0
        double sign_margin = std::numeric_limits<double>::infinity();
        std::uniform_real_distribution<double> UU(0.0, 2.0);
        NodalField zero(g);
        for (int trial = 0; trial < 50; ++trial) {
            for (auto& v : u.values) v = R + UU(rng);
            NodalField fr = reaction(u, zero, a, b);
            for (double v : fr.values) sign_margin = std::min(sign_margin, -v);
        }
        out.push_back(margin_check("model", "reaction_sign_above_root", sign_margin, 0.0));
    }
    {
        GridSpec g = GridSpec::interval(M_PI, 64, 16);
        double b = 1.0;
        NodalField phi(g);
        std::fill(phi.values.begin(), phi.values.end(), 1.0 / std::sqrt(b));
        out.push_back(residual_check("model", "stationary_residual_constant",
                                     stationary_residual(phi, 0.5, b), 1e-12));

        // phi = 1/sqrt(b) + 0.1 e_1 against a dense-quadrature oracle
        for (int i = 0; i < g.points[0]; ++i) {
            double x = g.length[0] * (i + 0.5) / g.points[0];
            phi.values[i] = 1.0 + 0.1 * neumann_eigenfunction_1d(1, g.length[0], x);
        }
        double impl = stationary_residual(phi, 0.5, b);
        double lam1s = std::pow(neumann_eigenvalue_1d(1, g.length[0]), 0.5);
        auto integrand = [&](double x) {
            double e1 = neumann_eigenfunction_1d(1, g.length[0], x);
            double v = 1.0 + 0.1 * e1;
            double r = 0.1 * lam1s * e1 - v * (1.0 - b * v * v);
            return r * r;
        };
        double oracle = std::sqrt(integrate_gk(integrand, 0.0, g.length[0], 1e-13));
        out.push_back(residual_check("model", "stationary_residual_oracle",
                                     std::fabs(impl - oracle), 1e-8));
    }
    {
        GridSpec g = GridSpec::interval(M_PI, 64, 16);
        LinearSpectrum ls = linear_spectrum(g, 0.5);
        double n0 = std::fabs(ls.values[0] - 1.0);
        double n1 = std::fabs(ls.values[1] - 0.0);  // lambda_1 = 1 at L = pi
        double above = 0.0;
        for (double v : ls.values) above = std::max(above, v - 1.0);
        out.push_back(residual_check("model", "linear_spectrum_mode0", n0, 0.0));
        out.push_back(residual_check("model", "linear_spectrum_mode1_at_Lpi", n1, 1e-12));
        out.push_back(residual_check("model", "linear_spectrum_bounded_by_1", above, 0.0));
    }
    return out;
}

double subordination_grid_residual(bool p_form) {
    double worst = 0.0;
    for (double a : {0.3, 0.5, 0.8}) {
        for (int i = 0; i < 50; ++i) {
            double x = 10.0 * i / 49.0;
            double r = p_form ? verify_subordination_P(a, x, 1.0)
                              : verify_subordination(a, x, 1.0);
            worst = std::max(worst, r);
        }
    }
    return worst;
}

namespace {

struct LinearModeSetup {
    ModelParams params = reference_params(0.6, 0.7, 1.0, 1.0);
    GridSpec grid = GridSpec::interval(M_PI, 32, 8);
    double lambda_sigma = std::pow(4.0, 0.7);  // lambda_2 = 4 on [0,pi]
};

double linear_mode_error(Scheme scheme, int time_intervals) {
    LinearModeSetup s;
    SolverConfig cfg;
    cfg.scheme = scheme;
    cfg.reaction_enabled = false;
    cfg.mesh = (scheme == Scheme::L1Spectral)
                   ? TimeMesh::graded(1.0, time_intervals, default_grading(0.6))
                   : TimeMesh::uniform(1.0, time_intervals);
    NodalField u0(s.grid);
    for (int i = 0; i < s.grid.points[0]; ++i) {
        double x = s.grid.length[0] * (i + 0.5) / s.grid.points[0];
        u0.values[i] = neumann_eigenfunction_1d(2, s.grid.length[0], x);
    }
    Trajectory traj = solve(s.params, s.grid, u0, cfg);
    double amp = std::sqrt(2.0 / M_PI);  // ||e_2||_inf
    double worst = 0.0;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        double factor = mittag_leffler(0.6, 1.0,
                                       -s.lambda_sigma * std::pow(traj.times[k], 0.6));
        double err = 0.0;
        for (int i = 0; i < s.grid.points[0]; ++i) {
            double x = s.grid.length[0] * (i + 0.5) / s.grid.points[0];
            double exact = factor * neumann_eigenfunction_1d(2, s.grid.length[0], x);
            err = std::max(err, std::fabs(traj.states[k].values[i] - exact));
        }
        worst = std::max(worst, err / (std::fabs(factor) * amp));
    }
    return worst;
}

}  // namespace

double linear_mode_error_picard(int time_intervals) {
    return linear_mode_error(Scheme::MildPicard, time_intervals);
}

double linear_mode_error_l1(int time_intervals) {
    return linear_mode_error(Scheme::L1Spectral, time_intervals);
}

double oracle_equivalence_gap(int pde_intervals, int ode_intervals) {
    ModelParams p = reference_params(0.7, 0.5, 1.0, 1.0);
    GridSpec g = GridSpec::interval(M_PI, 16, 8);
    SolverConfig cfg;
    cfg.scheme = Scheme::L1Spectral;
    cfg.mesh = TimeMesh::graded(10.0, pde_intervals, default_grading(p.alpha));
    NodalField u0(g);
    std::fill(u0.values.begin(), u0.values.end(), 0.2);
    Trajectory traj = solve(p, g, u0, cfg);

    auto mesh = std::make_shared<TimeMesh>(TimeMesh::uniform(10.0, ode_intervals));
    SampledFn ref = reference_ode(p, 0.2, mesh);

    double h = 10.0 / ode_intervals;
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        double t = traj.times[k];
        std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(t / h),
                                              ref.values.size() - 2);
        double w = (t - mesh->nodes[j]) / h;
        double rv = (1.0 - w) * ref.values[j] + w * ref.values[j + 1];
        worst = std::max(worst, std::fabs(traj.states[k].values[0] - rv));
    }
    return worst;
}

double instability_growth_ratio(double eps, double alpha, int time_intervals) {
    ModelParams p = reference_params(alpha, 0.5, 1.0, 1.0);
    GridSpec g = GridSpec::interval(M_PI, 16, 4);
    return zero_instability_check(p, g, eps, time_intervals).ratio;
}

double scheme_cross_gap(double T, int time_intervals) {
    ModelParams p = reference_params(0.8, 0.5, 1.0, 1.0);
    GridSpec g = GridSpec::interval(M_PI, 64, 16);
    NodalField u0(g);
    for (int i = 0; i < g.points[0]; ++i) {
        double x = g.length[0] * (i + 0.5) / g.points[0];
        u0.values[i] = 0.5 + 0.2 * std::cos(M_PI * x / g.length[0]);
    }
    SolverConfig cfg;
    cfg.mesh = TimeMesh::uniform(T, time_intervals);
    cfg.scheme = Scheme::L1Spectral;
    Trajectory t1 = solve(p, g, u0, cfg);
    cfg.scheme = Scheme::MildPicard;
    Trajectory t2 = solve(p, g, u0, cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k < t1.size(); ++k) {
        double d = 0.0;
        for (std::size_t i = 0; i < t1.states[k].values.size(); ++i)
            d = std::max(d, std::fabs(t1.states[k].values[i] - t2.states[k].values[i]));
        worst = std::max(worst, d);
    }
    return worst;
}

RandomRunOutcome random_positive_run(std::uint64_t seed, int index) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
    std::uniform_real_distribution<double> Uas(0.3, 0.9), Uab(0.5, 4.0),
        Ug(0.5, 2.0), Ub(0.3, 1.0), Uamp(0.1, 0.5);
    ModelParams p;
    p.alpha = Uas(rng);
    p.sigma = Uas(rng);
    p.a = Uab(rng);
    p.b = Uab(rng);
    p.kernel = (index % 2 == 0) ? KernelSpec::exponential(Ug(rng))
                                : KernelSpec::gamma_order2(Ug(rng));
    GridSpec g = GridSpec::interval(M_PI, 48, 16);
    NodalField u0 = random_smooth_positive(g, rng, Ub(rng), Uamp(rng));

    // explicit-reaction stability: h^alpha Gamma(2-alpha) |g'| <= 1/2 with
    // |g'| bounded over the invariant box [0, max(||u0||, R)]
    double R = carrying_root(p.a, p.b);
    double umax = std::max(norm_linf(u0), R);
    double mu = 1.0 + p.a * p.a / (3.0 * p.b) + umax * std::sqrt(p.a * p.a + 4.0 * p.b) +
                p.a * umax;
    double h_crit = std::pow(1.0 / (2.0 * mu * gamma_fn(2.0 - p.alpha)), 1.0 / p.alpha);
    const int cap = 4000;
    double T = std::min(2.0, cap * h_crit);
    int K = std::max(200, std::min(cap, static_cast<int>(std::ceil(T / h_crit))));

    SolverConfig cfg;
    cfg.scheme = Scheme::L1Spectral;
    cfg.mesh = TimeMesh::graded(T, K, default_grading(p.alpha));
    Trajectory traj = solve(p, g, u0, cfg);
    DiagnosticsReport rep = run_diagnostics(traj, p);

    RandomRunOutcome out;
    out.min_margin = rep.min_margin;
    out.max_over_bound = rep.max_u / (rep.sup_bound * (1.0 + 1e-6));
    out.horizon = T;
    out.steps = K;
    return out;
}

double convex_chain_on_trajectory(int time_intervals) {
    ModelParams p = reference_params(0.8, 0.5, 1.0, 1.0);
    GridSpec g = GridSpec::interval(M_PI, 32, 8);
    NodalField u0(g);
    for (int i = 0; i < g.points[0]; ++i) {
        double x = g.length[0] * (i + 0.5) / g.points[0];
        u0.values[i] = 0.5 + 0.2 * std::cos(M_PI * x / g.length[0]);
    }
    SolverConfig cfg;
    cfg.scheme = Scheme::L1Spectral;
    cfg.mesh = TimeMesh::uniform(3.0, time_intervals);
    Trajectory traj = solve(p, g, u0, cfg);

    auto mesh = std::make_shared<TimeMesh>(cfg.mesh);
    SampledFn x(mesh);
    std::size_t mid = g.points[0] / 2;
    for (std::size_t k = 0; k < traj.size(); ++k)
        x.values[k] = traj.states[k].values[mid];
    return verify_convex_chain(x, p.alpha);
}

double gronwall_equality_residual(double alpha, double C, int time_intervals) {
    auto mesh = std::make_shared<TimeMesh>(
        TimeMesh::graded(1.0, time_intervals, default_grading(alpha)));
    SampledFn psi = SampledFn::sample(
        mesh, [&](double t) { return gronwall_envelope(1.0, C, alpha, t); });
    SampledFn ipsi = rl_integral_left(psi, alpha);
    double worst = 0.0;
    for (std::size_t k = 0; k < psi.values.size(); ++k)
        worst = std::max(worst,
                         std::fabs(1.0 + C * ipsi.values[k] - psi.values[k]));
    return worst;
}

std::vector<CheckResult> solver(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(residual_check("solver", "linear_mode_picard",
                                 linear_mode_error_picard(256), 1e-8));
    out.push_back(residual_check("solver", "linear_mode_l1_N2048",
                                 linear_mode_error_l1(2048), 1e-4));
    out.push_back(residual_check("solver", "oracle_equivalence",
                                 oracle_equivalence_gap(4000, 100000), 1e-3));
    {
        double r = instability_growth_ratio(1e-6, 0.7, 512);
        out.push_back(residual_check("solver", "instability_growth_ratio_dev",
                                     std::fabs(r - 1.0), 0.05));
    }
    out.push_back(residual_check("solver", "picard_l1_cross_gap",
                                 scheme_cross_gap(5.0, 2500), 5e-3));
    {
        double margin = std::numeric_limits<double>::infinity();
        double bound = 0.0;
        for (int i = 0; i < 5; ++i) {
            RandomRunOutcome r = random_positive_run(seed, i);
            margin = std::min(margin, r.min_margin);
            bound = std::max(bound, r.max_over_bound);
        }
        out.push_back(margin_check("solver", "positivity_sample", margin, -1e-8));
        out.push_back(residual_check("solver", "bound_sample", bound, 1.0));
    }
    out.push_back(residual_check("solver", "convex_chain_trajectory",
                                 convex_chain_on_trajectory(1024), 1e-3));
    return out;
}

}  // namespace checks

std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto add = [&](std::vector<CheckResult> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    if (suite == "specfun" || suite == "all") add(checks::specfun(seed));
    if (suite == "fracops" || suite == "all") add(checks::fracops(seed));
    if (suite == "spectral" || suite == "all") add(checks::spectral(seed));
    if (suite == "model" || suite == "all") add(checks::model(seed));
    if (suite == "solver" || suite == "all") add(checks::solver(seed));
    if (out.empty())
        throw std::invalid_argument("run_verify_suite: unknown suite '" + suite + "'");
    return out;
}

}  // namespace voltfrac
