#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "voltfrac/quadrature.hpp"
#include "voltfrac/spectral.hpp"

using namespace voltfrac;

namespace {

NodalField sample_field(const GridSpec& g, double (*f)(double)) {
    NodalField u(g);
    for (int i = 0; i < g.points[0]; ++i)
        u.values[i] = f(g.length[0] * (i + 0.5) / g.points[0]);
    return u;
}

ModalField random_modal(const GridSpec& g, std::mt19937_64& rng, double decay = 1.0) {
    std::normal_distribution<double> N01(0.0, 1.0);
    ModalField c(g, g.modes);
    for (int n1 = 0; n1 < g.modes[0]; ++n1)
        for (int n2 = 0; n2 < g.modes[1]; ++n2)
            c.coeff[static_cast<std::size_t>(n1) * g.modes[1] + n2] =
                N01(rng) / std::pow(1.0 + n1 + n2, decay);
    return c;
}

}  // namespace

TEST_CASE("eigenpairs on [0,pi]: lambda_n = n^2, lambda_0 = 0") {
    GridSpec g = GridSpec::interval(M_PI, 32, 8);
    auto pairs = eigenpairs(g);
    REQUIRE(pairs.size() == 8);
    CHECK(pairs[0].lambda == 0.0);
    for (int n = 0; n < 8; ++n)
        CHECK(pairs[n].lambda == doctest::Approx(n * n).epsilon(1e-14));
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec::interval(-1.0, 32, 8), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::interval(1.0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::interval(1.0, 16, 32), std::invalid_argument);
    CHECK_NOTHROW(GridSpec::rectangle(1.0, 2.0, 8, 8, 4, 4));
}

TEST_CASE("basis orthonormality under midpoint quadrature") {
    GridSpec g = GridSpec::interval(2.5, 48, 24);
    double worst = 0.0;
    for (int m = 0; m < g.modes[0]; ++m)
        for (int n = 0; n < g.modes[0]; ++n) {
            double acc = 0.0;
            for (int i = 0; i < g.points[0]; ++i) {
                double x = g.length[0] * (i + 0.5) / g.points[0];
                acc += neumann_eigenfunction_1d(m, g.length[0], x) *
                       neumann_eigenfunction_1d(n, g.length[0], x);
            }
            worst = std::max(worst, std::fabs(acc * g.cell_weight() - (m == n ? 1.0 : 0.0)));
        }
    CHECK(worst <= 1e-12);
}

TEST_CASE("transforms: constant and single-mode fields") {
    GridSpec g = GridSpec::interval(2.0, 32, 8);
    CosinePlan plan(g);
    NodalField c(g);
    std::fill(c.values.begin(), c.values.end(), 3.0);
    ModalField mc = plan.to_modal(c);
    // constant c -> c sqrt(L) at n=0
    CHECK(mc.coeff[0] == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-14));
    for (std::size_t n = 1; n < mc.coeff.size(); ++n)
        CHECK(std::fabs(mc.coeff[n]) <= 1e-12);

    NodalField e3 = sample_field(g, [](double x) {
        return std::sqrt(2.0 / 2.0) * std::cos(3.0 * M_PI * x / 2.0);
    });
    ModalField me3 = plan.to_modal(e3);
    for (std::size_t n = 0; n < me3.coeff.size(); ++n)
        CHECK(std::fabs(me3.coeff[n] - (n == 3 ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("round trip is the identity on band-limited fields") {
    GridSpec g = GridSpec::interval(1.7, 64, 24);
    CosinePlan plan(g);
    std::mt19937_64 rng(11);
    ModalField c = random_modal(g, rng);
    NodalField f = plan.to_nodal(c);
    ModalField c2 = plan.to_modal(f);
    for (std::size_t n = 0; n < c.coeff.size(); ++n)
        CHECK(std::fabs(c.coeff[n] - c2.coeff[n]) <= 1e-12);
}

TEST_CASE("parseval for band-limited fields") {
    GridSpec g = GridSpec::interval(3.0, 64, 20);
    CosinePlan plan(g);
    std::mt19937_64 rng(13);
    ModalField c = random_modal(g, rng);
    NodalField f = plan.to_nodal(c);
    double sum = 0.0;
    for (double v : c.coeff) sum += v * v;
    CHECK(std::fabs(inner_l2(f, f) - sum) <= 1e-12 * std::max(1.0, sum));
}

TEST_CASE("fractional laplacian basics") {
    GridSpec g = GridSpec::interval(M_PI, 32, 8);
    ModalField c(g, g.modes);
    c.coeff[3] = 1.0;  // e_3
    ModalField l = frac_laplacian(c, 0.6);
    CHECK(l.coeff[3] == doctest::Approx(std::pow(9.0, 0.6)).epsilon(1e-14));

    ModalField cc(g, g.modes);
    cc.coeff[0] = 2.0;  // constant
    ModalField lc = frac_laplacian(cc, 0.5);
    CHECK(lc.coeff[0] == 0.0);

    // sigma = 1 equals the classical spectral laplacian
    ModalField l1 = frac_laplacian(c, 1.0);
    CHECK(l1.coeff[3] == doctest::Approx(9.0).epsilon(1e-14));

    // exponent power law: two half-applications equal one full one
    std::mt19937_64 rng(3);
    ModalField r = random_modal(g, rng);
    ModalField a = frac_laplacian(frac_laplacian(r, 0.35), 0.35);
    ModalField b = frac_laplacian(r, 0.7);
    for (std::size_t n = 0; n < r.coeff.size(); ++n)
        CHECK(std::fabs(a.coeff[n] - b.coeff[n]) <= 1e-12);

    CHECK_THROWS_AS(frac_laplacian(c, 0.0), std::domain_error);
    CHECK_THROWS_AS(frac_laplacian(c, 1.5), std::domain_error);
}

TEST_CASE("S_alpha: identity at t=0, exponential at alpha=1 limit, contraction") {
    GridSpec g = GridSpec::interval(M_PI, 32, 8);
    std::mt19937_64 rng(17);
    ModalField c = random_modal(g, rng);

    ModalField s0 = apply_S_alpha(c, 0.0, 0.6, 0.7);
    for (std::size_t n = 0; n < c.coeff.size(); ++n)
        CHECK(s0.coeff[n] == c.coeff[n]);

    // alpha -> 1: mode factor e^{-lambda^sigma t}
    ModalField s1 = apply_S_alpha(c, 0.8, 0.999999, 0.7);
    for (int n = 0; n < g.modes[0]; ++n) {
        double lam = neumann_eigenvalue_1d(n, M_PI);
        double ls = (lam == 0.0) ? 0.0 : std::pow(lam, 0.7);
        CHECK(s1.coeff[n] ==
              doctest::Approx(c.coeff[n] * std::exp(-ls * 0.8)).epsilon(1e-4));
    }

    // contraction: |factor| <= 1 for all t >= 0
    for (double t : {0.01, 0.5, 2.0, 25.0})
        for (double a : {0.3, 0.6, 0.9}) {
            ModalField ones(g, g.modes);
            std::fill(ones.coeff.begin(), ones.coeff.end(), 1.0);
            ModalField s = apply_S_alpha(ones, t, a, 0.5);
            for (double v : s.coeff) {
                CHECK(std::fabs(v) <= 1.0 + 1e-14);
                CHECK(v > 0.0);
            }
            // mean mode invariant (Neumann no-flux)
            CHECK(s.coeff[0] == 1.0);
        }
}

TEST_CASE("P_alpha: mean-mode factor and domain error at t=0") {
    GridSpec g = GridSpec::interval(M_PI, 32, 8);
    ModalField c(g, g.modes);
    std::fill(c.coeff.begin(), c.coeff.end(), 1.0);
    double t = 0.37, alpha = 0.6;
    ModalField p = apply_P_alpha(c, t, alpha, 0.5);
    // lambda_0 = 0 mode: t^{alpha-1}/Gamma(alpha)
    CHECK(p.coeff[0] ==
          doctest::Approx(std::pow(t, alpha - 1.0) * rgamma(alpha)).epsilon(1e-12));
    CHECK_THROWS_AS(apply_P_alpha(c, 0.0, 0.6, 0.5), std::domain_error);

    // alpha -> 1: P factor matches the semigroup e^{-lambda^sigma t}
    ModalField p1 = apply_P_alpha(c, t, 0.999999, 0.5);
    for (int n = 0; n < 4; ++n) {
        double lam = neumann_eigenvalue_1d(n, M_PI);
        double ls = (lam == 0.0) ? 0.0 : std::pow(lam, 0.5);
        CHECK(p1.coeff[n] == doctest::Approx(std::exp(-ls * t)).epsilon(1e-4));
    }
}

TEST_CASE("subordination identity: quadrature of Phi against the exponential") {
    // lambda = 0: integral of Phi alone, moment formula gives exactly 1
    CHECK(verify_subordination(0.5, 0.0, 1.0) <= 1e-8);
    // closed-form alpha = 1/2 case
    CHECK(verify_subordination(0.5, 1.0, 1.0) <= 1e-6);
    for (double a : {0.3, 0.8})
        for (double x : {0.5, 2.0, 10.0}) {
            INFO("alpha=", a, " x=", x);
            CHECK(verify_subordination(a, x, 1.0) <= 1e-6);
            CHECK(verify_subordination_P(a, x, 1.0) <= 1e-6);
        }
}

TEST_CASE("subordination check catches a corrupted evaluator") {
    auto corrupted = [](double a, double b, double z) {
        return mittag_leffler(a, b, z) * (1.0 + 1e-3);
    };
    CHECK(verify_subordination(0.5, 2.0, 1.0, SeriesControl{}, corrupted) > 1e-6);
}

TEST_CASE("stroock-varopoulos: equality cases and random sweep") {
    GridSpec g = GridSpec::interval(2.0, 96, 16);
    NodalField u(g);
    std::fill(u.values.begin(), u.values.end(), 1.4);
    CHECK(std::fabs(verify_stroock_varopoulos(u, 0.6, 3.0)) <= 1e-10);

    // p = 2 reduces to a Parseval identity
    std::mt19937_64 rng(23);
    CosinePlan plan(g);
    ModalField c = random_modal(g, rng, 2.0);
    c.coeff[0] = 5.0;  // keep it positive
    NodalField f = plan.to_nodal(c);
    REQUIRE(*std::min_element(f.values.begin(), f.values.end()) > 0.0);
    CHECK(std::fabs(verify_stroock_varopoulos(f, 0.7, 2.0)) <= 1e-10);

    double margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100; ++trial) {
        ModalField cc = random_modal(g, rng, 2.0);
        cc.coeff[0] = 4.0;
        NodalField ff = plan.to_nodal(cc);
        double mn = *std::min_element(ff.values.begin(), ff.values.end());
        if (mn < 0.05) {
            for (double& v : ff.values) v += 0.05 - mn;
        }
        double p = (trial % 2 == 0) ? 3.0 : 4.0;
        double s = (trial % 4 < 2) ? 0.4 : 0.8;
        margin = std::min(margin, verify_stroock_varopoulos(ff, s, p));
    }
    CHECK(margin >= -1e-8);

    NodalField neg(g);
    neg.values[0] = -1.0;
    CHECK_THROWS_AS(verify_stroock_varopoulos(neg, 0.5, 2.0), std::domain_error);
}

TEST_CASE("laplacian symmetry") {
    GridSpec g = GridSpec::interval(M_PI, 48, 12);
    CosinePlan plan(g);
    std::mt19937_64 rng(31);
    NodalField u = plan.to_nodal(random_modal(g, rng));
    CHECK(verify_symmetry(u, u, 0.5) == 0.0);

    // orthogonal single modes: both integrals vanish
    ModalField c2(g, g.modes), c5(g, g.modes);
    c2.coeff[2] = 1.0;
    c5.coeff[5] = 1.0;
    CHECK(verify_symmetry(plan.to_nodal(c2), plan.to_nodal(c5), 0.5) <= 1e-12);

    NodalField v = plan.to_nodal(random_modal(g, rng));
    CHECK(verify_symmetry(u, v, 0.7) <= 1e-10);
}

TEST_CASE("2-d tensor grid: transforms, eigenvalues, propagator") {
    GridSpec g = GridSpec::rectangle(M_PI, 2.0, 16, 12, 6, 5);
    CosinePlan plan(g);
    std::mt19937_64 rng(41);
    ModalField c = random_modal(g, rng);
    NodalField f = plan.to_nodal(c);
    ModalField c2 = plan.to_modal(f);
    for (std::size_t n = 0; n < c.coeff.size(); ++n)
        CHECK(std::fabs(c.coeff[n] - c2.coeff[n]) <= 1e-12);

    CHECK(neumann_eigenvalue(g, 2, 3) ==
          doctest::Approx(4.0 + 9.0 * M_PI * M_PI / 4.0).epsilon(1e-14));

    // single tensor mode decays with its own eigenvalue under S_alpha
    ModalField m(g, g.modes);
    m.coeff[2 * g.modes[1] + 3] = 1.0;
    double t = 0.5, alpha = 0.6, sigma = 0.5;
    ModalField s = apply_S_alpha(m, t, alpha, sigma);
    double lam = neumann_eigenvalue(g, 2, 3);
    double want = mittag_leffler(alpha, 1.0, -std::pow(lam, sigma) * std::pow(t, alpha));
    CHECK(s.coeff[2 * g.modes[1] + 3] == doctest::Approx(want).epsilon(1e-12));

    double par = 0.0, sum = 0.0;
    for (double v : c.coeff) sum += v * v;
    par = std::fabs(inner_l2(f, f) - sum);
    CHECK(par <= 1e-12 * std::max(1.0, sum));
}
