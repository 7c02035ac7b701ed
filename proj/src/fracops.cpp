#include "voltfrac/fracops.hpp"

#include <cmath>
#include <stdexcept>

namespace voltfrac {

namespace {

// A^p - B^p for 0 <= B <= A without cancellation.
double pow_diff(double A, double B, double p) {
    if (B == 0.0) return std::pow(A, p);
    return -std::pow(A, p) * std::expm1(p * std::log(B / A));
}

void require_alpha_01(double alpha, const char* fn) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error(std::string(fn) + ": alpha must lie in (0,1)");
}

}  // namespace

SampledFn caputo_derivative(const SampledFn& f, double alpha) {
    require_alpha_01(alpha, "caputo_derivative");
    const TimeMesh& m = *f.mesh;
    if (m.size() < 2) throw std::invalid_argument("caputo_derivative: need >= 2 nodes");
    SampledFn out(f.mesh);
    const double c = rgamma(2.0 - alpha);
    const double p = 1.0 - alpha;
    const auto& t = m.nodes;
    const int n = static_cast<int>(m.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (int k = 1; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < k; ++j) {
            double slope = (f.values[j + 1] - f.values[j]) / (t[j + 1] - t[j]);
            acc += slope * pow_diff(t[k] - t[j], t[k] - t[j + 1], p);
        }
        out.values[k] = c * acc;
    }
    out.values[0] = 0.0;
    return out;
}

SampledFn rl_integral_left(const SampledFn& f, double alpha) {
    if (!(alpha > 0.0))
        throw std::domain_error("rl_integral_left: alpha must be > 0");
    const TimeMesh& m = *f.mesh;
    SampledFn out(f.mesh);
    const double c = rgamma(alpha);
    const auto& t = m.nodes;
    const int n = static_cast<int>(m.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (int k = 1; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < k; ++j) {
            double A = t[k] - t[j], B = t[k] - t[j + 1], h = t[j + 1] - t[j];
            double d1 = pow_diff(A, B, alpha);
            double d2 = pow_diff(A, B, alpha + 1.0);
            double m0 = d1 / alpha;
            double m1 = A * d1 / alpha - d2 / (alpha + 1.0);
            acc += f.values[j] * (m0 - m1 / h) + f.values[j + 1] * (m1 / h);
        }
        out.values[k] = c * acc;
    }
    out.values[0] = 0.0;
    return out;
}

SampledFn rl_integral_right(const SampledFn& f, double alpha) {
    if (!(alpha > 0.0))
        throw std::domain_error("rl_integral_right: alpha must be > 0");
    const TimeMesh& m = *f.mesh;
    SampledFn out(f.mesh);
    const double c = rgamma(alpha);
    const auto& t = m.nodes;
    const int n = static_cast<int>(m.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (int k = 0; k < n - 1; ++k) {
        double acc = 0.0;
        for (int j = k; j < n - 1; ++j) {
            double A = t[j + 1] - t[k], B = t[j] - t[k], h = t[j + 1] - t[j];
            double d1 = pow_diff(A, B, alpha);
            double d2 = pow_diff(A, B, alpha + 1.0);
            double m0 = d1 / alpha;
            double m1 = d2 / (alpha + 1.0) - B * d1 / alpha;
            acc += f.values[j] * (m0 - m1 / h) + f.values[j + 1] * (m1 / h);
        }
        out.values[k] = c * acc;
    }
    out.values[n - 1] = 0.0;
    return out;
}

SampledFn rl_derivative_right(const SampledFn& f, double alpha) {
    require_alpha_01(alpha, "rl_derivative_right");
    SampledFn g = rl_integral_right(f, 1.0 - alpha);
    const auto& t = f.mesh->nodes;
    const int n = static_cast<int>(t.size());
    if (n < 3) throw std::invalid_argument("rl_derivative_right: need >= 3 nodes");
    SampledFn out(f.mesh);
    auto d3 = [&](int i0, int i1, int i2, int at) {
        // derivative of the quadratic through (t_i, g_i) evaluated at t_at
        double x0 = t[i0], x1 = t[i1], x2 = t[i2], xa = t[at];
        double g0 = g.values[i0], g1 = g.values[i1], g2 = g.values[i2];
        double w0 = (2.0 * xa - x1 - x2) / ((x0 - x1) * (x0 - x2));
        double w1 = (2.0 * xa - x0 - x2) / ((x1 - x0) * (x1 - x2));
        double w2 = (2.0 * xa - x0 - x1) / ((x2 - x0) * (x2 - x1));
        return w0 * g0 + w1 * g1 + w2 * g2;
    };
    out.values[0] = -d3(0, 1, 2, 0);
    for (int k = 1; k < n - 1; ++k) out.values[k] = -d3(k - 1, k, k + 1, k);
    out.values[n - 1] = -d3(n - 3, n - 2, n - 1, n - 1);
    return out;
}

double trapezoid(const SampledFn& f) {
    const auto& t = f.mesh->nodes;
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < t.size(); ++j)
        acc += 0.5 * (t[j + 1] - t[j]) * (f.values[j] + f.values[j + 1]);
    return acc;
}

double verify_fundamental(const SampledFn& f, double alpha) {
    SampledFn d = caputo_derivative(f, alpha);
    SampledFn i = rl_integral_left(d, alpha);
    double worst = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        worst = std::max(worst, std::fabs(i.values[k] - (f.values[k] - f.values[0])));
    return worst;
}

double verify_int_by_parts(const SampledFn& x, const SampledFn& y, double alpha) {
    if (x.mesh->nodes != y.mesh->nodes)
        throw std::invalid_argument("verify_int_by_parts: meshes differ");
    SampledFn dx = caputo_derivative(x, alpha);
    SampledFn dy = rl_derivative_right(y, alpha);
    SampledFn iy = rl_integral_right(y, 1.0 - alpha);
    SampledFn lhs(x.mesh), rhs(x.mesh);
    for (std::size_t k = 0; k < x.values.size(); ++k) {
        lhs.values[k] = y.values[k] * dx.values[k];
        rhs.values[k] = x.values[k] * dy.values[k];
    }
    std::size_t last = x.values.size() - 1;
    double bracket = x.values[last] * iy.values[last] - x.values[0] * iy.values[0];
    return std::fabs(trapezoid(lhs) - trapezoid(rhs) - bracket);
}

double gronwall_envelope(double psi0, double C, double alpha, double t,
                         const SeriesControl& ctl) {
    if (!(psi0 >= 0.0)) throw std::domain_error("gronwall_envelope: psi0 must be >= 0");
    if (!(C > 0.0)) throw std::domain_error("gronwall_envelope: C must be > 0");
    if (psi0 == 0.0) return 0.0;
    return psi0 * mittag_leffler(alpha, 1.0, C * std::pow(t, alpha), ctl);
}

double verify_convex_chain_with(const SampledFn& x, double alpha,
                                const std::function<double(double)>& phi,
                                const std::function<double(double)>& dphi,
                                double* t1_violation) {
    SampledFn px(x.mesh);
    for (std::size_t k = 0; k < x.values.size(); ++k) px.values[k] = phi(x.values[k]);
    SampledFn dpx = caputo_derivative(px, alpha);
    SampledFn dx = caputo_derivative(x, alpha);
    double worst = 0.0;
    for (std::size_t k = 1; k < x.values.size(); ++k) {
        double v = dpx.values[k] - dphi(x.values[k]) * dx.values[k];
        if (k == 1) {
            if (t1_violation) *t1_violation = v;
            continue;
        }
        worst = std::max(worst, v);
    }
    return worst;
}

double verify_convex_chain(const SampledFn& x, double alpha, double* t1_violation) {
    return verify_convex_chain_with(
        x, alpha, [](double u) { return u * u; }, [](double u) { return 2.0 * u; },
        t1_violation);
}

}  // namespace voltfrac
