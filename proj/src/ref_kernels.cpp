#include "voltfrac/ref_kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "voltfrac/spectral.hpp"

namespace voltfrac::ref {

namespace {

double pow_diff(double A, double B, double p) {
    if (B == 0.0) return std::pow(A, p);
    return -std::pow(A, p) * std::expm1(p * std::log(B / A));
}

double point(const GridSpec& g, int d, int i) {
    return g.length[d] * (i + 0.5) / g.points[d];
}

}  // namespace

ModalField to_modal(const NodalField& f, std::array<int, 2> modes) {
    const GridSpec& g = f.grid;
    ModalField out(g, modes);
    const double w = g.cell_weight();
    for (int n1 = 0; n1 < modes[0]; ++n1)
        for (int n2 = 0; n2 < modes[1]; ++n2) {
            double acc = 0.0;
            for (int i1 = 0; i1 < g.points[0]; ++i1)
                for (int i2 = 0; i2 < g.points[1]; ++i2) {
                    double e = neumann_eigenfunction_1d(n1, g.length[0], point(g, 0, i1));
                    if (g.dim == 2)
                        e *= neumann_eigenfunction_1d(n2, g.length[1], point(g, 1, i2));
                    acc += f.values[static_cast<std::size_t>(i1) * g.points[1] + i2] * e;
                }
            out.coeff[static_cast<std::size_t>(n1) * modes[1] + n2] = acc * w;
        }
    return out;
}

NodalField to_nodal(const ModalField& c) {
    const GridSpec& g = c.grid;
    NodalField out(g);
    for (int i1 = 0; i1 < g.points[0]; ++i1)
        for (int i2 = 0; i2 < g.points[1]; ++i2) {
            double acc = 0.0;
            for (int n1 = 0; n1 < c.modes[0]; ++n1)
                for (int n2 = 0; n2 < c.modes[1]; ++n2) {
                    double e = neumann_eigenfunction_1d(n1, g.length[0], point(g, 0, i1));
                    if (g.dim == 2)
                        e *= neumann_eigenfunction_1d(n2, g.length[1], point(g, 1, i2));
                    acc += c.coeff[static_cast<std::size_t>(n1) * c.modes[1] + n2] * e;
                }
            out.values[static_cast<std::size_t>(i1) * g.points[1] + i2] = acc;
        }
    return out;
}

SampledFn caputo_derivative(const SampledFn& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("ref::caputo_derivative: alpha must lie in (0,1)");
    const auto& t = f.mesh->nodes;
    SampledFn out(f.mesh);
    double c = rgamma(2.0 - alpha);
    for (std::size_t k = 1; k < t.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            double slope = (f.values[j + 1] - f.values[j]) / (t[j + 1] - t[j]);
            acc += slope * pow_diff(t[k] - t[j], t[k] - t[j + 1], 1.0 - alpha);
        }
        out.values[k] = c * acc;
    }
    return out;
}

SampledFn rl_integral_left(const SampledFn& f, double alpha) {
    if (!(alpha > 0.0))
        throw std::domain_error("ref::rl_integral_left: alpha must be > 0");
    const auto& t = f.mesh->nodes;
    SampledFn out(f.mesh);
    double c = rgamma(alpha);
    for (std::size_t k = 1; k < t.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            double A = t[k] - t[j], B = t[k] - t[j + 1], h = t[j + 1] - t[j];
            double d1 = pow_diff(A, B, alpha);
            double d2 = pow_diff(A, B, alpha + 1.0);
            double m0 = d1 / alpha;
            double m1 = A * d1 / alpha - d2 / (alpha + 1.0);
            acc += f.values[j] * (m0 - m1 / h) + f.values[j + 1] * (m1 / h);
        }
        out.values[k] = c * acc;
    }
    return out;
}

NodalField convolve_history(const Trajectory& traj, const KernelSpec& k,
                            std::size_t t_index) {
    if (t_index >= traj.size())
        throw std::out_of_range("ref::convolve_history: t_index outside trajectory");
    NodalField out(traj.grid);
    if (t_index == 0) return out;
    double T = traj.times[t_index];
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < t_index; ++j) {
            double s0 = traj.times[j], s1 = traj.times[j + 1], h = s1 - s0;
            double w0, w1;
            if (k.kind == KernelSpec::Kind::Exponential) {
                double E0 = std::exp(-k.rate * (T - s0));
                double E1 = std::exp(-k.rate * (T - s1));
                double m0 = E1 - E0;
                double m1 = h * E1 - m0 / k.rate;
                w0 = m0 - m1 / h;
                w1 = m1 / h;
            } else {
                w0 = 0.5 * h * kernel_eval(k, T - s0);
                w1 = 0.5 * h * kernel_eval(k, T - s1);
            }
            acc += w0 * traj.states[j].values[i] + w1 * traj.states[j + 1].values[i];
        }
        out.values[i] = acc;
    }
    return out;
}

}  // namespace voltfrac::ref
