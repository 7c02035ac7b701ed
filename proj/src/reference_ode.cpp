#include <cmath>
#include <stdexcept>
#include <vector>

#include "voltfrac/solver.hpp"

namespace voltfrac {

namespace {

// Scalar memory term. Exponential kernels use the exact-moment recursion,
// others re-sum the history with the product trapezoid rule.
class ScalarConv {
public:
    ScalarConv(const KernelSpec& k, bool clamp, double u0)
        : kernel_(k), clamp_(clamp), u0_(u0) {}

    double at(const std::vector<double>& t, const std::vector<double>& U,
              std::size_t n, double u_end) const {
        if (clamp_) return u0_;
        if (n == 0) return 0.0;
        if (kernel_.kind == KernelSpec::Kind::Exponential) {
            double h = t[n] - t[n - 1];
            double decay = std::exp(-kernel_.rate * h);
            double m0 = 1.0 - decay;
            double m1 = h - m0 / kernel_.rate;
            return decay * acc_ + (m0 - m1 / h) * U[n - 1] + (m1 / h) * u_end;
        }
        double out = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double h = t[j + 1] - t[j];
            double uj1 = (j + 1 == n) ? u_end : U[j + 1];
            out += 0.5 * h * (kernel_eval(kernel_, t[n] - t[j]) * U[j] +
                              kernel_eval(kernel_, t[n] - t[j + 1]) * uj1);
        }
        return out;
    }

    void advance(const std::vector<double>& t, const std::vector<double>& U,
                 std::size_t n) {
        if (clamp_ || kernel_.kind != KernelSpec::Kind::Exponential) return;
        acc_ = at(t, U, n, U[n]);
    }

private:
    KernelSpec kernel_;
    bool clamp_;
    double u0_;
    double acc_ = 0.0;
};

}  // namespace

SampledFn reference_ode(const ModelParams& params, double u0,
                        std::shared_ptr<const TimeMesh> mesh,
                        const ReferenceOdeOptions& opts) {
    params.validate();
    if (!(u0 >= 0.0)) throw std::invalid_argument("reference_ode: u0 must be >= 0");
    if (!mesh || mesh->size() < 2)
        throw std::invalid_argument("reference_ode: mesh missing");
    if (!mesh->is_uniform())
        throw std::invalid_argument("reference_ode: Adams weights need a uniform mesh");

    const double alpha = params.alpha;
    const double a = params.a, b = params.b;
    const auto& t = mesh->nodes;
    const std::size_t K = mesh->intervals;
    const double h = mesh->horizon / K;
    const double ha_p = std::pow(h, alpha) * rgamma(alpha + 1.0);  // predictor scale
    const double ha_c = std::pow(h, alpha) * rgamma(alpha + 2.0);  // corrector scale

    std::vector<double> pw(K + 2), qw(K + 2);
    for (std::size_t m = 0; m <= K + 1; ++m) {
        pw[m] = std::pow(static_cast<double>(m), alpha);
        qw[m] = std::pow(static_cast<double>(m), alpha + 1.0);
    }

    auto rhs = [&](double u, double conv) {
        return u * (1.0 + a * u - b * u * u) - a * u * conv;
    };

    SampledFn out(mesh);
    std::vector<double>& U = out.values;
    std::vector<double> G(K + 1, 0.0);
    U[0] = u0;
    ScalarConv conv(params.kernel, opts.clamp_conv_to_initial, u0);
    G[0] = rhs(u0, conv.at(t, U, 0, u0));

    constexpr std::size_t kChunk = 8192;
    std::vector<double> partial;

    auto history_sum = [&](std::size_t n, bool corrector) {
        std::size_t nchunks = (n + kChunk - 1) / kChunk;
        partial.assign(nchunks, 0.0);
#pragma omp parallel for if (nchunks > 1)
        for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
            std::size_t j0 = c * kChunk, j1 = std::min(n, j0 + kChunk);
            double acc = 0.0;
            if (corrector) {
                for (std::size_t j = j0; j < j1; ++j) {
                    double w = (j == 0)
                                   ? (qw[n - 1] - (n - 1.0 - alpha) * pw[n])
                                   : (qw[n - j + 1] - 2.0 * qw[n - j] + qw[n - j - 1]);
                    acc += w * G[j];
                }
            } else {
                for (std::size_t j = j0; j < j1; ++j)
                    acc += (pw[n - j] - pw[n - j - 1]) * G[j];
            }
            partial[c] = acc;
        }
        double s = 0.0;
        for (double v : partial) s += v;  // fixed order regardless of threads
        return s;
    };

    for (std::size_t n = 1; n <= K; ++n) {
        double up = u0 + ha_p * history_sum(n, false);
        double gp = rhs(up, conv.at(t, U, n, up));
        double un = u0 + ha_c * (gp + history_sum(n, true));
        U[n] = un;
        G[n] = rhs(un, conv.at(t, U, n, un));
        conv.advance(t, U, n);
        if (!std::isfinite(U[n]) || std::fabs(U[n]) > opts.blowup_threshold)
            throw BlowupError(t[n], std::fabs(U[n]), nullptr);
    }
    return out;
}

}  // namespace voltfrac
