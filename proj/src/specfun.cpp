#include "voltfrac/specfun.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "voltfrac/quadrature.hpp"

namespace voltfrac {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// Cancellation-limited series are evaluated in quad precision end to end:
// the cancellation magnitude reaches e^{|z|^{1/alpha}}, so the terms
// themselves must carry ~1e-26 relative accuracy, far beyond long double.
using f128 = __float128;
constexpr double kQTermEps = 5e-26;  // Spouge a=32 term accuracy, with headroom

double qabs(f128 x) { return static_cast<double>(x < 0 ? -x : x); }

// Spouge approximation of Gamma in quad precision (a = 32: relative error
// below 1e-26 on the positive half-line).
struct SpougeTable {
    static constexpr int a = 32;
    f128 c[32];
    SpougeTable() {
        c[0] = sqrtq(2.0Q * M_PIq);
        f128 fact = 1.0Q;
        for (int k = 1; k < a; ++k) {
            if (k > 1) fact *= -(k - 1);
            c[k] = powq(static_cast<f128>(a - k), k - 0.5Q) * expq(static_cast<f128>(a - k)) / fact;
        }
    }
};

const SpougeTable& spouge() {
    static const SpougeTable table;
    return table;
}

f128 qsinpi(f128 x) {
    f128 r = remainderq(x, 2.0Q);
    if (r > 0.5Q) r = 1.0Q - r;
    else if (r < -0.5Q) r = -1.0Q - r;
    return sinq(M_PIq * r);
}

f128 qgamma_pos(f128 x) {  // x >= 0.5
    const SpougeTable& s = spouge();
    f128 acc = s.c[0];
    for (int k = 1; k < SpougeTable::a; ++k) acc += s.c[k] / (x - 1.0Q + k);
    f128 t = x + (SpougeTable::a - 1);
    return powq(t, x - 0.5Q) * expq(-t) * acc;
}

// 1/Gamma in quad precision, exact zero at the poles.
f128 qrgamma(f128 x) {
    if (x <= 0.0Q && x == floorq(x)) return 0.0Q;
    if (x < 0.5Q) return qsinpi(x) * qgamma_pos(1.0Q - x) / M_PIq;
    return 1.0Q / qgamma_pos(x);
}

// Lanczos g=7, n=9 coefficient set.
constexpr long double kLanczos[9] = {
    0.99999999999980993227684700473478L,
    676.520368121885098567009190444019L,
    -1259.13921672240287047156078755283L,
    771.3234287776530788486528258894L,
    -176.61502916214059906584551354L,
    12.507343278686904814458936853L,
    -0.13857109526572011689554707L,
    9.984369578019570859563e-6L,
    1.50563273514931155834e-7L,
};

long double lanczos_sum(long double x) {
    long double s = kLanczos[0];
    for (int k = 1; k < 9; ++k) s += kLanczos[k] / (x - 1.0L + k);
    return s;
}

long double sinpi_l(long double x) {
    long double r = std::remainder(x, 2.0L);
    if (r > 0.5L) r = 1.0L - r;
    else if (r < -0.5L) r = -1.0L - r;
    return std::sin(kPiL * r);
}

// log Gamma(x) for x >= 0.5, via the same Lanczos kernel.
long double log_gamma_pos(long double x) {
    long double t = x + 6.5L;
    return (x - 0.5L) * std::log(t) - t + 0.5L * std::log(2.0L * kPiL) +
           std::log(lanczos_sum(x));
}

// Gamma for x >= 0.5 in long double (valid through the double overflow point).
long double gamma_pos_l(long double x) {
    long double t = x + 6.5L;
    return std::sqrt(2.0L * kPiL) * std::pow(t, x - 0.5L) * std::exp(-t) *
           lanczos_sum(x);
}

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// 1/Gamma in long double; exact zero at the poles.
long double rgamma_l(long double x) {
    if (x <= 0.0L && x == std::floor(x)) return 0.0L;
    if (x < 0.5L) {
        long double lg = log_gamma_pos(1.0L - x);
        if (lg > 11000.0L) return 0.0L;  // |1/Gamma| would overflow even long double
        return sinpi_l(x) * std::exp(lg) / kPiL;
    }
    if (x <= 170.0L) return 1.0L / gamma_pos_l(x);
    return std::exp(-log_gamma_pos(x));
}

struct SeriesResult {
    double value = 0.0;
    double err_est = std::numeric_limits<double>::infinity();
    bool converged = false;
};

[[noreturn]] void throw_nonconv(const char* fn, double alpha, double beta, double z) {
    std::ostringstream os;
    os << fn << ": no branch reached tolerance at alpha=" << alpha
       << " beta=" << beta << " z=" << z;
    throw NonConvergenceError(os.str());
}

// Power series sum_k z^k / Gamma(alpha k + beta) in quad precision.
// err_est tracks the cancellation roundoff.
SeriesResult ml_taylor_impl(double alpha, double beta, double z,
                            const SeriesControl& ctl) {
    const double tol = std::max(ctl.abs_tol, 1e-15);
    const f128 zq = z;
    f128 sum = 0;
    f128 zk = 1;
    double max_abs = 0.0;
    double term_d = 0.0;
    int small_streak = 0;
    SeriesResult out;
    const f128 aq = alpha, bq = beta;
    for (int k = 0; k < ctl.max_terms; ++k) {
        f128 term = zk * qrgamma(aq * k + bq);
        sum += term;
        term_d = qabs(term);
        max_abs = std::max(max_abs, term_d);
        zk *= zq;
        if (term_d < 0.05 * tol) {
            if (++small_streak >= 2 && k > 2) {
                out.converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    out.value = static_cast<double>(sum);
    out.err_est = max_abs * kQTermEps + term_d;
    if (!std::isfinite(out.value)) out.converged = false;
    return out;
}

// Truncated algebraic expansion for z -> -inf:
//   E_{a,b}(z) = -sum_{k>=1} z^{-k} / Gamma(b - a k) + O(|z|^{-K-1}).
// Divergent series; truncate at the smallest term.
SeriesResult ml_asymptotic_impl(double alpha, double beta, double z,
                                const SeriesControl& ctl) {
    SeriesResult out;
    if (z >= -1.0) return out;
    double sum = 0.0;
    double best = std::numeric_limits<double>::infinity();
    double zinv = 1.0 / z;
    double zk = 1.0;
    for (int k = 1; k < 80; ++k) {
        zk *= zinv;
        double term = -zk * rgamma(beta - alpha * k);
        double mag = std::fabs(term);
        if (term != 0.0 && mag >= best) break;  // smallest-term truncation
        sum += term;
        if (term != 0.0) best = mag;
    }
    out.value = sum;
    out.err_est = best * std::fabs(zinv) * 4.0;
    out.converged = out.err_est <= std::max(ctl.abs_tol, 1e-14);
    return out;
}

double ml_integral_impl(double alpha, double beta, double z, const SeriesControl& ctl);

// Spectral integral representation, 0<alpha<1, beta < 1+alpha, z != 0:
//   E_{a,b}(z) = [residue, z>0] + int_0^inf K(chi) dchi,
//   K(chi) = chi^{(1-b)/a} e^{-chi^{1/a}} (chi sin(pi(1-b)) - z sin(pi(1-b+a)))
//            / (a pi ((chi - z cos(pi a))^2 + (z sin(pi a))^2)).
double ml_integral_core(double alpha, double beta, double z,
                        const SeriesControl& ctl) {
    const double sa = sinpi(alpha);
    const double ca = cospi(alpha);
    const double s1 = sinpi(1.0 - beta);
    const double s2 = sinpi(1.0 - beta + alpha);
    const double peak = z * ca;               // Lorentzian centre, if on the positive axis
    const double width = std::fabs(z * sa);
    const double inv_api = 1.0 / (alpha * M_PI);

    auto kernel = [&](double chi) -> double {
        double num = chi * s1 - z * s2;
        double d1 = chi - peak;
        double den = d1 * d1 + width * width;
        double pre = (beta == 1.0) ? 1.0 : std::pow(chi, (1.0 - beta) / alpha);
        return inv_api * pre * std::exp(-std::pow(chi, 1.0 / alpha)) * num / den;
    };

    double chi_max = std::max(std::pow(46.0, alpha), 1.0);
    if (peak > 0.0) chi_max = std::max(chi_max, peak + 8.0 * width + 1.0);

    const double rel = 1e-13;
    double total = 0.0;
    // The chi^{(1-b)/a} factor is singular at 0 when beta > 1; substitute
    // chi = v^p with p = a/(a+1-b) to flatten it.
    double lo_end = std::min(chi_max, std::max(0.5, (peak > 0.0) ? peak - 4.0 * width : 0.5));
    if (beta > 1.0) {
        double p = alpha / (alpha + 1.0 - beta);
        auto flat = [&](double v) { return kernel(std::pow(v, p)) * p * std::pow(v, p - 1.0); };
        total += integrate_gk(flat, 0.0, std::pow(lo_end, 1.0 / p), rel);
    } else {
        total += integrate_gk(kernel, 0.0, lo_end, rel);
    }
    if (peak > 0.0 && lo_end < chi_max) {
        double mid_end = std::min(chi_max, peak + 4.0 * width);
        if (mid_end > lo_end) total += integrate_gk(kernel, lo_end, mid_end, rel);
        if (chi_max > mid_end) total += integrate_gk(kernel, mid_end, chi_max, rel);
    } else if (lo_end < chi_max) {
        total += integrate_gk(kernel, lo_end, chi_max, rel);
    }

    if (z > 0.0) {
        double e = std::pow(z, 1.0 / alpha);
        if (e > 709.0) throw std::overflow_error("mittag_leffler: result overflows");
        total += (1.0 / alpha) * std::pow(z, (1.0 - beta) / alpha) * std::exp(e);
    }
    (void)ctl;
    return total;
}

double ml_integral_impl(double alpha, double beta, double z,
                        const SeriesControl& ctl) {
    if (beta < 1.0 + alpha) return ml_integral_core(alpha, beta, z, ctl);
    // Shift beta downward into range: E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z.
    double lower = ml_integral_impl(alpha, beta - alpha, z, ctl);
    return (lower - rgamma(beta - alpha)) / z;
}

}  // namespace

void SeriesControl::validate() const {
    std::ostringstream os;
    bool bad = false;
    if (!(abs_tol > 0.0)) { os << "abs_tol must be > 0; "; bad = true; }
    if (max_terms < 1) { os << "max_terms must be >= 1; "; bad = true; }
    if (!(switch_radius > 0.0)) { os << "switch_radius must be > 0; "; bad = true; }
    if (bad) throw std::invalid_argument("SeriesControl: " + os.str());
}

double sinpi(double x) {
    double r = std::remainder(x, 2.0);
    if (r > 0.5) r = 1.0 - r;
    else if (r < -0.5) r = -1.0 - r;
    return std::sin(M_PI * r);
}

double cospi(double x) { return sinpi(x + 0.5); }

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw std::domain_error("gamma_fn: non-finite argument");
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at non-positive integer x=" +
                                std::to_string(x));
    if (x > 171.624) throw std::overflow_error("gamma_fn: overflow for x=" + std::to_string(x));
    if (x < 0.5) return M_PI / (sinpi(x) * gamma_fn(1.0 - x));
    return static_cast<double>(gamma_pos_l(x));
}

double rgamma(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rgamma: non-finite argument");
    return static_cast<double>(rgamma_l(x));
}

double ml_taylor_stable_radius(double alpha, double tol) {
    double budget = 0.05 * std::max(tol, 1e-13) / kQTermEps;
    // also capped by the term budget: the series needs about 1.3 X / alpha
    // terms to clear its hump at |z| = X^alpha
    double x_round = std::log(budget);
    double x_terms = (500.0 - 40.0) * alpha / 1.3;
    return std::pow(std::min(x_round, x_terms), alpha);
}

double mittag_leffler(double alpha, double beta, double z, const SeriesControl& ctl) {
    ctl.validate();
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(z))
        throw std::domain_error("mittag_leffler: non-finite argument");
    if (alpha <= 0.0 || alpha > 2.0)
        throw std::domain_error("mittag_leffler: alpha must lie in (0,2]");

    if (z == 0.0) return rgamma(beta);
    if (alpha == 1.0 && beta == 1.0) return std::exp(z);
    if (alpha == 2.0 && (beta == 1.0 || beta == 2.0)) {
        double s = std::sqrt(std::fabs(z));
        if (beta == 1.0) return z >= 0.0 ? std::cosh(s) : std::cos(s);
        return z >= 0.0 ? std::sinh(s) / s : std::sin(s) / s;
    }

    if (alpha > 1.0) {
        if (z > 0.0) {
            double r = std::sqrt(z);
            return 0.5 * (mittag_leffler(0.5 * alpha, beta, r, ctl) +
                          mittag_leffler(0.5 * alpha, beta, -r, ctl));
        }
        if (-z <= ml_taylor_stable_radius(alpha, ctl.abs_tol)) {
            SeriesResult r = ml_taylor_impl(alpha, beta, z, ctl);
            if (r.converged) return r.value;
        }
        throw_nonconv("mittag_leffler", alpha, beta, z);
    }

    // 0 < alpha <= 1
    if (z > 0.0) {
        if (std::pow(z, 1.0 / alpha) > 709.0)
            throw std::overflow_error("mittag_leffler: result overflows double");
        double series_cap = std::pow(0.7 * alpha * ctl.max_terms, alpha);
        double r_pos = std::min(ctl.switch_radius, series_cap);
        if (z <= r_pos || alpha == 1.0) {
            SeriesResult r = ml_taylor_impl(alpha, beta, z, ctl);
            if (r.converged) return r.value;
            if (alpha == 1.0) throw_nonconv("mittag_leffler", alpha, beta, z);
        }
        return ml_integral_impl(alpha, beta, z, ctl);
    }

    // z < 0
    double r_stable = ml_taylor_stable_radius(alpha, ctl.abs_tol);
    double r_neg = std::min(ctl.switch_radius, r_stable);
    // near alpha = 1 the integral's Lorentzian factor degenerates
    // (width ~ |z| sin(pi alpha)); prefer the stable series there
    if (alpha >= 0.95) r_neg = r_stable;
    if (-z <= r_neg) {
        SeriesResult r = ml_taylor_impl(alpha, beta, z, ctl);
        if (r.converged && r.err_est <= ctl.abs_tol) return r.value;
    }
    if (alpha == 1.0) {
        SeriesResult r = ml_asymptotic_impl(alpha, beta, z, ctl);
        if (r.converged) return r.value;
        throw_nonconv("mittag_leffler", alpha, beta, z);
    }
    if (z <= -30.0) {
        SeriesResult r = ml_asymptotic_impl(alpha, beta, z, ctl);
        if (r.converged) return r.value;
    }
    return ml_integral_impl(alpha, beta, z, ctl);
}

double mittag_leffler_branch(double alpha, double beta, double z,
                             const SeriesControl& ctl, MlBranch branch) {
    switch (branch) {
        case MlBranch::Auto:
            return mittag_leffler(alpha, beta, z, ctl);
        case MlBranch::Taylor: {
            SeriesResult r = ml_taylor_impl(alpha, beta, z, ctl);
            if (!r.converged) throw_nonconv("mittag_leffler_branch[taylor]", alpha, beta, z);
            return r.value;
        }
        case MlBranch::Integral:
            if (!(alpha > 0.0 && alpha < 1.0) || z == 0.0)
                throw std::domain_error("mittag_leffler_branch: integral branch needs 0<alpha<1, z!=0");
            return ml_integral_impl(alpha, beta, z, ctl);
        case MlBranch::Asymptotic: {
            SeriesResult r = ml_asymptotic_impl(alpha, beta, z, ctl);
            if (!r.converged) throw_nonconv("mittag_leffler_branch[asymptotic]", alpha, beta, z);
            return r.value;
        }
    }
    throw std::logic_error("mittag_leffler_branch: bad branch");
}

double wright_phi(double alpha, double tau, const SeriesControl& ctl) {
    ctl.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("wright_phi: alpha must lie in (0,1)");
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw std::domain_error("wright_phi: tau must be finite and >= 0");

    // Deliverable absolute accuracy: 1e-9 on the verifier domain, or looser
    // if requested.
    const double deliverable = std::max(ctl.abs_tol, 1e-9);

    // Decay bound: Phi_alpha(tau) <= 8 max(tau,1)^q exp(-c tau^{1/(1-alpha)})
    // with c = (1-alpha) alpha^{alpha/(1-alpha)}, q = max(0, (alpha-1/2)/(1-alpha)).
    // Deep in that tail the value is certified below tolerance and the
    // cancellation-heavy series is skipped.
    if (tau > 1.0) {
        double c = (1.0 - alpha) * std::pow(alpha, alpha / (1.0 - alpha));
        double X = c * std::pow(tau, 1.0 / (1.0 - alpha));
        double q = std::max(0.0, (alpha - 0.5) / (1.0 - alpha));
        if (X > 700.0 ||
            8.0 * std::pow(std::max(tau, 1.0), q) * std::exp(-X) <= 0.25 * deliverable)
            return 0.0;
    }

    const double tol = std::max(ctl.abs_tol, 1e-14);
    const f128 aq = alpha;
    f128 sum = 0;
    f128 pw = 1;  // (-tau)^n / n!
    double max_abs = 0.0;
    int small_streak = 0;
    bool converged = false;
    for (int n = 0; n < ctl.max_terms; ++n) {
        f128 term = pw * qrgamma(1.0Q - aq - aq * n);
        sum += term;
        max_abs = std::max(max_abs, qabs(term));
        pw *= static_cast<f128>(-tau) / (n + 1);
        if (qabs(term) < 0.05 * tol) {
            if (++small_streak >= 3 && n > 2) { converged = true; break; }
        } else {
            small_streak = 0;
        }
    }
    double roundoff = max_abs * kQTermEps;
    if (!converged || roundoff > deliverable) {
        std::ostringstream os;
        os << "wright_phi: series cannot deliver " << deliverable << " at alpha="
           << alpha << " tau=" << tau << " (roundoff estimate " << roundoff << ")";
        throw NonConvergenceError(os.str());
    }
    double v = static_cast<double>(sum);
    if (v < 0.0 && -v <= roundoff + deliverable) v = 0.0;  // Phi_alpha >= 0
    return v;
}

double wright_tail_cutoff(double alpha, double tail_tol, int delta) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("wright_tail_cutoff: alpha must lie in (0,1)");
    if (!(tail_tol > 0.0))
        throw std::domain_error("wright_tail_cutoff: tail_tol must be > 0");
    double best = std::numeric_limits<double>::infinity();
    for (int m = 4; m <= 120; ++m) {
        long double num = log_gamma_pos(static_cast<long double>(m + delta) + 1.0L);
        long double den = log_gamma_pos(alpha * static_cast<long double>(m + delta) + 1.0L);
        double tau = std::exp(static_cast<double>((num - den) - std::log((long double)tail_tol)) / m);
        best = std::min(best, tau);
    }
    return best;
}

double wright_moment(double alpha, int delta) {
    return rgamma(alpha * delta + 1.0) * gamma_fn(delta + 1.0);
}

}  // namespace voltfrac
