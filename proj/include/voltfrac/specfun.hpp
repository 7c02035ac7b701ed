#pragma once

#include <stdexcept>
#include <string>

namespace voltfrac {

// Tolerance and term-cap policy for special-function series evaluation.
struct SeriesControl {
    double abs_tol = 1e-12;
    int max_terms = 500;
    double switch_radius = 5.0;  // |z| above which the integral/asymptotic branch is preferred

    void validate() const;
};

// Signalled when no evaluation branch reaches the requested tolerance
// within the term budget.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// sin(pi*x) and cos(pi*x) with exact integer/half-integer zeros.
double sinpi(double x);
double cospi(double x);

// Gamma function on the real line. Lanczos rational approximation for
// x >= 0.5, reflection below. Relative error <= 1e-12 on [-170, 170]
// away from the poles.
// Throws std::domain_error at non-positive integers, std::overflow_error
// for x above the double overflow threshold (~171.62).
double gamma_fn(double x);

// 1/Gamma(x): entire, returns exactly 0 at non-positive integers.
double rgamma(double x);

// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z,
// alpha in (0,2]. Branches: power series (small |z|), Gauss-Kronrod
// quadrature of the spectral integral representation (moderate to large
// |z|, 0<alpha<1), truncated algebraic expansion (very negative z).
double mittag_leffler(double alpha, double beta, double z,
                      const SeriesControl& ctl = {});

// Branch selector for cross-checking the regimes against each other.
enum class MlBranch { Auto, Taylor, Integral, Asymptotic };
double mittag_leffler_branch(double alpha, double beta, double z,
                             const SeriesControl& ctl, MlBranch branch);

// Largest |z| at which the power series for E_{alpha,beta}(-|z|) still
// meets `tol` in long-double arithmetic (cancellation-limited).
double ml_taylor_stable_radius(double alpha, double tol);

// Wright-type function Phi_alpha(tau) = sum (-tau)^n / (n! Gamma(1-alpha-alpha n)),
// 0 < alpha < 1, tau >= 0. Nonnegative; direct series evaluation.
double wright_phi(double alpha, double tau, const SeriesControl& ctl = {});

// tau beyond which int_tau^inf t^delta Phi_alpha(t) dt <= tail_tol,
// from the moment (Markov) bound.
double wright_tail_cutoff(double alpha, double tail_tol, int delta = 0);

// int_0^inf tau^delta Phi_alpha(tau) dtau = Gamma(delta+1)/Gamma(alpha*delta+1).
double wright_moment(double alpha, int delta);

}  // namespace voltfrac
