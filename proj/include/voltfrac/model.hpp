#pragma once

#include <string>
#include <vector>

#include "voltfrac/grid.hpp"
#include "voltfrac/trajectory.hpp"

namespace voltfrac {

// Unit-mass nonnegative delay kernel. Built-ins are normalized analytically;
// tabulated kernels are renormalized at load and valid on their support only.
struct KernelSpec {
    enum class Kind { Exponential, GammaOrder2, Tabulated };
    Kind kind = Kind::Exponential;
    double rate = 1.0;  // gamma parameter of the built-ins
    std::vector<double> tab_t, tab_k;

    static KernelSpec exponential(double gamma);
    static KernelSpec gamma_order2(double gamma);
    static KernelSpec tabulated(std::vector<double> t, std::vector<double> k);
    static KernelSpec tabulated_from_csv(const std::string& path);
};

double kernel_eval(const KernelSpec& k, double t);

// The tuple defining one problem instance.
struct ModelParams {
    double alpha = 0.5;
    double sigma = 0.5;
    double a = 1.0;
    double b = 1.0;
    KernelSpec kernel;

    void validate() const;
    double equilibrium() const;  // 1/sqrt(b)
};

// Positive root of 1 + a w - b w^2 = 0.
double carrying_root(double a, double b);

struct EquilibriumReport {
    double R = 0.0;       // carrying root
    double u_star = 0.0;  // 1/sqrt(b)
    bool satisfies_order = false;  // R >= u_star
};
EquilibriumReport equilibrium_report(double a, double b);

// (K*u)(t_{idx}) over the trajectory history by product quadrature on the
// trajectory's time mesh; exponential kernels use exact per-interval moments
// so the direct sum agrees with the solver's recursive update.
NodalField convolve_history(const Trajectory& traj, const KernelSpec& k,
                            std::size_t t_index);

// Exponential kernels only: the O(1)-per-step recursive update
// c_{k+1} = e^{-gamma dt} c_k + increment, stepped from 0 to t_index.
// Must agree with convolve_history to quadrature roundoff.
NodalField convolve_history_recursive(const Trajectory& traj, const KernelSpec& k,
                                      std::size_t t_index);

// Pointwise reaction u(1 + a u - b u^2) - a u conv.
NodalField reaction(const NodalField& u, const NodalField& conv, double a, double b);

// L2 norm of (-Delta_N)^sigma phi - phi(1 - b phi^2).
double stationary_residual(const NodalField& phi, double sigma, double b);

// Spectrum of the linearization at u = 0: eigenvalue 1 - lambda_n^{s},
// with s = sigma (consistent with the evolution operator) or sigma/2.
enum class LinearizationExponent { FullSigma, HalfSigma };
struct LinearSpectrum {
    std::vector<double> values;          // mode-ordered eigenvalues
    std::vector<std::size_t> unstable;   // indices with eigenvalue > 0
};
LinearSpectrum linear_spectrum(const GridSpec& grid, double sigma,
                               LinearizationExponent e = LinearizationExponent::FullSigma);

}  // namespace voltfrac
