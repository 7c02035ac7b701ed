#pragma once

#include <functional>
#include <vector>

#include "voltfrac/grid.hpp"
#include "voltfrac/specfun.hpp"

namespace voltfrac {

// Neumann cosine eigenbasis on [0,L]: lambda_n = (n pi / L)^2,
// e_0 = 1/sqrt(L), e_n = sqrt(2/L) cos(n pi x / L). Tensor products in 2-D.
double neumann_eigenvalue_1d(int n, double L);
double neumann_eigenfunction_1d(int n, double L, double x);

// Eigenvalue of the tensor mode with multi-index (m1, m2).
double neumann_eigenvalue(const GridSpec& g, int m1, int m2 = 0);

struct EigenPair {
    std::array<int, 2> index;
    double lambda;
};
std::vector<EigenPair> eigenpairs(const GridSpec& g);

// Precomputed cosine transform tables for one grid.
class CosinePlan {
public:
    explicit CosinePlan(const GridSpec& g);

    // Forward transform with a per-dimension mode budget (defaults to the
    // grid's). Round trip is the identity on band-limited fields.
    ModalField to_modal(const NodalField& f) const;
    ModalField to_modal(const NodalField& f, std::array<int, 2> modes) const;
    NodalField to_nodal(const ModalField& c) const;

    const GridSpec& grid() const { return grid_; }

private:
    GridSpec grid_;
    // basis_[d][n * N + i] = e_n(x_i) along dimension d
    std::array<std::vector<double>, 2> basis_;
};

ModalField to_modal(const NodalField& f);
NodalField to_nodal(const ModalField& c);

// (-Delta_N)^sigma: multiply mode n by lambda_n^sigma; the mean mode is
// annihilated.
ModalField frac_laplacian(const ModalField& c, double sigma);

// S_alpha(t): mode factor E_{alpha,1}(-lambda^sigma t^alpha). Identity at t=0.
ModalField apply_S_alpha(const ModalField& c, double t, double alpha, double sigma,
                         const SeriesControl& ctl = {});

// P_alpha(t): mode factor t^{alpha-1} E_{alpha,alpha}(-lambda^sigma t^alpha), t > 0.
ModalField apply_P_alpha(const ModalField& c, double t, double alpha, double sigma,
                         const SeriesControl& ctl = {});

// Scalar mode factors (shared with the solver's tables).
double s_alpha_factor(double lambda_sigma, double t, double alpha,
                      const SeriesControl& ctl = {});
double p_alpha_factor(double lambda_sigma, double t, double alpha,
                      const SeriesControl& ctl = {});

// |quadrature of Phi_alpha(tau) e^{-lambda tau t^alpha} - E_{alpha,1}(-lambda t^alpha)|.
// `eval_E` may be substituted to test sensitivity; defaults to mittag_leffler.
double verify_subordination(double alpha, double lambda, double t,
                            const SeriesControl& ctl = {},
                            const std::function<double(double, double, double)>& eval_E = {});

// P-counterpart: |alpha * quad(tau Phi e^{-x tau}) - E_{alpha,alpha}(-x)|.
double verify_subordination_P(double alpha, double lambda, double t,
                              const SeriesControl& ctl = {});

// int u^{p-1} (-D)^{sigma/2} u - (4(p-1)/p^2) int |(-D)^{sigma/4} u^{p/2}|^2,
// both by full-resolution spectral quadrature. Nonnegative input required.
double verify_stroock_varopoulos(const NodalField& u, double sigma, double p);

// |int u (-D)^sigma v - int v (-D)^sigma u|.
double verify_symmetry(const NodalField& u, const NodalField& v, double sigma);

// L2 inner product and norms by grid quadrature.
double inner_l2(const NodalField& u, const NodalField& v);
double norm_l2(const NodalField& u);
double norm_linf(const NodalField& u);

}  // namespace voltfrac
