#include "voltfrac/spectral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "voltfrac/quadrature.hpp"

namespace voltfrac {

GridSpec GridSpec::interval(double L, int N, int M) {
    GridSpec g;
    g.dim = 1;
    g.length = {L, 1.0};
    g.points = {N, 1};
    g.modes = {M, 1};
    g.validate();
    return g;
}

GridSpec GridSpec::rectangle(double Lx, double Ly, int Nx, int Ny, int Mx, int My) {
    GridSpec g;
    g.dim = 2;
    g.length = {Lx, Ly};
    g.points = {Nx, Ny};
    g.modes = {Mx, My};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    std::ostringstream os;
    bool bad = false;
    if (dim != 1 && dim != 2) { os << "dim must be 1 or 2; "; bad = true; }
    for (int d = 0; d < dim; ++d) {
        if (!(length[d] > 0.0)) { os << "length must be > 0; "; bad = true; }
        if (points[d] < 4) { os << "points per dimension must be >= 4; "; bad = true; }
        if (modes[d] < 1 || modes[d] > points[d]) {
            os << "mode cap must satisfy 1 <= M <= N; ";
            bad = true;
        }
    }
    if (dim == 1 && (points[1] != 1 || modes[1] != 1)) {
        os << "1-d grid must have trivial second dimension; ";
        bad = true;
    }
    if (bad) throw std::invalid_argument("GridSpec: " + os.str());
}

std::size_t GridSpec::point_count() const {
    return static_cast<std::size_t>(points[0]) * points[1];
}

std::size_t GridSpec::mode_count() const {
    return static_cast<std::size_t>(modes[0]) * modes[1];
}

double GridSpec::cell_weight() const {
    double w = length[0] / points[0];
    if (dim == 2) w *= length[1] / points[1];
    return w;
}

bool GridSpec::same_as(const GridSpec& o) const {
    return dim == o.dim && length == o.length && points == o.points && modes == o.modes;
}

NodalField::NodalField(const GridSpec& g) : grid(g), values(g.point_count(), 0.0) {}

NodalField::NodalField(const GridSpec& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != g.point_count())
        throw std::invalid_argument("NodalField: value count does not match grid");
}

ModalField::ModalField(const GridSpec& g, std::array<int, 2> m)
    : grid(g), modes(m),
      coeff(static_cast<std::size_t>(m[0]) * m[1], 0.0) {}

double neumann_eigenvalue_1d(int n, double L) {
    double w = n * M_PI / L;
    return w * w;
}

double neumann_eigenfunction_1d(int n, double L, double x) {
    if (n == 0) return 1.0 / std::sqrt(L);
    return std::sqrt(2.0 / L) * std::cos(n * M_PI * x / L);
}

double neumann_eigenvalue(const GridSpec& g, int m1, int m2) {
    double lam = neumann_eigenvalue_1d(m1, g.length[0]);
    if (g.dim == 2) lam += neumann_eigenvalue_1d(m2, g.length[1]);
    return lam;
}

std::vector<EigenPair> eigenpairs(const GridSpec& g) {
    g.validate();
    std::vector<EigenPair> out;
    out.reserve(g.mode_count());
    for (int m1 = 0; m1 < g.modes[0]; ++m1)
        for (int m2 = 0; m2 < g.modes[1]; ++m2)
            out.push_back({{m1, m2}, neumann_eigenvalue(g, m1, m2)});
    return out;
}

CosinePlan::CosinePlan(const GridSpec& g) : grid_(g) {
    g.validate();
    for (int d = 0; d < 2; ++d) {
        int N = g.points[d];
        double L = g.length[d];
        basis_[d].resize(static_cast<std::size_t>(N) * N);
        for (int n = 0; n < N; ++n) {
            for (int i = 0; i < N; ++i) {
                double x = L * (i + 0.5) / N;
                basis_[d][static_cast<std::size_t>(n) * N + i] =
                    neumann_eigenfunction_1d(n, L, x);
            }
        }
    }
}

ModalField CosinePlan::to_modal(const NodalField& f) const {
    return to_modal(f, grid_.modes);
}

ModalField CosinePlan::to_modal(const NodalField& f, std::array<int, 2> modes) const {
    if (!f.grid.same_as(grid_))
        throw std::invalid_argument("to_modal: field grid does not match plan");
    if (modes[0] > grid_.points[0] || modes[1] > grid_.points[1] || modes[0] < 1 || modes[1] < 1)
        throw std::invalid_argument("to_modal: mode budget exceeds grid resolution");
    const int N1 = grid_.points[0], N2 = grid_.points[1];
    const int M1 = modes[0], M2 = modes[1];
    const double w1 = grid_.length[0] / N1;
    const double w2 = (grid_.dim == 2) ? grid_.length[1] / N2 : 1.0;
    ModalField out(grid_, modes);

    // pass along dimension 2: tmp[i1][n2]
    std::vector<double> tmp(static_cast<std::size_t>(N1) * M2);
#pragma omp parallel for if (N1 * M2 > 4096)
    for (int i1 = 0; i1 < N1; ++i1) {
        for (int n2 = 0; n2 < M2; ++n2) {
            double acc = 0.0;
            const double* row = &f.values[static_cast<std::size_t>(i1) * N2];
            const double* b = &basis_[1][static_cast<std::size_t>(n2) * N2];
            for (int i2 = 0; i2 < N2; ++i2) acc += row[i2] * b[i2];
            tmp[static_cast<std::size_t>(i1) * M2 + n2] = acc * w2;
        }
    }
    // pass along dimension 1
#pragma omp parallel for if (M1 * M2 > 4096)
    for (int n1 = 0; n1 < M1; ++n1) {
        const double* b = &basis_[0][static_cast<std::size_t>(n1) * N1];
        for (int n2 = 0; n2 < M2; ++n2) {
            double acc = 0.0;
            for (int i1 = 0; i1 < N1; ++i1)
                acc += tmp[static_cast<std::size_t>(i1) * M2 + n2] * b[i1];
            out.coeff[static_cast<std::size_t>(n1) * M2 + n2] = acc * w1;
        }
    }
    return out;
}

NodalField CosinePlan::to_nodal(const ModalField& c) const {
    if (!c.grid.same_as(grid_))
        throw std::invalid_argument("to_nodal: field grid does not match plan");
    const int N1 = grid_.points[0], N2 = grid_.points[1];
    const int M1 = c.modes[0], M2 = c.modes[1];
    NodalField out(grid_);

    // pass along dimension 1: tmp[i1][n2]
    std::vector<double> tmp(static_cast<std::size_t>(N1) * M2, 0.0);
#pragma omp parallel for if (N1 * M2 > 4096)
    for (int i1 = 0; i1 < N1; ++i1) {
        for (int n2 = 0; n2 < M2; ++n2) {
            double acc = 0.0;
            for (int n1 = 0; n1 < M1; ++n1)
                acc += c.coeff[static_cast<std::size_t>(n1) * M2 + n2] *
                       basis_[0][static_cast<std::size_t>(n1) * N1 + i1];
            tmp[static_cast<std::size_t>(i1) * M2 + n2] = acc;
        }
    }
#pragma omp parallel for if (N1 * N2 > 4096)
    for (int i1 = 0; i1 < N1; ++i1) {
        for (int i2 = 0; i2 < N2; ++i2) {
            double acc = 0.0;
            for (int n2 = 0; n2 < M2; ++n2)
                acc += tmp[static_cast<std::size_t>(i1) * M2 + n2] *
                       basis_[1][static_cast<std::size_t>(n2) * N2 + i2];
            out.values[static_cast<std::size_t>(i1) * N2 + i2] = acc;
        }
    }
    return out;
}

ModalField to_modal(const NodalField& f) { return CosinePlan(f.grid).to_modal(f); }
NodalField to_nodal(const ModalField& c) { return CosinePlan(c.grid).to_nodal(c); }

ModalField frac_laplacian(const ModalField& c, double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0))
        throw std::domain_error("frac_laplacian: sigma must lie in (0,1]");
    ModalField out = c;
    const int M2 = c.modes[1];
    for (int n1 = 0; n1 < c.modes[0]; ++n1)
        for (int n2 = 0; n2 < M2; ++n2) {
            double lam = neumann_eigenvalue(c.grid, n1, n2);
            double f = (lam == 0.0) ? 0.0 : std::pow(lam, sigma);
            out.coeff[static_cast<std::size_t>(n1) * M2 + n2] *= f;
        }
    return out;
}

double s_alpha_factor(double lambda_sigma, double t, double alpha,
                      const SeriesControl& ctl) {
    if (t == 0.0) return 1.0;
    return mittag_leffler(alpha, 1.0, -lambda_sigma * std::pow(t, alpha), ctl);
}

double p_alpha_factor(double lambda_sigma, double t, double alpha,
                      const SeriesControl& ctl) {
    if (!(t > 0.0))
        throw std::domain_error("p_alpha_factor: t must be > 0 (t^{alpha-1} is singular)");
    return std::pow(t, alpha - 1.0) *
           mittag_leffler(alpha, alpha, -lambda_sigma * std::pow(t, alpha), ctl);
}

namespace {

ModalField apply_mode_factor(const ModalField& c, double t, double alpha, double sigma,
                             const SeriesControl& ctl, bool propagator_P) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("propagator: alpha must lie in (0,1)");
    if (!(sigma > 0.0 && sigma <= 1.0))
        throw std::domain_error("propagator: sigma must lie in (0,1]");
    ModalField out = c;
    const int M1 = c.modes[0], M2 = c.modes[1];
#pragma omp parallel for collapse(2) if (M1 * M2 > 256)
    for (int n1 = 0; n1 < M1; ++n1)
        for (int n2 = 0; n2 < M2; ++n2) {
            double lam = neumann_eigenvalue(c.grid, n1, n2);
            double ls = (lam == 0.0) ? 0.0 : std::pow(lam, sigma);
            double f = propagator_P ? p_alpha_factor(ls, t, alpha, ctl)
                                    : s_alpha_factor(ls, t, alpha, ctl);
            out.coeff[static_cast<std::size_t>(n1) * M2 + n2] *= f;
        }
    return out;
}

}  // namespace

ModalField apply_S_alpha(const ModalField& c, double t, double alpha, double sigma,
                         const SeriesControl& ctl) {
    if (!(t >= 0.0)) throw std::domain_error("apply_S_alpha: t must be >= 0");
    if (t == 0.0) return c;
    return apply_mode_factor(c, t, alpha, sigma, ctl, false);
}

ModalField apply_P_alpha(const ModalField& c, double t, double alpha, double sigma,
                         const SeriesControl& ctl) {
    if (!(t > 0.0)) throw std::domain_error("apply_P_alpha: t must be > 0");
    return apply_mode_factor(c, t, alpha, sigma, ctl, true);
}

double verify_subordination(double alpha, double lambda, double t,
                            const SeriesControl& ctl,
                            const std::function<double(double, double, double)>& eval_E) {
    if (!(lambda >= 0.0 && t >= 0.0))
        throw std::domain_error("verify_subordination: lambda, t must be >= 0");
    double x = lambda * std::pow(t, alpha);
    double tau_max = wright_tail_cutoff(alpha, 1e-9, 0);
    double quad = integrate_gk(
        [&](double tau) { return wright_phi(alpha, tau, ctl) * std::exp(-x * tau); },
        0.0, tau_max, 1e-11);
    double ref = eval_E ? eval_E(alpha, 1.0, -x) : mittag_leffler(alpha, 1.0, -x, ctl);
    return std::fabs(quad - ref);
}

double verify_subordination_P(double alpha, double lambda, double t,
                              const SeriesControl& ctl) {
    double x = lambda * std::pow(t, alpha);
    double tau_max = wright_tail_cutoff(alpha, 1e-9, 1);
    double quad = integrate_gk(
        [&](double tau) { return tau * wright_phi(alpha, tau, ctl) * std::exp(-x * tau); },
        0.0, tau_max, 1e-11);
    double ref = mittag_leffler(alpha, alpha, -x, ctl);
    return std::fabs(alpha * quad - ref);
}

double inner_l2(const NodalField& u, const NodalField& v) {
    if (!u.grid.same_as(v.grid)) throw std::invalid_argument("inner_l2: grids differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) acc += u.values[i] * v.values[i];
    return acc * u.grid.cell_weight();
}

double norm_l2(const NodalField& u) { return std::sqrt(inner_l2(u, u)); }

double norm_linf(const NodalField& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::fabs(v));
    return m;
}

double verify_stroock_varopoulos(const NodalField& u, double sigma, double p) {
    if (!(p > 1.0)) throw std::domain_error("verify_stroock_varopoulos: p must be > 1");
    double lo = 0.0;
    for (double v : u.values) lo = std::min(lo, v);
    if (lo < -1e-12)
        throw std::domain_error("verify_stroock_varopoulos: field has negative entries");

    const GridSpec& g = u.grid;
    CosinePlan plan(g);
    std::array<int, 2> full{g.points[0], g.points[1]};
    NodalField up(g), uhalf(g);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double v = std::max(u.values[i], 0.0);
        up.values[i] = std::pow(v, p - 1.0);
        uhalf.values[i] = std::pow(v, 0.5 * p);
    }
    ModalField cu = plan.to_modal(u, full);
    ModalField cup = plan.to_modal(up, full);
    ModalField cuh = plan.to_modal(uhalf, full);

    double lhs = 0.0, rhs = 0.0;
    const int M2 = full[1];
    for (int n1 = 0; n1 < full[0]; ++n1)
        for (int n2 = 0; n2 < M2; ++n2) {
            double lam = neumann_eigenvalue(g, n1, n2);
            double ls = (lam == 0.0) ? 0.0 : std::pow(lam, 0.5 * sigma);
            std::size_t idx = static_cast<std::size_t>(n1) * M2 + n2;
            lhs += ls * cup.coeff[idx] * cu.coeff[idx];
            rhs += ls * cuh.coeff[idx] * cuh.coeff[idx];
        }
    return lhs - (4.0 * (p - 1.0) / (p * p)) * rhs;
}

double verify_symmetry(const NodalField& u, const NodalField& v, double sigma) {
    if (!u.grid.same_as(v.grid)) throw std::invalid_argument("verify_symmetry: grids differ");
    CosinePlan plan(u.grid);
    NodalField Lu = plan.to_nodal(frac_laplacian(plan.to_modal(u), sigma));
    NodalField Lv = plan.to_nodal(frac_laplacian(plan.to_modal(v), sigma));
    return std::fabs(inner_l2(u, Lv) - inner_l2(v, Lu));
}

}  // namespace voltfrac
