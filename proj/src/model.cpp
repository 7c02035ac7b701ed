#include "voltfrac/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "voltfrac/spectral.hpp"

namespace voltfrac {

KernelSpec KernelSpec::exponential(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("KernelSpec: gamma must be > 0");
    KernelSpec k;
    k.kind = Kind::Exponential;
    k.rate = gamma;
    return k;
}

KernelSpec KernelSpec::gamma_order2(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("KernelSpec: gamma must be > 0");
    KernelSpec k;
    k.kind = Kind::GammaOrder2;
    k.rate = gamma;
    return k;
}

KernelSpec KernelSpec::tabulated(std::vector<double> t, std::vector<double> v) {
    if (t.size() != v.size() || t.size() < 2)
        throw std::invalid_argument("KernelSpec: tabulated kernel needs >= 2 matching nodes");
    if (t.front() != 0.0)
        throw std::invalid_argument("KernelSpec: tabulated kernel must start at t = 0");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i] < t[i + 1]))
            throw std::invalid_argument("KernelSpec: tabulated nodes must be ascending");
    for (double x : v)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("KernelSpec: tabulated kernel must be nonnegative");
    // renormalize to unit mass on the support
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        mass += 0.5 * (t[i + 1] - t[i]) * (v[i] + v[i + 1]);
    if (!(mass > 0.0)) throw std::invalid_argument("KernelSpec: tabulated kernel has zero mass");
    for (double& x : v) x /= mass;
    KernelSpec k;
    k.kind = Kind::Tabulated;
    k.tab_t = std::move(t);
    k.tab_k = std::move(v);
    return k;
}

KernelSpec KernelSpec::tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("KernelSpec: cannot open " + path);
    std::vector<double> t, v;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a >> b))
            throw std::runtime_error("KernelSpec: parse error in " + path + " line " +
                                     std::to_string(lineno));
        t.push_back(a);
        v.push_back(b);
    }
    return tabulated(std::move(t), std::move(v));
}

double kernel_eval(const KernelSpec& k, double t) {
    if (!(t >= 0.0)) throw std::domain_error("kernel_eval: t must be >= 0");
    switch (k.kind) {
        case KernelSpec::Kind::Exponential:
            return k.rate * std::exp(-k.rate * t);
        case KernelSpec::Kind::GammaOrder2:
            return k.rate * k.rate * t * std::exp(-k.rate * t);
        case KernelSpec::Kind::Tabulated: {
            if (t > k.tab_t.back())
                throw std::out_of_range("kernel_eval: t past tabulated support");
            auto it = std::upper_bound(k.tab_t.begin(), k.tab_t.end(), t);
            if (it == k.tab_t.begin()) return k.tab_k.front();
            std::size_t j = static_cast<std::size_t>(it - k.tab_t.begin());
            if (j == k.tab_t.size()) return k.tab_k.back();
            double w = (t - k.tab_t[j - 1]) / (k.tab_t[j] - k.tab_t[j - 1]);
            return (1.0 - w) * k.tab_k[j - 1] + w * k.tab_k[j];
        }
    }
    throw std::logic_error("kernel_eval: bad kind");
}

void ModelParams::validate() const {
    std::ostringstream os;
    bool bad = false;
    if (!(alpha > 0.0 && alpha < 1.0)) { os << "alpha must lie in (0,1); "; bad = true; }
    if (!(sigma > 0.0 && sigma < 1.0)) { os << "sigma must lie in (0,1); "; bad = true; }
    if (!(a > 0.0)) { os << "a must be > 0; "; bad = true; }
    if (!(b > 0.0)) { os << "b must be > 0; "; bad = true; }
    if (bad) throw std::invalid_argument("ModelParams: " + os.str());
}

double ModelParams::equilibrium() const { return 1.0 / std::sqrt(b); }

double carrying_root(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("carrying_root: a, b must be > 0");
    return (a + std::sqrt(a * a + 4.0 * b)) / (2.0 * b);
}

EquilibriumReport equilibrium_report(double a, double b) {
    EquilibriumReport r;
    r.R = carrying_root(a, b);
    r.u_star = 1.0 / std::sqrt(b);
    r.satisfies_order = r.R >= r.u_star;
    return r;
}

namespace {

// Exact moments of gamma * exp(-gamma (T - s)) against a linear interpolant
// on [s0, s1], anchored at evaluation time T. m0 = int K; m1 = int (s - s0) K.
void exp_kernel_moments(double gamma, double T, double s0, double s1,
                        double& m0, double& m1) {
    double E0 = std::exp(-gamma * (T - s0));
    double E1 = std::exp(-gamma * (T - s1));
    m0 = E1 - E0;
    m1 = (s1 - s0) * E1 - m0 / gamma;
}

}  // namespace

NodalField convolve_history(const Trajectory& traj, const KernelSpec& k,
                            std::size_t t_index) {
    if (t_index >= traj.size())
        throw std::out_of_range("convolve_history: t_index outside trajectory");
    NodalField out(traj.grid);
    if (t_index == 0) return out;  // int_0^0 = 0
    const double T = traj.times[t_index];
    const std::size_t n = out.values.size();
    std::vector<double> w0(t_index), w1(t_index);
    for (std::size_t j = 0; j < t_index; ++j) {
        double s0 = traj.times[j], s1 = traj.times[j + 1], h = s1 - s0;
        if (k.kind == KernelSpec::Kind::Exponential) {
            double m0, m1;
            exp_kernel_moments(k.rate, T, s0, s1, m0, m1);
            w0[j] = m0 - m1 / h;
            w1[j] = m1 / h;
        } else {
            w0[j] = 0.5 * h * kernel_eval(k, T - s0);
            w1[j] = 0.5 * h * kernel_eval(k, T - s1);
        }
    }
#pragma omp parallel for if (n > 64)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < t_index; ++j)
            acc += w0[j] * traj.states[j].values[i] + w1[j] * traj.states[j + 1].values[i];
        out.values[i] = acc;
    }
    return out;
}

NodalField convolve_history_recursive(const Trajectory& traj, const KernelSpec& k,
                                      std::size_t t_index) {
    if (k.kind != KernelSpec::Kind::Exponential)
        throw std::invalid_argument(
            "convolve_history_recursive: only exponential kernels have the O(1) update");
    if (t_index >= traj.size())
        throw std::out_of_range("convolve_history_recursive: t_index outside trajectory");
    NodalField acc(traj.grid);
    const std::size_t n = acc.values.size();
    for (std::size_t step = 1; step <= t_index; ++step) {
        double h = traj.times[step] - traj.times[step - 1];
        double decay = std::exp(-k.rate * h);
        double m0 = 1.0 - decay;
        double m1 = h - m0 / k.rate;
        double w0 = m0 - m1 / h, w1 = m1 / h;
        const auto& u0 = traj.states[step - 1].values;
        const auto& u1 = traj.states[step].values;
        for (std::size_t i = 0; i < n; ++i)
            acc.values[i] = decay * acc.values[i] + w0 * u0[i] + w1 * u1[i];
    }
    return acc;
}

NodalField reaction(const NodalField& u, const NodalField& conv, double a, double b) {
    if (!u.grid.same_as(conv.grid))
        throw std::invalid_argument("reaction: grids differ");
    NodalField out(u.grid);
    const std::size_t n = u.values.size();
#pragma omp parallel for if (n > 8192)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        double v = u.values[i];
        out.values[i] = v * (1.0 + a * v - b * v * v) - a * v * conv.values[i];
    }
    return out;
}

double stationary_residual(const NodalField& phi, double sigma, double b) {
    CosinePlan plan(phi.grid);
    NodalField lap = plan.to_nodal(frac_laplacian(plan.to_modal(phi), sigma));
    NodalField r(phi.grid);
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        double v = phi.values[i];
        r.values[i] = lap.values[i] - v * (1.0 - b * v * v);
    }
    return norm_l2(r);
}

LinearSpectrum linear_spectrum(const GridSpec& grid, double sigma,
                               LinearizationExponent e) {
    grid.validate();
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("linear_spectrum: sigma must lie in (0,1)");
    double s = (e == LinearizationExponent::FullSigma) ? sigma : 0.5 * sigma;
    LinearSpectrum out;
    auto pairs = eigenpairs(grid);
    out.values.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        double lam = pairs[i].lambda;
        double ev = 1.0 - ((lam == 0.0) ? 0.0 : std::pow(lam, s));
        out.values.push_back(ev);
        if (ev > 0.0) out.unstable.push_back(i);
    }
    out.values[0] = 1.0;  // constant eigenfunction, exactly
    return out;
}

}  // namespace voltfrac
