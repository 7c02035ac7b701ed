#pragma once

#include <memory>
#include <vector>

namespace voltfrac {

// Time nodes t_k = T (k/N)^r, k = 0..N. r = 1 is uniform; r > 1 clusters
// nodes near t = 0 where fractional dynamics have their weak singularity.
struct TimeMesh {
    double horizon = 1.0;
    int intervals = 1;
    double grading = 1.0;
    std::vector<double> nodes;

    static TimeMesh uniform(double T, int N) { return graded(T, N, 1.0); }
    static TimeMesh graded(double T, int N, double r);

    std::size_t size() const { return nodes.size(); }
    double step(std::size_t j) const { return nodes[j + 1] - nodes[j]; }
    bool is_uniform(double rel_tol = 1e-12) const;
};

// Default grading exponent (2-alpha)/alpha, capped at 4.
double default_grading(double alpha);

struct SampledFn {
    std::shared_ptr<const TimeMesh> mesh;
    std::vector<double> values;

    SampledFn() = default;
    explicit SampledFn(std::shared_ptr<const TimeMesh> m);
    SampledFn(std::shared_ptr<const TimeMesh> m, std::vector<double> v);

    template <class F>
    static SampledFn sample(std::shared_ptr<const TimeMesh> m, F&& f) {
        SampledFn s(m);
        for (std::size_t k = 0; k < m->size(); ++k) s.values[k] = f(m->nodes[k]);
        return s;
    }
};

}  // namespace voltfrac
