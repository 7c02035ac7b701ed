#include "voltfrac/time_mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace voltfrac {

TimeMesh TimeMesh::graded(double T, int N, double r) {
    if (!(T > 0.0)) throw std::invalid_argument("TimeMesh: horizon must be > 0");
    if (N < 2) throw std::invalid_argument("TimeMesh: need at least 2 intervals");
    if (!(r >= 1.0)) throw std::invalid_argument("TimeMesh: grading must be >= 1");
    TimeMesh m;
    m.horizon = T;
    m.intervals = N;
    m.grading = r;
    m.nodes.resize(N + 1);
    for (int k = 0; k <= N; ++k)
        m.nodes[k] = T * std::pow(static_cast<double>(k) / N, r);
    m.nodes[0] = 0.0;
    m.nodes[N] = T;
    return m;
}

bool TimeMesh::is_uniform(double rel_tol) const {
    double h = horizon / intervals;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
        if (std::fabs(step(j) - h) > rel_tol * horizon) return false;
    return true;
}

double default_grading(double alpha) {
    return std::min(4.0, (2.0 - alpha) / alpha);
}

SampledFn::SampledFn(std::shared_ptr<const TimeMesh> m)
    : mesh(std::move(m)), values(mesh->size(), 0.0) {}

SampledFn::SampledFn(std::shared_ptr<const TimeMesh> m, std::vector<double> v)
    : mesh(std::move(m)), values(std::move(v)) {
    if (values.size() != mesh->size())
        throw std::invalid_argument("SampledFn: values length must equal node count");
}

}  // namespace voltfrac
