#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <utility>

namespace voltfrac {

// Adaptive Gauss-Kronrod (7,15) on a finite interval.
template <class F>
double integrate_gk(F&& f, double a, double b, double rel_tol = 1e-13,
                    int max_depth = 15) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, max_depth, rel_tol, &err);
}

}  // namespace voltfrac
