#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace voltfrac {

// Interval [0,L] or rectangle [0,L1]x[0,L2] with midpoint collocation
// points x_i = L(i+1/2)/N and a cosine mode budget M per dimension.
struct GridSpec {
    int dim = 1;
    std::array<double, 2> length{1.0, 1.0};
    std::array<int, 2> points{64, 1};
    std::array<int, 2> modes{64, 1};

    static GridSpec interval(double L, int N, int M);
    static GridSpec rectangle(double Lx, double Ly, int Nx, int Ny, int Mx, int My);

    void validate() const;
    std::size_t point_count() const;
    std::size_t mode_count() const;
    double cell_weight() const;  // quadrature weight per grid point
    bool same_as(const GridSpec& o) const;
};

struct NodalField {
    GridSpec grid;
    std::vector<double> values;

    NodalField() = default;
    explicit NodalField(const GridSpec& g);
    NodalField(const GridSpec& g, std::vector<double> v);
};

struct ModalField {
    GridSpec grid;
    std::array<int, 2> modes{0, 1};  // retained modes per dimension
    std::vector<double> coeff;

    ModalField() = default;
    ModalField(const GridSpec& g, std::array<int, 2> m);
    std::size_t count() const { return coeff.size(); }
};

}  // namespace voltfrac
