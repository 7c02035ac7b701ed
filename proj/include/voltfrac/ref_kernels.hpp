#pragma once

#include "voltfrac/grid.hpp"
#include "voltfrac/model.hpp"
#include "voltfrac/time_mesh.hpp"

// Plain serial implementations of the hot kernels. They stay deliberately
// naive (direct loops, no tables, no threading) and serve as the reference
// the OpenMP paths are tested and benchmarked against.
namespace voltfrac::ref {

ModalField to_modal(const NodalField& f, std::array<int, 2> modes);
NodalField to_nodal(const ModalField& c);

SampledFn caputo_derivative(const SampledFn& f, double alpha);
SampledFn rl_integral_left(const SampledFn& f, double alpha);

NodalField convolve_history(const Trajectory& traj, const KernelSpec& k,
                            std::size_t t_index);

}  // namespace voltfrac::ref
