// Timing comparison of the OpenMP kernels against the serial reference
// implementations. Not a correctness test; see tests/test_ref_parity.cpp.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "voltfrac/fracops.hpp"
#include "voltfrac/model.hpp"
#include "voltfrac/ref_kernels.hpp"
#include "voltfrac/spectral.hpp"

using namespace voltfrac;
namespace chrono = std::chrono;

template <class F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = chrono::steady_clock::now();
        f();
        auto t1 = chrono::steady_clock::now();
        best = std::min(best, chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N01(0.0, 1.0);

    {
        GridSpec g = GridSpec::interval(M_PI, 1024, 256);
        CosinePlan plan(g);
        NodalField f(g);
        for (auto& v : f.values) v = N01(rng);
        double t_omp = time_ms([&] { (void)plan.to_modal(f); });
        double t_ref = time_ms([&] { (void)ref::to_modal(f, g.modes); });
        std::printf("to_modal  N=1024 M=256 : omp %8.2f ms  serial %8.2f ms  (x%.1f)\n",
                    t_omp, t_ref, t_ref / t_omp);
        ModalField c = plan.to_modal(f);
        t_omp = time_ms([&] { (void)plan.to_nodal(c); });
        t_ref = time_ms([&] { (void)ref::to_nodal(c); });
        std::printf("to_nodal  N=1024 M=256 : omp %8.2f ms  serial %8.2f ms  (x%.1f)\n",
                    t_omp, t_ref, t_ref / t_omp);
    }
    {
        auto mesh = std::make_shared<TimeMesh>(TimeMesh::graded(1.0, 4096, 2.0));
        SampledFn f(mesh);
        for (auto& v : f.values) v = N01(rng);
        double t_omp = time_ms([&] { (void)caputo_derivative(f, 0.5); });
        double t_ref = time_ms([&] { (void)ref::caputo_derivative(f, 0.5); });
        std::printf("caputo_l1 K=4096       : omp %8.2f ms  serial %8.2f ms  (x%.1f)\n",
                    t_omp, t_ref, t_ref / t_omp);
        t_omp = time_ms([&] { (void)rl_integral_left(f, 0.5); });
        t_ref = time_ms([&] { (void)ref::rl_integral_left(f, 0.5); });
        std::printf("rl_left   K=4096       : omp %8.2f ms  serial %8.2f ms  (x%.1f)\n",
                    t_omp, t_ref, t_ref / t_omp);
    }
    {
        GridSpec g = GridSpec::interval(M_PI, 256, 64);
        Trajectory traj;
        traj.grid = g;
        for (int k = 0; k <= 512; ++k) {
            NodalField u(g);
            for (auto& v : u.values) v = 1.0 + 0.1 * N01(rng);
            traj.times.push_back(k / 512.0);
            traj.states.push_back(std::move(u));
        }
        KernelSpec kern = KernelSpec::gamma_order2(1.0);
        double t_omp = time_ms([&] { (void)convolve_history(traj, kern, 512); });
        double t_ref = time_ms([&] { (void)ref::convolve_history(traj, kern, 512); });
        std::printf("convolve  K=512 N=256  : omp %8.2f ms  serial %8.2f ms  (x%.1f)\n",
                    t_omp, t_ref, t_ref / t_omp);
    }
    return 0;
}
