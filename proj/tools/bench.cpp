// Timing comparison between the serial reference kernels and the
// OpenMP-parallel paths: dense complex products, unitary exponentials of
// lifted register Hamiltonians, and a full scenario sweep.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qtransfer/dynamics.hpp"
#include "qtransfer/linalg.hpp"
#include "qtransfer/oracle.hpp"
#include "qtransfer/scenario.hpp"
#include "qtransfer/sector.hpp"

#include <sstream>

using namespace qtransfer;
using linalg::CMatrix;
using linalg::complexd;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CMatrix random_matrix(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = complexd{dist(rng), dist(rng)};
    return m;
}

template <typename F>
double time_best_of(int reps, F&& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled\n");
#endif

    std::mt19937 rng(7);
    std::printf("\n%-34s %12s %12s %8s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

    for (std::size_t n : {64u, 128u, 256u}) {
        const CMatrix a = random_matrix(n, rng);
        const CMatrix b = random_matrix(n, rng);
        CMatrix sink(n, n);
        const double t_serial =
            time_best_of(3, [&] { sink = linalg::reference::mul(a, b); });
        const double t_parallel = time_best_of(3, [&] { sink = a * b; });
        std::printf("%-25s n=%-7zu %12.6f %12.6f %8.2f\n", "complex matmul", n, t_serial,
                    t_parallel, t_serial / t_parallel);
    }

    {
        // Unitary exponential of a lifted 5-qubit site Hamiltonian (32x32
        // single-excitation block inside the register evolution).
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        const std::size_t site = 5;
        CMatrix h(site, site);
        for (std::size_t i = 0; i < site; ++i)
            for (std::size_t j = i; j < site; ++j) {
                const complexd v{dist(rng), i == j ? 0.0 : dist(rng)};
                h(i, j) = v;
                h(j, i) = std::conj(v);
            }
        const auto psi0 = std::get<sector::PsiSectorState>(
            sector::make_bell({sector::BellKind::psi, 0.7, 0.0, site, site}));
        const auto f0 = oracle::embed(psi0);
        const double t_evo =
            time_best_of(3, [&] { (void)oracle::evolve_full(f0, h, h, 3.0); });
        std::printf("%-25s n=%-7zu %12s %12.6f %8s\n", "register evolution", site * 2, "-",
                    t_evo, "-");
    }

    {
        scenario::ScenarioConfig cfg;
        cfg.state = sector::BellKind::psi;
        cfg.steps = 2000;
        cfg.oracle = true;
        std::ostringstream csv;
        std::ostringstream summary;
        const double t_sweep =
            time_best_of(1, [&] { (void)scenario::run(cfg, csv, summary); });
        std::printf("%-25s n=%-7zu %12s %12.6f %8s\n", "oracle sweep (rows)", cfg.steps, "-",
                    t_sweep, "-");
    }
    return 0;
}
