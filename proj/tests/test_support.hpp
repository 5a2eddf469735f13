// Shared test-only helpers: brute-force oracles (kept independent of the
// library code paths they check) and deterministic random generators.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qtransfer/dynamics.hpp"
#include "qtransfer/linalg.hpp"
#include "qtransfer/sector.hpp"

namespace testsup {

using qtransfer::linalg::CMatrix;
using qtransfer::linalg::complexd;

// Determinant via LU with partial pivoting. Brute-force oracle for
// eigenvalue products and characteristic-polynomial residuals.
inline complexd det_lu(const CMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::vector<complexd>> a(n, std::vector<complexd>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);

    complexd det{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (std::abs(a[piv][k]) == 0.0) return {0.0, 0.0};
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const complexd f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

// Plain truncated Taylor series for exp(-i h t), no scaling or squaring.
// Independent oracle for expm_unitary on small-norm generators.
inline CMatrix expm_series_plain(const CMatrix& h, double t, int terms = 60) {
    const std::size_t n = h.rows();
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = complexd{0.0, -1.0} * h(i, j) * t;
    CMatrix sum = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= terms; ++k) {
        term = qtransfer::linalg::reference::mul(term, g);
        term *= 1.0 / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

struct Rng {
    std::mt19937 engine;
    explicit Rng(unsigned seed = 20240917u) : engine(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }
    complexd cunit() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    CMatrix matrix(std::size_t rows, std::size_t cols) {
        CMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = cunit();
        return m;
    }

    CMatrix hermitian(std::size_t n) {
        CMatrix a = matrix(n, n);
        CMatrix h(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        return h;
    }

    std::vector<complexd> cvector(std::size_t n) {
        std::vector<complexd> v(n);
        for (auto& x : v) x = cunit();
        return v;
    }
};

inline CMatrix pauli_y() {
    return CMatrix{{complexd{0.0, 0.0}, complexd{0.0, -1.0}},
                   {complexd{0.0, 1.0}, complexd{0.0, 0.0}}};
}

// Bell seed evolved with random Hermitian local Hamiltonians for a random
// time; stays normalized and (Phi) product-form by construction.
inline qtransfer::sector::PsiSectorState random_evolved_psi(std::size_t n, std::size_t m,
                                                            double alpha, Rng& rng,
                                                            double t_max = 5.0) {
    using namespace qtransfer;
    const auto seed = std::get<sector::PsiSectorState>(
        sector::make_bell({sector::BellKind::psi, alpha, rng.uniform(0.0, 6.28), n, m}));
    const auto ua = dynamics::generic_propagator(rng.hermitian(n), rng.uniform(0.0, t_max));
    const auto ub = dynamics::generic_propagator(rng.hermitian(m), rng.uniform(0.0, t_max));
    return dynamics::evolve_psi(seed, ua, ub);
}

inline qtransfer::sector::PhiSectorState random_evolved_phi(std::size_t n, std::size_t m,
                                                            double alpha, Rng& rng,
                                                            double t_max = 5.0) {
    using namespace qtransfer;
    const auto seed = std::get<sector::PhiSectorState>(
        sector::make_bell({sector::BellKind::phi, alpha, rng.uniform(0.0, 6.28), n, m}));
    const auto ua = dynamics::generic_propagator(rng.hermitian(n), rng.uniform(0.0, t_max));
    const auto ub = dynamics::generic_propagator(rng.hermitian(m), rng.uniform(0.0, t_max));
    return dynamics::evolve_phi(seed, ua, ub);
}

}  // namespace testsup
