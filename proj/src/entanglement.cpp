#include "qtransfer/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "qtransfer/errors.hpp"

namespace qtransfer::entanglement {

using linalg::complexd;

namespace {

void check_pair(std::size_t n_a, std::size_t n_b, QubitPairIndex p) {
    if (p.i < 1 || p.i > n_a || p.j < 1 || p.j > n_b) {
        throw IndexOutOfRange("qubit pair index outside the register");
    }
}

void check_subset(const std::set<std::size_t>& subset, std::size_t n, const char* side) {
    if (subset.empty()) {
        throw EmptyPartition(std::string("partition subset for site ") + side + " is empty");
    }
    for (std::size_t idx : subset) {
        if (idx < 1 || idx > n) {
            throw IndexOutOfRange(std::string("partition index outside site ") + side);
        }
    }
}

// sigma_y (x) sigma_y; numerically identical in the |11>..|00> ordering.
const CMatrix& spin_flip() {
    static const CMatrix flip = [] {
        const CMatrix sy{{complexd{0.0, 0.0}, complexd{0.0, -1.0}},
                         {complexd{0.0, 1.0}, complexd{0.0, 0.0}}};
        return linalg::kron(sy, sy);
    }();
    return flip;
}

}  // namespace

CMatrix rho_pair_psi(const PsiSectorState& s, QubitPairIndex p) {
    check_pair(s.n_a(), s.n_b(), p);
    const complexd da = s.d_a[p.i - 1];
    const complexd db = s.d_b[p.j - 1];
    CMatrix rho(4, 4);
    rho(1, 1) = std::norm(da);
    rho(1, 2) = da * std::conj(db);
    rho(2, 1) = std::conj(da) * db;
    rho(2, 2) = std::norm(db);
    rho(3, 3) = 1.0 - std::norm(da) - std::norm(db);
    return rho;
}

CMatrix rho_pair_phi(const PhiSectorState& s, QubitPairIndex p) {
    check_pair(s.n_a(), s.n_b(), p);
    const std::size_t i0 = p.i - 1;
    const std::size_t j0 = p.j - 1;
    double row_rest = 0.0;  // excitation on a_i paired with some b != b_j
    for (std::size_t n = 0; n < s.n_b(); ++n)
        if (n != j0) row_rest += std::norm(s.c(i0, n));
    double col_rest = 0.0;
    for (std::size_t m = 0; m < s.n_a(); ++m)
        if (m != i0) col_rest += std::norm(s.c(m, j0));
    double rest = std::norm(s.c0);
    for (std::size_t m = 0; m < s.n_a(); ++m)
        for (std::size_t n = 0; n < s.n_b(); ++n)
            if (m != i0 && n != j0) rest += std::norm(s.c(m, n));

    CMatrix rho(4, 4);
    rho(0, 0) = std::norm(s.c(i0, j0));
    rho(0, 3) = s.c(i0, j0) * std::conj(s.c0);
    rho(3, 0) = std::conj(s.c(i0, j0)) * s.c0;
    rho(1, 1) = row_rest;
    rho(2, 2) = col_rest;
    rho(3, 3) = rest;
    return rho;
}

double concurrence_wootters(const CMatrix& rho, double tol) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw InvalidDensityMatrix("concurrence_wootters: expected a 4x4 matrix");
    }
    if (!rho.is_hermitian(tol)) {
        throw InvalidDensityMatrix("concurrence_wootters: matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - complexd{1.0, 0.0}) > tol) {
        throw InvalidDensityMatrix("concurrence_wootters: trace differs from 1");
    }
    if (!rho.is_psd(tol)) {
        throw InvalidDensityMatrix("concurrence_wootters: matrix is not positive semidefinite");
    }

    // sqrt(lambda_i) of rho * rho_tilde, evaluated through a rank-revealing
    // factorization rho = S S^dag: the roots are the singular values of
    // K = S^T (sigma_y x sigma_y) S. Eigenvalues of the tiny product matrix
    // near zero carry O(eps) noise whose square root would swamp 1e-10
    // tolerances; the singular values carry only O(eps) absolute error.
    //
    // Diagonal-pivoted outer-product Cholesky; exact-zero directions of a
    // rank-deficient rho terminate the factorization instead of polluting K.
    CMatrix a = rho;
    std::vector<std::array<complexd, 4>> cols;
    constexpr double factor_floor = 1e-14;
    for (int step = 0; step < 4; ++step) {
        std::size_t pivot = 0;
        double best = a(0, 0).real();
        for (std::size_t i = 1; i < 4; ++i) {
            if (a(i, i).real() > best) {
                best = a(i, i).real();
                pivot = i;
            }
        }
        if (best <= factor_floor) break;
        const double root = std::sqrt(best);
        std::array<complexd, 4> v{};
        for (std::size_t i = 0; i < 4; ++i) v[i] = a(i, pivot) / root;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) a(i, j) -= v[i] * std::conj(v[j]);
        cols.push_back(v);
    }
    const std::size_t rank = cols.size();
    if (rank == 0) {
        throw InvalidDensityMatrix("concurrence_wootters: matrix is numerically zero");
    }

    const CMatrix& flip = spin_flip();
    CMatrix k_mat(rank, rank);
    for (std::size_t p = 0; p < rank; ++p)
        for (std::size_t q = 0; q < rank; ++q) {
            complexd acc{0.0, 0.0};
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) acc += cols[p][i] * flip(i, j) * cols[q][j];
            k_mat(p, q) = acc;
        }

    // Singular values of K through the Hermitian embedding [[0, K], [K^dag, 0]],
    // whose spectrum is {+s_i, -s_i}.
    CMatrix embed(2 * rank, 2 * rank);
    for (std::size_t p = 0; p < rank; ++p)
        for (std::size_t q = 0; q < rank; ++q) {
            embed(p, rank + q) = k_mat(p, q);
            embed(rank + q, p) = std::conj(k_mat(p, q));
        }
    std::vector<double> sv;
    for (const auto& ev : linalg::eigvals_general(embed)) {
        if (std::abs(ev.imag()) > tol) {
            throw InvalidDensityMatrix("concurrence_wootters: spin-flip spectrum outside tolerance");
        }
        sv.push_back(std::abs(ev.real()));
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());

    // Exact-zero roots already come out at O(eps) through this route, so no
    // spectrum clamping is needed; only the final difference is clamped.
    double roots[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < rank; ++i) {
        roots[i] = sv[2 * i];  // each singular value appears as a +/- pair
    }
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double concurrence_pair_psi(const PsiSectorState& s, QubitPairIndex p) {
    check_pair(s.n_a(), s.n_b(), p);
    return 2.0 * std::abs(s.d_a[p.i - 1]) * std::abs(s.d_b[p.j - 1]);
}

double concurrence_pair_phi(const PhiSectorState& s, QubitPairIndex p) {
    check_pair(s.n_a(), s.n_b(), p);
    const std::size_t i0 = p.i - 1;
    const std::size_t j0 = p.j - 1;
    double row_rest = 0.0;
    for (std::size_t n = 0; n < s.n_b(); ++n)
        if (n != j0) row_rest += std::norm(s.c(i0, n));
    double col_rest = 0.0;
    for (std::size_t m = 0; m < s.n_a(); ++m)
        if (m != i0) col_rest += std::norm(s.c(m, j0));
    const double val =
        2.0 * (std::abs(s.c(i0, j0)) * std::abs(s.c0) - std::sqrt(row_rest * col_rest));
    return std::max(0.0, val);
}

double concurrence_partition_psi(const PsiSectorState& s, const Partition& q) {
    check_subset(q.subset_a, s.n_a(), "A");
    check_subset(q.subset_b, s.n_b(), "B");
    double wa = 0.0;
    for (std::size_t i : q.subset_a) wa += std::norm(s.d_a[i - 1]);
    double wb = 0.0;
    for (std::size_t j : q.subset_b) wb += std::norm(s.d_b[j - 1]);
    return 2.0 * std::sqrt(wa) * std::sqrt(wb);
}

double concurrence_site_to_single_phi(const PhiSectorState& s, std::size_t j, double tol) {
    check_pair(s.n_a(), s.n_b(), {1, j});
    if (s.rank_one_residual() > tol) {
        throw NonProductState("closed form requires product-form amplitudes; use the brute-force path");
    }
    double col = 0.0;
    for (std::size_t m = 0; m < s.n_a(); ++m) col += std::norm(s.c(m, j - 1));
    return 2.0 * std::abs(s.c0) * std::sqrt(col);
}

double concurrence_single_to_site_phi(const PhiSectorState& s, std::size_t i, double tol) {
    check_pair(s.n_a(), s.n_b(), {i, 1});
    if (s.rank_one_residual() > tol) {
        throw NonProductState("closed form requires product-form amplitudes; use the brute-force path");
    }
    double row = 0.0;
    for (std::size_t n = 0; n < s.n_b(); ++n) row += std::norm(s.c(i - 1, n));
    return 2.0 * std::abs(s.c0) * std::sqrt(row);
}

}  // namespace qtransfer::entanglement
