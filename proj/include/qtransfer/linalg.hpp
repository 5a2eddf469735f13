// Dense complex matrix kernel: products, Kronecker products, unitary
// exponentials of Hermitian generators, and general complex eigenvalues.
// Sized for the small dense regime (dimensions up to a few hundred).
//
// Matrix products run through an OpenMP-parallel kernel above a size
// threshold; qtransfer::linalg::reference keeps the serial implementation
// for tests and benchmarks. Both kernels use the same summation order, so
// results are bitwise identical.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qtransfer {

// Default absolute tolerance for predicates and clamping.
inline constexpr double kDefaultTol = 1e-10;

namespace linalg {

using complexd = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::initializer_list<std::initializer_list<complexd>> rows);

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    complexd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const complexd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<complexd>& data() const { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conj() const;

    complexd trace() const;
    double max_abs() const;          // max entry modulus
    double frobenius_norm() const;
    double inf_norm() const;         // max absolute row sum

    bool is_hermitian(double tol = kDefaultTol) const;
    bool is_unitary(double tol = kDefaultTol) const;
    bool is_psd(double tol = kDefaultTol) const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(complexd s);

    friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
    friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
    friend CMatrix operator*(CMatrix lhs, complexd s) { return lhs *= s; }
    friend CMatrix operator*(complexd s, CMatrix rhs) { return rhs *= s; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complexd> data_;
};

// Matrix product (OpenMP-parallel over rows above a size threshold).
CMatrix operator*(const CMatrix& a, const CMatrix& b);

// Matrix-vector product.
std::vector<complexd> mul(const CMatrix& a, const std::vector<complexd>& x);

// Kronecker product, dims (ra*rb) x (ca*cb).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// U = exp(-i h t) for Hermitian h (angular-frequency units, hbar = 1).
// Scaling-and-squaring with a truncated series core; accuracy ~1e-12 for
// norm(h)*|t| <= 50. Throws NonHermitianInput if the check fails.
CMatrix expm_unitary(const CMatrix& h, double t, double tol = kDefaultTol);

// All eigenvalues (with multiplicity, unordered) of a general complex
// square matrix. Householder Hessenberg reduction followed by a shifted
// QR iteration with deflation. Throws ConvergenceFailure if an eigenvalue
// fails to deflate within the iteration budget.
std::vector<complexd> eigvals_general(const CMatrix& m);

namespace reference {
// Serial matrix product, kept as the reference kernel for tests and the
// benchmark. Same loop order as the parallel kernel.
CMatrix mul(const CMatrix& a, const CMatrix& b);
}  // namespace reference

}  // namespace linalg
}  // namespace qtransfer
