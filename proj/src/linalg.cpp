#include "qtransfer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtransfer/errors.hpp"

namespace qtransfer::linalg {

namespace {
constexpr std::size_t kParallelElems = 64 * 64;  // below this, threading costs more than it saves

void mul_into(CMatrix& dest, const CMatrix& a, const CMatrix& b) {
    const auto n = static_cast<long long>(a.rows());
    const auto m = b.cols();
    const auto k_dim = a.cols();
#pragma omp parallel for if (a.rows() * m >= kParallelElems)
    for (long long i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            complexd acc{0.0, 0.0};
            for (std::size_t k = 0; k < k_dim; ++k) {
                acc += a(static_cast<std::size_t>(i), k) * b(k, j);
            }
            dest(static_cast<std::size_t>(i), j) = acc;
        }
    }
}
}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionMismatch("CMatrix: rows and cols must be >= 1");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<complexd>> rows)
    : CMatrix(rows.size(), rows.begin()->size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionMismatch("CMatrix: ragged initializer");
        }
        std::size_t j = 0;
        for (const auto& v : row) (*this)(i, j++) = v;
        ++i;
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conj() const {
    CMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = std::conj(data_[i]);
    return r;
}

complexd CMatrix::trace() const {
    complexd t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::inf_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) row += std::abs((*this)(i, j));
        m = std::max(m, row);
    }
    return m;
}

bool CMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

bool CMatrix::is_unitary(double tol) const {
    if (!is_square()) return false;
    const CMatrix g = adjoint() * (*this);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const complexd expect = (i == j) ? complexd{1.0, 0.0} : complexd{0.0, 0.0};
            if (std::abs(g(i, j) - expect) > tol) return false;
        }
    return true;
}

bool CMatrix::is_psd(double tol) const {
    if (!is_hermitian(tol)) return false;
    for (const auto& ev : eigvals_general(*this)) {
        if (std::abs(ev.imag()) > tol || ev.real() < -tol) return false;
    }
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw DimensionMismatch("CMatrix: size mismatch in +=");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw DimensionMismatch("CMatrix: size mismatch in -=");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(complexd s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("CMatrix: inner dimensions disagree in product");
    }
    CMatrix dest(a.rows(), b.cols());
    mul_into(dest, a, b);
    return dest;
}

std::vector<complexd> mul(const CMatrix& a, const std::vector<complexd>& x) {
    if (a.cols() != x.size()) {
        throw DimensionMismatch("CMatrix: vector length disagrees in product");
    }
    std::vector<complexd> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        complexd acc{0.0, 0.0};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const complexd av = a(i1, j1);
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    r(i1 * b.rows() + i2, j1 * b.cols() + j2) = av * b(i2, j2);
        }
    return r;
}

CMatrix expm_unitary(const CMatrix& h, double t, double tol) {
    if (!h.is_square()) {
        throw DimensionMismatch("expm_unitary: generator must be square");
    }
    if (!h.is_hermitian(tol)) {
        throw NonHermitianInput("expm_unitary: generator fails the Hermitian check");
    }
    const std::size_t n = h.rows();

    // Generator G = -i h t, scaled so the series converges in ~17 terms.
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = complexd{0.0, -1.0} * h(i, j) * t;

    int squarings = 0;
    const double norm = g.inf_norm();
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        const double scale = std::ldexp(1.0, -squarings);
        g *= scale;
    }

    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = term * g;
        term *= 1.0 / static_cast<double>(k);
        result += term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

namespace {

// Householder similarity reduction to upper Hessenberg form, in place.
void hessenberg_reduce(CMatrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    std::vector<complexd> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - (k + 1);  // length of the column tail
        double xnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = h(k + 1 + i, k);
            xnorm2 += std::norm(v[i]);
        }
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm <= std::numeric_limits<double>::min()) continue;
        const complexd x0 = v[0];
        const complexd phase =
            (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : complexd{1.0, 0.0};
        const complexd alpha = -phase * xnorm;
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 <= std::numeric_limits<double>::min()) continue;
        const double beta = 2.0 / vnorm2;

        // Rows k+1..n-1: H <- (I - beta v v^dag) H
        for (std::size_t j = k; j < n; ++j) {
            complexd s{0.0, 0.0};
            for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
            s *= beta;
            for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= s * v[i];
        }
        // Columns k+1..n-1: H <- H (I - beta v v^dag)
        for (std::size_t i = 0; i < n; ++i) {
            complexd s{0.0, 0.0};
            for (std::size_t j = 0; j < m; ++j) s += h(i, k + 1 + j) * v[j];
            s *= beta;
            for (std::size_t j = 0; j < m; ++j) h(i, k + 1 + j) -= s * std::conj(v[j]);
        }
    }
}

struct Givens {
    double c;
    complexd s;
};

// Rotation G = [[c, s], [-conj(s), c]] with c real such that G (x, y)^T = (r, 0)^T.
Givens make_givens(complexd x, complexd y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ay == 0.0) return {1.0, complexd{0.0, 0.0}};
    if (ax == 0.0) return {0.0, complexd{1.0, 0.0}};
    const double r = std::hypot(ax, ay);
    const complexd phase = x / ax;
    return {ax / r, phase * std::conj(y) / r};
}

// Eigenvalues of [[a, b], [c, d]].
std::pair<complexd, complexd> eig2x2(complexd a, complexd b, complexd c, complexd d) {
    const complexd m = 0.5 * (a + d);
    const complexd disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    complexd l1 = m + disc;
    complexd l2 = m - disc;
    // Recompute the smaller root from the determinant to avoid cancellation.
    const complexd det = a * d - b * c;
    if (std::abs(l1) > std::abs(l2)) {
        if (std::abs(l1) > 0.0) l2 = det / l1;
    } else if (std::abs(l2) > 0.0) {
        l1 = det / l2;
    }
    return {l1, l2};
}

// One explicit shifted QR sweep on the active Hessenberg block [lo, hi].
void qr_sweep(CMatrix& h, std::size_t lo, std::size_t hi, complexd mu) {
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;

    const std::size_t m = hi - lo + 1;
    std::vector<Givens> rot(m - 1);
    for (std::size_t k = lo; k < hi; ++k) {
        const Givens g = make_givens(h(k, k), h(k + 1, k));
        rot[k - lo] = g;
        for (std::size_t j = k; j <= hi; ++j) {
            const complexd t0 = h(k, j);
            const complexd t1 = h(k + 1, j);
            h(k, j) = g.c * t0 + g.s * t1;
            h(k + 1, j) = -std::conj(g.s) * t0 + g.c * t1;
        }
    }
    for (std::size_t k = lo; k < hi; ++k) {
        const Givens g = rot[k - lo];
        const std::size_t top = std::min(k + 1, hi);
        for (std::size_t i = lo; i <= top; ++i) {
            const complexd t0 = h(i, k);
            const complexd t1 = h(i, k + 1);
            h(i, k) = g.c * t0 + std::conj(g.s) * t1;
            h(i, k + 1) = -g.s * t0 + g.c * t1;
        }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
}

}  // namespace

std::vector<complexd> eigvals_general(const CMatrix& m) {
    if (!m.is_square()) {
        throw DimensionMismatch("eigvals_general: matrix must be square");
    }
    const std::size_t n = m.rows();
    std::vector<complexd> eigs(n);
    if (n == 1) {
        eigs[0] = m(0, 0);
        return eigs;
    }

    CMatrix h = m;
    hessenberg_reduce(h);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int iter_budget = 80;

    std::size_t hi = n - 1;
    int iter = 0;
    while (true) {
        if (hi == 0) {
            eigs[0] = h(0, 0);
            break;
        }
        // Deflate: find the start of the trailing irreducible block.
        std::size_t lo = hi;
        while (lo > 0) {
            double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (scale == 0.0) scale = h.frobenius_norm();
            if (std::abs(h(lo, lo - 1)) <= eps * scale) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eigs[hi] = h(hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (lo + 1 == hi) {
            auto [l1, l2] = eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            eigs[hi] = l1;
            eigs[lo] = l2;
            if (lo == 0) break;
            hi = lo - 1;
            iter = 0;
            continue;
        }
        if (++iter > iter_budget) {
            throw ConvergenceFailure("eigvals_general: QR iteration did not converge");
        }
        complexd mu;
        if (iter % 16 == 0) {
            // Exceptional shift to break symmetry-induced stalls.
            mu = h(hi, hi) + std::abs(h(hi, hi - 1)) * complexd{0.75, 0.0};
        } else {
            auto [l1, l2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            mu = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }
        qr_sweep(h, lo, hi, mu);
    }
    return eigs;
}

namespace reference {
CMatrix mul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("reference::mul: inner dimensions disagree");
    }
    CMatrix dest(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            complexd acc{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            dest(i, j) = acc;
        }
    }
    return dest;
}
}  // namespace reference

}  // namespace qtransfer::linalg
