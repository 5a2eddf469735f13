#include "qtransfer/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qtransfer/errors.hpp"

namespace qtransfer::dynamics {

void JCParams::check() const {
    if (g_a < 0.0 || g_b < 0.0) {
        throw std::invalid_argument("JCParams: couplings must be >= 0 (phases belong in the basis convention)");
    }
}

double envelope(const DampingParams& p, double t) { return std::exp(-p.gamma * t); }

CMatrix jc_hamiltonian(double g, double delta) {
    return CMatrix{{complexd{delta, 0.0}, complexd{g, 0.0}},
                   {complexd{g, 0.0}, complexd{-delta, 0.0}}};
}

LocalPropagator jc_propagator(double g, double delta, double t) {
    const double omega = std::hypot(g, delta);
    CMatrix u = CMatrix::identity(2);
    if (omega > 0.0) {
        const double c = std::cos(omega * t);
        const double s = std::sin(omega * t) / omega;
        u(0, 0) = complexd{c, -delta * s};
        u(0, 1) = complexd{0.0, -g * s};
        u(1, 0) = complexd{0.0, -g * s};
        u(1, 1) = complexd{c, delta * s};
    }
    return {u, t};
}

LocalPropagator generic_propagator(const CMatrix& h_local, double t) {
    return {linalg::expm_unitary(h_local, t), t};
}

PsiSectorState evolve_psi(const PsiSectorState& s0, const LocalPropagator& ua,
                          const LocalPropagator& ub) {
    if (ua.dim() != s0.n_a() || ub.dim() != s0.n_b()) {
        throw DimensionMismatch("evolve_psi: propagator dimensions do not match the state");
    }
    PsiSectorState s;
    s.d_a = linalg::mul(ua.u, s0.d_a);
    s.d_b = linalg::mul(ub.u, s0.d_b);
    return s;
}

PhiSectorState evolve_phi(const PhiSectorState& s0, const LocalPropagator& ua,
                          const LocalPropagator& ub) {
    if (ua.dim() != s0.n_a() || ub.dim() != s0.n_b()) {
        throw DimensionMismatch("evolve_phi: propagator dimensions do not match the state");
    }
    return {ua.u * s0.c * ub.u.transpose(), s0.c0};
}

std::vector<double> apply_damping(std::span<const double> times,
                                  std::span<const double> series,
                                  const DampingParams& p) {
    if (times.size() != series.size()) {
        throw DimensionMismatch("apply_damping: time and value lengths differ");
    }
    if (p.gamma < 0.0) {
        throw std::invalid_argument("apply_damping: gamma must be >= 0");
    }
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        out[i] = series[i] * envelope(p, times[i]);
    }
    return out;
}

CMatrix load_hamiltonian(std::istream& in) {
    std::size_t n = 0;
    if (!(in >> n) || n < 1) {
        throw std::invalid_argument("hamiltonian file: first token must be the dimension N >= 1");
    }
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::string pair;
            if (!(in >> pair)) {
                throw std::invalid_argument("hamiltonian file: expected " + std::to_string(n * n) +
                                            " re,im entries");
            }
            const auto comma = pair.find(',');
            if (comma == std::string::npos) {
                throw std::invalid_argument("hamiltonian file: entry '" + pair +
                                            "' is not a re,im pair");
            }
            try {
                std::size_t used_re = 0;
                std::size_t used_im = 0;
                const std::string re_text = pair.substr(0, comma);
                const std::string im_text = pair.substr(comma + 1);
                const double re = std::stod(re_text, &used_re);
                const double im = std::stod(im_text, &used_im);
                if (used_re != re_text.size() || used_im != im_text.size()) {
                    throw std::invalid_argument("trailing characters");
                }
                h(i, j) = complexd{re, im};
            } catch (const std::exception&) {
                throw std::invalid_argument("hamiltonian file: entry '" + pair +
                                            "' is not a re,im pair");
            }
        }
    }
    if (!h.is_hermitian(1e-10)) {
        throw NonHermitianInput("hamiltonian file: matrix fails the Hermitian check at 1e-10");
    }
    return h;
}

}  // namespace qtransfer::dynamics
