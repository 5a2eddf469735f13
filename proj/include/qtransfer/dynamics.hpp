// Local single-excitation propagators and their action on sector states.
//
// Propagators are unitaries on one site's single-excitation subspace
// (basis: excitation on qubit 1, 2, ..., N). The Jaynes-Cummings model is
// provided in closed form in the interaction picture at the mean frequency,
// which is pinned to equal exp(-i h t) for the restricted Hamiltonian
// h = [[delta, g], [g, -delta]]; arbitrary Hermitian local Hamiltonians go
// through the matrix exponential. Damping enters only as the multiplicative
// envelope exp(-gamma t) on concurrence series, never as amplitude decay.

#pragma once

#include <istream>
#include <span>
#include <vector>

#include "qtransfer/linalg.hpp"
#include "qtransfer/sector.hpp"

namespace qtransfer::dynamics {

using linalg::CMatrix;
using linalg::complexd;
using sector::PhiSectorState;
using sector::PsiSectorState;

struct JCParams {
    double g_a = 1.0;      // atom-cavity couplings, angular-frequency units, >= 0
    double g_b = 1.0;
    double delta_a = 0.0;  // detunings (omega_0 - omega_cav)/2
    double delta_b = 0.0;

    void check() const;  // throws std::invalid_argument on negative couplings
};

struct LocalPropagator {
    CMatrix u;      // N x N unitary
    double t = 0.0;

    std::size_t dim() const { return u.rows(); }
};

// Concurrence damping envelope for coupling to zero-temperature reservoirs
// with equal cavity and atomic rates gamma; kappa is the decay rate of the
// global concurrence reference and defaults to gamma.
struct DampingParams {
    double gamma = 0.0;
    double kappa = 0.0;

    DampingParams() = default;
    explicit DampingParams(double gamma_rate) : gamma(gamma_rate), kappa(gamma_rate) {}
    DampingParams(double gamma_rate, double kappa_rate) : gamma(gamma_rate), kappa(kappa_rate) {}
};

double envelope(const DampingParams& p, double t);  // exp(-gamma t)

// Restricted Jaynes-Cummings Hamiltonian on (atom-excited, cavity-excited).
CMatrix jc_hamiltonian(double g, double delta);

// Closed-form 2x2 JC propagator; generalized Rabi frequency
// Omega = sqrt(delta^2 + g^2). g = delta = 0 degenerates to the identity.
// Negative t yields the inverse propagator.
LocalPropagator jc_propagator(double g, double delta, double t);

// exp(-i h_local t) for any Hermitian h_local on the single-excitation
// subspace. Throws NonHermitianInput.
LocalPropagator generic_propagator(const CMatrix& h_local, double t);

// d_a(t) = U_A d_a(0), d_b(t) = U_B d_b(0). Throws DimensionMismatch.
PsiSectorState evolve_psi(const PsiSectorState& s0, const LocalPropagator& ua,
                          const LocalPropagator& ub);

// c(t) = U_A c(0) U_B^T (amplitudes transform covariantly on each index);
// c0 is unchanged. Throws DimensionMismatch.
PhiSectorState evolve_phi(const PhiSectorState& s0, const LocalPropagator& ua,
                          const LocalPropagator& ub);

// Pointwise damped copy of a concurrence series sampled at `times`.
std::vector<double> apply_damping(std::span<const double> times,
                                  std::span<const double> series,
                                  const DampingParams& p);

// Custom local Hamiltonian file: first line N, then N rows of N "re,im"
// pairs separated by whitespace. Must pass the Hermitian check at 1e-10.
CMatrix load_hamiltonian(std::istream& in);

}  // namespace qtransfer::dynamics
