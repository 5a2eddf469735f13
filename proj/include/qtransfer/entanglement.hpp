// Reduced two-qubit density matrices of sector states and concurrences:
// the general spin-flip eigenvalue formula, the X-state closed forms for
// each sector, and partition concurrences.
//
// All two-qubit density matrices use the basis order |11>, |10>, |01>,
// |00> (first slot = site-A qubit). Qubit indices are 1-based, matching
// the seeded-qubit convention of the sector module.

#pragma once

#include <set>

#include "qtransfer/linalg.hpp"
#include "qtransfer/sector.hpp"

namespace qtransfer::entanglement {

using linalg::CMatrix;
using sector::PhiSectorState;
using sector::PsiSectorState;

struct QubitPairIndex {
    std::size_t i = 1;  // site-A qubit, 1..N
    std::size_t j = 1;  // site-B qubit, 1..M
};

struct Partition {
    std::set<std::size_t> subset_a;  // nonempty, 1-based site-A indices
    std::set<std::size_t> subset_b;
};

// Reduced density matrix of the pair (a_i, b_j); X-form with the coherence
// in the middle block. Requires a normalized state.
CMatrix rho_pair_psi(const PsiSectorState& s, QubitPairIndex p);

// Reduced density matrix of the pair (a_i, b_j); X-form with the coherence
// between |11> and |00>.
CMatrix rho_pair_phi(const PhiSectorState& s, QubitPairIndex p);

// max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) over the descending
// eigenvalues of rho * rho_tilde, rho_tilde the spin-flipped matrix.
// Validates Hermiticity, unit trace and positivity at `tol` and clamps
// round-off negatives/imaginaries of the spectrum at the same tolerance.
double concurrence_wootters(const CMatrix& rho, double tol = kDefaultTol);

// Closed forms. Pair versions take 1-based indices and throw
// IndexOutOfRange; a pair whose amplitudes both vanish is separable vacuum
// and reports exactly 0.
double concurrence_pair_psi(const PsiSectorState& s, QubitPairIndex p);   // 2|d_Ai||d_Bj|
double concurrence_pair_phi(const PhiSectorState& s, QubitPairIndex p);

// 2 sqrt(sum_{i in S} |d_Ai|^2) sqrt(sum_{j in T} |d_Bj|^2); identically
// the Pythagorean sum of the member pair concurrences.
double concurrence_partition_psi(const PsiSectorState& s, const Partition& q);

// Concurrence between all of site A and the single qubit b_j (and the
// transposed variant). Valid only for product-form amplitude matrices;
// throws NonProductState when the rank-1 residual exceeds tol.
double concurrence_site_to_single_phi(const PhiSectorState& s, std::size_t j,
                                      double tol = kDefaultTol);
double concurrence_single_to_site_phi(const PhiSectorState& s, std::size_t i,
                                      double tol = kDefaultTol);

}  // namespace qtransfer::entanglement
