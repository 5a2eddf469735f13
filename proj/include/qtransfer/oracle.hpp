// Brute-force verification path, independent of the sector closed forms:
// embed a sector state into the full 2^(n_a+n_b) register, evolve it with
// lifted local Hamiltonians through the matrix exponential, partial-trace
// to qubit pairs or collapsed partitions, and measure entanglement only
// through the general spin-flip formula.
//
// Register convention: basis strings a_1 ... a_Na b_1 ... b_Nb with a_1 the
// most significant bit. Register position p in [0, n_a+n_b) counts from
// a_1; site-B qubit j sits at position n_a + j - 1. The register is capped
// at 12 qubits (4096 amplitudes), ample for desk-scale verification.

#pragma once

#include <span>

#include "qtransfer/entanglement.hpp"
#include "qtransfer/linalg.hpp"
#include "qtransfer/sector.hpp"

namespace qtransfer::oracle {

using entanglement::Partition;
using linalg::CMatrix;
using linalg::complexd;
using sector::PhiSectorState;
using sector::PsiSectorState;
using sector::SectorState;

inline constexpr std::size_t kMaxRegisterQubits = 12;

struct FullState {
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    std::vector<complexd> amp;  // length 2^(n_a+n_b)

    std::size_t n_qubits() const { return n_a + n_b; }
    double norm() const;
};

FullState embed(const PsiSectorState& s);
FullState embed(const PhiSectorState& s);
FullState embed(const SectorState& s);

// Read the sector amplitudes back out of the register (inverse of embed on
// in-sector states; off-sector amplitudes are ignored).
PsiSectorState extract_psi(const FullState& s);
PhiSectorState extract_phi(const FullState& s);

// Full unitary evolution exp(-i(H_A + H_B)t). h_a/h_b are the Hermitian
// single-excitation-subspace Hamiltonians (n_a x n_a and n_b x n_b); they
// are lifted to the register with zero energy on the weight-0 subspace and
// identity action on the unreachable weight >= 2 region.
FullState evolve_full(const FullState& s, const CMatrix& h_a, const CMatrix& h_b, double t);

// Reduced density matrix on the kept register positions (order as given,
// at most 4). Basis index 0 is the all-excited kept configuration, so a
// pair (a_i, b_j) comes out in the |11>,|10>,|01>,|00> order used
// throughout. Throws TooManyKept.
CMatrix partial_trace(const FullState& s, std::span<const std::size_t> keep);

// Effective two-qubit density matrix of a partition: each subset's support
// is mapped onto an effective qubit (weight-0 -> |0>, the normalized
// weight-1 component -> |1>) and the complement is traced out. A subset
// with no excitation anywhere maps to a rank-deficient but valid matrix.
// Throws WeightOverflow if an amplitude carries two excitations inside one
// subset (impossible for states produced by this library).
CMatrix partition_collapse(const FullState& s, const Partition& q);

std::size_t register_pos_a(std::size_t i);                      // 1-based a_i -> position
std::size_t register_pos_b(const FullState& s, std::size_t j);  // 1-based b_j -> position

}  // namespace qtransfer::oracle
