// Qubit-conserving sector states for the two Bell seeds.
//
// A Psi seed (anti-correlated bits) evolves inside the one-excitation
// sector: amplitude d_a[i] for the excitation on site-A qubit i+1, d_b[j]
// for site-B qubit j+1. A Phi seed (correlated bits) evolves inside the
// {two-excitation + vacuum} sector: amplitude c(i,j) for excitations on
// qubits a_{i+1} and b_{j+1} plus the vacuum amplitude c0.
//
// Index 1 is always the initially seeded qubit on each site. All values
// are immutable after construction and safe to move across threads.

#pragma once

#include <iosfwd>
#include <variant>
#include <vector>

#include "qtransfer/linalg.hpp"

namespace qtransfer::sector {

using linalg::CMatrix;
using linalg::complexd;

enum class BellKind { psi, phi };

struct BellParams {
    BellKind kind = BellKind::psi;
    double alpha = 0.0;  // radians, in [0, pi/2]; sign conventions absorbed into beta
    double beta = 0.0;   // relative phase, radians
    std::size_t n_a = 2;
    std::size_t n_b = 2;

    double global_concurrence() const;  // 2 sin(alpha) cos(alpha)
    void check() const;                 // throws std::invalid_argument on violation
};

struct PsiSectorState {
    std::vector<complexd> d_a;
    std::vector<complexd> d_b;

    std::size_t n_a() const { return d_a.size(); }
    std::size_t n_b() const { return d_b.size(); }

    double site_a_weight() const;  // sum |d_a|^2, constant under evolution
    double site_b_weight() const;
    double global_concurrence() const;  // 2 sqrt(wa) sqrt(wb)
};

struct PhiSectorState {
    CMatrix c;    // n_a x n_b double-excitation amplitudes
    complexd c0;  // vacuum amplitude, constant modulus under evolution

    std::size_t n_a() const { return c.rows(); }
    std::size_t n_b() const { return c.cols(); }

    double excited_weight() const;  // sum |c|^2, constant under evolution
    double global_concurrence() const;  // 2 |c0| sqrt(excited_weight)

    // Largest normalized 2x2 minor of c; ~1e-15 for product-form states,
    // O(1) for genuinely rank-2 amplitude matrices. Zero matrix reports 0.
    double rank_one_residual() const;
};

using SectorState = std::variant<PsiSectorState, PhiSectorState>;

SectorState make_bell(const BellParams& params);

struct ValidationReport {
    double norm_residual = 0.0;      // | total probability - 1 |
    double rank_one_residual = 0.0;  // Phi only, 0 for Psi
    bool product_form = true;        // rank_one_residual <= tol
    bool pass = true;                // norm_residual <= tol
};

ValidationReport validate(const PsiSectorState& s, double tol = kDefaultTol);
ValidationReport validate(const PhiSectorState& s, double tol = kDefaultTol);
ValidationReport validate(const SectorState& s, double tol = kDefaultTol);

// Plain-text serialization: one "re im" line per amplitude, full round-trip
// precision. Psi: d_a then d_b. Phi: c row-major then c0.
void write_state(std::ostream& out, const SectorState& s);

}  // namespace qtransfer::sector
