// Conservation-rule evaluators for entanglement transfer.
//
// For a Psi seed the sum of squared pairwise concurrences (SSPC) equals
// the squared global concurrence at all times; for a Phi seed it is only
// bounded above by it and can vanish entirely. The one-sided sums over
// site-to-single-qubit concurrences are conserved for both seeds.

#pragma once

#include <span>
#include <string>

#include "qtransfer/sector.hpp"

namespace qtransfer::rules {

using sector::PhiSectorState;
using sector::PsiSectorState;
using sector::SectorState;

struct RuleReport {
    std::string rule_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // >= 0; |lhs-rhs| for equalities, max(0, lhs-rhs) for bounds
    bool pass = false;      // residual <= tol
    double tol = kDefaultTol;
    double time = 0.0;      // time stamp of the evaluated state
};

RuleReport equality_rule(std::string rule_id, double lhs, double rhs, double tol,
                         double time = 0.0);
RuleReport upper_bound_rule(std::string rule_id, double lhs, double rhs, double tol,
                            double time = 0.0);

// Sum of squared pairwise nonlocal concurrences, from the sector closed forms.
double sspc(const PsiSectorState& s);
double sspc(const PhiSectorState& s);
double sspc(const SectorState& s);

// SSPC == C_AB^2 (equality, Psi sector only).
RuleReport check_sspc_conservation(const PsiSectorState& s, double tol = kDefaultTol, double time = 0.0);
RuleReport check_sspc_conservation(const SectorState& s, double tol = kDefaultTol, double time = 0.0);

// 0 <= SSPC <= C_AB^2 (bound, Phi sector only).
RuleReport check_sspc_bound(const PhiSectorState& s, double tol = kDefaultTol, double time = 0.0);
RuleReport check_sspc_bound(const SectorState& s, double tol = kDefaultTol, double time = 0.0);

// sum_J C_{A,bJ}^2 == C_AB^2 for either sector (Phi requires product form).
RuleReport check_one_sided_sum(const PsiSectorState& s, double tol = kDefaultTol,
                               double time = 0.0);
RuleReport check_one_sided_sum(const PhiSectorState& s, double tol = kDefaultTol,
                               double time = 0.0);
RuleReport check_one_sided_sum(const SectorState& s, double tol = kDefaultTol,
                               double time = 0.0);

// sum_k parts[k]^2 <= cab^2 for any three-or-more-party split.
RuleReport check_ckw(double cab, std::span<const double> parts, double tol = kDefaultTol,
                     double time = 0.0);

// C_11 + C_22 linear sum. A diagnostic only: it matches C_AB for symmetric
// couplings but is not a universal rule. Requires N = M = 2.
double yonac_sum(const PsiSectorState& s);

// Residual tripartite entanglement C_{AiB}^2 - C_{Ai,b1}^2 - C_{Ai,b2}^2
// for the triple (a_i, b_1, b_2). Requires N = M = 2 and product form.
double three_tangle_phi(const PhiSectorState& s, std::size_t i, double tol = kDefaultTol);

std::string rule_csv_header();
std::string to_csv_row(const RuleReport& r);

}  // namespace qtransfer::rules
