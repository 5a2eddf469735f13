#include "qtransfer/rules.hpp"

#include <charconv>
#include <cmath>

#include "qtransfer/entanglement.hpp"
#include "qtransfer/errors.hpp"

namespace qtransfer::rules {

namespace ent = qtransfer::entanglement;

namespace {
std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}
}  // namespace

RuleReport equality_rule(std::string rule_id, double lhs, double rhs, double tol, double time) {
    RuleReport r;
    r.rule_id = std::move(rule_id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::abs(lhs - rhs);
    r.tol = tol;
    r.pass = r.residual <= tol;
    r.time = time;
    return r;
}

RuleReport upper_bound_rule(std::string rule_id, double lhs, double rhs, double tol, double time) {
    RuleReport r;
    r.rule_id = std::move(rule_id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::max(0.0, lhs - rhs);
    r.tol = tol;
    r.pass = r.residual <= tol;
    r.time = time;
    return r;
}

double sspc(const PsiSectorState& s) {
    double total = 0.0;
    for (std::size_t i = 1; i <= s.n_a(); ++i)
        for (std::size_t j = 1; j <= s.n_b(); ++j) {
            const double c = ent::concurrence_pair_psi(s, {i, j});
            total += c * c;
        }
    return total;
}

double sspc(const PhiSectorState& s) {
    double total = 0.0;
    for (std::size_t i = 1; i <= s.n_a(); ++i)
        for (std::size_t j = 1; j <= s.n_b(); ++j) {
            const double c = ent::concurrence_pair_phi(s, {i, j});
            total += c * c;
        }
    return total;
}

double sspc(const SectorState& s) {
    return std::visit([](const auto& state) { return sspc(state); }, s);
}

RuleReport check_sspc_conservation(const PsiSectorState& s, double tol, double time) {
    const double cab = s.global_concurrence();
    return equality_rule("sspc_conservation", sspc(s), cab * cab, tol, time);
}

RuleReport check_sspc_conservation(const SectorState& s, double tol, double time) {
    if (const auto* psi = std::get_if<PsiSectorState>(&s)) {
        return check_sspc_conservation(*psi, tol, time);
    }
    throw WrongSector("check_sspc_conservation: the SSPC equality holds for the Psi sector only");
}

RuleReport check_sspc_bound(const PhiSectorState& s, double tol, double time) {
    const double cab = s.global_concurrence();
    return upper_bound_rule("sspc_bound", sspc(s), cab * cab, tol, time);
}

RuleReport check_sspc_bound(const SectorState& s, double tol, double time) {
    if (const auto* phi = std::get_if<PhiSectorState>(&s)) {
        return check_sspc_bound(*phi, tol, time);
    }
    throw WrongSector("check_sspc_bound: the SSPC bound applies to the Phi sector only");
}

RuleReport check_one_sided_sum(const PsiSectorState& s, double tol, double time) {
    ent::Partition full_a;
    for (std::size_t i = 1; i <= s.n_a(); ++i) full_a.subset_a.insert(i);
    double sum = 0.0;
    for (std::size_t j = 1; j <= s.n_b(); ++j) {
        ent::Partition q = full_a;
        q.subset_b = {j};
        const double c = ent::concurrence_partition_psi(s, q);
        sum += c * c;
    }
    const double cab = s.global_concurrence();
    return equality_rule("one_sided_sum", sum, cab * cab, tol, time);
}

RuleReport check_one_sided_sum(const PhiSectorState& s, double tol, double time) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= s.n_b(); ++j) {
        const double c = ent::concurrence_site_to_single_phi(s, j, tol);
        sum += c * c;
    }
    const double cab = s.global_concurrence();
    return equality_rule("one_sided_sum", sum, cab * cab, tol, time);
}

RuleReport check_one_sided_sum(const SectorState& s, double tol, double time) {
    return std::visit(
        [&](const auto& state) { return check_one_sided_sum(state, tol, time); }, s);
}

RuleReport check_ckw(double cab, std::span<const double> parts, double tol, double time) {
    double sum = 0.0;
    for (double c : parts) sum += c * c;
    return upper_bound_rule("ckw", sum, cab * cab, tol, time);
}

double yonac_sum(const PsiSectorState& s) {
    if (s.n_a() != 2 || s.n_b() != 2) {
        throw WrongShape("yonac_sum: defined for two qubits per site");
    }
    return ent::concurrence_pair_psi(s, {1, 1}) + ent::concurrence_pair_psi(s, {2, 2});
}

double three_tangle_phi(const PhiSectorState& s, std::size_t i, double tol) {
    if (s.n_a() != 2 || s.n_b() != 2) {
        throw WrongShape("three_tangle_phi: defined for two qubits per site");
    }
    const double site = ent::concurrence_single_to_site_phi(s, i, tol);
    const double p1 = ent::concurrence_pair_phi(s, {i, 1});
    const double p2 = ent::concurrence_pair_phi(s, {i, 2});
    return site * site - p1 * p1 - p2 * p2;
}

std::string rule_csv_header() { return "rule,t,lhs,rhs,residual,pass"; }

std::string to_csv_row(const RuleReport& r) {
    return r.rule_id + "," + fmt(r.time) + "," + fmt(r.lhs) + "," + fmt(r.rhs) + "," +
           fmt(r.residual) + "," + (r.pass ? "1" : "0");
}

}  // namespace qtransfer::rules
