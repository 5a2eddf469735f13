// Acceptance suite: drives the whole stack through the public APIs and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qtransfer/dynamics.hpp"
#include "qtransfer/entanglement.hpp"
#include "qtransfer/oracle.hpp"
#include "qtransfer/rules.hpp"
#include "qtransfer/scenario.hpp"
#include "qtransfer/sector.hpp"
#include "test_support.hpp"

using namespace qtransfer;
namespace ent = qtransfer::entanglement;
using linalg::CMatrix;
using linalg::complexd;
using sector::BellKind;
using sector::make_bell;
using sector::PhiSectorState;
using sector::PsiSectorState;
using std::numbers::pi;
using testsup::Rng;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("criterion %d [%s]: %s (%s)\n", id, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++g_failures;
}

double now_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Table {
    int exit_code = 0;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;  // empty cells parsed as NaN
};

Table run_table(const scenario::ScenarioConfig& cfg) {
    std::ostringstream csv;
    std::ostringstream summary;
    Table t;
    t.exit_code = scenario::run(cfg, csv, summary);
    std::istringstream in(csv.str());
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : cells)
            row.push_back(c.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(c));
        t.rows.push_back(row);
    }
    return t;
}

std::size_t column(const Table& t, const std::string& name) {
    for (std::size_t k = 0; k < t.header.size(); ++k)
        if (t.header[k] == name) return k;
    return static_cast<std::size_t>(-1);
}

PhiSectorState equal_amplitude_point() {
    const double a = 1.0 / std::sqrt(5.0);
    PhiSectorState s{CMatrix(2, 2), complexd{a, 0.0}};
    s.c(0, 0) = s.c(0, 1) = s.c(1, 0) = s.c(1, 1) = a;
    return s;
}

scenario::ScenarioConfig symmetric_resonant_config() {
    scenario::ScenarioConfig cfg;
    cfg.state = BellKind::psi;
    cfg.alpha = pi / 6.0;
    return cfg;  // ga = gb = 1, da = db = 0, steps = 500, tmax = 12
}

scenario::ScenarioConfig asymmetric_coupling_config() {
    scenario::ScenarioConfig cfg;
    cfg.state = BellKind::psi;
    cfg.alpha = pi / 4.0;
    cfg.g_a = 2.0;
    cfg.g_b = 1.0;
    return cfg;
}

scenario::ScenarioConfig correlated_esd_config() {
    scenario::ScenarioConfig cfg;
    cfg.state = BellKind::phi;
    cfg.alpha = pi / 12.0;
    return cfg;
}

scenario::ScenarioConfig damped_detuned_config() {
    scenario::ScenarioConfig cfg;
    cfg.state = BellKind::psi;
    cfg.alpha = pi / 4.0;
    cfg.delta_a = cfg.delta_b = 2.0;
    cfg.gamma = 0.3;
    return cfg;
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const Table sym = run_table(symmetric_resonant_config());
    const double sweep_seconds = now_seconds(t0);

    double worst = 0.0;
    const std::size_t sspc = column(sym, "sspc");
    for (const auto& row : sym.rows) worst = std::max(worst, std::abs(row[sspc] - 0.75));
    bool pass = sym.rows.size() == 500 && worst <= 1e-10 && sweep_seconds < 1.0 &&
                sym.exit_code == 0;

    Rng rng(101);
    double worst_random = 0.0;
    for (int scenario_idx = 0; scenario_idx < 200; ++scenario_idx) {
        const std::size_t n = 2 + scenario_idx % 2;
        const std::size_t m = 2 + (scenario_idx / 2) % 2;
        const double alpha = rng.uniform(0.0, pi / 2.0);
        const auto seed =
            std::get<PsiSectorState>(make_bell({BellKind::psi, alpha, rng.uniform(0.0, 6.0), n, m}));
        const CMatrix h_a = rng.hermitian(n);
        const CMatrix h_b = rng.hermitian(m);
        for (int k = 0; k < 50; ++k) {
            const double t = rng.uniform(0.0, 10.0);
            const auto s = dynamics::evolve_psi(seed, dynamics::generic_propagator(h_a, t),
                                                dynamics::generic_propagator(h_b, t));
            worst_random = std::max(worst_random, rules::check_sspc_conservation(s, 1e-9).residual);
        }
    }
    pass = pass && worst_random <= 1e-9;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max grid residual %.2e, sweep %.2f s, max random residual %.2e", worst,
                  sweep_seconds, worst_random);
    report(1, "SSPC conservation, anti-correlated seed", pass, detail);
}

void criterion_2() {
    const Table sym = run_table(symmetric_resonant_config());
    const std::size_t yon = column(sym, "yonac");
    const std::size_t cab2 = column(sym, "cab2");
    double worst_sym = 0.0;
    for (const auto& row : sym.rows)
        worst_sym = std::max(worst_sym, std::abs(row[yon] - std::sqrt(row[cab2])));

    const Table asym = run_table(asymmetric_coupling_config());
    const std::size_t yon3 = column(asym, "yonac");
    const std::size_t cab3 = column(asym, "cab2");
    const std::size_t sspc3 = column(asym, "sspc");
    double worst_violation = 0.0;
    double worst_conservation = 0.0;
    for (const auto& row : asym.rows) {
        worst_violation = std::max(worst_violation, std::abs(row[yon3] - std::sqrt(row[cab3])));
        worst_conservation = std::max(worst_conservation, std::abs(row[sspc3] - row[cab3]));
    }

    const bool pass = worst_sym <= 1e-10 && worst_violation > 1e-3 && worst_conservation <= 1e-10;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "symmetric residual %.2e, asymmetric violation %.2e, conservation residual %.2e",
                  worst_sym, worst_violation, worst_conservation);
    report(2, "linear rule only for symmetric couplings", pass, detail);
}

void criterion_3() {
    // Saturation at full-transfer times, evaluated at exact gt = k pi/2.
    const auto seed = std::get<PhiSectorState>(make_bell({BellKind::phi, pi / 12.0, 0.0, 2, 2}));
    double worst_saturation = 0.0;
    for (int k = 0; k <= 7; ++k) {
        const double t = k * pi / 2.0;
        const auto u = dynamics::jc_propagator(1.0, 0.0, t);
        const auto s = dynamics::evolve_phi(seed, u, u);
        worst_saturation = std::max(worst_saturation, std::abs(rules::sspc(s) - 0.25));
    }

    const Table esd = run_table(correlated_esd_config());
    const std::size_t sspc = column(esd, "sspc");
    const std::size_t t_col = column(esd, "t");
    const std::size_t c12 = column(esd, "c_1_22");
    std::size_t dead_rows = 0;
    bool dead_zone_clean = true;
    double worst_c12 = 0.0;
    for (const auto& row : esd.rows) {
        worst_c12 = std::max(worst_c12, row[c12]);
        if (row[t_col] > 0.6 && row[t_col] < 1.0) {
            ++dead_rows;
            if (row[sspc] != 0.0) dead_zone_clean = false;
        }
    }
    const bool pass = worst_saturation <= 1e-10 && dead_rows >= 5 && dead_zone_clean &&
                      worst_c12 < 0.01 && esd.exit_code == 0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "saturation residual %.2e, %zu dead-zone rows all zero: %s, max C12^2 %.4f",
                  worst_saturation, dead_rows, dead_zone_clean ? "yes" : "no", worst_c12);
    report(3, "SSPC bound and sudden death, correlated seed", pass, detail);
}

void criterion_4() {
    const auto s = equal_amplitude_point();
    bool pairwise_zero = true;
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j)
            pairwise_zero = pairwise_zero && ent::concurrence_pair_phi(s, {i, j}) == 0.0;

    const double c1 = ent::concurrence_site_to_single_phi(s, 1);
    const double c2 = ent::concurrence_site_to_single_phi(s, 2);
    const double cab2 = std::pow(s.global_concurrence(), 2);
    const bool squares_ok = std::abs(c1 * c1 - 8.0 / 25.0) <= 1e-12 &&
                            std::abs(c2 * c2 - 8.0 / 25.0) <= 1e-12;
    const bool sum_ok = std::abs(c1 * c1 + c2 * c2 - 16.0 / 25.0) <= 1e-12 &&
                        std::abs(c1 * c1 + c2 * c2 - cab2) <= 1e-12;
    const double tangle = rules::three_tangle_phi(s, 1);
    const bool tangle_ok = std::abs(tangle - 8.0 / 25.0) <= 1e-12;

    const bool pass = pairwise_zero && squares_ok && sum_ok && tangle_ok;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "pairwise all zero: %s, C_Ab^2 residual %.2e, 3-tangle %.12f",
                  pairwise_zero ? "yes" : "no", std::abs(c1 * c1 - 8.0 / 25.0), tangle);
    report(4, "equal-amplitude point", pass, detail);
}

void criterion_5() {
    double worst_scenario = 0.0;
    for (const auto& cfg :
         {symmetric_resonant_config(), asymmetric_coupling_config(), correlated_esd_config(), damped_detuned_config()}) {
        const Table t = run_table(cfg);
        const std::size_t cab2 = column(t, "cab2");
        const std::size_t first = column(t, "cA_b12");
        for (const auto& row : t.rows) {
            const double sum = row[first] + row[first + 1];
            worst_scenario = std::max(worst_scenario, std::abs(sum - row[cab2]));
        }
    }

    Rng rng(105);
    double worst_random = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = rng.uniform(0.0, pi / 2.0);
        const auto psi = testsup::random_evolved_psi(2 + trial % 2, 2 + (trial / 2) % 2, alpha, rng);
        worst_random = std::max(worst_random, rules::check_one_sided_sum(psi, 1e-10).residual);
        const auto phi = testsup::random_evolved_phi(2 + (trial / 4) % 2, 2 + trial % 2, alpha, rng);
        worst_random = std::max(worst_random, rules::check_one_sided_sum(phi, 1e-10).residual);
    }
    const bool pass = worst_scenario <= 1e-10 && worst_random <= 1e-10;
    char detail[120];
    std::snprintf(detail, sizeof(detail), "scenario residual %.2e, random residual %.2e", worst_scenario,
                  worst_random);
    report(5, "one-sided sum rule", pass, detail);
}

void criterion_6() {
    const auto t0 = std::chrono::steady_clock::now();

    // Named scenarios with oracle columns on the full default grid.
    double worst_scenario = 0.0;
    bool all_pass = true;
    const std::vector<std::string> concurrence_cols{"cab2",   "c_1_12", "c_1_22", "c_2_12",
                                                    "c_2_22", "cA_b12", "cA_b22"};
    for (auto cfg : {symmetric_resonant_config(), asymmetric_coupling_config(), correlated_esd_config(), damped_detuned_config()}) {
        cfg.oracle = true;
        cfg.tol = 1e-9;
        const Table t = run_table(cfg);
        all_pass = all_pass && t.exit_code == 0;
        for (const auto& name : concurrence_cols) {
            const std::size_t closed = column(t, name);
            const std::size_t brute = column(t, name + "_orc");
            for (const auto& row : t.rows)
                worst_scenario = std::max(worst_scenario, std::abs(row[closed] - row[brute]));
        }
    }

    // Random-Hamiltonian scenarios, concurrences and reduced matrices.
    Rng rng(106);
    double worst_random = 0.0;
    for (int scenario_idx = 0; scenario_idx < 200; ++scenario_idx) {
        const std::size_t n = 2 + scenario_idx % 2;
        const std::size_t m = 2 + (scenario_idx / 2) % 2;
        const double alpha = rng.uniform(0.05, pi / 2.0);
        const CMatrix h_a = rng.hermitian(n);
        const CMatrix h_b = rng.hermitian(m);
        const auto psi0 =
            std::get<PsiSectorState>(make_bell({BellKind::psi, alpha, rng.uniform(0.0, 6.0), n, m}));
        const auto phi0 =
            std::get<PhiSectorState>(make_bell({BellKind::phi, alpha, rng.uniform(0.0, 6.0), n, m}));
        for (int k = 0; k < 5; ++k) {
            const double t = rng.uniform(0.0, 8.0);
            const auto ua = dynamics::generic_propagator(h_a, t);
            const auto ub = dynamics::generic_propagator(h_b, t);

            const auto psi = dynamics::evolve_psi(psi0, ua, ub);
            const auto f_psi = oracle::evolve_full(oracle::embed(psi0), h_a, h_b, t);
            const auto phi = dynamics::evolve_phi(phi0, ua, ub);
            const auto f_phi = oracle::evolve_full(oracle::embed(phi0), h_a, h_b, t);

            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t j = 1; j <= m; ++j) {
                    const std::vector<std::size_t> keep{oracle::register_pos_a(i),
                                                        oracle::register_pos_b(f_psi, j)};
                    const auto rho_psi = oracle::partial_trace(f_psi, keep);
                    worst_random = std::max(
                        worst_random,
                        testsup::max_abs_diff(rho_psi, ent::rho_pair_psi(psi, {i, j})));
                    worst_random =
                        std::max(worst_random, std::abs(ent::concurrence_wootters(rho_psi) -
                                                        ent::concurrence_pair_psi(psi, {i, j})));
                    const auto rho_phi = oracle::partial_trace(f_phi, keep);
                    worst_random = std::max(
                        worst_random,
                        testsup::max_abs_diff(rho_phi, ent::rho_pair_phi(phi, {i, j})));
                    worst_random =
                        std::max(worst_random, std::abs(ent::concurrence_wootters(rho_phi) -
                                                        ent::concurrence_pair_phi(phi, {i, j})));
                }
            ent::Partition q;
            for (std::size_t i = 1; i <= n; ++i) q.subset_a.insert(i);
            for (std::size_t j = 1; j <= m; ++j) {
                q.subset_b = {j};
                const double closed = ent::concurrence_site_to_single_phi(phi, j);
                const double brute =
                    ent::concurrence_wootters(oracle::partition_collapse(f_phi, q));
                worst_random = std::max(worst_random, std::abs(closed - brute));
            }
        }
    }

    const double elapsed = now_seconds(t0);
    const bool pass = all_pass && worst_scenario <= 1e-9 && worst_random <= 1e-9 && elapsed < 60.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "scenario residual %.2e, random residual %.2e, elapsed %.1f s", worst_scenario,
                  worst_random, elapsed);
    report(6, "oracle equivalence", pass, detail);
}

void criterion_7() {
    bool pass = true;
    double worst = 0.0;
    for (std::size_t n : {2u, 3u}) {
        PsiSectorState s;
        const double a = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
        s.d_a.assign(n, complexd{a, 0.0});
        s.d_b.assign(n, complexd{a, 0.0});
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) {
                const double c = ent::concurrence_pair_psi(s, {i, j});
                worst = std::max(worst, std::abs(c - 1.0 / static_cast<double>(n)));
            }
        pass = pass && std::abs(s.site_a_weight() - 0.5) < 1e-15;  // alpha = pi/4 sector weights
    }
    pass = pass && worst <= 1e-12;
    char detail[80];
    std::snprintf(detail, sizeof(detail), "max residual %.2e", worst);
    report(7, "W-point pairwise concurrence", pass, detail);
}

void criterion_8() {
    // Full-precision check of the damping semantics on the damped-detuned grid
    // (gamma = 0.3 g, delta = 2 g, alpha = pi/4, so C_AB(0) = 1).
    const double gamma = 0.3;
    const auto seed = std::get<PsiSectorState>(make_bell({BellKind::psi, pi / 4.0, 0.0, 2, 2}));
    const double cab0 = seed.global_concurrence();

    std::vector<double> grid(500);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 12.0 * static_cast<double>(i) / static_cast<double>(grid.size() - 1);

    // Concurrence series per pair across the grid, damped through the
    // envelope operation.
    std::vector<std::vector<double>> series(4, std::vector<double>(grid.size()));
    for (std::size_t r = 0; r < grid.size(); ++r) {
        const auto u_a = dynamics::jc_propagator(1.0, 2.0, grid[r]);
        const auto u_b = dynamics::jc_propagator(1.0, 2.0, grid[r]);
        const auto s = dynamics::evolve_psi(seed, u_a, u_b);
        for (std::size_t i = 1; i <= 2; ++i)
            for (std::size_t j = 1; j <= 2; ++j)
                series[(i - 1) * 2 + (j - 1)][r] = ent::concurrence_pair_psi(s, {i, j});
    }
    const dynamics::DampingParams damping{gamma};
    double worst_envelope = 0.0;
    double worst_sspc = 0.0;
    std::vector<std::vector<double>> damped(4);
    for (std::size_t k = 0; k < 4; ++k) {
        damped[k] = dynamics::apply_damping(grid, series[k], damping);
        for (std::size_t r = 0; r < grid.size(); ++r) {
            worst_envelope = std::max(
                worst_envelope,
                std::abs(damped[k][r] - series[k][r] * std::exp(-gamma * grid[r])));
        }
    }
    for (std::size_t r = 0; r < grid.size(); ++r) {
        double sspc_damped = 0.0;
        for (std::size_t k = 0; k < 4; ++k) sspc_damped += damped[k][r] * damped[k][r];
        const double expected = std::pow(cab0 * std::exp(-damping.kappa * grid[r]), 2);
        worst_sspc = std::max(worst_sspc, std::abs(sspc_damped - expected));
    }

    // The CSV-level run must also pass its rule checks at the default tol.
    const Table csv = run_table(damped_detuned_config());
    const bool pass = worst_envelope <= 1e-12 && worst_sspc <= 1e-12 && csv.exit_code == 0;
    char detail[120];
    std::snprintf(detail, sizeof(detail), "envelope residual %.2e, sspc residual %.2e",
                  worst_envelope, worst_sspc);
    report(8, "damping envelope", pass, detail);
}

void criterion_9() {
    Rng rng(109);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 2;
        const std::size_t m = 2 + (trial / 2) % 2;

        // Random psi amplitudes, jointly normalized.
        PsiSectorState psi;
        psi.d_a = rng.cvector(n);
        psi.d_b = rng.cvector(m);
        double norm = 0.0;
        for (const auto& d : psi.d_a) norm += std::norm(d);
        for (const auto& d : psi.d_b) norm += std::norm(d);
        const double scale = 1.0 / std::sqrt(norm);
        for (auto& d : psi.d_a) d *= scale;
        for (auto& d : psi.d_b) d *= scale;

        // Random phi amplitudes (not rank-1 in general).
        PhiSectorState phi{CMatrix(n, m), rng.cunit()};
        double pnorm = std::norm(phi.c0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                phi.c(i, j) = rng.cunit();
                pnorm += std::norm(phi.c(i, j));
            }
        const double pscale = 1.0 / std::sqrt(pnorm);
        phi.c0 *= pscale;
        phi.c *= pscale;

        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= m; ++j) {
                worst = std::max(worst,
                                 std::abs(ent::concurrence_pair_psi(psi, {i, j}) -
                                          ent::concurrence_wootters(ent::rho_pair_psi(psi, {i, j}))));
                worst = std::max(worst,
                                 std::abs(ent::concurrence_pair_phi(phi, {i, j}) -
                                          ent::concurrence_wootters(ent::rho_pair_phi(phi, {i, j}))));
            }
    }
    const bool pass = worst <= 1e-10;
    char detail[80];
    std::snprintf(detail, sizeof(detail), "max closed-vs-eigenvalue residual %.2e", worst);
    report(9, "closed form vs spin-flip formula on random X-states", pass, detail);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("acceptance: %d/9 criteria passed in %.1f s\n", 9 - g_failures,
                now_seconds(t0));
    return g_failures == 0 ? 0 : 1;
}
