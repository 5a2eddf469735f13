#include "qtransfer/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <vector>

#include "CLI11.hpp"
#include "qtransfer/dynamics.hpp"
#include "qtransfer/entanglement.hpp"
#include "qtransfer/errors.hpp"
#include "qtransfer/oracle.hpp"
#include "qtransfer/rules.hpp"

namespace qtransfer::scenario {

namespace ent = qtransfer::entanglement;
using dynamics::LocalPropagator;
using linalg::CMatrix;
using sector::BellKind;
using sector::PhiSectorState;
using sector::PsiSectorState;
using sector::SectorState;

namespace {

std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

struct RowOut {
    std::vector<std::string> cells;
    rules::RuleReport sector_rule;  // SSPC conservation (psi) or SSPC bound (phi)
    rules::RuleReport one_sided;
    rules::RuleReport oracle_match;
};

struct ResidualRange {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    rules::RuleReport worst;
    void add(const rules::RuleReport& r) {
        lo = std::min(lo, r.residual);
        if (r.residual >= hi) {
            hi = r.residual;
            worst = r;
        }
    }
};

ent::Partition full_partition(std::size_t n_a, std::size_t n_b) {
    ent::Partition q;
    for (std::size_t i = 1; i <= n_a; ++i) q.subset_a.insert(i);
    for (std::size_t j = 1; j <= n_b; ++j) q.subset_b.insert(j);
    return q;
}

RowOut compute_row(const ScenarioConfig& cfg, const SectorState& seed, const CMatrix& h_a,
                   const CMatrix& h_b, double t_gt, bool yonac_on) {
    const double t_phys = t_gt / cfg.g_mean();
    const LocalPropagator ua = (cfg.model == Model::jc)
                                   ? dynamics::jc_propagator(cfg.g_a, cfg.delta_a, t_phys)
                                   : dynamics::generic_propagator(h_a, t_phys);
    const LocalPropagator ub = (cfg.model == Model::jc)
                                   ? dynamics::jc_propagator(cfg.g_b, cfg.delta_b, t_phys)
                                   : dynamics::generic_propagator(h_b, t_phys);

    const dynamics::DampingParams damping{cfg.gamma};
    const double env = dynamics::envelope(damping, t_phys);
    const double env_global = std::exp(-damping.kappa * t_phys);

    double cab = 0.0;
    std::vector<double> pair(cfg.n_a * cfg.n_b, 0.0);
    std::vector<double> one_sided(cfg.n_b, 0.0);
    double yonac = 0.0;

    if (cfg.state == BellKind::psi) {
        const auto s = dynamics::evolve_psi(std::get<PsiSectorState>(seed), ua, ub);
        cab = s.global_concurrence() * env_global;
        for (std::size_t i = 1; i <= cfg.n_a; ++i)
            for (std::size_t j = 1; j <= cfg.n_b; ++j)
                pair[(i - 1) * cfg.n_b + (j - 1)] = ent::concurrence_pair_psi(s, {i, j}) * env;
        ent::Partition q = full_partition(cfg.n_a, cfg.n_b);
        for (std::size_t j = 1; j <= cfg.n_b; ++j) {
            q.subset_b = {j};
            one_sided[j - 1] = ent::concurrence_partition_psi(s, q) * env;
        }
        if (yonac_on) yonac = pair[0] + pair[3];  // damped C11 + C22
    } else {
        const auto s = dynamics::evolve_phi(std::get<PhiSectorState>(seed), ua, ub);
        cab = s.global_concurrence() * env_global;
        for (std::size_t i = 1; i <= cfg.n_a; ++i)
            for (std::size_t j = 1; j <= cfg.n_b; ++j)
                pair[(i - 1) * cfg.n_b + (j - 1)] = ent::concurrence_pair_phi(s, {i, j}) * env;
        for (std::size_t j = 1; j <= cfg.n_b; ++j)
            one_sided[j - 1] = ent::concurrence_site_to_single_phi(s, j) * env;
    }

    double sspc = 0.0;
    for (double c : pair) sspc += c * c;
    double one_sum = 0.0;
    for (double c : one_sided) one_sum += c * c;

    RowOut row;
    row.cells.reserve(4 + pair.size() + one_sided.size() + (cfg.oracle ? 1 + pair.size() + one_sided.size() : 0));
    row.cells.push_back(fmt(t_gt));
    row.cells.push_back(fmt(cab * cab));
    row.cells.push_back(fmt(sspc));
    row.cells.push_back(yonac_on ? fmt(yonac) : std::string{});
    for (double c : pair) row.cells.push_back(fmt(c * c));
    for (double c : one_sided) row.cells.push_back(fmt(c * c));

    row.sector_rule = (cfg.state == BellKind::psi)
                          ? rules::equality_rule("sspc_conservation", sspc, cab * cab, cfg.tol, t_gt)
                          : rules::upper_bound_rule("sspc_bound", sspc, cab * cab,
                                                    cfg.tol, t_gt);
    row.one_sided = rules::equality_rule("one_sided_sum", one_sum, cab * cab, cfg.tol, t_gt);

    if (cfg.oracle) {
        const auto f = oracle::evolve_full(oracle::embed(seed), h_a, h_b, t_phys);
        const auto wootters_of = [&](const CMatrix& rho) {
            return ent::concurrence_wootters(rho);
        };
        const double cab_orc =
            wootters_of(oracle::partition_collapse(f, full_partition(cfg.n_a, cfg.n_b))) *
            env_global;
        std::vector<double> pair_orc(pair.size(), 0.0);
        for (std::size_t i = 1; i <= cfg.n_a; ++i)
            for (std::size_t j = 1; j <= cfg.n_b; ++j) {
                const std::vector<std::size_t> keep{oracle::register_pos_a(i),
                                                    oracle::register_pos_b(f, j)};
                pair_orc[(i - 1) * cfg.n_b + (j - 1)] =
                    wootters_of(oracle::partial_trace(f, keep)) * env;
            }
        std::vector<double> one_orc(one_sided.size(), 0.0);
        ent::Partition q = full_partition(cfg.n_a, cfg.n_b);
        for (std::size_t j = 1; j <= cfg.n_b; ++j) {
            q.subset_b = {j};
            one_orc[j - 1] = wootters_of(oracle::partition_collapse(f, q)) * env;
        }

        row.cells.push_back(fmt(cab_orc * cab_orc));
        for (double c : pair_orc) row.cells.push_back(fmt(c * c));
        for (double c : one_orc) row.cells.push_back(fmt(c * c));

        double closed_worst = cab * cab;
        double orc_worst = cab_orc * cab_orc;
        const auto consider = [&](double closed, double orc) {
            if (std::abs(closed - orc) > std::abs(closed_worst - orc_worst)) {
                closed_worst = closed;
                orc_worst = orc;
            }
        };
        for (std::size_t k = 0; k < pair.size(); ++k)
            consider(pair[k] * pair[k], pair_orc[k] * pair_orc[k]);
        for (std::size_t k = 0; k < one_sided.size(); ++k)
            consider(one_sided[k] * one_sided[k], one_orc[k] * one_orc[k]);
        row.oracle_match =
            rules::equality_rule("oracle_agreement", closed_worst, orc_worst, cfg.tol, t_gt);
    }
    return row;
}

void summarize_rule(std::ostream& out, const std::string& name, const ResidualRange& range,
                    double tol, bool pass) {
    out << "rule " << name << ": residual min " << fmt(range.lo) << " max " << fmt(range.hi)
        << " tol " << fmt(tol) << " -> " << (pass ? "PASS" : "FAIL") << "\n";
    if (!pass) {
        out << "  worst row [" << rules::rule_csv_header()
            << "]: " << rules::to_csv_row(range.worst) << "\n";
    }
}

}  // namespace

double ScenarioConfig::g_mean() const {
    const double g = 0.5 * (g_a + g_b);
    return g > 0.0 ? g : 1.0;
}

ScenarioConfig parse_args(int argc, const char* const* argv) {
    ScenarioConfig cfg;
    std::string state_str;
    std::string model_str = "jc";

    CLI::App app{"simulate: qubit-conserving entanglement transfer scenarios"};
    app.add_option("--state", state_str, "Bell seed sector: psi|phi")->required();
    app.add_option("--alpha", cfg.alpha, "Bell mixing angle in radians, within [0, pi/2]");
    app.add_option("--beta", cfg.beta, "Bell relative phase in radians");
    auto* na_opt = app.add_option("--na", cfg.n_a, "qubits at site A");
    auto* nb_opt = app.add_option("--nb", cfg.n_b, "qubits at site B");
    app.add_option("--model", model_str, "local dynamics: jc|custom");
    app.add_option("--ga", cfg.g_a, "site-A coupling");
    app.add_option("--gb", cfg.g_b, "site-B coupling");
    app.add_option("--da", cfg.delta_a, "site-A detuning");
    app.add_option("--db", cfg.delta_b, "site-B detuning");
    app.add_option("--gamma", cfg.gamma, "damping rate for the concurrence envelope");
    app.add_option("--tmax", cfg.t_max, "sweep end in g*t units");
    app.add_option("--steps", cfg.steps, "grid points (>= 2)");
    app.add_option("--tol", cfg.tol, "rule-check tolerance");
    app.add_option("--out", cfg.out, "CSV output path (default stdout)");
    app.add_flag("--oracle", cfg.oracle, "add brute-force columns and cross-check");
    app.add_option("--dump-state", cfg.dump_state, "write the final sector state to this path");
    app.add_option("--ha", cfg.ha_path, "custom site-A Hamiltonian file");
    app.add_option("--hb", cfg.hb_path, "custom site-B Hamiltonian file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    if (state_str == "psi") {
        cfg.state = BellKind::psi;
    } else if (state_str == "phi") {
        cfg.state = BellKind::phi;
    } else {
        throw ConfigError("--state must be psi or phi");
    }
    if (model_str == "jc") {
        cfg.model = Model::jc;
    } else if (model_str == "custom") {
        cfg.model = Model::custom;
    } else {
        throw ConfigError("--model must be jc or custom");
    }
    if (cfg.steps < 2) throw ConfigError("--steps must be at least 2");
    if (!(cfg.t_max > 0.0)) throw ConfigError("--tmax must be positive");
    if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (cfg.gamma < 0.0) throw ConfigError("--gamma must be >= 0");
    try {
        cfg.jc_params().check();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (cfg.model == Model::custom) {
        if (cfg.ha_path.empty() || cfg.hb_path.empty()) {
            throw ConfigError("--model custom requires --ha and --hb");
        }
        const auto load = [](const std::string& path) {
            std::ifstream in(path);
            if (!in) throw ConfigError("cannot open Hamiltonian file: " + path);
            try {
                return dynamics::load_hamiltonian(in);
            } catch (const std::exception& e) {
                throw ConfigError(path + ": " + e.what());
            }
        };
        cfg.h_a = load(cfg.ha_path);
        cfg.h_b = load(cfg.hb_path);
        if (na_opt->count() > 0 && cfg.n_a != cfg.h_a->rows()) {
            throw ConfigError("--na disagrees with the dimension of " + cfg.ha_path);
        }
        if (nb_opt->count() > 0 && cfg.n_b != cfg.h_b->rows()) {
            throw ConfigError("--nb disagrees with the dimension of " + cfg.hb_path);
        }
        cfg.n_a = cfg.h_a->rows();
        cfg.n_b = cfg.h_b->rows();
    } else if (cfg.n_a != 2 || cfg.n_b != 2) {
        throw ConfigError("the jc model uses one atom plus one cavity per site (na = nb = 2)");
    }

    if (cfg.oracle && cfg.n_a + cfg.n_b > oracle::kMaxRegisterQubits) {
        throw ConfigError("--oracle needs na + nb <= 12 (full-register brute force)");
    }

    try {
        const sector::BellParams params{cfg.state, cfg.alpha, cfg.beta, cfg.n_a, cfg.n_b};
        params.check();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

int run(const ScenarioConfig& cfg, std::ostream& csv_out, std::ostream& summary_out) {
    const CMatrix h_a = (cfg.model == Model::custom)
                            ? *cfg.h_a
                            : dynamics::jc_hamiltonian(cfg.g_a, cfg.delta_a);
    const CMatrix h_b = (cfg.model == Model::custom)
                            ? *cfg.h_b
                            : dynamics::jc_hamiltonian(cfg.g_b, cfg.delta_b);
    const SectorState seed =
        sector::make_bell({cfg.state, cfg.alpha, cfg.beta, cfg.n_a, cfg.n_b});
    const bool yonac_on = cfg.state == BellKind::psi && cfg.n_a == 2 && cfg.n_b == 2;

    std::vector<double> grid(cfg.steps);
    for (std::size_t i = 0; i < cfg.steps; ++i)
        grid[i] = cfg.t_max * static_cast<double>(i) / static_cast<double>(cfg.steps - 1);

    std::vector<RowOut> rows(cfg.steps);
    const auto n_rows = static_cast<long long>(cfg.steps);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n_rows; ++i) {
        rows[static_cast<std::size_t>(i)] =
            compute_row(cfg, seed, h_a, h_b, grid[static_cast<std::size_t>(i)], yonac_on);
    }

    csv_out << "t,cab2,sspc,yonac";
    for (std::size_t i = 1; i <= cfg.n_a; ++i)
        for (std::size_t j = 1; j <= cfg.n_b; ++j)
            csv_out << ",c_" << i << "_" << j << "2";
    for (std::size_t j = 1; j <= cfg.n_b; ++j) csv_out << ",cA_b" << j << "2";
    if (cfg.oracle) {
        csv_out << ",cab2_orc";
        for (std::size_t i = 1; i <= cfg.n_a; ++i)
            for (std::size_t j = 1; j <= cfg.n_b; ++j)
                csv_out << ",c_" << i << "_" << j << "2_orc";
        for (std::size_t j = 1; j <= cfg.n_b; ++j) csv_out << ",cA_b" << j << "2_orc";
    }
    csv_out << "\n";
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.cells.size(); ++k) {
            if (k > 0) csv_out << ",";
            csv_out << row.cells[k];
        }
        csv_out << "\n";
    }
    csv_out.flush();

    ResidualRange sector_rule;
    ResidualRange one_sided;
    ResidualRange oracle_rule;
    for (const auto& row : rows) {
        sector_rule.add(row.sector_rule);
        one_sided.add(row.one_sided);
        if (cfg.oracle) oracle_rule.add(row.oracle_match);
    }
    const bool sector_pass = sector_rule.hi <= cfg.tol;
    const bool one_pass = one_sided.hi <= cfg.tol;
    const bool oracle_pass = !cfg.oracle || oracle_rule.hi <= cfg.tol;

    summary_out << "scenario: state=" << (cfg.state == BellKind::psi ? "psi" : "phi")
                << " model=" << (cfg.model == Model::jc ? "jc" : "custom")
                << " alpha=" << fmt(cfg.alpha) << " na=" << cfg.n_a << " nb=" << cfg.n_b
                << " ga=" << fmt(cfg.g_a) << " gb=" << fmt(cfg.g_b) << " da=" << fmt(cfg.delta_a)
                << " db=" << fmt(cfg.delta_b) << " gamma=" << fmt(cfg.gamma)
                << " steps=" << cfg.steps << " tmax=" << fmt(cfg.t_max) << "\n";
    summarize_rule(summary_out,
                   cfg.state == BellKind::psi ? "sspc_conservation" : "sspc_bound",
                   sector_rule, cfg.tol, sector_pass);
    summarize_rule(summary_out, "one_sided_sum", one_sided, cfg.tol, one_pass);
    if (cfg.oracle) summarize_rule(summary_out, "oracle_agreement", oracle_rule, cfg.tol, oracle_pass);

    const bool all_pass = sector_pass && one_pass && oracle_pass;
    summary_out << "result: " << (all_pass ? "PASS" : "FAIL") << "\n";
    summary_out.flush();
    return all_pass ? 0 : 2;
}

int run(const ScenarioConfig& cfg) {
    std::ofstream csv_file;
    if (!cfg.out.empty()) {
        csv_file.open(cfg.out);
        if (!csv_file) {
            std::cerr << "cannot open output path: " << cfg.out << "\n";
            return 1;
        }
    }
    std::ostream& csv_out = cfg.out.empty() ? std::cout : csv_file;
    std::ostream& summary_out = cfg.out.empty() ? std::cerr : std::cout;

    const int code = run(cfg, csv_out, summary_out);

    if (!cfg.dump_state.empty()) {
        // The state itself is never damped; the envelope only scales
        // concurrences. Dump the undamped sector state at t = tmax.
        std::ofstream dump(cfg.dump_state);
        if (!dump) {
            std::cerr << "cannot open dump path: " << cfg.dump_state << "\n";
            return 1;
        }
        const double t_phys = cfg.t_max / cfg.g_mean();
        const SectorState seed =
            sector::make_bell({cfg.state, cfg.alpha, cfg.beta, cfg.n_a, cfg.n_b});
        const CMatrix h_a = (cfg.model == Model::custom)
                                ? *cfg.h_a
                                : dynamics::jc_hamiltonian(cfg.g_a, cfg.delta_a);
        const CMatrix h_b = (cfg.model == Model::custom)
                                ? *cfg.h_b
                                : dynamics::jc_hamiltonian(cfg.g_b, cfg.delta_b);
        const LocalPropagator ua = (cfg.model == Model::jc)
                                       ? dynamics::jc_propagator(cfg.g_a, cfg.delta_a, t_phys)
                                       : dynamics::generic_propagator(h_a, t_phys);
        const LocalPropagator ub = (cfg.model == Model::jc)
                                       ? dynamics::jc_propagator(cfg.g_b, cfg.delta_b, t_phys)
                                       : dynamics::generic_propagator(h_b, t_phys);
        SectorState final_state;
        if (cfg.state == BellKind::psi) {
            final_state = dynamics::evolve_psi(std::get<PsiSectorState>(seed), ua, ub);
        } else {
            final_state = dynamics::evolve_phi(std::get<PhiSectorState>(seed), ua, ub);
        }
        sector::write_state(dump, final_state);
    }
    return code;
}

}  // namespace qtransfer::scenario
