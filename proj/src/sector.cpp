#include "qtransfer/sector.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qtransfer::sector {

namespace {
void write_double(std::ostream& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

void write_amplitude_line(std::ostream& out, complexd z) {
    write_double(out, z.real());
    out.put(' ');
    write_double(out, z.imag());
    out.put('\n');
}
}  // namespace

double BellParams::global_concurrence() const {
    return 2.0 * std::sin(alpha) * std::cos(alpha);
}

void BellParams::check() const {
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2.0)) {
        throw std::invalid_argument("BellParams: alpha must lie in [0, pi/2]");
    }
    if (!std::isfinite(beta)) {
        throw std::invalid_argument("BellParams: beta must be finite");
    }
    if (n_a < 1 || n_b < 1) {
        throw std::invalid_argument("BellParams: site sizes must be >= 1");
    }
}

double PsiSectorState::site_a_weight() const {
    double w = 0.0;
    for (const auto& d : d_a) w += std::norm(d);
    return w;
}

double PsiSectorState::site_b_weight() const {
    double w = 0.0;
    for (const auto& d : d_b) w += std::norm(d);
    return w;
}

double PsiSectorState::global_concurrence() const {
    return 2.0 * std::sqrt(site_a_weight()) * std::sqrt(site_b_weight());
}

double PhiSectorState::excited_weight() const {
    double w = 0.0;
    for (const auto& v : c.data()) w += std::norm(v);
    return w;
}

double PhiSectorState::global_concurrence() const {
    return 2.0 * std::abs(c0) * std::sqrt(excited_weight());
}

double PhiSectorState::rank_one_residual() const {
    double peak = 0.0;
    for (const auto& v : c.data()) peak = std::max(peak, std::norm(v));
    if (peak == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < c.rows(); ++i)
        for (std::size_t k = i + 1; k < c.rows(); ++k)
            for (std::size_t j = 0; j + 1 < c.cols(); ++j)
                for (std::size_t l = j + 1; l < c.cols(); ++l) {
                    const double minor = std::abs(c(i, j) * c(k, l) - c(i, l) * c(k, j));
                    worst = std::max(worst, minor);
                }
    return worst / peak;
}

SectorState make_bell(const BellParams& params) {
    params.check();
    const complexd excited = std::cos(params.alpha);
    const complexd phased =
        std::sin(params.alpha) * std::exp(complexd{0.0, params.beta});
    if (params.kind == BellKind::psi) {
        PsiSectorState s;
        s.d_a.assign(params.n_a, complexd{0.0, 0.0});
        s.d_b.assign(params.n_b, complexd{0.0, 0.0});
        s.d_a[0] = excited;
        s.d_b[0] = phased;
        return s;
    }
    PhiSectorState s{CMatrix(params.n_a, params.n_b), phased};
    s.c(0, 0) = excited;
    return s;
}

ValidationReport validate(const PsiSectorState& s, double tol) {
    ValidationReport r;
    r.norm_residual = std::abs(s.site_a_weight() + s.site_b_weight() - 1.0);
    r.pass = r.norm_residual <= tol;
    return r;
}

ValidationReport validate(const PhiSectorState& s, double tol) {
    ValidationReport r;
    r.norm_residual = std::abs(std::norm(s.c0) + s.excited_weight() - 1.0);
    r.rank_one_residual = s.rank_one_residual();
    r.product_form = r.rank_one_residual <= tol;
    r.pass = r.norm_residual <= tol;
    return r;
}

ValidationReport validate(const SectorState& s, double tol) {
    return std::visit([tol](const auto& state) { return validate(state, tol); }, s);
}

void write_state(std::ostream& out, const SectorState& s) {
    if (const auto* psi = std::get_if<PsiSectorState>(&s)) {
        for (const auto& d : psi->d_a) write_amplitude_line(out, d);
        for (const auto& d : psi->d_b) write_amplitude_line(out, d);
        return;
    }
    const auto& phi = std::get<PhiSectorState>(s);
    for (std::size_t i = 0; i < phi.c.rows(); ++i)
        for (std::size_t j = 0; j < phi.c.cols(); ++j)
            write_amplitude_line(out, phi.c(i, j));
    write_amplitude_line(out, phi.c0);
}

}  // namespace qtransfer::sector
