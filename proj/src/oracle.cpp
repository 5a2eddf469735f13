#include "qtransfer/oracle.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "qtransfer/errors.hpp"

namespace qtransfer::oracle {

namespace {

std::size_t checked_register_size(std::size_t n_a, std::size_t n_b) {
    if (n_a < 1 || n_b < 1) {
        throw std::invalid_argument("full register: each site needs at least one qubit");
    }
    if (n_a + n_b > kMaxRegisterQubits) {
        throw std::invalid_argument("full register: capped at 12 qubits");
    }
    return std::size_t{1} << (n_a + n_b);
}

// Bit of register position p inside an amplitude index.
std::size_t pos_bit(const FullState& s, std::size_t p) {
    return std::size_t{1} << (s.n_qubits() - 1 - p);
}

// Index of the single-excitation configuration {1}_k within one site's
// sub-register of `site_n` qubits (site-local, qubit 1 most significant).
std::size_t site_one_hot(std::size_t site_n, std::size_t k) {
    return std::size_t{1} << (site_n - 1 - k);
}

// Lift a single-excitation Hamiltonian to the site sub-register.
CMatrix lift_site_hamiltonian(const CMatrix& h, std::size_t site_n) {
    if (h.rows() != site_n || h.cols() != site_n) {
        throw DimensionMismatch("evolve_full: Hamiltonian must be site_n x site_n");
    }
    const std::size_t dim = std::size_t{1} << site_n;
    CMatrix lifted(dim, dim);
    for (std::size_t k = 0; k < site_n; ++k)
        for (std::size_t l = 0; l < site_n; ++l)
            lifted(site_one_hot(site_n, k), site_one_hot(site_n, l)) = h(k, l);
    return lifted;
}

int subset_weight(std::size_t idx, std::size_t mask) {
    return std::popcount(idx & mask);
}

}  // namespace

double FullState::norm() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

std::size_t register_pos_a(std::size_t i) { return i - 1; }

std::size_t register_pos_b(const FullState& s, std::size_t j) { return s.n_a + j - 1; }

FullState embed(const PsiSectorState& s) {
    FullState f{s.n_a(), s.n_b(), {}};
    f.amp.assign(checked_register_size(f.n_a, f.n_b), complexd{0.0, 0.0});
    for (std::size_t i = 0; i < f.n_a; ++i) f.amp[pos_bit(f, i)] = s.d_a[i];
    for (std::size_t j = 0; j < f.n_b; ++j) f.amp[pos_bit(f, f.n_a + j)] = s.d_b[j];
    return f;
}

FullState embed(const PhiSectorState& s) {
    FullState f{s.n_a(), s.n_b(), {}};
    f.amp.assign(checked_register_size(f.n_a, f.n_b), complexd{0.0, 0.0});
    for (std::size_t i = 0; i < f.n_a; ++i)
        for (std::size_t j = 0; j < f.n_b; ++j)
            f.amp[pos_bit(f, i) | pos_bit(f, f.n_a + j)] = s.c(i, j);
    f.amp[0] = s.c0;
    return f;
}

FullState embed(const SectorState& s) {
    return std::visit([](const auto& state) { return embed(state); }, s);
}

PsiSectorState extract_psi(const FullState& s) {
    PsiSectorState out;
    out.d_a.resize(s.n_a);
    out.d_b.resize(s.n_b);
    for (std::size_t i = 0; i < s.n_a; ++i) out.d_a[i] = s.amp[pos_bit(s, i)];
    for (std::size_t j = 0; j < s.n_b; ++j) out.d_b[j] = s.amp[pos_bit(s, s.n_a + j)];
    return out;
}

PhiSectorState extract_phi(const FullState& s) {
    PhiSectorState out{CMatrix(s.n_a, s.n_b), s.amp[0]};
    for (std::size_t i = 0; i < s.n_a; ++i)
        for (std::size_t j = 0; j < s.n_b; ++j)
            out.c(i, j) = s.amp[pos_bit(s, i) | pos_bit(s, s.n_a + j)];
    return out;
}

FullState evolve_full(const FullState& s, const CMatrix& h_a, const CMatrix& h_b, double t) {
    const std::size_t dim_a = std::size_t{1} << s.n_a;
    const std::size_t dim_b = std::size_t{1} << s.n_b;
    const CMatrix u_a = linalg::expm_unitary(lift_site_hamiltonian(h_a, s.n_a), t);
    const CMatrix u_b = linalg::expm_unitary(lift_site_hamiltonian(h_b, s.n_b), t);

    FullState out = s;
    // Site A acts on the high bits: strided gather per B configuration.
    {
        const auto n_b_configs = static_cast<long long>(dim_b);
#pragma omp parallel for if (dim_a * dim_b >= 4096)
        for (long long ibs = 0; ibs < n_b_configs; ++ibs) {
            const auto ib = static_cast<std::size_t>(ibs);
            std::vector<complexd> v(dim_a);
            for (std::size_t ia = 0; ia < dim_a; ++ia) v[ia] = out.amp[(ia << s.n_b) | ib];
            const std::vector<complexd> w = linalg::mul(u_a, v);
            for (std::size_t ia = 0; ia < dim_a; ++ia) out.amp[(ia << s.n_b) | ib] = w[ia];
        }
    }
    // Site B acts on contiguous blocks per A configuration.
    {
        const auto n_a_configs = static_cast<long long>(dim_a);
#pragma omp parallel for if (dim_a * dim_b >= 4096)
        for (long long ias = 0; ias < n_a_configs; ++ias) {
            const auto ia = static_cast<std::size_t>(ias);
            std::vector<complexd> v(dim_b);
            for (std::size_t ib = 0; ib < dim_b; ++ib) v[ib] = out.amp[(ia << s.n_b) | ib];
            const std::vector<complexd> w = linalg::mul(u_b, v);
            for (std::size_t ib = 0; ib < dim_b; ++ib) out.amp[(ia << s.n_b) | ib] = w[ib];
        }
    }
    return out;
}

CMatrix partial_trace(const FullState& s, std::span<const std::size_t> keep) {
    const std::size_t n = s.n_qubits();
    if (keep.empty()) {
        throw TooManyKept("partial_trace: keep set must be nonempty");
    }
    if (keep.size() > 4) {
        throw TooManyKept("partial_trace: at most 4 kept qubits");
    }
    std::size_t keep_mask = 0;
    for (std::size_t p : keep) {
        if (p >= n) throw IndexOutOfRange("partial_trace: register position out of range");
        const std::size_t bit = pos_bit(s, p);
        if (keep_mask & bit) throw IndexOutOfRange("partial_trace: duplicate kept position");
        keep_mask |= bit;
    }

    const std::size_t k = keep.size();
    const std::size_t dim = std::size_t{1} << k;

    // Full-register bits for reduced basis index r (index 0 = all excited).
    std::vector<std::size_t> row_bits(dim, 0);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t idx = 0; idx < k; ++idx)
            if (((r >> (k - 1 - idx)) & 1) == 0) row_bits[r] |= pos_bit(s, keep[idx]);

    // Environment configurations: all indices with kept bits clear.
    std::vector<std::size_t> env_positions;
    for (std::size_t p = 0; p < n; ++p)
        if (!(keep_mask & pos_bit(s, p))) env_positions.push_back(p);

    CMatrix rho(dim, dim);
    const std::size_t env_count = std::size_t{1} << env_positions.size();
    for (std::size_t e = 0; e < env_count; ++e) {
        std::size_t env = 0;
        for (std::size_t q = 0; q < env_positions.size(); ++q)
            if ((e >> q) & 1) env |= pos_bit(s, env_positions[q]);
        for (std::size_t r1 = 0; r1 < dim; ++r1) {
            const complexd a1 = s.amp[env | row_bits[r1]];
            if (a1 == complexd{0.0, 0.0}) continue;
            for (std::size_t r2 = 0; r2 < dim; ++r2) {
                rho(r1, r2) += a1 * std::conj(s.amp[env | row_bits[r2]]);
            }
        }
    }
    return rho;
}

namespace {

struct SubsetInfo {
    std::size_t mask = 0;                 // register bits of the subset
    std::vector<std::size_t> positions;   // ascending register positions
    std::vector<complexd> one_direction;  // normalized effective |1>, may be all-zero
};

// The effective |1> direction of a subset: the excitation vector of the
// branch (configuration of everything else) carrying the most weight,
// normalized and phased so its largest entry is real positive. Exact for
// product-form states, where all branches are parallel.
std::vector<complexd> effective_one_direction(const FullState& s, const SubsetInfo& info) {
    std::unordered_map<std::size_t, double> branch_weight;
    for (std::size_t z = 0; z < s.amp.size(); ++z) {
        if (s.amp[z] == complexd{0.0, 0.0}) continue;
        if (subset_weight(z, info.mask) != 1) continue;
        branch_weight[z & ~info.mask] += std::norm(s.amp[z]);
    }
    std::vector<complexd> v(info.positions.size(), complexd{0.0, 0.0});
    if (branch_weight.empty()) return v;

    std::size_t best = 0;
    double best_w = -1.0;
    for (const auto& [branch, w] : branch_weight) {
        if (w > best_w || (w == best_w && branch < best)) {
            best = branch;
            best_w = w;
        }
    }
    for (std::size_t slot = 0; slot < info.positions.size(); ++slot) {
        v[slot] = s.amp[best | pos_bit(s, info.positions[slot])];
    }
    double norm2 = 0.0;
    for (const auto& x : v) norm2 += std::norm(x);
    const double norm = std::sqrt(norm2);
    std::size_t peak = 0;
    for (std::size_t slot = 1; slot < v.size(); ++slot)
        if (std::abs(v[slot]) > std::abs(v[peak])) peak = slot;
    const complexd phase = v[peak] / std::abs(v[peak]);
    for (auto& x : v) x /= norm * phase;
    return v;
}

}  // namespace

CMatrix partition_collapse(const FullState& s, const Partition& q) {
    if (q.subset_a.empty() || q.subset_b.empty()) {
        throw EmptyPartition("partition_collapse: both subsets must be nonempty");
    }
    SubsetInfo sa;
    for (std::size_t i : q.subset_a) {
        if (i < 1 || i > s.n_a) throw IndexOutOfRange("partition_collapse: site-A index");
        sa.positions.push_back(register_pos_a(i));
        sa.mask |= pos_bit(s, register_pos_a(i));
    }
    SubsetInfo sb;
    for (std::size_t j : q.subset_b) {
        if (j < 1 || j > s.n_b) throw IndexOutOfRange("partition_collapse: site-B index");
        sb.positions.push_back(register_pos_b(s, j));
        sb.mask |= pos_bit(s, register_pos_b(s, j));
    }

    for (std::size_t z = 0; z < s.amp.size(); ++z) {
        if (s.amp[z] == complexd{0.0, 0.0}) continue;
        if (subset_weight(z, sa.mask) > 1 || subset_weight(z, sb.mask) > 1) {
            throw WeightOverflow("partition_collapse: two excitations inside one subset");
        }
    }
    sa.one_direction = effective_one_direction(s, sa);
    sb.one_direction = effective_one_direction(s, sb);

    const auto slot_of = [](const SubsetInfo& info, std::size_t z,
                            const FullState& state) -> std::size_t {
        for (std::size_t slot = 0; slot < info.positions.size(); ++slot)
            if (z & pos_bit(state, info.positions[slot])) return slot;
        return info.positions.size();  // unreachable for weight-1 inputs
    };

    // Effective amplitudes per environment configuration: project each
    // subset's weight-1 component onto the effective |1> direction.
    std::unordered_map<std::size_t, std::array<complexd, 4>> eff;
    const std::size_t env_mask = ~(sa.mask | sb.mask);
    for (std::size_t z = 0; z < s.amp.size(); ++z) {
        const complexd a = s.amp[z];
        if (a == complexd{0.0, 0.0}) continue;
        const int wa = subset_weight(z, sa.mask);
        const int wb = subset_weight(z, sb.mask);
        complexd coeff = a;
        if (wa == 1) coeff *= std::conj(sa.one_direction[slot_of(sa, z, s)]);
        if (wb == 1) coeff *= std::conj(sb.one_direction[slot_of(sb, z, s)]);
        const std::size_t row = static_cast<std::size_t>(1 - wa) * 2 + static_cast<std::size_t>(1 - wb);
        eff[z & env_mask][row] += coeff;
    }

    CMatrix rho(4, 4);
    for (const auto& [env, branch] : eff) {
        for (std::size_t r1 = 0; r1 < 4; ++r1)
            for (std::size_t r2 = 0; r2 < 4; ++r2) rho(r1, r2) += branch[r1] * std::conj(branch[r2]);
    }
    return rho;
}

}  // namespace qtransfer::oracle
