#include "quniform/claims.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "quniform/errors.hpp"
#include "quniform/gf2matrix.hpp"

namespace quniform {

namespace {

u128 pair_sqdist(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    u128 s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        std::uint64_t d = a[k] > b[k] ? a[k] - b[k] : b[k] - a[k];
        s += static_cast<u128>(d) * d;
    }
    return s;
}

// each coordinate of the first 2^m points, at scale 2^m, visits every value
// in {0, ..., 2^m - 1} exactly once
bool coordinates_permute(const PointSet& ps) {
    const auto n = ps.size();
    std::vector<std::uint64_t> seen(n);
    for (std::size_t k = 0; k < ps.dim; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            seen[i] = ps.coords[i * ps.dim + k];
        std::sort(seen.begin(), seen.end());
        for (std::size_t i = 0; i < n; ++i) {
            if (seen[i] != i)
                return false;
        }
    }
    return true;
}

PointSet take_prefix(const PointSet& ps, std::size_t n) {
    PointSet out;
    out.dim = ps.dim;
    out.precision = ps.precision;
    out.coords.assign(ps.coords.begin(), ps.coords.begin() + n * ps.dim);
    return out;
}

}  // namespace

double TheoremCertificate::q_value() const {
    return std::ldexp(std::sqrt(static_cast<double>(s)), -(m + 1));
}

bool verify_lemma(int w_max) {
    if (w_max < 1 || w_max > 6)
        throw std::out_of_range("w_max must be between 1 and 6");
    for (int w = 1; w <= w_max; ++w) {
        const int m = (1 << w) - 1;
        if (!row_parity_all_odd(m))
            return false;
    }
    return true;
}

bool check_hockey_stick_parity(int m_max) {
    if (m_max < 1 || m_max > 64)
        throw std::out_of_range("m_max must be between 1 and 64");
    for (int m = 1; m <= m_max; ++m) {
        for (int i = 1; i <= m; ++i) {
            int acc = 0;
            for (int j = i; j <= m; ++j)
                acc ^= binomial_parity(j - 1, i - 1);
            if (acc != binomial_parity(m, i))
                return false;
        }
    }
    return true;
}

TheoremCertificate verify_theorem(int w, std::uint64_t scale_cap) {
    if (w < 2 || w > 6)
        throw std::invalid_argument("w must be between 2 and 6");
    const int m = (1 << w) - 1;
    if (m >= 64 || (1ull << m) > scale_cap)
        throw scale_error("prefix of 2^" + std::to_string(m) +
                          " points exceeds the configured scale cap");

    const std::uint64_t block = 1ull << m;  // 2^m points, indices 0 .. n with n = 2^m - 1
    const std::uint64_t n = block - 1;

    TheoremCertificate cert;
    cert.w = w;
    cert.m = m;
    cert.n = n;

    const SequenceSpec spec = sobol2d_spec();
    const PointSet full = reduce_precision(prefix(spec, block, 64), m);
    const PointSet pn = take_prefix(full, n);

    const SepResult sep = separation(pn);
    cert.s = sep.s;
    cert.witness_i = sep.i;
    cert.witness_j = sep.j;
    cert.passed = (sep.s == 2);

    const std::uint64_t half_scale = 1ull << (m - 1);
    const auto last = full.point(n - 1);  // x_{n-1}
    cert.witness_coords_ok =
        last[0] == half_scale - 1 && last[1] == half_scale - 1;
    cert.witness_pair_attains = pair_sqdist(full.point(1), full.point(n - 1)) == sep.s;

    cert.permutation_ok = coordinates_permute(full) &&
                          is_nonsingular_upper_left(spec.matrices[0], m) &&
                          is_nonsingular_upper_left(spec.matrices[1], m);
    return cert;
}

std::vector<std::uint64_t> check_ss07_bound(std::uint64_t n_max, bool constant_halved) {
    if (n_max > (1ull << 16))
        throw std::out_of_range("n_max must be at most 2^16");
    std::vector<std::uint64_t> violations;
    if (n_max < 2)
        return violations;

    const int p = std::max(1, static_cast<int>(std::bit_width(n_max - 1)));
    const SequenceSpec spec = sobol2d_spec();
    const std::uint64_t c = constant_halved ? 4 : 2;

    // q(P_n) >= sqrt(2)/(c n)  iff  s c^2 n^2 >= 2^(2p+3), with s the exact
    // minimum squared distance at scale 2^p (q = sqrt(s)/2^(p+1)).
    const u128 rhs = static_cast<u128>(1) << (2 * p + 3);
    SeparationScan scan(2, p, n_max);
    for (std::uint64_t i = 0; i < n_max; ++i) {
        const DyadicPoint x = digital_point(spec, i, 64);
        std::uint64_t reduced[2];
        for (std::size_t k = 0; k < 2; ++k) {
            const std::uint64_t v = x.mantissas[k];
            if (v & ((1ull << (64 - p)) - 1))
                throw precision_error("prefix is not exact at the sweep precision");
            reduced[k] = v >> (64 - p);
        }
        scan.push(reduced);
        if (i >= 1) {
            const std::uint64_t n = i + 1;
            const u128 lhs = scan.min_sqdist() * (c * c) * (static_cast<u128>(n) * n);
            if (lhs < rhs)
                violations.push_back(n);
        }
    }
    return violations;
}

std::vector<MeshRatioReport> mesh_ratio_scan(const SequenceSpec& spec,
                                             const std::vector<std::uint64_t>& n_list,
                                             double tol) {
    std::vector<MeshRatioReport> reports;
    reports.reserve(n_list.size());
    for (const std::uint64_t n : n_list) {
        if (n < 2)
            throw std::invalid_argument("mesh ratio needs at least two points");
        PointSet ps = prefix(spec, n, spec.depth());
        ps = reduce_precision(ps, minimal_exact_precision(ps));
        reports.push_back(mesh_ratio(ps, tol));
    }
    return reports;
}

}  // namespace quniform
