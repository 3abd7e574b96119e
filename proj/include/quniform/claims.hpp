#pragma once

#include <cstdint>
#include <vector>

#include "quniform/digitalseq.hpp"
#include "quniform/pointgeom.hpp"

namespace quniform {

/// Certificate that the separation radius of the 2D Sobol' prefix P_n,
/// n = 2^m - 1 with m = 2^w - 1, equals 1/(sqrt(2)(n+1)) exactly: the minimum
/// squared distance at scale 2^m is the integer 2. All checks are integer
/// comparisons; no floating-point value decides `passed`.
struct TheoremCertificate {
    int w = 0;
    int m = 0;           // 2^w - 1
    std::uint64_t n = 0; // 2^m - 1
    u128 s = 0;          // exact min squared scaled distance of P_n at scale 2^m
    std::size_t witness_i = 0, witness_j = 0;  // attaining pair from separation
    bool witness_coords_ok = false;   // x_{n-1} has both mantissas 2^(m-1) - 1
    bool witness_pair_attains = false;  // the pair (1, n-1) attains s
    bool permutation_ok = false;  // both coords of the first 2^m points permute {0..2^m-1}
    bool passed = false;          // s == 2

    double q_value() const;  // sqrt(s) / 2^(m+1), for reporting only
};

/// True iff every row of the upper-left (2^w - 1) x (2^w - 1) block of the
/// Pascal matrix has odd parity, for all w = 1..w_max. Computed by direct
/// row summation, not the closed form it certifies.
bool verify_lemma(int w_max);

/// Parity form of the hockey-stick identity:
/// sum_{j=i..m} binom(j-1, i-1) == binom(m, i) (mod 2) for 1 <= i <= m <= m_max.
bool check_hockey_stick_parity(int m_max);

/// Build P_n for n = 2^(2^w - 1) - 1, reduce to scale 2^m exactly, and run the
/// exact separation. scale_cap bounds the number of points generated; w = 5
/// (about 2.1e9 points) is rejected, not attempted.
TheoremCertificate verify_theorem(int w, std::uint64_t scale_cap = 1ull << 20);

/// Sweep q(P_n) for the 2D Sobol' prefixes, 2 <= n <= n_max, against the lower
/// bound sqrt(2)/(2n) (constant_halved=false) or sqrt(2)/(4n) (true). The
/// comparison is exact: q >= sqrt(2)/(c n) iff s * c^2 * n^2 >= 2^(2p+3).
/// Equality counts as satisfied. Returns every violating n.
std::vector<std::uint64_t> check_ss07_bound(std::uint64_t n_max, bool constant_halved);

/// Mesh-ratio reports for the given prefix sizes, each at its minimal exact
/// precision.
std::vector<MeshRatioReport> mesh_ratio_scan(const SequenceSpec& spec,
                                             const std::vector<std::uint64_t>& n_list,
                                             double tol);

}  // namespace quniform
