#pragma once

#include <cstdint>
#include <vector>

namespace quniform {

/// Generating matrix over GF(2), stored column-wise as 64-bit masks.
///
/// cols[j] bit i holds the entry in row i, column j (both 0-based). Only the
/// low `depth` bits of each column may be set; rows and columns are capped at
/// 64 so a column fits in one machine word.
struct GenMatrix {
    std::vector<std::uint64_t> cols;
    int depth = 0;

    int width() const { return static_cast<int>(cols.size()); }
};

/// size x size identity matrix, 1 <= size <= 64.
GenMatrix identity_matrix(int size);

/// size x size Pascal matrix over GF(2): entry (i,j) = binom(j,i) mod 2
/// (0-based). Upper triangular with unit diagonal.
GenMatrix pascal_matrix(int size);

/// binom(n,k) mod 2. By Lucas' theorem this is 1 iff the binary digits of k
/// are a subset of the digits of n; in particular 0 whenever k > n.
int binomial_parity(std::uint64_t n, std::uint64_t k);

/// True iff every row of the upper-left m x m block of the GF(2) Pascal
/// matrix has an odd number of ones. Computed by direct column XOR, not via
/// any closed form, so it can serve as an independent check of the parity
/// property.
bool row_parity_all_odd(int m);

/// True iff the upper-left m x m block of M is invertible over GF(2).
bool is_nonsingular_upper_left(const GenMatrix& m, int size);

}  // namespace quniform
