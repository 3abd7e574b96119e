#include "quniform/gf2matrix.hpp"

#include <stdexcept>

namespace quniform {

namespace {

std::uint64_t low_mask(int bits) {
    return bits >= 64 ? ~0ull : ((1ull << bits) - 1);
}

void check_size(int size) {
    if (size < 1 || size > 64)
        throw std::invalid_argument("matrix size must be in [1, 64]");
}

}  // namespace

GenMatrix identity_matrix(int size) {
    check_size(size);
    GenMatrix m;
    m.depth = size;
    m.cols.resize(size);
    for (int j = 0; j < size; ++j)
        m.cols[j] = 1ull << j;
    return m;
}

GenMatrix pascal_matrix(int size) {
    check_size(size);
    GenMatrix m;
    m.depth = size;
    m.cols.resize(size);
    for (int j = 0; j < size; ++j) {
        std::uint64_t col = 0;
        for (int i = 0; i <= j; ++i)
            col |= static_cast<std::uint64_t>(binomial_parity(j, i)) << i;
        m.cols[j] = col;
    }
    return m;
}

int binomial_parity(std::uint64_t n, std::uint64_t k) {
    return (k & n) == k ? 1 : 0;
}

bool row_parity_all_odd(int m) {
    check_size(m);
    GenMatrix pascal = pascal_matrix(m);
    std::uint64_t row_parities = 0;
    for (int j = 0; j < m; ++j)
        row_parities ^= pascal.cols[j];
    return row_parities == low_mask(m);
}

bool is_nonsingular_upper_left(const GenMatrix& m, int size) {
    if (size < 1 || size > m.depth || size > m.width())
        throw std::invalid_argument("submatrix size out of range");
    const std::uint64_t mask = low_mask(size);
    // Column elimination: maintain one basis column per leading bit.
    std::vector<std::uint64_t> pivot(64, 0);
    for (int j = 0; j < size; ++j) {
        std::uint64_t v = m.cols[j] & mask;
        while (v) {
            int bit = 63 - __builtin_clzll(v);
            if (!pivot[bit]) {
                pivot[bit] = v;
                break;
            }
            v ^= pivot[bit];
        }
        if (!v)
            return false;  // column dependent on earlier ones
    }
    return true;
}

}  // namespace quniform
