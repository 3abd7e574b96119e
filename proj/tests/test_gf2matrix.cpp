#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "quniform/gf2matrix.hpp"

using namespace quniform;
using boost::multiprecision::cpp_int;

TEST_CASE("binomial parity matches a big-integer Pascal triangle up to n=256") {
    std::vector<cpp_int> row{1};  // binom(n, .) for the current n
    std::size_t checked = 0;
    for (std::uint64_t n = 0; n <= 256; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            const int expected = static_cast<int>(row[k] & 1);
            if (binomial_parity(n, k) != expected) {
                CAPTURE(n);
                CAPTURE(k);
                REQUIRE(binomial_parity(n, k) == expected);
            }
            ++checked;
        }
        std::vector<cpp_int> next(row.size() + 1, 1);
        for (std::size_t k = 1; k < row.size(); ++k)
            next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }
    CHECK(checked >= 33000);
}

TEST_CASE("binomial parity basics") {
    CHECK(binomial_parity(3, 1) == 1);
    CHECK(binomial_parity(4, 2) == 0);
    for (std::uint64_t n : {0ull, 1ull, 7ull, 64ull, 12345ull})
        CHECK(binomial_parity(n, 0) == 1);
    CHECK(binomial_parity(2, 3) == 0);  // k > n
    CHECK(binomial_parity(0, 1) == 0);
}

TEST_CASE("identity matrix columns") {
    const GenMatrix one = identity_matrix(1);
    REQUIRE(one.width() == 1);
    CHECK(one.cols[0] == 0b1);
    CHECK(one.depth == 1);

    const GenMatrix three = identity_matrix(3);
    CHECK(three.cols == std::vector<std::uint64_t>{0b001, 0b010, 0b100});

    const GenMatrix full = identity_matrix(64);
    REQUIRE(full.width() == 64);
    CHECK(full.cols[63] == 1ull << 63);

    CHECK_THROWS_AS(identity_matrix(0), std::invalid_argument);
    CHECK_THROWS_AS(identity_matrix(65), std::invalid_argument);
}

TEST_CASE("pascal matrix columns") {
    const GenMatrix p3 = pascal_matrix(3);
    CHECK(p3.cols == std::vector<std::uint64_t>{0b001, 0b011, 0b101});

    CHECK(pascal_matrix(1).cols == std::vector<std::uint64_t>{0b1});
    CHECK(pascal_matrix(4).cols[3] == 0b1111);

    CHECK_THROWS_AS(pascal_matrix(0), std::invalid_argument);
    CHECK_THROWS_AS(pascal_matrix(65), std::invalid_argument);
}

TEST_CASE("pascal matrix is upper triangular with unit diagonal") {
    const GenMatrix p = pascal_matrix(64);
    for (int j = 0; j < 64; ++j) {
        CHECK(((p.cols[j] >> j) & 1) == 1);  // diagonal
        if (j < 63)
            CHECK((p.cols[j] >> (j + 1)) == 0);  // nothing below the diagonal
    }
}

TEST_CASE("row parity examples") {
    CHECK(row_parity_all_odd(3));
    CHECK_FALSE(row_parity_all_odd(2));
    CHECK(row_parity_all_odd(7));
    CHECK_FALSE(row_parity_all_odd(4));
    CHECK_FALSE(row_parity_all_odd(5));
    CHECK_FALSE(row_parity_all_odd(6));
    CHECK_THROWS_AS(row_parity_all_odd(0), std::invalid_argument);
    CHECK_THROWS_AS(row_parity_all_odd(65), std::invalid_argument);
}

TEST_CASE("row parity is all-odd exactly when m+1 is a power of two") {
    for (int m = 1; m <= 64; ++m) {
        const bool all_ones_binary = (static_cast<std::uint64_t>(m) &
                                      (static_cast<std::uint64_t>(m) + 1)) == 0;
        CAPTURE(m);
        CHECK(row_parity_all_odd(m) == all_ones_binary);
    }
}

TEST_CASE("hockey-stick parity identity over the full matrix range") {
    for (int m = 1; m <= 64; ++m) {
        for (int i = 1; i <= m; ++i) {
            int acc = 0;
            for (int j = i; j <= m; ++j)
                acc ^= binomial_parity(j - 1, i - 1);
            CAPTURE(m);
            CAPTURE(i);
            CHECK(acc == binomial_parity(m, i));
        }
    }
}

TEST_CASE("nonsingular upper-left blocks") {
    CHECK(is_nonsingular_upper_left(identity_matrix(8), 8));
    CHECK(is_nonsingular_upper_left(pascal_matrix(8), 5));
    for (int m = 1; m <= 64; ++m)
        CHECK(is_nonsingular_upper_left(pascal_matrix(64), m));

    GenMatrix repeated;
    repeated.depth = 2;
    repeated.cols = {0b01, 0b01};
    CHECK_FALSE(is_nonsingular_upper_left(repeated, 2));

    GenMatrix zero_col;
    zero_col.depth = 2;
    zero_col.cols = {0b01, 0b00};
    CHECK_FALSE(is_nonsingular_upper_left(zero_col, 2));

    CHECK_THROWS_AS(is_nonsingular_upper_left(identity_matrix(4), 5), std::invalid_argument);
    CHECK_THROWS_AS(is_nonsingular_upper_left(identity_matrix(4), 0), std::invalid_argument);
}
