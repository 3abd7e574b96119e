#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "quniform/digitalseq.hpp"
#include "quniform/errors.hpp"

using namespace quniform;

namespace {

// Entry-wise matrix-vector product over GF(2): y_i = XOR_j M[i][j] n_j,
// mantissa bit (precision-1-i) = y_i. Deliberately different from the
// column-XOR evaluation in the library.
std::uint64_t oracle_mantissa(const GenMatrix& m, std::uint64_t n, int precision) {
    std::uint64_t mant = 0;
    for (int i = 0; i < precision; ++i) {
        int y = 0;
        for (int j = 0; j < m.width(); ++j) {
            const int digit = static_cast<int>((n >> j) & 1);
            const int entry = static_cast<int>((m.cols[j] >> i) & 1);
            y ^= digit & entry;
        }
        if (y)
            mant |= 1ull << (precision - 1 - i);
    }
    return mant;
}

std::uint64_t reverse_16bits(std::uint64_t n) {
    std::uint64_t rev = 0;
    for (int b = 0; b < 16; ++b)
        rev |= ((n >> b) & 1) << (15 - b);
    return rev;
}

}  // namespace

TEST_CASE("built-in sequence specs") {
    const SequenceSpec sobol = sobol2d_spec();
    REQUIRE(sobol.dim() == 2);
    CHECK(sobol.label == "sobol2d");
    CHECK(sobol.depth() == 64);
    CHECK(sobol.matrices[0].cols[5] == 0b100000);
    CHECK(sobol.matrices[1].cols[2] == 0b101);

    const SequenceSpec vdc = vdc_spec();
    REQUIRE(vdc.dim() == 1);
    CHECK(vdc.label == "vdc");
    CHECK(vdc.depth() == 64);
}

TEST_CASE("known points of the 2D Sobol' sequence") {
    const SequenceSpec spec = sobol2d_spec();

    const DyadicPoint x0 = digital_point(spec, 0, 3);
    CHECK(x0.mantissas == std::vector<std::uint64_t>{0, 0});

    const DyadicPoint x1 = digital_point(spec, 1, 3);
    CHECK(x1.mantissas == std::vector<std::uint64_t>{4, 4});  // (1/2, 1/2)
    CHECK(x1.coord(0) == doctest::Approx(0.5).epsilon(1e-15));

    const DyadicPoint x2 = digital_point(spec, 2, 3);
    CHECK(x2.mantissas == std::vector<std::uint64_t>{2, 6});  // (1/4, 3/4)

    const DyadicPoint x6 = digital_point(spec, 6, 3);
    CHECK(x6.mantissas == std::vector<std::uint64_t>{3, 3});  // (3/8, 3/8)
}

TEST_CASE("van der Corput point is the bit reversal of the index") {
    const DyadicPoint x6 = digital_point(vdc_spec(), 6, 3);
    REQUIRE(x6.dim() == 1);
    CHECK(x6.mantissas[0] == 3);  // 3/8, reversal of 110b
}

TEST_CASE("prefix lists points in sequence order") {
    const SequenceSpec spec = sobol2d_spec();

    const PointSet p1 = prefix(spec, 1, 3);
    REQUIRE(p1.size() == 1);
    CHECK(p1.coords == std::vector<std::uint64_t>{0, 0});

    const PointSet p7 = prefix(spec, 7, 3);
    REQUIRE(p7.size() == 7);
    CHECK(p7.coords ==
          std::vector<std::uint64_t>{0, 0, 4, 4, 2, 6, 6, 2, 1, 5, 5, 1, 3, 3});
}

TEST_CASE("engine agrees with an entry-wise matrix-vector oracle") {
    const SequenceSpec sobol = sobol2d_spec();
    const SequenceSpec vdc = vdc_spec();
    for (std::uint64_t n = 0; n < (1ull << 12); ++n) {
        const DyadicPoint p = digital_point(sobol, n, 20);
        const DyadicPoint v = digital_point(vdc, n, 20);
        CAPTURE(n);
        REQUIRE(p.mantissas[0] == oracle_mantissa(sobol.matrices[0], n, 20));
        REQUIRE(p.mantissas[1] == oracle_mantissa(sobol.matrices[1], n, 20));
        REQUIRE(v.mantissas[0] == oracle_mantissa(vdc.matrices[0], n, 20));
    }
}

TEST_CASE("first coordinate is the bit reversal of the index for n < 2^16") {
    const SequenceSpec spec = sobol2d_spec();
    for (std::uint64_t n = 0; n < (1ull << 16); ++n) {
        const DyadicPoint p = digital_point(spec, n, 16);
        if (p.mantissas[0] != reverse_16bits(n)) {
            CAPTURE(n);
            REQUIRE(p.mantissas[0] == reverse_16bits(n));
        }
    }
    CHECK(digital_point(spec, 1, 16).mantissas[0] == 1ull << 15);
    CHECK(digital_point(spec, 0b1011, 16).mantissas[0] == 0b1101ull << 12);
}

TEST_CASE("precision reduction is exact or refused") {
    const SequenceSpec spec = sobol2d_spec();

    const PointSet p8 = reduce_precision(prefix(spec, 8, 64), 3);
    CHECK(p8.precision == 3);
    CHECK(p8.coords == prefix(spec, 8, 3).coords);

    CHECK_THROWS_AS(reduce_precision(prefix(spec, 9, 64), 3), precision_error);

    const PointSet same = reduce_precision(prefix(spec, 8, 3), 3);
    CHECK(same.coords == prefix(spec, 8, 3).coords);
    CHECK(same.precision == 3);

    CHECK_THROWS_AS(reduce_precision(prefix(spec, 8, 3), 4), std::invalid_argument);
    CHECK_THROWS_AS(reduce_precision(prefix(spec, 8, 3), 0), std::invalid_argument);
}

TEST_CASE("minimal exact precision of sobol2d prefixes") {
    const SequenceSpec spec = sobol2d_spec();
    CHECK(minimal_exact_precision(prefix(spec, 1, 64)) == 1);
    CHECK(minimal_exact_precision(prefix(spec, 2, 64)) == 1);
    CHECK(minimal_exact_precision(prefix(spec, 7, 64)) == 3);
    CHECK(minimal_exact_precision(prefix(spec, 8, 64)) == 3);
    CHECK(minimal_exact_precision(prefix(spec, 9, 64)) == 4);
    CHECK(minimal_exact_precision(prefix(spec, 32768, 64)) == 15);
}

TEST_CASE("each coordinate of the first 2^m points permutes the scaled grid") {
    const SequenceSpec spec = sobol2d_spec();
    for (int m = 1; m <= 12; ++m) {
        const PointSet block = reduce_precision(prefix(spec, 1ull << m, 64), m);
        for (std::size_t k = 0; k < 2; ++k) {
            std::vector<std::uint64_t> vals(block.size());
            for (std::size_t i = 0; i < block.size(); ++i)
                vals[i] = block.coords[i * 2 + k];
            std::sort(vals.begin(), vals.end());
            for (std::size_t i = 0; i < vals.size(); ++i) {
                if (vals[i] != i) {
                    CAPTURE(m);
                    CAPTURE(k);
                    REQUIRE(vals[i] == i);
                }
            }
        }
        // the equivalent linear-algebra statement must agree
        CHECK(is_nonsingular_upper_left(spec.matrices[0], m));
        CHECK(is_nonsingular_upper_left(spec.matrices[1], m));
    }
}

TEST_CASE("point 2^m - 2 sits one grid step inside the center diagonal") {
    const SequenceSpec spec = sobol2d_spec();
    for (int w : {2, 3, 4}) {
        const int m = (1 << w) - 1;
        const std::uint64_t n = (1ull << m) - 2;
        const DyadicPoint x = digital_point(spec, n, m);
        const std::uint64_t expected = (1ull << (m - 1)) - 1;  // 1/2 - 1/2^m
        CAPTURE(w);
        CHECK(x.mantissas[0] == expected);
        CHECK(x.mantissas[1] == expected);
    }
}

TEST_CASE("argument validation") {
    const SequenceSpec spec = sobol2d_spec();
    CHECK_THROWS_AS(digital_point(spec, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(digital_point(spec, 0, 65), std::invalid_argument);
    CHECK_THROWS_AS(prefix(spec, 0, 3), std::invalid_argument);

    SequenceSpec tiny;
    tiny.matrices = {identity_matrix(3)};
    tiny.label = "tiny";
    CHECK(digital_point(tiny, 7, 3).mantissas[0] == 0b111);
    CHECK_THROWS_AS(digital_point(tiny, 8, 3), std::out_of_range);
}
