#include "quniform/digitalseq.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "quniform/errors.hpp"

namespace quniform {

namespace {

std::uint64_t reverse_bits64(std::uint64_t v) {
    v = ((v >> 1) & 0x5555555555555555ull) | ((v & 0x5555555555555555ull) << 1);
    v = ((v >> 2) & 0x3333333333333333ull) | ((v & 0x3333333333333333ull) << 2);
    v = ((v >> 4) & 0x0f0f0f0f0f0f0f0full) | ((v & 0x0f0f0f0f0f0f0f0full) << 4);
    v = ((v >> 8) & 0x00ff00ff00ff00ffull) | ((v & 0x00ff00ff00ff00ffull) << 8);
    v = ((v >> 16) & 0x0000ffff0000ffffull) | ((v & 0x0000ffff0000ffffull) << 16);
    return (v >> 32) | (v << 32);
}

}  // namespace

double DyadicPoint::coord(std::size_t j) const {
    return std::ldexp(static_cast<double>(mantissas[j]), -precision);
}

SequenceSpec sobol2d_spec() {
    return SequenceSpec{{identity_matrix(64), pascal_matrix(64)}, "sobol2d"};
}

SequenceSpec vdc_spec() {
    return SequenceSpec{{identity_matrix(64)}, "vdc"};
}

DyadicPoint digital_point(const SequenceSpec& spec, std::uint64_t n, int precision) {
    if (spec.matrices.empty())
        throw std::invalid_argument("sequence spec has no generating matrices");
    if (precision < 1 || precision > spec.depth())
        throw std::invalid_argument("precision must be in [1, matrix depth]");

    DyadicPoint pt;
    pt.precision = precision;
    pt.mantissas.reserve(spec.matrices.size());
    for (const GenMatrix& c : spec.matrices) {
        if (c.width() < 64 && (n >> c.width()) != 0)
            throw std::out_of_range("index does not fit the matrix width");
        std::uint64_t digits = 0;
        for (std::uint64_t rest = n; rest != 0; rest &= rest - 1)
            digits ^= c.cols[std::countr_zero(rest)];
        // digit bit t carries value 2^-(t+1); mantissa bit (p-1-t) at scale 2^p
        std::uint64_t mant = reverse_bits64(digits) >> (64 - precision);
        pt.mantissas.push_back(mant);
    }
    return pt;
}

PointSet prefix(const SequenceSpec& spec, std::uint64_t n, int precision) {
    if (n == 0)
        throw std::invalid_argument("prefix length must be positive");
    PointSet ps;
    ps.dim = spec.dim();
    ps.precision = precision;
    ps.coords.reserve(n * ps.dim);
    for (std::uint64_t i = 0; i < n; ++i) {
        DyadicPoint pt = digital_point(spec, i, precision);
        ps.push(pt.mantissas);
    }
    return ps;
}

PointSet reduce_precision(const PointSet& ps, int target) {
    if (target < 1 || target > ps.precision)
        throw std::invalid_argument("target precision must be in [1, current precision]");
    const int drop = ps.precision - target;
    if (drop == 0)
        return ps;
    const std::uint64_t dropped_mask = (1ull << drop) - 1;
    PointSet out;
    out.dim = ps.dim;
    out.precision = target;
    out.coords.reserve(ps.coords.size());
    for (std::uint64_t m : ps.coords) {
        if (m & dropped_mask)
            throw precision_error("nonzero bit dropped: target precision too small");
        out.coords.push_back(m >> drop);
    }
    return out;
}

int minimal_exact_precision(const PointSet& ps) {
    int needed = 1;
    for (std::uint64_t m : ps.coords) {
        if (m == 0)
            continue;
        int bits = ps.precision - std::countr_zero(m);
        if (bits > needed)
            needed = bits;
    }
    return needed;
}

}  // namespace quniform
