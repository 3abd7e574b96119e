#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quniform/gf2matrix.hpp"

namespace quniform {

/// A point of [0,1)^d in exact dyadic arithmetic: coordinate j has the value
/// mantissas[j] / 2^precision, with mantissas[j] < 2^precision.
struct DyadicPoint {
    std::vector<std::uint64_t> mantissas;
    int precision = 0;

    std::size_t dim() const { return mantissas.size(); }
    double coord(std::size_t j) const;
};

/// Ordered prefix of a sequence. All points share the same dimension and
/// precision; index 0 is the zero-th point of the sequence. Coordinates are
/// stored flat, row-major.
struct PointSet {
    std::size_t dim = 0;
    int precision = 0;
    std::vector<std::uint64_t> coords;

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const std::uint64_t> point(std::size_t i) const {
        return {coords.data() + i * dim, dim};
    }
    void push(std::span<const std::uint64_t> mantissas) {
        coords.insert(coords.end(), mantissas.begin(), mantissas.end());
    }
};

/// Per-coordinate generating matrices of a base-2 digital sequence. All
/// matrices must share the same depth.
struct SequenceSpec {
    std::vector<GenMatrix> matrices;
    std::string label;

    std::size_t dim() const { return matrices.size(); }
    int depth() const { return matrices.empty() ? 0 : matrices.front().depth; }
};

/// Two-dimensional Sobol' sequence: identity and Pascal generating matrices
/// at full 64-bit depth.
SequenceSpec sobol2d_spec();

/// One-dimensional van der Corput sequence (identity matrix, i.e. the
/// bit-reversal / radical-inverse sequence).
SequenceSpec vdc_spec();

/// n-th point of the sequence. Coordinate j is the GF(2) matrix-vector
/// product of C_j with the binary digits of n, read as a dyadic fraction and
/// truncated to `precision` bits.
DyadicPoint digital_point(const SequenceSpec& spec, std::uint64_t n, int precision);

/// First n points, in sequence order.
PointSet prefix(const SequenceSpec& spec, std::uint64_t n, int precision);

/// Drop low bits down to `target` precision. Every dropped bit must be zero;
/// a nonzero dropped bit raises precision_error, meaning the target is too
/// coarse to represent the set exactly.
PointSet reduce_precision(const PointSet& ps, int target);

/// Smallest precision at which the set is exactly representable (at least 1).
int minimal_exact_precision(const PointSet& ps);

}  // namespace quniform
