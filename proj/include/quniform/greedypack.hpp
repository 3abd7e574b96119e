#pragma once

#include <cstddef>
#include <vector>

#include "quniform/pointgeom.hpp"

namespace quniform {

/// Growing point list built by farthest-point insertion. Points are real
/// valued (not dyadic); each inserted point maximizes the distance to the
/// nearest existing point up to the certification tolerance.
struct GreedyState {
    RealPointSet points;
    double tol = 1e-7;
};

/// Location maximizing the distance to the nearest existing point, certified
/// within state.tol. Ties resolve to the lexicographically smallest sampled
/// location, so corner optima come out exact.
std::vector<double> greedy_next(const GreedyState& state);

/// Farthest-point sequence: the center of [0,1]^d followed by n-1 greedy
/// insertions. d in {1,2,3}; n capped at 512.
RealPointSet greedy_sequence(std::size_t d, std::size_t n, double tol = 1e-7);

}  // namespace quniform
