#include "quniform/greedypack.hpp"

#include <stdexcept>
#include <string>

#include "quniform/errors.hpp"

namespace quniform {

constexpr std::size_t kGreedyCap = 512;

std::vector<double> greedy_next(const GreedyState& state) {
    if (state.points.size() == 0)
        throw std::invalid_argument("greedy insertion needs at least one existing point");
    return farthest_point(state.points, state.tol).witness;
}

RealPointSet greedy_sequence(std::size_t d, std::size_t n, double tol) {
    if (d < 1 || d > 3)
        throw std::invalid_argument("greedy packing supports dimensions 1 through 3");
    if (n < 1)
        throw std::invalid_argument("sequence length must be positive");
    if (n > kGreedyCap)
        throw scale_error("greedy sequence length capped at " + std::to_string(kGreedyCap));
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");

    GreedyState state;
    state.tol = tol;
    state.points.dim = d;
    std::vector<double> center(d, 0.5);
    state.points.push(center);
    while (state.points.size() < n) {
        const std::vector<double> next = greedy_next(state);
        state.points.push(next);
    }
    return state.points;
}

}  // namespace quniform
