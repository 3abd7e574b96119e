#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quniform/digitalseq.hpp"

namespace quniform {

using u128 = unsigned __int128;

std::string to_decimal(u128 v);

/// Exact separation radius of a dyadic point set. `s` is the minimum squared
/// distance between two points measured in grid units (coordinates scaled by
/// 2^precision); the separation radius is q = sqrt(s) / 2^(precision+1).
struct SepResult {
    u128 s = 0;
    int precision = 0;
    std::size_t i = 0, j = 0;  // lexicographically smallest attaining pair, i < j

    double q_value() const;
};

/// Certified enclosure of the fill distance: h_lo <= h <= h_hi with
/// h_hi - h_lo <= tol. `witness` is the sample location attaining h_lo.
struct FillResult {
    double h_lo = 0.0;
    double h_hi = 0.0;
    std::vector<double> witness;
    double tol = 0.0;
};

struct MeshRatioReport {
    std::size_t n = 0;
    SepResult sep;
    FillResult fill;
    double ratio_lo = 0.0;
    double ratio_hi = 0.0;
};

/// Exact closest-pair separation. Uses grid-bucketed pruning for large sets
/// and all-pairs scanning for n <= 1024; all distance comparisons are done in
/// 128-bit integers. Duplicate points yield s = 0.
SepResult separation(const PointSet& ps);

/// All-pairs reference path (exact, quadratic).
SepResult separation_allpairs(const PointSet& ps);

/// Grid-bucketed path (exact, near-linear for well-spread sets).
SepResult separation_grid(const PointSet& ps);

/// Certified fill distance over the closed unit cube via branch and bound on
/// axis-aligned boxes, with a spatial grid index for nearest-point queries.
FillResult fill_distance(const PointSet& ps, double tol);

MeshRatioReport mesh_ratio(const PointSet& ps, double tol);

/// Point set with real-valued coordinates in [0,1]^d (used by the greedy
/// packing baseline, where points are not dyadic).
struct RealPointSet {
    std::size_t dim = 0;
    std::vector<double> coords;

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * dim, dim};
    }
    void push(std::span<const double> p) { coords.insert(coords.end(), p.begin(), p.end()); }
};

struct RealSepResult {
    double s = 0.0;  // minimum squared distance
    std::size_t i = 0, j = 0;

    double q_value() const;
};

struct RealMeshRatioReport {
    std::size_t n = 0;
    RealSepResult sep;
    FillResult fill;
    double ratio_lo = 0.0;
    double ratio_hi = 0.0;
};

RealSepResult separation(const RealPointSet& ps);
FillResult fill_distance(const RealPointSet& ps, double tol);
RealMeshRatioReport mesh_ratio(const RealPointSet& ps, double tol);

/// Farthest-point query: location of the (tol-certified) maximizer of the
/// distance to the nearest set point. Same branch and bound as fill_distance
/// but additionally samples box corners, so optima on the cube boundary are
/// returned exactly; ties resolve to the lexicographically smallest sampled
/// location.
FillResult farthest_point(const RealPointSet& ps, double tol);

/// Running minimum pairwise squared distance over a growing prefix, for
/// sweeps that need q(P_n) for every n. Exact in 128-bit integers. Tracks a
/// witness pair attaining the minimum (not necessarily the lexicographically
/// smallest one; use separation() when the canonical witness matters).
class SeparationScan {
public:
    /// expected_count sizes the hash grid; precision as in PointSet.
    SeparationScan(std::size_t dim, int precision, std::uint64_t expected_count);

    void push(std::span<const std::uint64_t> mantissas);

    std::size_t size() const { return count_; }
    bool has_pair() const { return count_ >= 2; }
    u128 min_sqdist() const { return best_; }
    std::pair<std::size_t, std::size_t> witness() const { return {wi_, wj_}; }

private:
    std::size_t dim_;
    int precision_;
    std::uint64_t cell_;      // cell edge in grid units
    std::uint64_t max_cell_;  // largest per-axis cell coordinate
    std::vector<std::uint64_t> coords_;  // inserted points, flat
    // cells chain their member points: packed cell key -> most recent index,
    // then bucket_next_ links back through earlier members
    std::unordered_map<std::uint64_t, std::uint32_t> bucket_head_;
    std::vector<std::uint32_t> bucket_next_;
    std::size_t count_ = 0;
    u128 best_ = ~static_cast<u128>(0);
    std::size_t wi_ = 0, wj_ = 0;
};

}  // namespace quniform
