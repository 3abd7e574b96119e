#include "quniform/pointgeom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "quniform/errors.hpp"

namespace quniform {

namespace {

constexpr std::size_t kMaxDim = 8;
constexpr std::size_t kAllPairsThreshold = 1024;

u128 sq_diff(std::uint64_t a, std::uint64_t b) {
    std::uint64_t d = a > b ? a - b : b - a;
    return static_cast<u128>(d) * d;
}

u128 sqdist(const std::uint64_t* a, const std::uint64_t* b, std::size_t dim) {
    u128 s = 0;
    for (std::size_t k = 0; k < dim; ++k)
        s += sq_diff(a[k], b[k]);
    return s;
}

double sqdist_real(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

void check_geometry_input(const PointSet& ps) {
    if (ps.dim < 1 || ps.dim > kMaxDim)
        throw std::invalid_argument("geometry supports dimensions 1 through 8");
    if (2 * ps.precision + std::bit_width(ps.dim) > 127)
        throw std::invalid_argument("precision too large for 128-bit squared distances");
}

std::uint64_t ceil_sqrt(u128 v) {
    if (v == 0)
        return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && static_cast<u128>(r - 1) * (r - 1) >= v)
        --r;
    while (static_cast<u128>(r) * r < v)
        ++r;
    return r;
}

struct PairBest {
    u128 s = ~static_cast<u128>(0);
    std::size_t i = 0, j = 0;

    void offer(u128 s2, std::size_t a, std::size_t b) {
        if (s2 < s || (s2 == s && (a < i || (a == i && b < j)))) {
            s = s2;
            i = a;
            j = b;
        }
    }
};

// Morton key from the top bits of each coordinate; used only to order points
// so that consecutive points are spatially close.
std::uint64_t morton_key(const std::uint64_t* c, std::size_t dim, int precision) {
    int b = std::min<int>(precision, static_cast<int>(64 / dim));
    if (b < 1)
        b = 1;
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < dim; ++k) {
        std::uint64_t v = precision >= b ? c[k] >> (precision - b) : c[k] << (b - precision);
        for (int t = 0; t < b; ++t)
            key |= ((v >> t) & 1ull) << (t * dim + k);
    }
    return key;
}

}  // namespace

std::string to_decimal(u128 v) {
    if (v == 0)
        return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

double SepResult::q_value() const {
    return std::ldexp(std::sqrt(static_cast<double>(s)), -(precision + 1));
}

double RealSepResult::q_value() const {
    return 0.5 * std::sqrt(s);
}

SepResult separation_allpairs(const PointSet& ps) {
    const std::size_t n = ps.size();
    if (n < 2)
        throw std::invalid_argument("separation needs at least two points");
    check_geometry_input(ps);
    PairBest best;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best.offer(sqdist(ps.point(i).data(), ps.point(j).data(), ps.dim), i, j);
    return {best.s, ps.precision, best.i, best.j};
}

SepResult separation_grid(const PointSet& ps) {
    const std::size_t n = ps.size();
    if (n < 2)
        throw std::invalid_argument("separation needs at least two points");
    check_geometry_input(ps);
    const std::size_t dim = ps.dim;

    // Upper bound on the closest-pair distance from Morton-adjacent pairs.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    {
        std::vector<std::uint64_t> keys(n);
        for (std::size_t i = 0; i < n; ++i)
            keys[i] = morton_key(ps.point(i).data(), dim, ps.precision);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
        });
    }
    u128 bound = ~static_cast<u128>(0);
    for (std::size_t t = 0; t + 1 < n; ++t) {
        u128 s = sqdist(ps.point(order[t]).data(), ps.point(order[t + 1]).data(), dim);
        bound = std::min(bound, s);
    }
    const std::uint64_t cell = std::max<std::uint64_t>(1, ceil_sqrt(bound));

    // Bucket points by cell; any pair at distance <= cell lies in the same or
    // an adjacent cell, and the true closest pair is within `cell` by
    // construction of the bound.
    std::vector<std::uint64_t> cc(n * dim);
    for (std::size_t i = 0; i < n * dim; ++i)
        cc[i] = ps.coords[i] / cell;
    std::vector<std::uint32_t> by_cell(order);
    auto cell_less = [&](std::uint32_t a, std::uint32_t b) {
        for (std::size_t k = 0; k < dim; ++k) {
            if (cc[a * dim + k] != cc[b * dim + k])
                return cc[a * dim + k] < cc[b * dim + k];
        }
        return a < b;
    };
    std::sort(by_cell.begin(), by_cell.end(), cell_less);

    auto lower = [&](const std::uint64_t* target) {
        return std::lower_bound(by_cell.begin(), by_cell.end(), target,
                                [&](std::uint32_t a, const std::uint64_t* t) {
                                    for (std::size_t k = 0; k < dim; ++k) {
                                        if (cc[a * dim + k] != t[k])
                                            return cc[a * dim + k] < t[k];
                                    }
                                    return false;
                                });
    };

    PairBest best;
    std::uint64_t target[kMaxDim];
    int offset[kMaxDim];
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t* ci = cc.data() + i * dim;
        std::fill(offset, offset + dim, -1);
        while (true) {
            bool in_range = true;
            for (std::size_t k = 0; k < dim && in_range; ++k) {
                if (offset[k] < 0 && ci[k] == 0)
                    in_range = false;
                else
                    target[k] = ci[k] + offset[k];
            }
            if (in_range) {
                for (auto it = lower(target); it != by_cell.end(); ++it) {
                    const std::size_t j = *it;
                    if (std::memcmp(cc.data() + j * dim, target, dim * sizeof(std::uint64_t)) != 0)
                        break;
                    if (j > i)
                        best.offer(sqdist(ps.point(i).data(), ps.point(j).data(), dim), i, j);
                }
            }
            // advance odometer over {-1,0,1}^dim
            std::size_t k = 0;
            while (k < dim && offset[k] == 1)
                offset[k++] = -1;
            if (k == dim)
                break;
            ++offset[k];
        }
    }
    return {best.s, ps.precision, best.i, best.j};
}

SepResult separation(const PointSet& ps) {
    return ps.size() <= kAllPairsThreshold ? separation_allpairs(ps) : separation_grid(ps);
}

RealSepResult separation(const RealPointSet& ps) {
    const std::size_t n = ps.size();
    if (n < 2)
        throw std::invalid_argument("separation needs at least two points");
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = sqdist_real(ps.point(i).data(), ps.point(j).data(), ps.dim);
            if (s < best) {
                best = s;
                bi = i;
                bj = j;
            }
        }
    }
    return {best, bi, bj};
}

namespace {

// Uniform grid over [0,1]^dim answering exact nearest-point queries by
// expanding Chebyshev ring search.
class RealGrid {
public:
    void build(const double* pts, std::size_t n, std::size_t dim) {
        pts_ = pts;
        n_ = n;
        dim_ = dim;
        res_ = std::max<std::size_t>(1, static_cast<std::size_t>(
                                            std::llround(std::pow(static_cast<double>(n), 1.0 / dim))));
        // keep the cell table small
        while (res_ > 1 && std::pow(static_cast<double>(res_), static_cast<double>(dim)) > 4e6)
            --res_;
        std::size_t cells = 1;
        for (std::size_t k = 0; k < dim; ++k)
            cells *= res_;
        start_.assign(cells + 1, 0);
        items_.resize(n);
        std::vector<std::uint32_t> counts(cells, 0);
        for (std::size_t i = 0; i < n; ++i)
            ++counts[cell_index(pts + i * dim)];
        for (std::size_t c = 0; c < cells; ++c)
            start_[c + 1] = start_[c] + counts[c];
        std::vector<std::uint32_t> cursor(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < n; ++i)
            items_[cursor[cell_index(pts + i * dim)]++] = static_cast<std::uint32_t>(i);
    }

    double min_sqdist(const double* q) const {
        long qc[kMaxDim];
        for (std::size_t k = 0; k < dim_; ++k)
            qc[k] = clamp_cell(q[k]);
        double best = std::numeric_limits<double>::infinity();
        const double cellw = 1.0 / static_cast<double>(res_);
        long off[kMaxDim];
        for (long r = 0; r <= static_cast<long>(res_); ++r) {
            if (r > 0) {
                double lb = static_cast<double>(r - 1) * cellw;
                if (lb * lb >= best)
                    break;
            }
            scan_ring(q, qc, r, off, 0, false, best);
        }
        return best;
    }

private:
    const double* pts_ = nullptr;
    std::size_t n_ = 0, dim_ = 0, res_ = 1;
    std::vector<std::uint32_t> start_;
    std::vector<std::uint32_t> items_;

    long clamp_cell(double x) const {
        auto c = static_cast<long>(x * static_cast<double>(res_));
        return std::clamp(c, 0l, static_cast<long>(res_) - 1);
    }

    std::size_t cell_index(const double* p) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < dim_; ++k)
            idx = idx * res_ + static_cast<std::size_t>(clamp_cell(p[k]));
        return idx;
    }

    // visit cells with Chebyshev offset exactly r from qc
    void scan_ring(const double* q, const long* qc, long r, long* off, std::size_t k,
                   bool has_r, double& best) const {
        if (k == dim_) {
            if (!has_r && r != 0)
                return;
            std::size_t idx = 0;
            for (std::size_t t = 0; t < dim_; ++t)
                idx = idx * res_ + static_cast<std::size_t>(qc[t] + off[t]);
            for (std::uint32_t it = start_[idx]; it < start_[idx + 1]; ++it) {
                double s = sqdist_real(q, pts_ + items_[it] * dim_, dim_);
                best = std::min(best, s);
            }
            return;
        }
        const bool last = (k + 1 == dim_);
        for (long o = -r; o <= r; ++o) {
            if (last && !has_r && std::labs(o) != r && r != 0)
                continue;  // at least one axis must sit on the ring
            long c = qc[k] + o;
            if (c < 0 || c >= static_cast<long>(res_))
                continue;
            off[k] = o;
            scan_ring(q, qc, r, off, k + 1, has_r || std::labs(o) == r, best);
        }
    }
};

bool lex_less(const double* a, const double* b, std::size_t dim) {
    for (std::size_t k = 0; k < dim; ++k) {
        if (a[k] != b[k])
            return a[k] < b[k];
    }
    return false;
}

struct Box {
    std::array<double, kMaxDim> lo, hi;
    double upper = 0.0;
    std::uint64_t seq = 0;
};

struct BoxOrder {
    bool operator()(const Box& a, const Box& b) const {
        if (a.upper != b.upper)
            return a.upper < b.upper;
        return a.seq > b.seq;  // FIFO among equal bounds
    }
};

// Branch and bound for the maximum of mind(x) = min_i |x - x_i| over the
// closed unit cube. For a box with center c and circumradius r, mind(c) is a
// valid lower bound and mind(c) + r a valid upper bound (mind is
// 1-Lipschitz). Boxes whose upper bound cannot beat the certified maximum by
// more than tol are retired, keeping only their bound.
FillResult fill_core(const double* pts, std::size_t n, std::size_t dim, double tol,
                     bool sample_corners) {
    if (n == 0)
        throw std::invalid_argument("fill distance needs at least one point");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("geometry supports dimensions 1 through 8");

    RealGrid grid;
    grid.build(pts, n, dim);

    double best = -1.0;
    std::vector<double> witness(dim, 0.0);
    auto consider = [&](const double* x, double v) {
        if (v > best) {
            best = v;
            witness.assign(x, x + dim);
        } else if (v == best && lex_less(x, witness.data(), dim)) {
            witness.assign(x, x + dim);
        }
    };

    std::uint64_t seq = 0;
    auto evaluate = [&](Box& b) {
        double center[kMaxDim];
        double r2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            center[k] = 0.5 * (b.lo[k] + b.hi[k]);
            double half = 0.5 * (b.hi[k] - b.lo[k]);
            r2 += half * half;
        }
        double mind = std::sqrt(grid.min_sqdist(center));
        consider(center, mind);
        if (sample_corners) {
            double corner[kMaxDim];
            for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
                for (std::size_t k = 0; k < dim; ++k)
                    corner[k] = (mask >> k) & 1 ? b.hi[k] : b.lo[k];
                consider(corner, std::sqrt(grid.min_sqdist(corner)));
            }
        }
        b.upper = mind + std::sqrt(r2);
        b.seq = seq++;
    };

    std::priority_queue<Box, std::vector<Box>, BoxOrder> heap;
    double retired_hi = -1.0;
    auto enqueue = [&](Box& b) {
        if (b.upper > best + tol)
            heap.push(b);
        else
            retired_hi = std::max(retired_hi, b.upper);
    };

    Box root;
    root.lo.fill(0.0);
    root.hi.fill(0.0);
    for (std::size_t k = 0; k < dim; ++k)
        root.hi[k] = 1.0;
    evaluate(root);
    enqueue(root);

    while (!heap.empty()) {
        Box top = heap.top();
        if (top.upper <= best + tol)
            break;
        heap.pop();

        std::size_t axis = 0;
        for (std::size_t k = 1; k < dim; ++k) {
            if (top.hi[k] - top.lo[k] > top.hi[axis] - top.lo[axis])
                axis = k;
        }
        const double mid = 0.5 * (top.lo[axis] + top.hi[axis]);
        Box left = top;
        left.hi[axis] = mid;
        Box right = top;
        right.lo[axis] = mid;
        evaluate(left);
        enqueue(left);
        evaluate(right);
        enqueue(right);
    }

    double h_hi = std::max(best, retired_hi);
    if (!heap.empty())
        h_hi = std::max(h_hi, heap.top().upper);
    return {best, h_hi, std::move(witness), tol};
}

std::vector<double> to_real(const PointSet& ps) {
    std::vector<double> out(ps.coords.size());
    for (std::size_t i = 0; i < ps.coords.size(); ++i)
        out[i] = std::ldexp(static_cast<double>(ps.coords[i]), -ps.precision);
    return out;
}

}  // namespace

FillResult fill_distance(const PointSet& ps, double tol) {
    if (ps.size() == 0)
        throw std::invalid_argument("fill distance needs at least one point");
    std::vector<double> pts = to_real(ps);
    return fill_core(pts.data(), ps.size(), ps.dim, tol, false);
}

FillResult fill_distance(const RealPointSet& ps, double tol) {
    return fill_core(ps.coords.data(), ps.size(), ps.dim, tol, false);
}

FillResult farthest_point(const RealPointSet& ps, double tol) {
    return fill_core(ps.coords.data(), ps.size(), ps.dim, tol, true);
}

MeshRatioReport mesh_ratio(const PointSet& ps, double tol) {
    if (ps.size() < 2)
        throw std::invalid_argument("mesh ratio needs at least two points");
    SepResult sep = separation(ps);
    if (sep.s == 0)
        throw degenerate_error("duplicate points: separation radius is zero");
    FillResult fill = fill_distance(ps, tol);
    const double q = sep.q_value();
    return {ps.size(), sep, fill, fill.h_lo / q, fill.h_hi / q};
}

RealMeshRatioReport mesh_ratio(const RealPointSet& ps, double tol) {
    if (ps.size() < 2)
        throw std::invalid_argument("mesh ratio needs at least two points");
    RealSepResult sep = separation(ps);
    if (sep.s == 0.0)
        throw degenerate_error("duplicate points: separation radius is zero");
    FillResult fill = fill_distance(ps, tol);
    const double q = sep.q_value();
    return {ps.size(), sep, fill, fill.h_lo / q, fill.h_hi / q};
}

SeparationScan::SeparationScan(std::size_t dim, int precision, std::uint64_t expected_count)
    : dim_(dim), precision_(precision) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("separation scan supports dimensions 1 through 3");
    if (precision < 1 || 2 * precision + std::bit_width(dim) > 127)
        throw std::invalid_argument("precision out of range for exact squared distances");
    // cell edge near the expected final spacing 2^p / expected^(1/d)
    double k = std::pow(static_cast<double>(std::max<std::uint64_t>(expected_count, 2)),
                        1.0 / static_cast<double>(dim));
    double scale = std::ldexp(1.0, precision);
    cell_ = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(scale / k));
    const std::uint64_t max_coord = precision >= 64 ? ~0ull : (1ull << precision) - 1;
    // packed cell keys carry 21 bits per axis
    while (max_coord / cell_ >= (1ull << 21))
        cell_ *= 2;
    max_cell_ = max_coord / cell_;
}

void SeparationScan::push(std::span<const std::uint64_t> mantissas) {
    if (mantissas.size() != dim_)
        throw std::invalid_argument("point dimension does not match the scan");
    const auto idx = static_cast<std::uint32_t>(count_);

    std::uint64_t cells[3] = {0, 0, 0};
    for (std::size_t k = 0; k < dim_; ++k)
        cells[k] = mantissas[k] / cell_;
    auto pack = [&](const std::int64_t* off) {
        std::uint64_t key = 0;
        for (std::size_t k = 0; k < dim_; ++k)
            key |= (cells[k] + static_cast<std::uint64_t>(off[k])) << (21 * k);
        return key;
    };

    if (count_ > 0) {
        std::int64_t off[3] = {0, 0, 0};
        std::int64_t lo[3], hi[3];
        for (std::uint64_t r = 0;; ++r) {
            if (r > max_cell_ + 1)
                break;
            if (r > 0 && best_ != ~static_cast<u128>(0)) {
                // points in ring r are at least (r-1) whole cells away
                u128 gap = static_cast<u128>(r - 1) * cell_;
                if (gap * gap >= best_)
                    break;
            }
            for (std::size_t k = 0; k < dim_; ++k) {
                auto c = static_cast<std::int64_t>(cells[k]);
                lo[k] = std::max<std::int64_t>(-c, -static_cast<std::int64_t>(r));
                hi[k] = std::min<std::int64_t>(static_cast<std::int64_t>(max_cell_) - c,
                                               static_cast<std::int64_t>(r));
                off[k] = lo[k];
            }
            while (true) {
                std::int64_t cheb = 0;
                for (std::size_t k = 0; k < dim_; ++k)
                    cheb = std::max(cheb, std::labs(off[k]));
                if (cheb == static_cast<std::int64_t>(r)) {
                    auto found = bucket_head_.find(pack(off));
                    if (found != bucket_head_.end()) {
                        for (std::uint32_t j = found->second; j != UINT32_MAX;
                             j = bucket_next_[j]) {
                            u128 s = sqdist(mantissas.data(), coords_.data() + j * dim_, dim_);
                            if (s < best_ || (s == best_ && j < wi_)) {
                                best_ = s;
                                wi_ = j;
                                wj_ = idx;
                            }
                        }
                    }
                }
                std::size_t k = 0;
                while (k < dim_ && off[k] == hi[k]) {
                    off[k] = lo[k];
                    ++k;
                }
                if (k == dim_)
                    break;
                ++off[k];
            }
        }
    }

    coords_.insert(coords_.end(), mantissas.begin(), mantissas.end());
    std::int64_t zero[3] = {0, 0, 0};
    auto [it, inserted] = bucket_head_.try_emplace(pack(zero), idx);
    bucket_next_.push_back(inserted ? UINT32_MAX : it->second);
    it->second = idx;
    ++count_;
}

}  // namespace quniform
