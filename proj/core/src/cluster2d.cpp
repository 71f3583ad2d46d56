#include "lbscan/cluster2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "lbscan/cell_domain.hpp"

namespace lbscan {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Index of the segment containing pos, or npos. Segments are sorted and
// disjoint.
std::size_t segment_of(const std::vector<DenseSegment>& segments,
                       std::size_t pos) {
    auto it = std::upper_bound(
        segments.begin(), segments.end(), pos,
        [](std::size_t v, const DenseSegment& s) { return v < s.lo; });
    if (it == segments.begin()) return std::size_t(-1);
    --it;
    if (pos > it->hi) return std::size_t(-1);
    return std::size_t(it - segments.begin());
}

}  // namespace

double l_distance(const MiniCluster& a, const MiniCluster& b, std::size_t l) {
    if (l == 0) throw std::invalid_argument("l must be positive");
    if (a.members.empty() || b.members.empty())
        throw std::invalid_argument("l-distance needs members on both sides");

    // Max-heap of the l smallest squared distances seen so far: O(l) memory
    // even when both member sets are large.
    std::priority_queue<double> worst;
    for (const ObservedPoint& pa : a.members) {
        for (const ObservedPoint& pb : b.members) {
            const double d2 = squared_distance(pa.pos, pb.pos);
            if (worst.size() < l) {
                worst.push(d2);
            } else if (d2 < worst.top()) {
                worst.pop();
                worst.push(d2);
            }
        }
    }
    double sum = 0.0;
    const std::size_t count = worst.size();
    while (!worst.empty()) {
        sum += std::sqrt(worst.top());
        worst.pop();
    }
    return sum / double(count);
}

std::vector<Label> merge_mini_clusters(const std::vector<MiniCluster>& minis,
                                       std::size_t l, double threshold) {
    if (l == 0) throw std::invalid_argument("l must be positive");
    if (threshold <= 0.0)
        throw std::invalid_argument("threshold must be positive");

    const std::size_t h = minis.size();
    UnionFind uf(h);
    for (std::size_t i = 0; i < h; ++i) {
        if (minis[i].members.empty()) continue;
        for (std::size_t j = i + 1; j < h; ++j) {
            if (minis[j].members.empty()) continue;
            if (l_distance(minis[i], minis[j], l) < threshold)
                uf.unite(std::uint32_t(i), std::uint32_t(j));
        }
    }

    std::vector<Label> ids(h, kNoise);
    std::vector<Label> root_label(h, kNoise);
    Label next = 0;
    for (std::size_t i = 0; i < h; ++i) {
        const std::uint32_t r = uf.find(std::uint32_t(i));
        if (root_label[r] == kNoise) root_label[r] = next++;
        ids[i] = root_label[r];
    }
    return ids;
}

ClusterModel::ClusterModel(AdaptiveSfc sfc, std::vector<DenseSegment> ranges,
                           std::vector<Label> final_ids, std::size_t merge_l,
                           double merge_threshold)
    : sfc_(std::move(sfc)),
      ranges_(std::move(ranges)),
      final_ids_(std::move(final_ids)),
      merge_l_(merge_l),
      merge_threshold_(merge_threshold) {
    if (final_ids_.size() != ranges_.size())
        throw std::invalid_argument("one final id per range required");
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        const DenseSegment& s = ranges_[i];
        if (s.lo > s.hi || s.hi >= sfc_.leaf_count())
            throw std::invalid_argument("range outside the 1D axis");
        if (i > 0 && ranges_[i - 1].hi >= s.lo)
            throw std::invalid_argument("ranges must be sorted and disjoint");
    }
    // Final ids must read 0,1,2,... in order of first appearance.
    Label fresh = 0;
    for (Label id : final_ids_) {
        if (id < 0 || id > fresh)
            throw std::invalid_argument("final ids must be contiguous");
        if (id == fresh) ++fresh;
    }
    final_count_ = std::size_t(fresh);
}

Label ClusterModel::assign(Point2D p) const {
    if (!sfc_.region().contains(p)) return kNoise;
    const std::size_t idx = segment_of(ranges_, sfc_.to_1d(p));
    return idx == std::size_t(-1) ? kNoise : final_ids_[idx];
}

ClusterModel hdbscan(KnnOracle& oracle, const BoundingBox& region,
                     const DbscanParams& params, const HdbscanConfig& config,
                     Rng& rng) {
    if (params.eps <= 0.0) throw std::invalid_argument("eps must be positive");
    if (params.min_pts == 0)
        throw std::invalid_argument("min_pts must be positive");
    if (params.min_pts > oracle.k())
        throw std::invalid_argument("min_pts must not exceed the oracle's k");

    const double min_cell =
        config.min_cell_size > 0.0 ? config.min_cell_size : params.eps;
    const std::size_t l = config.merge_l > 0
                              ? config.merge_l
                              : std::max<std::size_t>(1, params.min_pts / 2);
    const double threshold = config.merge_threshold > 0.0
                                 ? config.merge_threshold
                                 : 2.0 * params.eps;

    AdaptiveSfc sfc(region, config.curve, config.fanout, min_cell);
    AdaptiveSfcDomain domain(oracle, sfc, params.min_pts);
    std::vector<DenseSegment> segments = hdbscan_1d(domain, config.c, rng);

    // Bind every observed point to the segment whose leaves hold it; the
    // curve is frozen now, so one to_1d per point settles membership.
    std::vector<MiniCluster> minis(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i)
        minis[i].segment = segments[i];
    for (const ObservedPoint& o : oracle.observed()) {
        if (!sfc.region().contains(o.pos)) continue;
        const std::size_t idx = segment_of(segments, sfc.to_1d(o.pos));
        if (idx != std::size_t(-1)) minis[idx].members.push_back(o);
    }

    std::vector<Label> ids = merge_mini_clusters(minis, l, threshold);
    return ClusterModel(std::move(sfc), std::move(segments), std::move(ids), l,
                        threshold);
}

}  // namespace lbscan
