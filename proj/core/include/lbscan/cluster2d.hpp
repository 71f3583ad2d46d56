#pragma once

#include <cstdint>
#include <vector>

#include "lbscan/adaptive_sfc.hpp"
#include "lbscan/cluster1d.hpp"
#include "lbscan/dbscan.hpp"
#include "lbscan/oracle.hpp"
#include "lbscan/rng.hpp"

namespace lbscan {

// Dense 1D range plus the observed points that landed in its leaves. One true
// 2D cluster usually shatters into several of these; merging glues them back.
struct MiniCluster {
    DenseSegment segment;
    std::vector<ObservedPoint> members;
};

// Mean of the l smallest cross distances between the two member sets (all of
// them when fewer than l pairs exist). Both sets must be non-empty.
double l_distance(const MiniCluster& a, const MiniCluster& b, std::size_t l);

// Connected components of the graph joining mini-clusters whose l-distance
// falls strictly below threshold. Returns one final id per mini-cluster;
// ids are 0..h'-1 in order of first appearance. Memberless mini-clusters
// merge with nothing.
std::vector<Label> merge_mini_clusters(const std::vector<MiniCluster>& minis,
                                       std::size_t l, double threshold);

// The finished assignment function: a frozen curve, the dense ranges found on
// its 1D axis, and the range -> final cluster map. Assignment runs entirely on
// this object; it never issues oracle queries.
class ClusterModel {
  public:
    ClusterModel(AdaptiveSfc sfc, std::vector<DenseSegment> ranges,
                 std::vector<Label> final_ids, std::size_t merge_l,
                 double merge_threshold);

    // Final cluster id of the range whose leaves contain p, else noise.
    // Points outside the root region are noise.
    Label assign(Point2D p) const;

    const AdaptiveSfc& sfc() const { return sfc_; }
    const std::vector<DenseSegment>& ranges() const { return ranges_; }
    const std::vector<Label>& final_ids() const { return final_ids_; }
    std::size_t mini_count() const { return ranges_.size(); }
    std::size_t final_count() const { return final_count_; }
    std::size_t merge_l() const { return merge_l_; }
    double merge_threshold() const { return merge_threshold_; }

  private:
    AdaptiveSfc sfc_;
    std::vector<DenseSegment> ranges_;  // sorted, pairwise disjoint
    std::vector<Label> final_ids_;      // parallel to ranges_
    std::size_t final_count_ = 0;
    std::size_t merge_l_ = 0;
    double merge_threshold_ = 0.0;
};

struct HdbscanConfig {
    CurveKind curve = CurveKind::hilbert;
    int fanout = 4;
    double min_cell_size = 0.0;   // 0: use eps
    std::size_t c = 3;            // dense-run verification samples
    std::size_t merge_l = 0;      // 0: use max(1, min_pts / 2)
    double merge_threshold = 0.0; // 0: use 2 * eps
};

// Budget-limited clustering: grows an adaptive curve over `region`, discovers
// dense 1D segments through the oracle, merges them, and returns the model.
// Budget exhaustion is not an error; the model built so far is returned.
ClusterModel hdbscan(KnnOracle& oracle, const BoundingBox& region,
                     const DbscanParams& params, const HdbscanConfig& config,
                     Rng& rng);

}  // namespace lbscan
