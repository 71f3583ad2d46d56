#pragma once

#include <vector>

#include "lbscan/dbscan.hpp"
#include "lbscan/kdtree.hpp"
#include "lbscan/oracle.hpp"
#include "lbscan/rng.hpp"

namespace lbscan {

// Assignment function produced by the sample-then-cluster strawman: a point
// takes the label of its nearest observed clustered point, or noise when none
// lies within assign_threshold.
class BaselineModel {
  public:
    BaselineModel() = default;
    BaselineModel(std::vector<Point2D> points, std::vector<Label> labels,
                  double assign_threshold);

    Label assign(Point2D p) const;

    const std::vector<Point2D>& points() const { return points_; }
    const std::vector<Label>& labels() const { return labels_; }
    double assign_threshold() const { return threshold_; }

  private:
    std::vector<Point2D> points_;  // observed points with a cluster label
    std::vector<Label> labels_;
    double threshold_ = 0.0;
    KdTree tree_;
};

// Spends the oracle's entire remaining budget on kNN queries at uniform
// random locations in `region`, then runs the reference clustering over the
// observed points.
BaselineModel baseline_cluster(KnnOracle& oracle, const BoundingBox& region,
                               const DbscanParams& params,
                               double assign_threshold, Rng& rng);

}  // namespace lbscan
