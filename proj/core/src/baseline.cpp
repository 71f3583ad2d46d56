#include "lbscan/baseline.hpp"

namespace lbscan {

BaselineModel::BaselineModel(std::vector<Point2D> points,
                             std::vector<Label> labels,
                             double assign_threshold)
    : points_(std::move(points)),
      labels_(std::move(labels)),
      threshold_(assign_threshold),
      tree_(points_) {
    if (points_.size() != labels_.size())
        throw std::invalid_argument("baseline points/labels mismatch");
}

Label BaselineModel::assign(Point2D p) const {
    if (points_.empty()) return kNoise;
    const auto nn = tree_.knn(p, 1);
    if (nn.empty() || nn[0].dist > threshold_) return kNoise;
    return labels_[nn[0].id];
}

BaselineModel baseline_cluster(KnnOracle& oracle, const BoundingBox& region,
                               const DbscanParams& params,
                               double assign_threshold, Rng& rng) {
    while (oracle.budget().remaining() > 0) {
        const Point2D q{uniform_double(rng, region.x0, region.x1),
                        uniform_double(rng, region.y0, region.y1)};
        oracle.query(q);
    }

    std::vector<Point2D> pts;
    pts.reserve(oracle.observed().size());
    for (const ObservedPoint& op : oracle.observed()) pts.push_back(op.pos);
    const std::vector<Label> labels = dbscan(pts, params);

    // Keep only clustered points; noise carries no assignment information.
    std::vector<Point2D> kept;
    std::vector<Label> kept_labels;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (labels[i] != kNoise) {
            kept.push_back(pts[i]);
            kept_labels.push_back(labels[i]);
        }
    }
    return BaselineModel(std::move(kept), std::move(kept_labels),
                         assign_threshold);
}

}  // namespace lbscan
