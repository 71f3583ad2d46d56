#pragma once

#include <cstdint>
#include <vector>

#include "lbscan/dataset.hpp"
#include "lbscan/geometry.hpp"

namespace lbscan {

struct Neighbor {
    PointId id = 0;
    double dist = 0.0;
};

// Static 2D kd-tree. Exactness is the contract: ties at equal distance are
// broken towards the smaller id, so results match a brute-force scan that
// sorts by (distance, id).
class KdTree {
  public:
    KdTree() = default;
    explicit KdTree(const std::vector<Point2D>& points);

    std::size_t size() const { return points_.size(); }

    // k nearest points to q, ascending by (distance, id). Returns all points
    // when k >= size().
    std::vector<Neighbor> knn(Point2D q, std::size_t k) const;

    // Ids of all points with distance(p, q) <= radius, ascending by id.
    std::vector<PointId> within(Point2D q, double radius) const;

  private:
    struct Node {
        // Leaves hold [begin, end) of order_; internal nodes split on axis.
        std::uint32_t left = 0;
        std::uint32_t right = 0;
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        double split = 0.0;
        std::int8_t axis = -1;  // -1 marks a leaf

        bool leaf() const { return axis < 0; }
    };

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);

    std::vector<Point2D> points_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
};

}  // namespace lbscan
