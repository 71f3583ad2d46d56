#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lbscan/geometry.hpp"
#include "lbscan/oracle.hpp"
#include "lbscan/sfc.hpp"

namespace lbscan {

// Outcome of splitting one leaf: the cell at `position` on the 1D axis was
// replaced by `inserted` consecutive cells. Any in-flight 1D index other than
// `position` itself is remapped with shift().
struct Refinement {
    std::size_t position = 0;
    std::size_t inserted = 0;

    std::size_t shift(std::size_t i) const {
        return i > position ? i + inserted - 1 : i;
    }
    std::int64_t shift(std::int64_t i) const {
        return i > std::int64_t(position) ? i + std::int64_t(inserted) - 1 : i;
    }
};

// Adaptive two-way mapping between the plane and a growing 1D cell axis.
// Leaves of a quadtree (3x3-tree for peano) tile a square root region; their
// curve order defines the 1D axis. Refining a leaf splits it into the next
// `fanout` curve positions in place, so all other cells keep their relative
// order; uniform refinement reproduces the static curve of that depth.
//
// The root region is the requested box grown to a square whose side is
// min_cell_size * base^L, so every leaf side is an exact power step and the
// resolution floor is hit exactly.
class AdaptiveSfc {
  public:
    AdaptiveSfc(const BoundingBox& region, CurveKind curve, int fanout,
                double min_cell_size);

    CurveKind curve() const { return curve_; }
    int fanout() const { return fanout_; }
    double min_cell_size() const { return min_cell_; }
    const BoundingBox& region() const { return root_box_; }
    // The box the caller asked to index, before squaring and snapping.
    // Rebuilding from it reproduces the root box bit for bit.
    const BoundingBox& requested_region() const { return requested_; }
    int max_depth() const { return max_depth_; }

    std::size_t leaf_count() const { return leaves_.size(); }

    // 1D position of the leaf containing p. Cells are half-open with the
    // root's max edges closed; p outside the root region is an error.
    std::size_t to_1d(Point2D p) const;

    BoundingBox leaf_box(std::size_t pos) const;
    Point2D leaf_center(std::size_t pos) const;
    double leaf_side(std::size_t pos) const;
    int leaf_depth(std::size_t pos) const;
    // Stable identity of the leaf, survives refinement of other leaves.
    std::uint32_t leaf_node_id(std::size_t pos) const { return leaves_[pos]; }

    // True when the answer cannot rule out min_pts points inside the leaf
    // (min_pts-th neighbor within sqrt(2)/2 times the side) and the leaf is
    // above the resolution floor. The answer must come from the leaf center.
    bool needs_split(std::size_t pos, const KnnAnswer& answer,
                     std::size_t min_pts) const;

    // Splits the leaf into fanout children (fewer levels near the floor).
    Refinement refine(std::size_t pos);

    // Structure round-trip: per-node split levels in preorder (0 = leaf).
    std::vector<int> to_structure() const;
    static AdaptiveSfc from_structure(const BoundingBox& region,
                                      CurveKind curve, int fanout,
                                      double min_cell_size,
                                      std::span<const int> preorder_levels);

  private:
    struct Node {
        std::uint64_t col = 0;
        std::uint64_t row = 0;
        std::uint64_t index = 0;  // curve index at this node's depth
        std::uint32_t first_child = 0;
        std::size_t leaf_pos = 0;
        std::uint8_t depth = 0;
        std::uint8_t levels = 0;  // split levels; 0 while leaf

        bool leaf() const { return levels == 0; }
    };

    struct RawTag {};
    AdaptiveSfc(RawTag, const BoundingBox& region, CurveKind curve, int fanout,
                double min_cell_size);

    Refinement refine_levels(std::size_t pos, int levels);
    std::uint64_t children_per_level() const;

    CurveKind curve_;
    int fanout_;
    int levels_per_split_;
    double min_cell_;
    BoundingBox requested_;
    BoundingBox root_box_;
    int max_depth_ = 0;
    std::vector<double> side_at_;  // leaf side per depth
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> leaves_;  // node ids in curve order
};

}  // namespace lbscan
