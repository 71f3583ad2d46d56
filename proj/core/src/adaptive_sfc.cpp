#include "lbscan/adaptive_sfc.hpp"

#include <cmath>
#include <stdexcept>

namespace lbscan {

namespace {

int levels_for_fanout(CurveKind curve, int fanout) {
    if (curve == CurveKind::peano) {
        if (fanout != 9)
            throw std::invalid_argument("peano supports fanout 9 only");
        return 1;
    }
    switch (fanout) {
        case 4: return 1;
        case 16: return 2;
        case 64: return 3;
    }
    throw std::invalid_argument("fanout must be 4, 16 or 64 (9 for peano)");
}

}  // namespace

AdaptiveSfc::AdaptiveSfc(RawTag, const BoundingBox& region, CurveKind curve,
                         int fanout, double min_cell_size)
    : curve_(curve),
      fanout_(fanout),
      levels_per_split_(levels_for_fanout(curve, fanout)),
      min_cell_(min_cell_size),
      requested_(region) {
    if (min_cell_size <= 0.0)
        throw std::invalid_argument("min_cell_size must be positive");
    if (region.width() < 0 || region.height() < 0)
        throw std::invalid_argument("degenerate region");

    const int base = curve_base(curve_);
    const double extent = std::max(region.width(), region.height());
    double side = min_cell_size;
    int depth = 0;
    while (side < extent) {
        side *= base;
        ++depth;
        if (depth > curve_max_order(curve_))
            throw std::invalid_argument("region too large for min_cell_size");
    }
    max_depth_ = depth;
    root_box_ = {region.x0, region.y0, region.x0 + side, region.y0 + side};

    side_at_.resize(std::size_t(max_depth_) + 1);
    double s = side;
    for (int d = 0; d <= max_depth_; ++d) {
        side_at_[std::size_t(d)] = s;
        s /= base;
    }

    nodes_.push_back(Node{});  // root leaf at depth 0
    nodes_[0].leaf_pos = 0;
    leaves_.push_back(0);
}

AdaptiveSfc::AdaptiveSfc(const BoundingBox& region, CurveKind curve,
                         int fanout, double min_cell_size)
    : AdaptiveSfc(RawTag{}, region, curve, fanout, min_cell_size) {
    if (max_depth_ > 0) refine(0);  // the initial fanout-leaf tiling
}

std::uint64_t AdaptiveSfc::children_per_level() const {
    const std::uint64_t b = std::uint64_t(curve_base(curve_));
    return b * b;
}

std::size_t AdaptiveSfc::to_1d(Point2D p) const {
    if (!root_box_.contains(p))
        throw std::invalid_argument("point outside the indexed region");
    const std::uint64_t base = std::uint64_t(curve_base(curve_));
    std::uint32_t ni = 0;
    while (!nodes_[ni].leaf()) {
        const Node& node = nodes_[ni];
        const int cd = node.depth + node.levels;
        const double cell = side_at_[std::size_t(cd)];
        std::uint64_t span = 1;
        for (int i = 0; i < node.levels; ++i) span *= base;

        auto locate = [&](double v, double origin, std::uint64_t lo) {
            double f = std::floor((v - origin) / cell);
            if (f < 0) f = 0;
            std::uint64_t c = std::uint64_t(f);
            // Clamp into this node's child range; shared boundaries can land
            // one cell off after the floor.
            const std::uint64_t hi = lo + span - 1;
            if (c < lo) c = lo;
            if (c > hi) c = hi;
            return c;
        };
        const std::uint64_t col = locate(p.x, root_box_.x0, node.col * span);
        const std::uint64_t row = locate(p.y, root_box_.y0, node.row * span);

        std::uint64_t per = 1;
        for (int i = 0; i < node.levels; ++i) per *= base * base;
        const std::uint64_t offset =
            curve_index(curve_, {col, row}, cd) - node.index * per;
        ni = node.first_child + std::uint32_t(offset);
    }
    return nodes_[ni].leaf_pos;
}

BoundingBox AdaptiveSfc::leaf_box(std::size_t pos) const {
    const Node& n = nodes_[leaves_.at(pos)];
    const double s = side_at_[n.depth];
    const double x = root_box_.x0 + double(n.col) * s;
    const double y = root_box_.y0 + double(n.row) * s;
    return {x, y, x + s, y + s};
}

Point2D AdaptiveSfc::leaf_center(std::size_t pos) const {
    return leaf_box(pos).center();
}

double AdaptiveSfc::leaf_side(std::size_t pos) const {
    return side_at_[nodes_[leaves_.at(pos)].depth];
}

int AdaptiveSfc::leaf_depth(std::size_t pos) const {
    return nodes_[leaves_.at(pos)].depth;
}

bool AdaptiveSfc::needs_split(std::size_t pos, const KnnAnswer& answer,
                              std::size_t min_pts) const {
    const Point2D c = leaf_center(pos);
    if (answer.query.x != c.x || answer.query.y != c.y)
        throw std::invalid_argument("answer was not queried at this leaf");
    if (min_pts == 0) throw std::invalid_argument("min_pts must be positive");
    if (leaf_depth(pos) >= max_depth_) return false;  // resolution floor
    if (answer.neighbors.size() < min_pts) return false;
    const double half_diag = leaf_side(pos) * 0.5 * std::sqrt(2.0);
    return answer.neighbors[min_pts - 1].dist <= half_diag;
}

Refinement AdaptiveSfc::refine(std::size_t pos) {
    const Node& n = nodes_[leaves_.at(pos)];
    const int levels = std::min(levels_per_split_, max_depth_ - int(n.depth));
    return refine_levels(pos, levels);
}

Refinement AdaptiveSfc::refine_levels(std::size_t pos, int levels) {
    const std::uint32_t ni = leaves_.at(pos);
    if (levels <= 0 || int(nodes_[ni].depth) + levels > max_depth_)
        throw std::invalid_argument("leaf is at the resolution floor");

    std::uint64_t per = 1;
    for (int i = 0; i < levels; ++i) per *= children_per_level();

    const int cd = int(nodes_[ni].depth) + levels;
    const std::uint64_t base_index = nodes_[ni].index * per;
    const std::uint32_t first = std::uint32_t(nodes_.size());

    nodes_[ni].levels = std::uint8_t(levels);
    nodes_[ni].first_child = first;
    for (std::uint64_t j = 0; j < per; ++j) {
        Node child;
        child.depth = std::uint8_t(cd);
        child.index = base_index + j;
        const CellCoord cc = curve_cell(curve_, child.index, cd);
        child.col = cc.col;
        child.row = cc.row;
        nodes_.push_back(child);
    }

    // Splice the children into the leaf order at pos.
    leaves_.resize(leaves_.size() + per - 1);
    for (std::size_t i = leaves_.size(); i-- > pos + per;)
        leaves_[i] = leaves_[i - (per - 1)];
    for (std::uint64_t j = 0; j < per; ++j) leaves_[pos + j] = first + std::uint32_t(j);
    for (std::size_t i = pos; i < leaves_.size(); ++i)
        nodes_[leaves_[i]].leaf_pos = i;

    return Refinement{pos, std::size_t(per)};
}

std::vector<int> AdaptiveSfc::to_structure() const {
    std::vector<int> out;
    out.reserve(nodes_.size());
    auto walk = [&](auto&& self, std::uint32_t ni) -> void {
        const Node& n = nodes_[ni];
        out.push_back(n.levels);
        if (n.leaf()) return;
        std::uint64_t per = 1;
        for (int i = 0; i < n.levels; ++i) per *= children_per_level();
        for (std::uint64_t j = 0; j < per; ++j)
            self(self, n.first_child + std::uint32_t(j));
    };
    walk(walk, 0);
    return out;
}

AdaptiveSfc AdaptiveSfc::from_structure(const BoundingBox& region,
                                        CurveKind curve, int fanout,
                                        double min_cell_size,
                                        std::span<const int> preorder_levels) {
    AdaptiveSfc sfc(RawTag{}, region, curve, fanout, min_cell_size);
    std::size_t cursor = 0;
    // Returns how many leaves the subtree covers so sibling positions track
    // the splices made inside earlier siblings.
    auto replay = [&](auto&& self, std::size_t pos) -> std::size_t {
        if (cursor >= preorder_levels.size())
            throw std::invalid_argument("truncated tree structure");
        const int levels = preorder_levels[cursor++];
        if (levels == 0) return 1;
        const Refinement r = sfc.refine_levels(pos, levels);
        std::size_t covered = 0;
        for (std::size_t j = 0; j < r.inserted; ++j)
            covered += self(self, pos + covered);
        return covered;
    };
    replay(replay, 0);
    if (cursor != preorder_levels.size())
        throw std::invalid_argument("trailing tree structure tokens");
    return sfc;
}

}  // namespace lbscan
