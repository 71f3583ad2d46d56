#include "lbscan/kdtree.hpp"

#include <algorithm>
#include <cmath>

namespace lbscan {

namespace {
constexpr std::uint32_t kBucket = 16;

struct Candidate {
    double d2;
    PointId id;

    bool operator<(const Candidate& o) const {
        return d2 < o.d2 || (d2 == o.d2 && id < o.id);
    }
};
}  // namespace

KdTree::KdTree(const std::vector<Point2D>& points) : points_(points) {
    order_.resize(points_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
    if (!points_.empty()) {
        nodes_.reserve(2 * points_.size() / kBucket + 2);
        root_ = build(0, std::uint32_t(points_.size()));
    }
}

std::uint32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
    Node node;
    node.begin = begin;
    node.end = end;
    if (end - begin <= kBucket) {
        nodes_.push_back(node);
        return std::uint32_t(nodes_.size() - 1);
    }

    double minx = points_[order_[begin]].x, maxx = minx;
    double miny = points_[order_[begin]].y, maxy = miny;
    for (std::uint32_t i = begin + 1; i < end; ++i) {
        const Point2D p = points_[order_[i]];
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const int axis = (maxx - minx >= maxy - miny) ? 0 : 1;
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid,
                     order_.begin() + end, [&](std::uint32_t a, std::uint32_t b) {
                         return axis == 0 ? points_[a].x < points_[b].x
                                          : points_[a].y < points_[b].y;
                     });
    node.axis = std::int8_t(axis);
    const Point2D m = points_[order_[mid]];
    node.split = axis == 0 ? m.x : m.y;

    const std::uint32_t self = std::uint32_t(nodes_.size());
    nodes_.push_back(node);
    const std::uint32_t left = build(begin, mid);
    const std::uint32_t right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

std::vector<Neighbor> KdTree::knn(Point2D q, std::size_t k) const {
    std::vector<Neighbor> result;
    if (points_.empty() || k == 0) return result;
    k = std::min(k, points_.size());

    // Max-heap of the best k candidates under (d2, id) order.
    std::vector<Candidate> heap;
    heap.reserve(k + 1);

    auto offer = [&](PointId id) {
        const Candidate c{squared_distance(q, points_[id]), id};
        if (heap.size() < k) {
            heap.push_back(c);
            std::push_heap(heap.begin(), heap.end());
        } else if (c < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = c;
            std::push_heap(heap.begin(), heap.end());
        }
    };

    // Recursive descent, nearer child first. A subtree is skipped only when
    // its best possible squared distance exceeds the current worst kept; on
    // ties we must still descend to honour the id tie-break.
    auto visit = [&](auto&& self, std::uint32_t ni) -> void {
        const Node& node = nodes_[ni];
        if (node.leaf()) {
            for (std::uint32_t i = node.begin; i < node.end; ++i)
                offer(order_[i]);
            return;
        }
        const double qv = node.axis == 0 ? q.x : q.y;
        const double plane = qv - node.split;
        const std::uint32_t near = plane < 0 ? node.left : node.right;
        const std::uint32_t far = plane < 0 ? node.right : node.left;
        self(self, near);
        if (heap.size() < k || plane * plane <= heap.front().d2)
            self(self, far);
    };
    visit(visit, root_);

    std::sort(heap.begin(), heap.end());
    result.reserve(heap.size());
    for (const Candidate& c : heap)
        result.push_back({c.id, std::sqrt(c.d2)});
    return result;
}

std::vector<PointId> KdTree::within(Point2D q, double radius) const {
    std::vector<PointId> result;
    if (points_.empty() || radius < 0) return result;
    const double r2 = radius * radius;

    auto visit = [&](auto&& self, std::uint32_t ni) -> void {
        const Node& node = nodes_[ni];
        if (node.leaf()) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                const PointId id = order_[i];
                if (squared_distance(q, points_[id]) <= r2)
                    result.push_back(id);
            }
            return;
        }
        const double qv = node.axis == 0 ? q.x : q.y;
        const double plane = qv - node.split;
        const std::uint32_t near = plane < 0 ? node.left : node.right;
        const std::uint32_t far = plane < 0 ? node.right : node.left;
        self(self, near);
        if (plane * plane <= r2) self(self, far);
    };
    if (!points_.empty()) visit(visit, root_);

    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace lbscan
