#pragma once

#include <cmath>

namespace lbscan {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

inline double squared_distance(Point2D a, Point2D b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(Point2D a, Point2D b) {
    return std::sqrt(squared_distance(a, b));
}

// Closed axis-aligned rectangle. Cell-level half-open conventions are handled
// by the structures that tile a box, not here.
struct BoundingBox {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    Point2D center() const { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0}; }

    bool contains(Point2D p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }

    void expand_to(Point2D p) {
        if (p.x < x0) x0 = p.x;
        if (p.x > x1) x1 = p.x;
        if (p.y < y0) y0 = p.y;
        if (p.y > y1) y1 = p.y;
    }
};

// Largest distance from q to any point of the box; used to decide whether a
// kNN answer's radius covers a cell entirely.
inline double max_corner_distance(Point2D q, const BoundingBox& b) {
    const double dx = std::max(std::abs(q.x - b.x0), std::abs(q.x - b.x1));
    const double dy = std::max(std::abs(q.y - b.y0), std::abs(q.y - b.y1));
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace lbscan
