#include "lbscan/dbscan.hpp"

#include <numeric>
#include <stdexcept>

#include "lbscan/kdtree.hpp"

namespace lbscan {

namespace {

void check(const DbscanParams& p) {
    if (p.eps <= 0.0) throw std::invalid_argument("eps must be positive");
    if (p.min_pts == 0) throw std::invalid_argument("min_pts must be positive");
}

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

}  // namespace

bool is_core(const Dataset& ds, PointId id, const DbscanParams& params) {
    check(params);
    const double e2 = params.eps * params.eps;
    const Point2D p = ds.point(id);
    std::size_t count = 0;
    for (const Point2D& q : ds.points())
        if (squared_distance(p, q) <= e2 && ++count >= params.min_pts)
            return true;
    return false;
}

std::vector<Label> dbscan(const std::vector<Point2D>& points,
                          const DbscanParams& params) {
    check(params);
    const std::size_t n = points.size();
    std::vector<Label> labels(n, kNoise);
    if (n == 0) return labels;

    KdTree tree(points);
    std::vector<std::vector<PointId>> nbrs(n);
    std::vector<bool> core(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        nbrs[i] = tree.within(points[i], params.eps);
        core[i] = nbrs[i].size() >= params.min_pts;
    }

    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!core[i]) continue;
        for (PointId j : nbrs[i])
            if (core[j]) uf.unite(std::uint32_t(i), j);
    }

    // Roots identify clusters; borders attach through their lowest-id core.
    std::vector<std::uint32_t> cluster_root(n, std::uint32_t(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) {
            cluster_root[i] = uf.find(std::uint32_t(i));
        } else {
            for (PointId j : nbrs[i]) {
                if (core[j]) {  // nbrs ascend by id, first core is lowest
                    cluster_root[i] = uf.find(j);
                    break;
                }
            }
        }
    }

    Label next = 0;
    std::vector<Label> root_label(n, kNoise);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t r = cluster_root[i];
        if (r == n) continue;
        if (root_label[r] == kNoise) root_label[r] = next++;
        labels[i] = root_label[r];
    }
    return labels;
}

std::vector<Label> dbscan(const Dataset& ds, const DbscanParams& params) {
    return dbscan(ds.points(), params);
}

}  // namespace lbscan
