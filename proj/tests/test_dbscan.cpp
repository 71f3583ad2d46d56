#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lbscan/dbscan.hpp"
#include "lbscan/metrics.hpp"
#include "lbscan/rng.hpp"

using namespace lbscan;

namespace {

// Independent O(n^2) oracle built straight from the definitions: flood-fill
// core points over the eps-reachability graph, then attach border points to
// any adjacent core's cluster. Label values are arbitrary; comparisons go
// through the Rand index (permutation invariant).
std::vector<Label> closure_dbscan(const std::vector<Point2D>& pts, double eps,
                                  std::size_t min_pts) {
    const std::size_t n = pts.size();
    std::vector<bool> core(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t inside = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (distance(pts[i], pts[j]) <= eps) ++inside;
        core[i] = inside >= min_pts;
    }

    std::vector<Label> out(n, kNoise);
    Label next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (!core[s] || out[s] != kNoise) continue;
        std::vector<std::size_t> stack{s};
        out[s] = next;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (!core[j] || out[j] != kNoise) continue;
                if (distance(pts[i], pts[j]) <= eps) {
                    out[j] = next;
                    stack.push_back(j);
                }
            }
        }
        ++next;
    }
    // Border points: any core neighbor's cluster (ties immaterial under Rand
    // only when unique; the reference uses lowest-id core, so mirror that).
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i] || out[i] != kNoise) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (core[j] && distance(pts[i], pts[j]) <= eps) {
                out[i] = out[j];
                break;
            }
        }
    }
    return out;
}

std::vector<Point2D> random_points(Rng& rng, std::size_t n, double extent) {
    std::vector<Point2D> pts(n);
    for (auto& p : pts)
        p = {uniform_double(rng, 0.0, extent), uniform_double(rng, 0.0, extent)};
    return pts;
}

double rand_against(const std::vector<Label>& a, const std::vector<Label>& b) {
    return rand_index(pair_counts(a, b));
}

}  // namespace

TEST_CASE("is_core counts the point itself") {
    // Three collinear points 1 apart: middle reaches all three.
    Dataset ds({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
    DbscanParams params{1.0, 3};
    CHECK(is_core(ds, 1, params));
    CHECK_FALSE(is_core(ds, 0, params));  // only reaches itself and the middle
    DbscanParams loose{2.0, 3};
    CHECK(is_core(ds, 0, loose));
}

TEST_CASE("eps boundary is closed") {
    Dataset ds({{0.0, 0.0}, {5.0, 0.0}});
    CHECK(is_core(ds, 0, {5.0, 2}));
    CHECK_FALSE(is_core(ds, 0, {4.999999, 2}));
}

TEST_CASE("two far groups become two clusters with no noise") {
    // Two tight triples 10 eps apart.
    std::vector<Point2D> pts{{0, 0}, {1, 0}, {0, 1},
                             {100, 100}, {101, 100}, {100, 101}};
    auto labels = dbscan(pts, {2.0, 3});
    CHECK(labels == std::vector<Label>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("isolated points are all noise") {
    std::vector<Point2D> pts{{0, 0}, {10, 0}, {20, 0}};
    auto labels = dbscan(pts, {1.0, 2});
    CHECK(labels == std::vector<Label>{kNoise, kNoise, kNoise});
}

TEST_CASE("cluster ids follow the lowest member id") {
    // Right group listed first; ids must still start at the lowest point id.
    std::vector<Point2D> pts{{100, 0}, {101, 0}, {0, 0}, {1, 0}};
    auto labels = dbscan(pts, {2.0, 2});
    CHECK(labels == std::vector<Label>{0, 0, 1, 1});
}

TEST_CASE("border point joins the lowest-id core within eps") {
    // Two 4-point columns at x = 0 and x = 4, a single point midway. With
    // eps 2 and min_pts 4 the middle point reaches one core on each side
    // plus itself (3 < 4), so it stays border; the lowest-id core wins it.
    std::vector<Point2D> pts{{0, 0},  {0, 0.5}, {0, -0.5}, {0, 1},
                             {4, 0},  {4, 0.5}, {4, -0.5}, {4, 1},
                             {2, 0}};
    auto labels = dbscan(pts, {2.0, 4});
    REQUIRE(labels[0] == labels[1]);
    REQUIRE(labels[4] == labels[5]);
    CHECK(labels[0] != labels[4]);
    CHECK(labels[8] == labels[0]);
}

TEST_CASE("labeling equals the closure oracle on random instances") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 20 + uniform_index(rng, 200);
        // Mix a few dense blobs with background so all three roles appear.
        auto pts = random_points(rng, n, 60.0);
        const double eps = uniform_double(rng, 2.0, 8.0);
        const std::size_t min_pts = 2 + uniform_index(rng, 5);
        auto fast = dbscan(pts, {eps, min_pts});
        auto slow = closure_dbscan(pts, eps, min_pts);
        CHECK(rand_against(fast, slow) == 1.0);
    }
}

TEST_CASE("dataset overload matches the raw-points overload") {
    Rng rng(3);
    auto pts = random_points(rng, 80, 30.0);
    Dataset ds(pts);
    CHECK(dbscan(ds, {4.0, 3}) == dbscan(pts, {4.0, 3}));
}

TEST_CASE("invalid parameters are rejected") {
    std::vector<Point2D> pts{{0, 0}};
    CHECK_THROWS_AS(dbscan(pts, {0.0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(dbscan(pts, {1.0, 0}), std::invalid_argument);
}
