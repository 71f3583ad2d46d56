#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lbscan/kdtree.hpp"
#include "lbscan/oracle.hpp"
#include "lbscan/rng.hpp"

using namespace lbscan;

namespace {

// Exhaustive reference: sort every point by (distance, id), take the first k.
std::vector<Neighbor> brute_knn(const std::vector<Point2D>& pts, Point2D q,
                                std::size_t k) {
    std::vector<Neighbor> all;
    all.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        all.push_back({PointId(i), distance(pts[i], q)});
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
    });
    if (all.size() > k) all.resize(k);
    return all;
}

std::vector<Point2D> random_points(Rng& rng, std::size_t n, double extent) {
    std::vector<Point2D> pts(n);
    for (auto& p : pts)
        p = {uniform_double(rng, 0.0, extent), uniform_double(rng, 0.0, extent)};
    return pts;
}

}  // namespace

TEST_CASE("nearest of two points") {
    Dataset ds({{0.0, 0.0}, {10.0, 0.0}});
    KnnOracle oracle(ds, 2, 100);

    KnnAnswer one = oracle.query({1.0, 0.0}, 1);
    REQUIRE(one.neighbors.size() == 1);
    CHECK(one.neighbors[0].id == 0);
    CHECK(one.neighbors[0].dist == doctest::Approx(1.0));

    KnnAnswer two = oracle.query({1.0, 0.0}, 2);
    REQUIRE(two.neighbors.size() == 2);
    CHECK(two.neighbors[0].id == 0);
    CHECK(two.neighbors[1].id == 1);
    CHECK(two.neighbors[0].dist == doctest::Approx(1.0));
    CHECK(two.neighbors[1].dist == doctest::Approx(9.0));
}

TEST_CASE("kd-tree matches the exhaustive scan") {
    Rng rng(42);
    auto pts = random_points(rng, 400, 100.0);
    KdTree tree(pts);
    for (int t = 0; t < 200; ++t) {
        Point2D q{uniform_double(rng, -10.0, 110.0),
                  uniform_double(rng, -10.0, 110.0)};
        const std::size_t k = 1 + uniform_index(rng, 20);
        auto fast = tree.knn(q, k);
        auto slow = brute_knn(pts, q, k);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast[i].id == slow[i].id);
            CHECK(fast[i].dist == slow[i].dist);
        }
    }
}

TEST_CASE("distance ties break towards the smaller id") {
    // Four points on a unit circle around the query.
    std::vector<Point2D> pts{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    KdTree tree(pts);
    auto out = tree.knn({0.0, 0.0}, 3);
    REQUIRE(out.size() == 3);
    CHECK(out[0].id == 0);
    CHECK(out[1].id == 1);
    CHECK(out[2].id == 2);
}

TEST_CASE("k larger than the database returns everything") {
    std::vector<Point2D> pts{{0.0, 0.0}, {1.0, 1.0}};
    KdTree tree(pts);
    CHECK(tree.knn({0.0, 0.0}, 10).size() == 2);
}

TEST_CASE("within returns exactly the closed-ball ids") {
    Rng rng(5);
    auto pts = random_points(rng, 300, 50.0);
    KdTree tree(pts);
    for (int t = 0; t < 50; ++t) {
        Point2D q{uniform_double(rng, 0.0, 50.0),
                  uniform_double(rng, 0.0, 50.0)};
        const double r = uniform_double(rng, 0.0, 15.0);
        auto got = tree.within(q, r);
        std::vector<PointId> want;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (distance(pts[i], q) <= r) want.push_back(PointId(i));
        CHECK(got == want);
    }
}

TEST_CASE("each query costs one budget unit and exhaustion throws") {
    Dataset ds({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
    KnnOracle oracle(ds, 2, 2);
    CHECK(oracle.queries_used() == 0);
    oracle.query({0.0, 0.0});
    oracle.query({0.5, 0.5}, 1);
    CHECK(oracle.queries_used() == 2);
    CHECK(oracle.budget().remaining() == 0);
    CHECK_THROWS_AS(oracle.query({1.0, 1.0}), BudgetExhausted);
    CHECK(oracle.queries_used() == 2);  // failed call costs nothing
}

TEST_CASE("query k outside [1, oracle k] is rejected without spending") {
    Dataset ds({{0.0, 0.0}});
    KnnOracle oracle(ds, 3, 10);
    CHECK_THROWS_AS(oracle.query({0.0, 0.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(oracle.query({0.0, 0.0}, 4), std::invalid_argument);
    CHECK(oracle.queries_used() == 0);
}

TEST_CASE("observed log is deduplicated and first-seen ordered") {
    Dataset ds({{0.0, 0.0}, {10.0, 0.0}, {20.0, 0.0}});
    KnnOracle oracle(ds, 2, 100);
    oracle.query({21.0, 0.0});  // sees 2, 1
    oracle.query({0.0, 0.0});   // sees 0, 1 (1 already known)
    const auto& obs = oracle.observed();
    REQUIRE(obs.size() == 3);
    CHECK(obs[0].id == 2);
    CHECK(obs[1].id == 1);
    CHECK(obs[2].id == 0);
    CHECK(obs[2].pos.x == 0.0);
}

TEST_CASE("covered radius is the k-th distance, infinite on short answers") {
    Dataset ds({{0.0, 0.0}, {3.0, 0.0}});
    KnnOracle oracle(ds, 2, 100);
    KnnAnswer full = oracle.query({0.0, 0.0}, 2);
    CHECK(full.covered_radius(2) == doctest::Approx(3.0));

    Dataset tiny({{5.0, 0.0}});
    KnnOracle small(tiny, 2, 100);
    KnnAnswer shorter = small.query({0.0, 0.0}, 2);
    REQUIRE(shorter.neighbors.size() == 1);
    CHECK(shorter.covered_radius(2) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("oracle answers match brute force over many random queries") {
    Rng rng(99);
    auto pts = random_points(rng, 250, 1000.0);
    Dataset ds(pts);
    KnnOracle oracle(ds, 14, 100000);
    for (int t = 0; t < 300; ++t) {
        Point2D q{uniform_double(rng, 0.0, 1000.0),
                  uniform_double(rng, 0.0, 1000.0)};
        auto ans = oracle.query(q);
        auto want = brute_knn(pts, q, 14);
        REQUIRE(ans.neighbors.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(ans.neighbors[i].id == want[i].id);
            CHECK(ans.neighbors[i].dist == want[i].dist);
        }
    }
}
