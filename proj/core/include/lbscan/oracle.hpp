#pragma once

#include <stdexcept>
#include <vector>

#include "lbscan/dataset.hpp"
#include "lbscan/kdtree.hpp"

namespace lbscan {

// Thrown when a query is attempted with no budget left. Clustering code
// catches it to finalize partial results; it never indicates corruption.
struct BudgetExhausted : std::runtime_error {
    BudgetExhausted() : std::runtime_error("query budget exhausted") {}
};

struct Budget {
    std::size_t limit = 0;
    std::size_t used = 0;

    std::size_t remaining() const { return limit - used; }
};

struct KnnAnswer {
    Point2D query;
    std::vector<Neighbor> neighbors;  // ascending (distance, id)

    // Radius of the ball the answer certifies: every database point strictly
    // inside it appears in `neighbors`. Infinite when the whole database was
    // returned.
    double covered_radius(std::size_t k_requested) const;
};

struct ObservedPoint {
    PointId id;
    Point2D pos;
};

// The only access path to the point database: top-k nearest neighbor queries
// at arbitrary locations, each costing one unit of a fixed budget. Also keeps
// the deduplicated log of every point ever returned, which downstream stages
// share. Single-threaded by design: budget and log are mutated per query.
class KnnOracle {
  public:
    // k is fixed per oracle; individual queries may ask for less.
    KnnOracle(const Dataset& dataset, std::size_t k, std::size_t budget_limit);

    std::size_t k() const { return k_; }
    const Budget& budget() const { return budget_; }
    std::size_t queries_used() const { return budget_.used; }
    const Dataset& dataset() const { return dataset_; }

    // One budget unit per call, charged exactly once, even when the answer is
    // shorter than k (database smaller than k).
    KnnAnswer query(Point2D q, std::size_t k);
    KnnAnswer query(Point2D q) { return query(q, k_); }

    // Union of all returned points so far, in first-seen order.
    const std::vector<ObservedPoint>& observed() const { return observed_; }

  private:
    const Dataset& dataset_;
    KdTree tree_;
    std::size_t k_;
    Budget budget_;
    std::vector<ObservedPoint> observed_;
    std::vector<bool> seen_;
};

}  // namespace lbscan
