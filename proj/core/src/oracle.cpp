#include "lbscan/oracle.hpp"

#include <limits>

namespace lbscan {

double KnnAnswer::covered_radius(std::size_t k_requested) const {
    if (neighbors.size() < k_requested)
        return std::numeric_limits<double>::infinity();
    return neighbors.empty() ? 0.0 : neighbors.back().dist;
}

KnnOracle::KnnOracle(const Dataset& dataset, std::size_t k,
                     std::size_t budget_limit)
    : dataset_(dataset),
      tree_(dataset.points()),
      k_(k),
      budget_{budget_limit, 0},
      seen_(dataset.size(), false) {
    if (k_ == 0) throw std::invalid_argument("oracle k must be positive");
}

KnnAnswer KnnOracle::query(Point2D q, std::size_t k) {
    if (k == 0 || k > k_)
        throw std::invalid_argument("query k must be in [1, oracle k]");
    if (budget_.used >= budget_.limit) throw BudgetExhausted{};
    ++budget_.used;

    KnnAnswer ans;
    ans.query = q;
    ans.neighbors = tree_.knn(q, k);
    for (const Neighbor& n : ans.neighbors) {
        if (!seen_[n.id]) {
            seen_[n.id] = true;
            observed_.push_back({n.id, dataset_.point(n.id)});
        }
    }
    return ans;
}

}  // namespace lbscan
