#include "lbscan/cell_domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace lbscan {

CellStatusStore::CellStatusStore(std::size_t cells)
    : cells_(cells), unknown_(cells) {}

void CellStatusStore::set_status(std::size_t i, CellStatus s) {
    Cell& c = cells_.at(i);
    if (c.status == s) return;
    if (c.status != CellStatus::unknown)
        throw std::logic_error("cell status may not change once decided");
    if (s == CellStatus::unknown)
        throw std::logic_error("cell status may not revert to unknown");
    c.status = s;
    --unknown_;
}

void CellStatusStore::mark_point(std::size_t i) {
    Cell& c = cells_.at(i);
    c.has_point = true;
}

void CellStatusStore::mark_empty(std::size_t i) {
    Cell& c = cells_.at(i);
    if (c.has_point)
        throw std::logic_error("cell with an observed point proven empty");
    set_status(i, CellStatus::sparse);
    c.known_empty = true;
}

void CellStatusStore::apply(const Refinement& r) {
    const Cell& old = cells_.at(r.position);
    if (old.status != CellStatus::unknown)
        throw std::logic_error("only unknown cells are refined");
    if (r.inserted == 0) throw std::invalid_argument("empty refinement");
    cells_.insert(cells_.begin() + std::ptrdiff_t(r.position), r.inserted - 1,
                  Cell{});
    cells_[r.position + r.inserted - 1] = Cell{};
    unknown_ += r.inserted - 1;
}

std::optional<std::size_t> CellStatusStore::random_unknown(Rng& rng) const {
    if (unknown_ == 0) return std::nullopt;
    std::size_t nth = uniform_index(rng, unknown_);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i].status == CellStatus::unknown && nth-- == 0) return i;
    }
    throw std::logic_error("unknown cell counter out of sync");
}

std::int64_t CellStatusStore::nearest_sparse_left(std::size_t i) const {
    for (std::int64_t j = std::int64_t(i) - 1; j >= 0; --j)
        if (cells_[std::size_t(j)].status == CellStatus::sparse) return j;
    return -1;
}

std::int64_t CellStatusStore::nearest_sparse_right(std::size_t i) const {
    for (std::size_t j = i + 1; j < cells_.size(); ++j)
        if (cells_[j].status == CellStatus::sparse) return std::int64_t(j);
    return std::int64_t(cells_.size());
}

std::size_t CellDomain::on_refinement(
    std::function<void(const Refinement&)> fn) {
    listeners_.push_back(std::move(fn));
    return listeners_.size() - 1;
}

void CellDomain::drop_listener(std::size_t token) {
    listeners_.at(token) = nullptr;
}

void CellDomain::notify(const Refinement& r) {
    for (auto& fn : listeners_)
        if (fn) fn(r);
}

// ---------------------------------------------------------------------------
// Native 1D row

Native1dDomain::Native1dDomain(KnnOracle& oracle, double origin,
                               double cell_width, std::size_t cells,
                               std::size_t min_pts)
    : oracle_(oracle),
      origin_(origin),
      width_(cell_width),
      min_pts_(min_pts),
      store_(cells) {
    if (cell_width <= 0 || cells == 0 || min_pts == 0 || min_pts > oracle.k())
        throw std::invalid_argument("bad 1d domain parameters");
}

std::size_t Native1dDomain::cell_of(double x) const {
    double f = std::floor((x - origin_) / width_);
    if (f < 0) f = 0;
    std::size_t i = std::size_t(f);
    return std::min(i, store_.size() - 1);
}

void Native1dDomain::covered_marks(const KnnAnswer& ans) {
    // Bucket returned points into cells.
    std::unordered_map<std::size_t, std::size_t> counts;
    const double domain_hi = origin_ + double(store_.size()) * width_;
    for (const Neighbor& n : ans.neighbors) {
        const double x = oracle_.dataset().point(n.id).x;
        if (x < origin_ || x > domain_hi) continue;
        const std::size_t c = cell_of(x);
        ++counts[c];
        store_.mark_point(c);
    }

    // Every cell whose interval lies strictly inside the answer ball is fully
    // known: below min_pts returned points proves it sparse.
    const double r = ans.covered_radius(oracle_.k());
    for (std::size_t i = 0; i < store_.size(); ++i) {
        if (store_.status(i) != CellStatus::unknown) continue;
        if (std::isfinite(r)) {
            const double c0 = cell_left(i), c1 = c0 + width_;
            const double sup =
                std::max(std::abs(ans.query.x - c0), std::abs(ans.query.x - c1));
            if (sup >= r) continue;
        }
        const auto it = counts.find(i);
        const std::size_t cnt = it == counts.end() ? 0 : it->second;
        if (cnt == 0)
            store_.mark_empty(i);
        else if (cnt < min_pts_)
            store_.set_status(i, CellStatus::sparse);
    }
}

ProbeOutcome Native1dDomain::probe(std::size_t cell) {
    if (store_.status(cell) != CellStatus::unknown)
        throw std::logic_error("probe of a cell already decided");
    const Point2D q = center(cell);
    const KnnAnswer ans = oracle_.query(q);
    covered_marks(ans);

    ProbeOutcome out;
    out.cell = cell;
    if (store_.status(cell) != CellStatus::unknown) {
        out.verdict = store_.status(cell);  // settled by its own ball
        return out;
    }
    // Dense iff the nearest min_pts returned points all fall inside the cell.
    bool dense = ans.neighbors.size() >= min_pts_;
    if (dense) {
        const double x0 = cell_left(cell), x1 = x0 + width_;
        const bool last = cell + 1 == store_.size();
        for (std::size_t i = 0; i < min_pts_; ++i) {
            const double x = oracle_.dataset().point(ans.neighbors[i].id).x;
            const bool inside = x >= x0 && (x < x1 || (last && x <= x1));
            if (!inside) {
                dense = false;
                break;
            }
        }
    }
    out.verdict = dense ? CellStatus::dense : CellStatus::sparse;
    store_.set_status(cell, out.verdict);
    return out;
}

// ---------------------------------------------------------------------------
// Adaptive 2D-mapped domain

AdaptiveSfcDomain::AdaptiveSfcDomain(KnnOracle& oracle, AdaptiveSfc& sfc,
                                     std::size_t min_pts)
    : oracle_(oracle),
      sfc_(sfc),
      min_pts_(min_pts),
      store_(sfc.leaf_count()),
      observed_in_leaf_(sfc.leaf_count(), 0) {
    if (min_pts == 0 || min_pts > oracle.k())
        throw std::invalid_argument("min_pts must be in [1, oracle k]");
}

void AdaptiveSfcDomain::bucket_new_observed() {
    const auto& obs = oracle_.observed();
    for (; observed_seen_ < obs.size(); ++observed_seen_) {
        const Point2D p = obs[observed_seen_].pos;
        if (!sfc_.region().contains(p)) continue;
        const std::size_t c = sfc_.to_1d(p);
        ++observed_in_leaf_[c];
        store_.mark_point(c);
    }
}

Refinement AdaptiveSfcDomain::split_leaf(std::size_t cell) {
    const BoundingBox old_box = sfc_.leaf_box(cell);
    const Refinement r = sfc_.refine(cell);
    store_.apply(r);
    observed_in_leaf_.erase(observed_in_leaf_.begin() +
                            std::ptrdiff_t(r.position));
    observed_in_leaf_.insert(
        observed_in_leaf_.begin() + std::ptrdiff_t(r.position), r.inserted, 0);
    // Redistribute the split leaf's evidence over its children.
    for (const ObservedPoint& op : oracle_.observed()) {
        if (!old_box.contains(op.pos) || !sfc_.region().contains(op.pos))
            continue;
        const std::size_t c = sfc_.to_1d(op.pos);
        ++observed_in_leaf_[c];
        store_.mark_point(c);
    }
    notify(r);
    return r;
}

// Distinct observed points are exact evidence: min_pts of them inside one
// leaf prove it dense, which at coarse levels also justifies splitting
// without a probe. A single forward sweep suffices because counts left of
// the sweep never grow.
std::vector<Refinement> AdaptiveSfcDomain::settle_observed() {
    std::vector<Refinement> refs;
    std::size_t i = 0;
    while (i < store_.size()) {
        if (store_.status(i) != CellStatus::unknown ||
            observed_in_leaf_[i] < min_pts_) {
            ++i;
            continue;
        }
        if (sfc_.leaf_depth(i) >= sfc_.max_depth()) {
            store_.set_status(i, CellStatus::dense);
            ++i;
            continue;
        }
        refs.push_back(split_leaf(i));  // children land at i; rescan them
    }
    return refs;
}

void AdaptiveSfcDomain::covered_marks(const KnnAnswer& ans) {
    std::unordered_map<std::size_t, std::size_t> counts;
    for (const Neighbor& n : ans.neighbors) {
        const Point2D p = oracle_.dataset().point(n.id);
        if (!sfc_.region().contains(p)) continue;
        const std::size_t c = sfc_.to_1d(p);
        ++counts[c];
        store_.mark_point(c);
    }

    const double r = ans.covered_radius(oracle_.k());
    for (std::size_t i = 0; i < store_.size(); ++i) {
        if (store_.status(i) != CellStatus::unknown) continue;
        if (std::isfinite(r) &&
            max_corner_distance(ans.query, sfc_.leaf_box(i)) >= r)
            continue;
        const auto it = counts.find(i);
        const std::size_t cnt = it == counts.end() ? 0 : it->second;
        if (cnt == 0)
            store_.mark_empty(i);
        else if (cnt < min_pts_)
            store_.set_status(i, CellStatus::sparse);
    }
}

CellStatus AdaptiveSfcDomain::terminal_verdict(std::size_t cell,
                                               const KnnAnswer& ans) const {
    if (ans.neighbors.size() < min_pts_) return CellStatus::sparse;
    for (std::size_t i = 0; i < min_pts_; ++i) {
        const Point2D p = oracle_.dataset().point(ans.neighbors[i].id);
        if (!sfc_.region().contains(p) || sfc_.to_1d(p) != cell)
            return CellStatus::sparse;
    }
    return CellStatus::dense;
}

ProbeOutcome AdaptiveSfcDomain::probe(std::size_t cell) {
    if (store_.status(cell) != CellStatus::unknown)
        throw std::logic_error("probe of a cell already decided");

    ProbeOutcome out;
    while (true) {
        const Point2D q = sfc_.leaf_center(cell);
        const KnnAnswer ans = oracle_.query(q);
        bucket_new_observed();
        covered_marks(ans);
        for (const Refinement& r : settle_observed()) out.refinements.push_back(r);
        cell = sfc_.to_1d(q);

        // The ball or the evidence sweep may have settled the cell already;
        // exact counts beat the split heuristic.
        if (store_.status(cell) != CellStatus::unknown) {
            out.verdict = store_.status(cell);
            out.cell = cell;
            return out;
        }

        // An evidence split may have replaced the probed leaf; the stale
        // answer cannot judge the smaller child, so query its center next.
        const Point2D now = sfc_.leaf_center(cell);
        if (now.x != q.x || now.y != q.y) continue;

        if (sfc_.needs_split(cell, ans, min_pts_)) {
            out.refinements.push_back(split_leaf(cell));
            cell = sfc_.to_1d(q);  // child under the original center
            continue;
        }

        out.verdict = terminal_verdict(cell, ans);
        out.cell = cell;
        store_.set_status(cell, out.verdict);
        return out;
    }
}

}  // namespace lbscan
