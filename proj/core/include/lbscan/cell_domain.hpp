#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lbscan/adaptive_sfc.hpp"
#include "lbscan/oracle.hpp"
#include "lbscan/rng.hpp"

namespace lbscan {

enum class CellStatus : std::uint8_t { unknown, sparse, dense };

// Per-cell knowledge along the 1D axis. Statuses move in one direction only
// (unknown -> sparse|dense, never back), in addition to two evidence bits:
// has_point (some returned point lies in the cell) and known_empty (a query
// ball covered the cell and showed no point). Sparse marks must stay sound:
// a cell is only marked sparse on proof that it holds fewer than min_pts
// points. Dense marks may also be inferred (segment interiors).
class CellStatusStore {
  public:
    explicit CellStatusStore(std::size_t cells);

    std::size_t size() const { return cells_.size(); }
    std::size_t unknown_count() const { return unknown_; }

    CellStatus status(std::size_t i) const { return cells_[i].status; }
    bool has_point(std::size_t i) const { return cells_[i].has_point; }
    bool known_empty(std::size_t i) const { return cells_[i].known_empty; }

    void set_status(std::size_t i, CellStatus s);
    void mark_point(std::size_t i);
    void mark_empty(std::size_t i);  // implies sparse

    // Replaces the (unknown) cell at r.position with r.inserted fresh cells.
    // Evidence bits for the new cells are the owner's job to rebuild.
    void apply(const Refinement& r);

    std::optional<std::size_t> random_unknown(Rng& rng) const;
    // Nearest sparse cell strictly left/right of i; -1 / size() act as the
    // virtual sparse sentinels at the domain edges.
    std::int64_t nearest_sparse_left(std::size_t i) const;
    std::int64_t nearest_sparse_right(std::size_t i) const;

  private:
    struct Cell {
        CellStatus status = CellStatus::unknown;
        bool has_point = false;
        bool known_empty = false;
    };
    std::vector<Cell> cells_;
    std::size_t unknown_ = 0;
};

struct ProbeOutcome {
    CellStatus verdict = CellStatus::unknown;
    // Final 1D position probed; differs from the requested cell when the
    // probe triggered refinement.
    std::size_t cell = 0;
    std::vector<Refinement> refinements;
};

// The 1D world the segment-discovery algorithm runs on: a row of cells that
// can be density-probed, each probe spending oracle budget. Production wires
// this to the adaptive curve over 2D data; tests use a native 1D row.
class CellDomain {
  public:
    virtual ~CellDomain() = default;

    virtual std::size_t cell_count() const = 0;
    virtual CellStatusStore& store() = 0;
    const CellStatusStore& store() const {
        return const_cast<CellDomain*>(this)->store();
    }

    // Resolves the density of an unknown cell, refining first when the cell
    // is too coarse to answer. Marks every other cell the answers settle.
    // Throws BudgetExhausted with all partial marks already applied.
    virtual ProbeOutcome probe(std::size_t cell) = 0;

    // Index-translation callbacks: fired after each refinement has been
    // applied to the store, so long-lived 1D indices can be shifted.
    std::size_t on_refinement(std::function<void(const Refinement&)> fn);
    void drop_listener(std::size_t token);

  protected:
    void notify(const Refinement& r);

  private:
    std::vector<std::function<void(const Refinement&)>> listeners_;
};

// Fixed row of equal-width cells over points on the x axis (y = 0), used to
// exercise the 1D algorithm directly. No refinement ever happens here.
class Native1dDomain : public CellDomain {
  public:
    Native1dDomain(KnnOracle& oracle, double origin, double cell_width,
                   std::size_t cells, std::size_t min_pts);

    std::size_t cell_count() const override { return store_.size(); }
    CellStatusStore& store() override { return store_; }
    ProbeOutcome probe(std::size_t cell) override;

    double cell_left(std::size_t i) const { return origin_ + double(i) * width_; }
    Point2D center(std::size_t i) const {
        return {origin_ + (double(i) + 0.5) * width_, 0.0};
    }

  private:
    std::size_t cell_of(double x) const;
    void covered_marks(const KnnAnswer& ans);

    KnnOracle& oracle_;
    double origin_;
    double width_;
    std::size_t min_pts_;
    CellStatusStore store_;
};

// Production domain: cells are the adaptive curve's leaves. A probe queries
// the leaf center, splits the leaf while the answer cannot rule the cell
// sparse, and re-probes the child under the original center. Returned
// neighbors are free evidence: a leaf holding min_pts distinct observed
// points is provably dense, so it is split (or settled, at the floor)
// without spending further queries.
class AdaptiveSfcDomain : public CellDomain {
  public:
    AdaptiveSfcDomain(KnnOracle& oracle, AdaptiveSfc& sfc, std::size_t min_pts);

    std::size_t cell_count() const override { return sfc_.leaf_count(); }
    CellStatusStore& store() override { return store_; }
    ProbeOutcome probe(std::size_t cell) override;

    const AdaptiveSfc& sfc() const { return sfc_; }

  private:
    void covered_marks(const KnnAnswer& ans);
    CellStatus terminal_verdict(std::size_t cell, const KnnAnswer& ans) const;
    void bucket_new_observed();
    Refinement split_leaf(std::size_t cell);
    std::vector<Refinement> settle_observed();

    KnnOracle& oracle_;
    AdaptiveSfc& sfc_;
    std::size_t min_pts_;
    CellStatusStore store_;
    std::vector<std::size_t> observed_in_leaf_;
    std::size_t observed_seen_ = 0;  // watermark into oracle_.observed()
};

}  // namespace lbscan
