#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lbscan/cell_domain.hpp"
#include "lbscan/rng.hpp"

namespace lbscan {

// Maximal run of cells believed dense: the boundary cells were probed dense
// with sparse outer neighbors; interior cells either probed dense or passed
// the sampling check. `provisional` marks runs cut short by budget
// exhaustion before verification finished.
struct DenseSegment {
    std::size_t lo = 0;
    std::size_t hi = 0;
    bool provisional = false;

    bool operator==(const DenseSegment&) const = default;
};

// Every operation reports the refinements its probes triggered so callers
// can shift 1D indices they hold (the store itself is updated in place).

struct ExpSearchResult {
    std::optional<std::size_t> cell;  // nullopt: (a, b] proven pointless
    std::vector<Refinement> refinements;
};

// Seeks the leftmost cell in (a, b] known to contain a point, walking right
// from the sparse anchor a with exponentially growing jumps; every cell its
// answers prove empty is marked sparse. a = -1 stands for the left edge.
ExpSearchResult exponential_search(CellDomain& domain, std::int64_t a,
                                   std::int64_t b);

struct BoundaryResult {
    std::size_t boundary = 0;
    std::vector<Refinement> refinements;
};

// Binary search between a sparse anchor and a dense cell: returns the dense
// cell whose outer neighbor is sparse. Known statuses are reused; only
// unknown midpoints are probed. a may be -1 / b may be cell_count() for the
// virtual sparse cells beyond the edges.
BoundaryResult boundary_search_left(CellDomain& domain, std::int64_t a,
                                    std::size_t q);
BoundaryResult boundary_search_right(CellDomain& domain, std::size_t q,
                                     std::int64_t b);

struct CSampleResult {
    std::optional<std::size_t> sparse_cell;  // nullopt: all sampled dense
    std::vector<Refinement> refinements;
};

// Verifies [lo, hi] by probing up to c uniform-random still-unknown cells
// (without replacement); any cell already known sparse, or probed sparse,
// short-circuits.
CSampleResult c_sample_test(CellDomain& domain, std::size_t lo, std::size_t hi,
                            std::size_t c, Rng& rng);

// Segment discovery over the whole domain: probe random unknown cells; on a
// dense hit, locate both boundaries between the nearest known-sparse anchors,
// then verify the interior, shrinking the range and retrying whenever the
// sample finds a sparse cell. Runs until the budget dies or no unknown cells
// remain; returns disjoint segments sorted by position.
std::vector<DenseSegment> hdbscan_1d(CellDomain& domain, std::size_t c,
                                     Rng& rng);

}  // namespace lbscan
