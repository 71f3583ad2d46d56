#pragma once

#include <cstdint>
#include <string>

namespace lbscan {

enum class CurveKind { hilbert, z_order, peano };

std::string to_string(CurveKind k);
CurveKind curve_from_string(const std::string& name);

// Grid cells per axis multiply by this factor at each refinement level:
// 2 for hilbert/z_order, 3 for peano.
int curve_base(CurveKind k);

// Deepest order whose cell count still fits in 63 bits.
int curve_max_order(CurveKind k);

// Cells per axis at the given order (base^order).
std::uint64_t curve_side(CurveKind k, int order);

struct CellCoord {
    std::uint64_t col = 0;
    std::uint64_t row = 0;

    bool operator==(const CellCoord&) const = default;
};

// Bijection between grid cells and curve positions at a fixed order. The
// curves are nested: the children of the cell at index i on order d occupy
// indices [i*b^2, (i+1)*b^2) on order d+1, which is what lets an adaptive
// tree refine cells without renumbering the rest of the curve.
std::uint64_t curve_index(CurveKind k, CellCoord cell, int order);
CellCoord curve_cell(CurveKind k, std::uint64_t index, int order);

}  // namespace lbscan
