#include "lbscan/sfc.hpp"

#include <stdexcept>
#include <utility>

namespace lbscan {

std::string to_string(CurveKind k) {
    switch (k) {
        case CurveKind::hilbert: return "hilbert";
        case CurveKind::z_order: return "z";
        case CurveKind::peano: return "peano";
    }
    throw std::logic_error("bad curve kind");
}

CurveKind curve_from_string(const std::string& name) {
    if (name == "hilbert") return CurveKind::hilbert;
    if (name == "z" || name == "z-order" || name == "morton")
        return CurveKind::z_order;
    if (name == "peano") return CurveKind::peano;
    throw std::invalid_argument("unknown curve: " + name);
}

int curve_base(CurveKind k) { return k == CurveKind::peano ? 3 : 2; }

int curve_max_order(CurveKind k) { return k == CurveKind::peano ? 19 : 31; }

std::uint64_t curve_side(CurveKind k, int order) {
    if (order < 0 || order > curve_max_order(k))
        throw std::invalid_argument("order out of range");
    std::uint64_t s = 1;
    for (int i = 0; i < order; ++i) s *= std::uint64_t(curve_base(k));
    return s;
}

namespace {

void check_cell(CurveKind k, CellCoord c, int order) {
    const std::uint64_t side = curve_side(k, order);
    if (c.col >= side || c.row >= side)
        throw std::invalid_argument("cell outside grid");
}

void check_index(CurveKind k, std::uint64_t index, int order) {
    const std::uint64_t side = curve_side(k, order);
    if (index >= side * side)
        throw std::invalid_argument("curve index outside grid");
}

// Hilbert quadrant rotation (classic rotate-and-reflect step).
void hilbert_rot(std::uint64_t s, std::uint64_t& x, std::uint64_t& y,
                 std::uint64_t rx, std::uint64_t ry) {
    if (ry == 0) {
        if (rx == 1) {
            x = s - 1 - x;
            y = s - 1 - y;
        }
        std::swap(x, y);
    }
}

std::uint64_t hilbert_index(CellCoord c, int order) {
    std::uint64_t x = c.col, y = c.row, d = 0;
    for (std::uint64_t s = std::uint64_t(1) << (order - 1); s > 0; s >>= 1) {
        const std::uint64_t rx = (x & s) ? 1 : 0;
        const std::uint64_t ry = (y & s) ? 1 : 0;
        d += s * s * ((3 * rx) ^ ry);
        hilbert_rot(s, x, y, rx, ry);
    }
    return d;
}

CellCoord hilbert_cell(std::uint64_t index, int order) {
    std::uint64_t x = 0, y = 0, t = index;
    for (std::uint64_t s = 1; s < (std::uint64_t(1) << order); s <<= 1) {
        const std::uint64_t rx = 1 & (t / 2);
        const std::uint64_t ry = 1 & (t ^ rx);
        hilbert_rot(s, x, y, rx, ry);
        x += s * rx;
        y += s * ry;
        t /= 4;
    }
    return {x, y};
}

// Z-order interleaves bits with the row in the upper position of each pair.
std::uint64_t z_index(CellCoord c, int order) {
    std::uint64_t d = 0;
    for (int i = 0; i < order; ++i) {
        d |= ((c.col >> i) & 1) << (2 * i);
        d |= ((c.row >> i) & 1) << (2 * i + 1);
    }
    return d;
}

CellCoord z_cell(std::uint64_t index, int order) {
    CellCoord c;
    for (int i = 0; i < order; ++i) {
        c.col |= ((index >> (2 * i)) & 1) << i;
        c.row |= ((index >> (2 * i + 1)) & 1) << i;
    }
    return c;
}

// Peano serpentine: block visit order on the 3x3 grid as (col, row), with
// sub-blocks mirrored so consecutive cells stay adjacent. A sub-block is
// x-mirrored when its canonical row is odd and y-mirrored when its canonical
// column is odd; mirror states compose by xor down the digit recursion.
constexpr int kPeanoBlock[9][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1},
                                   {1, 0}, {2, 0}, {2, 1}, {2, 2}};
constexpr int kPeanoDigit[3][3] = {
    // [col][row] -> visit position
    {0, 1, 2},
    {5, 4, 3},
    {6, 7, 8},
};

CellCoord peano_cell(std::uint64_t index, int order) {
    std::uint64_t x = 0, y = 0;
    bool fx = false, fy = false;
    std::uint64_t pow9 = 1;  // 9^(order-1)
    for (int i = 0; i < order - 1; ++i) pow9 *= 9;
    for (int level = 0; level < order; ++level) {
        const int s = int((index / pow9) % 9);
        index %= pow9;
        pow9 /= 9;
        const int bx = kPeanoBlock[s][0];
        const int by = kPeanoBlock[s][1];
        x = x * 3 + std::uint64_t(fx ? 2 - bx : bx);
        y = y * 3 + std::uint64_t(fy ? 2 - by : by);
        fx ^= (by & 1) != 0;
        fy ^= (bx & 1) != 0;
    }
    return {x, y};
}

std::uint64_t peano_index(CellCoord c, int order) {
    std::uint64_t d = 0;
    bool fx = false, fy = false;
    std::uint64_t pow3 = 1;
    for (int i = 0; i < order - 1; ++i) pow3 *= 3;
    for (int level = 0; level < order; ++level) {
        const int cx = int((c.col / pow3) % 3);
        const int cy = int((c.row / pow3) % 3);
        pow3 /= 3;
        const int bx = fx ? 2 - cx : cx;
        const int by = fy ? 2 - cy : cy;
        d = d * 9 + std::uint64_t(kPeanoDigit[bx][by]);
        fx ^= (by & 1) != 0;
        fy ^= (bx & 1) != 0;
    }
    return d;
}

}  // namespace

std::uint64_t curve_index(CurveKind k, CellCoord cell, int order) {
    check_cell(k, cell, order);
    if (order == 0) return 0;
    switch (k) {
        case CurveKind::hilbert: return hilbert_index(cell, order);
        case CurveKind::z_order: return z_index(cell, order);
        case CurveKind::peano: return peano_index(cell, order);
    }
    throw std::logic_error("bad curve kind");
}

CellCoord curve_cell(CurveKind k, std::uint64_t index, int order) {
    check_index(k, index, order);
    if (order == 0) return {0, 0};
    switch (k) {
        case CurveKind::hilbert: return hilbert_cell(index, order);
        case CurveKind::z_order: return z_cell(index, order);
        case CurveKind::peano: return peano_cell(index, order);
    }
    throw std::logic_error("bad curve kind");
}

}  // namespace lbscan
