#pragma once

#include <compare>
#include <vector>

#include "pbkc/gf256.hpp"

namespace pbkc {

// One cell position inside a stripe: node row (0-based, 0..n-1) and
// column / instance index (0-based, 0..m-1).
struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

// Rectangular block of symbols. Used both for the k x m data grid of a
// stripe and for the full n x m encoded stripe.
struct Grid {
    int rows = 0, cols = 0;
    std::vector<Symbol> cells;

    Grid() = default;
    Grid(int r, int c) : rows(r), cols(c), cells(static_cast<size_t>(r) * c, 0) {}

    Symbol& at(int r, int c) { return cells[static_cast<size_t>(r) * cols + c]; }
    Symbol at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }
    Symbol& at(Cell p) { return at(p.row, p.col); }
    Symbol at(Cell p) const { return at(p.row, p.col); }

    bool operator==(const Grid&) const = default;

    // Data column `c` of the top k rows (callers pass k <= rows).
    std::vector<Symbol> column(int c, int k) const {
        std::vector<Symbol> out(static_cast<size_t>(k));
        for (int r = 0; r < k; ++r) out[static_cast<size_t>(r)] = at(r, c);
        return out;
    }
};

} // namespace pbkc
