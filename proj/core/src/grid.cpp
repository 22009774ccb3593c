#include "pda/grid.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pda {

Grid::Grid(std::size_t rows, std::size_t cols, std::size_t s_bound, std::vector<Cell> cells)
    : rows_(rows), cols_(cols), s_bound_(s_bound), cells_(std::move(cells)) {
    if (rows_ == 0) {
        throw UsageError("grid must have at least one row");
    }
    if (cells_.size() != rows_ * cols_) {
        throw UsageError("grid has " + std::to_string(cells_.size()) + " cells, expected " +
                         std::to_string(rows_ * cols_));
    }
    for (const Cell c : cells_) {
        if (c.is_symbol() && c.value() >= s_bound_) {
            throw UsageError("symbol " + std::to_string(c.value()) + " outside [0," +
                             std::to_string(s_bound_) + ")");
        }
    }
}

Grid Grid::empty(std::size_t rows, std::size_t s_bound) { return Grid(rows, 0, s_bound, {}); }

Grid Grid::from_rows(const std::vector<std::vector<int>>& rows, std::size_t s_bound) {
    if (rows.empty()) {
        throw UsageError("grid must have at least one row");
    }
    const std::size_t cols = rows.front().size();
    std::vector<Cell> cells;
    cells.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw UsageError("ragged rows");
        }
        for (const int v : r) {
            cells.push_back(v < 0 ? kStar : Cell::symbol(static_cast<Symbol>(v)));
        }
    }
    return Grid(rows.size(), cols, s_bound, std::move(cells));
}

std::size_t Grid::stars_in_column(std::size_t col) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
        n += at(r, col).is_star() ? 1 : 0;
    }
    return n;
}

std::size_t Grid::stars_in_row(std::size_t r) const {
    const auto cells = row(r);
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(),
                                                  [](Cell c) { return c.is_star(); }));
}

std::optional<std::size_t> Grid::column_star_count() const {
    if (cols_ == 0) {
        return std::nullopt;
    }
    const std::size_t z = stars_in_column(0);
    for (std::size_t c = 1; c < cols_; ++c) {
        if (stars_in_column(c) != z) {
            return std::nullopt;
        }
    }
    return z;
}

std::size_t Grid::symbols_used() const {
    std::vector<bool> seen(s_bound_, false);
    std::size_t n = 0;
    for (const Cell c : cells_) {
        if (c.is_symbol() && !seen[c.value()]) {
            seen[c.value()] = true;
            ++n;
        }
    }
    return n;
}

Grid Grid::with_s_bound(std::size_t s_bound) const { return Grid(rows_, cols_, s_bound, cells_); }

Params Params::of(const Grid& g) {
    Params p;
    p.k = g.cols();
    p.f = g.rows();
    p.z = g.column_star_count();
    p.s = g.s_bound();
    p.d = std::gcd(p.f, p.s);
    return p;
}

}  // namespace pda
