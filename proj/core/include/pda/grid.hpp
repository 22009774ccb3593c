#pragma once

// Placement delivery arrays: an F x K array over [0,S) plus a star marker.
//
// Rows index subfiles, columns index users. A star at (j,k) means user k
// caches subfile j of every file; a symbol s marks subfile j as delivered by
// broadcast s.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pda {

using Symbol = std::uint32_t;

/// A single array entry: either a star or a symbol index.
class Cell {
public:
    constexpr Cell() = default;

    static constexpr Cell star() { return Cell{}; }
    static constexpr Cell symbol(Symbol s) { return Cell{static_cast<std::int64_t>(s)}; }

    constexpr bool is_star() const { return raw_ < 0; }
    constexpr bool is_symbol() const { return raw_ >= 0; }

    /// Precondition: is_symbol().
    constexpr Symbol value() const { return static_cast<Symbol>(raw_); }

    constexpr auto operator<=>(const Cell&) const = default;

private:
    constexpr explicit Cell(std::int64_t raw) : raw_(raw) {}

    // Stars sort before every symbol.
    std::int64_t raw_ = -1;
};

inline constexpr Cell kStar = Cell::star();

/// Thrown for arguments that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Immutable F x K grid over [0, s_bound) and star. Cells are row-major.
///
/// Construction enforces shape and symbol range only; PDA properties are
/// checked by verify().
class Grid {
public:
    /// The empty grid with one row, no columns and no symbols.
    Grid() : Grid(1, 0, 0, {}) {}

    /// Throws UsageError when rows == 0, cells.size() != rows * cols, or a
    /// symbol is >= s_bound.
    Grid(std::size_t rows, std::size_t cols, std::size_t s_bound, std::vector<Cell> cells);

    /// An F x 0 grid over [0, s_bound).
    static Grid empty(std::size_t rows, std::size_t s_bound = 0);

    /// Builds a grid from nested rows; negative entries denote stars.
    static Grid from_rows(const std::vector<std::vector<int>>& rows, std::size_t s_bound);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t s_bound() const { return s_bound_; }

    Cell at(std::size_t row, std::size_t col) const { return cells_[row * cols_ + col]; }
    std::span<const Cell> cells() const { return cells_; }
    std::span<const Cell> row(std::size_t r) const {
        return std::span<const Cell>(cells_).subspan(r * cols_, cols_);
    }

    std::size_t stars_in_column(std::size_t col) const;
    std::size_t stars_in_row(std::size_t row) const;

    /// Z when every column holds the same number of stars. Absent for K = 0.
    std::optional<std::size_t> column_star_count() const;

    /// Number of distinct symbols actually present.
    std::size_t symbols_used() const;

    /// Copy with s_bound raised to `s_bound` (must not shrink below the
    /// largest symbol present).
    Grid with_s_bound(std::size_t s_bound) const;

    bool operator==(const Grid&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t s_bound_;
    std::vector<Cell> cells_;
};

/// The parameter tuple (K, F, Z, S) together with d = gcd(F, S).
struct Params {
    std::size_t k = 0;
    std::size_t f = 0;
    std::optional<std::size_t> z;
    std::size_t s = 0;
    std::size_t d = 0;

    static Params of(const Grid& g);

    bool operator==(const Params&) const = default;
};

}  // namespace pda
