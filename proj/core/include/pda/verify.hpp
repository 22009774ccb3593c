#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pda/grid.hpp"

namespace pda {

using CellPos = std::pair<std::size_t, std::size_t>;  // (row, col)

struct RowRepeat {
    std::size_t row;
    Symbol symbol;
    std::size_t col1;
    std::size_t col2;
};

struct ColRepeat {
    std::size_t col;
    Symbol symbol;
    std::size_t row1;
    std::size_t row2;
};

/// Equal symbols at cell_a and cell_b whose opposite corner is not a star.
struct CornerViolation {
    Symbol symbol;
    CellPos cell_a;
    CellPos cell_b;
    CellPos offending_corner;
};

struct StarCountMismatch {
    std::size_t col;
    std::size_t found;
    std::size_t expected;
};

using Violation = std::variant<RowRepeat, ColRepeat, CornerViolation, StarCountMismatch>;

std::string describe(const Violation& v);

struct VerificationReport {
    bool valid = true;
    std::vector<Violation> violations;
    /// multiplicity[x] = d(x), the number of occurrences of symbol x.
    std::vector<std::size_t> multiplicity;
    /// missing_rows[x] = A_x, the ascending rows in which x does not occur.
    std::vector<std::vector<std::size_t>> missing_rows;
};

/// Checks both PDA properties and, when given, the per-column star count.
/// Statistics are filled regardless of validity.
VerificationReport verify(const Grid& grid, std::optional<std::size_t> expected_z = std::nullopt);

inline bool is_valid(const Grid& grid, std::optional<std::size_t> expected_z = std::nullopt) {
    return verify(grid, expected_z).valid;
}

}  // namespace pda
