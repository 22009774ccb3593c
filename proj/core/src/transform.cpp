#include "pda/transform.hpp"

#include <algorithm>
#include <string>

namespace pda {

void require_bijection(const Permutation& perm, std::size_t n, const char* what) {
    if (perm.size() != n) {
        throw UsageError(std::string(what) + " permutation has length " +
                         std::to_string(perm.size()) + ", expected " + std::to_string(n));
    }
    std::vector<bool> hit(n, false);
    for (const std::size_t v : perm) {
        if (v >= n || hit[v]) {
            throw UsageError(std::string(what) + " permutation is not a bijection");
        }
        hit[v] = true;
    }
}

Grid permute(const Grid& g, const Permutation& row_perm, const Permutation& col_perm,
             const Permutation& symbol_perm) {
    require_bijection(row_perm, g.rows(), "row");
    require_bijection(col_perm, g.cols(), "column");
    require_bijection(symbol_perm, g.s_bound(), "symbol");

    std::vector<Cell> cells(g.rows() * g.cols(), kStar);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            const Cell cell = g.at(r, c);
            cells[row_perm[r] * g.cols() + col_perm[c]] =
                cell.is_star() ? kStar : Cell::symbol(static_cast<Symbol>(symbol_perm[cell.value()]));
        }
    }
    return Grid(g.rows(), g.cols(), g.s_bound(), std::move(cells));
}

namespace {

std::size_t extent(const Grid& g, Role r) {
    switch (r) {
        case Role::rows:
            return g.rows();
        case Role::columns:
            return g.cols();
        case Role::symbols:
            return g.s_bound();
    }
    return 0;
}

}  // namespace

// A grid is the set of triples (row, col, symbol) over its non-star cells;
// the PDA properties are symmetric in the three coordinates, so any
// relabeling of coordinates is again a PDA.
Grid role_permute(const Grid& g, const RoleAssignment& role_perm) {
    {
        std::array<bool, 3> used{};
        for (const Role r : role_perm) {
            used[static_cast<std::size_t>(r)] = true;
        }
        if (!(used[0] && used[1] && used[2])) {
            throw UsageError("role assignment is not a permutation of {rows, columns, symbols}");
        }
    }
    const std::size_t out_rows = extent(g, role_perm[0]);
    const std::size_t out_cols = extent(g, role_perm[1]);
    const std::size_t out_syms = extent(g, role_perm[2]);
    if (out_rows == 0) {
        throw UsageError("role permutation would produce a grid with no rows");
    }

    std::vector<Cell> cells(out_rows * out_cols, kStar);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            const Cell cell = g.at(r, c);
            if (cell.is_star()) {
                continue;
            }
            const std::array<std::size_t, 3> coord{r, c, cell.value()};
            const std::size_t nr = coord[static_cast<std::size_t>(role_perm[0])];
            const std::size_t nc = coord[static_cast<std::size_t>(role_perm[1])];
            const std::size_t ns = coord[static_cast<std::size_t>(role_perm[2])];
            cells[nr * out_cols + nc] = Cell::symbol(static_cast<Symbol>(ns));
        }
    }
    return Grid(out_rows, out_cols, out_syms, std::move(cells));
}

Grid transpose(const Grid& g) { return role_permute(g, {Role::columns, Role::rows, Role::symbols}); }

Grid symbol_dual(const Grid& g) {
    if (g.s_bound() == 0) {
        throw UsageError("symbol_dual requires S >= 1");
    }
    return role_permute(g, {Role::symbols, Role::columns, Role::rows});
}

std::vector<RoleAssignment> all_role_assignments() {
    std::array<Role, 3> roles{Role::rows, Role::columns, Role::symbols};
    std::vector<RoleAssignment> out;
    do {
        out.push_back(roles);
    } while (std::next_permutation(roles.begin(), roles.end()));
    return out;
}

Grid concat(const Grid& a, const Grid& b) {
    if (a.rows() != b.rows()) {
        throw UsageError("concat needs equal row counts, got " + std::to_string(a.rows()) +
                         " and " + std::to_string(b.rows()));
    }
    const std::size_t cols = a.cols() + b.cols();
    const auto shift = static_cast<Symbol>(a.s_bound());
    std::vector<Cell> cells;
    cells.reserve(a.rows() * cols);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto ra = a.row(r);
        cells.insert(cells.end(), ra.begin(), ra.end());
        for (const Cell c : b.row(r)) {
            cells.push_back(c.is_star() ? kStar : Cell::symbol(c.value() + shift));
        }
    }
    return Grid(a.rows(), cols, a.s_bound() + b.s_bound(), std::move(cells));
}

Grid replicate(const Grid& g, std::size_t m) {
    Grid out = Grid::empty(g.rows());
    for (std::size_t i = 0; i < m; ++i) {
        out = concat(out, g);
    }
    return out;
}

Grid subgrid(const Grid& g, const std::vector<std::size_t>& row_subset,
             const std::vector<std::size_t>& col_subset, bool compact_symbols) {
    if (row_subset.empty()) {
        throw UsageError("subgrid needs at least one row");
    }
    for (const std::size_t r : row_subset) {
        if (r >= g.rows()) {
            throw UsageError("subgrid row " + std::to_string(r) + " out of range");
        }
    }
    for (const std::size_t c : col_subset) {
        if (c >= g.cols()) {
            throw UsageError("subgrid column " + std::to_string(c) + " out of range");
        }
    }

    std::vector<Cell> cells;
    cells.reserve(row_subset.size() * col_subset.size());
    for (const std::size_t r : row_subset) {
        for (const std::size_t c : col_subset) {
            cells.push_back(g.at(r, c));
        }
    }
    std::size_t s_bound = g.s_bound();
    if (compact_symbols) {
        std::vector<bool> present(g.s_bound(), false);
        for (const Cell c : cells) {
            if (c.is_symbol()) {
                present[c.value()] = true;
            }
        }
        std::vector<Symbol> rank(g.s_bound(), 0);
        Symbol next = 0;
        for (std::size_t x = 0; x < present.size(); ++x) {
            if (present[x]) {
                rank[x] = next++;
            }
        }
        for (Cell& c : cells) {
            if (c.is_symbol()) {
                c = Cell::symbol(rank[c.value()]);
            }
        }
        s_bound = next;
    }
    return Grid(row_subset.size(), col_subset.size(), s_bound, std::move(cells));
}

}  // namespace pda
