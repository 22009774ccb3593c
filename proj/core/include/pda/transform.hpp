#pragma once

// Structure-preserving operations on grids. None of them mutate their input.

#include <array>
#include <cstddef>
#include <vector>

#include "pda/grid.hpp"

namespace pda {

using Permutation = std::vector<std::size_t>;

/// perm[i] is the image of index i. Throws UsageError unless perm is a
/// bijection on [0, n).
void require_bijection(const Permutation& perm, std::size_t n, const char* what);

/// Row i moves to row_perm[i], column j to col_perm[j], symbol x becomes
/// symbol_perm[x]. symbol_perm must be a bijection on [0, S).
Grid permute(const Grid& g, const Permutation& row_perm, const Permutation& col_perm,
             const Permutation& symbol_perm);

/// Throws UsageError when K = 0, since the result would have no rows.
Grid transpose(const Grid& g);

/// Exchanges the roles of rows and symbols: output cell (x, j) holds row k
/// when g(k, j) = x. Maps (K,F,Z,S) to (K,S,S-F+Z,F). Requires S >= 1.
Grid symbol_dual(const Grid& g);

enum class Role { rows, columns, symbols };

/// role_perm[r] names which role of the input takes role r in the output,
/// indexed as {rows, columns, symbols}. {rows, columns, symbols} is the
/// identity; {symbols, columns, rows} is symbol_dual.
using RoleAssignment = std::array<Role, 3>;

Grid role_permute(const Grid& g, const RoleAssignment& role_perm);

/// All six role assignments, identity first.
std::vector<RoleAssignment> all_role_assignments();

/// Horizontal juxtaposition with b's symbols shifted by a.s_bound().
Grid concat(const Grid& a, const Grid& b);

/// m disjoint-symbol copies side by side; m = 0 yields the F x 0 grid with S = 0.
Grid replicate(const Grid& g, std::size_t m);

/// Induced subarray on the given (ordered) rows and columns. With
/// compact_symbols the surviving symbols are renumbered densely in order of
/// their original value.
Grid subgrid(const Grid& g, const std::vector<std::size_t>& row_subset,
             const std::vector<std::size_t>& col_subset, bool compact_symbols);

}  // namespace pda
