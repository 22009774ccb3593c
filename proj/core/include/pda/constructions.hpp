#pragma once

// Explicit and recursive PDA families.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pda/grid.hpp"

namespace pda {

/// Colexicographic rank of an ascending subset: sum of C(c_i, i+1).
std::uint64_t colex_rank(const std::vector<std::size_t>& subset);

/// All k-subsets of [0, n) in colexicographic order.
std::vector<std::vector<std::size_t>> colex_subsets(std::size_t n, std::size_t k);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// The subset PDA with parameters (C(F,Z), F, Z, C(F,Z+1)). Column B is the
/// B-th Z-subset of [0,F) in colex order; cell (i, B) is a star when i is in
/// B, else the colex rank of B + {i}. Requires Z < F.
Grid mn_pda(std::size_t f, std::size_t z);

/// The starless (floor(S/2), 2, 0, S)-PDA: column j holds 2j over 2j+1.
Grid f2_base(std::size_t s);

/// Provenance of a constructed grid. Evaluating the tree reproduces the grid.
struct Recipe {
    enum class Kind { mn, f2_base, optimal_fz2, replicate, concat, dual };

    Kind kind;
    std::map<std::string, std::int64_t> params;
    std::vector<Recipe> children;

    /// Concatenates the children of optimal_fz2 / concat nodes; optimal_fz2
    /// then widens s_bound to its "s" parameter.
    Grid evaluate() const;

    nlohmann::json to_json() const;
};

std::string to_string(Recipe::Kind k);

struct Construction {
    Grid grid;
    Recipe recipe;
};

/// Closed form (F-1)(S-1)/2 + (gcd(F,S)-1)/2.
std::int64_t fz2_formula(std::int64_t f, std::int64_t s);

/// A (K*, F, F-2, S)-PDA with K* = fz2_formula(F, S), built by writing
/// S = mF + r with 1 <= r <= F and joining m subset blocks with the symbol
/// dual of the (r, F) solution. Requires F >= 2.
Construction optimal_fz2(std::size_t f, std::size_t s);

}  // namespace pda
