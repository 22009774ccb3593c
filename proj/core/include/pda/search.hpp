#pragma once

// Exhaustive search for extremal PDAs at small parameters, and extraction of
// a subset-PDA block from a Z = F-2 array.

#include <chrono>
#include <cstdint>
#include <optional>

#include <nlohmann/json.hpp>

#include "pda/grid.hpp"

namespace pda {

struct SearchConfig {
    std::chrono::milliseconds time_budget{60'000};
    std::uint64_t node_budget = std::uint64_t{1} << 40;
    /// Skip targets refuted by pjd_holds (Z = F-2) or the recursive S bound.
    bool prune_with_bounds = true;
    /// 0 runs a sequential, deterministic search.
    unsigned parallel_width = 0;
};

struct SearchOutcome {
    /// Exact when exhausted; otherwise a witnessed lower bound (max_k) or
    /// upper bound (min_s).
    std::int64_t optimum = 0;
    Grid witness;
    bool exhausted = false;
    std::uint64_t nodes_visited = 0;
    std::chrono::duration<double> elapsed{0};

    nlohmann::json to_json() const;
};

enum class Feasibility { found, infeasible, aborted };

struct FeasibilityResult {
    Feasibility status = Feasibility::aborted;
    /// The (K, F, Z, S)-PDA when found, else the deepest partial array seen.
    Grid witness;
    std::uint64_t nodes = 0;
};

/// Decides whether a (K, F, Z, S)-PDA exists by canonical column-by-column
/// backtracking. Columns appear in non-decreasing star-pattern order, symbols
/// in first-use order, and columns sharing a star pattern have strictly
/// increasing first symbols. Requires Z < F <= 62.
FeasibilityResult find_pda(std::size_t k, std::size_t f, std::size_t z, std::size_t s,
                           const SearchConfig& cfg);

/// Maximum K such that a (K, F, Z, S)-PDA exists, trying targets downward
/// from upper_bound_k.
SearchOutcome max_k(std::size_t f, std::size_t z, std::size_t s, const SearchConfig& cfg = {});

/// Minimum S such that a (K, F, Z, S)-PDA exists, scanning upward from
/// lower_bound_s.
SearchOutcome min_s(std::size_t k, std::size_t f, std::size_t z, const SearchConfig& cfg = {});

struct Decomposition {
    /// A (F(F-1)/2, F, F-2, F)-PDA over exactly F symbols.
    Grid block;
    /// The remaining columns over the other S-F symbols, order preserved.
    Grid remainder;
    std::vector<std::size_t> block_columns;
};

/// Splits a valid Z = F-2 array with S = mF + r (1 <= r <= F, m > F-r-d)
/// into a subset-PDA block and the rest. Throws UsageError naming the first
/// unmet premise; returns nullopt when no block exists or the budget expires.
std::optional<Decomposition> decompose(const Grid& grid, const SearchConfig& cfg = {});

}  // namespace pda
