#pragma once

// Closed-form and recursive bounds on K and S, and checkers for the
// structural properties of extremal Z = F-2 arrays.
//
// All arithmetic is exact integer arithmetic.

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "pda/grid.hpp"

namespace pda {

/// ceil(a / b) for b > 0, rounding toward +infinity for negative a too.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return (a % b != 0 && a > 0) ? q + 1 : q;
}

struct BoundEstimate {
    enum class Kind {
        lower_S_sum_f,
        lower_S_recursive,
        lower_S_yb2,
        upper_K,
        pjd_refutation,
        conjectured_K,
    };

    Kind kind;
    std::int64_t value = 0;
    /// Theorem-backed (true) or conjectural (false).
    bool certified = true;
    std::vector<std::int64_t> trace;

    nlohmann::json to_json() const;
};

std::string to_string(BoundEstimate::Kind k);

/// f(0) = ceil(K(F-Z)/F), f(i) = ceil(f(i-1)(F-Z-i)/(F-i)) for
/// i = 1..F-Z-1. Requires Z < F.
std::vector<std::int64_t> f_sequence(std::int64_t k, std::int64_t f, std::int64_t z);

/// S >= sum of f_sequence(K, F, Z).
BoundEstimate lower_bound_s(std::int64_t k, std::int64_t f, std::int64_t z);

/// Two-term form for Z = F-2: ceil(2K/F) + ceil(ceil(2K/F)/(F-1)). F >= 3.
BoundEstimate lower_bound_s_fz2(std::int64_t k, std::int64_t f);

/// Lower bound on the minimum S of a (K, F, Z)-PDA.
using SminOracle = std::function<BoundEstimate(std::int64_t k, std::int64_t f, std::int64_t z)>;

/// Smallest S >= lower_bound_s(K,F,Z) such that, with t = ceil((F-Z)K/S),
/// S >= oracle(t, F-t, Z+1-t) + 1. A sub-problem with no non-star cells
/// needs no symbols. The default oracle is lower_bound_s.
BoundEstimate recursive_lower_bound_s(std::int64_t k, std::int64_t f, std::int64_t z,
                                      const SminOracle& oracle = {});

/// Thread-safe memo table for recursive oracles.
class SminMemo {
public:
    std::optional<BoundEstimate> find(std::int64_t k, std::int64_t f, std::int64_t z) const;
    void insert(std::int64_t k, std::int64_t f, std::int64_t z, const BoundEstimate& b);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, BoundEstimate> table_;
};

/// An oracle that applies recursive_lower_bound_s to its own sub-problems,
/// memoized in `memo` (which must outlive the oracle).
SminOracle recursive_oracle(SminMemo& memo);

/// K <= floor((Z+1)S/(F-Z)). Requires Z < F.
BoundEstimate upper_bound_k(std::int64_t f, std::int64_t z, std::int64_t s);

/// Necessary condition for a (K, F, F-2, S)-PDA:
/// S >= ceil((2K + 2S - SF)/F) * F. Requires F >= 3.
bool pjd_holds(std::int64_t k, std::int64_t f, std::int64_t s);

/// (F-1)(S-1)/2 + (gcd(F,S)-1)/2, certified when a proven exact-value
/// result covers (F, S) or its dual (S, F).
BoundEstimate conjectured_k_fz2(std::int64_t f, std::int64_t s);

/// Whether the exact maximum K for Z = F-2 is known to equal the formula.
bool fz2_certified(std::int64_t f, std::int64_t s);

enum class Verdict { holds, fails, not_applicable };

std::string to_string(Verdict v);

struct StructuralReport {
    Verdict maxd = Verdict::not_applicable;
    Verdict maxe = Verdict::not_applicable;
    Verdict nar = Verdict::not_applicable;
    std::int64_t m = 0;
    std::int64_t r = 0;
    std::int64_t d = 0;
    std::vector<std::string> notes;

    nlohmann::json to_json() const;
};

/// Runs the multiplicity, row-content and missing-row checks for extremal
/// Z = F-2 arrays. Each verdict is not_applicable unless the grid is valid,
/// column-regular with Z = F-2, and K equals the formula value; the
/// missing-row check also needs m > F - r - d.
StructuralReport structural_checks(const Grid& grid);

}  // namespace pda
