#include "pda/bounds.hpp"

#include <algorithm>
#include <numeric>

#include "pda/constructions.hpp"
#include "pda/verify.hpp"

namespace pda {

std::string to_string(BoundEstimate::Kind k) {
    switch (k) {
        case BoundEstimate::Kind::lower_S_sum_f:
            return "lower_S_sum_f";
        case BoundEstimate::Kind::lower_S_recursive:
            return "lower_S_recursive";
        case BoundEstimate::Kind::lower_S_yb2:
            return "lower_S_yb2";
        case BoundEstimate::Kind::upper_K:
            return "upper_K";
        case BoundEstimate::Kind::pjd_refutation:
            return "pjd_refutation";
        case BoundEstimate::Kind::conjectured_K:
            return "conjectured_K";
    }
    return "?";
}

nlohmann::json BoundEstimate::to_json() const {
    return {{"kind", to_string(kind)}, {"value", value}, {"certified", certified}, {"trace", trace}};
}

std::vector<std::int64_t> f_sequence(std::int64_t k, std::int64_t f, std::int64_t z) {
    if (z < 0 || z >= f) {
        throw UsageError("f_sequence needs 0 <= Z < F");
    }
    if (k < 0) {
        throw UsageError("f_sequence needs K >= 0");
    }
    std::vector<std::int64_t> seq;
    seq.push_back(ceil_div(k * (f - z), f));
    for (std::int64_t i = 1; i <= f - z - 1; ++i) {
        seq.push_back(ceil_div(seq.back() * (f - z - i), f - i));
    }
    return seq;
}

BoundEstimate lower_bound_s(std::int64_t k, std::int64_t f, std::int64_t z) {
    BoundEstimate b{BoundEstimate::Kind::lower_S_sum_f, 0, true, {}};
    b.trace = f_sequence(k, f, z);
    b.value = std::accumulate(b.trace.begin(), b.trace.end(), std::int64_t{0});
    return b;
}

BoundEstimate lower_bound_s_fz2(std::int64_t k, std::int64_t f) {
    if (f < 3) {
        throw UsageError("lower_bound_s_fz2 needs F >= 3");
    }
    BoundEstimate b{BoundEstimate::Kind::lower_S_yb2, 0, true, {}};
    const std::int64_t first = ceil_div(2 * k, f);
    const std::int64_t second = ceil_div(first, f - 1);
    b.trace = {first, second};
    b.value = first + second;
    return b;
}

BoundEstimate recursive_lower_bound_s(std::int64_t k, std::int64_t f, std::int64_t z,
                                      const SminOracle& oracle) {
    const SminOracle& sub_bound = oracle ? oracle : SminOracle(lower_bound_s);
    const std::int64_t floor_s = lower_bound_s(k, f, z).value;

    BoundEstimate b{BoundEstimate::Kind::lower_S_recursive, 0, true, {}};
    if (k == 0) {
        b.trace = {floor_s};
        return b;
    }
    for (std::int64_t s = std::max<std::int64_t>(floor_s, 1);; ++s) {
        // Some symbol occurs at least t times; no symbol can occur more than Z+1 times.
        const std::int64_t t = ceil_div((f - z) * k, s);
        if (t > z + 1) {
            continue;
        }
        const std::int64_t sub_f = f - t;
        const std::int64_t sub_z = z + 1 - t;
        std::int64_t needed = 0;
        bool certified = true;
        if (sub_f > sub_z) {
            const BoundEstimate sub = sub_bound(t, sub_f, sub_z);
            needed = sub.value;
            certified = sub.certified;
        }
        if (s >= needed + 1) {
            b.value = s;
            b.certified = certified;
            b.trace = {floor_s, t, needed};
            return b;
        }
    }
}

std::optional<BoundEstimate> SminMemo::find(std::int64_t k, std::int64_t f, std::int64_t z) const {
    const std::lock_guard lock(mutex_);
    const auto it = table_.find({k, f, z});
    if (it == table_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void SminMemo::insert(std::int64_t k, std::int64_t f, std::int64_t z, const BoundEstimate& b) {
    const std::lock_guard lock(mutex_);
    table_.emplace(std::make_tuple(k, f, z), b);
}

std::size_t SminMemo::size() const {
    const std::lock_guard lock(mutex_);
    return table_.size();
}

namespace {

BoundEstimate memoized_recursive_bound(std::int64_t k, std::int64_t f, std::int64_t z,
                                       SminMemo& memo) {
    if (auto hit = memo.find(k, f, z)) {
        return *hit;
    }
    const BoundEstimate b = recursive_lower_bound_s(
        k, f, z, [&memo](std::int64_t kk, std::int64_t ff, std::int64_t zz) {
            return memoized_recursive_bound(kk, ff, zz, memo);
        });
    memo.insert(k, f, z, b);
    return b;
}

}  // namespace

SminOracle recursive_oracle(SminMemo& memo) {
    return [&memo](std::int64_t k, std::int64_t f, std::int64_t z) {
        return memoized_recursive_bound(k, f, z, memo);
    };
}

BoundEstimate upper_bound_k(std::int64_t f, std::int64_t z, std::int64_t s) {
    if (z < 0 || z >= f) {
        throw UsageError("upper_bound_k needs 0 <= Z < F");
    }
    BoundEstimate b{BoundEstimate::Kind::upper_K, 0, true, {}};
    b.value = (z + 1) * s / (f - z);
    b.trace = {z + 1, s, f - z};
    return b;
}

bool pjd_holds(std::int64_t k, std::int64_t f, std::int64_t s) {
    if (f < 3) {
        throw UsageError("pjd_holds needs F >= 3");
    }
    return s >= ceil_div(2 * k + 2 * s - s * f, f) * f;
}

namespace {

bool fz2_certified_direct(std::int64_t f, std::int64_t s) {
    if (f <= 6 || s <= 0) {
        return true;
    }
    const std::int64_t m = (s - 1) / f;
    const std::int64_t r = s - m * f;
    return r == 1 || r == 2 || r == f - 2 || r == f - 1 || r == f || f % r == 0;
}

}  // namespace

bool fz2_certified(std::int64_t f, std::int64_t s) {
    // The optimum is invariant under exchanging F and S.
    return fz2_certified_direct(f, s) || fz2_certified_direct(s, f);
}

BoundEstimate conjectured_k_fz2(std::int64_t f, std::int64_t s) {
    if (f < 2) {
        throw UsageError("conjectured_k_fz2 needs F >= 2");
    }
    BoundEstimate b{BoundEstimate::Kind::conjectured_K, 0, true, {}};
    b.value = fz2_formula(f, s);
    b.certified = fz2_certified(f, s);
    b.trace = {f - 1, s - 1, std::gcd(f, s)};
    return b;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds:
            return "holds";
        case Verdict::fails:
            return "fails";
        case Verdict::not_applicable:
            return "not-applicable";
    }
    return "?";
}

nlohmann::json StructuralReport::to_json() const {
    return {{"maxd", to_string(maxd)}, {"maxe", to_string(maxe)}, {"nar", to_string(nar)},
            {"m", m},                  {"r", r},                  {"d", d},
            {"notes", notes}};
}

StructuralReport structural_checks(const Grid& grid) {
    StructuralReport out;
    const auto f = static_cast<std::int64_t>(grid.rows());
    const auto s = static_cast<std::int64_t>(grid.s_bound());
    const auto k = static_cast<std::int64_t>(grid.cols());
    if (f < 2 || s < 1) {
        out.notes.push_back("needs F >= 2 and S >= 1");
        return out;
    }
    const VerificationReport report = verify(grid, static_cast<std::size_t>(f - 2));
    if (!report.valid) {
        out.notes.push_back("not a valid PDA with Z = F-2");
        return out;
    }
    out.m = (s - 1) / f;
    out.r = s - out.m * f;
    out.d = std::gcd(f, s);
    if (k != fz2_formula(f, s)) {
        out.notes.push_back("K differs from the extremal formula value " +
                            std::to_string(fz2_formula(f, s)));
        return out;
    }

    // Multiplicity: enough symbols reach F-1 occurrences.
    std::int64_t full = 0;
    bool bounded = true;
    for (const std::size_t mult : report.multiplicity) {
        const auto dm = static_cast<std::int64_t>(mult);
        bounded = bounded && dm <= f - 1;
        full += dm == f - 1 ? 1 : 0;
    }
    out.maxd = bounded && full >= s - (f - out.d) ? Verdict::holds : Verdict::fails;

    // Row content: in a valid grid non-star cells of a row are distinct.
    const std::int64_t cap = s - (out.m + 1);
    std::int64_t at_cap = 0;
    bool rows_bounded = true;
    for (std::size_t row = 0; row < grid.rows(); ++row) {
        const auto n = k - static_cast<std::int64_t>(grid.stars_in_row(row));
        rows_bounded = rows_bounded && n <= cap;
        at_cap += n == cap ? 1 : 0;
    }
    out.maxe = rows_bounded && at_cap >= f - out.r + out.d ? Verdict::holds : Verdict::fails;

    // Missing rows: every row is the sole gap of some full-multiplicity symbol.
    if (out.m > f - out.r - out.d) {
        std::vector<bool> covered(grid.rows(), false);
        for (std::size_t x = 0; x < report.multiplicity.size(); ++x) {
            if (static_cast<std::int64_t>(report.multiplicity[x]) == f - 1 &&
                report.missing_rows[x].size() == 1) {
                covered[report.missing_rows[x].front()] = true;
            }
        }
        out.nar = std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })
                      ? Verdict::holds
                      : Verdict::fails;
    } else {
        out.notes.push_back("missing-row check needs m > F - r - d");
    }
    return out;
}

}  // namespace pda
