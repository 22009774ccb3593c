#include "pda/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "pda/bounds.hpp"
#include "pda/transform.hpp"
#include "pda/verify.hpp"

namespace pda {

nlohmann::json SearchOutcome::to_json() const {
    return {{"optimum", optimum},
            {"exhausted", exhausted},
            {"nodes", nodes_visited},
            {"elapsed", elapsed.count()}};
}

namespace {

using Clock = std::chrono::steady_clock;
using Mask = std::uint64_t;

constexpr int kStarCell = -1;

/// Shared between the workers of one feasibility search.
struct Budget {
    Clock::time_point deadline;
    std::uint64_t node_limit;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> exceeded{false};
};

/// A column as (star-pattern index, symbol per row or kStarCell).
struct ColumnChoice {
    std::size_t pattern;
    std::vector<int> cells;
};

class Searcher {
public:
    Searcher(std::size_t k, std::size_t f, std::size_t z, std::size_t s,
             const std::vector<Mask>& patterns, Budget& budget)
        : k_(k),
          f_(f),
          z_(z),
          s_(s),
          patterns_(patterns),
          budget_(budget),
          sym_rows_(s, 0),
          sym_stars_(s, ~Mask{0}) {}

    /// Depth-first extension to k columns.
    bool run() { return extend(); }

    /// Collects all canonical prefixes of the given depth instead of searching.
    std::vector<std::vector<ColumnChoice>> prefixes(std::size_t depth) {
        collect_depth_ = depth;
        extend();
        collect_depth_ = 0;
        return std::move(collected_);
    }

    /// Applies previously admissible columns without re-checking.
    void replay(const std::vector<ColumnChoice>& prefix) {
        for (const auto& col : prefix) {
            const Mask stars = patterns_[col.pattern];
            for (std::size_t row = 0; row < f_; ++row) {
                const int x = col.cells[row];
                if (x == kStarCell) {
                    continue;
                }
                used_ = std::max<std::size_t>(used_, static_cast<std::size_t>(x) + 1);
                sym_rows_[x] |= Mask{1} << row;
                sym_stars_[x] &= stars;
            }
            columns_.push_back(col);
        }
        note_depth();
    }

    Grid grid(std::size_t take) const {
        std::vector<Cell> cells(f_ * take, kStar);
        for (std::size_t c = 0; c < take; ++c) {
            for (std::size_t row = 0; row < f_; ++row) {
                const int x = columns_[c].cells[row];
                if (x != kStarCell) {
                    cells[row * take + c] = Cell::symbol(static_cast<Symbol>(x));
                }
            }
        }
        return Grid(f_, take, s_, std::move(cells));
    }

    const Grid& deepest() const { return deepest_; }
    std::size_t deepest_depth() const { return deepest_depth_; }
    std::uint64_t local_nodes() const { return local_nodes_; }

private:
    bool out_of_budget() {
        ++local_nodes_;
        const std::uint64_t n = budget_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (budget_.stop.load(std::memory_order_relaxed)) {
            return true;
        }
        if (n > budget_.node_limit || ((local_nodes_ & 0x3ff) == 0 && Clock::now() > budget_.deadline)) {
            budget_.exceeded.store(true);
            budget_.stop.store(true);
            return true;
        }
        return false;
    }

    void note_depth() {
        if (columns_.size() > deepest_depth_ || deepest_depth_ == 0) {
            deepest_depth_ = columns_.size();
            deepest_ = grid(columns_.size());
        }
    }

    // Upper bound on how many more non-star cells the symbols can absorb.
    bool capacity_allows() const {
        const std::size_t needed = (k_ - columns_.size()) * (f_ - z_);
        std::size_t cap = (s_ - used_) * (z_ + 1);
        for (std::size_t x = 0; x < used_ && cap < needed; ++x) {
            cap += static_cast<std::size_t>(std::popcount(sym_stars_[x] & full_mask()));
        }
        return cap >= needed;
    }

    Mask full_mask() const { return f_ == 64 ? ~Mask{0} : (Mask{1} << f_) - 1; }

    bool extend() {
        if (columns_.size() == k_) {
            return true;
        }
        if (collect_depth_ > 0 && columns_.size() == collect_depth_) {
            collected_.push_back(columns_);
            return false;
        }
        if (out_of_budget() || !capacity_allows()) {
            return false;
        }
        const std::size_t first_pattern = columns_.empty() ? 0 : columns_.back().pattern;
        for (std::size_t p = first_pattern; p < patterns_.size(); ++p) {
            const Mask stars = patterns_[p];
            std::vector<std::size_t> open_rows;
            for (std::size_t row = 0; row < f_; ++row) {
                if (!(stars >> row & 1)) {
                    open_rows.push_back(row);
                }
            }
            int min_first = 0;
            if (!columns_.empty() && columns_.back().pattern == p) {
                min_first = columns_.back().cells[open_rows.front()] + 1;
            }
            ColumnChoice col{p, std::vector<int>(f_, kStarCell)};
            if (assign(col, stars, open_rows, 0, min_first)) {
                return true;
            }
            if (budget_.stop.load(std::memory_order_relaxed)) {
                return false;
            }
        }
        return false;
    }

    bool assign(ColumnChoice& col, Mask stars, const std::vector<std::size_t>& open_rows,
                std::size_t pos, int min_first) {
        if (pos == open_rows.size()) {
            columns_.push_back(col);
            note_depth();
            const bool ok = extend();
            if (!ok) {
                columns_.pop_back();
            }
            return ok;
        }
        const std::size_t row = open_rows[pos];
        const int lo = pos == 0 ? min_first : 0;
        const int fresh = static_cast<int>(used_);
        const int hi = used_ < s_ ? fresh : fresh - 1;
        for (int x = lo; x <= hi; ++x) {
            // Every earlier row of x must be a star here, and every earlier
            // column of x must have a star in this row.
            if ((sym_rows_[x] & ~stars) != 0 || !(sym_stars_[x] >> row & 1)) {
                continue;
            }
            const Mask old_rows = sym_rows_[x];
            const Mask old_stars = sym_stars_[x];
            sym_rows_[x] |= Mask{1} << row;
            sym_stars_[x] &= stars;
            if (x == fresh) {
                ++used_;
            }
            col.cells[row] = x;
            if (assign(col, stars, open_rows, pos + 1, min_first)) {
                return true;
            }
            col.cells[row] = kStarCell;
            if (x == fresh) {
                --used_;
            }
            sym_rows_[x] = old_rows;
            sym_stars_[x] = old_stars;
            if (budget_.stop.load(std::memory_order_relaxed)) {
                return false;
            }
        }
        return false;
    }

    std::size_t k_, f_, z_, s_;
    const std::vector<Mask>& patterns_;
    Budget& budget_;

    std::vector<Mask> sym_rows_;   // rows holding x
    std::vector<Mask> sym_stars_;  // rows that are stars in every column holding x
    std::size_t used_ = 0;
    std::vector<ColumnChoice> columns_;

    std::size_t collect_depth_ = 0;
    std::vector<std::vector<ColumnChoice>> collected_;

    Grid deepest_;
    std::size_t deepest_depth_ = 0;
    std::uint64_t local_nodes_ = 0;
};

std::vector<Mask> star_patterns(std::size_t f, std::size_t z) {
    std::vector<Mask> out;
    const Mask limit = Mask{1} << f;
    for (Mask m = 0; m < limit; ++m) {
        if (static_cast<std::size_t>(std::popcount(m)) == z) {
            out.push_back(m);
        }
    }
    return out;
}

Grid distinct_symbol_grid(std::size_t k, std::size_t f, std::size_t z) {
    std::vector<Cell> cells(f * k, kStar);
    Symbol next = 0;
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t row = z; row < f; ++row) {
            cells[row * k + c] = Cell::symbol(next++);
        }
    }
    return Grid(f, k, k * (f - z), std::move(cells));
}

}  // namespace

FeasibilityResult find_pda(std::size_t k, std::size_t f, std::size_t z, std::size_t s,
                           const SearchConfig& cfg) {
    if (z >= f) {
        throw UsageError("search needs Z < F");
    }
    if (f > 62) {
        throw UsageError("search supports F <= 62");
    }
    FeasibilityResult result;
    result.witness = Grid::empty(f, s);
    if (k == 0) {
        result.status = Feasibility::found;
        return result;
    }
    if (s == 0) {
        result.status = Feasibility::infeasible;
        return result;
    }

    const auto patterns = star_patterns(f, z);
    Budget budget;
    budget.deadline = Clock::now() + cfg.time_budget;
    budget.node_limit = cfg.node_budget;

    if (cfg.parallel_width == 0) {
        Searcher searcher(k, f, z, s, patterns, budget);
        const bool found = searcher.run();
        result.nodes = budget.nodes.load();
        if (found) {
            result.status = Feasibility::found;
            result.witness = searcher.grid(k);
        } else {
            result.status = budget.exceeded ? Feasibility::aborted : Feasibility::infeasible;
            result.witness = searcher.deepest();
        }
        return result;
    }

    // Split the canonical tree into disjoint prefixes and hand them out.
    const std::size_t split = std::min<std::size_t>(2, k);
    std::vector<std::vector<ColumnChoice>> work;
    {
        Budget unlimited;
        unlimited.deadline = Clock::time_point::max();
        unlimited.node_limit = ~std::uint64_t{0};
        Searcher splitter(k, f, z, s, patterns, unlimited);
        if (split == k) {
            // Tiny targets: search directly.
            SearchConfig seq = cfg;
            seq.parallel_width = 0;
            return find_pda(k, f, z, s, seq);
        }
        work = splitter.prefixes(split);
    }

    std::atomic<std::size_t> next{0};
    std::mutex mu;
    bool found = false;
    Grid witness;
    Grid deepest = Grid::empty(f, s);
    std::size_t deepest_depth = 0;

    const auto worker = [&] {
        while (!budget.stop.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= work.size()) {
                return;
            }
            Searcher searcher(k, f, z, s, patterns, budget);
            searcher.replay(work[i]);
            const bool ok = searcher.run();
            const std::lock_guard lock(mu);
            if (ok && !found) {
                found = true;
                witness = searcher.grid(k);
                budget.stop.store(true);
            }
            if (searcher.deepest_depth() > deepest_depth) {
                deepest_depth = searcher.deepest_depth();
                deepest = searcher.deepest();
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < cfg.parallel_width; ++t) {
        threads.emplace_back(worker);
    }
    for (auto& t : threads) {
        t.join();
    }

    result.nodes = budget.nodes.load();
    if (found) {
        result.status = Feasibility::found;
        result.witness = std::move(witness);
    } else {
        result.status = budget.exceeded ? Feasibility::aborted : Feasibility::infeasible;
        result.witness = std::move(deepest);
    }
    return result;
}

namespace {

SearchConfig remaining(const SearchConfig& cfg, Clock::time_point start, std::uint64_t nodes_used) {
    SearchConfig out = cfg;
    const auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    out.time_budget = std::max(std::chrono::milliseconds{0}, cfg.time_budget - spent);
    out.node_budget = nodes_used >= cfg.node_budget ? 0 : cfg.node_budget - nodes_used;
    return out;
}

std::vector<std::size_t> iota_n(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

}  // namespace

SearchOutcome max_k(std::size_t f, std::size_t z, std::size_t s, const SearchConfig& cfg) {
    if (z >= f) {
        throw UsageError("max_k needs Z < F");
    }
    const auto start = Clock::now();
    SearchOutcome out;
    out.witness = Grid::empty(f, s);
    out.exhausted = true;

    const auto fi = static_cast<std::int64_t>(f);
    const auto zi = static_cast<std::int64_t>(z);
    const std::int64_t ub = upper_bound_k(fi, zi, static_cast<std::int64_t>(s)).value;
    const bool use_pjd = cfg.prune_with_bounds && f >= 3 && z + 2 == f;

    Grid deepest = Grid::empty(f, s);
    for (std::int64_t target = ub; target > 0; --target) {
        if (use_pjd && !pjd_holds(target, fi, static_cast<std::int64_t>(s))) {
            continue;
        }
        if (static_cast<std::int64_t>(deepest.cols()) >= target) {
            out.optimum = target;
            out.witness = subgrid(deepest, iota_n(f), iota_n(static_cast<std::size_t>(target)), false);
            break;
        }
        const auto res = find_pda(static_cast<std::size_t>(target), f, z, s,
                                  remaining(cfg, start, out.nodes_visited));
        out.nodes_visited += res.nodes;
        if (res.status == Feasibility::found) {
            out.optimum = target;
            out.witness = res.witness;
            break;
        }
        if (res.witness.cols() > deepest.cols()) {
            deepest = res.witness;
        }
        if (res.status == Feasibility::aborted) {
            out.exhausted = false;
            out.optimum = static_cast<std::int64_t>(deepest.cols());
            out.witness = deepest;
            break;
        }
    }
    out.elapsed = Clock::now() - start;
    return out;
}

SearchOutcome min_s(std::size_t k, std::size_t f, std::size_t z, const SearchConfig& cfg) {
    if (z >= f) {
        throw UsageError("min_s needs Z < F");
    }
    const auto start = Clock::now();
    SearchOutcome out;
    out.exhausted = true;
    if (k == 0) {
        out.witness = Grid::empty(f);
        out.elapsed = Clock::now() - start;
        return out;
    }

    const auto ki = static_cast<std::int64_t>(k);
    const auto fi = static_cast<std::int64_t>(f);
    const auto zi = static_cast<std::int64_t>(z);
    std::int64_t first = lower_bound_s(ki, fi, zi).value;
    if (cfg.prune_with_bounds) {
        first = std::max(first, recursive_lower_bound_s(ki, fi, zi).value);
    }
    const bool use_pjd = cfg.prune_with_bounds && f >= 3 && z + 2 == f;
    const std::int64_t trivial = ki * (fi - zi);

    for (std::int64_t s = first; s <= trivial; ++s) {
        if (use_pjd && !pjd_holds(ki, fi, s)) {
            continue;
        }
        const auto res = find_pda(k, f, z, static_cast<std::size_t>(s),
                                  remaining(cfg, start, out.nodes_visited));
        out.nodes_visited += res.nodes;
        if (res.status == Feasibility::found) {
            out.optimum = s;
            out.witness = res.witness;
            out.elapsed = Clock::now() - start;
            return out;
        }
        if (res.status == Feasibility::aborted) {
            break;
        }
    }
    // Out of budget: every column on fresh symbols always works.
    out.exhausted = false;
    out.optimum = trivial;
    out.witness = distinct_symbol_grid(k, f, z);
    out.elapsed = Clock::now() - start;
    return out;
}

std::optional<Decomposition> decompose(const Grid& grid, const SearchConfig& cfg) {
    const std::size_t f = grid.rows();
    const std::size_t s = grid.s_bound();
    if (f < 3) {
        throw UsageError("decompose needs F >= 3");
    }
    const VerificationReport report = verify(grid, f - 2);
    if (!report.valid) {
        throw UsageError("decompose needs a valid PDA with Z = F-2 stars per column");
    }
    if (s < f) {
        throw UsageError("decompose needs S >= F");
    }
    const auto fi = static_cast<std::int64_t>(f);
    const auto si = static_cast<std::int64_t>(s);
    const std::int64_t m = (si - 1) / fi;
    const std::int64_t r = si - m * fi;
    const std::int64_t d = std::gcd(fi, si);
    if (!(m > fi - r - d)) {
        throw UsageError("decompose needs m > F - r - d (S = mF + r, 1 <= r <= F, d = gcd(F,S))");
    }

    const auto deadline = Clock::now() + cfg.time_budget;

    // Where each symbol sits, and the partner symbol sharing each column.
    std::vector<std::vector<CellPos>> occ(s);
    for (std::size_t row = 0; row < f; ++row) {
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            if (const Cell cell = grid.at(row, c); cell.is_symbol()) {
                occ[cell.value()].emplace_back(row, c);
            }
        }
    }
    const auto partner = [&](std::size_t row, std::size_t c) -> std::optional<Symbol> {
        for (std::size_t other = 0; other < f; ++other) {
            if (other != row && grid.at(other, c).is_symbol()) {
                return grid.at(other, c).value();
            }
        }
        return std::nullopt;
    };
    const auto full = [&](Symbol x) {
        return report.multiplicity[x] == f - 1 && report.missing_rows[x].size() == 1;
    };

    // A block is a set of F full-multiplicity symbols, one missing each row,
    // closed under sharing a column. Closure from any member determines it.
    std::vector<bool> tried(s, false);
    for (Symbol seed = 0; seed < s; ++seed) {
        if (Clock::now() > deadline) {
            return std::nullopt;
        }
        if (tried[seed] || !full(seed)) {
            continue;
        }
        std::vector<Symbol> members{seed};
        std::vector<bool> in_set(s, false);
        std::vector<bool> row_taken(f, false);
        in_set[seed] = true;
        row_taken[report.missing_rows[seed].front()] = true;
        bool ok = true;
        for (std::size_t i = 0; i < members.size() && ok; ++i) {
            for (const auto& [row, c] : occ[members[i]]) {
                const auto y = partner(row, c);
                if (!y || in_set[*y]) {
                    continue;
                }
                const std::size_t missing = full(*y) ? report.missing_rows[*y].front() : f;
                if (missing == f || row_taken[missing] || members.size() == f) {
                    ok = false;
                    break;
                }
                in_set[*y] = true;
                row_taken[missing] = true;
                members.push_back(*y);
            }
        }
        for (const Symbol x : members) {
            tried[x] = true;
        }
        if (!ok || members.size() != f) {
            continue;
        }

        std::vector<std::size_t> block_cols;
        std::vector<std::size_t> rest_cols;
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            bool member_col = false;
            for (std::size_t row = 0; row < f; ++row) {
                const Cell cell = grid.at(row, c);
                member_col = member_col || (cell.is_symbol() && in_set[cell.value()]);
            }
            (member_col ? block_cols : rest_cols).push_back(c);
        }
        const auto rows = iota_n(f);
        Grid block = subgrid(grid, rows, block_cols, true);

        // Remainder keeps the non-member symbols in their original order.
        std::vector<Symbol> relabel(s, 0);
        Symbol next = 0;
        for (Symbol x = 0; x < s; ++x) {
            if (!in_set[x]) {
                relabel[x] = next++;
            }
        }
        std::vector<Cell> cells;
        cells.reserve(f * rest_cols.size());
        for (std::size_t row = 0; row < f; ++row) {
            for (const std::size_t c : rest_cols) {
                const Cell cell = grid.at(row, c);
                cells.push_back(cell.is_star() ? kStar : Cell::symbol(relabel[cell.value()]));
            }
        }
        Grid rest(f, rest_cols.size(), s - f, std::move(cells));
        return Decomposition{std::move(block), std::move(rest), std::move(block_cols)};
    }
    return std::nullopt;
}

}  // namespace pda
