#include "pda/constructions.hpp"

#include <numeric>

#include "pda/transform.hpp"

namespace pda {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

std::uint64_t colex_rank(const std::vector<std::size_t>& subset) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        rank += binomial(subset[i], i + 1);
    }
    return rank;
}

std::vector<std::vector<std::size_t>> colex_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) {
        return out;
    }
    std::vector<std::size_t> cur(k);
    std::iota(cur.begin(), cur.end(), std::size_t{0});
    while (true) {
        out.push_back(cur);
        // Colex successor: bump the first element that can move up.
        std::size_t i = 0;
        while (i < k && cur[i] + 1 == (i + 1 < k ? cur[i + 1] : n)) {
            ++i;
        }
        if (i == k) {
            break;
        }
        ++cur[i];
        for (std::size_t j = 0; j < i; ++j) {
            cur[j] = j;
        }
    }
    return out;
}

Grid mn_pda(std::size_t f, std::size_t z) {
    if (z >= f) {
        throw UsageError("mn_pda needs Z < F");
    }
    const auto columns = colex_subsets(f, z);
    const std::size_t k = columns.size();
    std::vector<Cell> cells(f * k, kStar);
    for (std::size_t c = 0; c < k; ++c) {
        const auto& block = columns[c];
        std::vector<bool> in_block(f, false);
        for (const std::size_t i : block) {
            in_block[i] = true;
        }
        for (std::size_t i = 0; i < f; ++i) {
            if (in_block[i]) {
                continue;
            }
            std::vector<std::size_t> grown = block;
            grown.insert(std::upper_bound(grown.begin(), grown.end(), i), i);
            cells[i * k + c] = Cell::symbol(static_cast<Symbol>(colex_rank(grown)));
        }
    }
    return Grid(f, k, binomial(f, z + 1), std::move(cells));
}

Grid f2_base(std::size_t s) {
    const std::size_t k = s / 2;
    std::vector<Cell> cells(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
        cells[j] = Cell::symbol(static_cast<Symbol>(2 * j));
        cells[k + j] = Cell::symbol(static_cast<Symbol>(2 * j + 1));
    }
    return Grid(2, k, s, std::move(cells));
}

std::string to_string(Recipe::Kind k) {
    switch (k) {
        case Recipe::Kind::mn:
            return "mn";
        case Recipe::Kind::f2_base:
            return "f2_base";
        case Recipe::Kind::optimal_fz2:
            return "optimal_fz2";
        case Recipe::Kind::replicate:
            return "replicate";
        case Recipe::Kind::concat:
            return "concat";
        case Recipe::Kind::dual:
            return "dual";
    }
    return "?";
}

Grid Recipe::evaluate() const {
    const auto param = [this](const char* name) {
        return static_cast<std::size_t>(params.at(name));
    };
    switch (kind) {
        case Kind::mn:
            return mn_pda(param("f"), param("z"));
        case Kind::f2_base:
            return f2_base(param("s"));
        case Kind::replicate:
            return replicate(children.at(0).evaluate(), param("m"));
        case Kind::dual:
            return symbol_dual(children.at(0).evaluate());
        case Kind::concat: {
            Grid out = children.at(0).evaluate();
            for (std::size_t i = 1; i < children.size(); ++i) {
                out = concat(out, children[i].evaluate());
            }
            return out;
        }
        case Kind::optimal_fz2: {
            Grid out = Grid::empty(param("f"));
            for (const auto& child : children) {
                out = concat(out, child.evaluate());
            }
            return out.with_s_bound(param("s"));
        }
    }
    throw UsageError("unknown recipe kind");
}

nlohmann::json Recipe::to_json() const {
    nlohmann::json j;
    j["name"] = to_string(kind);
    j["parameters"] = params;
    j["children"] = nlohmann::json::array();
    for (const auto& c : children) {
        j["children"].push_back(c.to_json());
    }
    return j;
}

std::int64_t fz2_formula(std::int64_t f, std::int64_t s) {
    return ((f - 1) * (s - 1) + std::gcd(f, s) - 1) / 2;
}

Construction optimal_fz2(std::size_t f, std::size_t s) {
    if (f < 2) {
        throw UsageError("optimal_fz2 needs F >= 2");
    }
    if (s < 1) {
        throw UsageError("optimal_fz2 needs S >= 1");
    }
    const auto fi = static_cast<std::int64_t>(f);
    const auto si = static_cast<std::int64_t>(s);
    if (f == 2) {
        return {f2_base(s), Recipe{Recipe::Kind::f2_base, {{"s", si}}, {}}};
    }

    std::size_t m = (s - 1) / f;
    std::size_t r = s - m * f;  // in [1, F]
    if (r == f) {
        ++m;
        r = 0;
    }

    Recipe recipe{Recipe::Kind::optimal_fz2, {{"f", fi}, {"s", si}}, {}};
    Grid grid = Grid::empty(f);
    if (m > 0) {
        const Grid block = mn_pda(f, f - 2);
        grid = replicate(block, m);
        recipe.children.push_back(
            Recipe{Recipe::Kind::replicate,
                   {{"m", static_cast<std::int64_t>(m)}},
                   {Recipe{Recipe::Kind::mn, {{"f", fi}, {"z", fi - 2}}, {}}}});
    }
    if (r == 2) {
        grid = concat(grid, symbol_dual(f2_base(f)));
        recipe.children.push_back(
            Recipe{Recipe::Kind::dual, {}, {Recipe{Recipe::Kind::f2_base, {{"s", fi}}, {}}}});
    } else if (r >= 3) {
        auto inner = optimal_fz2(r, f);
        grid = concat(grid, symbol_dual(inner.grid));
        recipe.children.push_back(Recipe{Recipe::Kind::dual, {}, {std::move(inner.recipe)}});
    }
    // r == 1 contributes no columns, only one padding symbol.
    return {grid.with_s_bound(s), std::move(recipe)};
}

}  // namespace pda
