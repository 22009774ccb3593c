#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "pda/constructions.hpp"
#include "pda/transform.hpp"
#include "pda/verify.hpp"

namespace pda {
namespace {

using testing::choose;
using testing::gcd64;

std::int64_t formula(std::int64_t f, std::int64_t s) { return ((f - 1) * (s - 1) + gcd64(f, s) - 1) / 2; }

TEST(Colex, SubsetsAndRanks) {
    const auto subsets = colex_subsets(4, 2);
    const std::vector<std::vector<std::size_t>> expected{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    EXPECT_EQ(subsets, expected);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        EXPECT_EQ(colex_rank(subsets[i]), i);
    }
    EXPECT_EQ(binomial(7, 5), 21u);
    EXPECT_EQ(binomial(3, 5), 0u);
}

TEST(SubsetArray, FourTwo) {
    const Grid g = mn_pda(4, 2);
    EXPECT_EQ(Params::of(g), (Params{6, 4, 2, 4, 4}));
    const auto report = verify(g, 2);
    ASSERT_TRUE(report.valid);
    for (const auto m : report.multiplicity) {
        EXPECT_EQ(m, 3u);
    }
}

TEST(SubsetArray, TwoOneIsTheTwoByTwo) {
    EXPECT_EQ(mn_pda(2, 1), Grid::from_rows({{-1, 0}, {0, -1}}, 1));
}

TEST(SubsetArray, ZeroStarsIsOneColumn) {
    const Grid g = mn_pda(5, 0);
    EXPECT_EQ(Params::of(g), (Params{1, 5, 0, 5, 5}));
    EXPECT_TRUE(is_valid(g, 0));
}

TEST(SubsetArray, RejectsZAtLeastF) { EXPECT_THROW(mn_pda(3, 3), UsageError); }

TEST(SubsetArray, SweepUpToEightRows) {
    for (std::size_t f = 2; f <= 8; ++f) {
        for (std::size_t z = 1; z < f; ++z) {
            const Grid g = mn_pda(f, z);
            const auto report = verify(g, z);
            ASSERT_TRUE(report.valid) << f << "," << z;
            EXPECT_EQ(g.cols(), choose(f, z));
            EXPECT_EQ(g.s_bound(), choose(f, z + 1));
            // Symbol x is the x-th (Z+1)-subset C; it is missing exactly from
            // the rows outside C.
            const auto symbol_sets = colex_subsets(f, z + 1);
            for (std::size_t x = 0; x < report.multiplicity.size(); ++x) {
                ASSERT_EQ(report.multiplicity[x], z + 1);
                std::vector<std::size_t> complement;
                const std::set<std::size_t> members(symbol_sets[x].begin(), symbol_sets[x].end());
                for (std::size_t r = 0; r < f; ++r) {
                    if (!members.count(r)) {
                        complement.push_back(r);
                    }
                }
                ASSERT_EQ(report.missing_rows[x], complement);
            }
        }
    }
}

TEST(TwoRowBase, Shapes) {
    EXPECT_EQ(Params::of(f2_base(4)), (Params{2, 2, 0, 4, 2}));
    const Grid odd = f2_base(5);
    EXPECT_EQ(Params::of(odd), (Params{2, 2, 0, 5, 1}));
    EXPECT_EQ(odd.symbols_used(), 4u);
    EXPECT_EQ(f2_base(0).cols(), 0u);
    EXPECT_EQ(f2_base(4), Grid::from_rows({{0, 2}, {1, 3}}, 4));
}

TEST(OptimalFz2, HandExamples) {
    EXPECT_EQ(Params::of(optimal_fz2(3, 4).grid), (Params{3, 3, 1, 4, 1}));
    EXPECT_EQ(optimal_fz2(6, 6).grid.cols(), mn_pda(6, 4).cols());
    EXPECT_EQ(optimal_fz2(6, 6).grid.cols(), 15u);
    const Grid g = optimal_fz2(7, 10).grid;
    EXPECT_EQ(Params::of(g), (Params{27, 7, 5, 10, 1}));
    EXPECT_TRUE(is_valid(g, 5));
}

TEST(OptimalFz2, RejectsBadArguments) {
    EXPECT_THROW(optimal_fz2(1, 3), UsageError);
    EXPECT_THROW(optimal_fz2(3, 0), UsageError);
}

TEST(OptimalFz2, SweepMatchesClosedForm) {
    for (std::int64_t f = 2; f <= 8; ++f) {
        for (std::int64_t s = 1; s <= 24; ++s) {
            EXPECT_EQ(((f - 1) * (s - 1) + gcd64(f, s) - 1) % 2, 0);
            const auto c = optimal_fz2(static_cast<std::size_t>(f), static_cast<std::size_t>(s));
            ASSERT_TRUE(testing::naive_is_pda(c.grid, static_cast<std::size_t>(f - 2))) << f << "," << s;
            EXPECT_EQ(static_cast<std::int64_t>(c.grid.cols()), formula(f, s)) << f << "," << s;
            EXPECT_EQ(static_cast<std::int64_t>(c.grid.s_bound()), s);
            EXPECT_EQ(fz2_formula(f, s), formula(f, s));
        }
    }
}

TEST(OptimalFz2, FullMultiplesAreReplicatedSubsetArrays) {
    for (std::size_t f = 2; f <= 7; ++f) {
        for (std::size_t m = 1; m <= 3; ++m) {
            const Grid built = optimal_fz2(f, m * f).grid;
            const Grid expected = replicate(mn_pda(f, f - 2), m);
            EXPECT_EQ(testing::canonical(built), testing::canonical(expected)) << f << "," << m;
        }
    }
}

void collect_leaves(const Recipe& r, std::vector<Recipe::Kind>& out) {
    if (r.children.empty()) {
        out.push_back(r.kind);
    }
    for (const auto& c : r.children) {
        collect_leaves(c, out);
    }
}

TEST(Recipe, ReevaluatesBitExactly) {
    for (std::size_t f = 2; f <= 8; ++f) {
        for (std::size_t s = 1; s <= 24; ++s) {
            const auto c = optimal_fz2(f, s);
            ASSERT_EQ(c.recipe.evaluate(), c.grid) << f << "," << s;
            std::vector<Recipe::Kind> leaves;
            collect_leaves(c.recipe, leaves);
            for (const auto k : leaves) {
                // An optimal_fz2 node with no children stands for the empty grid.
                EXPECT_TRUE(k == Recipe::Kind::mn || k == Recipe::Kind::f2_base ||
                            k == Recipe::Kind::optimal_fz2)
                    << to_string(k);
            }
        }
    }
}

TEST(Recipe, JsonNamesTheSteps) {
    const auto j = optimal_fz2(7, 10).recipe.to_json();
    EXPECT_EQ(j.at("name"), "optimal_fz2");
    EXPECT_EQ(j.at("parameters").at("f"), 7);
    EXPECT_EQ(j.at("parameters").at("s"), 10);
    const std::string text = j.dump();
    EXPECT_NE(text.find("\"dual\""), std::string::npos);
    EXPECT_NE(text.find("\"mn\""), std::string::npos);
}

}  // namespace
}  // namespace pda
