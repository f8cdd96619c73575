#include "oracles.hpp"
#include "rat/generators.hpp"
#include "rat/prefgraph.hpp"

#include <gtest/gtest.h>

using namespace rat;

namespace {

ConsumerDataset digon() { return {2, {{{2, 1}, {2, 0}}, {{1, 2}, {0, 2}}}}; }

// two digons, the second on a much larger budget
ConsumerDataset two_digons() {
    return {2, {{{2, 1}, {2, 0}}, {{1, 2}, {0, 2}}, {{2, 1}, {12, 10}}, {{1, 2}, {10, 12}}}};
}

// Fig. 1 (left): three bundles on nested budget lines, x3 > x2 > x1 and x3 > x1.
// Found by scanning a small grid for the first configuration with exactly that
// arc set.
ConsumerDataset fig1_left() {
    const std::vector<std::vector<char>> want{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (int d = 0; d <= 3; ++d)
                    for (int e = 0; e <= 3; ++e)
                        for (int f = 0; f <= 3; ++f) {
                            ConsumerDataset ds{2, {{{1, 1}, {a, b}}, {{1, 1}, {c, d}}, {{1, 1}, {e, f}}}};
                            if (!validate(ds).ok()) continue;
                            if (oracle::arcs_by_definition(ds) == want) return ds;
                        }
    throw std::runtime_error("no grid realization");
}

} // namespace

TEST(BuildGraph, DigonExample) {
    auto g = build_preference_graph(digon());
    EXPECT_EQ(g.arcs(), (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
    EXPECT_EQ(g.commodities, 2);
}

TEST(BuildGraph, SingleObservationHasNoArcs) {
    auto g = build_preference_graph({3, {{{1, 2, 3}, {1, 1, 1}}}});
    EXPECT_EQ(g.n, 1);
    EXPECT_EQ(g.arc_count(), 0u);
}

TEST(BuildGraph, Fig1LeftIsThreeArcAcyclic) {
    auto ds = fig1_left();
    EXPECT_EQ(ds.x(0), (Vec{0, 0}));
    EXPECT_EQ(ds.x(1), (Vec{0, 1}));
    EXPECT_EQ(ds.x(2), (Vec{0, 2}));
    auto g = build_preference_graph(ds);
    EXPECT_EQ(g.arcs(), (std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {2, 1}}));
    EXPECT_FALSE(check_garp(g));
    EXPECT_FALSE(check_warp(g));
}

TEST(BuildGraph, TieRejectedUnlessKept) {
    ConsumerDataset ds{2, {{{1, 1}, {2, 0}}, {{1, 3}, {0, 2}}}};
    EXPECT_THROW(build_preference_graph(ds), ValidationFailed);
    auto g = build_preference_graph(ds, TiePolicy::keep);
    EXPECT_TRUE(g.has_arc(0, 1));  // weak arc from the tie
    EXPECT_THROW(build_preference_graph({2, {{{1, 1}, {1, 1}}, {{1, 2}, {1, 1}}}}, TiePolicy::keep), ValidationFailed);
}

TEST(Garp, Examples) {
    auto w = check_garp(build_preference_graph(digon()));
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, (Cycle{0, 1}));
    EXPECT_FALSE(check_garp(Digraph(0)));
    EXPECT_FALSE(check_garp(Digraph(4)));
}

TEST(Warp, DigonAndThreeCycle) {
    EXPECT_EQ(*check_warp(build_preference_graph(digon())), (Cycle{0, 1}));
    Digraph c3(3);
    c3.add_arc(0, 1), c3.add_arc(1, 2), c3.add_arc(2, 0);
    auto g = build_preference_graph(digraph_to_dataset(c3));
    EXPECT_FALSE(check_warp(g));
    auto w = check_garp(g);
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, (Cycle{0, 1, 2}));
}

TEST(Chordless, Examples) {
    EXPECT_EQ(enumerate_chordless_cycles(build_preference_graph(digon()), 5), (std::vector<Cycle>{{0, 1}}));
    Digraph c3(3);
    c3.add_arc(0, 1), c3.add_arc(1, 2), c3.add_arc(2, 0);
    auto g = build_preference_graph(digraph_to_dataset(c3));
    EXPECT_EQ(enumerate_chordless_cycles(g, 3), (std::vector<Cycle>{{0, 1, 2}}));
    EXPECT_TRUE(enumerate_chordless_cycles(g, 2).empty());
    EXPECT_TRUE(enumerate_chordless_cycles(build_preference_graph(fig1_left()), 3).empty());
    EXPECT_THROW(enumerate_chordless_cycles(g, 1), std::invalid_argument);
}

TEST(Chordless, MatchesSubsetOracle) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 400; ++k) {
        int n = 2 + k % 7;
        auto g = oracle::random_digraph(rng, n, 0.15 + 0.1 * (k % 5));
        int L = 2 + k % n;
        auto got = enumerate_chordless_cycles(g, L);
        std::vector<std::uint32_t> sets;
        for (const auto& c : got) {
            ASSERT_TRUE(is_cycle_of(g, c));
            EXPECT_EQ(c.front(), *std::min_element(c.begin(), c.end()));
            std::uint32_t s = 0;
            for (int v : c) s |= 1u << v;
            sets.push_back(s);
        }
        std::sort(sets.begin(), sets.end());
        auto want = oracle::chordless_cycle_sets(g.adj, L);
        std::sort(want.begin(), want.end());
        EXPECT_EQ(sets, want) << "instance " << k;
    }
}

TEST(Chordless, BudgetOverflowIsSignalled) {
    Digraph g(12);
    for (int i = 0; i < 12; ++i) g.add_arc(i, (i + 1) % 12), g.add_arc(i, (i + 3) % 12);
    EXPECT_THROW(enumerate_chordless_cycles(g, 12, SearchBudget::of_nodes(5)), BudgetExceeded);
}

TEST(Scc, Examples) {
    EXPECT_EQ(strongly_connected_components(build_preference_graph(digon())), (std::vector<std::vector<int>>{{0, 1}}));
    Digraph dag(5);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) dag.add_arc(j, i);
    EXPECT_EQ(strongly_connected_components(dag).size(), 5u);
    auto g = build_preference_graph(two_digons());
    EXPECT_EQ(strongly_connected_components(g), (std::vector<std::vector<int>>{{0, 1}, {2, 3}}));
}

TEST(Scc, AgreesWithMutualReachability) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        auto g = oracle::random_digraph(rng, 1 + k % 10, 0.2);
        auto r = g.adj;
        for (int i = 0; i < g.n; ++i) r[i][i] = 1;
        for (int m = 0; m < g.n; ++m)
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    if (r[i][m] && r[m][j]) r[i][j] = 1;
        std::vector<int> comp(g.n, -1);
        auto cs = strongly_connected_components(g);
        for (std::size_t c = 0; c < cs.size(); ++c)
            for (int v : cs[c]) comp[v] = int(c);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) EXPECT_EQ(comp[i] == comp[j], r[i][j] && r[j][i]);
    }
}

TEST(Property, ArcSoundness) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 300; ++k) {
        auto ds = oracle::random_dataset(rng, 1 + k % 4, 1 + k % 9);
        EXPECT_EQ(build_preference_graph(ds).adj, oracle::arcs_by_definition(ds));
    }
}

TEST(Property, GarpMatchesTransitiveClosure) {
    std::mt19937_64 rng(19);
    for (int k = 0; k < 1000; ++k) {
        const int dims[] = {1, 2, 3, 5};
        auto ds = oracle::random_dataset(rng, dims[k % 4], 1 + k % 9);
        auto g = build_preference_graph(ds);
        auto w = check_garp(g);
        EXPECT_EQ(bool(w), oracle::cyclic_by_closure(g.adj));
        if (w) {
            EXPECT_TRUE(is_cycle_of(g, *w));
        }
    }
}

TEST(Property, RoseLemmaNoLongChordlessCycleIn2D) {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 1000; ++k) {
        auto ds = oracle::random_dataset(rng, 2, 2 + k % 7);
        for (const auto& c : enumerate_chordless_cycles(build_preference_graph(ds), int(ds.size())))
            EXPECT_EQ(c.size(), 2u) << serialize(ds);
    }
}

TEST(EdgeList, RoundTrip) {
    auto g = build_preference_graph(two_digons());
    auto text = edge_list(g);
    EXPECT_EQ(text.substr(0, 4), "1 2\n");
    EXPECT_EQ(parse_edge_list(text, g.n), static_cast<const Digraph&>(g));
    EXPECT_THROW(parse_edge_list("1 1\n"), ParseError);
    EXPECT_THROW(parse_edge_list("0 2\n"), ParseError);
    EXPECT_THROW(parse_edge_list("1 x\n"), ParseError);
}
