#include "oracles.hpp"
#include "rat/hm_index.hpp"
#include "rat/two_commodity.hpp"

#include <gtest/gtest.h>

using namespace rat;

namespace {

ConsumerDataset digon() { return {2, {{{2, 1}, {2, 0}}, {{1, 2}, {0, 2}}}}; }

ConsumerDataset k5() {
    std::vector<Point2> pts{{Rational(60, 13), Rational(25, 13)},
                            {4, 3},
                            {3, 4},
                            {Rational(25, 13), Rational(60, 13)},
                            {0, 5}};
    ConsumerDataset ds{2, {}};
    for (auto& p : pts) ds.observations.push_back({{p[0], p[1]}, {p[0], p[1]}});
    return ds;
}

// Fig. 3(b): a descending chain on the left, a chain along the bottom.
// Left bundles (2 - s/4, s) with horizontal budget lines; bottom bundles
// (t + 2, 0) on steep lines of normal (4,1).
ConsumerDataset k33() {
    ConsumerDataset ds{2, {}};
    for (int s = 1; s <= 3; ++s) ds.observations.push_back({{0, 1}, {Rational(2) - Rational(s, 4), Rational(s)}});
    for (int t = 1; t <= 3; ++t) ds.observations.push_back({{4, 1}, {Rational(t + 2), Rational(0)}});
    return ds;
}

// Fig. 4 realized with non-negative data: the figure's shape shifted and
// doubled so every coordinate is a non-negative integer.
ConsumerDataset c6() {
    return {2,
            {{{1, 0}, {4, 2}},
             {{0, 1}, {2, 4}},
             {{1, 1}, {13, 1}},
             {{0, 1}, {5, 8}},
             {{1, 0}, {8, 7}},
             {{1, 1}, {3, 15}}}};
}

UGraph cycle(int n) {
    UGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

UGraph complete(int n) {
    UGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

} // namespace

TEST(Quadrant, Examples) {
    auto q = quadrant({1, 2}, {2, 1}, Strictness::strict);
    EXPECT_TRUE(q.has(Dir::SE));
    EXPECT_EQ(q.size(), 1);
    auto b = quadrant({1, 2}, {1, 1}, Strictness::closed);
    EXPECT_TRUE(b.has(Dir::SE));
    EXPECT_TRUE(b.has(Dir::SW));
    EXPECT_EQ(b.size(), 2);
    EXPECT_TRUE(quadrant({1, 2}, {1, 1}, Strictness::strict).empty());
    auto ne = quadrant({1, 2}, {3, 4}, Strictness::strict);
    EXPECT_TRUE(ne.has(Dir::NE));
    EXPECT_EQ(ne.size(), 1);
    EXPECT_THROW(quadrant({1, 2}, {1, 2}, Strictness::closed), std::invalid_argument);
}

TEST(BudgetLine, PassesThroughBundle) {
    auto ds = digon();
    auto L = budget_line(ds, 0);
    EXPECT_TRUE(L.on(point_of(ds, 0)));
    EXPECT_TRUE(L.below(point_of(ds, 1)));
    EXPECT_FALSE(L.on(point_of(ds, 1)));
}

TEST(AuxiliaryGraph, Examples) {
    auto d = build_auxiliary_graph(build_preference_graph(digon()));
    EXPECT_EQ(d.edges(), (std::vector<std::pair<int, int>>{{0, 1}}));
    EXPECT_EQ(build_auxiliary_graph(build_preference_graph(k5())), complete(5));
    UGraph kb(6);
    for (int s = 0; s < 3; ++s)
        for (int t = 3; t < 6; ++t) kb.add_edge(s, t);
    EXPECT_EQ(build_auxiliary_graph(build_preference_graph(k33())), kb);
    EXPECT_EQ(build_auxiliary_graph(build_preference_graph(c6())), cycle(6));
    ConsumerDataset three{3, {{{1, 0, 0}, {1, 1, 1}}}};
    EXPECT_THROW(build_auxiliary_graph(build_preference_graph(three)), DimensionError);
}

TEST(VertexCover, Examples) {
    EXPECT_EQ(min_vertex_cover(complete(5)).size, 4u);
    EXPECT_EQ(min_vertex_cover(cycle(6)).size, 3u);
    EXPECT_EQ(min_vertex_cover(UGraph(0)).size, 0u);
    EXPECT_EQ(min_vertex_cover(UGraph(3)).size, 0u);
}

TEST(VertexCover, BudgetOverflowIsSignalled) {
    std::mt19937_64 rng(53);
    auto g = oracle::random_ugraph(rng, 60, 0.3);
    auto b = SearchBudget::of_nodes(2);
    EXPECT_THROW(min_vertex_cover(g, b), BudgetExceeded);
}

TEST(Property, VertexCoverMatchesSubsetOracle) {
    std::mt19937_64 rng(59);
    for (int k = 0; k < 1000; ++k) {
        auto g = oracle::random_ugraph(rng, 1 + k % 12, 0.1 + 0.08 * (k % 10));
        auto vc = min_vertex_cover(g);
        ASSERT_EQ(int(vc.size), oracle::min_vc(g)) << "instance " << k;
        EXPECT_TRUE(is_vertex_cover(g, vc.cover));
        EXPECT_TRUE(std::is_sorted(vc.cover.begin(), vc.cover.end()));
    }
}

TEST(HmViaDigons, Examples) {
    EXPECT_EQ(hm_via_digons(digon()).index, 1u);
    auto k = hm_via_digons(k5());
    EXPECT_EQ(k.index, 4u);
    EXPECT_EQ(oracle::min_dfvs(build_preference_graph(k5()).adj), 4);
    ConsumerDataset acyclic{2, {{{1, 1}, {1, 1}}, {{1, 1}, {2, 1}}, {{1, 1}, {2, 2}}}};
    EXPECT_EQ(hm_via_digons(acyclic).index, 0u);
    EXPECT_EQ(hm_via_digons(c6()).index, 3u);
    EXPECT_THROW(hm_via_digons({3, {}}), DimensionError);
}

TEST(Perfect, Examples) {
    auto h = check_perfect(cycle(5), 9);
    EXPECT_EQ(h.verdict, PerfectResult::Verdict::odd_hole);
    EXPECT_EQ(h.witness.size(), 5u);
    EXPECT_EQ(check_perfect(build_auxiliary_graph(build_preference_graph(c6())), 6).verdict,
              PerfectResult::Verdict::perfect_up_to_bound);
    EXPECT_EQ(check_perfect(complete(4), 4).verdict, PerfectResult::Verdict::perfect_up_to_bound);
    auto a = check_perfect(cycle(7).complement(), 7);
    EXPECT_EQ(a.verdict, PerfectResult::Verdict::odd_antihole);
    EXPECT_EQ(a.witness.size(), 7u);
    // bound respected: a 7-hole is invisible below 7
    EXPECT_EQ(check_perfect(cycle(7), 6).verdict, PerfectResult::Verdict::perfect_up_to_bound);
}

TEST(Property, OddHoleSearchMatchesSubsetOracle) {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 400; ++k) {
        auto g = oracle::random_ugraph(rng, 5 + k % 7, 0.2 + 0.05 * (k % 8));
        SearchBudget b;
        auto h = find_odd_hole(g, g.n, b);
        EXPECT_EQ(bool(h), oracle::has_odd_hole(g, g.n)) << "instance " << k;
        if (h) {
            std::uint32_t s = 0;
            for (int v : *h) s |= 1u << v;
            EXPECT_TRUE(oracle::induced_cycle(g, s));
            for (std::size_t i = 0; i < h->size(); ++i) EXPECT_TRUE(g.has_edge((*h)[i], (*h)[(i + 1) % h->size()]));
        }
    }
}

// Lemma 3: in an induced path i - j - k of the digon graph, i NW of j forces
// k NW of j (and likewise for SE).
TEST(Property, InducedPathGeometry) {
    std::mt19937_64 rng(67);
    int paths = 0;
    for (int t = 0; t < 1000; ++t) {
        auto ds = oracle::random_dataset(rng, 2, 3 + t % 8);
        auto G = build_auxiliary_graph(build_preference_graph(ds));
        for (int j = 0; j < G.n; ++j)
            for (int i = 0; i < G.n; ++i)
                for (int k = 0; k < G.n; ++k) {
                    if (i == k || i == j || k == j) continue;
                    if (!G.has_edge(i, j) || !G.has_edge(j, k) || G.has_edge(i, k)) continue;
                    ++paths;
                    auto qi = quadrant(point_of(ds, j), point_of(ds, i), Strictness::closed);
                    auto qk = quadrant(point_of(ds, j), point_of(ds, k), Strictness::closed);
                    if (qi.has(Dir::NW)) {
                        EXPECT_TRUE(qk.has(Dir::NW)) << serialize(ds);
                    }
                    if (qi.has(Dir::SE)) {
                        EXPECT_TRUE(qk.has(Dir::SE)) << serialize(ds);
                    }
                }
    }
    EXPECT_GT(paths, 100);
}

TEST(Property, DigonEndpointsAreNwSeComparable) {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 1000; ++t) {
        auto ds = oracle::random_dataset(rng, 2, 2 + t % 9);
        auto G = build_auxiliary_graph(build_preference_graph(ds));
        for (auto [i, j] : G.edges()) {
            auto q = quadrant(point_of(ds, i), point_of(ds, j), Strictness::strict);
            EXPECT_FALSE(q.has(Dir::NE) || q.has(Dir::SW)) << serialize(ds);
            auto c = quadrant(point_of(ds, i), point_of(ds, j), Strictness::closed);
            EXPECT_TRUE(c.has(Dir::NW) || c.has(Dir::SE));
        }
    }
}

TEST(Property, NoOddHoleOrAntiholeIn2D) {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 1000; ++t) {
        auto ds = oracle::random_dataset(rng, 2, 5 + t % 6);
        auto r = check_perfect(build_auxiliary_graph(build_preference_graph(ds)), int(ds.size()));
        EXPECT_EQ(r.verdict, PerfectResult::Verdict::perfect_up_to_bound) << serialize(ds);
    }
}

TEST(Property, DigonRouteEqualsBruteForce) {
    std::mt19937_64 rng(79);
    for (int t = 0; t < 300; ++t) {
        auto ds = oracle::random_dataset(rng, 2, 2 + t % 11);
        auto g = build_preference_graph(ds);
        EXPECT_EQ(int(hm_via_digons(ds).index), oracle::min_dfvs(g.adj)) << serialize(ds);
    }
}
