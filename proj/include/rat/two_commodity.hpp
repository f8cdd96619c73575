#pragma once

#include "rat/hm_core.hpp"
#include "rat/prefgraph.hpp"
#include "rat/vertex_cover.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rat {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Dir { NW, NE, SW, SE };
enum class Strictness { closed, strict };

inline const char* to_string(Dir d) {
    constexpr std::array<const char*, 4> names{"NW", "NE", "SW", "SE"};
    return names[int(d)];
}

// Quadrants of a that contain b. Empty means b sits on an axis through a
// (only possible under the strict reading).
struct QuadrantSet {
    unsigned bits = 0;
    bool has(Dir d) const { return bits >> int(d) & 1u; }
    bool empty() const { return bits == 0; }
    int size() const { return __builtin_popcount(bits); }
};

using Point2 = std::array<Rational, 2>;

inline QuadrantSet quadrant(const Point2& a, const Point2& b, Strictness st) {
    if (a == b) throw std::invalid_argument("quadrant: points coincide");
    auto le = [&](const Rational& u, const Rational& v) { return st == Strictness::strict ? u < v : u <= v; };
    QuadrantSet q;
    auto put = [&](Dir d, bool in) { if (in) q.bits |= 1u << int(d); };
    put(Dir::NW, le(b[0], a[0]) && le(a[1], b[1]));
    put(Dir::NE, le(a[0], b[0]) && le(a[1], b[1]));
    put(Dir::SW, le(b[0], a[0]) && le(b[1], a[1]));
    put(Dir::SE, le(a[0], b[0]) && le(b[1], a[1]));
    return q;
}

inline Point2 point_of(const ConsumerDataset& ds, std::size_t i) {
    if (ds.commodities != 2) throw DimensionError("expected a 2-commodity dataset");
    return {ds.x(i)[0], ds.x(i)[1]};
}

// p . y = rhs through x_i.
struct BudgetLine {
    std::size_t index = 0;
    Point2 normal;
    Rational rhs;
    bool below(const Point2& y) const { return normal[0] * y[0] + normal[1] * y[1] <= rhs; }
    bool on(const Point2& y) const { return normal[0] * y[0] + normal[1] * y[1] == rhs; }
};

inline BudgetLine budget_line(const ConsumerDataset& ds, std::size_t i) {
    if (ds.commodities != 2) throw DimensionError("budget lines need 2 commodities");
    return {i, {ds.p(i)[0], ds.p(i)[1]}, dot(ds.p(i), ds.x(i))};
}

// Undirected graph of the digons of g.
inline UGraph digon_graph(const Digraph& g) {
    UGraph u(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.digon(i, j)) u.add_edge(i, j);
    return u;
}

inline UGraph build_auxiliary_graph(const PreferenceGraph& g) {
    if (g.commodities != 2)
        throw DimensionError("auxiliary graph is defined for 2 commodities, got " + std::to_string(g.commodities));
    return digon_graph(g);
}

inline HmResult hm_via_digons(const ConsumerDataset& ds) {
    if (ds.commodities != 2) throw DimensionError("digon2d needs 2 commodities");
    auto g = build_preference_graph(ds);
    auto vc = min_vertex_cover(build_auxiliary_graph(g));
    return detail::certified(g, vc.cover, HmMethod::digon2d);
}

struct PerfectResult {
    enum class Verdict { perfect_up_to_bound, odd_hole, odd_antihole };
    Verdict verdict = Verdict::perfect_up_to_bound;
    std::vector<int> witness;  // cycle order in G (hole) or in the complement (antihole)
};

inline const char* to_string(PerfectResult::Verdict v) {
    switch (v) {
        case PerfectResult::Verdict::perfect_up_to_bound: return "perfect-up-to-bound";
        case PerfectResult::Verdict::odd_hole: return "odd_hole";
        case PerfectResult::Verdict::odd_antihole: return "odd_antihole";
    }
    return "?";
}

// First induced odd cycle of length 5..max_len, smallest start vertex first.
inline std::optional<std::vector<int>> find_odd_hole(const UGraph& g, int max_len, SearchBudget& budget) {
    std::vector<int> path;
    std::vector<char> on(g.n, 0);
    std::optional<std::vector<int>> found;
    auto rec = [&](auto&& self) -> void {
        budget.tick("hole search");
        const int s = path.front(), last = path.back();
        const std::size_t k = path.size();
        for (auto wb = g.adj[last].find_first(); wb != Bits::npos && !found; wb = g.adj[last].find_next(wb)) {
            int w = int(wb);
            if (w <= s || on[w]) continue;
            bool chord = false;
            for (std::size_t i = 1; i + 1 < k && !chord; ++i) chord = g.has_edge(w, path[i]);
            if (chord) continue;
            if (k >= 2 && g.has_edge(w, s)) {
                // closes a cycle of length k+1; cannot be extended further
                if ((k + 1) % 2 == 1 && int(k + 1) >= 5) {
                    found = path;
                    found->push_back(w);
                }
                continue;
            }
            if (int(k + 1) >= max_len) continue;
            path.push_back(w);
            on[w] = 1;
            self(self);
            on[w] = 0;
            path.pop_back();
        }
    };
    for (int s = 0; s < g.n && !found; ++s) {
        path = {s};
        on[s] = 1;
        rec(rec);
        on[s] = 0;
    }
    return found;
}

inline PerfectResult check_perfect(const UGraph& g, int max_size, SearchBudget budget = SearchBudget::of_nodes(100'000'000)) {
    if (auto h = find_odd_hole(g, max_size, budget)) return {PerfectResult::Verdict::odd_hole, *h};
    if (auto h = find_odd_hole(g.complement(), max_size, budget)) return {PerfectResult::Verdict::odd_antihole, *h};
    return {};
}

} // namespace rat
