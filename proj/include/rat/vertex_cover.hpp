#pragma once

#include "rat/budget.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rat {

using Bits = boost::dynamic_bitset<>;

// Simple undirected graph on 0..n-1.
struct UGraph {
    int n = 0;
    std::vector<Bits> adj;

    UGraph() = default;
    explicit UGraph(int n_) : n(n_), adj(n_, Bits(n_)) {}

    void add_edge(int i, int j) {
        if (i == j) throw std::invalid_argument("self-loop in undirected graph");
        adj[i].set(j);
        adj[j].set(i);
    }
    bool has_edge(int i, int j) const { return adj[i].test(j); }
    int degree(int v) const { return int(adj[v].count()); }
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i)
            for (auto j = adj[i].find_next(i); j != Bits::npos; j = adj[i].find_next(j)) e.emplace_back(i, int(j));
        return e;
    }
    std::size_t edge_count() const {
        std::size_t c = 0;
        for (const auto& r : adj) c += r.count();
        return c / 2;
    }
    UGraph complement() const {
        UGraph h(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!has_edge(i, j)) h.add_edge(i, j);
        return h;
    }
    friend bool operator==(const UGraph& a, const UGraph& b) { return a.n == b.n && a.adj == b.adj; }
};

inline bool is_vertex_cover(const UGraph& g, const std::vector<int>& s) {
    Bits in(g.n);
    for (int v : s) in.set(v);
    for (auto [i, j] : g.edges())
        if (!in[i] && !in[j]) return false;
    return true;
}

struct VertexCover {
    std::size_t size = 0;
    std::vector<int> cover;  // sorted
};

namespace detail {

class VcSolver {
public:
    VcSolver(const UGraph& g, SearchBudget& b) : g_(g), budget_(b) {}

    std::vector<int> run() {
        Bits alive(g_.n);
        alive.set();
        auto r = solve(alive, g_.n + 1);
        return *r;  // bound n+1 always admits the full vertex set
    }

    // Minimum cover of the subgraph induced by `alive`, if one of size < ub exists.
    std::optional<std::vector<int>> solve(Bits alive, int ub) {
        budget_.tick("vertex cover");
        std::vector<int> taken;
        reduce(alive, taken);
        if (int(taken.size()) >= ub) return std::nullopt;
        ub -= int(taken.size());
        if (alive.none()) return taken;

        auto comps = components(alive);
        if (comps.size() > 1) {
            std::vector<int> lbs;
            int total = 0;
            for (auto& c : comps) total += lbs.emplace_back(lower_bound(c));
            if (total >= ub) return std::nullopt;
            int acc = 0;
            for (std::size_t k = 0; k < comps.size(); ++k) {
                total -= lbs[k];
                auto r = solve(comps[k], ub - acc - total);
                if (!r) return std::nullopt;
                acc += int(r->size());
                taken.insert(taken.end(), r->begin(), r->end());
            }
            return taken;
        }

        if (lower_bound(alive) >= ub) return std::nullopt;

        // branch on a max-degree vertex: take v, or take all of N(v)
        int v = -1, best = -1;
        for (auto u = alive.find_first(); u != Bits::npos; u = alive.find_next(u)) {
            int d = int((g_.adj[u] & alive).count());
            if (d > best) best = d, v = int(u);
        }
        std::optional<std::vector<int>> res;
        {
            Bits a = alive;
            a.reset(v);
            if (auto r = solve(a, ub - 1)) {
                r->push_back(v);
                ub = int(r->size());
                res = std::move(r);
            }
        }
        {
            Bits nb = g_.adj[v] & alive;
            int k = int(nb.count());
            if (k < ub) {
                Bits a = alive - nb;
                a.reset(v);
                if (auto r = solve(a, ub - k)) {
                    for (auto u = nb.find_first(); u != Bits::npos; u = nb.find_next(u)) r->push_back(int(u));
                    res = std::move(r);
                }
            }
        }
        if (!res) return std::nullopt;
        taken.insert(taken.end(), res->begin(), res->end());
        return taken;
    }

private:
    const UGraph& g_;
    SearchBudget& budget_;

    void reduce(Bits& alive, std::vector<int>& taken) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto u = alive.find_first(); u != Bits::npos; u = alive.find_next(u)) {
                Bits nb = g_.adj[u] & alive;
                auto d = nb.count();
                if (d == 0) {
                    alive.reset(u);
                    changed = true;
                } else if (d == 1) {
                    int w = int(nb.find_first());
                    taken.push_back(w);
                    alive.reset(w);
                    alive.reset(u);
                    changed = true;
                } else if (d == 2) {
                    int a = int(nb.find_first()), b = int(nb.find_next(a));
                    if (g_.has_edge(a, b)) {  // triangle: some optimum takes both neighbours
                        taken.push_back(a);
                        taken.push_back(b);
                        alive.reset(a);
                        alive.reset(b);
                        alive.reset(u);
                        changed = true;
                    }
                }
            }
        }
    }

    std::vector<Bits> components(const Bits& alive) const {
        std::vector<Bits> out;
        Bits left = alive;
        while (left.any()) {
            Bits c(g_.n), frontier(g_.n);
            frontier.set(left.find_first());
            while (frontier.any()) {
                c |= frontier;
                Bits next(g_.n);
                for (auto u = frontier.find_first(); u != Bits::npos; u = frontier.find_next(u)) next |= g_.adj[u];
                frontier = next & alive & ~c;
            }
            left -= c;
            out.push_back(std::move(c));
        }
        return out;
    }

    // max(greedy matching, greedy clique partition bound)
    int lower_bound(const Bits& alive) const {
        Bits free = alive;
        int matching = 0;
        for (auto u = free.find_first(); u != Bits::npos; u = free.find_next(u)) {
            Bits nb = g_.adj[u] & free;
            if (nb.none()) continue;
            // partner with the fewest live neighbours
            int w = -1;
            std::size_t wd = ~std::size_t(0);
            for (auto x = nb.find_first(); x != Bits::npos; x = nb.find_next(x)) {
                auto d = (g_.adj[x] & free).count();
                if (d < wd) wd = d, w = int(x);
            }
            free.reset(u);
            free.reset(w);
            ++matching;
        }
        Bits left = alive;
        int cliques = 0;
        while (left.any()) {
            int u = int(left.find_first());
            Bits cand = g_.adj[u] & left;
            int sz = 1;
            left.reset(u);
            while (cand.any()) {
                // grow with the candidate keeping most candidates
                int w = -1;
                std::size_t wd = 0;
                for (auto x = cand.find_first(); x != Bits::npos; x = cand.find_next(x)) {
                    auto d = (g_.adj[x] & cand).count();
                    if (w < 0 || d > wd) wd = d, w = int(x);
                }
                ++sz;
                left.reset(w);
                cand &= g_.adj[w];
            }
            cliques += sz - 1;
        }
        return std::max(matching, cliques);
    }
};

} // namespace detail

inline VertexCover min_vertex_cover(const UGraph& g, SearchBudget& budget) {
    detail::VcSolver s(g, budget);
    auto c = s.run();
    std::sort(c.begin(), c.end());
    return {c.size(), c};
}

inline VertexCover min_vertex_cover(const UGraph& g) {
    SearchBudget b;
    return min_vertex_cover(g, b);
}

} // namespace rat
