#pragma once

#include "rat/budget.hpp"
#include "rat/prefgraph.hpp"
#include "rat/vertex_cover.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace rat {

enum class HmMethod { auto_, brute, bb, digon2d };

inline std::string to_string(HmMethod m) {
    switch (m) {
        case HmMethod::auto_: return "auto";
        case HmMethod::brute: return "brute";
        case HmMethod::bb: return "bb";
        case HmMethod::digon2d: return "digon2d";
    }
    return "?";
}

inline HmMethod parse_method(const std::string& s) {
    if (s == "auto") return HmMethod::auto_;
    if (s == "brute") return HmMethod::brute;
    if (s == "bb") return HmMethod::bb;
    if (s == "digon2d") return HmMethod::digon2d;
    throw std::invalid_argument("unknown method '" + s + "'");
}

struct HmResult {
    std::size_t index = 0;
    std::vector<int> removal_set;  // 0-based, sorted
    HmMethod method = HmMethod::bb;
};

struct SizeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_feedback_set(const Digraph& g, const std::vector<int>& s) {
    std::vector<char> keep(g.n, 1);
    for (int v : s) keep[v] = 0;
    return !find_cycle_in(g, keep);
}

namespace detail {
inline HmResult certified(const Digraph& g, std::vector<int> s, HmMethod m) {
    std::sort(s.begin(), s.end());
    if (!is_feedback_set(g, s)) throw std::logic_error("internal error: removal set leaves a cycle");
    return {s.size(), std::move(s), m};
}
} // namespace detail

// Subsets by increasing size, each size in lexicographic order; the first
// hit is the lexicographically smallest minimum set.
inline HmResult hm_index_bruteforce(const Digraph& g, int cap = 20) {
    if (g.n > cap) throw SizeCapExceeded("brute force capped at " + std::to_string(cap) + " vertices");
    if (!check_garp(g)) return {0, {}, HmMethod::brute};
    std::vector<int> comb;
    std::vector<char> keep(g.n, 1);
    for (int k = 1; k <= g.n; ++k) {
        comb.resize(k);
        for (int i = 0; i < k; ++i) comb[i] = i;
        while (true) {
            std::fill(keep.begin(), keep.end(), 1);
            for (int v : comb) keep[v] = 0;
            if (!find_cycle_in(g, keep)) return detail::certified(g, comb, HmMethod::brute);
            int i = k - 1;
            while (i >= 0 && comb[i] == g.n - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    throw std::logic_error("unreachable");
}

namespace detail {

// Mutable digraph for the search. A bit out[v][v] marks a self-loop
// produced by bypassing, which forces v into the solution.
struct DfvsState {
    int n = 0;
    std::vector<Bits> out, in;
    Bits alive;

    explicit DfvsState(const Digraph& g) : n(g.n), out(g.n, Bits(g.n)), in(g.n, Bits(g.n)), alive(g.n) {
        alive.set();
        for (auto [i, j] : g.arcs()) {
            out[i].set(j);
            in[j].set(i);
        }
    }
    DfvsState restrict_to(const Bits& keep) const {
        DfvsState s = *this;
        s.alive &= keep;
        return s;
    }
    Bits outs(int v) const { return out[v] & alive; }
    Bits ins(int v) const { return in[v] & alive; }
    bool loop(int v) const { return out[v].test(v); }

    void remove(int v) {
        alive.reset(v);
        for (auto u = in[v].find_first(); u != Bits::npos; u = in[v].find_next(u)) out[u].reset(v);
        for (auto u = out[v].find_first(); u != Bits::npos; u = out[v].find_next(u)) in[u].reset(v);
        out[v].reset();
        in[v].reset();
    }
    // v is kept: route every a->v->b through a->b.
    void bypass(int v) {
        Bits ps = ins(v), ss = outs(v);
        ps.reset(v);
        ss.reset(v);
        for (auto a = ps.find_first(); a != Bits::npos; a = ps.find_next(a)) out[a] |= ss;
        for (auto b = ss.find_first(); b != Bits::npos; b = ss.find_next(b)) in[b] |= ps;
        remove(v);
    }
};

class DfvsSolver {
public:
    DfvsSolver(SearchBudget& b) : budget_(b) {}

    std::vector<int> run(const Digraph& g) {
        DfvsState s(g);
        return *solve(std::move(s), g.n + 1);
    }

private:
    SearchBudget& budget_;

    static void reduce(DfvsState& s, std::vector<int>& taken) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto v = s.alive.find_first(); v != Bits::npos; v = s.alive.find_next(v)) {
                int u = int(v);
                if (s.loop(u)) {
                    taken.push_back(u);
                    s.remove(u);
                    changed = true;
                    continue;
                }
                Bits o = s.outs(u), i = s.ins(u);
                auto od = o.count(), id = i.count();
                if (od == 0 || id == 0) {
                    s.remove(u);
                    changed = true;
                } else if (id == 1 || od == 1) {
                    // every cycle through u also passes its unique neighbour
                    s.bypass(u);
                    changed = true;
                }
            }
        }
    }

    static std::vector<Bits> sccs(const DfvsState& s) {
        Digraph h(s.n);
        for (auto v = s.alive.find_first(); v != Bits::npos; v = s.alive.find_next(v)) {
            Bits o = s.outs(int(v));
            for (auto w = o.find_first(); w != Bits::npos; w = o.find_next(w))
                if (w != v) h.add_arc(int(v), int(w));
        }
        std::vector<char> mask(s.n, 0);
        for (auto v = s.alive.find_first(); v != Bits::npos; v = s.alive.find_next(v)) mask[v] = 1;
        std::vector<Bits> out;
        for (auto& c : strongly_connected_components(h, &mask)) {
            if (c.size() < 2) continue;
            Bits b(s.n);
            for (int v : c) b.set(v);
            out.push_back(std::move(b));
        }
        return out;
    }

    static UGraph digon_graph(const DfvsState& s) {
        UGraph u(s.n);
        for (auto v = s.alive.find_first(); v != Bits::npos; v = s.alive.find_next(v)) {
            Bits o = s.outs(int(v)) & s.ins(int(v));
            for (auto w = o.find_next(v); w != Bits::npos; w = o.find_next(w)) u.add_edge(int(v), int(w));
        }
        return u;
    }

    static bool one_way_acyclic(const DfvsState& s) {
        std::vector<int> indeg(s.n, 0);
        std::vector<Bits> ow(s.n, Bits(s.n));
        for (auto v = s.alive.find_first(); v != Bits::npos; v = s.alive.find_next(v)) {
            ow[v] = s.outs(int(v)) - s.ins(int(v));
            for (auto w = ow[v].find_first(); w != Bits::npos; w = ow[v].find_next(w)) ++indeg[w];
        }
        std::vector<int> q;
        std::size_t seen = 0;
        for (auto v = s.alive.find_first(); v != Bits::npos; v = s.alive.find_next(v))
            if (!indeg[v]) q.push_back(int(v));
        while (!q.empty()) {
            int v = q.back();
            q.pop_back();
            ++seen;
            for (auto w = ow[v].find_first(); w != Bits::npos; w = ow[v].find_next(w))
                if (--indeg[w] == 0) q.push_back(int(w));
        }
        return seen == s.alive.count();
    }

    // Shortest cycle in the live graph, BFS from every vertex.
    static std::vector<int> shortest_cycle(const DfvsState& s, const Bits& within) {
        std::vector<int> best;
        std::vector<int> dist(s.n), par(s.n);
        for (auto r = within.find_first(); r != Bits::npos; r = within.find_next(r)) {
            std::fill(dist.begin(), dist.end(), -1);
            dist[r] = 0;
            std::deque<int> q{int(r)};
            bool done = false;
            while (!q.empty() && !done) {
                int v = q.front();
                q.pop_front();
                if (!best.empty() && dist[v] + 1 >= int(best.size())) break;
                Bits o = s.out[v] & within;
                for (auto w = o.find_first(); w != Bits::npos; w = o.find_next(w)) {
                    if (int(w) == int(r)) {
                        std::vector<int> c;
                        for (int x = v; x != int(r); x = par[x]) c.push_back(x);
                        c.push_back(int(r));
                        std::reverse(c.begin(), c.end());
                        best = std::move(c);
                        done = true;
                        break;
                    }
                    if (dist[w] < 0) {
                        dist[w] = dist[v] + 1;
                        par[w] = v;
                        q.push_back(int(w));
                    }
                }
            }
            if (best.size() == 2) break;
        }
        return best;
    }

    // Vertex-disjoint cycle packing: digon matching first, then short cycles.
    static int lower_bound(const DfvsState& s) {
        Bits free = s.alive;
        int lb = 0;
        for (auto v = free.find_first(); v != Bits::npos; v = free.find_next(v)) {
            Bits d = s.out[v] & s.in[v] & free;
            d.reset(v);
            if (d.none()) continue;
            int w = -1;
            std::size_t wd = ~std::size_t(0);
            for (auto x = d.find_first(); x != Bits::npos; x = d.find_next(x)) {
                auto c = (s.out[x] & s.in[x] & free).count();
                if (c < wd) wd = c, w = int(x);
            }
            free.reset(v);
            free.reset(w);
            ++lb;
        }
        while (true) {
            auto c = shortest_cycle(s, free);
            if (c.empty()) break;
            for (int v : c) free.reset(v);
            ++lb;
        }
        return lb;
    }

    static std::vector<int> greedy(DfvsState s) {
        std::vector<int> taken;
        while (true) {
            reduce(s, taken);
            if (s.alive.none()) return taken;
            int v = -1;
            std::size_t best = 0;
            for (auto u = s.alive.find_first(); u != Bits::npos; u = s.alive.find_next(u)) {
                std::size_t sc = s.outs(int(u)).count() * s.ins(int(u)).count();
                if (v < 0 || sc > best) best = sc, v = int(u);
            }
            taken.push_back(v);
            s.remove(v);
        }
    }

    // Minimum feedback set of the live graph, if one of size < ub exists.
    std::optional<std::vector<int>> solve(DfvsState s, int ub) {
        budget_.tick("feedback vertex set");
        std::vector<int> taken;
        reduce(s, taken);
        if (int(taken.size()) >= ub) return std::nullopt;
        ub -= int(taken.size());
        if (s.alive.none()) return taken;

        auto comps = sccs(s);
        if (comps.empty()) return taken;
        if (comps.size() > 1) {
            std::vector<DfvsState> parts;
            std::vector<int> lbs;
            int total = 0;
            for (auto& c : comps) {
                parts.push_back(s.restrict_to(c));
                total += lbs.emplace_back(lower_bound(parts.back()));
            }
            if (total >= ub) return std::nullopt;
            int acc = 0;
            for (std::size_t k = 0; k < parts.size(); ++k) {
                total -= lbs[k];
                auto r = solve(std::move(parts[k]), ub - acc - total);
                if (!r) return std::nullopt;
                acc += int(r->size());
                taken.insert(taken.end(), r->begin(), r->end());
            }
            return taken;
        }
        s = s.restrict_to(comps[0]);

        // Every cycle uses a digon arc, so feedback sets are digon covers.
        if (one_way_acyclic(s)) {
            auto vc = min_vertex_cover(digon_graph(s), budget_);
            if (int(vc.size) >= ub) return std::nullopt;
            taken.insert(taken.end(), vc.cover.begin(), vc.cover.end());
            return taken;
        }

        int lb = lower_bound(s);
        if (lb >= ub) return std::nullopt;
        std::optional<std::vector<int>> best;
        auto g = greedy(s);
        if (int(g.size()) < ub) {
            ub = int(g.size());
            best = std::move(g);
            if (lb >= ub) {
                taken.insert(taken.end(), best->begin(), best->end());
                return taken;
            }
        }

        // Branch along a shortest cycle c1..ck: take c_i with c_1..c_{i-1} kept.
        auto cyc = shortest_cycle(s, s.alive);
        std::stable_sort(cyc.begin(), cyc.end(), [&](int a, int b) {
            return s.outs(a).count() * s.ins(a).count() > s.outs(b).count() * s.ins(b).count();
        });
        DfvsState cur = s;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int v = cyc[i];
            if (!cur.alive.test(v)) break;
            bool forced = cur.loop(v);
            DfvsState child = cur;
            child.remove(v);
            if (auto r = solve(std::move(child), ub - 1)) {
                r->push_back(v);
                ub = int(r->size());
                best = std::move(r);
            }
            if (forced || i + 1 == cyc.size()) break;
            cur.bypass(v);
        }
        if (!best) return std::nullopt;
        taken.insert(taken.end(), best->begin(), best->end());
        return taken;
    }
};

} // namespace detail

inline HmResult hm_index_bb(const Digraph& g, SearchBudget& budget) {
    detail::DfvsSolver s(budget);
    return detail::certified(g, s.run(g), HmMethod::bb);
}

inline HmResult hm_index_bb(const Digraph& g) {
    SearchBudget b;
    return hm_index_bb(g, b);
}

} // namespace rat
