#pragma once

#include "rat/budget.hpp"
#include "rat/dataset.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace rat {

// Directed graph on vertices 0..n-1, no self-loops.
struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> out, in;
    std::vector<std::vector<char>> adj;

    Digraph() = default;
    explicit Digraph(int n_) : n(n_), out(n_), in(n_), adj(n_, std::vector<char>(n_, 0)) {}

    void add_arc(int i, int j) {
        if (i == j) throw std::invalid_argument("self-loop");
        if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("arc endpoint");
        if (adj[i][j]) return;
        adj[i][j] = 1;
        out[i].push_back(j);
        in[j].push_back(i);
    }
    bool has_arc(int i, int j) const { return adj[i][j] != 0; }
    bool digon(int i, int j) const { return adj[i][j] && adj[j][i]; }

    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> a;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (adj[i][j]) a.emplace_back(i, j);
        return a;
    }
    std::size_t arc_count() const {
        std::size_t c = 0;
        for (const auto& o : out) c += o.size();
        return c;
    }
    friend bool operator==(const Digraph& a, const Digraph& b) { return a.n == b.n && a.adj == b.adj; }
};

struct PreferenceGraph : Digraph {
    int commodities = 0;
    TiePolicy policy = TiePolicy::reject;
    using Digraph::Digraph;
};

struct ValidationFailed : std::runtime_error {
    ValidationReport report;
    explicit ValidationFailed(ValidationReport r)
        : std::runtime_error("dataset failed validation: " + first(r)), report(std::move(r)) {}
    static std::string first(const ValidationReport& r) {
        for (const auto& f : r.findings)
            if (f.fatal) return describe(f);
        return "";
    }
};

// Arc i->j iff p_i.x_i >= p_i.x_j.
inline PreferenceGraph build_preference_graph(const ConsumerDataset& ds, TiePolicy policy = TiePolicy::reject) {
    check_structure(ds);
    auto rep = validate(ds, policy);
    if (!rep.ok()) throw ValidationFailed(std::move(rep));
    PreferenceGraph g(int(ds.size()));
    g.commodities = ds.commodities;
    g.policy = policy;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        Rational own = dot(ds.p(i), ds.x(i));
        for (std::size_t j = 0; j < ds.size(); ++j)
            if (i != j && own >= dot(ds.p(i), ds.x(j))) g.add_arc(int(i), int(j));
    }
    return g;
}

using Cycle = std::vector<int>;  // 0-based vertex sequence, last -> first closes it

inline bool is_cycle_of(const Digraph& g, const Cycle& c) {
    if (c.size() < 2) return false;
    std::vector<char> seen(g.n, 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (seen[c[k]]++) return false;
        if (!g.has_arc(c[k], c[(k + 1) % c.size()])) return false;
    }
    return true;
}

namespace detail {
// DFS over the vertices with mask[v] set, roots and successors in index order.
inline std::optional<Cycle> find_cycle(const Digraph& g, const std::vector<char>& mask) {
    std::vector<int> color(g.n, 0), pos(g.n, -1);
    std::vector<int> path;
    std::vector<std::pair<int, std::size_t>> st;
    std::vector<std::vector<int>> succ(g.n);
    for (int v = 0; v < g.n; ++v) {
        succ[v] = g.out[v];
        std::sort(succ[v].begin(), succ[v].end());
    }
    for (int r = 0; r < g.n; ++r) {
        if (!mask[r] || color[r]) continue;
        st.push_back({r, 0});
        color[r] = 1;
        pos[r] = int(path.size());
        path.push_back(r);
        while (!st.empty()) {
            auto& [v, k] = st.back();
            if (k < succ[v].size()) {
                int w = succ[v][k++];
                if (!mask[w]) continue;
                if (color[w] == 1) return Cycle(path.begin() + pos[w], path.end());
                if (color[w] == 0) {
                    color[w] = 1;
                    pos[w] = int(path.size());
                    path.push_back(w);
                    st.push_back({w, 0});
                }
            } else {
                color[v] = 2;
                path.pop_back();
                st.pop_back();
            }
        }
    }
    return std::nullopt;
}
} // namespace detail

// nullopt means acyclic (GARP holds).
inline std::optional<Cycle> check_garp(const Digraph& g) {
    return detail::find_cycle(g, std::vector<char>(g.n, 1));
}

inline std::optional<Cycle> find_cycle_in(const Digraph& g, const std::vector<char>& keep) {
    return detail::find_cycle(g, keep);
}

inline std::optional<Cycle> check_warp(const Digraph& g) {
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.digon(i, j)) return Cycle{i, j};
    return std::nullopt;
}

// Chordless directed cycles up to max_len, each once, starting at its
// smallest vertex. A chord is any arc between cycle vertices that is not a
// cycle arc.
inline std::vector<Cycle> enumerate_chordless_cycles(const Digraph& g, int max_len,
                                                     SearchBudget budget = SearchBudget::of_nodes(50'000'000)) {
    if (max_len < 2) throw std::invalid_argument("max_len must be at least 2");
    std::vector<Cycle> res;
    std::vector<int> path;
    std::vector<char> on(g.n, 0);
    std::vector<std::vector<int>> succ(g.n);
    for (int v = 0; v < g.n; ++v) {
        succ[v] = g.out[v];
        std::sort(succ[v].begin(), succ[v].end());
    }
    auto rec = [&](auto&& self) -> void {
        budget.tick("chordless cycle enumeration");
        const int s = path.front(), last = path.back();
        const std::size_t k = path.size() - 1;
        for (int w : succ[last]) {
            if (w <= s || on[w]) continue;
            bool ok = true;
            // w may touch the path only through last->w and w->s
            for (std::size_t i = 0; i < k && ok; ++i)
                if (g.has_arc(path[i], w)) ok = false;
            for (std::size_t i = 1; i <= k && ok; ++i)
                if (g.has_arc(w, path[i])) ok = false;
            if (!ok) continue;
            path.push_back(w);
            if (g.has_arc(w, s)) {
                res.push_back(path);
            } else if (int(path.size()) < max_len) {
                on[w] = 1;
                self(self);
                on[w] = 0;
            }
            path.pop_back();
        }
    };
    for (int s = 0; s < g.n; ++s) {
        path = {s};
        on[s] = 1;
        rec(rec);
        on[s] = 0;
    }
    std::sort(res.begin(), res.end());
    return res;
}

// Tarjan, iterative. Components sorted internally and by smallest member.
inline std::vector<std::vector<int>> strongly_connected_components(const Digraph& g,
                                                                   const std::vector<char>* mask = nullptr) {
    std::vector<int> idx(g.n, -1), low(g.n, 0), stk;
    std::vector<char> onst(g.n, 0);
    std::vector<std::vector<int>> comps;
    int counter = 0;
    auto live = [&](int v) { return !mask || (*mask)[v]; };
    for (int r = 0; r < g.n; ++r) {
        if (!live(r) || idx[r] != -1) continue;
        std::vector<std::pair<int, std::size_t>> cs{{r, 0}};
        idx[r] = low[r] = counter++;
        stk.push_back(r);
        onst[r] = 1;
        while (!cs.empty()) {
            auto& [v, k] = cs.back();
            if (k < g.out[v].size()) {
                int w = g.out[v][k++];
                if (!live(w)) continue;
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stk.push_back(w);
                    onst[w] = 1;
                    cs.push_back({w, 0});
                } else if (onst[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
            } else {
                int vv = v;
                cs.pop_back();
                if (!cs.empty()) low[cs.back().first] = std::min(low[cs.back().first], low[vv]);
                if (low[vv] == idx[vv]) {
                    std::vector<int> c;
                    int w;
                    do {
                        w = stk.back();
                        stk.pop_back();
                        onst[w] = 0;
                        c.push_back(w);
                    } while (w != vv);
                    std::sort(c.begin(), c.end());
                    comps.push_back(std::move(c));
                }
            }
        }
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

inline Digraph induced(const Digraph& g, const std::vector<char>& keep) {
    Digraph h(g.n);
    for (auto [i, j] : g.arcs())
        if (keep[i] && keep[j]) h.add_arc(i, j);
    return h;
}

// "i j" per line, 1-based.
inline std::string edge_list(const Digraph& g) {
    std::ostringstream os;
    for (auto [i, j] : g.arcs()) os << i + 1 << ' ' << j + 1 << '\n';
    return os.str();
}

inline Digraph parse_edge_list(const std::string& text, int n_hint = -1) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<int, int>> arcs;
    int n = std::max(n_hint, 0);
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        std::vector<long> nums;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                long v = std::stol(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                nums.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("bad token '" + tok + "' on line " + std::to_string(lineno), lineno);
            }
        }
        if (nums.empty()) continue;
        if (nums.size() == 2) {
            if (nums[0] < 1 || nums[1] < 1) throw ParseError("vertex indices are 1-based", lineno);
            if (nums[0] == nums[1]) throw ParseError("self-loop on line " + std::to_string(lineno), lineno);
            arcs.emplace_back(int(nums[0]) - 1, int(nums[1]) - 1);
            n = std::max<int>(n, int(std::max(nums[0], nums[1])));
        } else if (nums.size() == 1) {
            n = std::max<int>(n, int(nums[0]));  // bare vertex count line
        } else {
            throw ParseError("expected 'i j' on line " + std::to_string(lineno), lineno);
        }
    }
    Digraph g(n);
    for (auto [i, j] : arcs) g.add_arc(i, j);
    return g;
}

} // namespace rat
