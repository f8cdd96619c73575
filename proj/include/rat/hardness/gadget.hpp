#pragma once

#include "rat/hardness/cnf.hpp"
#include "rat/vertex_cover.hpp"

#include <array>
#include <cstdlib>
#include <string>
#include <vector>

namespace rat {

struct GadgetVertex {
    enum class Kind { clause, variable };
    Kind kind;
    int var;       // 1-based
    bool negated;  // label is the negation of u_var
    int owner;     // clause index, or -1 for a variable-cycle vertex
    int slot;      // literal position in the clause, or position on the cycle

    std::string label() const { return (negated ? "~u" : "u") + std::to_string(var); }
};

// Clause triangles occupy vertices 3c..3c+2; the variable cycles follow.
struct GadgetGraph {
    UGraph graph;
    std::vector<GadgetVertex> labels;
    std::vector<int> r;                       // cycle length per variable
    std::vector<std::vector<int>> cycles;     // vertex ids in cycle order
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::pair<int, int>> connectors;  // (clause vertex, cycle vertex)
    long threshold = 0;                       // 2m + sum(r)/2
};

// r_i = 2 max(1, occurrences); even cycle positions carry u_i, odd ones ~u_i.
// Clauses take attachment slots in clause order, each literal the next free
// position of the opposite label, so every slot is used at most once.
inline GadgetGraph build_gadget_graph(const SatInstance& f) {
    check_instance(f);
    const int n = f.variables, m = int(f.clauses.size());
    GadgetGraph G;
    G.r.assign(n, 2);
    std::vector<int> occ(n, 0);
    for (const auto& c : f.clauses)
        for (int l : c) ++occ[std::abs(l) - 1];
    int total = 3 * m;
    for (int i = 0; i < n; ++i) total += G.r[i] = 2 * std::max(1, occ[i]);
    G.graph = UGraph(total);
    for (int c = 0; c < m; ++c) {
        std::array<int, 3> t{};
        for (int k = 0; k < 3; ++k) {
            int l = f.clauses[c][k];
            t[k] = int(G.labels.size());
            G.labels.push_back({GadgetVertex::Kind::clause, std::abs(l), l < 0, c, k});
        }
        G.graph.add_edge(t[0], t[1]);
        G.graph.add_edge(t[1], t[2]);
        G.graph.add_edge(t[0], t[2]);
        G.triangles.push_back(t);
    }
    for (int i = 0; i < n; ++i) {
        auto& cyc = G.cycles.emplace_back();
        for (int p = 0; p < G.r[i]; ++p) {
            cyc.push_back(int(G.labels.size()));
            G.labels.push_back({GadgetVertex::Kind::variable, i + 1, p % 2 == 1, -1, p});
        }
        for (int p = 0; p < G.r[i]; ++p) G.graph.add_edge(cyc[p], cyc[(p + 1) % G.r[i]]);
    }
    std::vector<int> last(n, -1);
    for (int c = 0; c < m; ++c)
        for (int k = 0; k < 3; ++k) {
            int l = f.clauses[c][k], v = std::abs(l) - 1;
            int want = l > 0 ? 1 : 0;  // parity of the opposite label
            int p = last[v] + 1;
            if (p % 2 != want) ++p;
            last[v] = p;
            G.connectors.push_back({G.triangles[c][k], G.cycles[v][p]});
            G.graph.add_edge(G.triangles[c][k], G.cycles[v][p]);
        }
    G.threshold = 2L * m;
    for (int x : G.r) G.threshold += x / 2;
    return G;
}

struct SatVerdict {
    bool satisfiable = false;
    std::vector<bool> assignment;  // u_i true iff all ~u_i cycle vertices are in the cover
    std::size_t min_cover = 0;
    long threshold = 0;
    std::vector<int> cover;
};

inline SatVerdict sat_via_vc(const SatInstance& f, SearchBudget& budget) {
    auto G = build_gadget_graph(f);
    auto vc = min_vertex_cover(G.graph, budget);
    SatVerdict v;
    v.min_cover = vc.size;
    v.threshold = G.threshold;
    v.cover = vc.cover;
    v.satisfiable = long(vc.size) <= G.threshold;
    if (!v.satisfiable) return v;
    std::vector<char> in(G.graph.n, 0);
    for (int x : vc.cover) in[x] = 1;
    v.assignment.assign(f.variables, false);
    for (int i = 0; i < f.variables; ++i) {
        bool all_neg = true;
        for (int x : G.cycles[i])
            if (G.labels[x].negated) all_neg &= in[x] != 0;
        v.assignment[i] = all_neg;
    }
    if (!satisfies(f, v.assignment)) throw std::logic_error("extracted assignment does not satisfy the formula");
    return v;
}

inline SatVerdict sat_via_vc(const SatInstance& f) {
    SearchBudget b;
    return sat_via_vc(f, b);
}

} // namespace rat
