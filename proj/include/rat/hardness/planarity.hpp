#pragma once

#include "rat/hardness/cnf.hpp"
#include "rat/two_commodity.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/chrobak_payne_drawing.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>
#include <boost/graph/planar_canonical_ordering.hpp>

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace rat {

// H_phi: vertices 0..n-1 are variables, n..n+m-1 clauses. A clause that
// repeats a variable contributes a single edge to it.
struct IncidenceGraph {
    int variables = 0, clauses = 0;
    std::vector<std::pair<int, int>> edges;  // (variable vertex, clause vertex), sorted
    int order() const { return variables + clauses; }
};

inline IncidenceGraph incidence_graph(const SatInstance& f) {
    check_instance(f);
    IncidenceGraph h{f.variables, int(f.clauses.size()), {}};
    std::set<std::pair<int, int>> e;
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        for (int l : f.clauses[c]) e.insert({std::abs(l) - 1, f.variables + int(c)});
    h.edges.assign(e.begin(), e.end());
    return h;
}

struct PlanarLayout {
    std::vector<Point2> positions;              // one per H vertex
    std::vector<std::pair<int, int>> edges;     // parallel to polylines
    std::vector<std::vector<Point2>> polylines; // endpoints included
};

enum class KuratowskiKind { k5, k33 };

struct PlanarityResult {
    bool planar = true;
    PlanarLayout layout;                       // when planar
    std::vector<std::pair<int, int>> witness;  // when not: edges of a K5 / K3,3 subdivision
    KuratowskiKind kind = KuratowskiKind::k33;
};

namespace detail {

// Orientation sign of (b-a) x (c-a).
inline int orient(const Point2& a, const Point2& b, const Point2& c) {
    return ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).sign();
}
inline bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
    return orient(a, b, p) == 0 && std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}
// Closed segments share a point.
inline bool segments_meet(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

} // namespace detail

// Polylines meet only at shared endpoints, start and end at their vertices,
// and no vertex sits on a foreign polyline.
inline bool verify_layout(const IncidenceGraph& h, const PlanarLayout& l, std::string* why = nullptr) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (int(l.positions.size()) != h.order()) return fail("position count");
    if (l.edges != h.edges || l.polylines.size() != h.edges.size()) return fail("edge set");
    std::set<Point2> distinct(l.positions.begin(), l.positions.end());
    if (distinct.size() != l.positions.size()) return fail("coincident vertices");
    struct Seg { Point2 a, b; int e; };
    std::vector<Seg> segs;
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        const auto& pl = l.polylines[e];
        if (pl.size() < 2 || pl.front() != l.positions[h.edges[e].first] || pl.back() != l.positions[h.edges[e].second])
            return fail("polyline endpoints of edge " + std::to_string(e));
        for (std::size_t k = 0; k + 1 < pl.size(); ++k) {
            if (pl[k] == pl[k + 1]) return fail("degenerate segment");
            segs.push_back({pl[k], pl[k + 1], int(e)});
        }
    }
    for (std::size_t s = 0; s < segs.size(); ++s) {
        for (int v = 0; v < h.order(); ++v) {
            const auto& p = l.positions[v];
            if (!detail::on_segment(segs[s].a, segs[s].b, p)) continue;
            auto [u, w] = h.edges[segs[s].e];
            if ((v == u || v == w) && (p == segs[s].a || p == segs[s].b)) continue;
            return fail("vertex " + std::to_string(v) + " on edge " + std::to_string(segs[s].e));
        }
        for (std::size_t t = s + 1; t < segs.size(); ++t) {
            if (!detail::segments_meet(segs[s].a, segs[s].b, segs[t].a, segs[t].b)) continue;
            if (segs[s].e == segs[t].e) {
                // consecutive pieces of one polyline share their joint only
                if (segs[s].b == segs[t].a && t == s + 1 &&
                    !detail::on_segment(segs[s].a, segs[s].b, segs[t].b) &&
                    !detail::on_segment(segs[t].a, segs[t].b, segs[s].a))
                    continue;
                return fail("self-intersecting polyline");
            }
            // different edges may only touch at a common endpoint vertex
            auto [a1, b1] = h.edges[segs[s].e];
            auto [a2, b2] = h.edges[segs[t].e];
            std::optional<Point2> shared;
            for (int x : {a1, b1})
                if (x == a2 || x == b2) shared = l.positions[x];
            if (!shared) return fail("edges " + std::to_string(segs[s].e) + " and " + std::to_string(segs[t].e) + " cross");
            // they must meet exactly at the shared vertex and nowhere else
            bool s_end = segs[s].a == *shared || segs[s].b == *shared;
            bool t_end = segs[t].a == *shared || segs[t].b == *shared;
            if (!s_end || !t_end) return fail("edges cross near a shared vertex");
            const Point2& so = segs[s].a == *shared ? segs[s].b : segs[s].a;
            const Point2& to = segs[t].a == *shared ? segs[t].b : segs[t].a;
            if (detail::orient(*shared, so, to) == 0 &&
                (detail::on_segment(*shared, so, to) || detail::on_segment(*shared, to, so)))
                return fail("overlapping edges");
        }
    }
    return true;
}

// The edge set is a subdivision of K5 or K3,3 (vertices of degree 2 are
// suppressed, everything else must be a branch vertex).
inline std::optional<KuratowskiKind> verify_kuratowski(const std::vector<std::pair<int, int>>& edges) {
    std::map<int, std::vector<int>> adj;
    for (auto [u, v] : edges) {
        if (u == v) return std::nullopt;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> branch;
    for (auto& [v, nb] : adj) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return std::nullopt;
        if (nb.size() >= 3) branch.push_back(v);
        else if (nb.size() != 2) return std::nullopt;
    }
    std::set<int> bs(branch.begin(), branch.end());
    std::set<std::pair<int, int>> contracted;
    for (int b : branch) {
        for (int nx : adj[b]) {
            int prev = b, cur = nx, steps = 0;
            while (!bs.count(cur)) {
                const auto& nb = adj[cur];
                int next = nb[0] == prev ? nb[1] : nb[0];
                prev = cur;
                cur = next;
                if (++steps > int(adj.size())) return std::nullopt;
            }
            if (cur == b) return std::nullopt;
            auto key = std::minmax(b, cur);
            contracted.insert({key.first, key.second});
        }
    }
    // every branch path must be counted once from each end
    std::size_t paths = 0;
    for (int b : branch) paths += adj[b].size();
    if (paths != 2 * contracted.size()) return std::nullopt;
    std::map<int, int> deg;
    for (auto [u, v] : contracted) ++deg[u], ++deg[v];
    if (branch.size() == 5 && contracted.size() == 10) return KuratowskiKind::k5;
    if (branch.size() == 6 && contracted.size() == 9) {
        // 2-colour the contracted graph and insist on completeness
        std::map<int, int> col;
        col[branch[0]] = 0;
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto [u, v] : contracted) {
                if (col.count(u) && !col.count(v)) col[v] = 1 - col[u], grew = true;
                if (col.count(v) && !col.count(u)) col[u] = 1 - col[v], grew = true;
            }
        }
        if (col.size() != 6) return std::nullopt;
        int left = 0;
        for (auto [v, c] : col) left += c == 0;
        for (auto [u, v] : contracted)
            if (col[u] == col[v]) return std::nullopt;
        if (left == 3) return KuratowskiKind::k33;
    }
    return std::nullopt;
}

namespace detail {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                     boost::no_property,
                                     boost::property<boost::edge_index_t, int>>;
using BEdge = boost::graph_traits<BGraph>::edge_descriptor;
using BEmbedding = std::vector<std::vector<BEdge>>;

inline void index_edges(BGraph& g) {
    int k = 0;
    auto idx = boost::get(boost::edge_index, g);
    for (auto [it, end] = boost::edges(g); it != end; ++it) boost::put(idx, *it, k++);
}

inline bool embed(BGraph& g, BEmbedding& emb) {
    index_edges(g);
    emb.assign(boost::num_vertices(g), {});
    return boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                               boost::boyer_myrvold_params::embedding = &emb[0]);
}

inline bool planar_edges(const std::vector<std::pair<int, int>>& edges, int n) {
    BGraph g(n);
    for (auto [u, v] : edges) boost::add_edge(u, v, g);
    index_edges(g);
    return boost::boyer_myrvold_planarity_test(g);
}

// Boost's Kuratowski edge set can carry dangling trees and, rarely, spare
// edges. Strip leaves, then drop any edge whose removal keeps the set
// nonplanar; what remains is a minimal nonplanar graph, i.e. a subdivision.
inline void trim_witness(std::vector<std::pair<int, int>>& w, int n) {
    for (bool again = true; again;) {
        std::vector<int> deg(n, 0);
        for (auto [u, v] : w) ++deg[u], ++deg[v];
        auto leaf = [&](const std::pair<int, int>& e) { return deg[e.first] == 1 || deg[e.second] == 1; };
        again = std::any_of(w.begin(), w.end(), leaf);
        w.erase(std::remove_if(w.begin(), w.end(), leaf), w.end());
    }
    if (verify_kuratowski(w)) return;
    for (std::size_t i = 0; i < w.size();) {
        auto rest = w;
        rest.erase(rest.begin() + long(i));
        if (!planar_edges(rest, n)) w = std::move(rest);
        else ++i;
    }
}

} // namespace detail

// Boyer-Myrvold test; planar graphs get a Chrobak-Payne straight-line grid
// drawing (of a maximal planar supergraph, extra edges dropped).
inline PlanarityResult check_planar(const IncidenceGraph& h) {
    using namespace detail;
    PlanarityResult res;
    const int n = h.order();
    BGraph g(n);
    for (auto [u, v] : h.edges) boost::add_edge(u, v, g);
    index_edges(g);

    std::vector<BEdge> kur;
    if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                             boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur))) {
        res.planar = false;
        for (const auto& e : kur) {
            int a = int(boost::source(e, g)), b = int(boost::target(e, g));
            res.witness.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(res.witness.begin(), res.witness.end());
        trim_witness(res.witness, n);
        auto kind = verify_kuratowski(res.witness);
        if (!kind) throw std::logic_error("planarity test returned an invalid Kuratowski witness");
        res.kind = *kind;
        return res;
    }

    auto& L = res.layout;
    L.edges = h.edges;
    if (n < 3) {
        for (int v = 0; v < n; ++v) L.positions.push_back({Rational(v), Rational(0)});
    } else {
        BEmbedding emb;
        auto vidx = boost::get(boost::vertex_index, g);
        auto emap = boost::make_iterator_property_map(emb.begin(), vidx);
        auto step = [&](auto&& augment) {
            embed(g, emb);
            emap = boost::make_iterator_property_map(emb.begin(), vidx);
            augment();
        };
        step([&] { boost::make_connected(g); });
        step([&] { boost::make_biconnected_planar(g, emap); });
        step([&] { boost::make_maximal_planar(g, emap); });
        embed(g, emb);
        emap = boost::make_iterator_property_map(emb.begin(), vidx);
        std::vector<std::size_t> ordering;
        boost::planar_canonical_ordering(g, emap, std::back_inserter(ordering));
        struct Coord { std::size_t x, y; };
        std::vector<Coord> pos(n);
        boost::chrobak_payne_straight_line_drawing(g, emap, ordering.begin(), ordering.end(),
                                                   boost::make_iterator_property_map(pos.begin(), vidx));
        for (int v = 0; v < n; ++v) L.positions.push_back({Rational(long(pos[v].x)), Rational(long(pos[v].y))});
    }
    for (auto [u, v] : h.edges) L.polylines.push_back({L.positions[u], L.positions[v]});
    std::string why;
    if (!verify_layout(h, L, &why)) throw std::logic_error("planar layout failed verification: " + why);
    return res;
}

inline PlanarityResult check_planar(const SatInstance& f) { return check_planar(incidence_graph(f)); }

inline nlohmann::json to_json(const PlanarLayout& l) {
    auto pt = [](const Point2& p) { return nlohmann::json::array({p[0].str(), p[1].str()}); };
    nlohmann::json pos = nlohmann::json::array(), edges = nlohmann::json::array(), lines = nlohmann::json::array();
    for (const auto& p : l.positions) pos.push_back(pt(p));
    for (std::size_t e = 0; e < l.edges.size(); ++e) {
        edges.push_back({l.edges[e].first + 1, l.edges[e].second + 1});
        nlohmann::json pl = nlohmann::json::array();
        for (const auto& p : l.polylines[e]) pl.push_back(pt(p));
        lines.push_back(pl);
    }
    return {{"positions", pos}, {"edges", edges}, {"polylines", lines}};
}

inline PlanarLayout layout_from_json(const nlohmann::json& j) {
    auto pt = [](const nlohmann::json& a) -> Point2 {
        if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
            throw std::invalid_argument("layout point must be [\"x\",\"y\"]");
        return {Rational::parse(a[0].get<std::string>()), Rational::parse(a[1].get<std::string>())};
    };
    if (!j.is_object() || !j.contains("positions") || !j.contains("edges") || !j.contains("polylines"))
        throw std::invalid_argument("layout needs 'positions', 'edges', 'polylines'");
    PlanarLayout l;
    for (const auto& p : j["positions"]) l.positions.push_back(pt(p));
    for (const auto& e : j["edges"]) l.edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
    for (const auto& pl : j["polylines"]) {
        auto& v = l.polylines.emplace_back();
        for (const auto& p : pl) v.push_back(pt(p));
    }
    return l;
}

} // namespace rat
