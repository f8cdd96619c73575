#pragma once

#include "rat/generators.hpp"
#include "rat/hardness/gadget.hpp"
#include "rat/hardness/planarity.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace rat {

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AssembleOptions {
    std::uint64_t seed = 0x5eed;
    int attempts = 500;
    int nodes_per_attempt = 4000;
};

struct AssembledDrawing {
    OrientedDiscDrawing drawing;  // point v belongs to gadget vertex v
    GadgetGraph gadget;
    std::vector<int> order;       // vertices by position on the parabola
};

namespace detail {

// Vertex order in which every vertex's later neighbours sit on consecutive
// positions. Randomised depth-first search with restarts.
class ContiguousOrder {
public:
    ContiguousOrder(const UGraph& g, std::uint64_t seed) : g_(g), rng_(seed), nb_(g.n) {
        for (int v = 0; v < g.n; ++v)
            for (auto w = g.adj[v].find_first(); w != Bits::npos; w = g.adj[v].find_next(w)) nb_[v].push_back(int(w));
    }

    std::optional<std::vector<int>> find(int attempts, int limit) {
        for (int a = 0; a < attempts; ++a) {
            order_.clear();
            pos_.assign(g_.n, -1);
            nodes_ = 0;
            limit_ = limit;
            try {
                if (rec()) return order_;
            } catch (const Timeout&) {
            }
        }
        return std::nullopt;
    }

private:
    struct Timeout {};
    const UGraph& g_;
    std::mt19937_64 rng_;
    std::vector<std::vector<int>> nb_;
    std::vector<int> order_, pos_;
    int nodes_ = 0, limit_ = 0;

    const std::vector<int>& nb(int v) const { return nb_[v]; }

    bool violates(int v) {
        for (int u : nb(v)) {
            if (pos_[u] < 0 || pos_[u] >= pos_[v]) continue;
            int lo = INT_MAX, hi = -1, cnt = 0;
            for (int w : nb(u))
                if (pos_[w] > pos_[u]) lo = std::min(lo, pos_[w]), hi = std::max(hi, pos_[w]), ++cnt;
            if (hi - lo + 1 != cnt) return true;
        }
        return false;
    }

    bool rec() {
        if (++nodes_ > limit_) throw Timeout{};
        if (int(order_.size()) == g_.n) return true;
        std::vector<int> cands;
        bool constrained = false;
        std::vector<char> req(g_.n, 1);
        for (int u : order_) {
            bool started = false, open = false;
            for (int w : nb(u)) started |= pos_[w] > pos_[u], open |= pos_[w] < 0;
            if (!(started && open)) continue;
            constrained = true;
            std::vector<char> here(g_.n, 0);
            for (int w : nb(u))
                if (pos_[w] < 0) here[w] = 1;
            for (int w = 0; w < g_.n; ++w) req[w] &= here[w];
        }
        for (int w = 0; w < g_.n; ++w)
            if (pos_[w] < 0 && (!constrained || req[w])) cands.push_back(w);
        if (cands.empty()) return false;
        std::shuffle(cands.begin(), cands.end(), rng_);
        if (!constrained) {
            auto unplaced = [&](int v) {
                int c = 0;
                for (int w : nb(v)) c += pos_[w] < 0;
                return c;
            };
            std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) { return unplaced(a) < unplaced(b); });
        }
        for (int v : cands) {
            pos_[v] = int(order_.size());
            order_.push_back(v);
            if (!violates(v) && rec()) return true;
            order_.pop_back();
            pos_[v] = -1;
        }
        return false;
    }
};

// Circle through (t,t^2) for the four parameters t in ts (which sum to 0).
inline Disc parabola_disc(const std::array<Rational, 4>& ts) {
    Rational e2, e3, e4 = ts[0] * ts[1] * ts[2] * ts[3];
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            e2 += ts[i] * ts[j];
            for (int k = j + 1; k < 4; ++k) e3 += ts[i] * ts[j] * ts[k];
        }
    // x^2 + y^2 + D x + E y + F = 0 restricted to the parabola is the monic
    // quartic with these roots: D = -e3, E = e2 - 1, F = e4
    const Rational D = -e3, E = e2 - 1, F = e4;
    return {{e3 / 2, (1 - e2) / 2}, (D * D + E * E) / 4 - F};
}

} // namespace detail

// Puts the gadget vertices on the parabola y = x^2 at x = 1..N in an order
// where later neighbours are consecutive. The disc of the vertex at a meets
// the parabola at a, at a point left of the origin and around its forward
// block, so it covers every earlier point plus exactly the later neighbours:
// digons are the gadget edges and all other arcs point backwards.
inline AssembledDrawing assemble_drawing(const SatInstance& f, const PlanarLayout& layout,
                                         const AssembleOptions& opt = {}) {
    const auto h = incidence_graph(f);
    std::string why;
    if (!verify_layout(h, layout, &why)) throw AssemblyError("layout rejected: " + why);

    AssembledDrawing out;
    out.gadget = build_gadget_graph(f);
    const UGraph& g = out.gadget.graph;
    const int n = g.n;
    if (n == 0) return out;

    auto order = detail::ContiguousOrder(g, opt.seed).find(opt.attempts, opt.nodes_per_attempt);
    if (!order) throw AssemblyError("no contiguous vertex order found; retry with another seed");
    out.order = *order;
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[out.order[k]] = k + 1;

    out.drawing.points.resize(n);
    out.drawing.discs.resize(n);
    const Rational half(1, 2), quarter(1, 4);
    for (int v = 0; v < n; ++v) {
        const Rational a(pos[v]);
        int lo = n + 1, hi = 0, cnt = 0;
        for (auto w = g.adj[v].find_first(); w != Bits::npos; w = g.adj[v].find_next(w))
            if (pos[w] > pos[v]) lo = std::min(lo, pos[w]), hi = std::max(hi, pos[w]), ++cnt;
        Rational t3, t4;
        if (cnt == 0) {
            t3 = a + quarter;
            t4 = a + half;
        } else {
            if (hi - lo + 1 != cnt) throw std::logic_error("order is not contiguous");
            t3 = Rational(lo) - half;
            t4 = Rational(hi) + half;
        }
        out.drawing.points[v] = {a, a * a};
        out.drawing.discs[v] = detail::parabola_disc({-(a + t3 + t4), a, t3, t4});
    }

    // validation: digons are exactly the gadget edges, one-way arcs acyclic
    const Digraph d = disc_graph(out.drawing);
    if (!(digon_graph(d) == g)) throw AssemblyError("assembled drawing: digon graph differs from gadget graph");
    Digraph oneway(n);
    for (auto [i, j] : d.arcs())
        if (!d.has_arc(j, i)) oneway.add_arc(i, j);
    if (check_garp(oneway)) throw AssemblyError("assembled drawing: one-way arcs contain a cycle");
    return out;
}

// Fig. 8(a) style chain: alternating points on two horizontal lines, each
// disc reaching exactly its two neighbours.
inline OrientedDiscDrawing straight_digon_path(int len) {
    OrientedDiscDrawing w;
    for (int k = 0; k < len; ++k) {
        const Rational x(7L * k), y(k % 2 == 0 ? 4 : -4);
        w.points.push_back({x, y});
        w.discs.push_back({{x, y * -4}, Rational(400)});
    }
    return w;
}

} // namespace rat
