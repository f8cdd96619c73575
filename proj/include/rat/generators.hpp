#pragma once

#include "rat/dataset.hpp"
#include "rat/prefgraph.hpp"
#include "rat/two_commodity.hpp"

#include <json.hpp>

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rat {

// Lemma-1 style encoding: commodity i is priced by observation i alone, and
// bundle j carries 0 in coordinate i exactly when i -> j is wanted.
inline ConsumerDataset digraph_to_dataset(const Digraph& d) {
    ConsumerDataset ds;
    ds.commodities = std::max(d.n, 1);
    for (int j = 0; j < d.n; ++j) {
        Observation o;
        o.price.assign(ds.commodities, Rational(0));
        o.price[j] = 1;
        o.bundle.assign(ds.commodities, Rational(0));
        for (int i = 0; i < d.n; ++i) o.bundle[i] = i == j ? 1 : d.has_arc(i, j) ? 0 : 2;
        ds.observations.push_back(std::move(o));
    }
    return ds;
}

struct Disc {
    Point2 center;
    Rational radius_sq;
    bool contains(const Point2& y) const { return sq(y[0] - center[0]) + sq(y[1] - center[1]) <= radius_sq; }
    bool on_boundary(const Point2& y) const { return sq(y[0] - center[0]) + sq(y[1] - center[1]) == radius_sq; }
};

struct OrientedDiscDrawing {
    std::vector<Point2> points;
    std::vector<Disc> discs;
    std::size_t size() const { return points.size(); }
};

struct DrawingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_drawing(const OrientedDiscDrawing& w) {
    if (w.points.size() != w.discs.size()) throw DrawingError("points and discs differ in number");
    std::set<Point2> seen;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string at = "point " + std::to_string(i + 1);
        if (w.discs[i].radius_sq.sign() <= 0) throw DrawingError(at + ": radius must be positive");
        if (!w.discs[i].on_boundary(w.points[i])) throw DrawingError(at + ": not on its disc boundary");
        if (!seen.insert(w.points[i]).second) throw DrawingError(at + ": duplicate point");
    }
}

inline Digraph disc_graph(const OrientedDiscDrawing& w) {
    check_drawing(w);
    Digraph g(int(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            if (i != j && w.discs[i].contains(w.points[j])) g.add_arc(int(i), int(j));
    return g;
}

inline nlohmann::json to_json(const OrientedDiscDrawing& w) {
    nlohmann::json pts = nlohmann::json::array(), ds = nlohmann::json::array();
    for (const auto& p : w.points) pts.push_back({{"x", p[0].str()}, {"y", p[1].str()}});
    for (const auto& d : w.discs)
        ds.push_back({{"cx", d.center[0].str()}, {"cy", d.center[1].str()}, {"r2", d.radius_sq.str()}});
    return {{"points", pts}, {"discs", ds}};
}

inline OrientedDiscDrawing drawing_from_json(const nlohmann::json& j) {
    auto num = [](const nlohmann::json& o, const char* k) {
        if (!o.is_object() || !o.contains(k) || !o[k].is_string())
            throw DrawingError(std::string("expected rational string field '") + k + "'");
        try {
            return Rational::parse(o[k].get<std::string>());
        } catch (const ParseError& e) {
            throw DrawingError(std::string("field '") + k + "': " + e.what());
        }
    };
    if (!j.is_object() || !j.contains("points") || !j.contains("discs") || !j["points"].is_array() ||
        !j["discs"].is_array())
        throw DrawingError("expected object with 'points' and 'discs' arrays");
    OrientedDiscDrawing w;
    for (const auto& p : j["points"]) w.points.push_back({num(p, "x"), num(p, "y")});
    for (const auto& d : j["discs"]) w.discs.push_back({{num(d, "cx"), num(d, "cy")}, num(d, "r2")});
    check_drawing(w);
    return w;
}

struct EmbeddingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Rational orthonormal frame; the third axis is the inward normal at the
// anchor point O - e3 of the unit sphere around O = (1,1,1).
inline const std::array<std::array<Rational, 3>, 3>& sphere_frame() {
    static const std::array<std::array<Rational, 3>, 3> f{{
        {Rational(1, 3), Rational(-2, 3), Rational(2, 3)},
        {Rational(2, 3), Rational(-1, 3), Rational(-2, 3)},
        {Rational(2, 3), Rational(2, 3), Rational(1, 3)},
    }};
    return f;
}

inline Vec frame_apply(const std::array<Rational, 3>& loc) {
    const auto& f = sphere_frame();
    Vec y(3, Rational(0));
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) y[c] += loc[a] * f[a][c];
    return y;
}

inline Rational pow2(int e) {
    mpq_class q = 1;
    if (e >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), e);
    else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), -e);
    return Rational(q);
}

} // namespace detail

struct EmbedOptions {
    int max_shrink = 32;
};

// Exact embedding on the sphere |y - (1,1,1)| = 1. A planar point w is
// lifted by inverse stereographic projection; the boundary of disc i lifts to
// a circle whose plane has normal p_i, and w' lies in the lifted disc iff
// p_i.y(w') <= p_i.y(x_i). Shrinking the drawing tilts every normal towards
// the positive anchor normal, which eventually makes all prices non-negative.
inline ConsumerDataset drawing_to_dataset(const OrientedDiscDrawing& w, EmbedOptions opt = {}) {
    const Digraph target = disc_graph(w);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            if (i != j && w.discs[i].on_boundary(w.points[j]))
                throw EmbeddingError("point " + std::to_string(j + 1) + " lies on the boundary of disc " +
                                     std::to_string(i + 1) + "; the tie cannot be encoded");
    ConsumerDataset ds;
    ds.commodities = 3;
    if (w.size() == 0) return ds;

    // centre of the point bounding box goes to the anchor
    Point2 lo = w.points[0], hi = w.points[0];
    for (const auto& p : w.points)
        for (int a = 0; a < 2; ++a) lo[a] = std::min(lo[a], p[a]), hi[a] = std::max(hi[a], p[a]);
    const Point2 mid{(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2};
    double reach = 1e-300;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double cx = (w.discs[i].center[0] - mid[0]).to_double(), cy = (w.discs[i].center[1] - mid[1]).to_double();
        reach = std::max(reach, std::hypot(cx, cy) + std::sqrt(w.discs[i].radius_sq.to_double()));
        reach = std::max(reach, std::hypot((w.points[i][0] - mid[0]).to_double(), (w.points[i][1] - mid[1]).to_double()));
    }
    // |s c| and s r at most 1/8: normals are then already non-negative
    int e = -int(std::ceil(std::log2(8.0 * reach)));

    for (int attempt = 0; attempt <= opt.max_shrink; ++attempt, --e) {
        const Rational s = detail::pow2(e);
        ConsumerDataset out;
        out.commodities = 3;
        bool nonneg = true;
        for (std::size_t i = 0; i < w.size() && nonneg; ++i) {
            const Rational u = s * (w.points[i][0] - mid[0]), v = s * (w.points[i][1] - mid[1]);
            const Rational den = 1 + u * u + v * v;
            const std::array<Rational, 3> loc{2 * u / den, 2 * v / den, (u * u + v * v - 1) / den};
            Vec y = detail::frame_apply(loc);
            for (auto& c : y) c += 1;

            const Rational cx = s * (w.discs[i].center[0] - mid[0]), cy = s * (w.discs[i].center[1] - mid[1]);
            const Rational k = cx * cx + cy * cy - s * s * w.discs[i].radius_sq;
            Vec p = detail::frame_apply({-2 * cx, -2 * cy, 1 - k});
            for (const auto& c : p) nonneg &= c.sign() >= 0;
            out.observations.push_back({std::move(p), std::move(y)});
        }
        if (!nonneg) continue;
        PreferenceGraph g;
        try {
            g = build_preference_graph(out);
        } catch (const ValidationFailed& vf) {
            throw EmbeddingError(std::string("certification failed: ") + vf.what());
        }
        if (!(static_cast<const Digraph&>(g) == target)) throw EmbeddingError("certification failed: graph mismatch");
        return out;
    }
    throw EmbeddingError("prices still negative after " + std::to_string(opt.max_shrink) + " halvings");
}

} // namespace rat
