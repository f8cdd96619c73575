#pragma once

#include "rat/generators.hpp"
#include "rat/two_commodity.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace rat::svg {

struct PlotError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

// World box -> 600x600 canvas, y up.
struct Frame {
    double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
    static constexpr double size = 600, pad = 30;

    void fit(double x, double y) {
        if (empty_) {
            x0 = x1 = x;
            y0 = y1 = y;
            empty_ = false;
            return;
        }
        x0 = std::min(x0, x), x1 = std::max(x1, x);
        y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    double scale() const {
        double w = std::max(x1 - x0, y1 - y0);
        return w > 0 ? (size - 2 * pad) / w : 1.0;
    }
    double X(double x) const { return pad + (x - x0) * scale(); }
    double Y(double y) const { return size - pad - (y - y0) * scale(); }

private:
    bool empty_ = true;
};

inline std::string header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n"
           "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
           "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n"
           "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
}

inline void label(std::ostringstream& os, double x, double y, const std::string& t) {
    os << "<text x=\"" << num(x + 6) << "\" y=\"" << num(y - 6) << "\" font-size=\"12\">" << t << "</text>\n";
}

} // namespace detail

// Bundles as dots, budget lines clipped to the visible box.
inline std::string plot_dataset(const ConsumerDataset& ds) {
    using detail::num;
    std::ostringstream os;
    os << detail::header();
    if (ds.size() == 0) return os.str() + "</svg>\n";
    if (ds.commodities != 2)
        throw PlotError("only 2-commodity datasets can be plotted; plot the source drawing instead");
    detail::Frame f;
    f.fit(0, 0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto L = budget_line(ds, i);
        f.fit(ds.x(i)[0].to_double(), ds.x(i)[1].to_double());
        if (L.normal[0].sign() > 0) f.fit((L.rhs / L.normal[0]).to_double(), 0);
        if (L.normal[1].sign() > 0) f.fit(0, (L.rhs / L.normal[1]).to_double());
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto L = budget_line(ds, i);
        double a = L.normal[0].to_double(), b = L.normal[1].to_double(), c = L.rhs.to_double();
        double xa, ya, xb, yb;
        if (a > 0 && b > 0) xa = 0, ya = c / b, xb = c / a, yb = 0;
        else if (a > 0) xa = xb = c / a, ya = f.y0, yb = f.y1;
        else ya = yb = c / b, xa = f.x0, xb = f.x1;
        os << "<line class=\"budget\" x1=\"" << num(f.X(xa)) << "\" y1=\"" << num(f.Y(ya)) << "\" x2=\""
           << num(f.X(xb)) << "\" y2=\"" << num(f.Y(yb)) << "\" stroke=\"gray\"/>\n";
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        double x = f.X(ds.x(i)[0].to_double()), y = f.Y(ds.x(i)[1].to_double());
        os << "<circle class=\"bundle\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\"/>\n";
        detail::label(os, x, y, "x" + std::to_string(i + 1));
    }
    return os.str() + "</svg>\n";
}

// Discs dashed, points filled, one arrow per arc of the disc graph.
inline std::string plot_drawing(const OrientedDiscDrawing& w) {
    using detail::num;
    const auto g = disc_graph(w);
    std::ostringstream os;
    os << detail::header();
    detail::Frame f;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double cx = w.discs[i].center[0].to_double(), cy = w.discs[i].center[1].to_double();
        double r = std::sqrt(w.discs[i].radius_sq.to_double());
        f.fit(cx - r, cy - r);
        f.fit(cx + r, cy + r);
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        double r = std::sqrt(w.discs[i].radius_sq.to_double()) * f.scale();
        os << "<circle class=\"disc\" cx=\"" << num(f.X(w.discs[i].center[0].to_double())) << "\" cy=\""
           << num(f.Y(w.discs[i].center[1].to_double())) << "\" r=\"" << num(r)
           << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
    }
    for (auto [i, j] : g.arcs()) {
        os << "<line class=\"arc\" x1=\"" << num(f.X(w.points[i][0].to_double())) << "\" y1=\""
           << num(f.Y(w.points[i][1].to_double())) << "\" x2=\"" << num(f.X(w.points[j][0].to_double()))
           << "\" y2=\"" << num(f.Y(w.points[j][1].to_double())) << "\" stroke=\"black\" marker-end=\"url(#arrow)\"/>\n";
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        double x = f.X(w.points[i][0].to_double()), y = f.Y(w.points[i][1].to_double());
        os << "<circle class=\"point\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\"/>\n";
        detail::label(os, x, y, std::to_string(i + 1));
    }
    return os.str() + "</svg>\n";
}

// Gadget export: {"gadget": {"labels": [...], "edges": [[i,j]...], "positions": [[x,y]...]}}
inline std::string plot_gadget(const nlohmann::json& j) {
    using detail::num;
    const auto& g = j.at("gadget");
    const auto& pos = g.at("positions");
    const auto& labels = g.at("labels");
    std::ostringstream os;
    os << detail::header();
    detail::Frame f;
    for (const auto& p : pos) f.fit(p.at(0).get<double>(), p.at(1).get<double>());
    auto P = [&](int v) { return std::pair{f.X(pos.at(v).at(0).get<double>()), f.Y(pos.at(v).at(1).get<double>())}; };
    for (const auto& e : g.at("edges")) {
        auto [x1, y1] = P(e.at(0).get<int>() - 1);
        auto [x2, y2] = P(e.at(1).get<int>() - 1);
        os << "<line class=\"edge\" x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
           << num(y2) << "\" stroke=\"black\"/>\n";
    }
    for (std::size_t v = 0; v < pos.size(); ++v) {
        auto [x, y] = P(int(v));
        os << "<circle class=\"vertex\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"5\"/>\n";
        detail::label(os, x, y, labels.at(v).get<std::string>());
    }
    return os.str() + "</svg>\n";
}

inline std::size_t count_class(const std::string& svg, const std::string& cls) {
    std::size_t n = 0;
    const std::string key = "class=\"" + cls + "\"";
    for (auto p = svg.find(key); p != std::string::npos; p = svg.find(key, p + 1)) ++n;
    return n;
}

} // namespace rat::svg
