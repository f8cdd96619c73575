#pragma once

#include "rat/hardness/pipeline.hpp"
#include "rat/hm_index.hpp"
#include "rat/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace rat::cli {

enum Exit { ok = 0, violation = 1, usage = 2, budget = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data)) throw UsageError("cannot write '" + path + "'");
}

inline nlohmann::json one_based(const std::vector<int>& v) {
    auto j = nlohmann::json::array();
    for (int x : v) j.push_back(x + 1);
    return j;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    nlohmann::json inputs = nlohmann::json::array();
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    std::string load(const std::string& path) {
        auto s = read_file(path);
        inputs.push_back({{"path", path}, {"fnv1a64", fnv1a64(s)}});
        return s;
    }
    int emit(nlohmann::json r, int code = Exit::ok) {
        r["inputs"] = inputs;
        r["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        out << r.dump(2) << '\n';
        return code;
    }
};

inline SearchBudget make_budget(std::uint64_t nodes) {
    SearchBudget b;
    b.max_nodes = nodes;
    if (const char* ms = std::getenv("RAT_BUDGET_MS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(ms, &end, 10);
        if (end == ms || *end != '\0') throw UsageError("RAT_BUDGET_MS must be a non-negative integer");
        b.max_ms = v;
    }
    return b;
}

inline TiePolicy parse_tie(const std::string& s) {
    if (s == "reject") return TiePolicy::reject;
    if (s == "keep") return TiePolicy::keep;
    throw UsageError("--tie must be reject or keep");
}

inline nlohmann::json gadget_json(const GadgetGraph& G, const PlanarLayout& L, int variables) {
    nlohmann::json labels = nlohmann::json::array(), kinds = nlohmann::json::array(),
                   edges = nlohmann::json::array(), pos = nlohmann::json::array(), r = nlohmann::json::array();
    for (const auto& v : G.labels) {
        labels.push_back(v.label());
        kinds.push_back(v.kind == GadgetVertex::Kind::clause ? "clause" : "variable");
    }
    for (auto [i, j] : G.graph.edges()) edges.push_back({i + 1, j + 1});
    for (int x : G.r) r.push_back(x);
    // display only: gadgets arranged around their layout vertices
    const double pi = std::acos(-1.0);
    for (const auto& v : G.labels) {
        int hv = v.kind == GadgetVertex::Kind::variable ? v.var - 1 : variables + v.owner;
        double cx = L.positions.at(hv)[0].to_double(), cy = L.positions.at(hv)[1].to_double();
        double k = v.kind == GadgetVertex::Kind::variable ? G.r[v.var - 1] : 3;
        double rad = v.kind == GadgetVertex::Kind::variable ? 0.35 : 0.2;
        double a = 2 * pi * v.slot / k;
        pos.push_back({std::round((cx + rad * std::cos(a)) * 1e6) / 1e6, std::round((cy + rad * std::sin(a)) * 1e6) / 1e6});
    }
    return {{"gadget",
             {{"labels", labels}, {"kinds", kinds}, {"edges", edges}, {"r", r}, {"threshold", G.threshold}, {"positions", pos}}}};
}

inline int cmd_check(Context& c, const std::string& file, const std::string& tie, const std::string& dump) {
    auto ds = parse_dataset(c.load(file));
    auto g = build_preference_graph(ds, parse_tie(tie));
    if (!dump.empty()) write_file(dump, edge_list(g));
    auto garp = check_garp(g);
    auto warp = check_warp(g);
    nlohmann::json r{{"command", "check"},
                     {"observations", ds.size()},
                     {"commodities", ds.commodities},
                     {"arcs", g.arc_count()},
                     {"garp", !garp},
                     {"witness", garp ? one_based(*garp) : nlohmann::json(nullptr)},
                     {"warp", !warp},
                     {"warp_witness", warp ? one_based(*warp) : nlohmann::json(nullptr)}};
    return c.emit(r);
}

inline int cmd_index(Context& c, const std::string& file, const std::string& method, std::uint64_t nodes) {
    auto ds = parse_dataset(c.load(file));
    auto b = make_budget(nodes);
    auto res = hm_index(ds, parse_method(method), b);
    return c.emit({{"command", "index"},
                   {"index", res.index},
                   {"removal_set", one_based(res.removal_set)},
                   {"method", to_string(res.method)}});
}

inline int cmd_gen_digraph(Context& c, const std::string& file, const std::string& out) {
    auto d = parse_edge_list(c.load(file));
    auto ds = digraph_to_dataset(d);
    write_file(out, serialize(ds, 2) + "\n");
    return c.emit({{"command", "gen digraph"}, {"vertices", d.n}, {"arcs", d.arc_count()}, {"output", out}});
}

inline int cmd_gen_disc(Context& c, const std::string& file, const std::string& out) {
    auto w = drawing_from_json(nlohmann::json::parse(c.load(file)));
    auto ds = drawing_to_dataset(w);
    write_file(out, serialize(ds, 2) + "\n");
    return c.emit({{"command", "gen disc"}, {"points", w.size()}, {"arcs", disc_graph(w).arc_count()}, {"output", out}});
}

inline int cmd_gen_sat(Context& c, const std::string& file, const std::string& layout_file, const std::string& emit,
                       const std::string& out, std::uint64_t seed) {
    auto f = parse_cnf(c.load(file));
    if (emit != "dataset" && emit != "drawing" && emit != "gadget" && emit != "layout")
        throw UsageError("--emit must be dataset, drawing, gadget or layout");
    std::optional<PlanarLayout> given;
    if (!layout_file.empty()) given = layout_from_json(nlohmann::json::parse(c.load(layout_file)));
    nlohmann::json r{{"command", "gen sat"}, {"variables", f.variables}, {"clauses", f.clauses.size()}};
    PlanarLayout layout;
    if (given) {
        layout = *given;
    } else {
        auto pr = check_planar(f);
        r["planar"] = pr.planar;
        if (!pr.planar) {
            nlohmann::json w = nlohmann::json::array();
            for (auto [u, v] : pr.witness) w.push_back({u + 1, v + 1});
            r["kuratowski"] = pr.kind == KuratowskiKind::k5 ? "K5" : "K3,3";
            r["witness"] = w;
            c.err << "error: incidence graph is not planar\n";
            return c.emit(r, Exit::usage);
        }
        layout = pr.layout;
    }
    AssembleOptions opt;
    opt.seed = seed;
    std::string payload;
    if (emit == "layout") {
        payload = to_json(layout).dump(2);
        r["threshold"] = build_gadget_graph(f).threshold;
    } else if (emit == "gadget") {
        auto G = build_gadget_graph(f);
        std::string why;
        if (!verify_layout(incidence_graph(f), layout, &why)) throw UsageError("layout rejected: " + why);
        payload = gadget_json(G, layout, f.variables).dump(2);
        r["threshold"] = G.threshold;
        r["vertices"] = G.graph.n;
    } else if (emit == "drawing") {
        auto a = assemble_drawing(f, layout, opt);
        payload = to_json(a.drawing).dump(2);
        r["threshold"] = a.gadget.threshold;
        r["vertices"] = a.gadget.graph.n;
    } else {
        auto s = sat_to_dataset(f, opt, &layout);
        payload = serialize(s.dataset, 2);
        r["threshold"] = s.threshold;
        r["vertices"] = s.dataset.size();
    }
    write_file(out, payload + "\n");
    r["emit"] = emit;
    r["output"] = out;
    return c.emit(r);
}

inline int cmd_verify(Context& c, const std::string& what, const std::string& file, int bound) {
    auto ds = parse_dataset(c.load(file));
    if (ds.commodities != 2) throw UsageError("verify expects a 2-commodity dataset");
    auto g = build_preference_graph(ds);
    if (what == "perfect") {
        auto res = check_perfect(build_auxiliary_graph(g), bound > 0 ? bound : std::max(5, int(ds.size())));
        bool bad = res.verdict != PerfectResult::Verdict::perfect_up_to_bound;
        return c.emit({{"command", "verify perfect"},
                       {"verdict", to_string(res.verdict)},
                       {"witness", bad ? one_based(res.witness) : nlohmann::json(nullptr)}},
                      bad ? Exit::violation : Exit::ok);
    }
    auto cyc = enumerate_chordless_cycles(g, bound > 0 ? bound : std::max(2, int(ds.size())));
    nlohmann::json long_ones = nlohmann::json::array();
    std::size_t digons = 0;
    for (const auto& cy : cyc) {
        if (cy.size() == 2) ++digons;
        else long_ones.push_back(one_based(cy));
    }
    return c.emit({{"command", "verify rose"},
                   {"holds", long_ones.empty()},
                   {"digons", digons},
                   {"witnesses", long_ones}},
                  long_ones.empty() ? Exit::ok : Exit::violation);
}

inline int cmd_plot(Context& c, const std::string& file, const std::string& out) {
    auto j = nlohmann::json::parse(c.load(file));
    std::string svg, kind;
    if (j.is_object() && j.contains("commodities")) {
        svg = svg::plot_dataset(dataset_from_json(j));
        kind = "dataset";
    } else if (j.is_object() && j.contains("points") && j.contains("discs")) {
        svg = svg::plot_drawing(drawing_from_json(j));
        kind = "drawing";
    } else if (j.is_object() && j.contains("gadget")) {
        svg = svg::plot_gadget(j);
        kind = "gadget";
    } else {
        throw UsageError("plot input is neither a dataset, a drawing nor a gadget export");
    }
    if (out.empty()) {
        c.out << svg;
        return Exit::ok;
    }
    write_file(out, svg);
    return c.emit({{"command", "plot"}, {"kind", kind}, {"output", out}});
}

// argv without the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Revealed-preference rationality toolkit", "rat"};
    app.require_subcommand(1);
    std::string file, file2, method = "auto", tie = "reject", dump, output, emit = "dataset", layout;
    std::uint64_t nodes = 0, seed = 0x5eed;
    int bound = 0;

    auto* check = app.add_subcommand("check", "GARP/WARP verdict for a dataset");
    check->add_option("file", file, "dataset JSON")->required();
    check->add_option("--tie", tie, "tie policy: reject|keep");
    check->add_option("--dump-graph", dump, "write the preference graph as a 1-based edge list");

    auto* index = app.add_subcommand("index", "Houtman-Maks index");
    index->add_option("file", file, "dataset JSON")->required();
    index->add_option("--method", method, "auto|brute|bb|digon2d");
    index->add_option("--budget", nodes, "search node budget (0 = unlimited)");

    auto* gen = app.add_subcommand("gen", "generate datasets");
    gen->require_subcommand(1);
    auto* gdig = gen->add_subcommand("digraph", "edge list -> dataset");
    gdig->add_option("edges", file, "edge list, 1-based 'i j' per line")->required();
    gdig->add_option("-o", output, "output dataset")->required();
    auto* gdisc = gen->add_subcommand("disc", "oriented-disc drawing -> 3-commodity dataset");
    gdisc->add_option("drawing", file, "drawing JSON")->required();
    gdisc->add_option("-o", output, "output dataset")->required();
    auto* gsat = gen->add_subcommand("sat", "planar 3-CNF -> dataset with threshold");
    gsat->add_option("cnf", file, "DIMACS file")->required();
    gsat->add_option("--layout", layout, "planar layout JSON");
    gsat->add_option("--emit", emit, "dataset|drawing|gadget|layout");
    gsat->add_option("-o", output, "output file")->required();
    gsat->add_option("--seed", seed, "seed for the vertex-order search");

    auto* verify = app.add_subcommand("verify", "check structural lemmas on 2-commodity data");
    verify->require_subcommand(1);
    auto* vperf = verify->add_subcommand("perfect", "no odd hole / antihole in the digon graph");
    vperf->add_option("file", file, "dataset JSON")->required();
    vperf->add_option("--max-size", bound, "largest hole length searched");
    auto* vrose = verify->add_subcommand("rose", "every chordless cycle is a digon");
    vrose->add_option("file", file, "dataset JSON")->required();
    vrose->add_option("--max-len", bound, "longest cycle enumerated");

    auto* plot = app.add_subcommand("plot", "render SVG");
    plot->add_option("file", file, "dataset, drawing or gadget JSON")->required();
    plot->add_option("-o", output, "output SVG (stdout if omitted)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    Context c{out, err};
    try {
        if (*check) return cmd_check(c, file, tie, dump);
        if (*index) return cmd_index(c, file, method, nodes);
        if (*gdig) return cmd_gen_digraph(c, file, output);
        if (*gdisc) return cmd_gen_disc(c, file, output);
        if (*gsat) return cmd_gen_sat(c, file, layout, emit, output, seed);
        if (*vperf) return cmd_verify(c, "perfect", file, bound);
        if (*vrose) return cmd_verify(c, "rose", file, bound);
        if (*plot) return cmd_plot(c, file, output);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return Exit::budget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Exit::usage;
    }
    return Exit::usage;
}

} // namespace rat::cli
