#include "rat/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace rat;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
    nlohmann::json report() const { return nlohmann::json::parse(out); }
};

Run rat_run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int code = cli::run(std::move(args), o, e);
    return {code, o.str(), e.str()};
}

std::string sample(const std::string& name) { return std::string(RAT_SAMPLES_DIR) + "/" + name; }

std::string tmp(const std::string& name) {
    auto dir = fs::temp_directory_path() / "rat_cli_test";
    fs::create_directories(dir);
    return (dir / name).string();
}

// Shape every report shares.
void expect_report_schema(const nlohmann::json& r) {
    ASSERT_TRUE(r.is_object());
    ASSERT_TRUE(r.contains("command"));
    EXPECT_TRUE(r["command"].is_string());
    ASSERT_TRUE(r.contains("inputs"));
    ASSERT_TRUE(r["inputs"].is_array());
    for (const auto& in : r["inputs"]) {
        EXPECT_TRUE(in.at("path").is_string());
        EXPECT_EQ(in.at("fnv1a64").get<std::string>().size(), 16u);
    }
    ASSERT_TRUE(r.contains("elapsed_ms"));
    EXPECT_TRUE(r["elapsed_ms"].is_number_integer());
    EXPECT_EQ(nlohmann::json::parse(r.dump()), r);
}

} // namespace

TEST(Cli, CheckDigon) {
    auto r = rat_run({"check", sample("digon.json")});
    ASSERT_EQ(r.code, cli::Exit::ok) << r.err;
    auto j = r.report();
    expect_report_schema(j);
    EXPECT_EQ(j["garp"], false);
    EXPECT_EQ(j["witness"], nlohmann::json({1, 2}));
    EXPECT_EQ(j["warp"], false);
}

TEST(Cli, CheckDumpsGraph) {
    auto path = tmp("digon.edges");
    auto r = rat_run({"check", sample("digon.json"), "--dump-graph", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(cli::read_file(path), "1 2\n2 1\n");
}

TEST(Cli, TiePolicy) {
    EXPECT_EQ(rat_run({"check", sample("tie.json")}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"check", sample("tie.json"), "--tie", "keep"}).code, cli::Exit::ok);
    EXPECT_EQ(rat_run({"check", sample("tie.json"), "--tie", "maybe"}).code, cli::Exit::usage);
}

TEST(Cli, IndexK5) {
    auto r = rat_run({"index", sample("k5.json"), "--method=auto"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.report();
    expect_report_schema(j);
    EXPECT_EQ(j["index"], 4);
    EXPECT_EQ(j["method"], "digon2d");
    EXPECT_EQ(j["removal_set"].size(), 4u);
    for (const char* m : {"brute", "bb"}) EXPECT_EQ(rat_run({"index", sample("k5.json"), "--method", m}).report()["index"], 4);
}

TEST(Cli, IndexBudgetExceeded) {
    EXPECT_EQ(rat_run({"index", sample("k5.json"), "--method", "bb", "--budget", "1"}).code, cli::Exit::budget);
}

TEST(Cli, GenDigraphAndDisc) {
    auto out = tmp("c3.json");
    auto r = rat_run({"gen", "digraph", sample("c3.edges"), "-o", out});
    ASSERT_EQ(r.code, 0) << r.err;
    expect_report_schema(r.report());
    auto c = rat_run({"check", out});
    EXPECT_EQ(c.report()["witness"], nlohmann::json({1, 2, 3}));
    EXPECT_EQ(c.report()["warp"], true);

    auto d = tmp("fig5.json");
    r = rat_run({"gen", "disc", sample("fig5_drawing.json"), "-o", d});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report()["arcs"], 3);
    EXPECT_EQ(rat_run({"check", d}).report()["arcs"], 3);
}

TEST(Cli, GenSatFig6) {
    auto out = tmp("fig6_ds.json");
    auto r = rat_run({"gen", "sat", sample("fig6.cnf"), "--emit", "dataset", "-o", out});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.report();
    expect_report_schema(j);
    EXPECT_EQ(j["threshold"], 10);
    auto idx = rat_run({"index", out});
    ASSERT_EQ(idx.code, 0) << idx.err;
    EXPECT_EQ(idx.report()["index"], 10);
}

TEST(Cli, GenSatEmitsAndReusesLayout) {
    auto lay = tmp("fig6_layout.json"), gad = tmp("fig6_gadget.json"), drw = tmp("fig6_drawing.json");
    ASSERT_EQ(rat_run({"gen", "sat", sample("fig6.cnf"), "--emit", "layout", "-o", lay}).code, 0);
    auto g = rat_run({"gen", "sat", sample("fig6.cnf"), "--layout", lay, "--emit", "gadget", "-o", gad});
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_EQ(g.report()["inputs"].size(), 2u);
    EXPECT_EQ(nlohmann::json::parse(cli::read_file(gad))["gadget"]["edges"].size(), 24u);
    ASSERT_EQ(rat_run({"gen", "sat", sample("fig6.cnf"), "--emit", "drawing", "-o", drw}).code, 0);
    EXPECT_EQ(drawing_from_json(nlohmann::json::parse(cli::read_file(drw))).size(), 18u);
}

TEST(Cli, GenSatNonPlanarReportsWitness) {
    auto r = rat_run({"gen", "sat", sample("k33.cnf"), "-o", tmp("never.json")});
    EXPECT_EQ(r.code, cli::Exit::usage);
    auto j = r.report();
    EXPECT_EQ(j["planar"], false);
    EXPECT_EQ(j["kuratowski"], "K3,3");
    EXPECT_EQ(j["witness"].size(), 9u);
}

TEST(Cli, Verify) {
    auto p = rat_run({"verify", "perfect", sample("c6.json")});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(p.report()["verdict"], "perfect-up-to-bound");
    auto r = rat_run({"verify", "rose", sample("k5.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report()["holds"], true);
    EXPECT_EQ(r.report()["digons"], 10);
}

TEST(Cli, ExitCodeMatrix) {
    EXPECT_EQ(rat_run({}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"frobnicate"}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"check"}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"check", sample("digon.json"), "--bogus"}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"check", sample("missing.json")}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"check", sample("fig6.cnf")}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"index", sample("digon.json"), "--method", "psychic"}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"verify", "perfect", sample("fig5_drawing.json")}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"gen", "sat", sample("fig6.cnf"), "--emit", "poem", "-o", tmp("x")}).code, cli::Exit::usage);
    EXPECT_EQ(rat_run({"--help"}).code, cli::Exit::ok);
    EXPECT_EQ(rat_run({"check", sample("digon.json")}).err, "");
    EXPECT_NE(rat_run({"check", sample("missing.json")}).err, "");
}

TEST(Cli, BudgetFromEnvironment) {
    ::setenv("RAT_BUDGET_MS", "soon", 1);
    EXPECT_EQ(rat_run({"index", sample("k5.json")}).code, cli::Exit::usage);
    ::setenv("RAT_BUDGET_MS", "60000", 1);
    EXPECT_EQ(rat_run({"index", sample("k5.json")}).code, cli::Exit::ok);
    ::unsetenv("RAT_BUDGET_MS");
}

TEST(Plot, DigonCounts) {
    auto r = rat_run({"plot", sample("digon.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
    EXPECT_EQ(svg::count_class(r.out, "bundle"), 2u);
    EXPECT_EQ(svg::count_class(r.out, "budget"), 2u);
}

TEST(Plot, Fig5Counts) {
    auto r = rat_run({"plot", sample("fig5_drawing.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(svg::count_class(r.out, "disc"), 3u);
    EXPECT_EQ(svg::count_class(r.out, "point"), 3u);
    EXPECT_EQ(svg::count_class(r.out, "arc"), 3u);
}

TEST(Plot, EmptyCanvasAndRefusals) {
    auto r = rat_run({"plot", sample("empty.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("</svg>"), std::string::npos);
    EXPECT_EQ(svg::count_class(r.out, "bundle"), 0u);
    auto three = tmp("c3_for_plot.json");
    ASSERT_EQ(rat_run({"gen", "digraph", sample("c3.edges"), "-o", three}).code, 0);
    auto bad = rat_run({"plot", three});
    EXPECT_EQ(bad.code, cli::Exit::usage);
    EXPECT_NE(bad.err.find("drawing"), std::string::npos);
}

TEST(Plot, GadgetAndDeterminism) {
    auto gad = tmp("fig6_gadget_plot.json");
    ASSERT_EQ(rat_run({"gen", "sat", sample("fig6.cnf"), "--emit", "gadget", "-o", gad}).code, 0);
    auto a = rat_run({"plot", gad}), b = rat_run({"plot", gad});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(svg::count_class(a.out, "vertex"), 18u);
    EXPECT_EQ(svg::count_class(a.out, "edge"), 24u);
    EXPECT_EQ(a.out, b.out);
    auto f = tmp("fig5.svg");
    ASSERT_EQ(rat_run({"plot", sample("fig5_drawing.json"), "-o", f}).code, 0);
    EXPECT_EQ(cli::read_file(f), rat_run({"plot", sample("fig5_drawing.json")}).out);
}

TEST(Digest, Fnv1a) {
    EXPECT_EQ(cli::fnv1a64(""), "cbf29ce484222325");
    EXPECT_EQ(cli::fnv1a64("a"), "af63dc4c8601ec8c");
}
