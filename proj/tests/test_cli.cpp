#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bicon/cli.hpp"
#include "support.hpp"

namespace {

struct Outcome {
    int code = 0;
    std::string out, err;
};

Outcome call(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "bicon");
    std::istringstream in(input);
    std::ostringstream out, err;
    Outcome o;
    o.code = bicon::run(args, in, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string temp_file(const std::string& name, const std::string& text) {
    std::string path = "cli_test_" + name + ".txt";
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("augment the isolated-edge fixture") {
    auto o = call({"augment", "-"}, fixtures::kM4);
    CHECK(o.code == 0);
    CHECK(o.out == "ADD a1 b2\nADD a2 b1\nADD a2 b2\nSIZE 3\n");
}

TEST_CASE("no biconnector") {
    auto o = call({"augment"}, "A a1\nB b1 b2\nE a1 b1\nE a1 b2\n");
    CHECK(o.code == 2);
    CHECK(o.err.find("no biconnector") != std::string::npos);
}

TEST_CASE("input and usage errors") {
    CHECK(call({"augment"}, "A a1 a2\nE a1 a2\n").code == 1);
    CHECK(call({"augment", "no_such_file.txt"}).code == 1);
    CHECK(call({}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({"oracle", "--cap", "12"}, fixtures::kP4).code == 1);
    CHECK(call({"gen", "blob"}).code == 1);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("trace, verify and json") {
    auto t = call({"augment", "--trace", "--verify"}, fixtures::kSpider4);
    CHECK(t.code == 0);
    CHECK(t.out.find("# M1/S5") != std::string::npos);
    CHECK(t.out.find("SIZE 3\n") != std::string::npos);
    CHECK(t.out.find("\nOK\n") != std::string::npos);

    auto j = call({"augment", "--json", "--stats", "--oracle"}, fixtures::kP4);
    CHECK(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["size"] == 1);
    CHECK(doc["added_edges"][0][0] == "a1");
    CHECK(doc["added_edges"][0][1] == "b2");
    CHECK(doc["verify"]["agreement"] == true);
    CHECK(doc["verify"]["oracle_size"] == 1);
    CHECK(doc["stats"]["census"]["c1"] == 1);
    CHECK(doc["stats"]["eta"] == 1);
    CHECK(doc["trace"][0]["case"] == "M1/S1");
}

TEST_CASE("verify subcommand") {
    std::string graph = temp_file("graph", fixtures::kM4);
    auto good = call({"verify", graph, "-"}, "ADD a1 b2\nADD a2 b1\nADD a2 b2\nSIZE 3\n");
    CHECK(good.code == 0);
    CHECK(good.out.find("OK") != std::string::npos);
    auto bad = call({"verify", graph, "-"}, "ADD a1 b2\nADD a2 b1\n");
    CHECK(bad.code == 3);
    CHECK(bad.out.find("BICONNECTED no") != std::string::npos);
    CHECK(bad.out.find("WITNESS") != std::string::npos);
    auto worse = call({"verify", graph, "-", "--oracle"}, "ADD a1 b2\nADD a2 b1\nADD a2 b2\n");
    CHECK(worse.out.find("ORACLE 3") != std::string::npos);
    CHECK(call({"verify", graph, "-"}, "ADD a1 b1\n").code == 3);
    CHECK(call({"verify", graph, "-"}, "ADD a1 zz\n").code == 1);
    std::remove(graph.c_str());
}

TEST_CASE("oracle, gen and tree") {
    auto o = call({"oracle"}, fixtures::kP4);
    CHECK(o.out == "ADD a1 b2\nSIZE 1\n");
    auto g = call({"gen", "path", "--length", "4"});
    CHECK(g.out == "A a1\nB b1\nA a2\nB b2\nE a1 b1\nE a2 b1\nE a2 b2\n");
    auto s = call({"gen", "spider", "--chains", "1,1,2,2"});
    CHECK(bicon::parse_graph(s.out) == bicon::parse_graph(fixtures::kSpider4));
    auto r = call({"gen", "random", "--a", "3", "--b", "3", "--p", "0.5", "--seed", "7"});
    CHECK(r.out == call({"gen", "random", "--a", "3", "--b", "3", "--p", "0.5", "--seed", "7"}).out);
    auto t = call({"tree"}, fixtures::kP4);
    CHECK(t.out.rfind("graph block_tree {", 0) == 0);
    CHECK(t.out.find("{a1}") != std::string::npos);
    auto iso = call({"tree"}, "A a1 a2 a3\nB b1 b2\nE a1 b1\nE a2 b2\n");
    CHECK(iso.code == 0);
    std::size_t graphs = 0;
    for (auto at = iso.out.find("graph block_tree"); at != std::string::npos; at = iso.out.find("graph block_tree", at + 1)) {
        ++graphs;
    }
    CHECK(graphs == 2);
}

TEST_CASE("edgeless graph with one vertex per side needs nothing") {
    auto o = call({"augment"}, "A a1\nB b1\n");
    CHECK(o.code == 0);
    CHECK(o.out == "SIZE 0\n");
}

TEST_CASE("bench rows") {
    auto b = call({"bench", "--sizes", "1e3,2e3", "--kind", "caterpillar", "--repeat", "1"});
    CHECK(b.code == 0);
    std::istringstream lines(b.out);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].rfind("caterpillar 1000 ", 0) == 0);
    CHECK(call({"bench", "--sizes", "ten"}).code == 1);
}

TEST_CASE("identical input gives identical output") {
    const std::string input = fixtures::kBroom2;
    for (auto args : std::vector<std::vector<std::string>>{
             {"augment", "--trace"}, {"augment", "--json", "--stats", "--verify"}, {"oracle"}, {"tree"},
             {"gen", "caterpillar", "--spine", "5", "--legs", "2"}}) {
        auto a = call(args, input), b = call(args, input);
        CHECK(a.out == b.out);
        CHECK(a.code == b.code);
    }
}
