#include <doctest.h>

#include <random>

#include "bicon/augment.hpp"
#include "bicon/generate.hpp"
#include "bicon/verify.hpp"
#include "support.hpp"

using namespace bicon;

TEST_CASE("checker examples") {
    auto iso = check_componentwise_biconnected(parse_graph("A a1\n"));
    CHECK(iso.componentwise_biconnected);
    CHECK_FALSE(iso.witness);

    auto g = parse_graph("A a1\nB b1\nE a1 b1\n");
    auto edge = check_componentwise_biconnected(g);
    CHECK_FALSE(edge.componentwise_biconnected);
    REQUIRE(edge.witness);
    CHECK(edge.witness->kind == "edge");
    CHECK(edge.witness->vertices == std::vector<VertexId>{0, 1});

    CHECK(check_componentwise_biconnected(parse_graph(fixtures::kC4)).componentwise_biconnected);
    auto p4 = check_componentwise_biconnected(parse_graph(fixtures::kP4));
    CHECK_FALSE(p4.componentwise_biconnected);
    CHECK(p4.witness);
}

TEST_CASE("oracle examples") {
    auto p4 = parse_graph(fixtures::kP4);
    auto r = brute_force_optimal(p4);
    CHECK(r.size == 1);
    REQUIRE(r.edges.size() == 1);
    CHECK(p4.name(r.edges[0].a) == "a1");
    CHECK(p4.name(r.edges[0].b) == "b2");
    CHECK(brute_force_optimal(parse_graph(fixtures::kM4)).size == 3);
    auto c4 = brute_force_optimal(parse_graph(fixtures::kC4));
    CHECK(c4.size == 0);
    CHECK(c4.edges.empty());

    try {
        brute_force_optimal(parse_graph(fixtures::kM4), 2);
        FAIL("expected CapExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapExceeded);
    }
    GenParams big;
    big.a_count = 6;
    big.b_count = 6;
    big.p = 0.0;
    CHECK_THROWS_AS(brute_force_optimal(generate_instance(GenKind::Random, big)), Error);
    CHECK_THROWS_AS(brute_force_optimal(p4, 9), Error);
}

TEST_CASE("verify results") {
    auto p4 = parse_graph(fixtures::kP4);
    auto rep = verify_result(p4, augment(p4), true);
    CHECK(rep.agreement);
    CHECK(rep.componentwise_biconnected);
    REQUIRE(rep.oracle_size);
    CHECK(*rep.oracle_size == 1);

    auto m4 = parse_graph(fixtures::kM4);
    auto full = augment(m4);
    std::vector<Edge> short_list(full.added_edges.begin(), full.added_edges.end() - 1);
    auto undersized = verify_edges(m4, short_list, false);
    CHECK_FALSE(undersized.componentwise_biconnected);
    CHECK(undersized.witness);

    AugmentationResult cut = full;
    cut.added_edges.pop_back();
    auto missing = verify_result(m4, cut, true);
    CHECK_FALSE(missing.componentwise_biconnected);
    CHECK_FALSE(missing.agreement);
    CHECK_FALSE(missing.message.empty());

    std::vector<Edge> existing{Edge{*p4.find("a1"), *p4.find("b1")}};
    CHECK_FALSE(verify_edges(p4, existing, false).edges_legal);
    std::vector<Edge> twice{Edge{*p4.find("a1"), *p4.find("b2")}, Edge{*p4.find("a1"), *p4.find("b2")}};
    CHECK_FALSE(verify_edges(p4, twice, false).edges_legal);
}

TEST_CASE("large components use the chain check") {
    GenParams p;
    p.length = 5000;
    auto cycle = generate_instance(GenKind::Cycle, p);
    CHECK(check_componentwise_biconnected(cycle).componentwise_biconnected);
    auto path = generate_instance(GenKind::Path, p);
    auto rep = check_componentwise_biconnected(path);
    CHECK_FALSE(rep.componentwise_biconnected);
    CHECK(rep.witness);
    // Two long cycles sharing one vertex: one cut vertex, no bridges.
    BipartiteGraph g = cycle;
    VertexId prev = 0;
    for (int i = 0; i < 2999; ++i) {
        Side s = other(g.side(prev));
        VertexId v = g.add_vertex("x" + std::to_string(i), s);
        g.add_edge(prev, v);
        prev = v;
    }
    g.add_edge(prev, 0);
    auto shared = check_componentwise_biconnected(g);
    CHECK_FALSE(shared.componentwise_biconnected);
    REQUIRE(shared.witness);
    CHECK(shared.witness->kind == "cut-vertex");
    CHECK(shared.witness->vertices == std::vector<VertexId>{0});
    auto solved = augment(g);
    CHECK(check_componentwise_biconnected(add_edges(g, solved.added_edges)).componentwise_biconnected);
}

TEST_CASE("property: checker agrees with the decomposition") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 300; ++i) {
        auto g = gen::random_sparse(rng, 1 + rng() % 25, 0.2, rng() % 8);
        auto dec = decompose(g);
        auto part = connected_components(g);
        bool all_blocks = true;
        for (const auto& members : part.members) {
            if (members.size() == 1) continue;
            if (members.size() == 2) {
                all_blocks = false;
                continue;
            }
            bool has_cut = false;
            for (VertexId v : members) has_cut = has_cut || dec.is_cut_vertex[v];
            all_blocks = all_blocks && !has_cut;
        }
        CHECK(check_componentwise_biconnected(g).componentwise_biconnected == all_blocks);
    }
}

TEST_CASE("property: oracle solutions pass the checker") {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 150; ++i) {
        auto g = gen::random_sparse(rng, 4 + rng() % 4, 0.3, rng() % 3);
        if (g.a_vertices().size() < 2 || g.b_vertices().size() < 2) continue;
        auto r = brute_force_optimal(g);
        CHECK(check_componentwise_biconnected(add_edges(g, r.edges)).componentwise_biconnected);
    }
}
