#include <doctest.h>

#include <random>
#include <map>
#include <set>

#include "bicon/aug_index.hpp"
#include "bicon/bounds.hpp"
#include "bicon/generate.hpp"
#include "support.hpp"

using namespace bicon;

namespace {

std::size_t eta_now(const BipartiteGraph& g) {
    auto part = connected_components(g);
    auto dec = decompose(g);
    return eta(g, dec, census(g, part, dec));
}

// Codes from the definition: bit 8 for more than one leaf below, then one
// bit per leaf type present.
std::uint8_t expected_code(const AugTreeIndex& idx, NodeId x, std::size_t& leaves) {
    auto kids = idx.children(x);
    if (kids.empty()) {
        leaves = 1;
        return type_bit(idx.leaf(x).type);
    }
    std::uint8_t bits = 0;
    leaves = 0;
    for (NodeId c : kids) {
        std::size_t below = 0;
        bits |= expected_code(idx, c, below);
        leaves += below;
    }
    return bits | (leaves > 1 ? 8 : 0);
}

void check_codes(const AugTreeIndex& idx) {
    std::size_t leaves = 0;
    for (NodeId x = 0; x < idx.node_count(); ++x) {
        if (!idx.alive(x)) continue;
        CHECK(idx.code(x) == expected_code(idx, x, leaves));
        CHECK(code_slot(idx.code(x)) >= 0);
    }
}

BipartiteGraph with_edge(const BipartiteGraph& g, const Edge& e) {
    return add_edges(g, std::vector<Edge>{e});
}

}  // namespace

TEST_CASE("intrusive lists") {
    ListHead list;
    Links links;
    links.grow(5);
    for (std::uint32_t i : {3u, 1u, 4u}) list_push_back(list, links, i);
    CHECK(list_items(list, links) == std::vector<std::uint32_t>{3, 1, 4});
    list_unlink(list, links, 1);
    CHECK(list_items(list, links) == std::vector<std::uint32_t>{3, 4});
    CHECK(list.size == 2);
    list_unlink(list, links, 3);
    list_unlink(list, links, 4);
    CHECK(list.head == kNone);
    CHECK(list.tail == kNone);
}

TEST_CASE("code slots") {
    std::set<int> slots;
    for (int c = 0; c < 16; ++c) {
        int s = code_slot(static_cast<std::uint8_t>(c));
        bool listed = std::find(kCodes.begin(), kCodes.end(), c) != kCodes.end();
        CHECK((s >= 0) == listed);
        if (s >= 0) slots.insert(s);
    }
    CHECK(slots.size() == 10);
    CHECK(type_bit(PendantType::A) == 4);
    CHECK(type_bit(PendantType::B) == 2);
    CHECK(type_bit(PendantType::AB) == 1);
}

TEST_CASE("spider index") {
    auto g = parse_graph(fixtures::kSpider4);
    auto s = analyze_connected(g);
    auto idx = AugTreeIndex::build(s.tree, s.dec, s.tree.root);
    CHECK(idx.audit().empty());
    auto x = *s.tree.find_cut_vertex(*g.find("x"));
    REQUIRE(idx.c_star());
    CHECK(*idx.c_star() == x);
    CHECK(idx.group(4) == std::vector<NodeId>{x});
    for (NodeId leaf : idx.leaves()) {
        CHECK(idx.code(leaf) == type_bit(idx.leaf(leaf).type));
    }
    check_codes(idx);
}

TEST_CASE("code for a subtree with A and AB leaves") {
    // Cut vertex b0 carries a pendant C4 (AB) through a1 and an A leaf a9.
    auto g = parse_graph(
        "A a0 a1 a2 a9 a5\nB b0 b1 b2 b5 b6\n"
        "E a1 b1\nE a1 b2\nE a2 b1\nE a2 b2\n"
        "E a1 b0\nE a9 b0\nE a0 b0\nE a0 b5\nE a0 b6\nE a5 b0\n");
    auto s = analyze_connected(g);
    auto idx = AugTreeIndex::build(s.tree, s.dec, *s.tree.find_cut_vertex(*g.find("a0")));
    auto b0 = *s.tree.find_cut_vertex(*g.find("b0"));
    CHECK(idx.code(b0) == 0b1101);
}

TEST_CASE("reroot at the root is a no-op") {
    auto g = parse_graph(fixtures::kBroom2);
    auto s = analyze_connected(g);
    auto idx = AugTreeIndex::build(s.tree, s.dec, s.tree.root);
    std::vector<std::uint8_t> before;
    for (NodeId x = 0; x < idx.node_count(); ++x) before.push_back(idx.code(x));
    idx.reroot(idx.root());
    CHECK(idx.root() == s.tree.root);
    for (NodeId x = 0; x < idx.node_count(); ++x) CHECK(idx.code(x) == before[x]);
}

TEST_CASE("property: reroot equals a fresh build at the new root") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        auto g = gen::random_tree(rng, 4 + rng() % 30, rng() % 3);
        if (g.a_vertices().size() < 2 || g.b_vertices().size() < 2) continue;
        auto s = analyze_connected(g);
        if (s.tree.size() < 2) continue;
        auto idx = AugTreeIndex::build(s.tree, s.dec, s.tree.root);
        NodeId h = static_cast<NodeId>(rng() % s.tree.size());
        if (s.tree.is_leaf(h)) continue;
        idx.reroot(h);
        CHECK(idx.audit().empty());
        auto fresh = AugTreeIndex::build(s.tree, s.dec, h);
        CHECK(idx.root() == h);
        for (NodeId x = 0; x < s.tree.size(); ++x) {
            CHECK(idx.code(x) == fresh.code(x));
            auto a = idx.children(x), b = fresh.children(x);
            CHECK(std::set<NodeId>(a.begin(), a.end()) == std::set<NodeId>(b.begin(), b.end()));
        }
        check_codes(idx);
    }
}

TEST_CASE("pair search on a two-branching caterpillar") {
    // Spine a1-b1-a2-b2-a3 with legs a4 on b1 and b3 on a2: leaves A, A, A, B.
    auto g = parse_graph("A a1 a2 a3 a4\nB b1 b2 b3\nE a1 b1\nE a2 b1\nE a2 b2\nE a3 b2\nE a4 b1\nE a2 b3\n");
    auto s = analyze_connected(g);
    REQUIRE(s.label.s_case == SCase::S4_2);
    auto idx = AugTreeIndex::build(s.tree, s.dec, s.tree.root);
    REQUIRE(idx.in_s4_2());
    idx.reroot_for_pair();
    auto pair = idx.find_pair();
    std::size_t branching = 0;
    std::vector<NodeId> path = pair.down1;
    path.push_back(idx.root());
    path.insert(path.end(), pair.down2.begin(), pair.down2.end());
    for (NodeId x : path) branching += s.tree.degree(x) >= 3 ? 1 : 0;
    CHECK(branching == 2);
    CHECK(pair.down1.back() == pair.w1);
    CHECK(pair.down2.back() == pair.w2);
    std::size_t eta_before = eta_now(g);
    auto step = idx.reduce();
    auto g2 = with_edge(g, step.edge);
    CHECK(eta_now(g2) + 1 == eta_before);
    CHECK(decompose(g2).pendant_blocks.size() == 2);
}

TEST_CASE("pair types for two A and two B leaves") {
    // C4 with a B leaf on a1, an A leaf on b1, and a2 carrying a B leaf and
    // an A chain of length two: one critical vertex, two branching nodes.
    auto g = parse_graph(
        "A a1 a2 a3 a5\nB b1 b2 b3 b4 b5\nE a1 b1\nE a1 b2\nE a2 b1\nE a2 b2\n"
        "E a1 b3\nE a3 b1\nE a2 b4\nE a2 b5\nE a5 b5\n");
    auto s = analyze_connected(g);
    REQUIRE(s.label.s_case == SCase::S4_2);
    CHECK(s.profile.n_a == 2);
    CHECK(s.profile.n_b == 2);
    auto idx = AugTreeIndex::build(s.tree, s.dec, s.tree.root);
    auto before = idx.leaf_counts();
    auto step = idx.reduce();
    CHECK(step.reroot == AugTreeIndex::RerootCase::Critical);
    std::set<PendantType> types{step.first.type, step.second.type};
    CHECK(types == std::set<PendantType>{PendantType::A, PendantType::B});
    auto after = idx.leaf_counts();
    CHECK(after[0] == before[0] - 1);
    CHECK(after[1] == before[1] - 1);
    CHECK(after[2] == before[2]);
    CHECK(idx.audit().empty());
}

TEST_CASE("c-vertex off the path keeps its group") {
    // Caterpillar with extra legs: spine cut vertices of degree 3 and 4.
    GenParams p;
    p.spine = 6;
    p.legs = 2;
    auto g = generate_instance(GenKind::Caterpillar, p);
    auto s = analyze_connected(g);
    auto idx = AugTreeIndex::build(s.tree, s.dec, s.tree.root);
    REQUIRE(idx.in_s4_2());
    auto groups_before = idx.group_degrees();
    std::map<NodeId, std::size_t> degree_before;
    for (std::size_t d : groups_before) {
        for (NodeId x : idx.group(d)) degree_before[x] = d;
    }
    idx.reroot_for_pair();
    auto pair = idx.find_pair();
    std::set<NodeId> on_path(pair.down1.begin(), pair.down1.end());
    on_path.insert(pair.down2.begin(), pair.down2.end());
    on_path.insert(idx.root());
    idx.apply_insert(pair);
    for (auto [x, d] : degree_before) {
        if (on_path.count(x)) continue;
        auto members = idx.group(d);
        CHECK(std::find(members.begin(), members.end(), x) != members.end());
    }
    CHECK(idx.audit().empty());
}

TEST_CASE("property: each S4_2 step lowers eta by one and keeps the index exact") {
    std::mt19937_64 rng(47);
    int steps = 0, critical = 0, descend = 0;
    for (int i = 0; i < 600; ++i) {
        auto g = gen::random_tree(rng, 8 + rng() % 40, rng() % 3);
        if (g.a_vertices().size() < 2 || g.b_vertices().size() < 2) continue;
        auto s = analyze_connected(g);
        if (s.label.s_case != SCase::S4_2) continue;
        auto idx = AugTreeIndex::build(s.tree, s.dec, s.tree.root);
        std::size_t eta_before = eta_now(g);
        while (idx.in_s4_2()) {
            auto step = idx.reduce();
            critical += step.reroot == AugTreeIndex::RerootCase::Critical ? 1 : 0;
            descend += step.reroot == AugTreeIndex::RerootCase::Descend ? 1 : 0;
            REQUIRE(is_legal_edge(g, step.edge.a, step.edge.b));
            g = with_edge(g, step.edge);
            std::size_t eta_after = eta_now(g);
            CHECK(eta_after + 1 == eta_before);
            if (g.vertex_count() <= 24) CHECK(eta_after == oracle::eta(g));
            eta_before = eta_after;
            CHECK(idx.audit().empty());
            if (!idx.stale()) {
                auto fresh = decompose(g);
                auto prof = matching_profile(fresh.pendant_blocks);
                auto counts = idx.leaf_counts();
                CHECK(counts[0] == prof.n_a);
                CHECK(counts[1] == prof.n_b);
                CHECK(counts[2] == prof.n_ab);
                check_codes(idx);
            }
            ++steps;
        }
    }
    CHECK(steps > 300);
    CHECK(critical > 0);
    CHECK(descend > 0);
}

TEST_CASE("spider chain index") {
    auto g = parse_graph(fixtures::kSpider4);
    auto s = analyze_connected(g);
    REQUIRE(s.label.s_case == SCase::S5);
    auto r = *s.tree.find_cut_vertex(*g.find("x"));
    auto ci = ChainIndex::build(s.tree, s.dec, r);
    CHECK(ci.q_size() == 4);
    CHECK(ci.q_leaves(PendantType::A).size() == 2);
    CHECK(ci.q_leaves(PendantType::B).size() == 2);
    CHECK(ci.d_root() == 4);
    REQUIRE(ci.in_s5());
    auto pick = ci.step();
    CHECK(pick.case_no == 1);
    CHECK(std::set<PendantType>{pick.first.type, pick.second.type} ==
          std::set<PendantType>{PendantType::A, PendantType::B});
    auto g2 = with_edge(g, pick.edge);
    CHECK(oracle::branch_count(g2, *g.find("x")) == 3);
    CHECK(ci.d_root() == 3);
    CHECK(ci.q_leaves(PendantType::AB).size() == 1);
    CHECK(ci.audit().empty());
}

TEST_CASE("chain index case 2") {
    // Four B chains on x and two branches, each with an A leaf and a C4 block.
    BipartiteGraph g;
    VertexId x = g.add_vertex("x", Side::A);
    for (int i = 1; i <= 4; ++i) g.add_edge(x, g.add_vertex("b" + std::to_string(i), Side::B));
    for (int k = 1; k <= 2; ++k) {
        std::string t = std::to_string(k);
        VertexId hub = g.add_vertex("h" + t, Side::B);
        g.add_edge(x, hub);
        g.add_edge(hub, g.add_vertex("leaf" + t, Side::A));
        VertexId p = g.add_vertex("p" + t, Side::A);
        g.add_edge(hub, p);
        VertexId q1 = g.add_vertex("q" + t, Side::B), q2 = g.add_vertex("r" + t, Side::B);
        VertexId p2 = g.add_vertex("s" + t, Side::A);
        g.add_edge(p, q1);
        g.add_edge(p, q2);
        g.add_edge(p2, q1);
        g.add_edge(p2, q2);
    }
    auto s = analyze_connected(g);
    REQUIRE(s.label.s_case == SCase::S5);
    auto ci = ChainIndex::build(s.tree, s.dec, *s.tree.find_cut_vertex(x));
    CHECK(ci.q_size() == 4);
    CHECK(ci.nonchain_branches() == 2);
    REQUIRE(ci.in_s5());
    auto pick = ci.step();
    CHECK(pick.case_no == 2);
    CHECK(is_legal_edge(g, pick.edge.a, pick.edge.b));
    CHECK(oracle::branch_count(with_edge(g, pick.edge), x) == ci.d_root());
}

TEST_CASE("property: each S5 step lowers D(r) and eta by one") {
    std::mt19937_64 rng(53);
    int steps = 0, case2 = 0;
    for (int i = 0; i < 300; ++i) {
        GenParams p;
        const bool one_type = rng() % 2 == 0;
        std::size_t k = 5 + rng() % 8;
        // one_type: B chains of length 1 plus branches holding two A leaves.
        std::size_t branches = one_type ? 2 + rng() % 2 : 0;
        for (std::size_t c = 0; c < k; ++c) p.chains.push_back(one_type ? 1 : 1 + rng() % 3);
        for (std::size_t c = 0; c < branches; ++c) p.chains.push_back(2);
        auto g = generate_instance(GenKind::Spider, p);
        for (std::size_t c = 0; c < branches; ++c) {
            VertexId hub = *g.find("b" + std::to_string(k + c + 1));
            g.add_edge(g.add_vertex("f" + std::to_string(c), Side::A), hub);
        }
        // Forks turn some chains into branches with two leaves.
        std::size_t forks = one_type ? 0 : rng() % 3;
        for (std::size_t f = 0; f < forks; ++f) {
            VertexId at = static_cast<VertexId>(1 + rng() % (g.vertex_count() - 1));
            if (g.degree(at) != 2) continue;
            Side s = other(g.side(at));
            g.add_edge(at, g.add_vertex("f" + std::to_string(f), s));
        }
        if (g.a_vertices().size() < 2 || g.b_vertices().size() < 2) continue;
        auto st = analyze_connected(g);
        if (st.label.s_case != SCase::S5) continue;
        VertexId rv = *st.report.massive;
        auto ci = ChainIndex::build(st.tree, st.dec, *st.tree.find_cut_vertex(rv));
        CHECK(ci.d_root() == oracle::branch_count(g, rv));
        std::size_t eta_before = eta_now(g);
        while (ci.in_s5()) {
            std::size_t d_before = ci.d_root();
            auto pick = ci.step();
            case2 += pick.case_no == 2 ? 1 : 0;
            REQUIRE(is_legal_edge(g, pick.edge.a, pick.edge.b));
            g = with_edge(g, pick.edge);
            CHECK(ci.d_root() + 1 == d_before);
            CHECK(oracle::branch_count(g, rv) == ci.d_root());
            std::size_t eta_after = eta_now(g);
            CHECK(eta_after + 1 == eta_before);
            eta_before = eta_after;
            CHECK(ci.audit().empty());
            ++steps;
        }
    }
    CHECK(steps > 200);
    CHECK(case2 > 0);
}
