#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bicon/graph.hpp"

namespace fixtures {

inline const char* kP4 = "A a1 a2\nB b1 b2\nE a1 b1\nE a2 b1\nE a2 b2\n";
inline const char* kC4 = "A a1 a2\nB b1 b2\nE a1 b1\nE a1 b2\nE a2 b1\nE a2 b2\n";
inline const char* kSpider4 =
    "A x a3 a4\nB b1 b2 b3 b4\nE x b1\nE x b2\nE x b3\nE x b4\nE a3 b3\nE a4 b4\n";
inline const char* kBroom2 =
    "A a0 a1 a2\nB b0 b1 b2\nE a0 b1\nE a0 b2\nE a0 b0\nE a1 b0\nE a2 b0\n";
inline const char* kM4 = "A a1 a2\nB b1 b2\nE a1 b1\n";
inline const char* kM5 = "A a1 a2 a3\nB b1 b2 b3\nE a1 b1\nE a1 b2\nE a2 b1\nE a2 b2\nE a3 b3\n";

}  // namespace fixtures

namespace oracle {

using bicon::BipartiteGraph;
using bicon::Side;
using bicon::VertexId;

// Number of components of g with `banned` vertices and `cut` edge removed.
inline std::size_t count_components(const BipartiteGraph& g, const std::vector<bool>& banned,
                                    std::pair<VertexId, VertexId> cut = {bicon::kNone, bicon::kNone}) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::size_t count = 0;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (banned[s] || seen[s]) continue;
        ++count;
        std::vector<VertexId> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(u)) {
                if (banned[w] || seen[w]) continue;
                if ((u == cut.first && w == cut.second) || (u == cut.second && w == cut.first)) continue;
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return count;
}

inline std::vector<int> component_ids(const BipartiteGraph& g, const std::vector<bool>& banned) {
    std::vector<int> id(g.vertex_count(), -1);
    int next = 0;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (banned[s] || id[s] >= 0) continue;
        std::vector<VertexId> stack{s};
        id[s] = next;
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(u)) {
                if (!banned[w] && id[w] < 0) {
                    id[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return id;
}

inline bool is_cut(const BipartiteGraph& g, VertexId v) {
    std::vector<bool> none(g.vertex_count(), false), minus(g.vertex_count(), false);
    minus[v] = true;
    return count_components(g, minus) > count_components(g, none);
}

// D(G,u): components of (component of u) - u, by deletion.
inline std::size_t branch_count(const BipartiteGraph& g, VertexId u) {
    std::vector<bool> none(g.vertex_count(), false);
    auto before = component_ids(g, none);
    std::vector<bool> minus(g.vertex_count(), false);
    minus[u] = true;
    auto after = component_ids(g, minus);
    std::vector<int> distinct;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v != u && before[v] == before[u]) distinct.push_back(after[v]);
    }
    std::sort(distinct.begin(), distinct.end());
    return static_cast<std::size_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
}

struct Pendants {
    std::size_t n_a = 0, n_b = 0, n_ab = 0;
    std::size_t total() const { return n_a + n_b + n_ab; }
};

// Edges e, f share a block iff no single vertex deletion separates their
// surviving endpoints. Pendants: degree-1 vertices, and nonsingular blocks
// holding exactly one cut vertex.
inline Pendants pendants(const BipartiteGraph& g) {
    const auto& edges = g.edges();
    const std::size_t m = edges.size(), n = g.vertex_count();
    std::vector<std::vector<int>> comp_without(n);
    for (VertexId x = 0; x < n; ++x) {
        std::vector<bool> minus(n, false);
        minus[x] = true;
        comp_without[x] = component_ids(g, minus);
    }
    std::vector<int> cls(m, -1);
    int classes = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = classes;
        for (std::size_t j = i + 1; j < m; ++j) {
            if (cls[j] >= 0) continue;
            bool same = true;
            for (VertexId x = 0; x < n && same; ++x) {
                VertexId p = edges[i].a == x ? edges[i].b : edges[i].a;
                VertexId q = edges[j].a == x ? edges[j].b : edges[j].a;
                same = comp_without[x][p] == comp_without[x][q];
            }
            if (same) cls[j] = classes;
        }
        ++classes;
    }
    std::vector<bool> cut(n);
    for (VertexId v = 0; v < n; ++v) cut[v] = is_cut(g, v);
    Pendants out;
    for (VertexId v = 0; v < n; ++v) {
        if (g.degree(v) == 1 && !cut[v]) (g.side(v) == Side::A ? out.n_a : out.n_b) += 1;
    }
    for (int c = 0; c < classes; ++c) {
        std::vector<VertexId> verts;
        std::size_t edge_count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (cls[i] != c) continue;
            ++edge_count;
            verts.push_back(edges[i].a);
            verts.push_back(edges[i].b);
        }
        if (edge_count < 2) continue;
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        std::size_t cuts = 0;
        for (VertexId v : verts) cuts += cut[v] ? 1 : 0;
        if (cuts == 1) ++out.n_ab;
    }
    return out;
}

// Maximum number of disjoint legal pairs (A-B, A-AB, B-AB, AB-AB), by search.
inline std::size_t max_matching(std::size_t a, std::size_t b, std::size_t ab) {
    static std::map<std::array<std::size_t, 3>, std::size_t> memo;
    auto key = std::array<std::size_t, 3>{a, b, ab};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = 0;
    if (a && b) best = std::max(best, 1 + max_matching(a - 1, b - 1, ab));
    if (a && ab) best = std::max(best, 1 + max_matching(a - 1, b, ab - 1));
    if (b && ab) best = std::max(best, 1 + max_matching(a, b - 1, ab - 1));
    if (ab >= 2) best = std::max(best, 1 + max_matching(a, b, ab - 2));
    // Leaving an element unmatched.
    if (a) best = std::max(best, max_matching(a - 1, b, ab));
    if (b) best = std::max(best, max_matching(a, b - 1, ab));
    memo[key] = best;
    return best;
}

// max{max_u D(u) + C - 2, M + R} for a connected graph, all terms by deletion.
inline std::size_t eta(const BipartiteGraph& g) {
    std::size_t d_max = 0;
    bool has_cut = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        d_max = std::max(d_max, branch_count(g, v));
        has_cut = has_cut || is_cut(g, v);
    }
    const long long c = has_cut ? 1 : 0;
    Pendants p = pendants(g);
    std::size_t m = max_matching(p.n_a, p.n_b, p.n_ab);
    std::size_t mr = m + (p.total() - 2 * m);
    long long deg = static_cast<long long>(d_max) + c - 2;
    return std::max<long long>(deg, static_cast<long long>(mr));
}

}  // namespace oracle

namespace gen {

using bicon::Side;
using bicon::VertexId;

// Random bipartite forest-ish graph: a random tree on n vertices, each tree
// edge dropped with probability `drop`, plus `extra` random chords.
inline bicon::BipartiteGraph random_sparse(std::mt19937_64& rng, std::size_t n, double drop,
                                           std::size_t extra) {
    bicon::BipartiteGraph g;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t v = 0; v < n; ++v) {
        Side s = v == 0 ? Side::A : (v == 1 ? Side::B : (rng() % 2 ? Side::A : Side::B));
        g.add_vertex((s == Side::A ? "a" : "b") + std::to_string(v), s);
    }
    for (VertexId v = 1; v < n; ++v) {
        if (unit(rng) < drop) continue;
        for (int t = 0; t < 16; ++t) {
            VertexId u = static_cast<VertexId>(rng() % v);
            if (g.side(u) != g.side(v)) {
                g.add_edge(u, v);
                break;
            }
        }
    }
    for (std::size_t k = 0; k < extra; ++k) {
        VertexId u = static_cast<VertexId>(rng() % n), v = static_cast<VertexId>(rng() % n);
        if (g.side(u) != g.side(v) && !g.has_edge(u, v)) g.add_edge(u, v);
    }
    return g;
}

// Random tree, connected by construction.
inline bicon::BipartiteGraph random_tree(std::mt19937_64& rng, std::size_t n, std::size_t extra = 0) {
    bicon::BipartiteGraph g;
    g.add_vertex("v0", Side::A);
    for (std::size_t v = 1; v < n; ++v) {
        VertexId parent = static_cast<VertexId>(rng() % v);
        Side s = bicon::other(g.side(parent));
        VertexId id = g.add_vertex((s == Side::A ? "a" : "b") + std::to_string(v), s);
        g.add_edge(parent, id);
    }
    for (std::size_t k = 0; k < extra; ++k) {
        VertexId u = static_cast<VertexId>(rng() % n), v = static_cast<VertexId>(rng() % n);
        if (g.side(u) != g.side(v) && !g.has_edge(u, v)) g.add_edge(u, v);
    }
    return g;
}

}  // namespace gen
