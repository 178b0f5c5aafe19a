#include "bicon/verify.hpp"

#include "bicon/augment.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace bicon {

namespace {

constexpr std::size_t kNaiveLimit = 2000;

// Vertices reachable from s inside `allowed` (a stamp array), skipping `banned`.
std::size_t reach_count(const BipartiteGraph& g, VertexId s, VertexId banned,
                        const std::vector<std::uint32_t>& comp_of, std::uint32_t comp,
                        std::vector<std::uint32_t>& seen, std::uint32_t mark) {
    std::vector<VertexId> stack{s};
    seen[s] = mark;
    std::size_t count = 0;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        ++count;
        for (VertexId w : g.neighbors(u)) {
            if (w == banned || seen[w] == mark || comp_of[w] != comp) continue;
            seen[w] = mark;
            stack.push_back(w);
        }
    }
    return count;
}

// Chain decomposition: a connected graph with >= 3 vertices is biconnected
// iff every edge lies on a chain and only the first chain is a cycle.
std::optional<Witness> chain_check(const BipartiteGraph& g, const std::vector<VertexId>& members) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> disc(n, kNone);
    std::vector<VertexId> parent(n, kNone);
    std::vector<VertexId> order;
    order.reserve(members.size());
    struct Frame {
        VertexId v;
        std::uint32_t next;
    };
    std::vector<Frame> stack{{members[0], 0}};
    disc[members[0]] = 0;
    order.push_back(members[0]);
    while (!stack.empty()) {
        Frame& f = stack.back();
        auto nbrs = g.neighbors(f.v);
        if (f.next == nbrs.size()) {
            stack.pop_back();
            continue;
        }
        VertexId w = nbrs[f.next++];
        if (disc[w] != kNone) continue;
        disc[w] = static_cast<std::uint32_t>(order.size());
        parent[w] = f.v;
        order.push_back(w);
        stack.push_back({w, 0});
    }
    std::vector<bool> visited(n, false);
    std::size_t covered = 0;
    bool first_chain = true;
    for (VertexId v : order) {
        for (VertexId w : g.neighbors(v)) {
            // Back edge seen from its ancestor end.
            if (disc[w] <= disc[v] || parent[w] == v) continue;
            visited[v] = true;
            VertexId x = w;
            ++covered;
            while (!visited[x]) {
                visited[x] = true;
                x = parent[x];
                ++covered;
            }
            if (x == v && !first_chain) return Witness{0, "cut-vertex", {v}};
            first_chain = false;
        }
    }
    std::size_t edges = 0;
    for (VertexId v : members) edges += g.degree(v);
    edges /= 2;
    if (covered != edges) {
        for (VertexId v : members) {
            if (parent[v] != kNone && !visited[v]) return Witness{0, "bridge", {parent[v], v}};
        }
        return Witness{0, "bridge", {}};
    }
    return std::nullopt;
}

bool fast_check(const std::vector<std::uint64_t>& adj) {
    const std::size_t n = adj.size();
    const std::uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
    auto closure = [&](std::uint64_t start, std::uint64_t allowed) {
        std::uint64_t seen = start, frontier = start;
        while (frontier) {
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
            next &= allowed & ~seen;
            seen |= next;
            frontier = next;
        }
        return seen;
    };
    std::uint64_t left = all;
    while (left) {
        std::uint64_t comp = closure(left & (~left + 1), all);
        left &= ~comp;
        int size = std::popcount(comp);
        if (size == 1) continue;
        if (size == 2) return false;
        for (std::uint64_t c = comp; c; c &= c - 1) {
            std::uint64_t rest = comp & ~(c & (~c + 1));
            if (closure(rest & (~rest + 1), rest) != rest) return false;
        }
    }
    return true;
}

}  // namespace

VerifyReport check_componentwise_biconnected(const BipartiteGraph& g) {
    VerifyReport rep;
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> comp_of(n, kNone);
    std::vector<std::uint32_t> seen(n, kNone);
    std::uint32_t mark = 0;
    std::uint32_t comp = 0;
    for (VertexId s = 0; s < n; ++s) {
        if (comp_of[s] != kNone) continue;
        std::vector<VertexId> members{s};
        comp_of[s] = comp;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (VertexId w : g.neighbors(members[i])) {
                if (comp_of[w] == kNone) {
                    comp_of[w] = comp;
                    members.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        std::optional<Witness> bad;
        if (members.size() == 2) {
            bad = Witness{comp, "edge", members};
        } else if (members.size() > kNaiveLimit) {
            bad = chain_check(g, members);
        } else if (members.size() >= 3) {
            for (VertexId w : members) {
                VertexId start = members[0] == w ? members[1] : members[0];
                if (reach_count(g, start, w, comp_of, comp, seen, mark++) != members.size() - 1) {
                    bad = Witness{comp, "cut-vertex", {w}};
                    break;
                }
            }
        }
        if (bad) {
            bad->component = comp;
            rep.witness = bad;
            std::string what;
            for (VertexId v : bad->vertices) what += (what.empty() ? "" : " ") + g.name(v);
            rep.message = "component " + std::to_string(comp) + " is not biconnected (" +
                          bad->kind + (what.empty() ? "" : " " + what) + ")";
            return rep;
        }
        ++comp;
    }
    rep.componentwise_biconnected = true;
    rep.agreement = true;
    return rep;
}

OracleResult brute_force_optimal(const BipartiteGraph& g, std::size_t cap) {
    std::vector<Edge> legal;
    for (VertexId a : g.a_vertices()) {
        for (VertexId b : g.b_vertices()) {
            if (!g.has_edge(a, b)) legal.push_back({a, b});
        }
    }
    std::sort(legal.begin(), legal.end());
    if (legal.size() > 30 || cap > 8) {
        throw Error(ErrorKind::Precondition, "oracle guard: at most 30 legal edges and cap 8");
    }
    const std::size_t n = g.vertex_count();
    const bool bitmask = n <= 64;
    std::vector<std::uint64_t> base(bitmask ? n : 0, 0);
    if (bitmask) {
        for (const Edge& e : g.edges()) {
            base[e.a] |= 1ULL << e.b;
            base[e.b] |= 1ULL << e.a;
        }
    }
    auto works = [&](const std::vector<std::size_t>& pick) {
        if (bitmask) {
            auto adj = base;
            for (std::size_t i : pick) {
                adj[legal[i].a] |= 1ULL << legal[i].b;
                adj[legal[i].b] |= 1ULL << legal[i].a;
            }
            return fast_check(adj);
        }
        std::vector<Edge> chosen;
        for (std::size_t i : pick) chosen.push_back(legal[i]);
        return check_componentwise_biconnected(add_edges(g, chosen)).componentwise_biconnected;
    };
    for (std::size_t k = 0; k <= std::min(cap, legal.size()); ++k) {
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            if (works(pick)) {
                OracleResult out;
                out.size = k;
                for (std::size_t i : pick) out.edges.push_back(legal[i]);
                return out;
            }
            // Next k-combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == legal.size() - k + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    throw Error(ErrorKind::CapExceeded,
                "no biconnector with at most " + std::to_string(cap) + " edges");
}

VerifyReport verify_edges(const BipartiteGraph& g, std::span<const Edge> added, bool use_oracle) {
    std::set<std::pair<VertexId, VertexId>> distinct;
    std::string legality;
    for (const Edge& e : added) {
        if (!g.contains(e.a) || !g.contains(e.b)) {
            legality = "edge references an unknown vertex";
        } else if (g.side(e.a) != Side::A || g.side(e.b) != Side::B || g.has_edge(e.a, e.b)) {
            legality = "(" + g.name(e.a) + ", " + g.name(e.b) + ") is not a legal edge";
        } else if (!distinct.emplace(e.a, e.b).second) {
            legality = "(" + g.name(e.a) + ", " + g.name(e.b) + ") added twice";
        }
        if (!legality.empty()) break;
    }
    if (!legality.empty()) {
        VerifyReport rep;
        rep.edges_legal = false;
        rep.message = legality;
        return rep;
    }
    VerifyReport rep = check_componentwise_biconnected(add_edges(g, added));
    if (use_oracle) {
        try {
            rep.oracle_size = brute_force_optimal(g).size;
            if (*rep.oracle_size != added.size()) {
                rep.agreement = false;
                if (rep.message.empty()) {
                    rep.message = "size " + std::to_string(added.size()) + " but the optimum is " +
                                  std::to_string(*rep.oracle_size);
                }
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Precondition && e.kind() != ErrorKind::CapExceeded) throw;
        }
    }
    return rep;
}

VerifyReport verify_result(const BipartiteGraph& g, const AugmentationResult& result, bool use_oracle) {
    VerifyReport rep = verify_edges(g, result.added_edges, use_oracle);
    if (result.added_edges.size() != result.target) {
        rep.agreement = false;
        if (rep.message.empty()) {
            rep.message = "size " + std::to_string(result.added_edges.size()) + " but the target is " +
                          std::to_string(result.target);
        }
    }
    return rep;
}

}  // namespace bicon
