#include "bicon/blocks.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "radix.hpp"

namespace bicon {

const char* to_string(PendantType t) {
    switch (t) {
        case PendantType::A: return "A";
        case PendantType::B: return "B";
        case PendantType::AB: return "AB";
    }
    return "?";
}

namespace {

std::uint64_t edge_key(const Edge& e) { return std::uint64_t{e.a} << 32 | e.b; }

// Fills every derived field of a decomposition from its primary data.
// `order` receives, for each input nonsingular block, its final block id.
BlockDecomposition assemble(std::size_t n, std::vector<bool> is_cut, std::vector<Edge> cut_edges,
                            std::vector<SmallIds> nonsingular,  // each ascending
                            const std::function<std::size_t(VertexId)>& degree,
                            const std::function<Side(VertexId)>& side_of,
                            std::vector<BlockId>* order = nullptr) {
    BlockDecomposition dec;
    dec.is_cut_vertex = std::move(is_cut);
    for (VertexId v = 0; v < n; ++v) {
        if (dec.is_cut_vertex[v]) dec.cut_vertices.push_back(v);
    }
    detail::radix_sort(cut_edges, edge_key, 8);
    dec.cut_edges = std::move(cut_edges);

    std::vector<std::uint32_t> perm(nonsingular.size());
    for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
    // Two blocks share at most one vertex, so the two smallest vertices order them.
    detail::radix_sort(perm, [&](std::uint32_t x) {
        return std::uint64_t{nonsingular[x][0]} << 32 | nonsingular[x][1];
    }, 8);
    if (order) order->assign(nonsingular.size(), kNone);
    for (std::uint32_t rank = 0; rank < perm.size(); ++rank) {
        if (order) (*order)[perm[rank]] = rank;
        dec.blocks.push_back({std::move(nonsingular[perm[rank]]), false});
    }
    dec.nonsingular_count = dec.blocks.size();

    auto fill = [n](Incidence& inc, auto&& each) {
        inc.offset.assign(n + 1, 0);
        each([&](VertexId v, std::uint32_t) { ++inc.offset[v + 1]; });
        for (std::size_t v = 0; v < n; ++v) inc.offset[v + 1] += inc.offset[v];
        inc.items.resize(inc.offset[n]);
        std::vector<std::uint32_t> at(inc.offset.begin(), inc.offset.end() - 1);
        each([&](VertexId v, std::uint32_t x) { inc.items[at[v]++] = x; });
    };
    fill(dec.nonsingular_of_vertex, [&](auto&& put) {
        for (BlockId b = 0; b < dec.nonsingular_count; ++b) {
            for (VertexId v : dec.blocks[b].vertices) put(v, b);
        }
    });
    fill(dec.cut_edges_of_vertex, [&](auto&& put) {
        for (std::uint32_t i = 0; i < dec.cut_edges.size(); ++i) {
            put(dec.cut_edges[i].a, i);
            put(dec.cut_edges[i].b, i);
        }
    });

    dec.block_of_noncut.assign(n, kNone);
    dec.blocks.reserve(dec.nonsingular_count + n);
    for (VertexId v = 0; v < n; ++v) {
        if (dec.is_cut_vertex[v]) continue;
        if (!dec.nonsingular_of_vertex[v].empty()) {
            dec.block_of_noncut[v] = dec.nonsingular_of_vertex[v].front();
        } else {
            dec.block_of_noncut[v] = static_cast<BlockId>(dec.blocks.size());
            dec.blocks.push_back({{v}, true});
        }
    }

    dec.pendant_index.assign(dec.blocks.size(), kNone);
    dec.pendant_blocks.reserve(dec.blocks.size());
    for (BlockId b = 0; b < dec.blocks.size(); ++b) {
        const BlockInfo& info = dec.blocks[b];
        bool pendant = false;
        if (info.singular) {
            pendant = degree(info.vertices[0]) == 1;
        } else {
            std::size_t cuts = 0;
            for (VertexId v : info.vertices) cuts += dec.is_cut_vertex[v] ? 1 : 0;
            pendant = cuts == 1;
        }
        if (!pendant) continue;
        PendantBlock pb;
        pb.block = b;
        pb.singular = info.singular;
        for (VertexId v : info.vertices) {
            if (dec.is_cut_vertex[v]) continue;
            (side_of(v) == Side::A ? pb.noncut_a : pb.noncut_b).push_back(v);
        }
        pb.type = pb.noncut_b.empty() ? PendantType::A
                  : pb.noncut_a.empty() ? PendantType::B
                                        : PendantType::AB;
        dec.pendant_index[b] = static_cast<std::uint32_t>(dec.pendant_blocks.size());
        dec.pendant_blocks.push_back(std::move(pb));
    }
    return dec;
}

}  // namespace

std::vector<VertexId> BlockDecomposition::singular_vertices() const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < is_cut_vertex.size(); ++v) {
        if (nonsingular_of_vertex[v].empty()) out.push_back(static_cast<VertexId>(v));
    }
    return out;
}

BlockDecomposition decompose(const BipartiteGraph& g, OpCounters* counters) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> disc(n, kNone), low(n, 0);
    std::vector<bool> is_cut(n, false);
    std::vector<Edge> cut_edges;
    std::vector<SmallIds> nonsingular;

    struct Frame {
        VertexId v;
        VertexId parent;
        std::uint32_t next;
    };
    std::vector<Frame> frames;
    std::vector<std::pair<VertexId, VertexId>> edge_stack;
    std::vector<std::uint32_t> stamp(n, kNone);
    std::uint32_t clock = 0;
    std::uint32_t comp_serial = 0;
    std::uint64_t scans = 0;
    std::vector<VertexId> verts;

    for (VertexId root = 0; root < n; ++root) {
        if (disc[root] != kNone) continue;
        disc[root] = low[root] = clock++;
        frames.push_back({root, kNone, 0});
        std::uint32_t root_children = 0;
        while (!frames.empty()) {
            Frame& f = frames.back();
            VertexId u = f.v;
            auto nbrs = g.neighbors(u);
            if (f.next < nbrs.size()) {
                VertexId w = nbrs[f.next++];
                ++scans;
                if (disc[w] == kNone) {
                    edge_stack.emplace_back(u, w);
                    disc[w] = low[w] = clock++;
                    if (u == root) ++root_children;
                    frames.push_back({w, u, 0});
                } else if (w != f.parent && disc[w] < disc[u]) {
                    edge_stack.emplace_back(u, w);
                    low[u] = std::min(low[u], disc[w]);
                }
                continue;
            }
            VertexId p = f.parent;
            frames.pop_back();
            if (p == kNone) continue;
            low[p] = std::min(low[p], low[u]);
            if (low[u] < disc[p]) continue;
            // p separates the subtree of u: pop one biconnected component.
            if (p != root) is_cut[p] = true;
            verts.clear();
            std::size_t edges = 0;
            ++comp_serial;
            while (true) {
                auto [x, y] = edge_stack.back();
                edge_stack.pop_back();
                ++edges;
                for (VertexId z : {x, y}) {
                    if (stamp[z] != comp_serial) {
                        stamp[z] = comp_serial;
                        verts.push_back(z);
                    }
                }
                if (x == p && y == u) break;
            }
            if (edges == 1) {
                cut_edges.push_back(make_edge(g, p, u));
            } else {
                detail::radix_sort(verts);
                nonsingular.emplace_back(verts.begin(), verts.end());
            }
        }
        if (root_children >= 2) is_cut[root] = true;
    }
    if (counters) counters->adjacency_scans += scans;
    return assemble(
        n, std::move(is_cut), std::move(cut_edges), std::move(nonsingular),
        [&](VertexId v) { return g.degree(v); }, [&](VertexId v) { return g.side(v); });
}

std::optional<Edge> choose_binding(VertexId a1, VertexId b1, std::uint32_t label1, VertexId a2,
                                   VertexId b2, std::uint32_t label2) {
    bool forward = a1 != kNone && b2 != kNone;   // A from the first block
    bool backward = a2 != kNone && b1 != kNone;  // A from the second block
    if (forward && backward) {
        if (label1 <= label2) return Edge{a1, b2};
        return Edge{a2, b1};
    }
    if (forward) return Edge{a1, b2};
    if (backward) return Edge{a2, b1};
    return std::nullopt;
}

namespace {

// Connectivity of g minus an optional vertex and an optional edge, from s to t.
bool connected_without(const BipartiteGraph& g, VertexId s, VertexId t, VertexId skip_vertex,
                       const Edge* skip_edge) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> stack{s};
    seen[s] = true;
    if (skip_vertex != kNone) seen[skip_vertex] = true;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        if (u == t) return true;
        for (VertexId w : g.neighbors(u)) {
            if (seen[w]) continue;
            if (skip_edge && ((u == skip_edge->a && w == skip_edge->b) ||
                              (u == skip_edge->b && w == skip_edge->a))) {
                continue;
            }
            seen[w] = true;
            stack.push_back(w);
        }
    }
    return false;
}

}  // namespace

bool is_biconnected_pair(const BipartiteGraph& g, VertexId u, VertexId v) {
    if (!g.contains(u) || !g.contains(v)) {
        throw Error(ErrorKind::UnknownVertex, "unknown vertex in biconnectivity query");
    }
    if (u == v) throw Error(ErrorKind::Precondition, "biconnectivity needs two distinct vertices");
    if (!connected_without(g, u, v, kNone, nullptr)) return false;
    for (const Edge& e : g.edges()) {
        if (!connected_without(g, u, v, kNone, &e)) return false;
    }
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
        if (w == u || w == v) continue;
        if (!connected_without(g, u, v, w, nullptr)) return false;
    }
    return true;
}

std::size_t branch_count(const BlockDecomposition& dec, const BipartiteGraph& g, VertexId u) {
    if (!g.contains(u)) throw Error(ErrorKind::UnknownVertex, "unknown vertex");
    if (g.degree(u) == 0) return 0;
    if (!dec.is_cut_vertex[u]) return 1;
    return dec.nonsingular_of_vertex[u].size() + dec.cut_edges_of_vertex[u].size();
}

std::vector<NodeId> BlockTree::leaves() const {
    std::vector<NodeId> out;
    for (NodeId x = 0; x < nodes.size(); ++x) {
        if (adj[x].size() == 1) out.push_back(x);
    }
    return out;
}

std::optional<NodeId> BlockTree::find_cut_vertex(VertexId v) const {
    for (NodeId x = 0; x < nodes.size(); ++x) {
        if (nodes[x].kind == NodeKind::CutVertex && nodes[x].ref == v) return x;
    }
    return std::nullopt;
}

std::optional<NodeId> BlockTree::find_block(BlockId b) const {
    for (NodeId x = 0; x < nodes.size(); ++x) {
        if (nodes[x].is_b() && nodes[x].ref == b) return x;
    }
    return std::nullopt;
}

BlockTree build_block_tree(const BlockDecomposition& dec, std::span<const VertexId> comp,
                           OpCounters* counters) {
    if (comp.size() < 2) {
        throw Error(ErrorKind::SingularComponent, "a single-vertex component has no block tree");
    }
    std::vector<BlockId> blocks, singular;
    std::vector<VertexId> cuts;
    std::vector<std::uint32_t> cut_edge_ids;
    for (VertexId v : comp) {
        for (BlockId b : dec.nonsingular_of_vertex[v]) blocks.push_back(b);
        if (dec.is_cut_vertex[v]) {
            cuts.push_back(v);
        } else if (dec.nonsingular_of_vertex[v].empty()) {
            singular.push_back(dec.block_of_noncut[v]);
        }
        for (std::uint32_t e : dec.cut_edges_of_vertex[v]) {
            if (dec.cut_edges[e].a == v) cut_edge_ids.push_back(e);
        }
    }
    detail::radix_sort(blocks);
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    detail::radix_sort(singular);
    detail::radix_sort(cut_edge_ids);

    BlockTree t;
    // Scratch maps from block id and vertex id to tree node, reset before return
    // so each call costs time proportional to its component only.
    thread_local std::vector<NodeId> block_node, vertex_node;
    if (block_node.size() < dec.blocks.size()) block_node.resize(dec.blocks.size(), kNone);
    if (vertex_node.size() < dec.is_cut_vertex.size()) vertex_node.resize(dec.is_cut_vertex.size(), kNone);
    const std::size_t total = blocks.size() + singular.size() + cuts.size() + cut_edge_ids.size();
    t.nodes.reserve(total);
    t.adj.reserve(total);
    auto add = [&](NodeKind kind, std::uint32_t ref, std::size_t degree) {
        t.nodes.push_back({kind, ref});
        t.adj.emplace_back().reserve(degree);
        return static_cast<NodeId>(t.nodes.size() - 1);
    };
    for (BlockId b : blocks) {
        std::size_t d = 0;
        for (VertexId v : dec.blocks[b].vertices) d += dec.is_cut_vertex[v] ? 1 : 0;
        block_node[b] = add(NodeKind::Block, b, d);
    }
    for (BlockId b : singular) vertex_node[dec.blocks[b].vertices[0]] = add(NodeKind::SingularPendant, b, 1);
    for (VertexId v : cuts) {
        vertex_node[v] = add(NodeKind::CutVertex, v,
                             dec.nonsingular_of_vertex[v].size() + dec.cut_edges_of_vertex[v].size());
    }
    auto link = [&](NodeId x, NodeId y) {
        t.adj[x].push_back(y);
        t.adj[y].push_back(x);
    };
    std::uint64_t work = 0;
    for (BlockId b : blocks) {
        for (VertexId v : dec.blocks[b].vertices) {
            ++work;
            if (dec.is_cut_vertex[v]) link(block_node[b], vertex_node[v]);
        }
    }
    for (std::uint32_t e : cut_edge_ids) {
        NodeId en = add(NodeKind::CutEdge, e, 2);
        for (VertexId x : {dec.cut_edges[e].a, dec.cut_edges[e].b}) {
            ++work;
            if (dec.is_cut_vertex[x]) {
                link(vertex_node[x], en);
            } else {
                link(en, vertex_node[x]);
            }
        }
    }
    for (BlockId b : blocks) block_node[b] = kNone;
    for (BlockId b : singular) vertex_node[dec.blocks[b].vertices[0]] = kNone;
    for (VertexId v : cuts) vertex_node[v] = kNone;
    t.root = 0;
    for (NodeId x = 0; x < t.size(); ++x) {
        if (t.degree(x) >= 2) {
            t.root = x;
            break;
        }
    }
    if (counters) counters->tree_traversals += work;
    return t;
}

std::vector<NodeId> tree_path(const BlockTree& t, NodeId x, NodeId y) {
    if (x >= t.size() || y >= t.size()) {
        throw Error(ErrorKind::Precondition, "tree_path: node outside the tree");
    }
    std::vector<NodeId> parent(t.size(), kNone);
    std::queue<NodeId> q;
    q.push(x);
    parent[x] = x;
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        if (u == y) break;
        for (NodeId w : t.adj[u]) {
            if (parent[w] == kNone) {
                parent[w] = u;
                q.push(w);
            }
        }
    }
    if (parent[y] == kNone) throw Error(ErrorKind::Precondition, "tree_path: nodes not connected");
    std::vector<NodeId> path{y};
    while (path.back() != x) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

CollapseResult collapse_path(const BipartiteGraph& g, const BlockTree& t,
                             const BlockDecomposition& dec, BlockId first, BlockId second) {
    const PendantBlock* p1 = dec.pendant(first);
    const PendantBlock* p2 = dec.pendant(second);
    auto n1 = t.find_block(first);
    auto n2 = t.find_block(second);
    if (!p1 || !p2 || !n1 || !n2 || !t.is_leaf(*n1) || !t.is_leaf(*n2) || first == second) {
        throw Error(ErrorKind::Precondition, "collapse_path: pair is not two leaves of the tree");
    }
    auto front = [](const SmallIds& v) { return v.empty() ? kNone : v.front(); };
    auto binding = choose_binding(front(p1->noncut_a), front(p1->noncut_b), first,
                                  front(p2->noncut_a), front(p2->noncut_b), second);
    if (!binding) throw Error(ErrorKind::Precondition, "collapse_path: not a legal pair");

    const std::vector<NodeId> path = tree_path(t, *n1, *n2);
    std::vector<bool> on_path(t.size(), false);
    for (NodeId x : path) on_path[x] = true;

    // Surviving path nodes: cut vertices of degree >= 3. Everything else merges.
    std::vector<bool> removed(t.size(), false);
    std::vector<VertexId> merged_vertices;
    std::vector<bool> is_cut = dec.is_cut_vertex;
    std::vector<bool> drop_cut_edge(dec.cut_edges.size(), false);
    std::vector<bool> drop_block(dec.blocks.size(), false);
    std::vector<NodeId> survivors;
    for (NodeId x : path) {
        const TreeNode& node = t.nodes[x];
        switch (node.kind) {
            case NodeKind::Block:
            case NodeKind::SingularPendant:
                for (VertexId v : dec.blocks[node.ref].vertices) merged_vertices.push_back(v);
                drop_block[node.ref] = true;
                removed[x] = true;
                break;
            case NodeKind::CutVertex:
                merged_vertices.push_back(node.ref);
                if (t.degree(x) >= 3) {
                    survivors.push_back(x);
                } else {
                    is_cut[node.ref] = false;
                    removed[x] = true;
                }
                break;
            case NodeKind::CutEdge:
                merged_vertices.push_back(dec.cut_edges[node.ref].a);
                merged_vertices.push_back(dec.cut_edges[node.ref].b);
                drop_cut_edge[node.ref] = true;
                removed[x] = true;
                break;
        }
    }
    std::sort(merged_vertices.begin(), merged_vertices.end());
    merged_vertices.erase(std::unique(merged_vertices.begin(), merged_vertices.end()),
                          merged_vertices.end());

    // Patch the decomposition.
    std::vector<Edge> cut_edges;
    std::vector<std::uint32_t> new_cut_edge_index(dec.cut_edges.size(), kNone);
    for (std::uint32_t i = 0; i < dec.cut_edges.size(); ++i) {
        if (drop_cut_edge[i]) continue;
        new_cut_edge_index[i] = static_cast<std::uint32_t>(cut_edges.size());
        cut_edges.push_back(dec.cut_edges[i]);
    }
    std::vector<SmallIds> nonsingular;
    std::vector<BlockId> kept_from;
    for (BlockId b = 0; b < dec.nonsingular_count; ++b) {
        if (drop_block[b]) continue;
        kept_from.push_back(b);
        nonsingular.push_back(dec.blocks[b].vertices);
    }
    const std::size_t merged_slot = nonsingular.size();
    nonsingular.emplace_back(merged_vertices.begin(), merged_vertices.end());
    const Edge e = *binding;
    std::vector<BlockId> order;
    CollapseResult out;
    out.binding = e;
    out.dec = assemble(
        g.vertex_count(), std::move(is_cut), std::move(cut_edges), std::move(nonsingular),
        [&](VertexId v) { return g.degree(v) + ((v == e.a || v == e.b) ? 1 : 0); },
        [&](VertexId v) { return g.side(v); }, &order);
    std::vector<BlockId> new_id_of_old(dec.blocks.size(), kNone);
    for (std::size_t i = 0; i < kept_from.size(); ++i) new_id_of_old[kept_from[i]] = order[i];

    // Rewire the tree: kept nodes keep their edges among themselves; the new
    // block adopts surviving path cut vertices and every off-path neighbor of
    // a merged node.
    std::vector<NodeId> remap(t.size(), kNone);
    BlockTree& nt = out.tree;
    for (NodeId x = 0; x < t.size(); ++x) {
        if (removed[x]) continue;
        TreeNode node = t.nodes[x];
        if (node.kind == NodeKind::Block) {
            node.ref = new_id_of_old[node.ref];
        } else if (node.kind == NodeKind::SingularPendant) {
            node.ref = out.dec.block_of_noncut[dec.blocks[node.ref].vertices[0]];
        } else if (node.kind == NodeKind::CutEdge) {
            node.ref = new_cut_edge_index[node.ref];
        }
        remap[x] = static_cast<NodeId>(nt.nodes.size());
        nt.nodes.push_back(node);
        nt.adj.emplace_back();
    }
    const NodeId merged = static_cast<NodeId>(nt.nodes.size());
    nt.nodes.push_back({NodeKind::Block, order[merged_slot]});
    nt.adj.emplace_back();
    auto link = [&](NodeId x, NodeId y) {
        nt.adj[x].push_back(y);
        nt.adj[y].push_back(x);
    };
    for (NodeId x = 0; x < t.size(); ++x) {
        if (removed[x]) continue;
        for (NodeId y : t.adj[x]) {
            if (!removed[y] && x < y) link(remap[x], remap[y]);
        }
    }
    for (NodeId s : survivors) link(merged, remap[s]);
    for (NodeId x : path) {
        if (!removed[x]) continue;
        for (NodeId y : t.adj[x]) {
            if (!on_path[y]) link(merged, remap[y]);
        }
    }
    nt.root = merged;
    if (nt.degree(merged) < 2) {
        for (NodeId x = 0; x < nt.size(); ++x) {
            if (nt.degree(x) >= 2) {
                nt.root = x;
                break;
            }
        }
    }
    out.merged = merged;
    return out;
}

std::string node_label(const BipartiteGraph& g, const BlockDecomposition& dec, const TreeNode& n) {
    switch (n.kind) {
        case NodeKind::Block: {
            std::string s = "{";
            bool first = true;
            for (VertexId v : dec.blocks[n.ref].vertices) {
                if (!first) s += ',';
                s += g.name(v);
                first = false;
            }
            return s + "}";
        }
        case NodeKind::SingularPendant:
            return "{" + g.name(dec.blocks[n.ref].vertices[0]) + "}";
        case NodeKind::CutVertex:
            return g.name(n.ref);
        case NodeKind::CutEdge:
            return "(" + g.name(dec.cut_edges[n.ref].a) + "," + g.name(dec.cut_edges[n.ref].b) + ")";
    }
    return "?";
}

std::string canonical_form(const BipartiteGraph& g, const BlockDecomposition& dec,
                           const BlockTree& t) {
    std::vector<std::string> labels(t.size());
    for (NodeId x = 0; x < t.size(); ++x) labels[x] = node_label(g, dec, t.nodes[x]);
    std::vector<std::string> edges;
    for (NodeId x = 0; x < t.size(); ++x) {
        for (NodeId y : t.adj[x]) {
            if (labels[x] < labels[y]) edges.push_back(labels[x] + "--" + labels[y]);
        }
    }
    std::vector<std::string> nodes = labels;
    std::sort(nodes.begin(), nodes.end());
    std::sort(edges.begin(), edges.end());
    std::string out;
    for (const auto& s : nodes) out += s + ";";
    out += "|";
    for (const auto& s : edges) out += s + ";";
    return out;
}

std::string to_dot(const BipartiteGraph& g, const BlockDecomposition& dec, const BlockTree& t) {
    std::ostringstream o;
    o << "graph block_tree {\n";
    for (NodeId x = 0; x < t.size(); ++x) {
        std::string label = node_label(g, dec, t.nodes[x]);
        std::string escaped;
        for (char c : label) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        o << "  n" << x << " [shape=" << (t.nodes[x].is_b() ? "box" : "circle") << ", label=\""
          << escaped << "\"];\n";
    }
    for (NodeId x = 0; x < t.size(); ++x) {
        for (NodeId y : t.adj[x]) {
            if (x < y) o << "  n" << x << " -- n" << y << ";\n";
        }
    }
    o << "}\n";
    return o.str();
}

}  // namespace bicon
