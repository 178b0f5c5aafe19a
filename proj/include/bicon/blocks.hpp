#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <absl/container/inlined_vector.h>

#include "bicon/graph.hpp"

namespace bicon {

enum class PendantType : std::uint8_t { A = 0, B = 1, AB = 2 };

const char* to_string(PendantType t);

// Type A pairs with B or AB, B with A or AB, AB with anything.
inline bool compatible(PendantType x, PendantType y) {
    return x == PendantType::AB || y == PendantType::AB || x != y;
}

// Short vertex and node lists; most hold one or two entries.
using SmallIds = absl::InlinedVector<std::uint32_t, 2>;

struct BlockInfo {
    SmallIds vertices;  // ascending
    bool singular = false;
};

struct PendantBlock {
    BlockId block = kNone;
    bool singular = false;
    PendantType type = PendantType::A;
    SmallIds noncut_a;  // ascending
    SmallIds noncut_b;  // ascending
};

/// Blocks, cut vertices and cut edges under the convention that an isolated
/// vertex is a block and a two-vertex edge is not.
///
/// Nonsingular blocks (>= 3 vertices) come first in `blocks`, ordered by their
/// smallest vertex. They are followed by one singular block per noncut vertex
/// that lies in no nonsingular block (isolated and degree-1 vertices), in
/// vertex order. Singular cut vertices are never materialized as blocks.
/// Compressed per-vertex lists: the items of v are items[offset[v], offset[v+1]).
struct Incidence {
    std::vector<std::uint32_t> offset{0};
    std::vector<std::uint32_t> items;

    std::span<const std::uint32_t> operator[](std::size_t v) const {
        return {items.data() + offset[v], offset[v + 1] - offset[v]};
    }
};

struct BlockDecomposition {
    std::vector<bool> is_cut_vertex;
    std::vector<VertexId> cut_vertices;           // ascending
    std::vector<Edge> cut_edges;                  // ascending
    std::vector<BlockInfo> blocks;
    std::size_t nonsingular_count = 0;
    std::vector<PendantBlock> pendant_blocks;     // ascending block id
    std::vector<BlockId> block_of_noncut;         // kNone for cut vertices

    // Lookups derived from the fields above.
    Incidence nonsingular_of_vertex;  // nonsingular blocks containing v
    Incidence cut_edges_of_vertex;
    std::vector<std::uint32_t> pendant_index;     // block id -> index into pendant_blocks

    std::span<const BlockInfo> nonsingular_blocks() const {
        return {blocks.data(), nonsingular_count};
    }
    std::vector<VertexId> singular_vertices() const;
    const PendantBlock* pendant(BlockId b) const {
        return pendant_index[b] == kNone ? nullptr : &pendant_blocks[pendant_index[b]];
    }
};

BlockDecomposition decompose(const BipartiteGraph& g, OpCounters* counters = nullptr);

/// Orients a binding edge between two pendant blocks given the smallest
/// noncut A and B vertex of each (kNone when absent). When both orientations
/// are possible the A endpoint comes from the block with the lower label.
std::optional<Edge> choose_binding(VertexId a1, VertexId b1, std::uint32_t label1, VertexId a2,
                                   VertexId b2, std::uint32_t label2);

/// Pairwise biconnectivity by direct deletion: u and v stay connected after
/// removing any single edge or any single vertex other than u and v.
bool is_biconnected_pair(const BipartiteGraph& g, VertexId u, VertexId v);

/// D(G,u): number of components of (component of u) - u.
std::size_t branch_count(const BlockDecomposition& dec, const BipartiteGraph& g, VertexId u);

enum class NodeKind : std::uint8_t { Block, SingularPendant, CutVertex, CutEdge };

struct TreeNode {
    NodeKind kind = NodeKind::Block;
    std::uint32_t ref = kNone;  // block id, block id, vertex id, cut-edge index

    bool is_b() const { return kind == NodeKind::Block || kind == NodeKind::SingularPendant; }
    bool is_c() const { return !is_b(); }
};

/// Block tree of one connected component: b-vertices are nonsingular blocks
/// and singular pendant blocks, c-vertices are cut vertices and cut edges.
struct BlockTree {
    std::vector<TreeNode> nodes;
    std::vector<SmallIds> adj;
    NodeId root = kNone;

    std::size_t size() const { return nodes.size(); }
    std::size_t degree(NodeId x) const { return adj[x].size(); }
    bool is_leaf(NodeId x) const { return adj[x].size() == 1; }
    std::vector<NodeId> leaves() const;
    std::optional<NodeId> find_cut_vertex(VertexId v) const;
    std::optional<NodeId> find_block(BlockId b) const;
};

/// Builds the block tree of the component `comp` (ascending vertex ids).
/// Rooted at the first node of degree >= 2 (or the single node).
BlockTree build_block_tree(const BlockDecomposition& dec, std::span<const VertexId> comp,
                           OpCounters* counters = nullptr);

/// Unique simple path between x and y, endpoints included.
std::vector<NodeId> tree_path(const BlockTree& t, NodeId x, NodeId y);

struct CollapseResult {
    BlockTree tree;
    BlockDecomposition dec;
    Edge binding;
    NodeId merged = kNone;  // the new block in `tree`
};

/// Adds a binding edge between two pendant blocks of one component and merges
/// the tree path between them into one block, rewiring the tree and patching
/// the decomposition in place of a full recomputation. `g` is the graph
/// before the insertion.
CollapseResult collapse_path(const BipartiteGraph& g, const BlockTree& t,
                             const BlockDecomposition& dec, BlockId first, BlockId second);

/// Canonical text form of a tree: sorted node labels and sorted edge labels.
/// Two trees of the same graph compare equal iff they describe the same Ψ.
std::string canonical_form(const BipartiteGraph& g, const BlockDecomposition& dec,
                           const BlockTree& t);

std::string node_label(const BipartiteGraph& g, const BlockDecomposition& dec, const TreeNode& n);

/// Graphviz rendering: b-vertices as boxes, c-vertices as circles.
std::string to_dot(const BipartiteGraph& g, const BlockDecomposition& dec, const BlockTree& t);

}  // namespace bicon
