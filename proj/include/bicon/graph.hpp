#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "bicon/common.hpp"

namespace bicon {

/// Bipartite graph G = (A, B, E) with opaque string vertex names.
///
/// Vertices get dense indices in insertion order; every tie-break in the
/// library goes through these indices, so results depend only on the input
/// text. Edges are simple and always join an A vertex to a B vertex.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    VertexId add_vertex(std::string name, Side side);
    void add_edge(VertexId u, VertexId v);

    std::size_t vertex_count() const { return sides_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    Side side(VertexId v) const { return sides_[v]; }
    const std::string& name(VertexId v) const { return index_->names[v]; }
    std::optional<VertexId> find(std::string_view name) const;
    bool contains(VertexId v) const { return v < sides_.size(); }

    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
    std::size_t degree(VertexId v) const { return adjacency_[v].size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(VertexId u, VertexId v) const;

    const std::vector<VertexId>& a_vertices() const { return a_vertices_; }
    const std::vector<VertexId>& b_vertices() const { return b_vertices_; }

    // Same per-side vertex names in the same order and the same edge set.
    friend bool operator==(const BipartiteGraph& lhs, const BipartiteGraph& rhs);

private:
    static std::uint64_t key(VertexId a, VertexId b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    std::vector<Side> sides_;
    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<Edge> edges_;
    std::vector<VertexId> a_vertices_;
    std::vector<VertexId> b_vertices_;
    // Names and lookup tables shared between copies. A copy that adds edges records
    // them in `own_edge_keys_`; the shared part is only written while unshared.
    struct Index {
        std::vector<std::string> names;
        absl::flat_hash_map<std::string, VertexId> by_name;
        absl::flat_hash_set<std::uint64_t> edge_keys;
    };
    Index& unshared_index();

    std::shared_ptr<Index> index_ = std::make_shared<Index>();
    absl::flat_hash_set<std::uint64_t> own_edge_keys_;
};

/// Orients (u, v) as an A-B edge. Throws BipartitenessViolation for a same-side pair.
Edge make_edge(const BipartiteGraph& g, VertexId u, VertexId v);

/// Parses the line-oriented edge-list format:
///   # comment
///   A <id>...      declares A vertices
///   B <id>...      declares B vertices
///   E <a-id> <b-id>
BipartiteGraph parse_graph(std::string_view text);

/// Inverse of parse_graph; preserves vertex indexing and edge order.
std::string serialize(const BipartiteGraph& g);

bool is_legal_edge(const BipartiteGraph& g, VertexId u, VertexId v);

/// G ∪ L. Every edge of L must be legal in g and L must be duplicate free.
BipartiteGraph add_edges(const BipartiteGraph& g, std::span<const Edge> edges);

struct ComponentPartition {
    std::vector<std::uint32_t> component_of;          // vertex -> component index
    std::vector<std::vector<VertexId>> members;        // ascending vertex ids per component

    std::size_t count() const { return members.size(); }
};

/// Components are numbered by their smallest vertex index.
ComponentPartition connected_components(const BipartiteGraph& g, OpCounters* counters = nullptr);

/// Induced subgraph on `vertices` (given in ascending order). Local ids follow
/// the order of `vertices`; `vertices[local]` maps back to g.
BipartiteGraph induced_subgraph(const BipartiteGraph& g, std::span<const VertexId> vertices);

}  // namespace bicon
