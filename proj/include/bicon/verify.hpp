#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bicon/graph.hpp"

namespace bicon {

struct Witness {
    std::uint32_t component = 0;     // index by smallest vertex order
    std::string kind;                // "edge", "cut-vertex", "bridge"
    std::vector<VertexId> vertices;  // the offending element
};

struct VerifyReport {
    bool componentwise_biconnected = false;
    bool edges_legal = true;
    std::optional<Witness> witness;
    std::optional<std::size_t> oracle_size;
    bool agreement = false;
    std::string message;  // first problem found, empty when everything passed
};

/// Every component an isolated vertex or a biconnected set of >= 3 vertices.
/// Small components are checked by deleting each vertex in turn; large ones
/// by a chain decomposition. Neither shares code with `decompose`.
VerifyReport check_componentwise_biconnected(const BipartiteGraph& g);

struct OracleResult {
    std::size_t size = 0;
    std::vector<Edge> edges;
};

/// Smallest set of legal edges making g componentwise biconnected, by subset
/// enumeration in increasing size and lexicographic order over legal-edge
/// indices (legal edges sorted by (a, b)). Requires <= 30 legal edges and
/// cap <= 8; throws CapExceeded when nothing of size <= cap works.
OracleResult brute_force_optimal(const BipartiteGraph& g, std::size_t cap = 8);

/// Legality and distinctness of `added`, the checker on g plus `added`, and
/// optionally agreement of |added| with the oracle.
VerifyReport verify_edges(const BipartiteGraph& g, std::span<const Edge> added, bool use_oracle);

struct AugmentationResult;

/// verify_edges on the solver's edge list, plus a check that the list has
/// the size the solver claimed as its target.
VerifyReport verify_result(const BipartiteGraph& g, const AugmentationResult& result, bool use_oracle);

}  // namespace bicon
