#pragma once

#include <string>
#include <vector>

#include "bicon/aug_index.hpp"
#include "bicon/bounds.hpp"

namespace bicon {

struct TraceEntry {
    Edge edge;
    CaseLabel label;     // classification of the graph the edge was added to
    std::string rule;    // construction or pairing rule
    bool reduction = false;    // a single step that lowers the target by one
    bool batch_start = false;  // first edge of a one-shot construction
};

struct AugmentationResult {
    std::vector<Edge> added_edges;
    std::vector<TraceEntry> trace;
    std::size_t target = 0;  // proven optimum for the input
    CaseLabel initial;
    OpCounters counters;

    std::size_t size() const { return added_edges.size(); }
};

struct SolveOptions {
    bool audit = false;  // check every index mutation against a recomputation
};

/// Minimum set of legal edges making every component biconnected.
/// Throws NoBiconnector when |A| = 1 and B is nonempty, or vice versa.
AugmentationResult augment(const BipartiteGraph& g, const SolveOptions& options = {});

/// Connected instance with |A|, |B| >= 2: exactly eta(g) edges.
AugmentationResult solve_connected(const BipartiteGraph& g, const SolveOptions& options = {});

// One-shot constructions on a classified connected instance.
std::vector<Edge> solve_s1(const BipartiteGraph& g, const ConnectedState& s);
std::vector<Edge> solve_s2(const BipartiteGraph& g, const ConnectedState& s);
std::vector<Edge> solve_s3(const BipartiteGraph& g, const ConnectedState& s);
std::vector<Edge> solve_s4_1(const BipartiteGraph& g, const ConnectedState& s);

/// Leaves of the tree reachable from the critical vertex v by a path whose
/// inner nodes all have degree two.
std::vector<BlockId> clinging_leaves(const BlockTree& tree, VertexId v);

// Cases of the general dispatcher, each on a graph of that case.
std::vector<Edge> solve_isolated_edge(const BipartiteGraph& g);  // M4, M5
std::vector<Edge> solve_m1(const BipartiteGraph& g, const SolveOptions& options = {});
std::vector<Edge> solve_m2(const BipartiteGraph& g);
/// Merge steps only; the returned graph state is M1 or M2.
std::vector<Edge> solve_m3_merges(const BipartiteGraph& g);

}  // namespace bicon
