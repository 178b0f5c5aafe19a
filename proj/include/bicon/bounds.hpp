#pragma once

#include <optional>
#include <vector>

#include "bicon/blocks.hpp"
#include "bicon/matching.hpp"

namespace bicon {

struct ComponentCensus {
    std::size_t c_total = 0;  // components that are not blocks
    std::size_t c1 = 0;       // neither isolated edges nor blocks
    std::size_t c2 = 0;       // isolated edges
    std::size_t c3 = 0;       // components that are nonsingular blocks
};

ComponentCensus census(const BipartiteGraph& g, const ComponentPartition& part,
                       const BlockDecomposition& dec);

/// Both terms of the lower bound max{max D + C - 2, M + R}; valid for any graph.
struct LowerBound {
    std::size_t d_max = 0;
    long long degree_term = 0;    // max D + C - 2
    std::size_t matching_term = 0;  // M + R
    std::size_t value() const {
        return degree_term > static_cast<long long>(matching_term)
                   ? static_cast<std::size_t>(degree_term)
                   : matching_term;
    }
};

LowerBound lower_bound(const BipartiteGraph& g, const BlockDecomposition& dec,
                       const ComponentCensus& c);

/// η(G) for a connected graph with |A|, |B| >= 2.
std::size_t eta(const BipartiteGraph& g, const BlockDecomposition& dec, const ComponentCensus& c);

struct CriticalityReport {
    std::optional<VertexId> massive;
    std::vector<VertexId> critical;  // ascending
    std::optional<VertexId> c_star;  // cut vertex of largest D, lowest id on ties
    std::size_t d_max = 0;
    std::size_t branching_nodes = 0;  // tree nodes of degree >= 3
};

/// Massive and critical cut vertices of one component, given its tree and
/// the matching profile of its pendant blocks.
CriticalityReport criticality(const BlockDecomposition& dec, const BlockTree& tree,
                              const MatchingProfile& profile);

enum class MCase : std::uint8_t { None, M1, M2, M3, M4, M5, M6 };
enum class SCase : std::uint8_t { None, S1, S2, S3, S4_1, S4_2, S5 };

const char* to_string(MCase c);
const char* to_string(SCase c);

struct CaseLabel {
    MCase m_case = MCase::None;
    SCase s_case = SCase::None;
    bool operator==(const CaseLabel&) const = default;
};

std::string to_string(const CaseLabel& c);

CaseLabel classify_m(const BipartiteGraph& g, const ComponentCensus& c,
                     const MatchingProfile& profile);

CaseLabel classify_s(const BlockTree& tree, const MatchingProfile& profile,
                     const CriticalityReport& report);

/// Everything the connected-case solver needs about one component.
struct ConnectedState {
    BlockDecomposition dec;
    BlockTree tree;
    MatchingProfile profile;
    CriticalityReport report;
    CaseLabel label;
};

/// Decomposes a connected graph and classifies it. An already biconnected
/// graph gets a single-node tree and label S1.
ConnectedState analyze_connected(const BipartiteGraph& g, OpCounters* counters = nullptr);
/// Same, reusing a decomposition already computed for g.
ConnectedState analyze_connected(const BipartiteGraph& g, BlockDecomposition dec,
                                 OpCounters* counters = nullptr);

}  // namespace bicon
