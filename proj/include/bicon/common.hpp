#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bicon {

using VertexId = std::uint32_t;
using BlockId = std::uint32_t;
using NodeId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

enum class Side : std::uint8_t { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

// An edge of a bipartite graph, always stored with the A endpoint first.
struct Edge {
    VertexId a = kNone;
    VertexId b = kNone;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class ErrorKind {
    Parse,
    DuplicateVertex,
    BipartitenessViolation,
    DuplicateEdge,
    UnknownVertex,
    SelfLoop,
    IllegalEdge,
    InvalidParams,
    Precondition,
    SingularComponent,
    NoBiconnector,
    NoCrossPair,
    CapExceeded,
    ClingPartitionViolation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Work counters for the solver. Each field counts one kind of elementary
// step, so growth can be compared across input sizes without timing noise.
struct OpCounters {
    std::uint64_t adjacency_scans = 0;   // graph edges examined by DFS/BFS passes
    std::uint64_t tree_traversals = 0;   // block-tree edges walked
    std::uint64_t list_links = 0;        // intrusive list insertions
    std::uint64_t list_unlinks = 0;      // intrusive list removals
    std::uint64_t code_updates = 0;      // subtree code recomputations
    std::uint64_t reductions = 0;        // single-edge reduction steps
    std::uint64_t rebuilds = 0;          // from-scratch decompositions of the working graph
    std::uint64_t full_reroots = 0;      // O(n) reroots of the augmented tree index

    std::uint64_t total() const {
        return adjacency_scans + tree_traversals + list_links + list_unlinks + code_updates +
               reductions;
    }
};

}  // namespace bicon
