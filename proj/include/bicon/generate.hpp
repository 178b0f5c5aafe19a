#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "bicon/graph.hpp"

namespace bicon {

enum class GenKind { Path, Cycle, Spider, Broom, Caterpillar, Random };

GenKind parse_gen_kind(std::string_view name);

struct GenParams {
    std::size_t length = 0;              // path, cycle: vertex count
    std::vector<std::size_t> chains;     // spider: chain lengths in edges
    std::size_t bristles = 0;            // broom: leaves per center
    std::size_t handle = 1;              // broom: odd number of edges between the centers
    std::size_t spine = 0;               // caterpillar: spine vertex count
    std::size_t legs = 0;                // caterpillar: leaves per spine vertex
    std::size_t a_count = 0;             // random
    std::size_t b_count = 0;             // random
    double p = 0.5;                      // random: edge probability
    std::uint64_t seed = 0;              // random
};

/// Builds a test or benchmark instance. Identical kind and params always
/// give the identical graph.
///
/// - path:        a1-b1-a2-b2-... with `length` vertices.
/// - cycle:       a path closed by one more edge; `length` even and >= 4.
/// - spider:      center x in A with one pendant path per entry of `chains`.
/// - broom:       centers a0 and b0 joined by a path of `handle` edges, each
///                center carrying `bristles` leaves.
/// - caterpillar: a `spine`-vertex path with `legs` leaves on every spine vertex.
/// - random:      each of the a_count*b_count pairs is an edge with probability p.
BipartiteGraph generate_instance(GenKind kind, const GenParams& params);

/// Sized families used by the benchmark: roughly `n` vertices each.
BipartiteGraph generate_sized(GenKind kind, std::size_t n, std::uint64_t seed = 1);

}  // namespace bicon
