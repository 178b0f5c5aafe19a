#pragma once

#include <span>
#include <vector>

#include "bicon/blocks.hpp"

namespace bicon {

/// Size of a maximum legal matching over pendant blocks, by type counts.
struct MatchingProfile {
    std::size_t n_a = 0, n_b = 0, n_ab = 0;
    std::size_t alpha = 0, beta = 0, gamma = 0;
    std::size_t m_val = 0;  // M
    std::size_t r_val = 0;  // R: blocks left unmatched

    std::size_t total() const { return n_a + n_b + n_ab; }
    static MatchingProfile from_counts(std::size_t n_a, std::size_t n_b, std::size_t n_ab);
};

MatchingProfile matching_profile(std::span<const PendantBlock> blocks);

struct LegalPair {
    PendantBlock first;
    PendantBlock second;
};

/// Greedy maximum legal matching: A-B pairs, then A-AB / B-AB, then AB-AB.
/// Within a type, blocks are taken in block-id order.
std::vector<LegalPair> maximum_legal_matching(std::span<const PendantBlock> blocks);

/// A legal pair with one block from each set whose removal lowers M of the
/// union by exactly one. Throws NoCrossPair when the sets admit no such pair.
LegalPair cross_split_pair(std::span<const PendantBlock> w1_set,
                           std::span<const PendantBlock> w2_set);

/// Binding edge between the lowest noncut vertices of the two blocks.
Edge find_binding_edge(const BipartiteGraph& g, const BlockDecomposition& dec,
                       const LegalPair& pair);

}  // namespace bicon
