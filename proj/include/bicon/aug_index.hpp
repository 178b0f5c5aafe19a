#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bicon/blocks.hpp"
#include "bicon/matching.hpp"

namespace bicon {

/// Head of a doubly linked list threaded through index arrays.
struct ListHead {
    std::uint32_t head = kNone;
    std::uint32_t tail = kNone;
    std::uint32_t size = 0;
};

struct Links {
    std::vector<std::uint32_t> prev, next;
    void reserve(std::size_t n) {
        prev.reserve(n);
        next.reserve(n);
    }
    void grow(std::size_t n) {
        prev.resize(n, kNone);
        next.resize(n, kNone);
    }
};

void list_push_back(ListHead& list, Links& links, std::uint32_t x);
void list_unlink(ListHead& list, Links& links, std::uint32_t x);
std::vector<std::uint32_t> list_items(const ListHead& list, const Links& links);

/// Subtree codes σ0σ1σ2σ3: σ0 (8) more than one leaf, then A (4), B (2), AB (1).
inline constexpr std::array<std::uint8_t, 10> kCodes{4, 2, 1, 9, 10, 11, 12, 13, 14, 15};
int code_slot(std::uint8_t code);
std::uint8_t type_bit(PendantType t);

struct LeafInfo {
    PendantType type = PendantType::A;
    VertexId rep_a = kNone;  // smallest noncut A vertex
    VertexId rep_b = kNone;  // smallest noncut B vertex
    BlockId label = kNone;   // block id, used for tie-breaking
};

LeafInfo leaf_info(const PendantBlock& p);
Edge binding_edge(const LeafInfo& x, const LeafInfo& y);

/// Rooted block tree with per-node codes, ten code-keyed child lists per
/// node, leaf-type counters, and degree groups of c-vertices of degree >= 3.
/// Nodes store no parent pointers; orientation lives in the child lists.
class AugTreeIndex {
public:
    enum class RerootCase : std::uint8_t { Keep, Descend, Critical };

    struct Pair {
        NodeId w1 = kNone, w2 = kNone;
        std::vector<NodeId> down1, down2;  // root child .. leaf, both sides
    };

    struct Step {
        RerootCase reroot = RerootCase::Keep;
        LeafInfo first, second;
        Edge edge;
        NodeId merged = kNone;
    };

    static AugTreeIndex build(const BlockTree& tree, const BlockDecomposition& dec, NodeId root,
                              OpCounters* counters = nullptr);

    NodeId root() const { return root_; }
    std::size_t node_count() const { return deg_.size(); }
    bool alive(NodeId x) const { return alive_[x]; }
    std::uint8_t code(NodeId x) const { return code_[x]; }
    std::size_t degree(NodeId x) const { return deg_[x]; }
    bool is_c(NodeId x) const { return is_c_[x]; }
    std::vector<NodeId> children(NodeId x) const;
    const LeafInfo& leaf(NodeId x) const { return leaf_[x]; }
    std::vector<NodeId> leaves() const;

    std::array<std::size_t, 3> leaf_counts() const { return leaf_count_; }
    MatchingProfile profile() const;
    std::size_t branching_count() const { return branching_; }
    /// Head of the highest degree group: a c-vertex of largest degree.
    std::optional<NodeId> c_star() const;
    std::size_t group_size(std::size_t degree) const;
    std::vector<NodeId> group(std::size_t degree) const;
    std::vector<std::size_t> group_degrees() const;  // increasing

    /// True while the tree still describes a Case S4_2 instance.
    bool in_s4_2() const;
    // True once a merge left the new block as a leaf; the caller must rebuild.
    bool stale() const { return stale_; }

    /// Reroots at h along the tree path from the current root.
    void reroot(NodeId h);
    /// Chooses and applies the root for the next pair search.
    RerootCase reroot_for_pair();
    /// Legal pair through the root and two branching nodes that lowers M by one.
    Pair find_pair() const;
    /// Collapses the path of a pair into a new block and roots the tree there.
    NodeId apply_insert(const Pair& pair);
    /// reroot_for_pair + find_pair + apply_insert.
    Step reduce();

    /// Recomputes everything from the child lists and reports the first
    /// mismatch with the incremental state; empty when consistent.
    std::string audit() const;

    const OpCounters& counters() const { return ops_; }
    void absorb_counters(OpCounters& into) const;

private:
    void link_child(NodeId parent, NodeId child);
    void unlink_child(NodeId parent, NodeId child);
    void recompute_code(NodeId x);
    void group_decrement(NodeId x);
    void group_remove(NodeId x);
    void reroot_along(const std::vector<NodeId>& path);
    std::optional<NodeId> first_child(NodeId x, std::uint8_t need_bits, bool need_multi) const;
    NodeId add_node(bool is_c);
    void reserve(std::size_t nodes);

    NodeId root_ = kNone;
    std::vector<bool> alive_, is_c_;
    std::vector<std::uint32_t> deg_, nchild_;
    std::vector<std::uint8_t> code_, slot_;
    std::vector<std::array<std::uint32_t, 10>> heads_, tails_;
    Links sib_;  // sibling links inside a parent's slot list
    std::vector<LeafInfo> leaf_;
    std::array<std::size_t, 3> leaf_count_{};
    std::size_t branching_ = 0;
    bool stale_ = false;  // merged block left with degree < 2
    // Degree groups: one list per degree, chained in increasing degree.
    std::vector<ListHead> groups_;
    Links group_links_;
    std::vector<std::uint32_t> chain_prev_, chain_next_;
    std::uint32_t chain_head_ = kNone, chain_tail_ = kNone;
    mutable OpCounters ops_;
};

/// Leaves of the branches of a massive root r: chain leaves (Q) and leaves
/// of branches with more than one leaf, each kept in type-keyed lists.
class ChainIndex {
public:
    struct Pick {
        int case_no = 1;
        LeafInfo first, second;
        Edge edge;
    };

    static ChainIndex build(const BlockTree& tree, const BlockDecomposition& dec, NodeId r,
                            OpCounters* counters = nullptr);

    std::size_t q_size() const { return q_[0].size + q_[1].size + q_[2].size; }
    std::size_t nonchain_branches() const { return nonchain_; }
    std::size_t d_root() const { return q_size() + nonchain_; }
    MatchingProfile profile() const;
    bool in_s5() const;
    std::vector<LeafInfo> q_leaves(PendantType t) const;

    /// Picks a legal pair with one leaf in a chain and updates the lists.
    Pick step();

    std::string audit() const;

private:
    std::uint32_t add_entry(const LeafInfo& info, std::uint32_t branch);

    std::vector<LeafInfo> leaf_;
    std::vector<std::uint32_t> branch_of_;
    Links type_links_, branch_links_;
    std::array<ListHead, 3> q_{}, nc_{};
    std::vector<ListHead> branch_leaves_;
    std::size_t nonchain_ = 0;
    std::array<std::size_t, 3> count_{};
    OpCounters* ops_ = nullptr;
};

}  // namespace bicon
