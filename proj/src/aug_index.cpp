#include "bicon/aug_index.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "radix.hpp"

namespace bicon {

void list_push_back(ListHead& list, Links& links, std::uint32_t x) {
    links.prev[x] = list.tail;
    links.next[x] = kNone;
    if (list.tail == kNone) {
        list.head = x;
    } else {
        links.next[list.tail] = x;
    }
    list.tail = x;
    ++list.size;
}

void list_unlink(ListHead& list, Links& links, std::uint32_t x) {
    const std::uint32_t p = links.prev[x];
    const std::uint32_t n = links.next[x];
    if (p == kNone) {
        list.head = n;
    } else {
        links.next[p] = n;
    }
    if (n == kNone) {
        list.tail = p;
    } else {
        links.prev[n] = p;
    }
    links.prev[x] = links.next[x] = kNone;
    --list.size;
}

std::vector<std::uint32_t> list_items(const ListHead& list, const Links& links) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = list.head; x != kNone; x = links.next[x]) out.push_back(x);
    return out;
}

int code_slot(std::uint8_t code) {
    for (int s = 0; s < 10; ++s) {
        if (kCodes[s] == code) return s;
    }
    return -1;
}

std::uint8_t type_bit(PendantType t) {
    switch (t) {
        case PendantType::A: return 4;
        case PendantType::B: return 2;
        case PendantType::AB: return 1;
    }
    return 0;
}

LeafInfo leaf_info(const PendantBlock& p) {
    LeafInfo info;
    info.type = p.type;
    info.rep_a = p.noncut_a.empty() ? kNone : p.noncut_a.front();
    info.rep_b = p.noncut_b.empty() ? kNone : p.noncut_b.front();
    info.label = p.block;
    return info;
}

Edge binding_edge(const LeafInfo& x, const LeafInfo& y) {
    auto e = choose_binding(x.rep_a, x.rep_b, x.label, y.rep_a, y.rep_b, y.label);
    if (!e) throw std::logic_error("binding edge requested for an illegal pair");
    return *e;
}

namespace {

constexpr std::array<std::pair<PendantType, PendantType>, 7> kTypePairs{{
    {PendantType::A, PendantType::B},
    {PendantType::B, PendantType::A},
    {PendantType::A, PendantType::AB},
    {PendantType::AB, PendantType::A},
    {PendantType::B, PendantType::AB},
    {PendantType::AB, PendantType::B},
    {PendantType::AB, PendantType::AB},
}};

// Whether removing one leaf of each type lowers M by exactly one.
bool lowers_m(const std::array<std::size_t, 3>& n, PendantType x, PendantType y) {
    auto rest = n;
    auto ix = static_cast<std::size_t>(x);
    auto iy = static_cast<std::size_t>(y);
    if (rest[ix] == 0) return false;
    --rest[ix];
    if (rest[iy] == 0) return false;
    --rest[iy];
    const std::size_t m = MatchingProfile::from_counts(n[0], n[1], n[2]).m_val;
    return m > 0 && MatchingProfile::from_counts(rest[0], rest[1], rest[2]).m_val + 1 == m;
}

}  // namespace

// ---------------------------------------------------------------------------
// AugTreeIndex

NodeId AugTreeIndex::add_node(bool is_c) {
    auto x = static_cast<NodeId>(deg_.size());
    alive_.push_back(true);
    is_c_.push_back(is_c);
    deg_.push_back(0);
    nchild_.push_back(0);
    code_.push_back(0);
    slot_.push_back(0xff);
    std::array<std::uint32_t, 10> empty;
    empty.fill(kNone);
    heads_.push_back(empty);
    tails_.push_back(empty);
    sib_.grow(deg_.size());
    group_links_.grow(deg_.size());
    leaf_.emplace_back();
    return x;
}

void AugTreeIndex::reserve(std::size_t nodes) {
    alive_.reserve(nodes);
    is_c_.reserve(nodes);
    deg_.reserve(nodes);
    nchild_.reserve(nodes);
    code_.reserve(nodes);
    slot_.reserve(nodes);
    heads_.reserve(nodes);
    tails_.reserve(nodes);
    sib_.reserve(nodes);
    group_links_.reserve(nodes);
    leaf_.reserve(nodes);
}

AugTreeIndex AugTreeIndex::build(const BlockTree& tree, const BlockDecomposition& dec, NodeId root,
                                 OpCounters* counters) {
    (void)counters;
    if (root >= tree.size() || tree.degree(root) < 2) {
        throw Error(ErrorKind::Precondition, "index root must have degree at least two");
    }
    AugTreeIndex idx;
    const std::size_t n = tree.size();
    idx.reserve(n + n / 2 + 1);  // each insertion adds one merged node and removes at least two
    for (NodeId x = 0; x < n; ++x) {
        idx.add_node(tree.nodes[x].is_c());
        idx.deg_[x] = static_cast<std::uint32_t>(tree.degree(x));
        if (tree.degree(x) == 1) {
            const PendantBlock* p = dec.pendant(tree.nodes[x].ref);
            if (!p || !tree.nodes[x].is_b()) throw std::logic_error("tree leaf is not a pendant block");
            idx.leaf_[x] = leaf_info(*p);
            ++idx.leaf_count_[static_cast<std::size_t>(p->type)];
        }
        if (tree.degree(x) >= 3) ++idx.branching_;
    }
    idx.root_ = root;

    // Orient from the root; the parent array is scratch only.
    std::vector<NodeId> parent(n, kNone), order;
    order.reserve(n);
    std::vector<NodeId> stack{root};
    parent[root] = root;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (NodeId w : tree.adj[u]) {
            if (parent[w] == kNone) {
                parent[w] = u;
                stack.push_back(w);
            }
        }
    }
    idx.ops_.tree_traversals += n;
    // Codes bottom-up from the scratch orientation, then link children in
    // increasing node order so list order is stable.
    std::vector<std::uint8_t> acc(n, 0);
    std::vector<std::uint32_t> kids(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeId x = *it;
        idx.code_[x] = kids[x] == 0 ? type_bit(idx.leaf_[x].type)
                                    : static_cast<std::uint8_t>((kids[x] >= 2 ? 8 : 0) | acc[x]);
        ++idx.ops_.code_updates;
        if (x == root) continue;
        acc[parent[x]] |= idx.code_[x];
        ++kids[parent[x]];
    }
    for (NodeId x = 0; x < n; ++x) {
        if (x != root) idx.link_child(parent[x], x);
    }

    std::size_t max_deg = 0;
    for (NodeId x = 0; x < n; ++x) max_deg = std::max<std::size_t>(max_deg, idx.deg_[x]);
    idx.groups_.assign(max_deg + 1, {});
    idx.chain_prev_.assign(max_deg + 1, kNone);
    idx.chain_next_.assign(max_deg + 1, kNone);
    for (NodeId x = 0; x < n; ++x) {
        if (idx.is_c_[x] && idx.deg_[x] >= 3) list_push_back(idx.groups_[idx.deg_[x]], idx.group_links_, x);
    }
    for (std::uint32_t d = 3; d <= max_deg; ++d) {
        if (idx.groups_[d].size == 0) continue;
        idx.chain_prev_[d] = idx.chain_tail_;
        if (idx.chain_tail_ == kNone) {
            idx.chain_head_ = d;
        } else {
            idx.chain_next_[idx.chain_tail_] = d;
        }
        idx.chain_tail_ = d;
    }
    return idx;
}

void AugTreeIndex::recompute_code(NodeId x) {
    ++ops_.code_updates;
    if (nchild_[x] == 0) {
        code_[x] = type_bit(leaf_[x].type);
        return;
    }
    std::uint8_t bits = nchild_[x] >= 2 ? 8 : 0;
    for (int s = 0; s < 10; ++s) {
        if (heads_[x][s] != kNone) bits |= kCodes[s];
    }
    code_[x] = bits;
}

void AugTreeIndex::link_child(NodeId parent, NodeId child) {
    const int s = code_slot(code_[child]);
    if (s < 0) throw std::logic_error("invalid subtree code");
    slot_[child] = static_cast<std::uint8_t>(s);
    sib_.prev[child] = tails_[parent][s];
    sib_.next[child] = kNone;
    if (tails_[parent][s] == kNone) {
        heads_[parent][s] = child;
    } else {
        sib_.next[tails_[parent][s]] = child;
    }
    tails_[parent][s] = child;
    ++nchild_[parent];
    ++ops_.list_links;
}

void AugTreeIndex::unlink_child(NodeId parent, NodeId child) {
    const int s = slot_[child];
    const std::uint32_t p = sib_.prev[child];
    const std::uint32_t n = sib_.next[child];
    if (p == kNone) {
        heads_[parent][s] = n;
    } else {
        sib_.next[p] = n;
    }
    if (n == kNone) {
        tails_[parent][s] = p;
    } else {
        sib_.prev[n] = p;
    }
    sib_.prev[child] = sib_.next[child] = kNone;
    --nchild_[parent];
    ++ops_.list_unlinks;
}

std::vector<NodeId> AugTreeIndex::children(NodeId x) const {
    std::vector<NodeId> out;
    for (int s = 0; s < 10; ++s) {
        for (std::uint32_t c = heads_[x][s]; c != kNone; c = sib_.next[c]) out.push_back(c);
    }
    return out;
}

std::vector<NodeId> AugTreeIndex::leaves() const {
    std::vector<NodeId> out;
    for (NodeId x = 0; x < node_count(); ++x) {
        if (alive_[x] && x != root_ && nchild_[x] == 0) out.push_back(x);
    }
    return out;
}

MatchingProfile AugTreeIndex::profile() const {
    return MatchingProfile::from_counts(leaf_count_[0], leaf_count_[1], leaf_count_[2]);
}

std::optional<NodeId> AugTreeIndex::c_star() const {
    if (chain_tail_ == kNone) return std::nullopt;
    return groups_[chain_tail_].head;
}

std::size_t AugTreeIndex::group_size(std::size_t degree) const {
    return degree < groups_.size() ? groups_[degree].size : 0;
}

std::vector<NodeId> AugTreeIndex::group(std::size_t degree) const {
    if (degree >= groups_.size()) return {};
    return list_items(groups_[degree], group_links_);
}

std::vector<std::size_t> AugTreeIndex::group_degrees() const {
    std::vector<std::size_t> out;
    for (std::uint32_t d = chain_head_; d != kNone; d = chain_next_[d]) out.push_back(d);
    return out;
}

void AugTreeIndex::group_remove(NodeId x) {
    const std::uint32_t d = deg_[x];
    list_unlink(groups_[d], group_links_, x);
    ++ops_.list_unlinks;
    if (groups_[d].size > 0) return;
    const std::uint32_t p = chain_prev_[d], n = chain_next_[d];
    if (p == kNone) {
        chain_head_ = n;
    } else {
        chain_next_[p] = n;
    }
    if (n == kNone) {
        chain_tail_ = p;
    } else {
        chain_prev_[n] = p;
    }
    chain_prev_[d] = chain_next_[d] = kNone;
}

void AugTreeIndex::group_decrement(NodeId x) {
    const std::uint32_t d = deg_[x];
    if (d - 1 >= 3 && groups_[d - 1].size == 0) {
        // Chain the new group in just below d, which still holds x.
        const std::uint32_t below = chain_prev_[d];
        chain_prev_[d - 1] = below;
        chain_next_[d - 1] = d;
        chain_prev_[d] = d - 1;
        if (below == kNone) {
            chain_head_ = d - 1;
        } else {
            chain_next_[below] = d - 1;
        }
    }
    group_remove(x);
    --deg_[x];
    if (deg_[x] >= 3) {
        list_push_back(groups_[deg_[x]], group_links_, x);
        ++ops_.list_links;
    }
}

void AugTreeIndex::reroot_along(const std::vector<NodeId>& path) {
    ops_.tree_traversals += path.size();
    for (std::size_t i = 0; i + 1 < path.size(); ++i) unlink_child(path[i], path[i + 1]);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        recompute_code(path[i]);
        link_child(path[i + 1], path[i]);
    }
    recompute_code(path.back());
    root_ = path.back();
}

void AugTreeIndex::reroot(NodeId h) {
    if (h == root_) return;
    if (h >= node_count() || !alive_[h]) throw Error(ErrorKind::Precondition, "reroot at a dead node");
    // Search the tree for h; this is the linear-cost branch.
    ++ops_.full_reroots;
    std::vector<NodeId> from(node_count(), kNone);
    std::vector<NodeId> stack{root_};
    from[root_] = root_;
    while (!stack.empty() && from[h] == kNone) {
        NodeId u = stack.back();
        stack.pop_back();
        ++ops_.tree_traversals;
        for (int s = 0; s < 10; ++s) {
            for (std::uint32_t c = heads_[u][s]; c != kNone; c = sib_.next[c]) {
                from[c] = u;
                stack.push_back(c);
            }
        }
    }
    if (from[h] == kNone) throw Error(ErrorKind::Precondition, "reroot target not in the tree");
    std::vector<NodeId> path{h};
    while (path.back() != root_) path.push_back(from[path.back()]);
    std::reverse(path.begin(), path.end());
    if (deg_[h] < 2) throw Error(ErrorKind::Precondition, "cannot root the tree at a leaf");
    reroot_along(path);
}

std::optional<NodeId> AugTreeIndex::first_child(NodeId x, std::uint8_t need_bits,
                                                bool need_multi) const {
    for (int s = 0; s < 10; ++s) {
        if (need_multi && !(kCodes[s] & 8)) continue;
        if (need_bits && !(kCodes[s] & need_bits)) continue;
        if (heads_[x][s] != kNone) return heads_[x][s];
    }
    return std::nullopt;
}

bool AugTreeIndex::in_s4_2() const {
    if (stale_) return false;
    const MatchingProfile p = profile();
    if (p.total() <= 3 || p.m_val == 0 || branching_ <= 1) return false;
    if (auto cs = c_star()) {
        const std::size_t d = deg_[*cs];
        const std::size_t budget = p.m_val + p.r_val;
        if (d - 1 > budget) return false;
        if (d - 1 == budget && group_size(d) >= 2) return false;
    }
    return true;
}

AugTreeIndex::RerootCase AugTreeIndex::reroot_for_pair() {
    const MatchingProfile p = profile();
    if (auto cs = c_star(); cs && deg_[*cs] - 1 == p.m_val + p.r_val) {
        reroot(*cs);
        return RerootCase::Critical;
    }
    const NodeId r = root_;
    if (deg_[r] >= 3 ||
        (heads_[r][0] == kNone && heads_[r][1] == kNone && heads_[r][2] == kNone)) {
        return RerootCase::Keep;
    }
    // Degree two with a chain: walk into the other branch to the first branching node.
    auto next = first_child(r, 0, true);
    if (!next) throw std::logic_error("root has two chains in a branching instance");
    std::vector<NodeId> path{r, *next};
    while (nchild_[path.back()] == 1) path.push_back(*first_child(path.back(), 0, false));
    reroot_along(path);
    return RerootCase::Descend;
}

AugTreeIndex::Pair AugTreeIndex::find_pair() const {
    const NodeId h = root_;
    auto t_star = deg_[h] == 2 ? first_child(h, 0, false) : first_child(h, 0, true);
    if (!t_star) throw std::logic_error("no branch with two leaves below the root");
    auto descend = [&](NodeId x, std::uint8_t bit) {
        std::vector<NodeId> path{x};
        while (nchild_[path.back()] > 0) path.push_back(*first_child(path.back(), bit, false));
        ops_.tree_traversals += path.size();
        return path;
    };
    for (auto [t1, t2] : kTypePairs) {
        if (!lowers_m(leaf_count_, t1, t2)) continue;
        const std::uint8_t b1 = type_bit(t1), b2 = type_bit(t2);
        if (!(code_[*t_star] & b1)) continue;
        NodeId other = kNone;
        for (int s = 0; s < 10 && other == kNone; ++s) {
            if (!(kCodes[s] & b2)) continue;
            std::uint32_t c = heads_[h][s];
            if (c == *t_star) c = sib_.next[c];
            other = c;
        }
        if (other == kNone) continue;
        Pair pair;
        pair.down1 = descend(*t_star, b1);
        pair.down2 = descend(other, b2);
        pair.w1 = pair.down1.back();
        pair.w2 = pair.down2.back();
        return pair;
    }
    throw Error(ErrorKind::NoCrossPair, "no M-lowering pair through the root");
}

NodeId AugTreeIndex::apply_insert(const Pair& pair) {
    const NodeId h = root_;
    std::vector<NodeId> path(pair.down1.rbegin(), pair.down1.rend());
    path.push_back(h);
    path.insert(path.end(), pair.down2.begin(), pair.down2.end());
    ops_.tree_traversals += path.size();

    unlink_child(h, pair.down1.front());
    unlink_child(h, pair.down2.front());
    for (const auto* down : {&pair.down1, &pair.down2}) {
        for (std::size_t i = 0; i + 1 < down->size(); ++i) unlink_child((*down)[i], (*down)[i + 1]);
    }

    const NodeId y = add_node(false);
    std::vector<NodeId> survivors;
    for (NodeId u : path) {
        if (is_c_[u] && deg_[u] >= 3) {
            survivors.push_back(u);
            continue;
        }
        if (deg_[u] >= 3) --branching_;
        if (u == pair.w1 || u == pair.w2) --leaf_count_[static_cast<std::size_t>(leaf_[u].type)];
        for (int s = 0; s < 10; ++s) {
            if (heads_[u][s] == kNone) continue;
            if (tails_[y][s] == kNone) {
                heads_[y][s] = heads_[u][s];
            } else {
                sib_.next[tails_[y][s]] = heads_[u][s];
                sib_.prev[heads_[u][s]] = tails_[y][s];
            }
            tails_[y][s] = tails_[u][s];
            heads_[u][s] = tails_[u][s] = kNone;
            ++ops_.list_links;
        }
        nchild_[y] += nchild_[u];
        nchild_[u] = 0;
        alive_[u] = false;
    }
    for (NodeId u : survivors) {
        if (deg_[u] == 3) --branching_;
        group_decrement(u);
        recompute_code(u);
        link_child(y, u);
    }
    deg_[y] = nchild_[y];
    if (deg_[y] >= 3) ++branching_;
    recompute_code(y);
    root_ = y;
    if (deg_[y] < 2) stale_ = true;
    return y;
}

AugTreeIndex::Step AugTreeIndex::reduce() {
    Step step;
    step.reroot = reroot_for_pair();
    Pair pair = find_pair();
    step.first = leaf_[pair.w1];
    step.second = leaf_[pair.w2];
    step.edge = binding_edge(step.first, step.second);
    step.merged = apply_insert(pair);
    ++ops_.reductions;
    return step;
}

void AugTreeIndex::absorb_counters(OpCounters& into) const {
    into.adjacency_scans += ops_.adjacency_scans;
    into.tree_traversals += ops_.tree_traversals;
    into.list_links += ops_.list_links;
    into.list_unlinks += ops_.list_unlinks;
    into.code_updates += ops_.code_updates;
    into.reductions += ops_.reductions;
    into.rebuilds += ops_.rebuilds;
    into.full_reroots += ops_.full_reroots;
}

std::string AugTreeIndex::audit() const {
    if (stale_) return {};
    const std::size_t n = node_count();
    std::vector<bool> seen(n, false);
    std::vector<NodeId> order;
    std::vector<NodeId> stack{root_};
    if (root_ == kNone || !alive_[root_]) return "root is not a live node";
    seen[root_] = true;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        order.push_back(u);
        std::uint32_t count = 0;
        for (int s = 0; s < 10; ++s) {
            std::uint32_t prev = kNone;
            for (std::uint32_t c = heads_[u][s]; c != kNone; c = sib_.next[c]) {
                if (seen[c]) return "node " + std::to_string(c) + " reached twice";
                if (!alive_[c]) return "dead node " + std::to_string(c) + " still linked";
                if (sib_.prev[c] != prev) return "broken prev link at " + std::to_string(c);
                if (slot_[c] != s) return "slot mismatch at " + std::to_string(c);
                seen[c] = true;
                stack.push_back(c);
                prev = c;
                ++count;
            }
            if (tails_[u][s] != prev) return "tail mismatch at " + std::to_string(u);
        }
        if (count != nchild_[u]) return "child count mismatch at " + std::to_string(u);
        if (deg_[u] != count + (u == root_ ? 0 : 1)) return "degree mismatch at " + std::to_string(u);
    }
    std::size_t live = 0;
    for (NodeId x = 0; x < n; ++x) live += alive_[x] ? 1 : 0;
    if (live != order.size()) return "live nodes unreachable from the root";

    std::vector<std::uint8_t> expect(n, 0);
    std::array<std::size_t, 3> leaves{};
    std::size_t branching = 0;
    std::map<std::size_t, std::set<NodeId>> groups;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeId u = *it;
        auto kids = children(u);
        if (kids.empty()) {
            expect[u] = type_bit(leaf_[u].type);
            ++leaves[static_cast<std::size_t>(leaf_[u].type)];
        } else {
            std::uint8_t bits = kids.size() >= 2 ? 8 : 0;
            for (NodeId c : kids) bits |= expect[c];
            expect[u] = bits;
        }
        if (expect[u] != code_[u]) return "code mismatch at " + std::to_string(u);
        if (deg_[u] >= 3) ++branching;
        if (is_c_[u] && deg_[u] >= 3) groups[deg_[u]].insert(u);
    }
    if (leaves != leaf_count_) return "leaf counters disagree";
    if (branching != branching_) return "branching counter disagrees";
    std::size_t prev_d = 0;
    std::size_t chained = 0;
    for (std::uint32_t d = chain_head_; d != kNone; d = chain_next_[d]) {
        if (d <= prev_d) return "degree groups out of order";
        prev_d = d;
        ++chained;
        auto items = list_items(groups_[d], group_links_);
        std::set<NodeId> got(items.begin(), items.end());
        if (items.size() != groups_[d].size) return "group size mismatch";
        if (got != groups[d]) return "degree group " + std::to_string(d) + " disagrees";
    }
    if (chained != groups.size()) return "nonempty groups missing from the chain";
    return {};
}

// ---------------------------------------------------------------------------
// ChainIndex

std::uint32_t ChainIndex::add_entry(const LeafInfo& info, std::uint32_t branch) {
    auto id = static_cast<std::uint32_t>(leaf_.size());
    leaf_.push_back(info);
    branch_of_.push_back(branch);
    type_links_.grow(leaf_.size());
    branch_links_.grow(leaf_.size());
    const auto t = static_cast<std::size_t>(info.type);
    if (branch == kNone) {
        list_push_back(q_[t], type_links_, id);
    } else {
        list_push_back(nc_[t], type_links_, id);
        list_push_back(branch_leaves_[branch], branch_links_, id);
    }
    ++count_[t];
    if (ops_) ++ops_->list_links;
    return id;
}

ChainIndex ChainIndex::build(const BlockTree& tree, const BlockDecomposition& dec, NodeId r,
                             OpCounters* counters) {
    ChainIndex ci;
    ci.ops_ = counters;
    struct Found {
        LeafInfo info;
        std::uint32_t branch;
    };
    std::vector<Found> found;
    std::vector<std::size_t> per_branch;
    std::vector<NodeId> from(tree.size(), kNone);
    from[r] = r;
    std::vector<NodeId> stack;
    for (NodeId top : tree.adj[r]) {
        const auto b = static_cast<std::uint32_t>(per_branch.size());
        per_branch.push_back(0);
        stack.assign(1, top);
        from[top] = r;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            if (counters) ++counters->tree_traversals;
            if (tree.degree(u) == 1) {
                const PendantBlock* p = dec.pendant(tree.nodes[u].ref);
                if (!p) throw std::logic_error("tree leaf is not a pendant block");
                found.push_back({leaf_info(*p), b});
                ++per_branch[b];
            }
            for (NodeId w : tree.adj[u]) {
                if (from[w] == kNone) {
                    from[w] = u;
                    stack.push_back(w);
                }
            }
        }
    }
    detail::radix_sort(found, [](const Found& f) { return f.info.label; });
    ci.branch_leaves_.assign(per_branch.size(), {});
    for (std::size_t b = 0; b < per_branch.size(); ++b) ci.nonchain_ += per_branch[b] >= 2 ? 1 : 0;
    for (const Found& f : found) ci.add_entry(f.info, per_branch[f.branch] >= 2 ? f.branch : kNone);
    return ci;
}

MatchingProfile ChainIndex::profile() const {
    return MatchingProfile::from_counts(count_[0], count_[1], count_[2]);
}

bool ChainIndex::in_s5() const {
    const MatchingProfile p = profile();
    return p.total() > 3 && p.m_val > 0 && d_root() - 1 > p.m_val + p.r_val;
}

std::vector<LeafInfo> ChainIndex::q_leaves(PendantType t) const {
    std::vector<LeafInfo> out;
    for (auto id : list_items(q_[static_cast<std::size_t>(t)], type_links_)) out.push_back(leaf_[id]);
    return out;
}

ChainIndex::Pick ChainIndex::step() {
    if (q_size() < 4) throw std::logic_error("chain index: fewer than four chain leaves");
    auto remove = [&](std::uint32_t id) {
        const auto t = static_cast<std::size_t>(leaf_[id].type);
        if (branch_of_[id] == kNone) {
            list_unlink(q_[t], type_links_, id);
        } else {
            list_unlink(nc_[t], type_links_, id);
            list_unlink(branch_leaves_[branch_of_[id]], branch_links_, id);
        }
        --count_[t];
        if (ops_) ++ops_->list_unlinks;
    };
    constexpr std::size_t A = 0, B = 1, AB = 2;
    Pick pick;
    std::uint32_t y1 = kNone, y2 = kNone;
    if (q_[A].size && q_[B].size) {
        y1 = q_[A].head;
        y2 = q_[B].head;
    } else if (q_[AB].size) {
        y1 = q_[AB].head;
        if (q_[A].size) {
            y2 = q_[A].head;
        } else if (q_[B].size) {
            y2 = q_[B].head;
        } else {
            y2 = type_links_.next[y1];
        }
    }
    if (y1 != kNone && y2 != kNone) {
        pick.case_no = 1;
        pick.first = leaf_[y1];
        pick.second = leaf_[y2];
        pick.edge = binding_edge(pick.first, pick.second);
        remove(y1);
        remove(y2);
        LeafInfo merged;
        merged.type = PendantType::AB;
        merged.rep_a = std::min(pick.first.rep_a, pick.second.rep_a);
        merged.rep_b = std::min(pick.first.rep_b, pick.second.rep_b);
        merged.label = std::min(pick.first.label, pick.second.label);
        add_entry(merged, kNone);
        return pick;
    }
    // Every chain leaf has one type; pair it with a leaf of a larger branch.
    const std::size_t t = q_[A].size ? A : B;
    const std::size_t want = t == A ? B : A;
    y1 = q_[t].head;
    y2 = nc_[want].size ? nc_[want].head : nc_[AB].head;
    if (y2 == kNone) throw std::logic_error("chain index: no legal partner for a chain leaf");
    pick.case_no = 2;
    pick.first = leaf_[y1];
    pick.second = leaf_[y2];
    pick.edge = binding_edge(pick.first, pick.second);
    const std::uint32_t branch = branch_of_[y2];
    remove(y1);
    remove(y2);
    if (branch_leaves_[branch].size == 1) {
        const std::uint32_t z = branch_leaves_[branch].head;
        remove(z);
        branch_of_[z] = kNone;
        const auto tz = static_cast<std::size_t>(leaf_[z].type);
        list_push_back(q_[tz], type_links_, z);
        ++count_[tz];
        --nonchain_;
    }
    return pick;
}

std::string ChainIndex::audit() const {
    std::array<std::size_t, 3> seen{};
    std::size_t nonchain = 0;
    for (std::size_t t = 0; t < 3; ++t) {
        for (auto id : list_items(q_[t], type_links_)) {
            if (branch_of_[id] != kNone) return "chain leaf tagged with a branch";
            if (static_cast<std::size_t>(leaf_[id].type) != t) return "chain leaf in wrong list";
            ++seen[t];
        }
        for (auto id : list_items(nc_[t], type_links_)) {
            if (branch_of_[id] == kNone) return "branch leaf without a branch";
            if (static_cast<std::size_t>(leaf_[id].type) != t) return "branch leaf in wrong list";
            ++seen[t];
        }
    }
    for (const auto& b : branch_leaves_) {
        if (b.size == 1) return "branch with a single leaf not demoted";
        if (b.size >= 2) ++nonchain;
    }
    if (seen != count_) return "type counters disagree";
    if (nonchain != nonchain_) return "nonchain counter disagrees";
    return {};
}

}  // namespace bicon
