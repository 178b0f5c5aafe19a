#include "bicon/matching.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "radix.hpp"

namespace bicon {

MatchingProfile MatchingProfile::from_counts(std::size_t n_a, std::size_t n_b, std::size_t n_ab) {
    MatchingProfile p;
    p.n_a = n_a;
    p.n_b = n_b;
    p.n_ab = n_ab;
    p.alpha = std::min(n_a, n_b);
    std::size_t gap = n_a > n_b ? n_a - n_b : n_b - n_a;
    p.beta = std::min(gap, n_ab);
    p.gamma = (n_ab - p.beta) / 2;
    p.m_val = p.alpha + p.beta + p.gamma;
    p.r_val = p.total() - 2 * p.m_val;
    return p;
}

MatchingProfile matching_profile(std::span<const PendantBlock> blocks) {
    std::array<std::size_t, 3> n{};
    for (const auto& b : blocks) ++n[static_cast<std::size_t>(b.type)];
    return MatchingProfile::from_counts(n[0], n[1], n[2]);
}

namespace {

std::array<std::vector<const PendantBlock*>, 3> by_type(std::span<const PendantBlock> blocks) {
    std::array<std::vector<const PendantBlock*>, 3> out;
    for (const auto& b : blocks) out[static_cast<std::size_t>(b.type)].push_back(&b);
    for (auto& list : out) {
        detail::radix_sort(list, [](const PendantBlock* x) { return x->block; });
    }
    return out;
}

}  // namespace

std::vector<LegalPair> maximum_legal_matching(std::span<const PendantBlock> blocks) {
    auto lists = by_type(blocks);
    auto& as = lists[0];
    auto& bs = lists[1];
    auto& abs = lists[2];
    std::vector<LegalPair> out;
    std::size_t ia = 0, ib = 0, iab = 0;
    while (ia < as.size() && ib < bs.size()) out.push_back({*as[ia++], *bs[ib++]});
    while (ia < as.size() && iab < abs.size()) out.push_back({*as[ia++], *abs[iab++]});
    while (ib < bs.size() && iab < abs.size()) out.push_back({*bs[ib++], *abs[iab++]});
    while (iab + 1 < abs.size()) {
        out.push_back({*abs[iab], *abs[iab + 1]});
        iab += 2;
    }
    return out;
}

LegalPair cross_split_pair(std::span<const PendantBlock> w1_set,
                           std::span<const PendantBlock> w2_set) {
    if (w1_set.empty() || w2_set.empty()) {
        throw Error(ErrorKind::Precondition, "cross_split_pair needs two nonempty sets");
    }
    auto l1 = by_type(w1_set);
    auto l2 = by_type(w2_set);
    std::array<std::size_t, 3> n{};
    for (int t = 0; t < 3; ++t) n[t] = l1[t].size() + l2[t].size();
    const std::size_t m = MatchingProfile::from_counts(n[0], n[1], n[2]).m_val;
    constexpr std::array<std::pair<int, int>, 7> order{
        {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}, {2, 2}}};
    for (auto [x, y] : order) {
        if (l1[x].empty() || l2[y].empty()) continue;
        auto rest = n;
        --rest[x];
        --rest[y];
        if (m > 0 && MatchingProfile::from_counts(rest[0], rest[1], rest[2]).m_val + 1 == m) {
            return {*l1[x].front(), *l2[y].front()};
        }
    }
    throw Error(ErrorKind::NoCrossPair, "no legal pair across the two sets lowers M");
}

Edge find_binding_edge(const BipartiteGraph& g, const BlockDecomposition& dec,
                       const LegalPair& pair) {
    (void)dec;
    auto front = [](const SmallIds& v) { return v.empty() ? kNone : v.front(); };
    const auto& p = pair.first;
    const auto& q = pair.second;
    auto e = choose_binding(front(p.noncut_a), front(p.noncut_b), p.block, front(q.noncut_a),
                            front(q.noncut_b), q.block);
    if (!e || !compatible(p.type, q.type)) {
        throw Error(ErrorKind::Precondition, "find_binding_edge: not a legal pair");
    }
    if (g.has_edge(e->a, e->b)) {
        throw std::logic_error("binding edge (" + g.name(e->a) + ", " + g.name(e->b) +
                               ") already present");
    }
    return *e;
}

}  // namespace bicon
