#include "bicon/augment.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "radix.hpp"

namespace bicon {

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

bool lowers_m(const std::array<std::size_t, 3>& n, PendantType x, PendantType y) {
    auto rest = n;
    auto ix = static_cast<std::size_t>(x), iy = static_cast<std::size_t>(y);
    if (rest[ix] == 0) return false;
    --rest[ix];
    if (rest[iy] == 0) return false;
    --rest[iy];
    const std::size_t m = MatchingProfile::from_counts(n[0], n[1], n[2]).m_val;
    return m > 0 && MatchingProfile::from_counts(rest[0], rest[1], rest[2]).m_val + 1 == m;
}

// Appends edges to the working graph and the result, keeping the trace.
struct Sink {
    BipartiteGraph& work;
    AugmentationResult& res;
    bool fresh_batch = false;

    void begin_batch() { fresh_batch = true; }
    void add(const Edge& e, CaseLabel label, std::string rule, bool reduction) {
        work.add_edge(e.a, e.b);
        res.added_edges.push_back(e);
        TraceEntry t;
        t.edge = e;
        t.label = label;
        t.rule = std::move(rule);
        t.reduction = reduction;
        t.batch_start = fresh_batch;
        fresh_batch = false;
        res.trace.push_back(std::move(t));
    }
};

struct GeneralState {
    ComponentPartition part;
    BlockDecomposition dec;
    ComponentCensus cen;
    MatchingProfile profile;
    CaseLabel label;
};

GeneralState analyze_general(const BipartiteGraph& g, OpCounters* counters) {
    GeneralState s;
    s.part = connected_components(g, counters);
    s.dec = decompose(g, counters);
    s.cen = census(g, s.part, s.dec);
    s.profile = matching_profile(s.dec.pendant_blocks);
    s.label = classify_m(g, s.cen, s.profile);
    return s;
}

bool is_nonblock(const GeneralState& s, const std::vector<VertexId>& members) {
    if (members.size() == 2) return true;
    if (members.size() < 2) return false;
    return std::any_of(members.begin(), members.end(),
                       [&](VertexId v) { return s.dec.is_cut_vertex[v]; });
}

VertexId lowest_on_side(const BipartiteGraph& g, const std::vector<VertexId>& members, Side side,
                        std::size_t skip = 0) {
    for (VertexId v : members) {
        if (g.side(v) != side) continue;
        if (skip == 0) return v;
        --skip;
    }
    return kNone;
}

std::vector<Edge> isolated_edge_edges(const BipartiteGraph& g, const GeneralState& s) {
    VertexId r = kNone, c = kNone;
    VertexId iso_a = kNone, iso_b = kNone;
    const std::vector<VertexId>* block = nullptr;
    for (const auto& members : s.part.members) {
        if (members.size() == 2 && r == kNone) {
            r = g.side(members[0]) == Side::A ? members[0] : members[1];
            c = g.side(members[0]) == Side::A ? members[1] : members[0];
        } else if (members.size() == 1) {
            VertexId v = members[0];
            VertexId& slot = g.side(v) == Side::A ? iso_a : iso_b;
            if (slot == kNone) slot = v;
        } else if (members.size() >= 3 && !block && !is_nonblock(s, members)) {
            block = &members;
        }
    }
    if (s.label.m_case == MCase::M4) {
        if (iso_a == kNone || iso_b == kNone) throw std::logic_error("M4 without isolated vertices");
        return {Edge{r, iso_b}, Edge{iso_a, c}, Edge{iso_a, iso_b}};
    }
    if (s.label.m_case != MCase::M5 || !block) {
        throw Error(ErrorKind::Precondition, "isolated-edge construction needs case M4 or M5");
    }
    VertexId ra = lowest_on_side(g, *block, Side::A);
    VertexId cb = lowest_on_side(g, *block, Side::B);
    return {Edge{ra, c}, Edge{r, cb}};
}

std::vector<Edge> m2_edges(const BipartiteGraph& g, const GeneralState& s) {
    if (s.dec.pendant_blocks.empty()) throw Error(ErrorKind::Precondition, "no pendant blocks");
    const PendantType t = s.dec.pendant_blocks.front().type;
    const Side pendant_side = t == PendantType::A ? Side::A : Side::B;
    std::vector<std::uint32_t> comps;
    std::vector<std::uint32_t> rank(s.part.count(), kNone);
    for (std::uint32_t i = 0; i < s.part.count(); ++i) {
        if (is_nonblock(s, s.part.members[i])) {
            rank[i] = static_cast<std::uint32_t>(comps.size());
            comps.push_back(i);
        }
    }
    std::vector<VertexId> y(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        y[i] = lowest_on_side(g, s.part.members[comps[i]], other(pendant_side));
    }
    std::vector<std::vector<Edge>> per_comp(comps.size());
    for (const PendantBlock& p : s.dec.pendant_blocks) {
        if (p.type != t) throw Error(ErrorKind::Precondition, "M2 needs one pendant type");
        VertexId x = t == PendantType::A ? p.noncut_a.front() : p.noncut_b.front();
        std::uint32_t i = rank[s.part.component_of[x]];
        per_comp[i].push_back(make_edge(g, x, y[(i + 1) % comps.size()]));
    }
    std::vector<Edge> out;
    for (auto& list : per_comp) out.insert(out.end(), list.begin(), list.end());
    return out;
}

// Returns star edges, or an empty vector with `sub` filled when the
// component is large enough for the connected solver.
std::vector<Edge> m1_star_edges(const BipartiteGraph& g, const GeneralState& s,
                                std::vector<VertexId>& sub, std::string& rule) {
    const std::vector<VertexId>* g1 = nullptr;
    for (const auto& members : s.part.members) {
        if (members.size() >= 3 && is_nonblock(s, members)) g1 = &members;
    }
    if (!g1) throw Error(ErrorKind::Precondition, "M1 needs a non-block component");
    std::size_t na = 0, nb = 0;
    for (VertexId v : *g1) (g.side(v) == Side::A ? na : nb) += 1;
    if (na >= 2 && nb >= 2) {
        sub = *g1;
        return {};
    }
    const Side center_side = na == 1 ? Side::A : Side::B;
    std::vector<VertexId> leaves;
    for (VertexId v : *g1) {
        if (g.side(v) != center_side) leaves.push_back(v);
    }
    VertexId w = kNone;
    const std::vector<VertexId>* block = nullptr;
    for (const auto& members : s.part.members) {
        if (members.size() == 1 && g.side(members[0]) == center_side && w == kNone) w = members[0];
        if (members.size() >= 3 && !block && !is_nonblock(s, members)) block = &members;
    }
    std::vector<Edge> out;
    if (w != kNone) {
        rule = "m1-star-isolated";
        for (VertexId v : leaves) out.push_back(make_edge(g, w, v));
        return out;
    }
    if (!block) throw std::logic_error("M1 star without an isolated vertex or a block");
    rule = "m1-star-block";
    VertexId w1 = lowest_on_side(g, *block, center_side, 0);
    VertexId w2 = lowest_on_side(g, *block, center_side, 1);
    out.push_back(make_edge(g, w1, leaves[0]));
    for (std::size_t i = 1; i < leaves.size(); ++i) out.push_back(make_edge(g, w2, leaves[i]));
    return out;
}

void solve_connected_into(Sink& sink, MCase m, bool set_target, const SolveOptions& options,
                          std::optional<BlockDecomposition> first = std::nullopt);

void run_m1(Sink& sink, GeneralState& s, const SolveOptions& options) {
    std::vector<VertexId> sub_members;
    std::string rule;
    auto edges = m1_star_edges(sink.work, s, sub_members, rule);
    if (sub_members.empty()) {
        sink.begin_batch();
        for (const Edge& e : edges) sink.add(e, s.label, rule, false);
        return;
    }
    if (sub_members.size() == sink.work.vertex_count()) {
        solve_connected_into(sink, MCase::M1, false, options, std::move(s.dec));
        return;
    }
    BipartiteGraph sub = induced_subgraph(sink.work, sub_members);
    AugmentationResult inner = solve_connected(sub, options);
    if (sink.res.initial.s_case == SCase::None) sink.res.initial.s_case = inner.initial.s_case;
    for (const TraceEntry& t : inner.trace) {
        CaseLabel label{MCase::M1, t.label.s_case};
        Edge e{sub_members[t.edge.a], sub_members[t.edge.b]};
        if (t.batch_start) sink.begin_batch();
        sink.add(e, label, t.rule, t.reduction);
    }
    OpCounters& c = sink.res.counters;
    const OpCounters& d = inner.counters;
    c.adjacency_scans += d.adjacency_scans;
    c.tree_traversals += d.tree_traversals;
    c.list_links += d.list_links;
    c.list_unlinks += d.list_unlinks;
    c.code_updates += d.code_updates;
    c.reductions += d.reductions;
    c.rebuilds += d.rebuilds;
    c.full_reroots += d.full_reroots;
}

void run_m3(Sink& sink, const GeneralState& s) {
    const auto& pend = s.dec.pendant_blocks;
    using Key = std::pair<BlockId, std::uint32_t>;
    std::array<std::set<Key>, 3> w1, w2;
    std::vector<std::vector<std::uint32_t>> by_comp(s.part.count());
    std::vector<std::uint32_t> comp_of_pendant(pend.size());
    for (std::uint32_t i = 0; i < pend.size(); ++i) {
        const BlockInfo& b = s.dec.blocks[pend[i].block];
        comp_of_pendant[i] = s.part.component_of[b.vertices[0]];
        by_comp[comp_of_pendant[i]].push_back(i);
    }
    std::uint32_t home = kNone;
    std::size_t outside = 0;
    for (std::uint32_t c = 0; c < s.part.count(); ++c) {
        if (by_comp[c].empty()) continue;
        if (home == kNone) {
            home = c;
        } else {
            ++outside;
        }
        for (std::uint32_t i : by_comp[c]) {
            (c == home ? w1 : w2)[static_cast<std::size_t>(pend[i].type)].emplace(pend[i].block, i);
        }
    }
    std::vector<bool> removed(pend.size(), false);
    while (outside > 0) {
        std::array<std::size_t, 3> n{};
        for (std::size_t t = 0; t < 3; ++t) n[t] = w1[t].size() + w2[t].size();
        if (MatchingProfile::from_counts(n[0], n[1], n[2]).m_val == 0) break;
        bool found = false;
        for (auto [x, y] : kTypePairs) {
            auto ix = static_cast<std::size_t>(x), iy = static_cast<std::size_t>(y);
            if (w1[ix].empty() || w2[iy].empty() || !lowers_m(n, x, y)) continue;
            std::uint32_t p1 = w1[ix].begin()->second;
            std::uint32_t p2 = w2[iy].begin()->second;
            Edge e = binding_edge(leaf_info(pend[p1]), leaf_info(pend[p2]));
            CaseLabel label{MCase::M3, SCase::None};
            sink.add(e, label, "m3-merge", true);
            w1[ix].erase(w1[ix].begin());
            w2[iy].erase(w2[iy].begin());
            removed[p1] = removed[p2] = true;
            for (std::uint32_t i : by_comp[comp_of_pendant[p2]]) {
                if (removed[i]) continue;
                auto t = static_cast<std::size_t>(pend[i].type);
                w2[t].erase({pend[i].block, i});
                w1[t].emplace(pend[i].block, i);
            }
            --outside;
            found = true;
            break;
        }
        if (!found) throw Error(ErrorKind::NoCrossPair, "no M-lowering pair across components");
    }
}

std::size_t connected_eta(const ConnectedState& st) {
    const long long c = st.tree.size() > 1 ? 1 : 0;
    const long long degree_term = static_cast<long long>(st.report.d_max) + c - 2;
    const std::size_t matching_term = st.profile.m_val + st.profile.r_val;
    return degree_term > static_cast<long long>(matching_term) ? static_cast<std::size_t>(degree_term)
                                                               : matching_term;
}

}  // namespace

std::vector<BlockId> clinging_leaves(const BlockTree& tree, VertexId v) {
    auto node = tree.find_cut_vertex(v);
    if (!node) throw Error(ErrorKind::Precondition, "clinging leaves need a cut vertex");
    std::vector<BlockId> out;
    for (NodeId w : tree.adj[*node]) {
        NodeId prev = *node, cur = w;
        while (tree.degree(cur) == 2) {
            NodeId next = tree.adj[cur][0] == prev ? tree.adj[cur][1] : tree.adj[cur][0];
            prev = cur;
            cur = next;
        }
        if (tree.degree(cur) == 1) out.push_back(tree.nodes[cur].ref);
    }
    detail::radix_sort(out);
    return out;
}

std::vector<Edge> solve_s2(const BipartiteGraph& g, const ConnectedState& s) {
    const auto& pend = s.dec.pendant_blocks;
    if (pend.empty()) throw Error(ErrorKind::Precondition, "S2 construction needs pendant blocks");
    for (const auto& p : pend) {
        if (!p.singular || p.type != pend.front().type) {
            throw Error(ErrorKind::Precondition, "S2 construction needs singular pendants of one type");
        }
    }
    auto y_of = [&](const PendantBlock& p) { return s.dec.blocks[p.block].vertices[0]; };
    const VertexId x1 = g.neighbors(y_of(pend.front()))[0];
    const auto& same_side = g.side(x1) == Side::A ? g.a_vertices() : g.b_vertices();
    VertexId xj = kNone;
    for (VertexId v : same_side) {
        if (v != x1) {
            xj = v;
            break;
        }
    }
    if (xj == kNone) throw Error(ErrorKind::Precondition, "S2 construction needs two hub candidates");
    // Component of G - x1 containing xj.
    std::vector<bool> in_sub(g.vertex_count(), false);
    std::vector<VertexId> stack{xj};
    in_sub[xj] = true;
    in_sub[x1] = true;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (VertexId w : g.neighbors(u)) {
            if (!in_sub[w]) {
                in_sub[w] = true;
                stack.push_back(w);
            }
        }
    }
    in_sub[x1] = false;
    std::vector<Edge> out;
    for (const auto& p : pend) {
        VertexId y = y_of(p);
        out.push_back(make_edge(g, y, in_sub[y] ? x1 : xj));
    }
    return out;
}

std::vector<Edge> solve_s3(const BipartiteGraph& g, const ConnectedState& s) {
    if (s.report.critical.size() != 2) throw Error(ErrorKind::Precondition, "S3 needs two critical vertices");
    const auto& pend = s.dec.pendant_blocks;
    auto c1 = clinging_leaves(s.tree, s.report.critical[0]);
    auto c2 = clinging_leaves(s.tree, s.report.critical[1]);
    std::vector<BlockId> both;
    std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(both));
    if (2 * c1.size() != pend.size() || 2 * c2.size() != pend.size() || !both.empty()) {
        throw Error(ErrorKind::ClingPartitionViolation,
                    "leaves do not split evenly between the two critical vertices");
    }
    std::array<std::vector<const PendantBlock*>, 3> side1, side2;
    for (BlockId b : c1) side1[static_cast<std::size_t>(s.dec.pendant(b)->type)].push_back(s.dec.pendant(b));
    for (BlockId b : c2) side2[static_cast<std::size_t>(s.dec.pendant(b)->type)].push_back(s.dec.pendant(b));
    constexpr std::array<std::pair<int, int>, 7> order{
        {{0, 1}, {1, 0}, {0, 2}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}};
    std::array<std::size_t, 3> i1{}, i2{};
    std::vector<Edge> out;
    for (auto [x, y] : order) {
        while (i1[x] < side1[x].size() && i2[y] < side2[y].size()) {
            out.push_back(find_binding_edge(g, s.dec, {*side1[x][i1[x]++], *side2[y][i2[y]++]}));
        }
    }
    if (2 * out.size() != pend.size()) {
        throw std::logic_error("no perfect matching between the two clinging sets");
    }
    return out;
}

std::vector<Edge> solve_s4_1(const BipartiteGraph& g, const ConnectedState& s) {
    const auto& pend = s.dec.pendant_blocks;
    auto n1 = maximum_legal_matching(pend);
    if (n1.empty()) throw Error(ErrorKind::Precondition, "S4_1 construction needs M > 0");
    std::set<BlockId> matched;
    std::vector<Edge> out;
    for (const auto& pair : n1) {
        matched.insert(pair.first.block);
        matched.insert(pair.second.block);
        out.push_back(find_binding_edge(g, s.dec, pair));
    }
    for (const auto& p : pend) {
        if (matched.count(p.block)) continue;
        const PendantBlock* partner = nullptr;
        for (BlockId b : matched) {
            if (compatible(p.type, s.dec.pendant(b)->type)) {
                partner = s.dec.pendant(b);
                break;
            }
        }
        if (!partner) throw std::logic_error("unmatched pendant without a compatible partner");
        out.push_back(find_binding_edge(g, s.dec, {p, *partner}));
    }
    return out;
}

std::vector<Edge> solve_s1(const BipartiteGraph& g, const ConnectedState& s) {
    const auto& pend = s.dec.pendant_blocks;
    if (pend.size() > 3) throw Error(ErrorKind::Precondition, "S1 needs at most three pendant blocks");
    if (pend.empty()) return {};
    if (pend.size() == 2 && compatible(pend[0].type, pend[1].type)) {
        return {find_binding_edge(g, s.dec, {pend[0], pend[1]})};
    }
    if (s.profile.m_val == 0) return solve_s2(g, s);
    return solve_s4_1(g, s);
}

namespace {

// Runs the connected solver on sink.work in place. Trace labels carry `m`.
void solve_connected_into(Sink& sink, MCase m, bool set_target, const SolveOptions& options,
                          std::optional<BlockDecomposition> first) {
    AugmentationResult& res = sink.res;
    for (int round = 0;; ++round) {
        if (round > 6) throw std::logic_error("connected solver did not settle");
        ConnectedState st = round == 0 && first ? analyze_connected(sink.work, std::move(*first), &res.counters)
                                                : analyze_connected(sink.work, &res.counters);
        ++res.counters.rebuilds;
        if (round == 0 && set_target) {
            res.initial = st.label;
            res.target = connected_eta(st);
        } else if (round == 0 && res.initial.s_case == SCase::None) {
            res.initial.s_case = st.label.s_case;
        }
        const CaseLabel label{m, st.label.s_case};
        auto batch = [&](const std::vector<Edge>& edges, const char* rule) {
            sink.begin_batch();
            for (const Edge& e : edges) sink.add(e, label, rule, false);
        };
        switch (label.s_case) {
            case SCase::S1:
                batch(solve_s1(sink.work, st), "s1");
                return;
            case SCase::S2:
                batch(solve_s2(sink.work, st), "s2-hub");
                return;
            case SCase::S3:
                batch(solve_s3(sink.work, st), "s3-cross");
                return;
            case SCase::S4_1:
                batch(solve_s4_1(sink.work, st), "s4_1-cover");
                return;
            case SCase::S4_2: {
                AugTreeIndex idx = AugTreeIndex::build(st.tree, st.dec, st.tree.root);
                while (idx.in_s4_2()) {
                    AugTreeIndex::Step step = idx.reduce();
                    if (options.audit) {
                        if (auto msg = idx.audit(); !msg.empty()) throw std::logic_error("index audit: " + msg);
                    }
                    const char* rule = step.reroot == AugTreeIndex::RerootCase::Keep      ? "s4_2-keep"
                                       : step.reroot == AugTreeIndex::RerootCase::Descend ? "s4_2-descend"
                                                                                          : "s4_2-critical";
                    sink.add(step.edge, label, rule, true);
                }
                idx.absorb_counters(res.counters);
                break;
            }
            case SCase::S5: {
                auto r = st.tree.find_cut_vertex(*st.report.massive);
                ChainIndex ci = ChainIndex::build(st.tree, st.dec, *r, &res.counters);
                while (ci.in_s5()) {
                    ChainIndex::Pick pick = ci.step();
                    ++res.counters.reductions;
                    if (options.audit) {
                        if (auto msg = ci.audit(); !msg.empty()) throw std::logic_error("chain audit: " + msg);
                    }
                    sink.add(pick.edge, label, pick.case_no == 1 ? "s5-chains" : "s5-branch", true);
                }
                break;
            }
            case SCase::None:
                throw std::logic_error("connected instance without a case");
        }
    }
}

}  // namespace

AugmentationResult solve_connected(const BipartiteGraph& g, const SolveOptions& options) {
    if (g.a_vertices().size() < 2 || g.b_vertices().size() < 2) {
        throw Error(ErrorKind::Precondition, "connected solver needs two vertices on each side");
    }
    AugmentationResult res;
    BipartiteGraph work = g;
    Sink sink{work, res};
    solve_connected_into(sink, MCase::None, true, options);
    return res;
}

AugmentationResult augment(const BipartiteGraph& g, const SolveOptions& options) {
    AugmentationResult res;
    const std::size_t na = g.a_vertices().size(), nb = g.b_vertices().size();
    if (na == 0 || nb == 0) return res;
    if (na == 1 || nb == 1) {
        // Without edges every component is an isolated vertex, already a block.
        if (g.edge_count() == 0) {
            res.initial.m_case = MCase::M6;
            return res;
        }
        throw Error(ErrorKind::NoBiconnector,
                    "no biconnector exists: one side has a single vertex");
    }
    BipartiteGraph work = g;
    Sink sink{work, res};
    for (int round = 0;; ++round) {
        if (round > 4) throw std::logic_error("dispatcher did not settle");
        GeneralState s = analyze_general(work, &res.counters);
        ++res.counters.rebuilds;
        if (round == 0) {
            res.initial = s.label;
            switch (s.label.m_case) {
                case MCase::M4: res.target = 3; break;
                case MCase::M5: res.target = 2; break;
                case MCase::M6: res.target = 0; break;
                default: res.target = lower_bound(work, s.dec, s.cen).value(); break;
            }
        }
        switch (s.label.m_case) {
            case MCase::M6:
                return res;
            case MCase::M4:
            case MCase::M5: {
                auto edges = isolated_edge_edges(work, s);
                sink.begin_batch();
                for (const Edge& e : edges) {
                    sink.add(e, s.label, s.label.m_case == MCase::M4 ? "m4-completion" : "m5-block", false);
                }
                return res;
            }
            case MCase::M2: {
                auto edges = m2_edges(work, s);
                sink.begin_batch();
                for (const Edge& e : edges) sink.add(e, s.label, "m2-round-robin", false);
                return res;
            }
            case MCase::M1:
                run_m1(sink, s, options);
                return res;
            case MCase::M3:
                run_m3(sink, s);
                break;
            case MCase::None:
                throw std::logic_error("unclassified instance");
        }
    }
}

std::vector<Edge> solve_isolated_edge(const BipartiteGraph& g) {
    return isolated_edge_edges(g, analyze_general(g, nullptr));
}

std::vector<Edge> solve_m1(const BipartiteGraph& g, const SolveOptions& options) {
    GeneralState s = analyze_general(g, nullptr);
    if (s.label.m_case != MCase::M1) throw Error(ErrorKind::Precondition, "graph is not in case M1");
    AugmentationResult res;
    BipartiteGraph work = g;
    Sink sink{work, res};
    run_m1(sink, s, options);
    return res.added_edges;
}

std::vector<Edge> solve_m2(const BipartiteGraph& g) {
    GeneralState s = analyze_general(g, nullptr);
    if (s.label.m_case != MCase::M2) throw Error(ErrorKind::Precondition, "graph is not in case M2");
    return m2_edges(g, s);
}

std::vector<Edge> solve_m3_merges(const BipartiteGraph& g) {
    GeneralState s = analyze_general(g, nullptr);
    if (s.label.m_case != MCase::M3) throw Error(ErrorKind::Precondition, "graph is not in case M3");
    AugmentationResult res;
    BipartiteGraph work = g;
    Sink sink{work, res};
    run_m3(sink, s);
    return res.added_edges;
}

}  // namespace bicon
