#include "bicon/bounds.hpp"

#include <algorithm>

namespace bicon {

ComponentCensus census(const BipartiteGraph& g, const ComponentPartition& part,
                       const BlockDecomposition& dec) {
    (void)g;
    ComponentCensus c;
    for (const auto& members : part.members) {
        if (members.size() == 1) continue;
        if (members.size() == 2) {
            ++c.c2;
            continue;
        }
        bool has_cut = std::any_of(members.begin(), members.end(),
                                   [&](VertexId v) { return dec.is_cut_vertex[v]; });
        if (has_cut) {
            ++c.c1;
        } else {
            ++c.c3;
        }
    }
    c.c_total = c.c1 + c.c2;
    return c;
}

LowerBound lower_bound(const BipartiteGraph& g, const BlockDecomposition& dec,
                       const ComponentCensus& c) {
    LowerBound lb;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        lb.d_max = std::max(lb.d_max, branch_count(dec, g, v));
    }
    lb.degree_term = static_cast<long long>(lb.d_max) + static_cast<long long>(c.c_total) - 2;
    MatchingProfile p = matching_profile(dec.pendant_blocks);
    lb.matching_term = p.m_val + p.r_val;
    return lb;
}

std::size_t eta(const BipartiteGraph& g, const BlockDecomposition& dec, const ComponentCensus& c) {
    if (g.a_vertices().size() < 2 || g.b_vertices().size() < 2) {
        throw Error(ErrorKind::Precondition, "eta needs at least two vertices on each side");
    }
    if (c.c_total + c.c3 != 1) {
        throw Error(ErrorKind::Precondition, "eta is defined for connected graphs only");
    }
    return lower_bound(g, dec, c).value();
}

CriticalityReport criticality(const BlockDecomposition& dec, const BlockTree& tree,
                              const MatchingProfile& profile) {
    (void)dec;
    CriticalityReport rep;
    const std::size_t budget = profile.m_val + profile.r_val;
    rep.d_max = tree.size() > 1 ? 1 : 0;
    std::size_t best = 0;
    for (NodeId x = 0; x < tree.size(); ++x) {
        const std::size_t d = tree.degree(x);
        if (d >= 3) ++rep.branching_nodes;
        if (tree.nodes[x].kind != NodeKind::CutVertex) continue;
        const VertexId v = tree.nodes[x].ref;
        rep.d_max = std::max(rep.d_max, d);
        if (d > best || (d == best && rep.c_star && v < *rep.c_star)) {
            best = d;
            rep.c_star = v;
        }
        if (d - 1 > budget) {
            if (!rep.massive || v < *rep.massive) rep.massive = v;
        } else if (d - 1 == budget) {
            rep.critical.push_back(v);
        }
    }
    std::sort(rep.critical.begin(), rep.critical.end());
    return rep;
}

const char* to_string(MCase c) {
    switch (c) {
        case MCase::None: return "-";
        case MCase::M1: return "M1";
        case MCase::M2: return "M2";
        case MCase::M3: return "M3";
        case MCase::M4: return "M4";
        case MCase::M5: return "M5";
        case MCase::M6: return "M6";
    }
    return "?";
}

const char* to_string(SCase c) {
    switch (c) {
        case SCase::None: return "-";
        case SCase::S1: return "S1";
        case SCase::S2: return "S2";
        case SCase::S3: return "S3";
        case SCase::S4_1: return "S4_1";
        case SCase::S4_2: return "S4_2";
        case SCase::S5: return "S5";
    }
    return "?";
}

std::string to_string(const CaseLabel& c) {
    std::string out = to_string(c.m_case);
    if (c.s_case != SCase::None) out += std::string("/") + to_string(c.s_case);
    return out;
}

CaseLabel classify_m(const BipartiteGraph& g, const ComponentCensus& c,
                     const MatchingProfile& profile) {
    if (g.a_vertices().size() < 2 || g.b_vertices().size() < 2) {
        throw Error(ErrorKind::Precondition, "classification needs two vertices on each side");
    }
    CaseLabel label;
    if (c.c_total == 0) {
        label.m_case = MCase::M6;
    } else if (c.c1 == 1 && c.c2 == 0) {
        label.m_case = MCase::M1;
    } else if (c.c1 + c.c2 >= 2) {
        label.m_case = profile.m_val == 0 ? MCase::M2 : MCase::M3;
    } else {
        label.m_case = c.c3 == 0 ? MCase::M4 : MCase::M5;
    }
    return label;
}

CaseLabel classify_s(const BlockTree& tree, const MatchingProfile& profile,
                     const CriticalityReport& report) {
    (void)tree;
    CaseLabel label;
    if (profile.total() <= 3) {
        label.s_case = SCase::S1;
    } else if (profile.m_val == 0) {
        label.s_case = SCase::S2;
    } else if (report.massive) {
        label.s_case = SCase::S5;
    } else if (report.critical.size() == 2) {
        label.s_case = SCase::S3;
    } else {
        label.s_case = report.branching_nodes == 1 ? SCase::S4_1 : SCase::S4_2;
    }
    return label;
}

ConnectedState analyze_connected(const BipartiteGraph& g, OpCounters* counters) {
    return analyze_connected(g, decompose(g, counters), counters);
}

ConnectedState analyze_connected(const BipartiteGraph& g, BlockDecomposition dec, OpCounters* counters) {
    ComponentPartition part = connected_components(g, counters);
    if (part.count() != 1) {
        throw Error(ErrorKind::Precondition, "expected a connected graph");
    }
    ConnectedState s;
    s.dec = std::move(dec);
    s.tree = build_block_tree(s.dec, part.members[0], counters);
    s.profile = matching_profile(s.dec.pendant_blocks);
    s.report = criticality(s.dec, s.tree, s.profile);
    s.label = classify_s(s.tree, s.profile, s.report);
    return s;
}

}  // namespace bicon
