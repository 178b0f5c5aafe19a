#include "bicon/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "radix.hpp"

namespace bicon {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::DuplicateVertex: return "DuplicateVertex";
        case ErrorKind::BipartitenessViolation: return "BipartitenessViolation";
        case ErrorKind::DuplicateEdge: return "DuplicateEdge";
        case ErrorKind::UnknownVertex: return "UnknownVertex";
        case ErrorKind::SelfLoop: return "SelfLoop";
        case ErrorKind::IllegalEdge: return "IllegalEdge";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::Precondition: return "Precondition";
        case ErrorKind::SingularComponent: return "SingularComponent";
        case ErrorKind::NoBiconnector: return "NoBiconnector";
        case ErrorKind::NoCrossPair: return "NoCrossPair";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::ClingPartitionViolation: return "ClingPartitionViolation";
    }
    return "Unknown";
}

BipartiteGraph::Index& BipartiteGraph::unshared_index() {
    if (index_.use_count() > 1) {
        auto copy = std::make_shared<Index>(*index_);
        copy->edge_keys.insert(own_edge_keys_.begin(), own_edge_keys_.end());
        own_edge_keys_.clear();
        index_ = std::move(copy);
    }
    return *index_;
}

VertexId BipartiteGraph::add_vertex(std::string name, Side side) {
    if (auto it = index_->by_name.find(name); it != index_->by_name.end()) {
        if (sides_[it->second] != side) {
            throw Error(ErrorKind::BipartitenessViolation,
                        "vertex '" + name + "' declared on both sides");
        }
        throw Error(ErrorKind::DuplicateVertex, "vertex '" + name + "' declared twice");
    }
    auto id = static_cast<VertexId>(sides_.size());
    Index& index = unshared_index();
    index.by_name.emplace(name, id);
    index.names.push_back(std::move(name));
    sides_.push_back(side);
    adjacency_.emplace_back();
    (side == Side::A ? a_vertices_ : b_vertices_).push_back(id);
    return id;
}

void BipartiteGraph::add_edge(VertexId u, VertexId v) {
    if (!contains(u) || !contains(v)) {
        throw Error(ErrorKind::UnknownVertex, "edge references an unknown vertex");
    }
    if (u == v) {
        throw Error(ErrorKind::SelfLoop, "self loop on '" + name(u) + "'");
    }
    Edge e = make_edge(*this, u, v);
    const std::uint64_t k = key(e.a, e.b);
    bool fresh = index_.use_count() > 1
                     ? !index_->edge_keys.contains(k) && own_edge_keys_.insert(k).second
                     : !own_edge_keys_.contains(k) && index_->edge_keys.insert(k).second;
    if (!fresh) {
        throw Error(ErrorKind::DuplicateEdge,
                    "duplicate edge (" + name(e.a) + ", " + name(e.b) + ")");
    }
    edges_.push_back(e);
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
}

std::optional<VertexId> BipartiteGraph::find(std::string_view name) const {
    auto it = index_->by_name.find(std::string(name));
    if (it == index_->by_name.end()) return std::nullopt;
    return it->second;
}

bool BipartiteGraph::has_edge(VertexId u, VertexId v) const {
    if (!contains(u) || !contains(v) || sides_[u] == sides_[v]) return false;
    if (sides_[u] == Side::B) std::swap(u, v);
    const std::uint64_t k = key(u, v);
    return index_->edge_keys.contains(k) || own_edge_keys_.contains(k);
}

bool operator==(const BipartiteGraph& lhs, const BipartiteGraph& rhs) {
    auto side_names = [](const BipartiteGraph& g, const std::vector<VertexId>& ids) {
        std::vector<std::string> out;
        out.reserve(ids.size());
        for (VertexId v : ids) out.push_back(g.name(v));
        return out;
    };
    auto edge_names = [](const BipartiteGraph& g) {
        std::set<std::pair<std::string, std::string>> out;
        for (const Edge& e : g.edges()) out.emplace(g.name(e.a), g.name(e.b));
        return out;
    };
    return side_names(lhs, lhs.a_vertices_) == side_names(rhs, rhs.a_vertices_) &&
           side_names(lhs, lhs.b_vertices_) == side_names(rhs, rhs.b_vertices_) &&
           edge_names(lhs) == edge_names(rhs);
}

Edge make_edge(const BipartiteGraph& g, VertexId u, VertexId v) {
    if (g.side(u) == g.side(v)) {
        throw Error(ErrorKind::BipartitenessViolation,
                    "(" + g.name(u) + ", " + g.name(v) + ") joins two vertices of one side");
    }
    return g.side(u) == Side::A ? Edge{u, v} : Edge{v, u};
}

BipartiteGraph parse_graph(std::string_view text) {
    BipartiteGraph g;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;

        std::istringstream in(line);
        std::string tag;
        if (!(in >> tag) || tag[0] == '#') continue;

        auto fail = [&](ErrorKind kind, const std::string& msg) -> Error {
            return Error(kind, "line " + std::to_string(line_no) + ": " + msg);
        };
        try {
            if (tag == "A" || tag == "B") {
                Side side = tag == "A" ? Side::A : Side::B;
                std::string id;
                while (in >> id) g.add_vertex(id, side);
            } else if (tag == "E") {
                std::string u, v, extra;
                if (!(in >> u >> v) || (in >> extra)) {
                    throw fail(ErrorKind::Parse, "expected 'E <a-id> <b-id>'");
                }
                auto iu = g.find(u);
                auto iv = g.find(v);
                if (!iu) throw fail(ErrorKind::UnknownVertex, "undeclared vertex '" + u + "'");
                if (!iv) throw fail(ErrorKind::UnknownVertex, "undeclared vertex '" + v + "'");
                g.add_edge(*iu, *iv);
            } else {
                throw fail(ErrorKind::Parse, "unknown record '" + tag + "'");
            }
        } catch (const Error& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            throw fail(e.kind(), msg);
        }
        if (end == text.size()) break;
    }
    return g;
}

std::string serialize(const BipartiteGraph& g) {
    std::string out;
    std::size_t v = 0;
    while (v < g.vertex_count()) {
        Side side = g.side(static_cast<VertexId>(v));
        out += side == Side::A ? "A" : "B";
        while (v < g.vertex_count() && g.side(static_cast<VertexId>(v)) == side) {
            out += ' ';
            out += g.name(static_cast<VertexId>(v));
            ++v;
        }
        out += '\n';
    }
    for (const Edge& e : g.edges()) {
        out += "E " + g.name(e.a) + " " + g.name(e.b) + "\n";
    }
    return out;
}

bool is_legal_edge(const BipartiteGraph& g, VertexId u, VertexId v) {
    if (!g.contains(u) || !g.contains(v)) {
        throw Error(ErrorKind::UnknownVertex, "unknown vertex in legality query");
    }
    return g.side(u) != g.side(v) && !g.has_edge(u, v);
}

BipartiteGraph add_edges(const BipartiteGraph& g, std::span<const Edge> edges) {
    BipartiteGraph out = g;
    for (const Edge& e : edges) {
        if (!g.contains(e.a) || !g.contains(e.b)) {
            throw Error(ErrorKind::UnknownVertex, "added edge references an unknown vertex");
        }
        if (!is_legal_edge(g, e.a, e.b)) {
            throw Error(ErrorKind::IllegalEdge,
                        "(" + g.name(e.a) + ", " + g.name(e.b) + ") is not a legal edge");
        }
        try {
            out.add_edge(e.a, e.b);
        } catch (const Error&) {
            throw Error(ErrorKind::IllegalEdge,
                        "(" + g.name(e.a) + ", " + g.name(e.b) + ") added twice");
        }
    }
    return out;
}

ComponentPartition connected_components(const BipartiteGraph& g, OpCounters* counters) {
    ComponentPartition part;
    const std::size_t n = g.vertex_count();
    part.component_of.assign(n, kNone);
    std::vector<VertexId> stack;
    std::uint64_t scans = 0;
    for (VertexId s = 0; s < n; ++s) {
        if (part.component_of[s] != kNone) continue;
        auto id = static_cast<std::uint32_t>(part.members.size());
        part.members.emplace_back();
        auto& members = part.members.back();
        part.component_of[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (VertexId w : g.neighbors(u)) {
                ++scans;
                if (part.component_of[w] == kNone) {
                    part.component_of[w] = id;
                    stack.push_back(w);
                }
            }
        }
        detail::radix_sort(members);
    }
    if (counters) counters->adjacency_scans += scans;
    return part;
}

BipartiteGraph induced_subgraph(const BipartiteGraph& g, std::span<const VertexId> vertices) {
    BipartiteGraph sub;
    std::vector<VertexId> local(g.vertex_count(), kNone);
    for (VertexId v : vertices) local[v] = sub.add_vertex(g.name(v), g.side(v));
    for (VertexId v : vertices) {
        if (g.side(v) != Side::A) continue;
        for (VertexId w : g.neighbors(v)) {
            if (local[w] != kNone) sub.add_edge(local[v], local[w]);
        }
    }
    return sub;
}

}  // namespace bicon
