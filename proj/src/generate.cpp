#include "bicon/generate.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace bicon {

namespace {

Error invalid(const std::string& msg) { return Error(ErrorKind::InvalidParams, msg); }

std::string side_prefix(Side s) { return s == Side::A ? "a" : "b"; }

// Appends a path hanging from `from`; vertex names come from `name_of(depth)`.
template <typename NameFn>
VertexId hang_path(BipartiteGraph& g, VertexId from, std::size_t length, NameFn name_of) {
    VertexId prev = from;
    for (std::size_t d = 1; d <= length; ++d) {
        Side s = (g.side(prev) == Side::A) ? Side::B : Side::A;
        VertexId v = g.add_vertex(name_of(d, s), s);
        g.add_edge(prev, v);
        prev = v;
    }
    return prev;
}

}  // namespace

GenKind parse_gen_kind(std::string_view name) {
    if (name == "path") return GenKind::Path;
    if (name == "cycle") return GenKind::Cycle;
    if (name == "spider") return GenKind::Spider;
    if (name == "broom") return GenKind::Broom;
    if (name == "caterpillar") return GenKind::Caterpillar;
    if (name == "random") return GenKind::Random;
    throw invalid("unknown instance kind '" + std::string(name) + "'");
}

BipartiteGraph generate_instance(GenKind kind, const GenParams& p) {
    BipartiteGraph g;
    switch (kind) {
        case GenKind::Path:
        case GenKind::Cycle: {
            if (p.length == 0) throw invalid("length must be positive");
            if (kind == GenKind::Cycle && (p.length < 4 || p.length % 2 != 0)) {
                throw invalid("cycle length must be even and at least 4");
            }
            VertexId prev = kNone;
            VertexId first = kNone;
            for (std::size_t i = 0; i < p.length; ++i) {
                Side s = i % 2 == 0 ? Side::A : Side::B;
                VertexId v = g.add_vertex(side_prefix(s) + std::to_string(i / 2 + 1), s);
                if (prev != kNone) g.add_edge(prev, v);
                if (first == kNone) first = v;
                prev = v;
            }
            if (kind == GenKind::Cycle) g.add_edge(first, prev);
            break;
        }
        case GenKind::Spider: {
            if (p.chains.empty()) throw invalid("spider needs at least one chain");
            VertexId x = g.add_vertex("x", Side::A);
            for (std::size_t i = 0; i < p.chains.size(); ++i) {
                if (p.chains[i] == 0) throw invalid("spider chains must have positive length");
                const std::string idx = std::to_string(i + 1);
                hang_path(g, x, p.chains[i], [&](std::size_t d, Side s) {
                    std::string name = side_prefix(s) + idx;
                    if (d > 2) name += "_" + std::to_string(d);
                    return name;
                });
            }
            break;
        }
        case GenKind::Broom: {
            if (p.handle % 2 == 0) throw invalid("broom handle must be odd");
            if (p.bristles == 0) throw invalid("broom needs bristles");
            VertexId a0 = g.add_vertex("a0", Side::A);
            VertexId prev = a0;
            for (std::size_t d = 1; d < p.handle; ++d) {
                Side s = d % 2 == 1 ? Side::B : Side::A;
                VertexId v = g.add_vertex(side_prefix(s) + "h" + std::to_string(d), s);
                g.add_edge(prev, v);
                prev = v;
            }
            VertexId b0 = g.add_vertex("b0", Side::B);
            g.add_edge(prev, b0);
            for (std::size_t i = 1; i <= p.bristles; ++i) {
                g.add_edge(a0, g.add_vertex("b" + std::to_string(i), Side::B));
            }
            for (std::size_t i = 1; i <= p.bristles; ++i) {
                g.add_edge(b0, g.add_vertex("a" + std::to_string(i), Side::A));
            }
            break;
        }
        case GenKind::Caterpillar: {
            if (p.spine == 0) throw invalid("caterpillar needs a spine");
            VertexId prev = kNone;
            for (std::size_t i = 0; i < p.spine; ++i) {
                Side s = i % 2 == 0 ? Side::A : Side::B;
                VertexId v = g.add_vertex(side_prefix(s) + std::to_string(i / 2 + 1), s);
                if (prev != kNone) g.add_edge(prev, v);
                prev = v;
                for (std::size_t j = 1; j <= p.legs; ++j) {
                    Side ls = other(s);
                    VertexId leg = g.add_vertex(
                        side_prefix(ls) + "l" + std::to_string(i + 1) + "_" + std::to_string(j), ls);
                    g.add_edge(v, leg);
                }
            }
            break;
        }
        case GenKind::Random: {
            if (p.p < 0.0 || p.p > 1.0) throw invalid("edge probability must lie in [0,1]");
            for (std::size_t i = 1; i <= p.a_count; ++i) g.add_vertex("a" + std::to_string(i), Side::A);
            for (std::size_t i = 1; i <= p.b_count; ++i) g.add_vertex("b" + std::to_string(i), Side::B);
            std::mt19937_64 rng(p.seed);
            for (VertexId a : std::vector<VertexId>(g.a_vertices())) {
                for (VertexId b : std::vector<VertexId>(g.b_vertices())) {
                    // 53-bit uniform in [0,1); avoids library-specific distributions.
                    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                    if (u < p.p) g.add_edge(a, b);
                }
            }
            break;
        }
    }
    return g;
}

BipartiteGraph generate_sized(GenKind kind, std::size_t n, std::uint64_t seed) {
    GenParams p;
    switch (kind) {
        case GenKind::Path:
        case GenKind::Cycle:
            p.length = std::max<std::size_t>(4, n - n % 2);
            break;
        case GenKind::Spider: {
            // Alternating chain lengths 1 and 2: a massive center.
            std::size_t k = std::max<std::size_t>(4, (2 * n) / 3);
            for (std::size_t i = 0; i < k; ++i) p.chains.push_back(i % 2 == 0 ? 1 : 2);
            break;
        }
        case GenKind::Broom:
            p.bristles = std::max<std::size_t>(2, (n - 2) / 2);
            p.handle = 1;
            break;
        case GenKind::Caterpillar:
            p.spine = std::max<std::size_t>(4, n / 2);
            p.legs = 1;
            break;
        case GenKind::Random: {
            // Sparse variant: every A vertex draws two B neighbors.
            BipartiteGraph g;
            std::size_t side = std::max<std::size_t>(2, n / 2);
            for (std::size_t i = 1; i <= side; ++i) g.add_vertex("a" + std::to_string(i), Side::A);
            for (std::size_t i = 1; i <= side; ++i) g.add_vertex("b" + std::to_string(i), Side::B);
            std::mt19937_64 rng(seed);
            for (std::size_t i = 0; i < side; ++i) {
                for (int k = 0; k < 2; ++k) {
                    auto b = static_cast<VertexId>(side + rng() % side);
                    auto a = static_cast<VertexId>(i);
                    if (!g.has_edge(a, b)) g.add_edge(a, b);
                }
            }
            return g;
        }
    }
    return generate_instance(kind, p);
}

}  // namespace bicon
