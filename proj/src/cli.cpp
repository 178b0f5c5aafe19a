#include "bicon/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bicon/augment.hpp"
#include "bicon/blocks.hpp"
#include "bicon/bounds.hpp"
#include "bicon/generate.hpp"
#include "bicon/verify.hpp"

namespace bicon {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitInput = 1;
constexpr int kExitNoBiconnector = 2;
constexpr int kExitVerify = 3;
constexpr int kExitInternal = 4;

std::string read_source(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream file(path);
        if (!file) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
        buf << file.rdbuf();
    }
    return buf.str();
}

// Accepts `ADD a b` and `E a b` lines; other records and comments are skipped.
std::vector<Edge> parse_edge_list(const BipartiteGraph& g, const std::string& text) {
    std::vector<Edge> out;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        std::istringstream in(line);
        std::string tag, u, v;
        if (!(in >> tag) || (tag != "ADD" && tag != "E")) continue;
        if (!(in >> u >> v)) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected two vertex ids");
        }
        auto iu = g.find(u);
        auto iv = g.find(v);
        if (!iu || !iv) {
            throw Error(ErrorKind::UnknownVertex,
                        "line " + std::to_string(line_no) + ": unknown vertex '" + (iu ? v : u) + "'");
        }
        if (g.side(*iu) == g.side(*iv)) {
            throw Error(ErrorKind::BipartitenessViolation,
                        "line " + std::to_string(line_no) + ": both endpoints on one side");
        }
        out.push_back(make_edge(g, *iu, *iv));
    }
    return out;
}

Json edge_json(const BipartiteGraph& g, const Edge& e) { return Json::array({g.name(e.a), g.name(e.b)}); }

Json counters_json(const OpCounters& c) {
    return Json{{"adjacency_scans", c.adjacency_scans}, {"tree_traversals", c.tree_traversals},
                {"list_links", c.list_links},           {"list_unlinks", c.list_unlinks},
                {"code_updates", c.code_updates},       {"reductions", c.reductions},
                {"rebuilds", c.rebuilds},               {"full_reroots", c.full_reroots}};
}

Json report_json(const BipartiteGraph& g, const VerifyReport& rep) {
    Json j{{"componentwise_biconnected", rep.componentwise_biconnected},
           {"edges_legal", rep.edges_legal},
           {"agreement", rep.agreement}};
    if (rep.witness) {
        Json names = Json::array();
        for (VertexId v : rep.witness->vertices) names.push_back(g.name(v));
        j["witness"] = Json{{"component", rep.witness->component}, {"kind", rep.witness->kind}, {"vertices", names}};
    }
    if (rep.oracle_size) j["oracle_size"] = *rep.oracle_size;
    if (!rep.message.empty()) j["message"] = rep.message;
    return j;
}

bool report_ok(const VerifyReport& rep) {
    return rep.edges_legal && rep.componentwise_biconnected && rep.agreement;
}

void print_report(const BipartiteGraph& g, const VerifyReport& rep, std::ostream& out) {
    out << "BICONNECTED " << (rep.componentwise_biconnected ? "yes" : "no") << "\n";
    out << "LEGAL " << (rep.edges_legal ? "yes" : "no") << "\n";
    if (rep.witness) {
        out << "WITNESS component " << rep.witness->component << " " << rep.witness->kind;
        for (VertexId v : rep.witness->vertices) out << " " << g.name(v);
        out << "\n";
    }
    if (rep.oracle_size) out << "ORACLE " << *rep.oracle_size << "\n";
    out << (report_ok(rep) ? "OK" : "FAIL " + rep.message) << "\n";
}

Json stats_json(const BipartiteGraph& g) {
    ComponentPartition part = connected_components(g);
    BlockDecomposition dec = decompose(g);
    ComponentCensus cen = census(g, part, dec);
    MatchingProfile prof = matching_profile(dec.pendant_blocks);
    LowerBound lb = lower_bound(g, dec, cen);
    Json j;
    j["census"] = Json{{"c", cen.c_total}, {"c1", cen.c1}, {"c2", cen.c2}, {"c3", cen.c3}};
    j["pendants"] = Json{{"A", prof.n_a}, {"B", prof.n_b}, {"AB", prof.n_ab},
                         {"alpha", prof.alpha}, {"beta", prof.beta}, {"gamma", prof.gamma},
                         {"M", prof.m_val}, {"R", prof.r_val}};
    j["lower_bound"] = Json{{"d_max", lb.d_max}, {"degree_term", lb.degree_term},
                            {"matching_term", lb.matching_term}, {"value", lb.value()}};
    const bool sides_ok = g.a_vertices().size() >= 2 && g.b_vertices().size() >= 2;
    if (sides_ok) j["case"] = to_string(classify_m(g, cen, prof));
    if (sides_ok && part.count() == 1) {
        ConnectedState st = analyze_connected(g);
        Json crit = Json::array();
        for (VertexId v : st.report.critical) crit.push_back(g.name(v));
        j["eta"] = eta(g, dec, cen);
        j["s_case"] = to_string(st.label.s_case);
        j["massive"] = st.report.massive ? Json(g.name(*st.report.massive)) : Json(nullptr);
        j["critical"] = crit;
        j["branching_nodes"] = st.report.branching_nodes;
    }
    return j;
}

struct AugmentOpts {
    std::string input = "-";
    bool trace = false, json = false, verify = false, oracle = false, stats = false, audit = false;
};

int cmd_augment(const AugmentOpts& o, std::istream& in, std::ostream& out) {
    BipartiteGraph g = parse_graph(read_source(o.input, in));
    AugmentationResult r = augment(g, SolveOptions{o.audit});
    std::optional<VerifyReport> rep;
    if (o.verify || o.oracle) rep = verify_result(g, r, o.oracle);

    if (o.json) {
        Json j;
        j["schema"] = 1;
        j["size"] = r.size();
        j["target"] = r.target;
        j["initial_case"] = to_string(r.initial);
        Json edges = Json::array(), trace = Json::array();
        for (const Edge& e : r.added_edges) edges.push_back(edge_json(g, e));
        for (const TraceEntry& t : r.trace) {
            trace.push_back(Json{{"edge", edge_json(g, t.edge)},
                                 {"case", to_string(t.label)},
                                 {"rule", t.rule},
                                 {"reduction", t.reduction},
                                 {"batch_start", t.batch_start}});
        }
        j["added_edges"] = edges;
        j["trace"] = trace;
        j["counters"] = counters_json(r.counters);
        if (o.stats) j["stats"] = stats_json(g);
        if (rep) j["verify"] = report_json(g, *rep);
        out << j.dump(2) << "\n";
    } else {
        for (const TraceEntry& t : r.trace) {
            out << "ADD " << g.name(t.edge.a) << " " << g.name(t.edge.b);
            if (o.trace) out << "  # " << to_string(t.label) << " " << t.rule;
            out << "\n";
        }
        out << "SIZE " << r.size() << "\n";
        if (o.stats) out << "STATS " << stats_json(g).dump() << "\n";
        if (rep) print_report(g, *rep, out);
    }
    return rep && !report_ok(*rep) ? kExitVerify : 0;
}

int cmd_verify(const std::string& graph_path, const std::string& edges_path, bool oracle, bool json,
               std::istream& in, std::ostream& out) {
    if (graph_path == "-" && edges_path == "-") {
        throw Error(ErrorKind::InvalidParams, "graph and edge list cannot both come from standard input");
    }
    BipartiteGraph g = parse_graph(read_source(graph_path, in));
    std::vector<Edge> added = parse_edge_list(g, read_source(edges_path, in));
    VerifyReport rep = verify_edges(g, added, oracle);
    if (json) {
        Json j{{"schema", 1}, {"size", added.size()}};
        j["verify"] = report_json(g, rep);
        out << j.dump(2) << "\n";
    } else {
        print_report(g, rep, out);
    }
    return report_ok(rep) ? 0 : kExitVerify;
}

int cmd_oracle(const std::string& input, std::size_t cap, std::istream& in, std::ostream& out) {
    BipartiteGraph g = parse_graph(read_source(input, in));
    OracleResult r = brute_force_optimal(g, cap);
    for (const Edge& e : r.edges) out << "ADD " << g.name(e.a) << " " << g.name(e.b) << "\n";
    out << "SIZE " << r.size << "\n";
    return 0;
}

int cmd_tree(const std::string& input, std::istream& in, std::ostream& out) {
    BipartiteGraph g = parse_graph(read_source(input, in));
    ComponentPartition part = connected_components(g);
    BlockDecomposition dec = decompose(g);
    for (const auto& members : part.members) {
        if (members.size() < 2) continue;  // an isolated vertex has no block tree
        out << to_dot(g, dec, build_block_tree(dec, members));
    }
    return 0;
}

std::size_t parse_size(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || v < 1 || v > 1e8) throw Error(ErrorKind::InvalidParams, "bad size '" + s + "'");
    return static_cast<std::size_t>(v);
}

int cmd_bench(const std::string& sizes, const std::string& kind, std::uint64_t seed, std::size_t repeat,
              std::ostream& out) {
    GenKind k = parse_gen_kind(kind);
    std::vector<std::size_t> ns;
    std::stringstream list(sizes);
    for (std::string item; std::getline(list, item, ',');) ns.push_back(parse_size(item));
    if (ns.empty()) throw Error(ErrorKind::InvalidParams, "no sizes given");
    out << "kind n m size ms ns_per_elem tree_traversals list_unlinks ops rebuilds\n";
    for (std::size_t n : ns) {
        BipartiteGraph g = generate_sized(k, n, seed);
        double best = 0;
        AugmentationResult r;
        for (std::size_t i = 0; i < std::max<std::size_t>(1, repeat); ++i) {
            auto t0 = std::chrono::steady_clock::now();
            r = augment(g);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            if (i == 0 || ms < best) best = ms;
        }
        const double elems = static_cast<double>(g.vertex_count() + g.edge_count());
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f %.1f", best, best * 1e6 / elems);
        out << kind << " " << g.vertex_count() << " " << g.edge_count() << " " << r.size() << " " << buf
            << " " << r.counters.tree_traversals << " " << r.counters.list_unlinks << " "
            << r.counters.total() << " " << r.counters.rebuilds << "\n";
    }
    return 0;
}

std::vector<std::size_t> parse_chain_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream list(s);
    for (std::string item; std::getline(list, item, ',');) out.push_back(parse_size(item));
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum bipartite biconnectivity augmentation", "bicon"};
    app.require_subcommand(1);

    AugmentOpts aug;
    auto* augment_cmd = app.add_subcommand("augment", "Add a minimum set of legal edges");
    augment_cmd->add_option("input", aug.input, "Graph file, - for standard input");
    augment_cmd->add_flag("--trace", aug.trace, "Annotate each edge with its case and rule");
    augment_cmd->add_flag("--json", aug.json, "Emit the full result as JSON");
    augment_cmd->add_flag("--verify", aug.verify, "Re-check the result");
    augment_cmd->add_flag("--oracle", aug.oracle, "Re-check the result and compare with brute force");
    augment_cmd->add_flag("--stats", aug.stats, "Report census, pendant counts and bounds");
    augment_cmd->add_flag("--audit", aug.audit, "Audit the solver's index after every step");

    std::string graph_path = "-", edges_path;
    bool verify_oracle = false, verify_json = false;
    auto* verify_cmd = app.add_subcommand("verify", "Check an edge list against a graph");
    verify_cmd->add_option("graph", graph_path, "Graph file")->required();
    verify_cmd->add_option("edges", edges_path, "Edge list (ADD or E lines)")->required();
    verify_cmd->add_flag("--oracle", verify_oracle, "Compare the size with brute force");
    verify_cmd->add_flag("--json", verify_json, "Emit the report as JSON");

    std::string oracle_input = "-";
    std::size_t cap = 8;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force minimum for a small graph");
    oracle_cmd->add_option("input", oracle_input, "Graph file, - for standard input");
    oracle_cmd->add_option("--cap", cap, "Largest edge count tried")->check(CLI::Range(0, 8));

    std::string gen_kind;
    GenParams gp;
    std::string chains;
    std::size_t gen_n = 0;
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance");
    gen_cmd->add_option("kind", gen_kind, "path, cycle, spider, broom, caterpillar, random")->required();
    gen_cmd->add_option("--n", gen_n, "Approximate vertex count (sized family)");
    gen_cmd->add_option("--length", gp.length, "Path or cycle vertex count");
    gen_cmd->add_option("--chains", chains, "Spider chain lengths, comma separated");
    gen_cmd->add_option("--bristles", gp.bristles, "Broom leaves per center");
    gen_cmd->add_option("--handle", gp.handle, "Broom handle length (odd)");
    gen_cmd->add_option("--spine", gp.spine, "Caterpillar spine length");
    gen_cmd->add_option("--legs", gp.legs, "Caterpillar leaves per spine vertex");
    gen_cmd->add_option("--a", gp.a_count, "Random: A side size");
    gen_cmd->add_option("--b", gp.b_count, "Random: B side size");
    gen_cmd->add_option("--p", gp.p, "Random: edge probability");
    gen_cmd->add_option("--seed", gp.seed, "Random seed");

    std::string tree_input = "-";
    auto* tree_cmd = app.add_subcommand("tree", "Block tree of every component as DOT");
    tree_cmd->add_option("input", tree_input, "Graph file, - for standard input");

    std::string sizes = "1e4,2e4,4e4,8e4", bench_kind = "spider";
    std::uint64_t bench_seed = 1;
    std::size_t repeat = 3;
    auto* bench_cmd = app.add_subcommand("bench", "Time the solver over a size ladder");
    bench_cmd->add_option("--sizes", sizes, "Comma separated sizes, e.g. 1e4,2e4");
    bench_cmd->add_option("--kind", bench_kind, "Instance family");
    bench_cmd->add_option("--seed", bench_seed, "Seed for random instances");
    bench_cmd->add_option("--repeat", repeat, "Runs per size, best time reported");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*augment_cmd) return cmd_augment(aug, in, out);
        if (*verify_cmd) return cmd_verify(graph_path, edges_path, verify_oracle, verify_json, in, out);
        if (*oracle_cmd) return cmd_oracle(oracle_input, cap, in, out);
        if (*tree_cmd) return cmd_tree(tree_input, in, out);
        if (*bench_cmd) return cmd_bench(sizes, bench_kind, bench_seed, repeat, out);
        if (*gen_cmd) {
            GenKind k = parse_gen_kind(gen_kind);
            if (!chains.empty()) gp.chains = parse_chain_list(chains);
            out << serialize(gen_n ? generate_sized(k, gen_n, gp.seed) : generate_instance(k, gp));
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::NoBiconnector ? kExitNoBiconnector : kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInput;
}

}  // namespace bicon
