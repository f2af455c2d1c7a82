#include "dmatch/cli.hpp"

#include "dmatch/engines.hpp"
#include "dmatch/errors.hpp"
#include "dmatch/interval.hpp"
#include "dmatch/io.hpp"
#include "dmatch/matching.hpp"
#include "dmatch/reductions.hpp"
#include "dmatch/separators.hpp"
#include "dmatch/treewidth.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>

namespace dmatch {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    writer(out);
    if (!out) throw InputError("error writing " + path);
}

template <class Parser>
auto load(const std::string& path, Parser&& parser) {
    auto in = open_in(path);
    try {
        return parser(in);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Graph load_graph(const std::string& path) {
    return load(path, [](std::istream& in) { return parse_graph(in); });
}

struct Guards {
    int brute_limit = 18;
    std::size_t separator_budget = kDefaultSeparatorBudget;
};

DisconnectedOptimum run_brute(const Graph& g, int c, const Guards& guards) {
    if (g.vertex_count() > guards.brute_limit)
        throw ResourceError("brute force limited to " + std::to_string(guards.brute_limit) + " vertices, graph has " +
                            std::to_string(g.vertex_count()));
    return brute_force_disconnected(g, c);
}

struct SolveOptions {
    std::string graph;
    int c = 1;
    std::optional<int> k;
    std::string algo = "auto";
    std::string td;
    std::string intervals;
    std::string emit;
};

DisconnectedOptimum run_solver(const Graph& g, const SolveOptions& o, const Guards& guards) {
    std::string algo = o.algo;
    if (algo == "auto") {
        if (!o.intervals.empty()) {
            algo = "interval";
        } else if (!o.td.empty()) {
            algo = "treewidth";
        } else {
            try {
                return xp_solve(g, o.c, enumerate_minimal_separators(g, guards.separator_budget));
            } catch (const ResourceError&) {
                return run_brute(g, o.c, guards);
            }
        }
    }
    if (algo == "brute") return run_brute(g, o.c, guards);
    if (algo == "separators") return xp_solve(g, o.c, enumerate_minimal_separators(g, guards.separator_budget));
    if (algo == "interval") {
        if (o.intervals.empty()) throw InputError("--algo interval needs --intervals");
        IntervalModel model = load(o.intervals, [](std::istream& in) { return parse_intervals(in); });
        check_interval_model(g, model);
        return interval_solve(g, clique_path(model), o.c);
    }
    TreeDecomposition td;
    if (o.td.empty()) {
        td = min_degree_decomposition(g);
    } else {
        auto file = load(o.td, [](std::istream& in) { return parse_tree_decomposition(in); });
        if (file.vertices != g.vertex_count())
            throw InputError("decomposition is for " + std::to_string(file.vertices) + " vertices, graph has " +
                             std::to_string(g.vertex_count()));
        td = std::move(file.td);
        auto verdict = validate_decomposition(g, td);
        if (!verdict.ok()) throw InputError("invalid tree decomposition: " + to_string(verdict.kind) + ": " + verdict.detail);
    }
    return tw_solve(g, nicify(td), o.c);
}

void print_reduction(std::ostream& out, const ReductionOutput& r, const std::string& path, const std::string& names) {
    write_file(path, [&](std::ostream& f) { write_graph(f, r.graph); });
    if (!names.empty()) write_file(names, [&](std::ostream& f) { write_names(f, r.vertex_names); });
    out << "n = " << r.graph.vertex_count() << "\nm = " << r.graph.edge_count() << "\nk = " << r.k << "\nc = " << r.c
        << '\n';
}

std::vector<X3CInstance> load_instances(const std::vector<std::string>& paths) {
    std::vector<X3CInstance> instances;
    for (const auto& p : paths) instances.push_back(load(p, [](std::istream& in) { return parse_x3c(in); }));
    return instances;
}

CompositionParam parse_param(const std::string& s) {
    return s == "vc" ? CompositionParam::vertex_cover : CompositionParam::distance_to_clique;
}

} // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact solvers for connected, disconnected and induced matchings", "dmatch"};
    app.require_subcommand(1);
    Guards guards;
    auto add_guards = [&](CLI::App* sub) {
        sub->add_option("--brute-limit", guards.brute_limit, "Largest vertex count for brute force")
            ->capture_default_str();
        sub->add_option("--separator-budget", guards.separator_budget, "Largest minimal separator family")
            ->capture_default_str();
    };

    SolveOptions so;
    auto* solve = app.add_subcommand("solve", "Maximum c-disconnected matching");
    solve->add_option("--graph", so.graph, "Graph file")->required();
    solve->add_option("--c", so.c, "Required number of components")->required()->check(CLI::PositiveNumber);
    solve->add_option("--k", so.k, "Decide whether a matching with at least k edges exists");
    solve->add_option("--algo", so.algo, "Solver")
        ->check(CLI::IsMember({"auto", "brute", "separators", "interval", "treewidth"}))
        ->capture_default_str();
    solve->add_option("--td", so.td, "Tree decomposition file");
    solve->add_option("--intervals", so.intervals, "Interval model file");
    solve->add_option("--emit-matching", so.emit, "Write the witness matching");
    add_guards(solve);

    std::string graph_path, emit_path, matching_path;
    int c = 1, k = 0;
    auto* connect = app.add_subcommand("connect", "Maximum connected matching");
    connect->add_option("--graph", graph_path, "Graph file")->required();
    connect->add_option("--emit-matching", emit_path, "Write the matching");

    auto* oracle = app.add_subcommand("oracle", "Brute-force value and witness");
    oracle->add_option("--graph", graph_path, "Graph file")->required();
    oracle->add_option("--c", c, "Required number of components")->required()->check(CLI::PositiveNumber);
    add_guards(oracle);

    auto* verify = app.add_subcommand("verify", "Check a matching certificate");
    verify->add_option("--graph", graph_path, "Graph file")->required();
    verify->add_option("--matching", matching_path, "Matching file")->required();
    verify->add_option("--k", k, "Required number of edges")->required();
    verify->add_option("--c", c, "Required number of components")->required();

    auto* separators = app.add_subcommand("separators", "List all minimal separators");
    separators->add_option("--graph", graph_path, "Graph file")->required();
    add_guards(separators);

    std::string cnf_path, instance_path, out_path, names_path, param = "vc", assignment_path, cover_path;
    std::vector<std::string> instance_paths;
    bool diameter3 = false, bounded = false, universal = false;
    int reduce_c = 2, which = 1;
    auto add_one_in_three = [&](CLI::App* parent) {
        auto* s = parent->add_subcommand("one-in-three", "One-in-three 3SAT gadget graph");
        s->add_option("--cnf", cnf_path, "CNF file")->required();
        s->add_flag("--diameter3", diameter3, "Add the two hub vertices");
        s->add_option("--c", reduce_c, "Component count")->check(CLI::Range(2, 1 << 20))->capture_default_str();
        return s;
    };
    auto add_x3c = [&](CLI::App* parent) {
        auto* s = parent->add_subcommand("x3c", "X3C chordal graph");
        s->add_option("--instance", instance_path, "X3C file")->required();
        s->add_flag("--bounded-degree", bounded, "Clique gadgets of bounded degree");
        s->add_flag("--universal-vertex", universal, "Add a universal vertex");
        return s;
    };
    auto add_compose = [&](CLI::App* parent) {
        auto* s = parent->add_subcommand("cross-compose", "Induced matching composition of X3C instances");
        s->add_option("--param", param, "Parameter")->check(CLI::IsMember({"vc", "dc"}))->capture_default_str();
        s->add_option("--instances", instance_paths, "X3C files")->required();
        return s;
    };

    auto* reduce = app.add_subcommand("reduce", "Build a hardness instance");
    reduce->require_subcommand(1);
    auto* r_oit = add_one_in_three(reduce);
    auto* r_x3c = add_x3c(reduce);
    auto* r_cc = add_compose(reduce);
    std::string modulator_path;
    for (auto* s : {r_oit, r_x3c, r_cc}) {
        s->add_option("--out", out_path, "Graph file")->required();
        s->add_option("--names", names_path, "Vertex name file");
    }
    r_cc->add_option("--modulator", modulator_path, "Write the modulator, one vertex per line");

    auto* encode = app.add_subcommand("encode", "Certificate to matching");
    encode->require_subcommand(1);
    auto* e_oit = add_one_in_three(encode);
    e_oit->add_option("--assignment", assignment_path, "Assignment file")->required();
    auto* e_x3c = add_x3c(encode);
    e_x3c->add_option("--cover", cover_path, "Cover file")->required();
    auto* e_cc = add_compose(encode);
    e_cc->add_option("--which", which, "Instance holding the cover (1-based)")->required();
    e_cc->add_option("--cover", cover_path, "Cover file")->required();
    for (auto* s : {e_oit, e_x3c, e_cc}) s->add_option("--out", out_path, "Matching file")->required();

    auto* decode = app.add_subcommand("decode", "Matching to certificate");
    decode->require_subcommand(1);
    auto* d_oit = add_one_in_three(decode);
    auto* d_x3c = add_x3c(decode);
    for (auto* s : {d_oit, d_x3c}) {
        s->add_option("--matching", matching_path, "Matching file")->required();
        s->add_option("--out", out_path, "Certificate file (default: standard output)");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitYes;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*solve) {
            Graph g = load_graph(so.graph);
            DisconnectedOptimum res = run_solver(g, so, guards);
            if (res.feasible() && !so.emit.empty())
                write_file(so.emit, [&](std::ostream& f) { write_matching(f, *res.witness); });
            if (so.k) {
                bool yes = res.feasible() && *res.value >= *so.k;
                out << (yes ? "YES" : "NO") << '\n';
                return yes ? kExitYes : kExitNo;
            }
            if (!res.feasible()) {
                out << "infeasible\n";
                return kExitNo;
            }
            out << "beta_dc = " << *res.value << '\n';
            return kExitYes;
        }
        if (*connect) {
            Graph g = load_graph(graph_path);
            Matching m;
            if (g.edge_count() > 0) m = connect_matching(g, maximum_matching(g).matching);
            if (!emit_path.empty()) write_file(emit_path, [&](std::ostream& f) { write_matching(f, m); });
            out << "beta_c = " << m.size() << '\n';
            return kExitYes;
        }
        if (*oracle) {
            Graph g = load_graph(graph_path);
            DisconnectedOptimum res = run_brute(g, c, guards);
            if (!res.feasible()) {
                out << "infeasible\n";
                return kExitNo;
            }
            out << "beta_dc = " << *res.value << '\n';
            write_matching(out, *res.witness);
            return kExitYes;
        }
        if (*verify) {
            Graph g = load_graph(graph_path);
            Matching m = load(matching_path, [&](std::istream& in) { return parse_matching(in, &g); });
            Verdict v = verify_matching(g, m, k, c);
            out << to_string(v.kind) << " edges=" << v.edges << " components=" << v.components << '\n';
            if (!v.detail.empty()) out << v.detail << '\n';
            return v.ok() ? kExitYes : kExitNo;
        }
        if (*separators) {
            Graph g = load_graph(graph_path);
            for (const auto& s : enumerate_minimal_separators(g, guards.separator_budget).separators) {
                for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i] + 1;
                out << '\n';
            }
            return kExitYes;
        }
        if (*reduce) {
            if (*r_oit) {
                auto inst = load(cnf_path, [](std::istream& in) { return parse_cnf(in); });
                print_reduction(out, build_one_in_three(inst, diameter3, reduce_c), out_path, names_path);
            } else if (*r_x3c) {
                auto inst = load(instance_path, [](std::istream& in) { return parse_x3c(in); });
                print_reduction(out, build_x3c(inst, bounded, universal), out_path, names_path);
            } else {
                Composition comp = cross_compose(load_instances(instance_paths), parse_param(param));
                print_reduction(out, comp.output, out_path, names_path);
                if (!modulator_path.empty())
                    write_file(modulator_path, [&](std::ostream& f) {
                        for (Vertex v : comp.output.modulator) f << v + 1 << '\n';
                    });
            }
            return kExitYes;
        }
        if (*encode) {
            Matching m;
            if (*e_oit) {
                auto inst = load(cnf_path, [](std::istream& in) { return parse_cnf(in); });
                auto a = load(assignment_path, [&](std::istream& in) { return parse_assignment(in, inst.num_vars); });
                m = encode_assignment(inst, a, diameter3, reduce_c);
            } else if (*e_x3c) {
                auto inst = load(instance_path, [](std::istream& in) { return parse_x3c(in); });
                auto cover = load(cover_path, [&](std::istream& in) {
                    return parse_cover(in, static_cast<int>(inst.sets.size()));
                });
                m = encode_cover(inst, cover);
            } else {
                auto instances = load_instances(instance_paths);
                if (which < 1 || which > static_cast<int>(instances.size()))
                    throw InputError("--which must lie in 1.." + std::to_string(instances.size()));
                Composition comp = cross_compose(instances, parse_param(param));
                auto cover = load(cover_path, [&](std::istream& in) {
                    return parse_cover(in, static_cast<int>(instances[static_cast<std::size_t>(which - 1)].sets.size()));
                });
                m = compose_certificate(instances, comp, which - 1, cover);
            }
            write_file(out_path, [&](std::ostream& f) { write_matching(f, m); });
            out << "edges = " << m.size() << '\n';
            return kExitYes;
        }
        if (*decode) {
            try {
                if (*d_oit) {
                    auto inst = load(cnf_path, [](std::istream& in) { return parse_cnf(in); });
                    Graph g = build_one_in_three(inst, diameter3, reduce_c).graph;
                    Matching m = load(matching_path, [&](std::istream& in) { return parse_matching(in, &g); });
                    auto a = decode_matching(inst, m, diameter3, reduce_c);
                    if (out_path.empty()) write_assignment(out, a);
                    else write_file(out_path, [&](std::ostream& f) { write_assignment(f, a); });
                } else {
                    auto inst = load(instance_path, [](std::istream& in) { return parse_x3c(in); });
                    Graph g = build_x3c(inst, bounded, universal).graph;
                    Matching m = load(matching_path, [&](std::istream& in) { return parse_matching(in, &g); });
                    auto cover = decode_cover(inst, m, bounded, universal);
                    if (out_path.empty()) write_cover(out, cover);
                    else write_file(out_path, [&](std::ostream& f) { write_cover(f, cover); });
                }
            } catch (const CertificateError& e) {
                err << "rejected: " << e.what() << '\n';
                return kExitNo;
            }
            return kExitYes;
        }
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace dmatch
