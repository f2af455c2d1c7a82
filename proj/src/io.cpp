#include "dmatch/io.hpp"

#include "dmatch/errors.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace dmatch {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

bool is_comment(const std::vector<std::string>& tokens) { return tokens.empty() || tokens.front() == "c"; }

// Reads the next non-comment line; false at end of input.
bool next_line(std::istream& in, int& counter, Line& line) {
    std::string text;
    while (std::getline(in, text)) {
        ++counter;
        std::istringstream ss(text);
        std::vector<std::string> tokens;
        for (std::string t; ss >> t;) tokens.push_back(std::move(t));
        if (is_comment(tokens)) continue;
        line.number = counter;
        line.tokens = std::move(tokens);
        return true;
    }
    return false;
}

long long to_int(const Line& line, std::size_t i) {
    if (i >= line.tokens.size()) throw ParseError(line.number, "missing field");
    const std::string& t = line.tokens[i];
    long long value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) throw ParseError(line.number, "not an integer: " + t);
    return value;
}

int in_range(const Line& line, std::size_t i, long long lo, long long hi, const char* what) {
    long long v = to_int(line, i);
    if (v < lo || v > hi)
        throw ParseError(line.number, std::string(what) + " " + std::to_string(v) + " outside " +
                                          std::to_string(lo) + ".." + std::to_string(hi));
    return static_cast<int>(v);
}

void expect_fields(const Line& line, std::size_t n) {
    if (line.tokens.size() != n)
        throw ParseError(line.number, "expected " + std::to_string(n) + " fields, found " +
                                          std::to_string(line.tokens.size()));
}

void expect_header(const Line& line, const std::string& tag, const std::string& kind) {
    if (line.tokens.size() != 4 || line.tokens[0] != tag || line.tokens[1] != kind)
        throw ParseError(line.number, "expected header '" + tag + " " + kind + " ...'");
}

constexpr long long kMaxCount = 1 << 26;

} // namespace

// ------------------------------------------------------------------ graph

Graph parse_graph(std::istream& in) {
    int counter = 0;
    Line line;
    if (!next_line(in, counter, line)) throw ParseError(counter + 1, "missing header 'p dm <n> <m>'");
    expect_header(line, "p", "dm");
    const int n = in_range(line, 2, 0, kMaxCount, "vertex count");
    const int m = in_range(line, 3, 0, kMaxCount, "edge count");
    std::set<Edge> seen;
    std::vector<Edge> edges;
    while (next_line(in, counter, line)) {
        if (line.tokens[0] != "e") throw ParseError(line.number, "expected edge line 'e <u> <v>'");
        expect_fields(line, 3);
        int u = in_range(line, 1, 1, n, "vertex") - 1;
        int v = in_range(line, 2, 1, n, "vertex") - 1;
        if (u == v) throw ParseError(line.number, "self-loop at vertex " + std::to_string(u + 1));
        Edge e = make_edge(u, v);
        if (!seen.insert(e).second) throw ParseError(line.number, "duplicate edge");
        if (static_cast<int>(edges.size()) == m) throw ParseError(line.number, "more edges than declared");
        edges.push_back(e);
    }
    if (static_cast<int>(edges.size()) != m)
        throw ParseError(counter, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Graph(n, edges);
}

void write_graph(std::ostream& out, const Graph& g, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "c " << c << '\n';
    out << "p dm " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

// --------------------------------------------------------------- matching

Matching parse_matching(std::istream& in, const Graph* host) {
    int counter = 0;
    Line line;
    std::vector<Edge> edges;
    const long long hi = host ? host->vertex_count() : kMaxCount;
    while (next_line(in, counter, line)) {
        expect_fields(line, 2);
        int u = in_range(line, 0, 1, hi, "vertex") - 1;
        int v = in_range(line, 1, 1, hi, "vertex") - 1;
        if (u == v) throw ParseError(line.number, "self-loop");
        if (host && !host->adjacent(u, v))
            throw ParseError(line.number, "no edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                                              " in the graph");
        edges.push_back(make_edge(u, v));
    }
    return Matching(std::move(edges));
}

void write_matching(std::ostream& out, const Matching& m) {
    for (const Edge& e : m.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

// ---------------------------------------------------- tree decomposition

TreeDecompositionFile parse_tree_decomposition(std::istream& in) {
    int counter = 0;
    Line line;
    if (!next_line(in, counter, line)) throw ParseError(counter + 1, "missing header 's td <bags> <width+1> <n>'");
    if (line.tokens.size() != 5 || line.tokens[0] != "s" || line.tokens[1] != "td")
        throw ParseError(line.number, "expected header 's td <bags> <width+1> <n>'");
    const int header_line = line.number;
    const int bags = in_range(line, 2, 0, kMaxCount, "bag count");
    const int max_bag = in_range(line, 3, 0, kMaxCount, "bag size");
    const int n = in_range(line, 4, 0, kMaxCount, "vertex count");

    TreeDecompositionFile file;
    file.vertices = n;
    file.td.bags.resize(static_cast<std::size_t>(bags));
    std::vector<char> defined(static_cast<std::size_t>(bags), 0);
    std::set<std::pair<int, int>> tree_edges;
    while (next_line(in, counter, line)) {
        if (line.tokens[0] == "b") {
            int id = in_range(line, 1, 1, bags, "bag id") - 1;
            if (defined[static_cast<std::size_t>(id)]) throw ParseError(line.number, "bag defined twice");
            defined[static_cast<std::size_t>(id)] = 1;
            auto& bag = file.td.bags[static_cast<std::size_t>(id)];
            for (std::size_t i = 2; i < line.tokens.size(); ++i) bag.push_back(in_range(line, i, 1, n, "vertex") - 1);
            std::sort(bag.begin(), bag.end());
            if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
                throw ParseError(line.number, "vertex repeated in bag");
            if (static_cast<int>(bag.size()) > max_bag) throw ParseError(line.number, "bag larger than declared");
        } else {
            expect_fields(line, 2);
            int a = in_range(line, 0, 1, bags, "bag id") - 1;
            int b = in_range(line, 1, 1, bags, "bag id") - 1;
            if (a == b) throw ParseError(line.number, "tree edge is a loop");
            if (!tree_edges.insert(std::minmax(a, b)).second) throw ParseError(line.number, "duplicate tree edge");
            file.td.tree_edges.emplace_back(a, b);
        }
    }
    for (int id = 0; id < bags; ++id)
        if (!defined[static_cast<std::size_t>(id)])
            throw ParseError(header_line, "bag " + std::to_string(id + 1) + " never defined");
    int largest = 0;
    for (const auto& bag : file.td.bags) largest = std::max(largest, static_cast<int>(bag.size()));
    if (bags > 0 && largest != max_bag)
        throw ParseError(header_line, "declared width+1 " + std::to_string(max_bag) + " but largest bag has " +
                                          std::to_string(largest));
    return file;
}

void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td, int vertices) {
    int largest = 0;
    for (const auto& bag : td.bags) largest = std::max(largest, static_cast<int>(bag.size()));
    out << "s td " << td.bags.size() << ' ' << largest << ' ' << vertices << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        std::vector<Vertex> bag = td.bags[i];
        std::sort(bag.begin(), bag.end());
        out << "b " << i + 1;
        for (Vertex v : bag) out << ' ' << v + 1;
        out << '\n';
    }
    for (const auto& [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

// -------------------------------------------------------------------- CNF

OneInThreeInstance parse_cnf(std::istream& in) {
    int counter = 0;
    Line line;
    if (!next_line(in, counter, line)) throw ParseError(counter + 1, "missing header 'p cnf <vars> <clauses>'");
    expect_header(line, "p", "cnf");
    OneInThreeInstance inst;
    inst.num_vars = in_range(line, 2, 0, kMaxCount, "variable count");
    const int m = in_range(line, 3, 0, kMaxCount, "clause count");
    while (next_line(in, counter, line)) {
        expect_fields(line, 4);
        if (to_int(line, 3) != 0) throw ParseError(line.number, "clause must end in 0");
        std::array<Literal, 3> clause;
        for (std::size_t i = 0; i < 3; ++i) {
            long long lit = to_int(line, i);
            if (lit == 0) throw ParseError(line.number, "clause needs exactly three nonzero literals");
            long long var = lit < 0 ? -lit : lit;
            if (var > inst.num_vars) throw ParseError(line.number, "variable " + std::to_string(var) + " out of range");
            clause[i] = Literal{static_cast<int>(var) - 1, lit < 0};
        }
        if (clause[0].var == clause[1].var || clause[0].var == clause[2].var || clause[1].var == clause[2].var)
            throw ParseError(line.number, "repeated variable in clause");
        if (static_cast<int>(inst.clauses.size()) == m) throw ParseError(line.number, "more clauses than declared");
        inst.clauses.push_back(clause);
    }
    if (static_cast<int>(inst.clauses.size()) != m)
        throw ParseError(counter, "declared " + std::to_string(m) + " clauses, found " +
                                      std::to_string(inst.clauses.size()));
    return inst;
}

void write_cnf(std::ostream& out, const OneInThreeInstance& inst) {
    out << "p cnf " << inst.num_vars << ' ' << inst.clauses.size() << '\n';
    for (const auto& clause : inst.clauses) {
        for (const Literal& l : clause) out << (l.negated ? "-" : "") << l.var + 1 << ' ';
        out << "0\n";
    }
}

// -------------------------------------------------------------------- X3C

X3CInstance parse_x3c(std::istream& in) {
    int counter = 0;
    Line line;
    if (!next_line(in, counter, line)) throw ParseError(counter + 1, "missing header 'p x3c <n> <m>'");
    expect_header(line, "p", "x3c");
    X3CInstance inst;
    inst.ground = in_range(line, 2, 0, kMaxCount, "ground size");
    if (inst.ground % 3 != 0) throw ParseError(line.number, "ground size must be a multiple of 3");
    const int m = in_range(line, 3, 0, kMaxCount, "set count");
    std::set<std::array<int, 3>> seen;
    while (next_line(in, counter, line)) {
        expect_fields(line, 3);
        std::array<int, 3> s{};
        for (std::size_t i = 0; i < 3; ++i) s[i] = in_range(line, i, 1, inst.ground, "element") - 1;
        std::sort(s.begin(), s.end());
        if (s[0] == s[1] || s[1] == s[2]) throw ParseError(line.number, "repeated element in triple");
        if (!seen.insert(s).second) throw ParseError(line.number, "duplicate triple");
        if (static_cast<int>(inst.sets.size()) == m) throw ParseError(line.number, "more triples than declared");
        inst.sets.push_back(s);
    }
    if (static_cast<int>(inst.sets.size()) != m)
        throw ParseError(counter, "declared " + std::to_string(m) + " triples, found " +
                                      std::to_string(inst.sets.size()));
    return inst;
}

void write_x3c(std::ostream& out, const X3CInstance& inst) {
    out << "p x3c " << inst.ground << ' ' << inst.sets.size() << '\n';
    for (auto s : inst.sets) {
        std::sort(s.begin(), s.end());
        out << s[0] + 1 << ' ' << s[1] + 1 << ' ' << s[2] + 1 << '\n';
    }
}

// -------------------------------------------------------------- intervals

IntervalModel parse_intervals(std::istream& in) {
    int counter = 0;
    Line line;
    std::vector<std::pair<int, std::pair<int, int>>> rows;
    std::vector<int> line_of;
    while (next_line(in, counter, line)) {
        if (line.tokens[0] != "i") throw ParseError(line.number, "expected 'i <vertex> <left> <right>'");
        expect_fields(line, 4);
        int v = in_range(line, 1, 1, kMaxCount, "vertex");
        int l = in_range(line, 2, -kMaxCount, kMaxCount, "endpoint");
        int r = in_range(line, 3, -kMaxCount, kMaxCount, "endpoint");
        if (l > r) throw ParseError(line.number, "left endpoint exceeds right endpoint");
        rows.push_back({v, {l, r}});
        line_of.push_back(line.number);
    }
    IntervalModel model;
    model.intervals.resize(rows.size());
    std::vector<char> seen(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto v = static_cast<std::size_t>(rows[i].first - 1);
        if (v >= rows.size())
            throw ParseError(line_of[i], "vertex " + std::to_string(rows[i].first) + " outside 1.." +
                                             std::to_string(rows.size()));
        if (seen[v]) throw ParseError(line_of[i], "vertex listed twice");
        seen[v] = 1;
        model.intervals[v] = rows[i].second;
    }
    return model;
}

void write_intervals(std::ostream& out, const IntervalModel& model) {
    for (std::size_t v = 0; v < model.intervals.size(); ++v)
        out << "i " << v + 1 << ' ' << model.intervals[v].first << ' ' << model.intervals[v].second << '\n';
}

// ------------------------------------------------------------ certificates

std::vector<bool> parse_assignment(std::istream& in, int num_vars) {
    int counter = 0;
    Line line;
    std::vector<int> state(static_cast<std::size_t>(num_vars), -1);
    bool terminated = false;
    while (next_line(in, counter, line)) {
        if (line.tokens[0] != "v") throw ParseError(line.number, "expected 'v <literals> 0'");
        if (terminated) throw ParseError(line.number, "literals after terminating 0");
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            long long lit = to_int(line, i);
            if (lit == 0) {
                if (i + 1 != line.tokens.size()) throw ParseError(line.number, "literals after terminating 0");
                terminated = true;
                break;
            }
            long long var = lit < 0 ? -lit : lit;
            if (var > num_vars) throw ParseError(line.number, "variable " + std::to_string(var) + " out of range");
            int& slot = state[static_cast<std::size_t>(var - 1)];
            if (slot != -1) throw ParseError(line.number, "variable " + std::to_string(var) + " assigned twice");
            slot = lit > 0 ? 1 : 0;
        }
    }
    if (!terminated) throw ParseError(counter, "assignment not terminated by 0");
    std::vector<bool> a(static_cast<std::size_t>(num_vars));
    for (int v = 0; v < num_vars; ++v) {
        if (state[static_cast<std::size_t>(v)] == -1)
            throw ParseError(counter, "variable " + std::to_string(v + 1) + " unassigned");
        a[static_cast<std::size_t>(v)] = state[static_cast<std::size_t>(v)] == 1;
    }
    return a;
}

void write_assignment(std::ostream& out, const std::vector<bool>& assignment) {
    out << 'v';
    for (std::size_t v = 0; v < assignment.size(); ++v) out << ' ' << (assignment[v] ? "" : "-") << v + 1;
    out << " 0\n";
}

std::vector<int> parse_cover(std::istream& in, int num_sets) {
    int counter = 0;
    Line line;
    std::vector<int> cover;
    while (next_line(in, counter, line)) {
        expect_fields(line, 1);
        cover.push_back(in_range(line, 0, 1, num_sets, "set index") - 1);
    }
    return cover;
}

void write_cover(std::ostream& out, const std::vector<int>& cover) {
    for (int s : cover) out << s + 1 << '\n';
}

void write_names(std::ostream& out, const std::vector<std::string>& names) {
    for (std::size_t v = 0; v < names.size(); ++v) out << "n " << v + 1 << ' ' << names[v] << '\n';
}

} // namespace dmatch
