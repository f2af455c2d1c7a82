#pragma once

// Plain-text formats. Files use 1-based vertex, variable, element and bag
// ids; everything in memory is 0-based. Lines starting with "c" are
// comments and blank lines are ignored. Parsers throw ParseError with the
// offending line number.

#include "dmatch/graph.hpp"
#include "dmatch/interval.hpp"
#include "dmatch/matching.hpp"
#include "dmatch/reductions.hpp"
#include "dmatch/treewidth.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dmatch {

/// "p dm <n> <m>" followed by m lines "e <u> <v>".
Graph parse_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {});

/// Lines "<u> <v>". With a host graph, ids and edges are checked against it.
Matching parse_matching(std::istream& in, const Graph* host = nullptr);
void write_matching(std::ostream& out, const Matching& m);

/// "s td <bags> <width+1> <n>", bag lines "b <id> <v...>", tree edges "<id> <id>".
struct TreeDecompositionFile {
    TreeDecomposition td;
    int vertices = 0;
};
TreeDecompositionFile parse_tree_decomposition(std::istream& in);
void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td, int vertices);

/// "p cnf <vars> <clauses>" and clause lines of three literals ending in 0.
OneInThreeInstance parse_cnf(std::istream& in);
void write_cnf(std::ostream& out, const OneInThreeInstance& inst);

/// "p x3c <n> <m>" and m lines with three elements.
X3CInstance parse_x3c(std::istream& in);
void write_x3c(std::ostream& out, const X3CInstance& inst);

/// Lines "i <vertex> <left> <right>", each vertex 1..n exactly once.
IntervalModel parse_intervals(std::istream& in);
void write_intervals(std::ostream& out, const IntervalModel& model);

/// "v" lines of signed variables, terminated by 0.
std::vector<bool> parse_assignment(std::istream& in, int num_vars);
void write_assignment(std::ostream& out, const std::vector<bool>& assignment);

/// One 1-based set index per line.
std::vector<int> parse_cover(std::istream& in, int num_sets);
void write_cover(std::ostream& out, const std::vector<int>& cover);

/// Lines "n <vertex> <name>".
void write_names(std::ostream& out, const std::vector<std::string>& names);

} // namespace dmatch
