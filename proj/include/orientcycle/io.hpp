#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "orientcycle/graph.hpp"

namespace oc {

// Text format (bit-exact): first line "n <count> kind <oriented|digraph>",
// then one line "u v" per edge meaning u->v, 0-indexed, LF endings. Edges are
// written sorted.
std::string write_graph_text(const OrientedGraph& g);
OrientedGraph read_graph_text(std::istream& is);
OrientedGraph read_graph_file(const std::string& path);
void write_graph_file(const OrientedGraph& g, const std::string& path);

std::string write_graph_dot(const OrientedGraph& g);

// Cycle / permutation file: whitespace-separated vertex ids.
std::vector<int> read_vertex_sequence(std::istream& is);
std::vector<int> read_vertex_sequence_file(const std::string& path);

}  // namespace oc
