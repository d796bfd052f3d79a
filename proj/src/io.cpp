#include "orientcycle/io.hpp"

#include <fstream>
#include <sstream>

namespace oc {

std::string write_graph_text(const OrientedGraph& g) {
    std::ostringstream os;
    os << "n " << g.order() << " kind "
       << (g.kind() == GraphKind::oriented ? "oriented" : "digraph") << "\n";
    for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
    return os.str();
}

OrientedGraph read_graph_text(std::istream& is) {
    std::string tok_n, tok_kind, kind_str;
    int n = -1;
    if (!(is >> tok_n >> n >> tok_kind >> kind_str) || tok_n != "n" || tok_kind != "kind")
        throw std::runtime_error("bad graph header, expected: n <count> kind <oriented|digraph>");
    GraphKind kind;
    if (kind_str == "oriented")
        kind = GraphKind::oriented;
    else if (kind_str == "digraph")
        kind = GraphKind::digraph;
    else
        throw std::runtime_error("bad graph kind: " + kind_str);

    std::vector<std::pair<int, int>> edges;
    int u, v;
    while (is >> u >> v) edges.emplace_back(u, v);
    return OrientedGraph::from_edges(n, kind, edges);
}

OrientedGraph read_graph_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph_text(is);
}

void write_graph_file(const OrientedGraph& g, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write graph file: " + path);
    os << write_graph_text(g);
}

std::string write_graph_dot(const OrientedGraph& g) {
    std::ostringstream os;
    os << "digraph G {\n";
    for (int v = 0; v < g.order(); ++v) os << "  " << v << ";\n";
    for (auto [u, v] : g.edges()) os << "  " << u << " -> " << v << ";\n";
    os << "}\n";
    return os.str();
}

std::vector<int> read_vertex_sequence(std::istream& is) {
    std::vector<int> seq;
    int v;
    while (is >> v) seq.push_back(v);
    return seq;
}

std::vector<int> read_vertex_sequence_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open file: " + path);
    return read_vertex_sequence(is);
}

}  // namespace oc
