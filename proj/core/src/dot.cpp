#include "idjt/dot.hpp"

#include <algorithm>
#include <sstream>

namespace idjt {
namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void write_vertices(std::ostringstream& os, const InfluenceDiagram& id) {
  for (VarId v = 0; v < id.size(); ++v) {
    os << "  " << quoted(id.name(v)) << " [shape="
       << (id.variables[v].kind == VarKind::decision ? "box" : "ellipse")
       << "];\n";
  }
}

std::string member_list(const InfluenceDiagram& id,
                        const std::vector<VarId>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ' ';
    out += id.name(vars[i]);
  }
  return out;
}

}  // namespace

std::string moral_graph_dot(const InfluenceDiagram& id, const MoralGraph& g) {
  std::ostringstream os;
  os << "graph moral {\n";
  write_vertices(os, id);
  for (const Edge& e : g.edges()) {
    os << "  " << quoted(id.name(e.a)) << " -- " << quoted(id.name(e.b))
       << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string triangulation_dot(const InfluenceDiagram& id,
                              const Triangulation& t) {
  std::vector<Edge> fills = t.fill_ins;
  std::sort(fills.begin(), fills.end());
  std::ostringstream os;
  os << "graph triangulated {\n";
  write_vertices(os, id);
  for (const Edge& e : t.graph.edges()) {
    os << "  " << quoted(id.name(e.a)) << " -- " << quoted(id.name(e.b));
    if (std::binary_search(fills.begin(), fills.end(), e)) {
      os << " [style=dashed]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string junction_tree_dot(const InfluenceDiagram& id,
                              const StrongJunctionTree& tree) {
  std::ostringstream os;
  os << "digraph junction_tree {\n  rankdir=BT;\n";
  for (const auto& c : tree.cliques) {
    os << "  C" << c.index << " [shape=box, label="
       << quoted("C" + std::to_string(c.index) + ": " +
                 member_list(id, c.members))
       << "];\n";
  }
  for (std::size_t k = 0; k < tree.size(); ++k) {
    if (!tree.parent[k]) continue;
    os << "  C" << tree.cliques[k].index << " -> C"
       << tree.cliques[*tree.parent[k]].index
       << " [label=" << quoted(member_list(id, tree.separator[k])) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace idjt
