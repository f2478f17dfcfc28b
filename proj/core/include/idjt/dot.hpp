#pragma once

#include <string>

#include "idjt/compiler.hpp"
#include "idjt/model.hpp"

namespace idjt {

// Graphviz renderings. Decisions are drawn as boxes, chance variables as
// ellipses.
std::string moral_graph_dot(const InfluenceDiagram& id, const MoralGraph& g);

// Fill-in edges are dashed.
std::string triangulation_dot(const InfluenceDiagram& id,
                              const Triangulation& t);

// Cliques as boxes labelled "C<index>: members", parent links labelled with
// their separators, pointing towards the root.
std::string junction_tree_dot(const InfluenceDiagram& id,
                              const StrongJunctionTree& tree);

}  // namespace idjt
