#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "idjt/model.hpp"
#include "idjt/partition.hpp"

namespace idjt {

struct Edge {
  VarId a;
  VarId b;  // a < b

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VarId u, VarId v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

// Simple undirected graph over vertices 0..n-1.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(std::size_t n) : adj_(n) {}

  std::size_t size() const { return adj_.size(); }
  // Returns true if the edge is new. Self-loops throw ArgumentError.
  bool add_edge(VarId u, VarId v);
  bool adjacent(VarId u, VarId v) const { return adj_.at(u).contains(v); }
  const std::set<VarId>& neighbors(VarId v) const { return adj_.at(v); }
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  friend bool operator==(const UndirectedGraph&,
                         const UndirectedGraph&) = default;

 private:
  std::vector<std::set<VarId>> adj_;
};

using MoralGraph = UndirectedGraph;

// Parent arcs with directions dropped, parents of a common child married,
// and every utility domain completed. Informational arcs are not included.
MoralGraph moralize(const InfluenceDiagram& id);

enum class Heuristic { min_fill, min_weight };

struct EliminationOrder {
  // First element is eliminated first.
  std::vector<VarId> sequence;
  // alpha[v] = |U| - i + 1 for the i-th eliminated variable (1-based i).
  std::vector<std::size_t> alpha;
};

// Checks that `sequence` is a permutation of the partition's variables and
// that stage ranks never increase along it; throws ArgumentError otherwise.
EliminationOrder given_order(std::vector<VarId> sequence,
                             const TemporalPartition& p);

// Stage-blocked greedy order: all of I_n, then D_n, then I_{n-1}, ..., down
// to I_0. Inside a stage the heuristic picks the next vertex on the evolving
// graph. Ties fall back to the other criterion (fill count vs. clique
// weight), then to ascending id; a nonzero seed replaces that last rule by a
// seeded random priority.
EliminationOrder strong_elimination_order(const MoralGraph& g,
                                          const TemporalPartition& p,
                                          std::span<const std::uint32_t> cards,
                                          Heuristic heuristic,
                                          std::uint64_t seed = 0);

struct Triangulation {
  UndirectedGraph graph;
  // In the order they were introduced.
  std::vector<Edge> fill_ins;
};

Triangulation triangulate(const UndirectedGraph& g,
                          const EliminationOrder& order);

struct Clique {
  std::vector<VarId> members;  // ascending
  std::size_t index = 0;

  bool contains(VarId v) const;
  friend bool operator==(const Clique&, const Clique&) = default;
};

// Maximal elimination cliques of a graph that `order` eliminates without
// fill-in, each labelled with its index, sorted ascending by index. Throws
// InvariantError if the order produces fill-in or two cliques share an
// index.
std::vector<Clique> cliques_of(const UndirectedGraph& triangulated,
                               const EliminationOrder& order);

// Cliques linked into a tree. Position 0 holds the lowest index; parent links
// point towards the root.
struct StrongJunctionTree {
  std::vector<Clique> cliques;
  std::vector<std::optional<std::size_t>> parent;
  // separator[k] = cliques[k] n cliques[parent[k]]; empty at the root.
  std::vector<std::vector<VarId>> separator;
  std::size_t root = 0;

  std::size_t size() const { return cliques.size(); }
  std::optional<std::size_t> position_of_index(std::size_t index) const;
  std::vector<std::size_t> children(std::size_t k) const;
  // Re-links clique `child` under `new_parent` and recomputes its separator.
  void attach(std::size_t child, std::size_t new_parent);
};

// Root = first clique; every later clique C_k hangs under the lowest-index
// earlier clique containing S_k = C_k n (C_1 u ... u C_{k-1}). Throws
// InvariantError when no earlier clique contains S_k.
StrongJunctionTree build_strong_tree(std::vector<Clique> cliques);

// The same undirected tree re-hung from another clique.
StrongJunctionTree reroot(const StrongJunctionTree& tree, std::size_t new_root);

struct TreeViolation {
  enum class Kind { structure, junction, running_intersection, strong_root };
  Kind kind;
  std::string message;
};

std::vector<TreeViolation> verify_strong(const StrongJunctionTree& tree,
                                         const TemporalPartition& p);

// Either a heuristic or an explicit sequence.
using OrderChoice = std::variant<Heuristic, std::vector<VarId>>;

struct Compilation {
  MoralGraph moral;
  EliminationOrder order;
  Triangulation triangulation;
  StrongJunctionTree tree;
};

// moralize -> order -> triangulate -> cliques_of -> build_strong_tree. Throws
// InvariantError if verify_strong rejects the result.
Compilation compile(const InfluenceDiagram& id, const OrderChoice& choice,
                    std::uint64_t seed = 0);

}  // namespace idjt
