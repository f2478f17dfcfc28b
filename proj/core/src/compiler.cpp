#include "idjt/compiler.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "idjt/error.hpp"

namespace idjt {

bool UndirectedGraph::add_edge(VarId u, VarId v) {
  if (u == v) {
    throw ArgumentError("graph: self-loop on vertex " + std::to_string(u));
  }
  const bool added = adj_.at(u).insert(v).second;
  adj_.at(v).insert(u);
  return added;
}

std::vector<Edge> UndirectedGraph::edges() const {
  std::vector<Edge> out;
  for (VarId u = 0; u < adj_.size(); ++u) {
    for (VarId v : adj_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::size_t UndirectedGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& a : adj_) n += a.size();
  return n / 2;
}

MoralGraph moralize(const InfluenceDiagram& id) {
  MoralGraph g(id.size());
  for (VarId c = 0; c < id.size(); ++c) {
    const auto& ps = id.parents[c];
    for (std::size_t i = 0; i < ps.size(); ++i) {
      g.add_edge(ps[i], c);
      for (std::size_t j = i + 1; j < ps.size(); ++j) g.add_edge(ps[i], ps[j]);
    }
  }
  for (const auto& u : id.utilities) {
    const auto vars = u.table.domain().vars();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      for (std::size_t j = i + 1; j < vars.size(); ++j) {
        g.add_edge(vars[i], vars[j]);
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Elimination orders

namespace {

EliminationOrder number(std::vector<VarId> sequence) {
  EliminationOrder out;
  out.alpha.assign(sequence.size(), 0);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    out.alpha[sequence[i]] = sequence.size() - i;
  }
  out.sequence = std::move(sequence);
  return out;
}

// Mutable adjacency used while simulating elimination.
class EliminationGraph {
 public:
  explicit EliminationGraph(const UndirectedGraph& g)
      : adj_(g.size()) {
    for (VarId v = 0; v < g.size(); ++v) adj_[v] = g.neighbors(v);
  }

  const std::set<VarId>& neighbors(VarId v) const { return adj_[v]; }

  std::size_t fill_count(VarId v) const {
    const auto& nb = adj_[v];
    std::size_t missing = 0;
    for (auto i = nb.begin(); i != nb.end(); ++i) {
      for (auto j = std::next(i); j != nb.end(); ++j) {
        if (!adj_[*i].contains(*j)) ++missing;
      }
    }
    return missing;
  }

  // Completes the neighbourhood of v, removes v, and returns the added edges.
  std::vector<Edge> eliminate(VarId v) {
    std::vector<Edge> added;
    const std::vector<VarId> nb(adj_[v].begin(), adj_[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj_[nb[i]].insert(nb[j]).second) {
          adj_[nb[j]].insert(nb[i]);
          added.push_back(make_edge(nb[i], nb[j]));
        }
      }
    }
    for (VarId u : nb) adj_[u].erase(v);
    adj_[v].clear();
    return added;
  }

 private:
  std::vector<std::set<VarId>> adj_;
};

}  // namespace

EliminationOrder given_order(std::vector<VarId> sequence,
                             const TemporalPartition& p) {
  if (sequence.size() != p.size()) {
    throw ArgumentError("elimination order: expected " +
                        std::to_string(p.size()) + " variables, got " +
                        std::to_string(sequence.size()));
  }
  std::vector<bool> seen(p.size(), false);
  for (VarId v : sequence) {
    if (v >= p.size() || seen[v]) {
      throw ArgumentError("elimination order: not a permutation of the "
                          "variables");
    }
    seen[v] = true;
  }
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    if (p.rank(sequence[i]) > p.rank(sequence[i - 1])) {
      throw ArgumentError(
          "elimination order: variable " + std::to_string(sequence[i]) +
          " is eliminated after " + std::to_string(sequence[i - 1]) +
          ", which it precedes");
    }
  }
  return number(std::move(sequence));
}

EliminationOrder strong_elimination_order(const MoralGraph& g,
                                          const TemporalPartition& p,
                                          std::span<const std::uint32_t> cards,
                                          Heuristic heuristic,
                                          std::uint64_t seed) {
  if (g.size() != p.size() || cards.size() != p.size()) {
    throw ArgumentError("elimination order: graph and partition disagree");
  }
  std::vector<std::uint64_t> priority(g.size());
  std::iota(priority.begin(), priority.end(), std::uint64_t{0});
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(priority.begin(), priority.end(), rng);
  }

  std::vector<VarId> by_rank(g.size());
  std::iota(by_rank.begin(), by_rank.end(), VarId{0});
  std::stable_sort(by_rank.begin(), by_rank.end(), [&](VarId a, VarId b) {
    return p.rank(a) > p.rank(b);
  });

  EliminationGraph work(g);
  std::vector<VarId> sequence;
  sequence.reserve(g.size());
  for (std::size_t start = 0; start < by_rank.size();) {
    std::size_t stop = start;
    while (stop < by_rank.size() &&
           p.rank(by_rank[stop]) == p.rank(by_rank[start])) {
      ++stop;
    }
    std::vector<VarId> stage(by_rank.begin() + start, by_rank.begin() + stop);
    while (!stage.empty()) {
      std::size_t best = 0;
      // (primary, secondary, priority), lexicographically minimal wins.
      std::tuple<double, double, std::uint64_t> best_key{
          std::numeric_limits<double>::infinity(), 0.0, 0};
      for (std::size_t i = 0; i < stage.size(); ++i) {
        const VarId v = stage[i];
        const double fill = static_cast<double>(work.fill_count(v));
        double weight = cards[v];
        for (VarId u : work.neighbors(v)) weight *= cards[u];
        auto key = heuristic == Heuristic::min_fill
                       ? std::tuple{fill, weight, priority[v]}
                       : std::tuple{weight, fill, priority[v]};
        if (key < best_key) {
          best_key = key;
          best = i;
        }
      }
      const VarId v = stage[best];
      stage.erase(stage.begin() + static_cast<std::ptrdiff_t>(best));
      work.eliminate(v);
      sequence.push_back(v);
    }
    start = stop;
  }
  return number(std::move(sequence));
}

Triangulation triangulate(const UndirectedGraph& g,
                          const EliminationOrder& order) {
  if (order.sequence.size() != g.size()) {
    throw ArgumentError("triangulate: order does not cover the graph");
  }
  Triangulation out{g, {}};
  EliminationGraph work(g);
  for (VarId v : order.sequence) {
    for (const Edge& e : work.eliminate(v)) {
      out.graph.add_edge(e.a, e.b);
      out.fill_ins.push_back(e);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cliques

bool Clique::contains(VarId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

namespace {

std::size_t clique_index(const UndirectedGraph& g, const EliminationOrder& o,
                         const std::vector<VarId>& members) {
  std::vector<VarId> by_alpha = members;
  std::sort(by_alpha.begin(), by_alpha.end(),
            [&](VarId a, VarId b) { return o.alpha[a] > o.alpha[b]; });
  for (std::size_t i = 0; i < by_alpha.size(); ++i) {
    const VarId v = by_alpha[i];
    // W: members numbered below v.
    const std::span<const VarId> lower(by_alpha.begin() + i + 1,
                                       by_alpha.end());
    for (VarId u = 0; u < g.size(); ++u) {
      if (o.alpha[u] >= o.alpha[v]) continue;
      if (std::binary_search(members.begin(), members.end(), u)) continue;
      bool common = true;
      for (VarId w : lower) {
        if (!g.adjacent(u, w)) {
          common = false;
          break;
        }
      }
      if (common) return o.alpha[v];
    }
  }
  return 1;
}

}  // namespace

std::vector<Clique> cliques_of(const UndirectedGraph& triangulated,
                               const EliminationOrder& order) {
  if (order.sequence.size() != triangulated.size()) {
    throw ArgumentError("cliques_of: order does not cover the graph");
  }
  EliminationGraph work(triangulated);
  std::vector<std::vector<VarId>> candidates;
  for (VarId v : order.sequence) {
    std::vector<VarId> c(work.neighbors(v).begin(), work.neighbors(v).end());
    c.push_back(v);
    std::sort(c.begin(), c.end());
    if (!work.eliminate(v).empty()) {
      throw InvariantError(
          "cliques_of: the graph is not triangulated by this order (vertex " +
          std::to_string(v) + " needs fill-in)");
    }
    candidates.push_back(std::move(c));
  }

  std::vector<Clique> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < candidates.size() && maximal; ++j) {
      if (i == j) continue;
      const auto& a = candidates[i];
      const auto& b = candidates[j];
      if (std::includes(b.begin(), b.end(), a.begin(), a.end()) &&
          (b.size() > a.size() || j < i)) {
        maximal = false;
      }
    }
    if (maximal) {
      out.push_back({candidates[i],
                     clique_index(triangulated, order, candidates[i])});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Clique& a, const Clique& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].index == out[i - 1].index) {
      throw InvariantError("cliques_of: two cliques share index " +
                           std::to_string(out[i].index));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trees

namespace {

std::vector<VarId> intersect(const std::vector<VarId>& a,
                             const std::vector<VarId>& b) {
  std::vector<VarId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool subset(const std::vector<VarId>& a, const std::vector<VarId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string name_of(const Clique& c) { return "C" + std::to_string(c.index); }

}  // namespace

std::optional<std::size_t> StrongJunctionTree::position_of_index(
    std::size_t index) const {
  for (std::size_t k = 0; k < cliques.size(); ++k) {
    if (cliques[k].index == index) return k;
  }
  return std::nullopt;
}

std::vector<std::size_t> StrongJunctionTree::children(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < parent.size(); ++c) {
    if (parent[c] == k) out.push_back(c);
  }
  return out;
}

void StrongJunctionTree::attach(std::size_t child, std::size_t new_parent) {
  parent.at(child) = new_parent;
  separator.at(child) =
      intersect(cliques.at(child).members, cliques.at(new_parent).members);
}

StrongJunctionTree build_strong_tree(std::vector<Clique> cliques) {
  StrongJunctionTree t;
  t.parent.assign(cliques.size(), std::nullopt);
  t.separator.assign(cliques.size(), {});
  std::vector<VarId> seen;
  for (std::size_t k = 0; k < cliques.size(); ++k) {
    const auto& members = cliques[k].members;
    if (k > 0) {
      const auto s = intersect(members, seen);
      std::optional<std::size_t> host;
      for (std::size_t j = 0; j < k && !host; ++j) {
        if (subset(s, cliques[j].members)) host = j;
      }
      if (!host) {
        throw InvariantError("build_strong_tree: no earlier clique contains "
                             "the separator of " +
                             name_of(cliques[k]));
      }
      t.parent[k] = host;
      t.separator[k] = s;
    }
    std::vector<VarId> merged;
    std::set_union(seen.begin(), seen.end(), members.begin(), members.end(),
                   std::back_inserter(merged));
    seen = std::move(merged);
  }
  t.cliques = std::move(cliques);
  t.root = 0;
  return t;
}

StrongJunctionTree reroot(const StrongJunctionTree& tree,
                          std::size_t new_root) {
  StrongJunctionTree out = tree;
  std::optional<std::size_t> prev;
  std::optional<std::size_t> cur = new_root;
  while (cur) {
    const auto next = tree.parent[*cur];
    out.parent[*cur] = prev;
    prev = cur;
    cur = next;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.separator[k] = out.parent[k] ? intersect(out.cliques[k].members,
                                                 out.cliques[*out.parent[k]]
                                                     .members)
                                     : std::vector<VarId>{};
  }
  out.root = new_root;
  return out;
}

std::vector<TreeViolation> verify_strong(const StrongJunctionTree& tree,
                                         const TemporalPartition& p) {
  using K = TreeViolation::Kind;
  std::vector<TreeViolation> out;
  const std::size_t m = tree.size();
  if (m == 0) {
    out.push_back({K::structure, "tree has no cliques"});
    return out;
  }
  if (tree.parent.size() != m || tree.separator.size() != m ||
      tree.root >= m) {
    out.push_back({K::structure, "tree arrays have inconsistent sizes"});
    return out;
  }

  // Structure: the root has no parent, everything else reaches the root.
  if (tree.parent[tree.root]) {
    out.push_back({K::structure, "root " + name_of(tree.cliques[tree.root]) +
                                     " has a parent"});
  }
  std::vector<std::vector<std::size_t>> path_to_root(m);
  bool connected = true;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::size_t> path{k};
    std::optional<std::size_t> cur = tree.parent[k];
    while (cur && path.size() <= m) {
      path.push_back(*cur);
      cur = tree.parent[*cur];
    }
    if (path.back() != tree.root || path.size() > m) {
      out.push_back({K::structure, name_of(tree.cliques[k]) +
                                       " does not reach the root"});
      connected = false;
      continue;
    }
    if (k != tree.root && !tree.parent[k]) {
      out.push_back({K::structure,
                     name_of(tree.cliques[k]) + " has no parent"});
    }
    path_to_root[k] = std::move(path);
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!tree.parent[k]) continue;
    const auto expected =
        intersect(tree.cliques[k].members,
                  tree.cliques[*tree.parent[k]].members);
    if (expected != tree.separator[k]) {
      out.push_back({K::structure, "separator of " +
                                       name_of(tree.cliques[k]) +
                                       " is not its intersection with the "
                                       "parent"});
    }
  }

  // Running intersection over the clique list order.
  std::vector<VarId> seen = tree.cliques[0].members;
  for (std::size_t k = 1; k < m; ++k) {
    const auto s = intersect(tree.cliques[k].members, seen);
    bool found = false;
    for (std::size_t j = 0; j < k && !found; ++j) {
      found = subset(s, tree.cliques[j].members);
    }
    if (!found) {
      out.push_back({K::running_intersection,
                     "no clique before " + name_of(tree.cliques[k]) +
                         " contains its separator"});
    }
    std::vector<VarId> merged;
    std::set_union(seen.begin(), seen.end(), tree.cliques[k].members.begin(),
                   tree.cliques[k].members.end(), std::back_inserter(merged));
    seen = std::move(merged);
  }

  // Junction property: C_i n C_j lies in every clique on the path.
  if (connected) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const auto shared =
            intersect(tree.cliques[i].members, tree.cliques[j].members);
        if (shared.empty()) continue;
        const auto& pi = path_to_root[i];
        const auto& pj = path_to_root[j];
        // Path = pi up to the meeting point, then pj back down.
        std::vector<std::size_t> path;
        std::size_t meet = 0;
        for (std::size_t a = 0; a < pi.size(); ++a) {
          if (std::find(pj.begin(), pj.end(), pi[a]) != pj.end()) {
            meet = pi[a];
            break;
          }
          path.push_back(pi[a]);
        }
        path.push_back(meet);
        for (std::size_t b = 0; b < pj.size() && pj[b] != meet; ++b) {
          path.push_back(pj[b]);
        }
        for (std::size_t k : path) {
          if (!subset(shared, tree.cliques[k].members)) {
            out.push_back({K::junction,
                           name_of(tree.cliques[i]) + " n " +
                               name_of(tree.cliques[j]) +
                               " is not contained in " +
                               name_of(tree.cliques[k]) + " on their path"});
            break;
          }
        }
      }
    }
  }

  // Strong root: separator variables never come after the child's own ones.
  for (std::size_t k = 0; k < m; ++k) {
    if (!tree.parent[k]) continue;
    const auto s = intersect(tree.cliques[k].members,
                             tree.cliques[*tree.parent[k]].members);
    int max_sep = std::numeric_limits<int>::min();
    for (VarId v : s) max_sep = std::max(max_sep, p.rank(v));
    for (VarId w : tree.cliques[k].members) {
      if (std::binary_search(s.begin(), s.end(), w)) continue;
      if (p.rank(w) < max_sep) {
        out.push_back({K::strong_root,
                       "edge " + name_of(tree.cliques[*tree.parent[k]]) +
                           " - " + name_of(tree.cliques[k]) +
                           ": variable " + std::to_string(w) +
                           " precedes a separator variable"});
        break;
      }
    }
  }
  return out;
}

Compilation compile(const InfluenceDiagram& id, const OrderChoice& choice,
                    std::uint64_t seed) {
  Compilation c;
  c.moral = moralize(id);
  if (const auto* h = std::get_if<Heuristic>(&choice)) {
    std::vector<std::uint32_t> cards;
    for (VarId v = 0; v < id.size(); ++v) cards.push_back(id.card(v));
    c.order = strong_elimination_order(c.moral, id.partition, cards, *h, seed);
  } else {
    c.order = given_order(std::get<std::vector<VarId>>(choice), id.partition);
  }
  c.triangulation = triangulate(c.moral, c.order);
  c.tree = build_strong_tree(cliques_of(c.triangulation.graph, c.order));
  const auto problems = verify_strong(c.tree, id.partition);
  if (!problems.empty()) {
    throw InvariantError("compile: strong junction tree check failed: " +
                         problems.front().message);
  }
  return c;
}

}  // namespace idjt
