#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace idjt::fixtures {

ModelSpec tiny_spec() {
  ModelSpec s;
  s.decision("D1", {"d1", "d2"}, 1);
  s.chance("x", {"no", "yes"}, 1);
  s.cpt("x", {"D1"}, {0.8, 0.2, 0.4, 0.6});
  s.utility("reward", {"x"}, {0, 10});
  return s;
}

ModelSpec four_decision_spec() {
  ModelSpec s;
  const std::vector<std::string> ny{"n", "y"};
  const std::vector<std::string> act{"no", "yes"};
  s.chance("b", ny, 0);
  s.chance("e", ny, 1);
  s.chance("f", ny, 1);
  s.chance("g", ny, 3);
  for (const char* v : {"a", "c", "d", "h", "i", "j", "k", "l"}) {
    s.chance(v, ny, 4);
  }
  for (int k = 1; k <= 4; ++k) s.decision("D" + std::to_string(k), act, k);

  s.cpt("a", {}, {0.375, 0.625});
  s.cpt("b", {}, {0.25, 0.75});
  s.cpt("c", {"a", "b"}, {0.5, 0.5, 0.75, 0.25, 0.125, 0.875, 0.125, 0.875});
  s.cpt("d", {"b", "D1"}, {0.875, 0.125, 0.625, 0.375, 0.125, 0.875, 0.375, 0.625});
  s.cpt("e", {"c", "d"}, {0.625, 0.375, 0.125, 0.875, 0.625, 0.375, 0.25, 0.75});
  s.cpt("f", {"d"}, {0.125, 0.875, 0.125, 0.875});
  s.cpt("g", {"e"}, {0.5, 0.5, 0.5, 0.5});
  s.cpt("h", {"f"}, {0.125, 0.875, 0.25, 0.75});
  s.cpt("i", {"D2", "g"}, {0.125, 0.875, 0.625, 0.375, 0.5, 0.5, 0.125, 0.875});
  s.cpt("j", {"h", "k"}, {0.875, 0.125, 0.625, 0.375, 0.125, 0.875, 0.25, 0.75});
  s.cpt("k", {"h", "D3"}, {0.75, 0.25, 0.75, 0.25, 0.625, 0.375, 0.125, 0.875});
  s.cpt("l", {"D4", "i"}, {0.625, 0.375, 0.625, 0.375, 0.5, 0.5, 0.125, 0.875});

  s.utility("u1", {"D1"}, {0, -2});
  s.utility("u2", {"D3"}, {0, -3});
  s.utility("u3", {"l"}, {10, 40});
  s.utility("u4", {"j", "k"}, {5, -4, 12, 20});
  return s;
}

std::vector<std::string> four_decision_sequence() {
  return {"l", "j", "k", "i", "h", "a", "c", "d",
          "D4", "g", "D3", "D2", "f", "e", "D1", "b"};
}

std::vector<NamedClique> four_decision_cliques() {
  return {
      {1, {"b", "D1", "e", "f", "d"}}, {5, {"e", "D2", "g"}},
      {6, {"f", "D3", "h"}},           {8, {"D2", "g", "D4", "i"}},
      {10, {"b", "e", "d", "c"}},      {11, {"b", "c", "a"}},
      {14, {"D3", "h", "k"}},          {15, {"h", "k", "j"}},
      {16, {"D4", "i", "l"}},
  };
}

std::vector<std::pair<std::string, std::string>> four_decision_fill_ins() {
  return {{"D2", "D4"}, {"g", "D4"}, {"f", "D3"}, {"b", "e"}, {"D1", "e"},
          {"D1", "f"},  {"b", "f"},  {"e", "f"},  {"e", "D2"}};
}

MoralGraph four_decision_moral(const InfluenceDiagram& id) {
  std::set<Edge> edges;
  for (const auto& c : four_decision_cliques()) {
    const auto vs = ids(id, c.members);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        edges.insert(make_edge(vs[i], vs[j]));
      }
    }
  }
  for (const auto& [u, v] : four_decision_fill_ins()) {
    edges.erase(make_edge(id.id(u), id.id(v)));
  }
  MoralGraph g(id.size());
  for (const Edge& e : edges) g.add_edge(e.a, e.b);
  return g;
}

std::vector<VarId> ids(const InfluenceDiagram& id,
                       const std::vector<std::string>& names) {
  std::vector<VarId> out;
  for (const auto& n : names) out.push_back(id.id(n));
  return out;
}

std::vector<std::vector<VarId>> maximal_cliques(const UndirectedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> complete;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (VarId u = 0; u < n && ok; ++u) {
      if (!(mask >> u & 1)) continue;
      for (VarId v = u + 1; v < n && ok; ++v) {
        if ((mask >> v & 1) && !g.adjacent(u, v)) ok = false;
      }
    }
    if (ok) complete.push_back(mask);
  }
  std::vector<std::vector<VarId>> out;
  for (std::uint32_t m : complete) {
    const bool maximal = std::none_of(
        complete.begin(), complete.end(),
        [&](std::uint32_t o) { return o != m && (o & m) == m; });
    if (!maximal) continue;
    std::vector<VarId> members;
    for (VarId v = 0; v < n; ++v) {
      if (m >> v & 1) members.push_back(v);
    }
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t fill_count(const UndirectedGraph& g,
                       const std::vector<VarId>& sequence) {
  std::vector<std::set<VarId>> adj(g.size());
  for (VarId v = 0; v < g.size(); ++v) adj[v] = g.neighbors(v);
  std::size_t added = 0;
  for (VarId v : sequence) {
    std::vector<VarId> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i]].insert(nb[j]).second) {
          adj[nb[j]].insert(nb[i]);
          ++added;
        }
      }
    }
    for (VarId u : nb) adj[u].erase(v);
    adj[v].clear();
  }
  return added;
}

bool close(double a, double b, double tol, double floor) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

bool tables_close(const Table& a, const Table& b, double tol, double floor) {
  const Domain& da = a.domain();
  if (!(Domain::unite(da, b.domain()) == da) ||
      da.size() != b.domain().size()) {
    return false;
  }
  double scale = floor;
  for (double x : a.values()) scale = std::max(scale, std::abs(x));
  for (double x : b.values()) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol * scale) return false;
  }
  return true;
}

}  // namespace idjt::fixtures
