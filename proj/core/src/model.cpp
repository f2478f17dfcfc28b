#include "idjt/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "idjt/error.hpp"

namespace idjt {

std::optional<VarId> InfluenceDiagram::find(std::string_view name) const {
  for (VarId v = 0; v < variables.size(); ++v) {
    if (variables[v].name == name) return v;
  }
  return std::nullopt;
}

VarId InfluenceDiagram::id(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw ArgumentError("unknown variable '" + std::string(name) + "'");
}

Domain InfluenceDiagram::domain_of(std::vector<VarId> vars) const {
  std::vector<std::uint32_t> cards;
  cards.reserve(vars.size());
  for (VarId v : vars) cards.push_back(card(v));
  return Domain(std::move(vars), std::move(cards));
}

Domain InfluenceDiagram::universe() const {
  std::vector<VarId> all(variables.size());
  std::iota(all.begin(), all.end(), VarId{0});
  return domain_of(std::move(all));
}

// ---------------------------------------------------------------------------
// ModelSpec

ModelSpec& ModelSpec::chance(std::string name, std::vector<std::string> states,
                             int stage) {
  variables.push_back({std::move(name), VarKind::chance, std::move(states),
                       stage});
  return *this;
}

ModelSpec& ModelSpec::decision(std::string name,
                               std::vector<std::string> states, int index) {
  variables.push_back({std::move(name), VarKind::decision, std::move(states),
                       index});
  return *this;
}

ModelSpec& ModelSpec::cpt(std::string child, std::vector<std::string> parents,
                          std::vector<double> values) {
  cpts.push_back({std::move(child), std::move(parents), std::move(values)});
  return *this;
}

ModelSpec& ModelSpec::utility(std::string name, std::vector<std::string> over,
                              std::vector<double> values) {
  utilities.push_back({std::move(name), std::move(over), std::move(values)});
  return *this;
}

namespace {

Table table_from_names(const InfluenceDiagram& id,
                       const std::vector<std::string>& order,
                       const std::vector<double>& values,
                       const std::string& what) {
  std::vector<VarId> ids;
  std::vector<std::uint32_t> cards;
  std::set<VarId> seen;
  std::size_t expected = 1;
  for (const auto& name : order) {
    auto v = id.find(name);
    if (!v) {
      throw ArgumentError(what + ": undeclared variable '" + name + "'");
    }
    if (!seen.insert(*v).second) {
      throw ArgumentError(what + ": variable '" + name + "' listed twice");
    }
    ids.push_back(*v);
    cards.push_back(id.card(*v));
    expected *= id.card(*v);
  }
  if (values.size() != expected) {
    throw ArgumentError(what + ": expected " + std::to_string(expected) +
                        " values, got " + std::to_string(values.size()));
  }
  return Table::from_layout(ids, cards, values);
}

}  // namespace

InfluenceDiagram ModelSpec::build() const {
  std::set<std::string> names;
  for (const auto& v : variables) {
    if (!names.insert(v.name).second) {
      throw ArgumentError("duplicate variable '" + v.name + "'");
    }
    if (v.states.empty()) {
      throw ArgumentError("variable '" + v.name + "' has no states");
    }
  }

  std::vector<std::size_t> order(variables.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int ra = stage_rank(variables[a].kind, variables[a].stage);
    const int rb = stage_rank(variables[b].kind, variables[b].stage);
    if (ra != rb) return ra < rb;
    return variables[a].name < variables[b].name;
  });

  InfluenceDiagram id;
  std::vector<VarKind> kinds;
  std::vector<int> stages;
  for (std::size_t i : order) {
    const auto& v = variables[i];
    id.variables.push_back({v.name, v.kind, v.states, v.stage});
    kinds.push_back(v.kind);
    stages.push_back(v.stage);
  }
  id.parents.resize(id.variables.size());
  id.cpts.resize(id.variables.size());
  id.partition = TemporalPartition(std::move(kinds), std::move(stages));

  for (const auto& c : cpts) {
    auto child = id.find(c.child);
    if (!child) {
      throw ArgumentError("cpt: undeclared variable '" + c.child + "'");
    }
    if (id.variables[*child].kind == VarKind::decision) {
      throw ArgumentError("cpt: '" + c.child +
                          "' is a decision and cannot have a table");
    }
    if (id.cpts[*child]) {
      throw ArgumentError("cpt: second table for '" + c.child + "'");
    }
    std::vector<std::string> layout = c.parents;
    layout.push_back(c.child);
    id.cpts[*child] = table_from_names(id, layout, c.values, "cpt " + c.child);
    for (const auto& p : c.parents) id.parents[*child].push_back(id.id(p));
  }
  for (VarId v = 0; v < id.size(); ++v) {
    if (id.variables[v].kind == VarKind::chance && !id.cpts[v]) {
      throw ArgumentError("chance variable '" + id.name(v) + "' has no cpt");
    }
  }
  for (const auto& u : utilities) {
    if (u.over.empty()) {
      throw ArgumentError("utility " + u.name + ": empty domain");
    }
    id.utilities.push_back(
        {u.name, table_from_names(id, u.over, u.values, "utility " + u.name)});
  }
  return id;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<VarId> descendants(const InfluenceDiagram& id, VarId v) {
  std::vector<std::vector<VarId>> children(id.size());
  for (VarId c = 0; c < id.size(); ++c) {
    for (VarId p : id.parents[c]) {
      if (p < id.size()) children[p].push_back(c);
    }
  }
  std::vector<bool> seen(id.size(), false);
  std::vector<VarId> stack{v};
  std::vector<VarId> out;
  while (!stack.empty()) {
    VarId u = stack.back();
    stack.pop_back();
    for (VarId c : children[u]) {
      if (seen[c]) continue;
      seen[c] = true;
      out.push_back(c);
      stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::remove(out.begin(), out.end(), v), out.end());
  return out;
}

namespace {

std::string describe_config(const InfluenceDiagram& id, const Domain& d,
                            std::span<const std::uint32_t> states) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) os << ", ";
    os << id.name(d.vars()[i]) << "="
       << id.variables[d.vars()[i]].states[states[i]];
  }
  os << ")";
  return os.str();
}

bool has_cycle(const InfluenceDiagram& id) {
  std::vector<int> indegree(id.size(), 0);
  std::vector<std::vector<VarId>> children(id.size());
  for (VarId c = 0; c < id.size(); ++c) {
    for (VarId p : id.parents[c]) {
      if (p >= id.size()) continue;
      children[p].push_back(c);
      ++indegree[c];
    }
  }
  std::vector<VarId> ready;
  for (VarId v = 0; v < id.size(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    VarId v = ready.back();
    ready.pop_back();
    ++visited;
    for (VarId c : children[v]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  return visited != id.size();
}

}  // namespace

std::vector<Violation> validate(const InfluenceDiagram& id) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  auto report = [&](K kind, std::string msg) {
    out.push_back({kind, std::move(msg)});
  };

  std::set<std::string> names;
  for (const auto& v : id.variables) {
    if (!names.insert(v.name).second) {
      report(K::states, "variable name '" + v.name + "' is not unique");
    }
    if (v.states.size() < 2) {
      report(K::states, "variable '" + v.name + "' needs at least 2 states");
    }
    std::set<std::string> labels(v.states.begin(), v.states.end());
    if (labels.size() != v.states.size()) {
      report(K::states, "variable '" + v.name + "' repeats a state label");
    }
  }

  // Decisions must be indexed 1..n without gaps or repeats; chance variables
  // belong to some I_k with 0 <= k <= n.
  const int n = static_cast<int>(std::count_if(
      id.variables.begin(), id.variables.end(),
      [](const Variable& v) { return v.kind == VarKind::decision; }));
  std::map<int, std::vector<std::string>> by_index;
  for (const auto& v : id.variables) {
    if (v.kind == VarKind::decision) {
      by_index[v.stage].push_back(v.name);
    } else if (v.stage < 0 || v.stage > n) {
      report(K::partition, "chance variable '" + v.name + "' has stage " +
                               std::to_string(v.stage) + " outside 0.." +
                               std::to_string(n));
    }
  }
  for (int k = 1; k <= n; ++k) {
    auto it = by_index.find(k);
    if (it == by_index.end()) {
      report(K::partition, "no decision has index " + std::to_string(k));
    } else if (it->second.size() > 1) {
      report(K::partition, "decisions '" + it->second[0] + "' and '" +
                               it->second[1] + "' share index " +
                               std::to_string(k));
    }
  }
  for (const auto& [k, ds] : by_index) {
    if (k < 1 || k > n) {
      report(K::partition, "decision '" + ds.front() + "' has index " +
                               std::to_string(k) + " outside 1.." +
                               std::to_string(n));
    }
  }

  for (VarId v = 0; v < id.size(); ++v) {
    const auto& var = id.variables[v];
    if (var.kind == VarKind::decision) {
      if (!id.parents[v].empty()) {
        report(K::decision_parents,
               "decision '" + var.name + "' has parents in the graph");
      }
      if (id.cpts[v]) {
        report(K::decision_parents,
               "decision '" + var.name + "' carries a probability table");
      }
    }
    for (VarId p : id.parents[v]) {
      if (p >= id.size()) {
        report(K::cpt_domain, "variable '" + var.name +
                                  "' has a parent id out of range");
      }
    }
  }

  if (has_cycle(id)) report(K::cycle, "the directed graph has a cycle");

  for (VarId v = 0; v < id.size(); ++v) {
    const auto& var = id.variables[v];
    if (var.kind != VarKind::chance) continue;
    if (!id.cpts[v]) {
      report(K::cpt_domain, "chance variable '" + var.name + "' has no cpt");
      continue;
    }
    const Table& cpt = *id.cpts[v];
    std::vector<VarId> family = id.parents[v];
    family.push_back(v);
    std::sort(family.begin(), family.end());
    std::vector<VarId> actual(cpt.domain().vars().begin(),
                              cpt.domain().vars().end());
    bool cards_ok = true;
    for (std::size_t i = 0; i < actual.size(); ++i) {
      if (actual[i] >= id.size() ||
          cpt.domain().cards()[i] != id.card(actual[i])) {
        cards_ok = false;
      }
    }
    if (family != actual || !cards_ok) {
      report(K::cpt_domain, "cpt of '" + var.name +
                                "' is not over the variable and its parents");
      continue;
    }
    bool negative = false;
    for (double x : cpt.values()) {
      if (!(x >= 0.0) || !std::isfinite(x)) negative = true;
    }
    if (negative) {
      report(K::cpt_negative,
             "cpt of '" + var.name + "' has a negative or non-finite entry");
      continue;
    }
    const Table rows = sum_out(cpt, v);
    std::vector<std::uint32_t> states(rows.domain().size(), 0);
    for (std::size_t cell = 0; cell < rows.size(); ++cell) {
      if (std::abs(rows[cell] - 1.0) > kCptTolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "cpt of '" << var.name << "' row "
           << describe_config(id, rows.domain(), states) << " sums to "
           << rows[cell];
        report(K::cpt_normalization, os.str());
      }
      for (std::size_t i = states.size(); i-- > 0;) {
        if (++states[i] < rows.domain().cards()[i]) break;
        states[i] = 0;
      }
    }
  }

  for (const auto& u : id.utilities) {
    for (VarId v : u.table.domain().vars()) {
      if (v >= id.size() || u.table.domain().card(v) != id.card(v)) {
        report(K::utility, "utility '" + u.name + "' has a bad domain");
        break;
      }
    }
    for (double x : u.table.values()) {
      if (!std::isfinite(x)) {
        report(K::utility, "utility '" + u.name + "' has a non-finite value");
        break;
      }
    }
  }

  // A decision may not influence anything observed before it is taken.
  for (VarId d = 0; d < id.size(); ++d) {
    const auto& dv = id.variables[d];
    if (dv.kind != VarKind::decision) continue;
    for (VarId x : descendants(id, d)) {
      const auto& xv = id.variables[x];
      if (xv.kind == VarKind::chance && xv.stage < dv.stage) {
        report(K::temporal, "decision '" + dv.name + "' (D" +
                                std::to_string(dv.stage) +
                                ") has a directed path to '" + xv.name +
                                "', observed earlier in I" +
                                std::to_string(xv.stage));
      }
    }
  }
  return out;
}

Precedence precedes(const InfluenceDiagram& id, std::string_view u,
                    std::string_view v) {
  return id.partition.precedes(id.id(u), id.id(v));
}

}  // namespace idjt
