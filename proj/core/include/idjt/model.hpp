#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idjt/partition.hpp"
#include "idjt/table.hpp"

namespace idjt {

struct Variable {
  std::string name;
  VarKind kind = VarKind::chance;
  std::vector<std::string> states;
  // Information-set index for chance variables, decision index (1-based) for
  // decisions.
  int stage = 0;
};

struct Utility {
  std::string name;
  Table table;
};

// A discrete influence diagram.
//
// Variables are stored in canonical order, ascending (stage rank, name), and a
// VarId is a position in `variables`. Decisions never have parents and carry
// no table; informational arcs are implied by the partition and not stored.
struct InfluenceDiagram {
  std::vector<Variable> variables;
  // parents[v] is P_v in declaration order.
  std::vector<std::vector<VarId>> parents;
  // cpts[v] is P(v | P_v) over {v} u P_v; empty for decisions.
  std::vector<std::optional<Table>> cpts;
  std::vector<Utility> utilities;
  TemporalPartition partition;

  std::size_t size() const { return variables.size(); }
  std::optional<VarId> find(std::string_view name) const;
  // Throws ArgumentError for unknown names.
  VarId id(std::string_view name) const;
  const std::string& name(VarId v) const { return variables.at(v).name; }
  std::uint32_t card(VarId v) const {
    return static_cast<std::uint32_t>(variables.at(v).states.size());
  }
  Domain domain_of(std::vector<VarId> vars) const;
  // All variables as one domain.
  Domain universe() const;
};

// Name-keyed description of a diagram. Declaration order is free; build()
// assigns canonical ids.
struct ModelSpec {
  struct Var {
    std::string name;
    VarKind kind = VarKind::chance;
    std::vector<std::string> states;
    int stage = 0;
  };
  struct Cpt {
    std::string child;
    std::vector<std::string> parents;
    // Row-major over (parents..., child).
    std::vector<double> values;
  };
  struct Util {
    std::string name;
    std::vector<std::string> over;
    std::vector<double> values;
  };

  std::vector<Var> variables;
  std::vector<Cpt> cpts;
  std::vector<Util> utilities;

  ModelSpec& chance(std::string name, std::vector<std::string> states,
                    int stage);
  ModelSpec& decision(std::string name, std::vector<std::string> states,
                      int index);
  ModelSpec& cpt(std::string child, std::vector<std::string> parents,
                 std::vector<double> values);
  ModelSpec& utility(std::string name, std::vector<std::string> over,
                     std::vector<double> values);

  // Structural assembly only: throws ArgumentError on duplicate names,
  // undeclared references, wrong value counts, missing or repeated cpts, and
  // cpts attached to decisions. Semantic checks belong to validate().
  InfluenceDiagram build() const;
};

struct Violation {
  enum class Kind {
    states,
    partition,
    decision_parents,
    cycle,
    cpt_domain,
    cpt_negative,
    cpt_normalization,
    utility,
    temporal,
  };
  Kind kind;
  std::string message;
};

inline constexpr double kCptTolerance = 1e-9;

// Every violated invariant, in a stable order. Empty means valid.
std::vector<Violation> validate(const InfluenceDiagram& id);

Precedence precedes(const InfluenceDiagram& id, std::string_view u,
                    std::string_view v);

// Variables reachable from `v` along parent -> child arcs, excluding `v`.
std::vector<VarId> descendants(const InfluenceDiagram& id, VarId v);

}  // namespace idjt
