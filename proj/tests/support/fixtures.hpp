#pragma once

#include <string>
#include <vector>

#include "idjt/compiler.hpp"
#include "idjt/model.hpp"

namespace idjt::fixtures {

// D1 then x in I1; P(x=yes | d1) = 0.2, P(x=yes | d2) = 0.6, reward 10 on yes.
ModelSpec tiny_spec();

// The four-decision example with binary variables and dyadic placeholder
// numbers (same content as models/four_decision.idm).
ModelSpec four_decision_spec();

// Elimination sequence l j k i h a c d D4 g D3 D2 f e D1 b.
std::vector<std::string> four_decision_sequence();

// Cliques (by member name) with their indices, ascending.
struct NamedClique {
  std::size_t index;
  std::vector<std::string> members;
};
std::vector<NamedClique> four_decision_cliques();

// The nine fill-ins as name pairs.
std::vector<std::pair<std::string, std::string>> four_decision_fill_ins();

// Union of the pairwise edges inside the nine cliques minus the fill-ins.
MoralGraph four_decision_moral(const InfluenceDiagram& id);

std::vector<VarId> ids(const InfluenceDiagram& id,
                       const std::vector<std::string>& names);

// Brute-force maximal complete vertex sets of a small graph.
std::vector<std::vector<VarId>> maximal_cliques(const UndirectedGraph& g);

// Re-run elimination on `g` and count the edges it would add.
std::size_t fill_count(const UndirectedGraph& g,
                       const std::vector<VarId>& sequence);

// |a - b| <= tol * max(|a|, |b|, floor).
bool close(double a, double b, double tol = 1e-9, double floor = 1.0);

// Pointwise comparison after bringing both tables to one variable order;
// the scale is the larger sup-norm of the two (at least `floor`).
bool tables_close(const Table& a, const Table& b, double tol = 1e-9,
                  double floor = 1e-300);

}  // namespace idjt::fixtures
