#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "idjt/model.hpp"
#include "idjt/solver.hpp"

namespace idjt {

// Brute-force ground truth for small diagrams: the decision tree unrolled
// over the full joint distribution, rolled back by alternating expectation
// and maximization. Independent of the compiler and the solver.

inline constexpr std::size_t kOracleCellCap = std::size_t{1} << 16;

struct OracleResult {
  double meu = 0.0;
  // For D_k, a choice for every configuration of all variables that precede
  // it (I_0..I_{k-1} and D_1..D_{k-1}), in decision order. Impossible
  // histories get state 0.
  std::vector<Policy> policies;
};

// Throws CapacityError when the joint state space exceeds `cap` cells and
// ArgumentError when the joint distribution has no mass at all.
OracleResult brute_force(const InfluenceDiagram& id,
                         std::size_t cap = kOracleCellCap);

// Expected utility obtained by following `policies` (one per decision, each
// reading only variables that precede its decision).
double policy_value(const InfluenceDiagram& id,
                    std::span<const Policy> policies,
                    std::size_t cap = kOracleCellCap);

}  // namespace idjt
