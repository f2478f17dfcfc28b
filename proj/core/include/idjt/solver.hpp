#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "idjt/compiler.hpp"
#include "idjt/model.hpp"
#include "idjt/table.hpp"

namespace idjt {

// Probability and utility potentials attached to one clique.
struct CliqueState {
  Table phi;
  Table psi;
};

// What a clique sends to its parent: phi_S and the contraction
// psi_S of phi * psi over the clique's private variables.
struct Message {
  Table phi;
  Table psi;
};

// The optimal alternative of a decision for every configuration of its
// requisite past.
struct Policy {
  VarId decision = 0;
  ChoiceTable choice;  // choice.domain holds the requisite variables

  const Domain& domain() const { return choice.domain; }
};

struct SolveResult {
  double meu = 0.0;
  // One policy per decision, in decision order D_1..D_n.
  std::vector<Policy> policies;
  // Clique index (not position) at which each policy was read, aligned with
  // `policies`.
  std::vector<std::size_t> policy_clique;

  const Policy& policy_for(VarId decision) const;
  std::size_t clique_for(VarId decision) const;
};

// One max-marginalization of a decision during collect or the root
// contraction.
struct MaxStep {
  VarId decision = 0;
  std::size_t clique = 0;  // position in the tree
  // Largest relative spread of phi across the decision's states.
  double phi_spread = 0.0;
  ChoiceTable choice;
};

inline constexpr double kSolverTolerance = 1e-9;

// Relative spread of `phi` across the states of `decision`, maximized over
// the other variables' configurations. Zero slices have spread 0.
double relative_spread(const Table& phi, VarId decision);

// Each CPT goes to the lowest-index clique holding its family, each utility
// to the lowest-index clique holding its domain. Throws InvariantError when
// none does.
std::vector<CliqueState> initialize(const StrongJunctionTree& tree,
                                    const InfluenceDiagram& id);

// Parent absorbs from child across separator `separator`; returns the
// message that was sent. `hook` sees every decision max-step taken while
// marginalizing the child.
Message absorb(CliqueState& parent, const CliqueState& child,
               std::span<const VarId> separator, const TemporalPartition& p,
               const MaxStepHook& hook = {});

// Runs collect, the root contraction, and policy extraction over one
// compiled tree, keeping every intermediate table.
class Evaluation {
 public:
  // Called after each absorption with the child's position.
  using AbsorbObserver = std::function<void(const Evaluation&, std::size_t)>;

  Evaluation(const InfluenceDiagram& id, const StrongJunctionTree& tree);

  // Children are absorbed in decreasing index order. Throws InvariantError
  // when a decision step breaks phi-constancy beyond kSolverTolerance.
  void collect(const AbsorbObserver& observer = {});
  // Contracts the root to a scalar pair (runs collect first if needed).
  double meu();
  SolveResult extract_policies();

  const StrongJunctionTree& tree() const { return *tree_; }
  const InfluenceDiagram& diagram() const { return *id_; }
  // Current clique potentials; retired cliques keep the state they sent from.
  const std::vector<CliqueState>& states() const { return states_; }
  const std::vector<std::optional<Message>>& messages() const {
    return messages_;
  }
  const std::vector<bool>& retired() const { return retired_; }
  const std::vector<MaxStep>& max_steps() const { return max_steps_; }
  bool collected() const { return collected_; }

 private:
  MaxStepHook hook_for(std::size_t clique);

  const InfluenceDiagram* id_;
  const StrongJunctionTree* tree_;
  std::vector<CliqueState> states_;
  std::vector<std::optional<Message>> messages_;
  std::vector<bool> retired_;
  std::vector<MaxStep> max_steps_;
  bool collected_ = false;
  std::optional<Contraction> root_;
};

// initialize + collect + meu + extract_policies.
SolveResult solve(const InfluenceDiagram& id, const StrongJunctionTree& tree);

}  // namespace idjt
