#include "idjt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "idjt/error.hpp"

namespace idjt {

const Policy& SolveResult::policy_for(VarId decision) const {
  for (const auto& p : policies) {
    if (p.decision == decision) return p;
  }
  throw ArgumentError("no policy for variable " + std::to_string(decision));
}

std::size_t SolveResult::clique_for(VarId decision) const {
  for (std::size_t i = 0; i < policies.size(); ++i) {
    if (policies[i].decision == decision) return policy_clique[i];
  }
  throw ArgumentError("no policy for variable " + std::to_string(decision));
}

double relative_spread(const Table& phi, VarId decision) {
  const auto& d = phi.domain();
  const auto pos = d.position(decision);
  if (!pos) {
    throw ArgumentError("relative_spread: decision not in the table");
  }
  std::size_t outer = 1, inner = 1;
  const std::size_t card = d.cards()[*pos];
  for (std::size_t i = 0; i < *pos; ++i) outer *= d.cards()[i];
  for (std::size_t i = *pos + 1; i < d.size(); ++i) inner *= d.cards()[i];
  double worst = 0.0;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      const std::size_t base = o * card * inner + i;
      double lo = phi[base], hi = phi[base];
      for (std::size_t k = 1; k < card; ++k) {
        lo = std::min(lo, phi[base + k * inner]);
        hi = std::max(hi, phi[base + k * inner]);
      }
      const double scale = std::max(std::abs(lo), std::abs(hi));
      if (scale > 0.0) worst = std::max(worst, (hi - lo) / scale);
    }
  }
  return worst;
}

std::vector<CliqueState> initialize(const StrongJunctionTree& tree,
                                    const InfluenceDiagram& id) {
  std::vector<CliqueState> states;
  states.reserve(tree.size());
  for (const auto& c : tree.cliques) {
    Domain d = id.domain_of(c.members);
    states.push_back({Table::unit(d), Table::null(d)});
  }
  auto host = [&](std::span<const VarId> vars,
                  const std::string& what) -> std::size_t {
    for (std::size_t k = 0; k < tree.size(); ++k) {
      if (std::all_of(vars.begin(), vars.end(), [&](VarId v) {
            return tree.cliques[k].contains(v);
          })) {
        return k;
      }
    }
    throw InvariantError("initialize: no clique contains the domain of " +
                         what);
  };
  for (VarId v = 0; v < id.size(); ++v) {
    if (!id.cpts[v]) continue;
    const Table& cpt = *id.cpts[v];
    auto& s = states[host(cpt.domain().vars(), "cpt " + id.name(v))];
    s.phi = multiply(s.phi, cpt);
  }
  for (const auto& u : id.utilities) {
    auto& s = states[host(u.table.domain().vars(), "utility " + u.name)];
    s.psi = add(s.psi, u.table);
  }
  return states;
}

Message absorb(CliqueState& parent, const CliqueState& child,
               std::span<const VarId> separator, const TemporalPartition& p,
               const MaxStepHook& hook) {
  std::vector<VarId> private_vars;
  for (VarId v : child.phi.domain().vars()) {
    if (std::find(separator.begin(), separator.end(), v) == separator.end()) {
      private_vars.push_back(v);
    }
  }
  auto pair = contract({child.phi, multiply(child.phi, child.psi)},
                       private_vars, p, hook);
  parent.phi = multiply(parent.phi, pair.phi);
  parent.psi = add(parent.psi, divide(pair.rho, pair.phi));
  return {std::move(pair.phi), std::move(pair.rho)};
}

// ---------------------------------------------------------------------------
// Evaluation

Evaluation::Evaluation(const InfluenceDiagram& id,
                       const StrongJunctionTree& tree)
    : id_(&id),
      tree_(&tree),
      states_(initialize(tree, id)),
      messages_(tree.size()),
      retired_(tree.size(), false) {}

MaxStepHook Evaluation::hook_for(std::size_t clique) {
  return [this, clique](VarId decision, const Table& phi, const Table& rho) {
    const double spread = relative_spread(phi, decision);
    if (spread > kSolverTolerance) {
      std::ostringstream os;
      os << "decision '" << id_->name(decision) << "' in clique C"
         << tree_->cliques[clique].index
         << ": probability potential varies across its states (relative "
            "spread "
         << spread << ")";
      throw InvariantError(os.str());
    }
    max_steps_.push_back(
        {decision, clique, spread, argmax_over(rho, decision)});
  };
}

void Evaluation::collect(const AbsorbObserver& observer) {
  if (collected_) return;
  // Parents always carry a lower index, so walking positions backwards
  // retires every clique after all of its children.
  for (std::size_t k = tree_->size(); k-- > 0;) {
    const auto parent = tree_->parent[k];
    if (!parent) continue;
    messages_[k] = absorb(states_[*parent], states_[k], tree_->separator[k],
                          id_->partition, hook_for(k));
    retired_[k] = true;
    if (observer) observer(*this, k);
  }
  collected_ = true;
}

double Evaluation::meu() {
  collect();
  if (!root_) {
    const std::size_t r = tree_->root;
    const auto& s = states_[r];
    root_ = contract({s.phi, multiply(s.phi, s.psi)}, tree_->cliques[r].members,
                     id_->partition, hook_for(r));
  }
  const double norm = root_->phi[0];
  if (norm == 0.0) {
    throw InvariantError("meu: the probability potential contracts to zero");
  }
  if (std::abs(norm - 1.0) > kSolverTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "meu: the probability potential contracts to " << norm
       << " instead of 1";
    throw InvariantError(os.str());
  }
  return root_->rho[0] / norm;
}

SolveResult Evaluation::extract_policies() {
  SolveResult out;
  out.meu = meu();
  for (VarId d : id_->partition.decisions()) {
    const MaxStep* found = nullptr;
    for (const auto& step : max_steps_) {
      if (step.decision != d) continue;
      if (found) {
        throw InvariantError("decision '" + id_->name(d) +
                             "' was maximized twice");
      }
      found = &step;
    }
    if (!found) {
      throw InvariantError("decision '" + id_->name(d) +
                           "' was never maximized");
    }
    out.policies.push_back({d, found->choice});
    out.policy_clique.push_back(tree_->cliques[found->clique].index);
  }
  return out;
}

SolveResult solve(const InfluenceDiagram& id, const StrongJunctionTree& tree) {
  Evaluation e(id, tree);
  e.collect();
  return e.extract_policies();
}

}  // namespace idjt
