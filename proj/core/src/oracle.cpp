#include "idjt/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "idjt/error.hpp"

namespace idjt {
namespace {

std::size_t checked_cells(const InfluenceDiagram& id, std::size_t cap) {
  std::size_t cells = 1;
  for (VarId v = 0; v < id.size(); ++v) {
    cells *= id.card(v);
    if (cells > cap) {
      throw CapacityError("oracle: joint state space exceeds " +
                          std::to_string(cap) + " cells");
    }
  }
  return cells;
}

double joint_probability(const InfluenceDiagram& id,
                         std::span<const std::uint32_t> assignment) {
  double p = 1.0;
  for (VarId v = 0; v < id.size(); ++v) {
    if (id.cpts[v]) p *= id.cpts[v]->value_at(assignment);
  }
  return p;
}

double total_utility(const InfluenceDiagram& id,
                     std::span<const std::uint32_t> assignment) {
  double u = 0.0;
  for (const auto& util : id.utilities) u += util.table.value_at(assignment);
  return u;
}

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// The joint tabulated row-major over the variables sorted by stage rank, so
// that every observed history is a prefix of the layout.
class DecisionTree {
 public:
  DecisionTree(const InfluenceDiagram& id, std::size_t cap) {
    checked_cells(id, cap);
    order_.resize(id.size());
    std::iota(order_.begin(), order_.end(), VarId{0});
    std::stable_sort(order_.begin(), order_.end(), [&](VarId a, VarId b) {
      return id.partition.rank(a) < id.partition.rank(b);
    });
    const std::size_t n = order_.size();
    card_.resize(n);
    stride_.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) card_[i] = id.card(order_[i]);
    stride_[n] = 1;
    for (std::size_t i = n; i-- > 0;) stride_[i] = stride_[i + 1] * card_[i];

    joint_.resize(stride_[0]);
    weighted_.resize(stride_[0]);
    std::vector<std::uint32_t> assignment(n, 0);
    for (std::size_t cell = 0; cell < joint_.size(); ++cell) {
      for (std::size_t i = 0; i < n; ++i) {
        assignment[order_[i]] =
            static_cast<std::uint32_t>((cell / stride_[i + 1]) % card_[i]);
      }
      joint_[cell] = joint_probability(id, assignment);
      weighted_[cell] = joint_[cell] * total_utility(id, assignment);
    }

    for (std::size_t i = 0; i < n; ++i) {
      if (id.partition.is_decision(order_[i])) decision_pos_.push_back(i);
    }
  }

  OracleResult run() {
    const std::size_t levels = decision_pos_.size();
    choices_.assign(levels, {});
    for (std::size_t k = 0; k < levels; ++k) {
      choices_[k].assign(stride_[0] / stride_[decision_pos_[k]], 0.0);
    }
    const double total = mass(joint_, 0, 0);
    if (total == 0.0) {
      throw ArgumentError("oracle: the joint distribution has no mass");
    }
    double meu = 0.0;
    if (levels == 0) {
      meu = mass(weighted_, 0, 0) / total;
    } else {
      // I_0 is averaged like every later information set.
      const std::size_t first_end = decision_pos_[0];
      for (std::size_t j = 0; j < stride_[0] / stride_[first_end]; ++j) {
        const double p = ratio(mass(joint_, j, first_end), total);
        if (p != 0.0) meu += p * value(0, j);
      }
    }

    OracleResult out;
    out.meu = meu;
    for (std::size_t k = 0; k < levels; ++k) {
      std::vector<VarId> past(order_.begin(),
                              order_.begin() + static_cast<std::ptrdiff_t>(
                                                   decision_pos_[k]));
      std::vector<std::uint32_t> cards(card_.begin(),
                                       card_.begin() + static_cast<std::ptrdiff_t>(
                                                           decision_pos_[k]));
      Table canon = Table::from_layout(past, cards, choices_[k]);
      ChoiceTable choice{canon.domain(), {}};
      for (double x : canon.values()) {
        choice.choice.push_back(static_cast<std::uint32_t>(x));
      }
      out.policies.push_back({order_[decision_pos_[k]], std::move(choice)});
    }
    return out;
  }

 private:
  // Sum of `w` over all completions of the history `prefix` (the first `len`
  // layout positions), with decisions after the history pinned to state 0.
  // Future decisions cannot change the distribution of anything observed
  // before them, so any pinned value would do.
  double mass(const std::vector<double>& w, std::size_t prefix,
              std::size_t len) const {
    const std::size_t block = stride_[len];
    double sum = 0.0;
    for (std::size_t off = 0; off < block; ++off) {
      bool pinned = true;
      for (std::size_t pos : decision_pos_) {
        if (pos < len) continue;
        if ((off / stride_[pos + 1]) % card_[pos] != 0) {
          pinned = false;
          break;
        }
      }
      if (pinned) sum += w[prefix * block + off];
    }
    return sum;
  }

  // Maximum expected utility of D_{k+1} (0-based k) given the history
  // `prefix` that ends just before it.
  double value(std::size_t k, std::size_t prefix) {
    const std::size_t dpos = decision_pos_[k];
    const bool last = k + 1 == decision_pos_.size();
    const std::size_t group_end = last ? order_.size() : decision_pos_[k + 1];
    const std::size_t group_cells = stride_[dpos + 1] / stride_[group_end];
    double best = 0.0;
    std::uint32_t best_state = 0;
    for (std::uint32_t d = 0; d < card_[dpos]; ++d) {
      const std::size_t with_d = prefix * card_[dpos] + d;
      const double given = mass(joint_, with_d, dpos + 1);
      double expected = 0.0;
      if (last) {
        // I_n is never observed: plain expectation.
        expected = ratio(mass(weighted_, with_d, dpos + 1), given);
      } else {
        for (std::size_t j = 0; j < group_cells; ++j) {
          const std::size_t next = with_d * group_cells + j;
          const double p = ratio(mass(joint_, next, group_end), given);
          if (p != 0.0) expected += p * value(k + 1, next);
        }
      }
      if (d == 0 || expected > best) {
        best = expected;
        best_state = d;
      }
    }
    choices_[k][prefix] = best_state;
    return best;
  }

  std::vector<VarId> order_;
  std::vector<std::size_t> card_;
  std::vector<std::size_t> stride_;
  std::vector<double> joint_;
  std::vector<double> weighted_;
  std::vector<std::size_t> decision_pos_;
  std::vector<std::vector<double>> choices_;
};

}  // namespace

OracleResult brute_force(const InfluenceDiagram& id, std::size_t cap) {
  return DecisionTree(id, cap).run();
}

double policy_value(const InfluenceDiagram& id,
                    std::span<const Policy> policies, std::size_t cap) {
  checked_cells(id, cap);
  std::vector<VarId> chance;
  for (VarId v = 0; v < id.size(); ++v) {
    if (!id.partition.is_decision(v)) chance.push_back(v);
  }
  // Decisions in the order they are taken.
  std::vector<const Policy*> ordered;
  for (VarId d : id.partition.decisions()) {
    const Policy* found = nullptr;
    for (const auto& p : policies) {
      if (p.decision == d) found = &p;
    }
    if (!found) {
      throw ArgumentError("policy_value: no policy for '" + id.name(d) + "'");
    }
    for (VarId v : found->domain().vars()) {
      if (id.partition.rank(v) >= id.partition.rank(d)) {
        throw ArgumentError("policy_value: policy for '" + id.name(d) +
                            "' reads '" + id.name(v) +
                            "', which does not precede it");
      }
    }
    ordered.push_back(found);
  }

  std::vector<std::uint32_t> assignment(id.size(), 0);
  double value = 0.0;
  while (true) {
    for (const Policy* p : ordered) {
      assignment[p->decision] = p->choice.value_at(assignment);
    }
    const double prob = joint_probability(id, assignment);
    if (prob != 0.0) value += prob * total_utility(id, assignment);

    std::size_t i = chance.size();
    while (i-- > 0) {
      if (++assignment[chance[i]] < id.card(chance[i])) break;
      assignment[chance[i]] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return value;
}

}  // namespace idjt
