#include "idjt/partition.hpp"

#include <algorithm>

namespace idjt {

TemporalPartition::TemporalPartition(std::vector<VarKind> kinds,
                                     std::vector<int> stage)
    : kinds_(std::move(kinds)), stage_(std::move(stage)) {
  rank_.resize(kinds_.size());
  int max_stage = 0;
  for (VarId v = 0; v < kinds_.size(); ++v) {
    rank_[v] = stage_rank(kinds_[v], stage_[v]);
    if (kinds_[v] == VarKind::decision) {
      decisions_.push_back(v);
    } else {
      max_stage = std::max(max_stage, stage_[v]);
    }
  }
  decision_count_ = static_cast<int>(decisions_.size());
  std::stable_sort(decisions_.begin(), decisions_.end(),
                   [this](VarId a, VarId b) { return stage_[a] < stage_[b]; });
  information_sets_.resize(
      static_cast<std::size_t>(std::max(max_stage, decision_count_)) + 1);
  for (VarId v = 0; v < kinds_.size(); ++v) {
    if (kinds_[v] == VarKind::chance && stage_[v] >= 0) {
      information_sets_[static_cast<std::size_t>(stage_[v])].push_back(v);
    }
  }
}

Precedence TemporalPartition::precedes(VarId u, VarId v) const {
  const int ru = rank(u);
  const int rv = rank(v);
  if (ru < rv) return Precedence::before;
  if (ru > rv) return Precedence::after;
  return Precedence::unordered;
}

}  // namespace idjt
