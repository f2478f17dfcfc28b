#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace idjt {

// Variables are identified by their position in the owning diagram. Diagrams
// number their variables in canonical order, ascending (stage rank, name), so
// comparing ids compares canonical positions.
using VarId = std::uint32_t;

enum class VarKind : std::uint8_t { chance, decision };

enum class Precedence { before, after, unordered };

// The temporal partition I_0 < D_1 < I_1 < ... < D_n < I_n.
//
// Chance variables carry the index k of their information set, decisions
// their position k (1-based) in the decision sequence. Stage ranks map that to
// one integer scale: rank(v in I_k) = 2k and rank(D_k) = 2k - 1, so u precedes
// v exactly when rank(u) < rank(v).
class TemporalPartition {
 public:
  TemporalPartition() = default;
  // `stage[v]` is the information-set index for chance variables and the
  // decision index for decisions. No consistency checking happens here; the
  // diagram validator reports malformed partitions.
  TemporalPartition(std::vector<VarKind> kinds, std::vector<int> stage);

  std::size_t size() const { return kinds_.size(); }
  // Number of decisions n.
  int decision_count() const { return decision_count_; }

  VarKind kind(VarId v) const { return kinds_.at(v); }
  bool is_decision(VarId v) const { return kinds_.at(v) == VarKind::decision; }
  int stage(VarId v) const { return stage_.at(v); }
  int rank(VarId v) const { return rank_.at(v); }

  // I_0, ..., I_m where m is max(n, largest chance stage).
  const std::vector<std::vector<VarId>>& information_sets() const {
    return information_sets_;
  }
  // Decisions sorted by index. With a well-formed partition entry k-1 is D_k.
  const std::vector<VarId>& decisions() const { return decisions_; }

  Precedence precedes(VarId u, VarId v) const;

 private:
  std::vector<VarKind> kinds_;
  std::vector<int> stage_;
  std::vector<int> rank_;
  std::vector<std::vector<VarId>> information_sets_;
  std::vector<VarId> decisions_;
  int decision_count_ = 0;
};

inline int stage_rank(VarKind kind, int stage) {
  return kind == VarKind::decision ? 2 * stage - 1 : 2 * stage;
}

}  // namespace idjt
