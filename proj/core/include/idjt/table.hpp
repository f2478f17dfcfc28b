#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <utility>
#include <span>
#include <vector>

#include "idjt/partition.hpp"

namespace idjt {

// An ordered set of discrete variables with their state counts. Variables
// are kept sorted by id, which is the canonical (stage rank, name) order of
// the owning diagram.
class Domain {
 public:
  Domain() = default;
  // `vars` may arrive in any order; cards follow vars. Throws ArgumentError
  // on duplicates, length mismatch, or zero cardinality.
  Domain(std::vector<VarId> vars, std::vector<std::uint32_t> cards);

  std::span<const VarId> vars() const { return vars_; }
  std::span<const std::uint32_t> cards() const { return cards_; }
  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }

  bool contains(VarId v) const;
  std::optional<std::size_t> position(VarId v) const;
  std::uint32_t card(VarId v) const;
  // Product of the state counts; 1 for the empty domain.
  std::size_t cell_count() const;
  bool includes(const Domain& other) const;

  Domain without(VarId v) const;
  // Throws ArgumentError if a shared variable disagrees on its card.
  static Domain unite(const Domain& a, const Domain& b);

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::vector<VarId> vars_;
  std::vector<std::uint32_t> cards_;
};

// A dense real-valued potential. Values are row-major over the domain with
// the last variable varying fastest.
class Table {
 public:
  // The scalar 0.
  Table() : values_(1, 0.0) {}
  Table(Domain domain, std::vector<double> values);

  static Table filled(Domain domain, double value);
  // Probability-role default: all ones.
  static Table unit(Domain domain) { return filled(std::move(domain), 1.0); }
  // Utility-role default: all zeros.
  static Table null(Domain domain) { return filled(std::move(domain), 0.0); }
  static Table scalar(double value) { return filled(Domain{}, value); }

  // Builds a table from values laid out in an arbitrary variable order
  // (`order[i]` has `cards[i]` states, last one fastest).
  static Table from_layout(std::span<const VarId> order,
                           std::span<const std::uint32_t> cards,
                           std::span<const double> values);

  const Domain& domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  // `states` is aligned with domain().vars().
  double at(std::span<const std::uint32_t> states) const;
  double at(std::initializer_list<std::uint32_t> states) const {
    return at(std::span<const std::uint32_t>(states.begin(), states.size()));
  }
  // Value at a full assignment indexed by VarId; variables outside the
  // domain are ignored.
  double value_at(std::span<const std::uint32_t> assignment) const;

  // Inverse of from_layout.
  std::vector<double> layout(std::span<const VarId> order) const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  Domain domain_;
  std::vector<double> values_;
};

// For each configuration of a domain, the chosen state index of a decision.
struct ChoiceTable {
  Domain domain;
  std::vector<std::uint32_t> choice;

  std::uint32_t at(std::span<const std::uint32_t> states) const;
  std::uint32_t value_at(std::span<const std::uint32_t> assignment) const;
};

Table extend(const Table& t, const Domain& target);

Table multiply(const Table& a, const Table& b);
Table add(const Table& a, const Table& b);
// 0/0 = 0; x/0 with x != 0 throws DivisionError.
Table divide(const Table& num, const Table& den);

Table sum_out(const Table& t, VarId v);
Table max_out(const Table& t, VarId v);
// Ties go to the lowest state index.
ChoiceTable argmax_over(const Table& t, VarId decision);

// The variables of `vars` in elimination order: decreasing stage rank, and
// decreasing id inside one information set. Throws InvariantError if two
// decisions share a rank.
std::vector<VarId> elimination_sequence(std::span<const VarId> vars,
                                        const TemporalPartition& p);

// A probability potential together with the contraction of probability times
// utility, rho = phi * psi. Eliminating a chance variable sums both
// components; eliminating a decision maximizes both.
struct Contraction {
  Table phi;
  Table rho;
};

// Called just before a decision is max-marginalized, with both components
// as they stand at that step.
using MaxStepHook =
    std::function<void(VarId decision, const Table& phi, const Table& rho)>;

// Eliminates `vars` from the pair in elimination_sequence order.
Contraction contract(Contraction pair, std::span<const VarId> vars,
                     const TemporalPartition& p, const MaxStepHook& hook = {});

// Same, with the caller fixing the order. The sequence must be non-increasing
// in stage rank (any order inside an information set is allowed).
Contraction contract_in_sequence(Contraction pair,
                                 std::span<const VarId> sequence,
                                 const TemporalPartition& p,
                                 const MaxStepHook& hook = {});

struct Marginal {
  Table phi;
  Table psi;
};

// Generalized marginalization of (phi, psi) over `vars`: runs contract on
// (phi, phi * psi) and recovers psi' = rho' / phi'.
Marginal marg_all(const Table& phi, const Table& psi,
                  std::span<const VarId> vars, const TemporalPartition& p);

}  // namespace idjt
