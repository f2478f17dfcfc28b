#include "idjt/table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "idjt/error.hpp"

namespace idjt {

// ---------------------------------------------------------------------------
// Domain

Domain::Domain(std::vector<VarId> vars, std::vector<std::uint32_t> cards) {
  if (vars.size() != cards.size()) {
    throw ArgumentError("domain: variable and cardinality counts differ");
  }
  std::vector<std::size_t> perm(vars.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return vars[a] < vars[b]; });
  vars_.reserve(vars.size());
  cards_.reserve(vars.size());
  for (std::size_t i : perm) {
    if (!vars_.empty() && vars_.back() == vars[i]) {
      throw ArgumentError("domain: duplicate variable " +
                          std::to_string(vars[i]));
    }
    if (cards[i] == 0) {
      throw ArgumentError("domain: variable " + std::to_string(vars[i]) +
                          " has no states");
    }
    vars_.push_back(vars[i]);
    cards_.push_back(cards[i]);
  }
}

std::optional<std::size_t> Domain::position(VarId v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

bool Domain::contains(VarId v) const { return position(v).has_value(); }

std::uint32_t Domain::card(VarId v) const {
  auto pos = position(v);
  if (!pos) {
    throw ArgumentError("domain: variable " + std::to_string(v) +
                        " not present");
  }
  return cards_[*pos];
}

std::size_t Domain::cell_count() const {
  std::size_t n = 1;
  for (auto c : cards_) n *= c;
  return n;
}

bool Domain::includes(const Domain& other) const {
  return std::includes(vars_.begin(), vars_.end(), other.vars_.begin(),
                       other.vars_.end());
}

Domain Domain::without(VarId v) const {
  Domain out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == v) continue;
    out.vars_.push_back(vars_[i]);
    out.cards_.push_back(cards_[i]);
  }
  return out;
}

Domain Domain::unite(const Domain& a, const Domain& b) {
  Domain out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a.vars_[i] < b.vars_[j])) {
      out.vars_.push_back(a.vars_[i]);
      out.cards_.push_back(a.cards_[i]);
      ++i;
    } else if (i == a.size() || b.vars_[j] < a.vars_[i]) {
      out.vars_.push_back(b.vars_[j]);
      out.cards_.push_back(b.cards_[j]);
      ++j;
    } else {
      if (a.cards_[i] != b.cards_[j]) {
        throw ArgumentError("domain: variable " + std::to_string(a.vars_[i]) +
                            " has inconsistent cardinalities");
      }
      out.vars_.push_back(a.vars_[i]);
      out.cards_.push_back(a.cards_[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

// Row-major strides of `d`'s own layout.
std::vector<std::size_t> own_strides(const Domain& d) {
  std::vector<std::size_t> s(d.size());
  std::size_t acc = 1;
  for (std::size_t i = d.size(); i-- > 0;) {
    s[i] = acc;
    acc *= d.cards()[i];
  }
  return s;
}

// Strides of `inner`'s layout indexed by the positions of `outer`; zero for
// variables of `outer` that `inner` lacks.
std::vector<std::size_t> strides_in(const Domain& inner, const Domain& outer) {
  auto own = own_strides(inner);
  std::vector<std::size_t> s(outer.size(), 0);
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (auto p = inner.position(outer.vars()[i])) s[i] = own[*p];
  }
  return s;
}

// Visits every cell of `over` in row-major order, passing the offsets into
// each of the operand layouts described by `strides`.
template <std::size_t N, class Fn>
void for_each_cell(const Domain& over,
                   const std::array<std::vector<std::size_t>, N>& strides,
                   Fn&& fn) {
  const std::size_t rank = over.size();
  const auto cards = over.cards();
  std::vector<std::uint32_t> counter(rank, 0);
  std::array<std::size_t, N> offset{};
  const std::size_t cells = over.cell_count();
  for (std::size_t cell = 0; cell < cells; ++cell) {
    fn(cell, offset);
    for (std::size_t i = rank; i-- > 0;) {
      ++counter[i];
      for (std::size_t k = 0; k < N; ++k) offset[k] += strides[k][i];
      if (counter[i] < cards[i]) break;
      for (std::size_t k = 0; k < N; ++k) {
        offset[k] -= strides[k][i] * cards[i];
      }
      counter[i] = 0;
    }
  }
}

template <class Op>
Table combine(const Table& a, const Table& b, Op op) {
  Domain u = Domain::unite(a.domain(), b.domain());
  std::array<std::vector<std::size_t>, 2> strides{strides_in(a.domain(), u),
                                                  strides_in(b.domain(), u)};
  std::vector<double> out(u.cell_count());
  const auto av = a.values();
  const auto bv = b.values();
  for_each_cell<2>(u, strides, [&](std::size_t cell, const auto& off) {
    out[cell] = op(av[off[0]], bv[off[1]]);
  });
  return Table(std::move(u), std::move(out));
}

// Shape of a single-variable reduction: the input is viewed as
// [outer][card][inner] with `v` in the middle.
struct Fold {
  std::size_t outer;
  std::size_t card;
  std::size_t inner;
};

Fold fold_shape(const Domain& d, VarId v, const char* op) {
  auto pos = d.position(v);
  if (!pos) {
    throw ArgumentError(std::string(op) + ": variable " + std::to_string(v) +
                        " is not in the table's domain");
  }
  Fold f{1, d.cards()[*pos], 1};
  for (std::size_t i = 0; i < *pos; ++i) f.outer *= d.cards()[i];
  for (std::size_t i = *pos + 1; i < d.size(); ++i) f.inner *= d.cards()[i];
  return f;
}

template <class Op>
Table reduce(const Table& t, VarId v, const char* name, Op op) {
  const Fold f = fold_shape(t.domain(), v, name);
  std::vector<double> out(f.outer * f.inner);
  const auto in = t.values();
  for (std::size_t o = 0; o < f.outer; ++o) {
    for (std::size_t i = 0; i < f.inner; ++i) {
      const std::size_t base = o * f.card * f.inner + i;
      double acc = in[base];
      for (std::size_t k = 1; k < f.card; ++k) {
        acc = op(acc, in[base + k * f.inner]);
      }
      out[o * f.inner + i] = acc;
    }
  }
  return Table(t.domain().without(v), std::move(out));
}

}  // namespace

// ---------------------------------------------------------------------------
// Table

Table::Table(Domain domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.cell_count()) {
    throw ArgumentError("table: expected " +
                        std::to_string(domain_.cell_count()) +
                        " values, got " + std::to_string(values_.size()));
  }
}

Table Table::filled(Domain domain, double value) {
  const std::size_t n = domain.cell_count();
  return Table(std::move(domain), std::vector<double>(n, value));
}

Table Table::from_layout(std::span<const VarId> order,
                         std::span<const std::uint32_t> cards,
                         std::span<const double> values) {
  Domain given(std::vector<VarId>(order.begin(), order.end()),
               std::vector<std::uint32_t>(cards.begin(), cards.end()));
  if (values.size() != given.cell_count()) {
    throw ArgumentError("table: expected " +
                        std::to_string(given.cell_count()) + " values, got " +
                        std::to_string(values.size()));
  }
  // Strides of the caller's layout, re-indexed to canonical positions.
  std::vector<std::size_t> layout_stride(order.size());
  std::size_t acc = 1;
  for (std::size_t i = order.size(); i-- > 0;) {
    layout_stride[i] = acc;
    acc *= cards[i];
  }
  std::array<std::vector<std::size_t>, 1> strides{
      std::vector<std::size_t>(given.size())};
  for (std::size_t i = 0; i < order.size(); ++i) {
    strides[0][*given.position(order[i])] = layout_stride[i];
  }
  std::vector<double> out(given.cell_count());
  for_each_cell<1>(given, strides, [&](std::size_t cell, const auto& off) {
    out[cell] = values[off[0]];
  });
  return Table(std::move(given), std::move(out));
}

std::vector<double> Table::layout(std::span<const VarId> order) const {
  if (order.size() != domain_.size()) {
    throw ArgumentError("table: layout order does not match the domain");
  }
  std::vector<std::uint32_t> cards;
  for (VarId v : order) cards.push_back(domain_.card(v));
  // Walk the caller's order and read canonical offsets.
  std::vector<std::size_t> canon = own_strides(domain_);
  std::vector<double> out(values_.size());
  std::vector<std::uint32_t> counter(order.size(), 0);
  std::size_t offset = 0;
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    out[cell] = values_[offset];
    for (std::size_t i = order.size(); i-- > 0;) {
      const std::size_t s = canon[*domain_.position(order[i])];
      ++counter[i];
      offset += s;
      if (counter[i] < cards[i]) break;
      offset -= s * cards[i];
      counter[i] = 0;
    }
  }
  return out;
}

double Table::at(std::span<const std::uint32_t> states) const {
  if (states.size() != domain_.size()) {
    throw ArgumentError("table: state vector does not match the domain");
  }
  std::size_t offset = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] >= domain_.cards()[i]) {
      throw ArgumentError("table: state index out of range");
    }
    offset = offset * domain_.cards()[i] + states[i];
  }
  return values_[offset];
}

double Table::value_at(std::span<const std::uint32_t> assignment) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    offset = offset * domain_.cards()[i] + assignment[domain_.vars()[i]];
  }
  return values_[offset];
}

std::uint32_t ChoiceTable::at(std::span<const std::uint32_t> states) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    offset = offset * domain.cards()[i] + states[i];
  }
  return choice.at(offset);
}

std::uint32_t ChoiceTable::value_at(
    std::span<const std::uint32_t> assignment) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    offset = offset * domain.cards()[i] + assignment[domain.vars()[i]];
  }
  return choice.at(offset);
}

// ---------------------------------------------------------------------------
// Operations

Table extend(const Table& t, const Domain& target) {
  if (!target.includes(t.domain())) {
    throw ArgumentError("extend: target domain lacks a variable of the table");
  }
  // Cardinality agreement is checked by unite.
  Domain checked = Domain::unite(target, t.domain());
  std::array<std::vector<std::size_t>, 1> strides{
      strides_in(t.domain(), checked)};
  std::vector<double> out(checked.cell_count());
  const auto in = t.values();
  for_each_cell<1>(checked, strides, [&](std::size_t cell, const auto& off) {
    out[cell] = in[off[0]];
  });
  return Table(std::move(checked), std::move(out));
}

Table multiply(const Table& a, const Table& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

Table add(const Table& a, const Table& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Table divide(const Table& num, const Table& den) {
  return combine(num, den, [](double x, double y) {
    if (y == 0.0) {
      if (x == 0.0) return 0.0;
      throw DivisionError("divide: nonzero value " + std::to_string(x) +
                          " over zero");
    }
    return x / y;
  });
}

Table sum_out(const Table& t, VarId v) {
  return reduce(t, v, "sum_out", [](double a, double b) { return a + b; });
}

Table max_out(const Table& t, VarId v) {
  return reduce(t, v, "max_out",
                [](double a, double b) { return std::max(a, b); });
}

ChoiceTable argmax_over(const Table& t, VarId decision) {
  const Fold f = fold_shape(t.domain(), decision, "argmax_over");
  ChoiceTable out{t.domain().without(decision),
                  std::vector<std::uint32_t>(f.outer * f.inner, 0)};
  const auto in = t.values();
  for (std::size_t o = 0; o < f.outer; ++o) {
    for (std::size_t i = 0; i < f.inner; ++i) {
      const std::size_t base = o * f.card * f.inner + i;
      std::uint32_t best = 0;
      for (std::size_t k = 1; k < f.card; ++k) {
        if (in[base + k * f.inner] > in[base + best * f.inner]) {
          best = static_cast<std::uint32_t>(k);
        }
      }
      out.choice[o * f.inner + i] = best;
    }
  }
  return out;
}

std::vector<VarId> elimination_sequence(std::span<const VarId> vars,
                                        const TemporalPartition& p) {
  std::vector<VarId> seq(vars.begin(), vars.end());
  std::sort(seq.begin(), seq.end(), [&](VarId a, VarId b) {
    if (p.rank(a) != p.rank(b)) return p.rank(a) > p.rank(b);
    return a > b;
  });
  seq.erase(std::unique(seq.begin(), seq.end()), seq.end());
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (p.rank(seq[i]) == p.rank(seq[i - 1]) &&
        (p.is_decision(seq[i]) || p.is_decision(seq[i - 1]))) {
      throw InvariantError("elimination: decisions " + std::to_string(seq[i]) +
                           " and " + std::to_string(seq[i - 1]) +
                           " share a stage rank");
    }
  }
  return seq;
}

Contraction contract(Contraction pair, std::span<const VarId> vars,
                     const TemporalPartition& p, const MaxStepHook& hook) {
  const auto seq = elimination_sequence(vars, p);
  return contract_in_sequence(std::move(pair), seq, p, hook);
}

Contraction contract_in_sequence(Contraction pair,
                                 std::span<const VarId> sequence,
                                 const TemporalPartition& p,
                                 const MaxStepHook& hook) {
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    if (p.rank(sequence[i]) > p.rank(sequence[i - 1])) {
      throw ArgumentError("elimination: sequence is not ordered by stage");
    }
  }
  // Both components share one domain so every step sees the same variables.
  Domain joint = Domain::unite(pair.phi.domain(), pair.rho.domain());
  for (VarId v : sequence) {
    if (!joint.contains(v)) {
      throw ArgumentError("elimination: variable " + std::to_string(v) +
                          " is in neither component");
    }
  }
  Table phi = extend(pair.phi, joint);
  Table rho = extend(pair.rho, joint);
  for (VarId v : sequence) {
    if (p.is_decision(v)) {
      if (hook) hook(v, phi, rho);
      phi = max_out(phi, v);
      rho = max_out(rho, v);
    } else {
      phi = sum_out(phi, v);
      rho = sum_out(rho, v);
    }
  }
  return {std::move(phi), std::move(rho)};
}

Marginal marg_all(const Table& phi, const Table& psi,
                  std::span<const VarId> vars, const TemporalPartition& p) {
  if (vars.empty()) return {phi, psi};
  auto pair = contract({phi, multiply(phi, psi)}, vars, p);
  Table psi_out = divide(pair.rho, pair.phi);
  return {std::move(pair.phi), std::move(psi_out)};
}

}  // namespace idjt
