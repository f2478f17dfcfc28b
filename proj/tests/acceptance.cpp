// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
//
//   idjt_acceptance [path/to/idjt]
//
// With the executable path, criterion 7 also runs the real binary twice.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "contraction_check.hpp"
#include "fixtures.hpp"
#include "idjt/cli.hpp"
#include "idjt/compiler.hpp"
#include "idjt/error.hpp"
#include "idjt/oracle.hpp"
#include "idjt/solver.hpp"
#include "random_model.hpp"

using namespace idjt;
namespace fx = idjt::fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// |a - b| / max(|a|, |b|); two zeros agree.
double rel_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Criterion 5 accumulates over every compilation made anywhere below.
struct Structural {
  std::size_t compiled = 0;
  Verdict verdict;

  void check(const InfluenceDiagram& id, const Compilation& c,
             const std::string& what) {
    ++compiled;
    const auto vs = verify_strong(c.tree, id.partition);
    if (!vs.empty()) verdict.fail(what + ": " + vs.front().message);
    for (std::size_t i = 1; i < c.order.sequence.size(); ++i) {
      if (id.partition.rank(c.order.sequence[i - 1]) <
          id.partition.rank(c.order.sequence[i])) {
        verdict.fail(what + ": reverse elimination order does not extend the "
                            "temporal order");
      }
    }
    if (fx::fill_count(c.triangulation.graph, c.order.sequence) != 0) {
      verdict.fail(what + ": re-elimination adds fill-ins");
    }
    std::set<std::size_t> indices;
    std::size_t ones = 0;
    for (const auto& cl : c.tree.cliques) {
      indices.insert(cl.index);
      ones += cl.index == 1;
    }
    if (indices.size() != c.tree.size() || ones != 1) {
      verdict.fail(what + ": clique indices not unique or no single index 1");
    }
  }
};

Structural structural;

Verdict four_decision_golden(double& elapsed) {
  Verdict v;
  const auto t0 = Clock::now();
  const auto id = fx::four_decision_spec().build();
  const auto moral = fx::four_decision_moral(id);
  Compilation c;
  c.moral = moral;
  c.order = given_order(fx::ids(id, fx::four_decision_sequence()), id.partition);
  c.triangulation = triangulate(moral, c.order);
  c.tree = build_strong_tree(cliques_of(c.triangulation.graph, c.order));
  structural.check(id, c, "four-decision");

  std::set<Edge> want_fill;
  for (const auto& [a, b] : fx::four_decision_fill_ins()) {
    want_fill.insert(make_edge(id.id(a), id.id(b)));
  }
  const std::set<Edge> got_fill(c.triangulation.fill_ins.begin(),
                                c.triangulation.fill_ins.end());
  if (c.triangulation.fill_ins.size() != 9 || got_fill != want_fill) {
    v.fail("fill-ins differ");
  }

  const auto want = fx::four_decision_cliques();
  if (c.tree.size() != want.size()) {
    v.fail("clique count " + std::to_string(c.tree.size()));
  } else {
    for (std::size_t i = 0; i < want.size(); ++i) {
      const auto members = fx::ids(id, want[i].members);
      const std::set<VarId> w(members.begin(), members.end());
      const std::set<VarId> g(c.tree.cliques[i].members.begin(),
                              c.tree.cliques[i].members.end());
      if (c.tree.cliques[i].index != want[i].index || w != g) {
        v.fail("clique C" + std::to_string(want[i].index) + " differs");
      }
    }
  }

  const std::map<std::size_t, std::size_t> links{
      {5, 1}, {6, 1}, {10, 1}, {8, 5}, {11, 10}, {14, 6}, {15, 14}, {16, 8}};
  for (std::size_t k = 0; k < c.tree.size(); ++k) {
    const auto idx = c.tree.cliques[k].index;
    const auto parent = c.tree.parent[k];
    if (idx == 1) {
      if (parent) v.fail("C1 is not the root");
      continue;
    }
    const auto it = links.find(idx);
    if (!parent || it == links.end() ||
        c.tree.cliques[*parent].index != it->second) {
      v.fail("parent link of C" + std::to_string(idx));
    }
  }

  const auto r = solve(id, c.tree);
  const std::map<std::string, std::size_t> policy_cliques{
      {"D1", 1}, {"D2", 5}, {"D3", 6}, {"D4", 8}};
  for (const auto& [d, idx] : policy_cliques) {
    if (r.clique_for(id.id(d)) != idx) v.fail("policy clique of " + d);
  }
  const auto d2 = r.policy_for(id.id("D2")).domain().vars();
  if (d2.size() != 1 || d2[0] != id.id("e")) v.fail("policy domain of D2");

  elapsed = seconds_since(t0);
  if (elapsed >= 1.0) v.fail("took " + std::to_string(elapsed) + " s");
  return v;
}

struct ConstancyStats {
  std::size_t steps = 0;
  std::size_t assertion_failures = 0;
  double worst = 0.0;
};

Verdict oracle_equivalence(std::size_t& models, double& worst, double& elapsed,
                           ConstancyStats& constancy) {
  Verdict v;
  const auto t0 = Clock::now();
  worst = 0.0;
  constexpr std::uint64_t kModels = 240;
  for (std::uint64_t seed = 1; seed <= kModels; ++seed) {
    fx::RandomModelOptions opts;  // <= 8 variables, <= 3 states, <= 3 decisions
    opts.structural_zeros = seed % 2 == 0;
    const auto id = fx::random_diagram(seed * 7919, opts);
    const Heuristic h = seed % 3 == 0 ? Heuristic::min_weight : Heuristic::min_fill;
    const auto c = compile(id, h, seed % 5);
    structural.check(id, c, "oracle model " + std::to_string(seed));
    const auto tag = "seed " + std::to_string(seed);
    try {
      Evaluation e(id, c.tree);
      e.collect();
      const auto r = e.extract_policies();
      for (const auto& step : e.max_steps()) {
        ++constancy.steps;
        constancy.worst = std::max(constancy.worst, step.phi_spread);
      }
      const auto truth = brute_force(id);
      const double executed = policy_value(id, r.policies);
      const double err = std::max(rel_error(r.meu, truth.meu),
                                  rel_error(executed, truth.meu));
      worst = std::max(worst, err);
      if (err > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << tag << ": solver " << r.meu << ", policies " << executed
           << ", oracle " << truth.meu;
        v.fail(os.str());
      }
    } catch (const InvariantError& e) {
      ++constancy.assertion_failures;
      v.fail(tag + ": " + e.what());
    }
    ++models;
  }
  elapsed = seconds_since(t0);
  if (models < 200) v.fail("only " + std::to_string(models) + " models");
  if (elapsed >= 60.0) v.fail("took " + std::to_string(elapsed) + " s");
  return v;
}

Verdict contraction_invariant(std::size_t& trees, std::size_t& absorptions,
                    double& worst) {
  Verdict v;
  fx::RandomModelOptions opts;
  opts.min_variables = 5;
  opts.max_variables = 10;
  opts.min_states = opts.max_states = 2;
  worst = 0.0;
  for (std::uint64_t seed = 1; trees < 120 && seed < 10000; ++seed) {
    opts.structural_zeros = seed % 3 == 0;
    const auto id = fx::random_diagram(seed * 104729, opts);
    const auto c = compile(id, seed % 2 ? Heuristic::min_fill : Heuristic::min_weight);
    structural.check(id, c, "contraction model " + std::to_string(seed));
    if (c.tree.size() < 2) continue;  // nothing to absorb
    ++trees;
    const auto r = fx::check_collect_contraction(id, c.tree);
    absorptions += r.checks - 1;
    worst = std::max(worst, r.worst);
    if (r.failures) v.fail("seed " + std::to_string(seed) + " " + r.first_failure);
  }
  if (trees < 100) v.fail("only " + std::to_string(trees) + " trees");
  return v;
}

Verdict table_suite(std::size_t& fixtures_checked) {
  Verdict v;
  if (divide(Table::scalar(0.0), Table::scalar(0.0))[0] != 0.0) v.fail("0/0");
  bool threw = false;
  try {
    divide(Table::scalar(1.0), Table::scalar(0.0));
  } catch (const DivisionError&) {
    threw = true;
  }
  if (!threw) v.fail("1/0 did not raise");

  // Witness: t(A, D) = (0, 1, 1, 0); max_D sum_A = 1, sum_A max_D = 2.
  const Domain ad({0, 1}, {2, 2});
  const Table w(ad, {0, 1, 1, 0});
  if (max_out(sum_out(w, 0), 1)[0] != 1.0 || sum_out(max_out(w, 1), 0)[0] != 2.0) {
    v.fail("sum/max witness");
  }
  const TemporalPartition wp({VarKind::chance, VarKind::decision}, {1, 1});
  if (contract({Table::unit(ad), w}, std::vector<VarId>{0, 1}, wp).rho[0] != 1.0) {
    v.fail("contraction order on the witness");
  }

  // Within-stage order independence: b in I_0, D, then a, c, e in I_1.
  const TemporalPartition p({VarKind::chance, VarKind::decision, VarKind::chance,
                             VarKind::chance, VarKind::chance},
                            {0, 1, 1, 1, 1});
  const Domain full({0, 1, 2, 3, 4}, {2, 3, 2, 3, 2});
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const bool dyadic = rep % 2 == 0;
    std::vector<double> pv(full.cell_count()), uv(full.cell_count());
    for (auto& x : pv) {
      x = dyadic ? std::uniform_int_distribution<int>(0, 8)(rng) / 8.0
                 : std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
    for (auto& x : uv) {
      x = dyadic ? std::uniform_int_distribution<int>(-40, 40)(rng) / 4.0
                 : std::uniform_real_distribution<double>(-10.0, 10.0)(rng);
    }
    const Table phi(full, pv), psi(full, uv);
    const Table rho = multiply(phi, psi);
    std::array<VarId, 3> stage{2, 3, 4};
    std::optional<Contraction> first;
    do {
      const std::vector<VarId> seq{stage[0], stage[1], stage[2]};
      auto c = contract_in_sequence({phi, rho}, seq, p);
      if (!first) {
        first = c;
        continue;
      }
      const bool same =
          dyadic ? (c.phi == first->phi && c.rho == first->rho)
                 : fx::tables_close(c.phi, first->phi, 1e-12) &&
                       fx::tables_close(c.rho, first->rho, 1e-12);
      if (!same) v.fail("order dependence on fixture " + std::to_string(rep));
    } while (std::next_permutation(stage.begin(), stage.end()));
    ++fixtures_checked;
  }
  return v;
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) {
    out.append(buf.data(), n);
  }
  pclose(pipe);
  return out;
}

Verdict determinism(const std::string& exe, std::size_t& runs) {
  Verdict v;
  const std::string models = IDJT_MODELS_DIR;
  for (const char* file : {"/four_decision.idm", "/tiny.idm"}) {
    for (std::uint64_t seed : {0ull, 1ull, 77ull}) {
      for (auto h : {Heuristic::min_fill, Heuristic::min_weight}) {
        cli::RunConfig cfg;
        cfg.input = models + file;
        cfg.heuristic = h;
        cfg.seed = seed;
        cfg.stats = cfg.policies = cfg.check = true;
        const auto a = cli::run(cfg), b = cli::run(cfg);
        runs += 2;
        if (a.report.empty() || a.report != b.report || a.exit_code != b.exit_code) {
          v.fail(std::string(file) + " seed " + std::to_string(seed));
        }
        if (!exe.empty()) {
          const std::string cmd =
              "'" + exe + "' solve '" + cfg.input + "' --heuristic " +
              (h == Heuristic::min_fill ? "min-fill" : "min-weight") +
              " --seed " + std::to_string(seed) + " --stats --policies --check";
          const auto x = capture(cmd), y = capture(cmd);
          runs += 2;
          if (x.empty() || x != y || x != a.report) {
            v.fail(std::string(file) + " seed " + std::to_string(seed) +
                   " (executable)");
          }
        }
      }
    }
  }
  return v;
}

void print(int n, const std::string& name, const Verdict& v,
           const std::string& summary, bool& all) {
  std::cout << "criterion " << n << " " << name << ": "
            << (v.pass ? "PASS" : "FAIL") << " (" << summary << ")";
  if (!v.pass) std::cout << " -- " << v.detail;
  std::cout << std::endl;
  all = all && v.pass;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  bool all = true;

  double t1 = 0.0;
  const auto c1 = four_decision_golden(t1);
  print(1, "four-decision golden compilation", c1, fmt(t1) + " s", all);

  std::size_t models = 0;
  double worst2 = 0.0, t2 = 0.0;
  ConstancyStats constancy;
  const auto c2 = oracle_equivalence(models, worst2, t2, constancy);
  print(2, "oracle equivalence", c2,
        std::to_string(models) + " models, worst relative error " + fmt(worst2) +
            ", " + fmt(t2) + " s",
        all);

  std::size_t trees = 0, absorptions = 0;
  double worst3 = 0.0;
  const auto c3 = contraction_invariant(trees, absorptions, worst3);
  print(3, "contraction invariant under collect", c3,
        std::to_string(trees) + " trees, " + std::to_string(absorptions) +
            " absorptions, worst relative deviation " + fmt(worst3),
        all);

  Verdict c4;
  if (constancy.assertion_failures) {
    c4.fail(std::to_string(constancy.assertion_failures) + " assertion failures");
  }
  if (constancy.worst > kSolverTolerance) c4.fail("spread " + fmt(constancy.worst));
  if (constancy.steps == 0) c4.fail("no decision max-steps observed");
  print(4, "phi constant at decision max-steps", c4,
        std::to_string(constancy.steps) + " max-steps, worst spread " + fmt(constancy.worst),
        all);

  std::size_t runs = 0;
  const auto c7 = determinism(exe, runs);

  std::size_t table_fixtures = 0;
  const auto c6 = table_suite(table_fixtures);

  print(5, "strong-tree structure", structural.verdict,
        std::to_string(structural.compiled) + " compilations", all);
  print(6, "table algebra", c6,
        std::to_string(table_fixtures) + " order-independence fixtures", all);
  print(7, "determinism", c7,
        std::to_string(runs) + " runs" + (exe.empty() ? ", in-process only" : ""),
        all);
  return all ? 0 : 1;
}
