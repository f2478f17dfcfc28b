#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "idjt/compiler.hpp"
#include "idjt/model_io.hpp"
#include "idjt/oracle.hpp"
#include "idjt/solver.hpp"

namespace {

idjt::InfluenceDiagram load(const char* name) {
  std::ifstream in(std::string(IDJT_MODELS_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return idjt::parse_model(os.str());
}

// Chain of n decisions, each observing the previous outcome; wide enough to
// make the tables non-trivial.
idjt::InfluenceDiagram chain(int n) {
  idjt::ModelSpec s;
  const std::vector<std::string> st{"a", "b", "c"};
  for (int k = 1; k <= n; ++k) {
    const auto d = "D" + std::to_string(k), x = "x" + std::to_string(k);
    s.decision(d, st, k);
    s.chance(x, st, k);
    std::vector<std::string> parents{d};
    if (k > 1) parents.push_back("x" + std::to_string(k - 1));
    std::vector<double> v;
    const int rows = k > 1 ? 9 : 3;
    for (int r = 0; r < rows; ++r) {
      const double p = 0.1 + 0.1 * (r % 4);
      v.insert(v.end(), {p, 0.5, 0.5 - p});
    }
    s.cpt(x, parents, v);
    s.utility("u" + std::to_string(k), {x, d},
              {1, -2, 3, 0, 4, -1, 2, 2, -3});
  }
  auto id = s.build();
  if (!idjt::validate(id).empty()) throw std::logic_error("bad chain model");
  return id;
}

void BM_CompileFourDecision(benchmark::State& state) {
  const auto id = load("four_decision.idm");
  for (auto _ : state) {
    benchmark::DoNotOptimize(idjt::compile(id, idjt::Heuristic::min_fill));
  }
}
BENCHMARK(BM_CompileFourDecision);

void BM_SolveFourDecision(benchmark::State& state) {
  const auto id = load("four_decision.idm");
  const auto c = idjt::compile(id, idjt::Heuristic::min_fill);
  for (auto _ : state) benchmark::DoNotOptimize(idjt::solve(id, c.tree));
}
BENCHMARK(BM_SolveFourDecision);

void BM_OracleFourDecision(benchmark::State& state) {
  const auto id = load("four_decision.idm");
  for (auto _ : state) benchmark::DoNotOptimize(idjt::brute_force(id));
}
BENCHMARK(BM_OracleFourDecision)->Unit(benchmark::kMillisecond);

void BM_CompileSolveChain(benchmark::State& state) {
  const auto id = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto c = idjt::compile(id, idjt::Heuristic::min_weight);
    benchmark::DoNotOptimize(idjt::solve(id, c.tree));
  }
}
BENCHMARK(BM_CompileSolveChain)->RangeMultiplier(2)->Range(2, 32);

}  // namespace
BENCHMARK_MAIN();
