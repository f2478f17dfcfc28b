#include "idjt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "idjt/dot.hpp"
#include "idjt/error.hpp"
#include "idjt/model_io.hpp"
#include "idjt/oracle.hpp"
#include "idjt/solver.hpp"

namespace idjt::cli {
namespace {

std::string member_list(const InfluenceDiagram& id,
                        const std::vector<VarId>& vars) {
  std::string out = "{";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ' ';
    out += id.name(vars[i]);
  }
  return out + "}";
}

bool agrees(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kSolverTolerance * scale;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

void print_structure(std::ostringstream& os, const InfluenceDiagram& id,
                     const Compilation& c) {
  std::size_t decisions = id.partition.decisions().size();
  os << "variables " << id.size() << " (" << id.size() - decisions
     << " chance, " << decisions << " decision)\n";
  os << "elimination order";
  for (VarId v : c.order.sequence) os << ' ' << id.name(v);
  os << '\n';
  os << "fill-ins " << c.triangulation.fill_ins.size();
  for (const Edge& e : c.triangulation.fill_ins) {
    os << ' ' << id.name(e.a) << '~' << id.name(e.b);
  }
  os << '\n';
  os << "cliques " << c.tree.size() << '\n';
  for (std::size_t k = 0; k < c.tree.size(); ++k) {
    const auto& clique = c.tree.cliques[k];
    os << "  C" << clique.index << ' ' << member_list(id, clique.members);
    if (c.tree.parent[k]) {
      os << " -> C" << c.tree.cliques[*c.tree.parent[k]].index
         << " separator " << member_list(id, c.tree.separator[k]);
    } else {
      os << " root";
    }
    os << '\n';
  }
}

void print_stats(std::ostringstream& os, const InfluenceDiagram& id,
                 const Compilation& c) {
  std::size_t largest = 0;
  std::size_t clique_cells = 0;
  std::size_t separator_cells = 0;
  os << "stats\n";
  os << "  fill-ins " << c.triangulation.fill_ins.size() << '\n';
  for (std::size_t k = 0; k < c.tree.size(); ++k) {
    const std::size_t cells =
        id.domain_of(c.tree.cliques[k].members).cell_count();
    os << "  clique C" << c.tree.cliques[k].index << " state-space size "
       << cells << '\n';
    largest = std::max(largest, cells);
    clique_cells += cells;
    separator_cells += id.domain_of(c.tree.separator[k]).cell_count();
  }
  os << "  max clique state-space size " << largest << '\n';
  // Each clique and separator holds a probability and a utility table.
  os << "  total table cells " << 2 * (clique_cells + separator_cells)
     << '\n';
}

void print_policies(std::ostringstream& os, const InfluenceDiagram& id,
                    const SolveResult& r) {
  for (std::size_t i = 0; i < r.policies.size(); ++i) {
    const Policy& p = r.policies[i];
    const auto vars = p.domain().vars();
    os << "policy " << id.name(p.decision) << " (clique C"
       << r.policy_clique[i] << ") given "
       << member_list(id, std::vector<VarId>(vars.begin(), vars.end()))
       << '\n';
    std::vector<std::uint32_t> states(vars.size(), 0);
    for (std::size_t cell = 0; cell < p.choice.choice.size(); ++cell) {
      os << "  ";
      if (vars.empty()) os << '-';
      for (std::size_t j = 0; j < vars.size(); ++j) {
        if (j) os << ' ';
        os << id.name(vars[j]) << '='
           << id.variables[vars[j]].states[states[j]];
      }
      os << " : " << id.variables[p.decision].states[p.choice.choice[cell]]
         << '\n';
      for (std::size_t j = vars.size(); j-- > 0;) {
        if (++states[j] < p.domain().cards()[j]) break;
        states[j] = 0;
      }
    }
  }
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::optional<std::pair<DotTarget, std::string>> parse_dot_flag(
    const std::string& flag) {
  const auto eq = flag.find('=');
  if (eq == std::string::npos || eq + 1 == flag.size()) return std::nullopt;
  const std::string what = flag.substr(0, eq);
  const std::string path = flag.substr(eq + 1);
  if (what == "moral") return std::pair{DotTarget::moral, path};
  if (what == "tri") return std::pair{DotTarget::triangulated, path};
  if (what == "tree") return std::pair{DotTarget::tree, path};
  return std::nullopt;
}

RunOutcome run(const RunConfig& config) {
  std::ifstream in(config.input, std::ios::binary);
  if (!in) {
    return {kSyntaxError, "", "error: cannot read '" + config.input + "'\n"};
  }
  std::ostringstream text;
  text << in.rdbuf();
  return run_text(config, text.str());
}

RunOutcome run_text(const RunConfig& config, const std::string& text) {
  RunOutcome out;
  std::ostringstream report;
  std::ostringstream errors;

  InfluenceDiagram id;
  try {
    id = parse_model(text);
  } catch (const SyntaxError& e) {
    return {kSyntaxError, "", "syntax error: " + std::string(e.what()) + "\n"};
  }

  if (const auto violations = validate(id); !violations.empty()) {
    for (const auto& v : violations) errors << "invalid: " << v.message << '\n';
    return {kInvalidModel, "", errors.str()};
  }

  OrderChoice choice = config.heuristic.value_or(Heuristic::min_fill);
  if (config.order) {
    std::vector<VarId> seq;
    for (const auto& name : *config.order) {
      auto v = id.find(name);
      if (!v) {
        return {kInvalidModel, "",
                "invalid: --order names unknown variable '" + name + "'\n"};
      }
      seq.push_back(*v);
    }
    choice = std::move(seq);
  }

  try {
    Compilation c;
    try {
      c = compile(id, choice, config.seed);
    } catch (const ArgumentError& e) {
      return {kInvalidModel, "", "invalid: " + std::string(e.what()) + "\n"};
    }
    for (const auto& [target, path] : config.dot) {
      switch (target) {
        case DotTarget::moral:
          write_file(path, moral_graph_dot(id, c.moral));
          break;
        case DotTarget::triangulated:
          write_file(path, triangulation_dot(id, c.triangulation));
          break;
        case DotTarget::tree:
          write_file(path, junction_tree_dot(id, c.tree));
          break;
      }
    }

    print_structure(report, id, c);
    if (config.stats) print_stats(report, id, c);

    const SolveResult result = solve(id, c.tree);
    report << "MEU " << format_number(result.meu) << '\n';
    if (config.policies) print_policies(report, id, result);

    if (config.check) {
      try {
        const OracleResult oracle = brute_force(id);
        const double executed = policy_value(id, result.policies);
        const bool meu_ok = agrees(result.meu, oracle.meu);
        const bool policy_ok = agrees(executed, oracle.meu);
        report << "check oracle MEU " << format_number(oracle.meu) << ' '
               << (meu_ok ? "agree" : "DISAGREE") << '\n';
        report << "check policy value " << format_number(executed) << ' '
               << (policy_ok ? "agree" : "DISAGREE") << '\n';
        if (!meu_ok || !policy_ok) out.exit_code = kOracleMismatch;
      } catch (const CapacityError& e) {
        report << "check skipped: " << e.what() << '\n';
      }
    }
  } catch (const InvariantError& e) {
    errors << "internal error: " << e.what() << '\n';
    out.exit_code = kInternalError;
  } catch (const DivisionError& e) {
    errors << "internal error: " << e.what() << '\n';
    out.exit_code = kInternalError;
  } catch (const Error& e) {
    errors << "error: " << e.what() << '\n';
    out.exit_code = kInternalError;
  }

  out.report = report.str();
  out.errors = errors.str();
  return out;
}

}  // namespace idjt::cli
