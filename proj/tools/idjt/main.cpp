#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "idjt/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Compile influence diagrams into strong junction trees and "
               "solve them"};
  app.require_subcommand(1);

  idjt::cli::RunConfig config;
  std::string order;
  std::string heuristic;
  std::vector<std::string> dots;

  auto* solve = app.add_subcommand("solve", "Compile and solve a model file");
  solve->add_option("file", config.input, "Model file")->required();
  auto* order_opt = solve->add_option(
      "--order", order, "Comma-separated elimination sequence");
  auto* heuristic_opt =
      solve->add_option("--heuristic", heuristic, "min-fill or min-weight")
          ->check(CLI::IsMember({"min-fill", "min-weight"}));
  order_opt->excludes(heuristic_opt);
  solve->add_option("--seed", config.seed,
                    "Tie-break seed for the heuristic (0 = by name)");
  solve->add_option("--dot", dots, "moral=<path>, tri=<path> or tree=<path>");
  solve->add_flag("--policies", config.policies, "Print policy tables");
  solve->add_flag("--stats", config.stats, "Print compilation statistics");
  solve->add_flag("--check", config.check,
                  "Compare against the brute-force evaluator");

  CLI11_PARSE(app, argc, argv);

  if (!order.empty()) {
    std::vector<std::string> names;
    std::stringstream ss(order);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) names.push_back(item);
    }
    config.order = std::move(names);
  }
  if (heuristic == "min-weight") {
    config.heuristic = idjt::Heuristic::min_weight;
  } else if (heuristic == "min-fill") {
    config.heuristic = idjt::Heuristic::min_fill;
  }
  for (const auto& d : dots) {
    auto target = idjt::cli::parse_dot_flag(d);
    if (!target) {
      std::cerr << "error: bad --dot value '" << d << "'\n";
      return 2;
    }
    config.dot.push_back(*target);
  }

  const auto outcome = idjt::cli::run(config);
  std::cout << outcome.report;
  std::cerr << outcome.errors;
  return outcome.exit_code;
}
