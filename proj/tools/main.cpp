#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aft_cli.hpp"

int main(int argc, char** argv) {
  using namespace aft::cli;

  CLI::App app{"Approximation fixpoint semantics over finite ordered structures"};
  app.require_subcommand(1);

  RunConfig base;
  std::string semantics = "all";
  std::string format = "json";
  auto common = [&](CLI::App* sub) {
    sub->add_option("input", base.input, "Input JSON file")->required();
    sub->add_option("--seed", base.seed, "Seed for sampled checks");
    sub->add_option("--max-elements", base.max_elements, "Largest exact space to build");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* check = app.add_subcommand("check", "Classify a poset and verify the framework axioms on it");
  common(check);

  auto* solve = app.add_subcommand("solve", "Compute fixpoint semantics of a program, theory or wADF");
  common(solve);
  solve->add_option("--space", base.space, "interval or flower")->check(CLI::IsMember({"interval", "flower"}));
  solve->add_option("--approximator", base.approximator, "ultimate or fitting")
      ->check(CLI::IsMember({"ultimate", "fitting"}));
  solve->add_option("--semantics", semantics, "Comma-separated subset of kk,wf,supported,stable");

  CompareConfig cmp;
  auto* compare = app.add_subcommand("compare", "Compare the semantics of two configurations");
  common(compare);
  compare->add_option("--a-space", cmp.a_space)->check(CLI::IsMember({"interval", "flower"}));
  compare->add_option("--a-approximator", cmp.a_approximator)->check(CLI::IsMember({"ultimate", "fitting"}));
  compare->add_option("--b-space", cmp.b_space)->check(CLI::IsMember({"interval", "flower"}));
  compare->add_option("--b-approximator", cmp.b_approximator)->check(CLI::IsMember({"ultimate", "fitting"}));
  compare->add_option("--semantics", semantics, "Comma-separated subset of kk,wf,supported,stable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  return guarded(
      [&] {
        base.format = format == "text" ? Format::text : Format::json;
        base.semantics = parse_semantics(semantics);
        if (*check) return cmd_check(base, std::cout);
        if (*solve) return cmd_solve(base, std::cout);
        cmp.base = base;
        return cmd_compare(cmp, std::cout);
      },
      std::cerr);
}
