#include <iostream>

#include <CLI11.hpp>

#include "loglift/cli.hpp"

int main(int argc, char** argv) {
  using loglift::cli::JobSpec;
  JobSpec job;
  std::optional<std::size_t> samples;
  std::optional<long> twist, cap;
  std::string breuil_l = job.L, schraen_l = "3 + 5 + O(5^20)";

  CLI::App app{"Lift finite-dimensional p-modules to locally analytic representations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", job.seed, "Seed for randomized checks")->default_val(1);
  app.add_option("--cap", cap, "Precision cap (overrides LOGLIFT_CAP and the module file)");
  app.add_flag("--json", job.json, "Machine-readable output");

  auto* lift = app.add_subcommand("lift", "Evaluate the lifted representation on group elements");
  lift->add_option("--module", job.module_path, "Module file")->required();
  lift->add_option("--log", job.log_path, "Logarithm file")->required();
  lift->add_option("--element", job.element_path, "Group element file")->required();
  lift->add_option("--twist", twist, "Twist by |det|^(-(k-2)/2)");
  lift->add_flag("--check", job.check, "Check the homomorphism law on the given elements");

  auto* verma = app.add_subcommand("verma", "Truncated generalized Verma module");
  verma->add_option("--module", job.module_path, "Module file")->required();
  verma->add_option("--depth", job.depth, "Truncation degree")->default_val(2);
  verma->add_option("--max-basis", job.max_basis, "Largest allowed basis")->default_val(job.max_basis);
  verma->add_flag("--weights", job.weights, "Print the weight multiplicity table");

  auto* weights = app.add_subcommand("weights", "Weight decomposition of a module");
  weights->add_option("--module", job.module_path, "Module file")->required();

  auto* check = app.add_subcommand("check", "Run every invariant suite on a module and its lift");
  check->add_option("--module", job.module_path, "Module file")->required();
  check->add_option("--log", job.log_path, "Logarithm file");
  check->add_option("--samples", samples, "Samples per randomized suite (default 50)");

  auto* dgh = app.add_subcommand("check-dgh", "Delta-level compatibility of the group and Lie algebra actions");
  dgh->add_option("--module", job.module_path, "Module file")->required();
  dgh->add_option("--log", job.log_path, "Logarithm file")->required();
  dgh->add_option("--samples", samples, "Number of samples (default 100)");

  auto* example = app.add_subcommand("example", "Built-in examples");
  example->require_subcommand(1);
  auto* breuil = example->add_subcommand("breuil", "Two-dimensional example on the Borel of GL_2");
  breuil->add_option("--L", breuil_l, "Branch of log(p)")->capture_default_str();
  breuil->add_option("--k", job.k, "Weight")->default_val(2);
  breuil->add_option("--p", job.p, "Prime")->default_val(5);
  auto* schraen = example->add_subcommand("schraen", "Three-dimensional example on the Borel of GL_3");
  schraen->add_option("--L", schraen_l, "Branch L")->capture_default_str();
  schraen->add_option("--Lp", job.Lp, "Branch L'")->capture_default_str();
  schraen->add_option("--p", job.p, "Prime")->default_val(5);
  schraen->add_option("--samples", samples, "Number of random torus elements (default 5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (auto* sub : {lift, verma, weights, check, dgh, example})
    if (sub->parsed()) job.command = sub->get_name();
  if (breuil->parsed()) {
    job.example = "breuil";
    job.L = breuil_l;
  }
  if (schraen->parsed()) {
    job.example = "schraen";
    job.L = schraen_l;
  }
  job.samples = samples;
  job.twist = twist;
  job.cap = cap;

  loglift::cli::Outcome o = loglift::cli::run(job);
  std::cout << o.out;
  std::cerr << o.err;
  return o.status;
}
