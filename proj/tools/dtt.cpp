#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtt/driver.hpp"

int main(int argc, char** argv) {
  using namespace dtt::driver;
  CLI::App app{"Checker and evaluator for a dependent type theory built from inductive and coinductive types"};
  app.require_subcommand(1);

  Options opts;
  bool no_prelude = false;
  std::string file;

  auto* check = app.add_subcommand("check", "Check every declaration of FILE");
  check->add_option("FILE", file, "Source file")->required();
  check->add_flag("--no-prelude", no_prelude, "Do not load the built-in prelude");

  std::string term;
  std::size_t fuel = 0;
  auto* eval = app.add_subcommand("eval", "Normalise a closed definition of FILE");
  eval->add_option("FILE", file, "Source file")->required();
  eval->add_option("--term", term, "Definition to evaluate")->required();
  eval->add_flag("--trace", opts.trace, "Print every reduction step");
  eval->add_option("--fuel", fuel, "Maximum number of reduction steps (overrides DTT_FUEL)");
  eval->add_flag("--nf-only", opts.nf_only, "Print only the normal form");
  eval->add_flag("--no-prelude", no_prelude, "Do not load the built-in prelude");

  bool sr = false, ta = false, sn = false, adm = false;
  auto* meta = app.add_subcommand("meta", "Run metatheory checks over the definitions of FILE");
  meta->add_option("FILE", file, "Source file")->required();
  meta->add_flag("--subject-reduction", sr, "Re-check every reduct at the original type");
  meta->add_flag("--type-action", ta, "Type the functorial action of every branch codomain");
  meta->add_flag("--sn", sn, "Normalise under the deterministic and random strategies");
  meta->add_flag("--admissibility", adm, "Substitution, exchange and contraction instances");
  meta->add_flag("--json", opts.json, "One JSON record per line");
  meta->add_option("--seed", opts.seed, "First seed of the random strategies");
  meta->add_option("--strategies", opts.strategies, "Number of random strategies");
  meta->add_option("--fuel", fuel, "Maximum number of reduction steps (overrides DTT_FUEL)");
  meta->add_flag("--no-prelude", no_prelude, "Do not load the built-in prelude");

  CLI11_PARSE(app, argc, argv);
  opts.prelude = !no_prelude;
  if (fuel > 0) opts.fuel = fuel;

  if (check->parsed()) return run_check(file, opts, std::cout, std::cerr);
  if (eval->parsed()) return run_eval(file, term, opts, std::cout, std::cerr);

  std::vector<MetaCheck> checks;
  if (sr) checks.push_back(MetaCheck::SubjectReduction);
  if (ta) checks.push_back(MetaCheck::TypeAction);
  if (sn) checks.push_back(MetaCheck::Termination);
  if (adm) checks.push_back(MetaCheck::Admissibility);
  if (checks.empty()) {
    checks = {MetaCheck::SubjectReduction, MetaCheck::TypeAction, MetaCheck::Termination, MetaCheck::Admissibility};
  }
  return run_meta(file, checks, opts, std::cout, std::cerr);
}
