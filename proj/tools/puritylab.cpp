#include <unistd.h>

#include <iostream>

#include "CLI11.hpp"
#include "puritylab/commands.hpp"

int main(int argc, char** argv) {
  using namespace puritylab;
  CLI::App app{"Purity checks for short exact sequences of Z/N-modules"};
  app.require_subcommand(1);
  app.fallthrough();

  CommandOptions opts;
  opts.format = isatty(STDOUT_FILENO) ? OutputFormat::text : OutputFormat::json;
  std::string format;
  app.add_option("--modulus", opts.modulus, "modulus N")->check(CLI::Range(Int{1}, kMaxModulus));
  app.add_option("--trials", opts.trials, "random trials");
  app.add_option("--seed", opts.seed, "base seed");
  app.add_option("--jobs", opts.jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--format", format, "json or text (text on a terminal)")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--pp-free", opts.bounds.pp.free_vars, "free variables of pp formulas")->check(CLI::Range(1, 2));
  app.add_option("--pp-exists", opts.bounds.pp.max_exists, "bound variables of pp formulas")->check(CLI::Range(0, 3));
  app.add_option("--pp-rows", opts.bounds.pp.max_rows, "equations of pp formulas")->check(CLI::Range(0, 3));
  app.add_option("--fp-depth", opts.bounds.fp_depth, "generators in the fp-functor catalog")->check(CLI::Range(1, 3));

  std::string path, name;
  auto* check = app.add_subcommand("check", "run every checker on a sequence document");
  check->add_option("file", path, "sequence document")->required();
  auto* random = app.add_subcommand("random", "compare the checkers on seeded random sequences");
  auto* lemmas = app.add_subcommand("lemmas", "verify the functor-category isomorphisms on random instances");
  auto* example = app.add_subcommand("example", "print a bundled sequence document");
  example->add_option("--name", name, "z4-nonpure or split-demo")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (format == "json") opts.format = OutputFormat::json;
  if (format == "text") opts.format = OutputFormat::text;

  if (*check) return cmd_check(path, opts, std::cout, std::cerr);
  if (*random) return cmd_random(opts, std::cout, std::cerr);
  if (*lemmas) return cmd_lemmas(opts, std::cout, std::cerr);
  if (*example) return cmd_example(name, opts, std::cout, std::cerr);
  return 2;
}
