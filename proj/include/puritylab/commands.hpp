#pragma once

// Subcommands of the command-line tool. Each writes its result to `out`,
// diagnostics to `err`, and returns the process exit code:
//   0 success, 1 disagreement or failed suite, 2 invalid input,
//   3 unreadable or malformed document.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "puritylab/documents.hpp"

namespace puritylab {

enum class OutputFormat { text, json };

struct CommandOptions {
  Int modulus = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  OutputFormat format = OutputFormat::json;
  PurityBounds bounds;
};

struct LemmaSuite {
  std::string name;
  std::size_t instances = 0;
  std::size_t passed = 0;
  bool ok() const { return passed == instances; }
};

/// The tensyon, restriction, hom-tensor duality, dual-of-hom and
/// fully-faithful suites, each over `trials` seeded random instances.
std::vector<LemmaSuite> run_lemma_suites(Int modulus, std::size_t trials, std::uint64_t seed);

Json harness_json(const HarnessSummary& s, const PurityBounds& bounds);
Json lemmas_json(Int modulus, std::size_t trials, std::uint64_t seed, const std::vector<LemmaSuite>& suites);

int cmd_check(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_random(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_lemmas(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_example(const std::string& name, const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace puritylab
