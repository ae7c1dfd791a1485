#include "puritylab/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "puritylab/funcat.hpp"

namespace puritylab {

namespace {

constexpr std::size_t kLemmaGenerators = 2;

std::string sequence_text(const ShortSequence& seq) {
  return "0 -> " + seq.L().to_string() + " -> " + seq.M().to_string() + " -> " + seq.N().to_string() + " -> 0";
}

// Values of Y ⊗ - on every object, as invariant lists.
std::vector<std::vector<Int>> tensor_values(const FunctorOnD& f) {
  std::vector<std::vector<Int>> out;
  for (const auto& v : f.values()) out.push_back(v.invariants());
  return out;
}

void fail_check(std::ostream& err, const std::string& what) { err << "puritylab: " << what << "\n"; }

}  // namespace

std::vector<LemmaSuite> run_lemma_suites(Int modulus, std::size_t trials, std::uint64_t seed) {
  check_modulus(modulus);
  const IndexCategory cat(modulus);
  std::vector<LemmaSuite> suites;

  {
    LemmaSuite s{"tensyon", trials, 0};
    Rng rng(mix_seed(seed, 1));
    for (std::size_t t = 0; t < trials; ++t) {
      const auto f = random_functor(cat, kLemmaGenerators, rng);
      bool ok = true;
      for (std::size_t a = 0; a < cat.size(); ++a) ok = ok && is_isomorphism(tensyon_map(f, a));
      s.passed += ok;
    }
    suites.push_back(s);
  }
  {
    LemmaSuite s{"restriction", 2 * trials, 0};
    Rng rng(mix_seed(seed, 2));
    for (std::size_t t = 0; t < trials; ++t) {
      const auto f = random_functor(cat, kLemmaGenerators, rng);
      bool ok = true;
      for (std::size_t a = 0; a < cat.size(); ++a) ok = ok && is_isomorphism(restriction_map(f, a));
      s.passed += ok;
    }
    for (std::size_t t = 0; t < trials; ++t) {
      const auto f = random_functor(cat, kLemmaGenerators, rng);
      const auto c = random_module(modulus, kLemmaGenerators, rng);
      const auto d = random_module(modulus, kLemmaGenerators, rng);
      const auto sum = direct_sum(kan_eval(f, c), kan_eval(f, d)).module;
      s.passed += kan_eval(f, direct_sum(c, d).module) == sum;
    }
    suites.push_back(s);
  }
  {
    LemmaSuite s{"hom_tensor_duality", trials, 0};
    Rng rng(mix_seed(seed, 3));
    for (std::size_t t = 0; t < trials; ++t) {
      const auto g = random_contravariant(cat, kLemmaGenerators, rng);
      const auto f = random_functor(cat, kLemmaGenerators, rng);
      s.passed += hom_tensor_duality_check(g, f);
    }
    suites.push_back(s);
  }
  {
    LemmaSuite s{"dual_of_hom", trials, 0};
    Rng rng(mix_seed(seed, 4));
    for (std::size_t t = 0; t < trials; ++t) s.passed += dual_of_hom_check(cat, random_module(modulus, 3, rng));
    suites.push_back(s);
  }
  {
    // Y -> Y ⊗ - is fully faithful on D: Nat(Y ⊗ -, Y' ⊗ -) has the size of
    // Hom(Y, Y'), and non-isomorphic Y give different functors.
    LemmaSuite s{"fully_faithful", trials, 0};
    Rng rng(mix_seed(seed, 5));
    for (std::size_t t = 0; t < trials; ++t) {
      const auto y = random_module(modulus, kLemmaGenerators, rng);
      const auto y2 = rng.coin() ? y : random_module(modulus, kLemmaGenerators, rng);
      const auto ty = tensor_functor(cat, y), ty2 = tensor_functor(cat, y2);
      const bool sizes = nat_transformations(ty, ty2).module().cardinality() == hom_module(y, y2).module().cardinality();
      const bool separates = (y == y2) == (tensor_values(ty) == tensor_values(ty2));
      s.passed += sizes && separates;
    }
    suites.push_back(s);
  }
  return suites;
}

Json harness_json(const HarnessSummary& s, const PurityBounds& bounds) {
  Json checkers = Json::array();
  for (std::size_t c = 0; c < kCheckerCount; ++c)
    checkers.push_back(Json{{"checker", kCheckerNames[c]},
                            {"true_count", s.true_counts[c]},
                            {"split_mismatches", s.split_mismatches[c]}});
  const auto pp = enumerate_pp(s.modulus, bounds.pp);
  return Json{{"version", kVersion},
              {"command", "random"},
              {"modulus", s.modulus},
              {"trials", s.trials},
              {"seed", s.seed},
              {"bounds", bounds_json(bounds)},
              {"pure", s.pure},
              {"not_pure", s.trials - s.pure - s.disagreements},
              {"disagreements", s.disagreements},
              {"disagreeing_trials", s.disagreeing_trials},
              {"checkers", checkers},
              {"catalogs",
               Json{{"pp_formulas", pp->formulas.size()},
                    {"pp_pairs", pp->pairs.size()},
                    {"fp_functors", fp_catalog(s.modulus, bounds.fp_depth).size()},
                    {"pp_sufficient_on_sample", s.split_mismatches[3] == 0}}}};
}

Json lemmas_json(Int modulus, std::size_t trials, std::uint64_t seed, const std::vector<LemmaSuite>& suites) {
  Json list = Json::array();
  bool all = true;
  for (const auto& s : suites) {
    list.push_back(Json{{"suite", s.name}, {"instances", s.instances}, {"passed", s.passed}, {"ok", s.ok()}});
    all = all && s.ok();
  }
  return Json{{"version", kVersion}, {"command", "lemmas"}, {"modulus", modulus}, {"trials", trials},
              {"seed", seed},        {"suites", list},      {"ok", all}};
}

int cmd_check(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    fail_check(err, "cannot read " + path);
    return 3;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    const auto seq = to_sequence(parse_sequence_document(buf.str()));
    const auto report = purity_report(seq, opts.bounds);
    const auto doc = make_report(report, opts.bounds);
    if (opts.format == OutputFormat::json) {
      out << serialize(doc);
    } else {
      out << "modulus " << seq.modulus() << ": " << sequence_text(seq) << "\n";
      for (const auto& o : report.outcomes) {
        out << "  " << std::left << std::setw(12) << o.name << (o.verdict ? "pure    " : "impure  ") << o.witness.text
            << "\n";
      }
      out << "consensus: " << (report.consensus ? "yes" : "NO") << "; "
          << (report.pure() ? "pure" : report.consensus ? "not pure" : "undecided") << "\n";
      for (const auto& n : doc.notes) out << "note: " << n << "\n";
    }
    return report.consensus ? 0 : 1;
  } catch (const DocumentError& e) {
    fail_check(err, path + ": " + e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    fail_check(err, path + ": " + e.what());
    return 2;
  } catch (const std::overflow_error& e) {
    fail_check(err, path + ": " + e.what());
    return 2;
  }
}

int cmd_random(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto s = equivalence_harness(opts.modulus, opts.trials, opts.seed, opts.bounds, SesBounds{}, opts.jobs);
    if (opts.format == OutputFormat::json) {
      out << harness_json(s, opts.bounds).dump(2) << "\n";
    } else {
      out << "modulus " << s.modulus << ", " << s.trials << " trials, seed " << s.seed << "\n";
      out << "pure " << s.pure << ", not pure " << s.trials - s.pure - s.disagreements << ", disagreements "
          << s.disagreements << "\n";
      for (std::size_t c = 0; c < kCheckerCount; ++c)
        out << "  " << std::left << std::setw(12) << kCheckerNames[c] << " true " << s.true_counts[c]
            << ", differs from split " << s.split_mismatches[c] << "\n";
      out << "elapsed " << std::fixed << std::setprecision(2) << s.seconds << " s\n";
    }
    return s.disagreements == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    fail_check(err, e.what());
    return 2;
  }
}

int cmd_lemmas(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.trials == 0) {
    fail_check(err, "at least one trial is required");
    return 2;
  }
  try {
    const auto suites = run_lemma_suites(opts.modulus, opts.trials, opts.seed);
    bool all = true;
    for (const auto& s : suites) all = all && s.ok();
    if (opts.format == OutputFormat::json) {
      out << lemmas_json(opts.modulus, opts.trials, opts.seed, suites).dump(2) << "\n";
    } else {
      out << "modulus " << opts.modulus << ", " << opts.trials << " trials, seed " << opts.seed << "\n";
      for (const auto& s : suites)
        out << "  " << std::left << std::setw(20) << s.name << s.passed << "/" << s.instances
            << (s.ok() ? "  ok" : "  FAILED") << "\n";
    }
    return all ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    fail_check(err, e.what());
    return 2;
  }
}

int cmd_example(const std::string& name, const CommandOptions&, std::ostream& out, std::ostream& err) {
  try {
    const auto doc = example_document(name);
    to_sequence(doc);
    out << serialize(doc);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::string names;
    for (const auto& n : example_names()) names += (names.empty() ? "" : ", ") + n;
    fail_check(err, std::string(e.what()) + " (known: " + names + ")");
    return 2;
  }
}

}  // namespace puritylab
