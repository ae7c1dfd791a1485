#pragma once

// Six independent tests of purity for a short exact sequence
// 0 -> L -> M -> N -> 0 over Z/N, and a harness that checks they agree.
//
//   hom_lifting  every map Z/d -> N lifts along g
//   split        g has a section
//   fp_functors  every functor coker(Hom(a, -) -> Hom(b, -)) in a bounded
//                catalog keeps the sequence exact
//   pp_pairs     every pp pair in a bounded catalog gives an exact sequence
//                of sort groups
//   tensor       Z/d ⊗ f is injective for every d | N; this single test
//                stands for both the fp-injective and the injective functor
//                conditions, since every finite module is pure-injective
//   dual_split   the dual sequence 0 -> N* -> M* -> L* -> 0 splits

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "puritylab/finmod.hpp"
#include "puritylab/ppdef.hpp"

namespace puritylab {

inline constexpr std::array<const char*, 6> kCheckerNames{"hom_lifting", "split",  "fp_functors",
                                                          "pp_pairs",    "tensor", "dual_split"};
inline constexpr std::size_t kCheckerCount = kCheckerNames.size();

struct PurityBounds {
  PpBounds pp;
  std::size_t fp_depth = 2;  // generators of a and b in the fp-functor catalog
  bool operator==(const PurityBounds&) const = default;
};

/// Certificate attached to a negative verdict (or the section of a split
/// sequence).
struct Witness {
  enum class Kind { none, map, section, functor, pair, module, dual_sequence };
  Kind kind = Kind::none;
  std::string text;
  std::optional<ModuleMap> map;          // map, section, functor (the u : b -> a)
  std::optional<CanonicalModule> module; // Y for the tensor test
  std::optional<PpPair> pair;
};

std::string kind_name(Witness::Kind k);

struct CheckResult {
  bool verdict = false;
  Witness witness;
};

CheckResult check_hom_lifting(const ShortSequence& seq);
CheckResult check_split_oracle(const ShortSequence& seq);
CheckResult check_fp_functors(const ShortSequence& seq, std::size_t depth);
CheckResult check_pp_pairs(const ShortSequence& seq, const PpBounds& bounds);
CheckResult check_tensor(const ShortSequence& seq);
/// Throws std::logic_error if the dual sequence is not exact.
CheckResult check_dual_split(const ShortSequence& seq);

/// The maps u : b -> a used by check_fp_functors, for modules with at most
/// `depth` generators. Deterministic; cached per (N, depth).
const std::vector<ModuleMap>& fp_catalog(Int modulus, std::size_t depth);

struct CheckerOutcome {
  std::string name;
  bool verdict = false;
  Witness witness;
  double seconds = 0;
};

struct PurityReport {
  Int modulus = 1;
  std::vector<CheckerOutcome> outcomes;  // in kCheckerNames order
  bool consensus = false;
  /// The common verdict when consensus holds.
  bool pure() const { return consensus && !outcomes.empty() && outcomes.front().verdict; }
};

PurityReport purity_report(const ShortSequence& seq, const PurityBounds& bounds);

struct HarnessSummary {
  Int modulus = 1;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t pure = 0;
  std::size_t disagreements = 0;
  std::array<std::size_t, kCheckerCount> true_counts{};
  /// Trials where a checker differs from the split oracle; a zero entry for
  /// pp_pairs is the empirical evidence that the pp catalog was sufficient.
  std::array<std::size_t, kCheckerCount> split_mismatches{};
  /// Trial indices whose checkers disagreed.
  std::vector<std::size_t> disagreeing_trials;
  double seconds = 0;
};

/// Trial i draws random_ses(N, ses, mix_seed(seed, i)). Results do not
/// depend on `jobs`.
HarnessSummary equivalence_harness(Int modulus, std::size_t trials, std::uint64_t seed, const PurityBounds& bounds,
                                   const SesBounds& ses = {}, std::size_t jobs = 1);

}  // namespace puritylab
