#pragma once

// Finite Z/N-modules in invariant-factor form.
//
// Matrix convention, used everywhere in the library and in every file
// format: a map M -> X is a matrix whose rows are indexed by the generators
// of X and whose columns are indexed by the generators of M. Column j holds
// the coordinates of the image of the j-th generator of M, and the map acts
// on coordinate columns by left multiplication.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "puritylab/zmodlin.hpp"

namespace puritylab {

using Order = boost::multiprecision::cpp_int;

/// Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k | N.
class CanonicalModule {
 public:
  CanonicalModule() = default;
  CanonicalModule(Int modulus, std::vector<Int> invariants);

  static CanonicalModule zero(Int modulus);
  /// Z/d, or the zero module when d == 1.
  static CanonicalModule cyclic(Int modulus, Int d);
  static CanonicalModule free(Int modulus, std::size_t rank);

  Int modulus() const { return modulus_; }
  const std::vector<Int>& invariants() const { return invariants_; }
  std::size_t rank() const { return invariants_.size(); }
  bool is_zero() const { return invariants_.empty(); }
  Order cardinality() const;

  IntVector reduce(std::span<const Int> x) const;
  IntVector zero_element() const { return IntVector(rank(), 0); }

  /// Every element as a coordinate vector; only for small modules.
  std::vector<IntVector> elements() const;

  std::string to_string() const;
  bool operator==(const CanonicalModule&) const = default;

 private:
  Int modulus_ = 1;
  std::vector<Int> invariants_;
};

/// A homomorphism domain -> codomain; see the matrix convention above.
/// Entries are kept reduced modulo the codomain invariants.
class ModuleMap {
 public:
  ModuleMap() = default;
  /// Throws InputError when the matrix has the wrong shape or the map is not
  /// well defined (d_j times column j must vanish in the codomain).
  ModuleMap(CanonicalModule domain, CanonicalModule codomain, IntMatrix matrix);

  static ModuleMap zero(const CanonicalModule& domain, const CanonicalModule& codomain);
  static ModuleMap identity(const CanonicalModule& m);

  const CanonicalModule& domain() const { return domain_; }
  const CanonicalModule& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(std::span<const Int> x) const;
  ModuleMap operator+(const ModuleMap& rhs) const;
  ModuleMap operator-(const ModuleMap& rhs) const;
  ModuleMap scaled(Int c) const;
  bool is_zero() const { return matrix_.is_zero(); }
  bool operator==(const ModuleMap&) const = default;

 private:
  CanonicalModule domain_;
  CanonicalModule codomain_;
  IntMatrix matrix_;
};

/// outer ∘ inner.
ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner);

/// Canonical form of (Z/N)^n / (column span of the relations).
struct Presentation {
  CanonicalModule module;
  IntMatrix to_canonical;    // rank × n: raw coordinates -> canonical coordinates
  IntMatrix from_canonical;  // n × rank: canonical generator -> raw coordinates
};

Presentation normalize_presentation(const IntMatrix& relations, Int modulus);

/// The subgroup generated by the columns of `numerator` inside
/// Z/a_1 + ... + Z/a_n, modulo the subgroup generated by `denominator`
/// (assumed contained in the numerator), in canonical form.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(IntVector ambient, IntMatrix numerator, IntMatrix denominator, Int modulus);
  /// Numerator = the whole ambient group.
  static Subquotient quotient(IntVector ambient, const IntMatrix& denominator, Int modulus);
  static Subquotient subgroup(IntVector ambient, IntMatrix numerator, Int modulus);

  const CanonicalModule& module() const { return module_; }
  const IntVector& ambient() const { return ambient_; }
  Int modulus() const { return modulus_; }

  /// Ambient representative of a canonical element.
  IntVector lift(std::span<const Int> canonical) const;
  /// Ambient representatives of the canonical generators (one per column).
  const IntMatrix& lift_matrix() const { return lift_; }
  /// Canonical coordinates of an ambient element of the numerator.
  std::optional<IntVector> try_project(std::span<const Int> x) const;
  IntVector project(std::span<const Int> x) const;

 private:
  IntVector ambient_;
  IntMatrix numerator_;
  bool whole_ = false;
  Int modulus_ = 1;
  CanonicalModule module_;
  IntMatrix to_canonical_;  // rank × (numerator columns)
  IntMatrix lift_;
};

/// Hom(source, target) with its elements realized as module maps.
class HomModule {
 public:
  HomModule() = default;
  HomModule(CanonicalModule source, CanonicalModule target);

  const CanonicalModule& module() const { return raw_.module(); }
  const CanonicalModule& source() const { return source_; }
  const CanonicalModule& target() const { return target_; }

  ModuleMap realize(std::span<const Int> element) const;
  IntVector coordinates(const ModuleMap& f) const;
  std::vector<ModuleMap> generators() const;

 private:
  CanonicalModule source_, target_;
  Subquotient raw_;  // raw generator (i, j) at index i * source.rank() + j
  IntVector step_;   // entry (i, j) of the generator map: e_i / gcd(d_j, e_i)
};

HomModule hom_module(const CanonicalModule& source, const CanonicalModule& target);

/// Hom(M, X) -> Hom(M, X'), s -> f ∘ s for f: X -> X'.
ModuleMap hom_post(const HomModule& from, const HomModule& to, const ModuleMap& f);
/// Hom(M, X) -> Hom(M', X), s -> s ∘ u for u: M' -> M.
ModuleMap hom_pre(const HomModule& from, const HomModule& to, const ModuleMap& u);

/// Y ⊗ M with pure tensors e_i ⊗ f_j as raw generators (index i * M.rank() + j).
class TensorProduct {
 public:
  TensorProduct() = default;
  TensorProduct(CanonicalModule left, CanonicalModule right);

  const CanonicalModule& module() const { return raw_.module(); }
  const CanonicalModule& left() const { return left_; }
  const CanonicalModule& right() const { return right_; }

  IntVector pure_tensor(std::span<const Int> y, std::span<const Int> m) const;
  IntVector project_raw(std::span<const Int> raw) const { return raw_.project(raw); }
  IntVector lift_raw(std::span<const Int> canonical) const { return raw_.lift(canonical); }
  std::size_t raw_index(std::size_t i, std::size_t j) const { return i * right_.rank() + j; }
  std::size_t raw_size() const { return left_.rank() * right_.rank(); }

 private:
  CanonicalModule left_, right_;
  Subquotient raw_;
};

TensorProduct tensor_modules(const CanonicalModule& left, const CanonicalModule& right);
/// id_Y ⊗ f : Y ⊗ M -> Y ⊗ M'.
ModuleMap tensor_map(const TensorProduct& from, const TensorProduct& to, const ModuleMap& f);
/// f ⊗ id_M : Y ⊗ M -> Y' ⊗ M.
ModuleMap tensor_map_left(const TensorProduct& from, const TensorProduct& to, const ModuleMap& f);

/// Character dual Hom(M, (1/N)Z/Z), realized as Hom(M, Z/N).
class DualModule {
 public:
  DualModule() = default;
  explicit DualModule(const CanonicalModule& original);

  const CanonicalModule& underlying() const { return hom_.module(); }
  const CanonicalModule& original() const { return hom_.source(); }

  /// Row r is the character attached to the r-th generator of the dual,
  /// as a row of values in Z/N on the generators of the original.
  const IntMatrix& pairing() const { return pairing_; }
  /// <chi, x> in Z/N, read as the element <chi, x>/N of Q/Z.
  Int evaluate(std::span<const Int> chi, std::span<const Int> x) const;
  ModuleMap character(std::span<const Int> chi) const { return hom_.realize(chi); }
  IntVector coordinates(const ModuleMap& character) const { return hom_.coordinates(character); }

 private:
  HomModule hom_;
  IntMatrix pairing_;
};

DualModule dual_module(const CanonicalModule& m);
/// f* : X* -> M* for f : M -> X (chi -> chi ∘ f); `codomain_dual` is X*.
ModuleMap dual_map(const DualModule& codomain_dual, const DualModule& domain_dual, const ModuleMap& f);
ModuleMap dual_map(const ModuleMap& f);
/// M -> M**, x -> (chi -> chi(x)).
ModuleMap evaluation_map(const CanonicalModule& m);

struct Submodule {
  Subquotient structure;
  ModuleMap inclusion;
};

struct Quotient {
  Subquotient structure;
  ModuleMap projection;
};

Submodule kernel(const ModuleMap& f);
Submodule image(const ModuleMap& f);
Quotient cokernel(const ModuleMap& f);

bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_isomorphism(const ModuleMap& f);

struct DirectSum {
  CanonicalModule module;
  ModuleMap inclusion[2];
  ModuleMap projection[2];
};

DirectSum direct_sum(const CanonicalModule& a, const CanonicalModule& b);
/// f ⊕ g between the direct sums built by direct_sum().
ModuleMap direct_sum_map(const DirectSum& from, const DirectSum& to, const ModuleMap& f, const ModuleMap& g);

enum class ExactnessDefect {
  none,
  not_composable,
  not_injective,
  not_surjective,
  middle_not_exact,
};

std::string describe(ExactnessDefect d);

class SequenceError : public InputError {
 public:
  SequenceError(ExactnessDefect d, const std::string& what) : InputError(what), defect_(d) {}
  ExactnessDefect defect() const { return defect_; }

 private:
  ExactnessDefect defect_;
};

ExactnessDefect exactness_defect(const ModuleMap& f, const ModuleMap& g);
bool is_exact(const CanonicalModule& l, const CanonicalModule& m, const CanonicalModule& n, const ModuleMap& f,
              const ModuleMap& g);

/// 0 -> L -f-> M -g-> N -> 0, validated on construction.
class ShortSequence {
 public:
  /// Throws SequenceError naming the failed condition.
  ShortSequence(ModuleMap f, ModuleMap g);

  const CanonicalModule& L() const { return f_.domain(); }
  const CanonicalModule& M() const { return f_.codomain(); }
  const CanonicalModule& N() const { return g_.codomain(); }
  const ModuleMap& f() const { return f_; }
  const ModuleMap& g() const { return g_; }
  Int modulus() const { return f_.domain().modulus(); }

  bool operator==(const ShortSequence&) const = default;

 private:
  ModuleMap f_, g_;
};

/// A section s : N -> M with g ∘ s = id, when one exists.
std::optional<ModuleMap> is_split(const ShortSequence& seq);

/// 0 -> N* -> M* -> L* -> 0.
ShortSequence dual_sequence(const ShortSequence& seq);
ShortSequence sequence_sum(const ShortSequence& a, const ShortSequence& b);

// ---------------------------------------------------------------------------
// Seeded generation.

/// mt19937_64 with a fixed, implementation-independent bounded draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n).
  Int below(Int n);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; derives independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

CanonicalModule random_module(Int modulus, std::size_t max_generators, Rng& rng);
ModuleMap random_map(const CanonicalModule& domain, const CanonicalModule& codomain, Rng& rng);
ModuleMap random_automorphism(const CanonicalModule& m, Rng& rng);

struct SesBounds {
  std::size_t max_generators = 3;         // for M and for the auxiliary target C
  std::size_t max_kernel_generators = 3;  // for L
};

/// Random q: M -> C corestricted to its image N, with L = ker(q).
ShortSequence random_ses(Int modulus, const SesBounds& bounds, std::uint64_t seed);

}  // namespace puritylab
