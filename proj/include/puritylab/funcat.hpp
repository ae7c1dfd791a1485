#pragma once

// Additive functors on the category D of cyclic Z/N-modules.
//
// Objects of D are the divisors d of N (d stands for Z/d; d = 1 is the zero
// object). Hom(Z/d, Z/e) is cyclic of order gcd(d, e), generated by
// g_{d,e} : 1 -> e / gcd(d, e). A functor stores one value per object and one
// action per generator g_{d,e}. For a covariant F the action is
// F(d) -> F(e); for a contravariant G it is G(e) -> G(d).

#include <functional>
#include <vector>

#include "puritylab/finmod.hpp"

namespace puritylab {

class IndexCategory {
 public:
  IndexCategory() = default;
  explicit IndexCategory(Int modulus);

  Int modulus() const { return modulus_; }
  const std::vector<Int>& objects() const { return objects_; }
  std::size_t size() const { return objects_.size(); }
  std::size_t index_of(Int d) const;

  const CanonicalModule& object(std::size_t i) const { return modules_[i]; }
  /// |Hom(Z/d_i, Z/d_j)|.
  Int hom_order(std::size_t i, std::size_t j) const;
  /// g_{d_i, d_j} as a module map.
  const ModuleMap& generator(std::size_t i, std::size_t j) const { return generators_[i * size() + j]; }
  /// c with g_{j,k} ∘ g_{i,j} = c · g_{i,k}, reduced modulo gcd(d_i, d_k).
  Int composition(std::size_t i, std::size_t j, std::size_t k) const;
  /// r with s = r · g_{i,j}, for any map s : Z/d_i -> Z/d_j.
  Int coefficient(std::size_t i, std::size_t j, const ModuleMap& s) const;

  bool operator==(const IndexCategory& o) const { return modulus_ == o.modulus_; }

 private:
  Int modulus_ = 1;
  std::vector<Int> objects_;
  std::vector<CanonicalModule> modules_;
  std::vector<ModuleMap> generators_;
};

IndexCategory build_index_category(Int modulus);

enum class Variance { covariant, contravariant };

class FunctorOnD {
 public:
  FunctorOnD() = default;
  /// Validates functoriality against the composition table and throws
  /// InputError on any violation.
  FunctorOnD(IndexCategory cat, Variance variance, std::vector<CanonicalModule> values, std::vector<ModuleMap> actions);

  const IndexCategory& category() const { return cat_; }
  Variance variance() const { return variance_; }
  const CanonicalModule& value(std::size_t i) const { return values_[i]; }
  const std::vector<CanonicalModule>& values() const { return values_; }
  /// Action of g_{d_i, d_j}.
  const ModuleMap& action(std::size_t i, std::size_t j) const { return actions_[i * cat_.size() + j]; }
  /// Action of an arbitrary morphism s : Z/d_i -> Z/d_j.
  ModuleMap act(std::size_t i, std::size_t j, const ModuleMap& s) const;
  bool is_zero() const;

 private:
  IndexCategory cat_;
  Variance variance_ = Variance::covariant;
  std::vector<CanonicalModule> values_;
  std::vector<ModuleMap> actions_;
};

/// d -> Hom(Z/a, Z/d).
FunctorOnD representable_cov(const IndexCategory& cat, std::size_t a);
/// d -> Hom(Z/d, Z/c).
FunctorOnD representable_contra(const IndexCategory& cat, std::size_t c);
/// d -> Hom(Z/d, X).
FunctorOnD restrict_module(const IndexCategory& cat, const CanonicalModule& x);
/// d -> Hom(X, Z/d).
FunctorOnD corepresented(const IndexCategory& cat, const CanonicalModule& x);
/// d -> Y ⊗ Z/d.
FunctorOnD tensor_functor(const IndexCategory& cat, const CanonicalModule& y);
/// Objectwise character dual; the variance flips.
FunctorOnD dual_functor(const FunctorOnD& f);
FunctorOnD functor_sum(const FunctorOnD& a, const FunctorOnD& b);

/// A family of maps F(d) -> H(d) between functors of the same variance.
struct NatTrans {
  std::vector<ModuleMap> components;
};

bool is_natural(const FunctorOnD& f, const FunctorOnD& h, const NatTrans& alpha);

/// The objectwise cokernel of a natural transformation.
FunctorOnD functor_cokernel(const FunctorOnD& f, const FunctorOnD& h, const NatTrans& alpha);

/// coker -> coker' induced by m : X -> X', where `from` is a cokernel of a map
/// into X and `to` one into X', and m carries the first image into the second.
ModuleMap induced_on_cokernels(const Quotient& from, const Quotient& to, const ModuleMap& m);

/// For u : b -> a, the functor coker(Hom(a, -) -> Hom(b, -)) on D.
FunctorOnD fp_functor_from_map(const IndexCategory& cat, const ModuleMap& u);

/// The same functor evaluated on an arbitrary finite module.
class FpFunctorValue {
 public:
  FpFunctorValue(const ModuleMap& u, const CanonicalModule& x);
  const CanonicalModule& module() const { return coker_.projection.codomain(); }
  const HomModule& hom_b() const { return hom_b_; }
  const Quotient& cokernel() const { return coker_; }

 private:
  HomModule hom_a_, hom_b_;
  Quotient coker_;
};

CanonicalModule eval_fp_functor(const ModuleMap& u, const CanonicalModule& x);
/// F_u(m) : F_u(X) -> F_u(X') for m : X -> X'.
ModuleMap fp_functor_map(const FpFunctorValue& from, const FpFunctorValue& to, const ModuleMap& m);

/// ∫^d G(d) ⊗ F(d), presented as a quotient of the sum of the blocks
/// G(d) ⊗ F(d) (canonical coordinates, concatenated).
struct CoendResult {
  Subquotient group;
  std::vector<TensorProduct> blocks;
  std::vector<std::size_t> offsets;  // start of each block in the ambient vector

  const CanonicalModule& module() const { return group.module(); }
  /// Block d_i -> coend.
  ModuleMap injection(std::size_t i) const;
};

CoendResult coend_tensor(const FunctorOnD& g, const FunctorOnD& f);

/// A map out of the coend given on raw pure tensors: value(i, a, b) is the
/// image of (a-th generator of G(d_i)) ⊗ (b-th generator of F(d_i)).
ModuleMap coend_out(const CoendResult& c, const CanonicalModule& target,
                    const std::function<IntVector(std::size_t, std::size_t, std::size_t)>& value);

/// Maps induced by alpha : G -> G' (contravariant) or beta : F -> F'.
ModuleMap coend_map_left(const CoendResult& from, const CoendResult& to, const NatTrans& alpha);
ModuleMap coend_map_right(const CoendResult& from, const CoendResult& to, const NatTrans& beta);

/// D(-, Z/d_a) ⊗ F -> F(d_a), s ⊗ y -> F(s) y.
ModuleMap tensyon_map(const FunctorOnD& f, std::size_t a);

/// The extension of F to all finite modules, evaluated at c.
CoendResult kan_extension(const FunctorOnD& f, const CanonicalModule& c);
CanonicalModule kan_eval(const FunctorOnD& f, const CanonicalModule& c);
/// The map of extensions induced by m : c -> c'.
ModuleMap kan_map(const FunctorOnD& f, const CoendResult& from, const CoendResult& to, const ModuleMap& m);
/// kan_eval(F, Z/d_a) -> F(d_a), s ⊗ y -> F(s) y.
ModuleMap restriction_map(const FunctorOnD& f, std::size_t a);

/// Natural transformations F -> H as a module, with realization.
class NatModule {
 public:
  NatModule(const FunctorOnD& f, const FunctorOnD& h);
  const CanonicalModule& module() const { return space_.module(); }
  NatTrans realize(std::span<const Int> element) const;

 private:
  std::vector<HomModule> homs_;
  std::vector<std::size_t> offsets_;
  Subquotient space_;
};

NatModule nat_transformations(const FunctorOnD& f, const FunctorOnD& h);

/// Builds Nat(F, G*) -> (G ⊗ F)* and reports whether it is an isomorphism.
bool hom_tensor_duality_check(const FunctorOnD& g, const FunctorOnD& f);

/// X* ⊗ Z/d -> Hom(Z/d, X)* is an isomorphism for every object d.
bool dual_of_hom_check(const IndexCategory& cat, const CanonicalModule& x);

/// Random fp functor: the cokernel functor of a random u : b -> a.
FunctorOnD random_functor(const IndexCategory& cat, std::size_t max_generators, Rng& rng);
/// Either the restriction of a random module or the dual of a random functor.
FunctorOnD random_contravariant(const IndexCategory& cat, std::size_t max_generators, Rng& rng);

}  // namespace puritylab
