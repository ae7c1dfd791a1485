#pragma once

// Positive-primitive formulas over Z/N.
//
// A formula with k free and m bound variables is a system
//   exists y in M^m : A x + B y = 0
// with A of shape r × k and B of shape r × m. Its value in M is a subgroup
// of M^k. Elements of M^k are stored variable-major: coordinate v * rank(M) + i
// is the i-th canonical coordinate of the v-th variable.

#include <memory>
#include <string>
#include <vector>

#include "puritylab/finmod.hpp"

namespace puritylab {

struct PpFormula {
  std::size_t free_vars = 1;
  std::size_t bound_vars = 0;
  IntMatrix A;  // rows × free_vars
  IntMatrix B;  // rows × bound_vars

  PpFormula() : A(0, 1), B(0, 0) {}
  /// Throws InputError on inconsistent shapes or free_vars == 0.
  PpFormula(std::size_t free, std::size_t bound, IntMatrix a, IntMatrix b);

  std::size_t rows() const { return A.rows(); }

  static PpFormula tautology(std::size_t free_vars = 1);
  /// exists y : x = d y
  static PpFormula divisibility(Int modulus, Int d);
  /// d x = 0
  static PpFormula annihilator(Int d);

  /// Text form; see parse_pp for the grammar. Coefficients print as the
  /// representative of least absolute value when a modulus is given.
  std::string to_string(Int modulus = 0) const;
  bool operator==(const PpFormula&) const = default;
};

/// Grammar:
///   formula  := [ "E" var+ ":" ] equation ( "&" equation )*
///   equation := expr "=" expr
///   expr     := term ( ("+" | "-") term )*
///   term     := [int ["*"]] var | int
/// Free variables are x1, x2, ... and bound ones y1, y2, ...; "x" and "y" are
/// aliases for x1 and y1. The only constant allowed is 0. The number of free
/// variables is max(free_vars, largest index used). Throws InputError.
PpFormula parse_pp(const std::string& text, std::size_t free_vars = 1);

/// Both conditions; bound variables of `a` come first.
PpFormula conjunction(const PpFormula& a, const PpFormula& b);

/// A pp pair φ/ψ. The stored psi is ψ ∧ φ, so psi(M) ⊆ phi(M) always.
class PpPair {
 public:
  PpPair() = default;
  PpPair(PpFormula phi, const PpFormula& psi);

  const PpFormula& phi() const { return phi_; }
  const PpFormula& psi() const { return psi_; }
  /// ψ as given, before conjunction.
  const PpFormula& psi_given() const { return given_; }
  std::string to_string(Int modulus = 0) const;

 private:
  PpFormula phi_, psi_, given_;
};

/// Ambient moduli of M^k in the variable-major layout.
IntVector power_moduli(const CanonicalModule& m, std::size_t k);

/// Generators (columns) of φ(M) ⊆ M^k.
IntMatrix eval_pp(const PpFormula& phi, const CanonicalModule& m);

/// φ(M)/ψ(M) as a subquotient of M^k.
Subquotient pp_pair_value(const PpPair& p, const CanonicalModule& m);

/// The map φ(M)/ψ(M) -> φ(M')/ψ(M') induced by f : M -> M'.
ModuleMap induced_pp_map(const PpPair& p, const ModuleMap& f);
ModuleMap induced_pp_map(const Subquotient& from, const Subquotient& to, const ModuleMap& f, std::size_t free_vars);

/// The map M^k -> M'^k acting as f on each variable.
IntMatrix power_map(const ModuleMap& f, std::size_t k);

struct PpBounds {
  std::size_t free_vars = 1;
  std::size_t max_exists = 2;
  std::size_t max_rows = 2;
  bool operator==(const PpBounds&) const = default;
};

struct PpCatalog {
  PpBounds bounds;
  Int modulus = 1;
  /// Pairwise inequivalent formulas: the tautology first, then the
  /// divisibility formulas and annihilators in increasing d, then the rest.
  std::vector<PpFormula> formulas;
  /// Nontrivial pairs (phi, psi) up to equivalence, as indices into formulas.
  std::vector<std::pair<std::size_t, std::size_t>> pair_indices;
  std::vector<PpPair> pairs;
};

/// Formulas with `free_vars` free variables, at most max_exists bound
/// variables and max_rows rows, deduplicated by their values on every
/// cyclic module Z/d, d | N. Deterministic; cached per (N, bounds).
std::shared_ptr<const PpCatalog> enumerate_pp(Int modulus, const PpBounds& bounds);

}  // namespace puritylab
