#pragma once

// Exact integer and Z/N linear algebra.
//
// Entries are 64-bit integers. Integer-level routines (smith_normal_form,
// matrix products) detect overflow and throw std::overflow_error rather than
// wrap. Every modular routine requires 1 <= N <= kMaxModulus and keeps
// residues in [0, N), so intermediate products stay well inside int64.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace puritylab {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

inline constexpr Int kMaxModulus = Int{1} << 16;

/// Thrown for malformed arguments: dimension or modulus mismatches,
/// ill-defined maps, inputs that violate a documented precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0);
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Int> entries);
  /// Builds from row arrays; `cols` fixes the width when `rows` is empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> to_rows() const;

  IntMatrix transpose() const;
  /// Columns of *this followed by columns of `rhs` (row counts must agree).
  IntMatrix hconcat(const IntMatrix& rhs) const;
  IntMatrix vconcat(const IntMatrix& rhs) const;
  IntMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  IntMatrix select_columns(std::span<const std::size_t> which) const;

  bool is_zero() const;
  bool operator==(const IntMatrix&) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Exact product; throws std::overflow_error on int64 overflow.
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, std::span<const Int> x);

/// Least nonnegative residue of a modulo n (n >= 1).
Int mod(Int a, Int n);
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

struct ExtGcd {
  Int g;  // nonnegative
  Int x;
  Int y;  // a*x + b*y = g
};
ExtGcd ext_gcd(Int a, Int b);

/// Inverse of a unit u modulo n; throws InputError if gcd(u, n) != 1.
Int inverse_mod(Int u, Int n);

/// Throws InputError unless 1 <= n <= kMaxModulus.
void check_modulus(Int n);

std::vector<Int> divisors(Int n);

IntMatrix reduce_mod(IntMatrix a, Int n);
IntVector reduce_mod(IntVector v, Int n);

// ---------------------------------------------------------------------------
// Smith normal form over the integers.

struct SnfResult {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix S;  // rows x cols, diagonal with s_1 | s_2 | ..., s_i >= 0
  IntMatrix V;  // cols x cols, unimodular
  IntVector diagonal() const;
};

/// U * A * V == S exactly.
SnfResult smith_normal_form(const IntMatrix& a);

/// Determinant by fraction-free elimination (exact; used to certify U, V).
Int determinant(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Diagonalization over Z/N.

/// P * A * Q == D (mod N) with P, Q invertible over Z/N. The diagonal of D
/// (length min(rows, cols)) consists of divisors of N or 0, ordered so that
/// each entry divides the next (0 is divisible by everything).
struct ModDiagonalization {
  Int modulus = 1;
  IntMatrix P;
  IntMatrix P_inv;
  IntMatrix Q;
  IntVector diagonal;

  /// The invariant factor attached to diagonal position i: the entry itself,
  /// or N where the entry is 0.
  Int factor(std::size_t i) const { return diagonal[i] == 0 ? modulus : diagonal[i]; }
};

ModDiagonalization diagonalize_mod(const IntMatrix& a, Int modulus);

/// Particular solution plus generators (columns) of the homogeneous
/// solution group; every entry reduced into [0, N).
struct SolutionSet {
  IntVector particular;
  IntMatrix homogeneous;
};

/// {x in (Z/N)^cols : A x == b (mod N)}, or nullopt when empty.
std::optional<SolutionSet> solve_linear_mod(const IntMatrix& a, std::span<const Int> b, Int modulus);

/// Row i of the system is read modulo row_moduli[i] (each dividing N);
/// unknowns range over (Z/N)^cols.
std::optional<SolutionSet> solve_mod(const IntMatrix& a, std::span<const Int> b,
                                     std::span<const Int> row_moduli, Int modulus);

/// Generators (columns) of {x in (Z/N)^cols : (A x)_i == 0 mod target_moduli[i]}.
IntMatrix kernel_mod(const IntMatrix& a, std::span<const Int> target_moduli, Int modulus);

}  // namespace puritylab
