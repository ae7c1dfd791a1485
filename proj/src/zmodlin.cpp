#include "puritylab/zmodlin.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

namespace puritylab {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, Int fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Int> entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("IntMatrix: row " + std::to_string(i) + " has wrong length");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw InputError("IntMatrix: column " + std::to_string(j) + " has wrong length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVector> IntMatrix::to_rows() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw InputError("hconcat: row counts differ");
  IntMatrix m(rows_, cols_ + rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < rhs.cols_; ++j) m(i, cols_ + j) = rhs(i, j);
  }
  return m;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& rhs) const {
  if (cols_ != rhs.cols_) throw InputError("vconcat: column counts differ");
  IntMatrix m(rows_ + rhs.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(rhs.data_.begin(), rhs.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

IntMatrix IntMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw InputError("block: out of range");
  IntMatrix m(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) m(i, j) = (*this)(row0 + i, col0 + j);
  return m;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> which) const {
  IntMatrix m(rows_, which.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < which.size(); ++j) m(i, j) = (*this)(i, which[j]);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Int v) { return v == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product: inner dimensions differ");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
    }
  return c;
}

IntVector operator*(const IntMatrix& a, std::span<const Int> x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector product: dimensions differ");
  IntVector y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) y[i] = checked_add(y[i], checked_mul(a(i, k), x[k]));
  return y;
}

Int mod(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Int inverse_mod(Int u, Int n) {
  const auto e = ext_gcd(mod(u, n), n);
  if (e.g != 1) throw InputError("inverse_mod: " + std::to_string(u) + " is not a unit mod " + std::to_string(n));
  return mod(e.x, n);
}

void check_modulus(Int n) {
  if (n < 1 || n > kMaxModulus)
    throw InputError("modulus " + std::to_string(n) + " outside supported range [1, " + std::to_string(kMaxModulus) + "]");
}

std::vector<Int> divisors(Int n) {
  std::vector<Int> out;
  for (Int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

IntMatrix reduce_mod(IntMatrix a, Int n) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = mod(a(i, j), n);
  return a;
}

IntVector reduce_mod(IntVector v, Int n) {
  for (auto& x : v) x = mod(x, n);
  return v;
}

// ---------------------------------------------------------------------------

IntVector SnfResult::diagonal() const {
  IntVector d(std::min(S.rows(), S.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = S(i, i);
  return d;
}

namespace {

// Integer elimination workspace: tracks U and V alongside the working matrix.
struct IntegerSnf {
  IntMatrix W, U, V;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < W.cols(); ++k) std::swap(W(i, k), W(j, k));
    for (std::size_t k = 0; k < U.cols(); ++k) std::swap(U(i, k), U(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < W.rows(); ++k) std::swap(W(k, i), W(k, j));
    for (std::size_t k = 0; k < V.rows(); ++k) std::swap(V(k, i), V(k, j));
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, Int c) {
    for (std::size_t k = 0; k < W.cols(); ++k) W(i, k) = checked_add(W(i, k), checked_mul(c, W(j, k)));
    for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) = checked_add(U(i, k), checked_mul(c, U(j, k)));
  }
  void add_col(std::size_t i, std::size_t j, Int c) {
    for (std::size_t k = 0; k < W.rows(); ++k) W(k, i) = checked_add(W(k, i), checked_mul(c, W(k, j)));
    for (std::size_t k = 0; k < V.rows(); ++k) V(k, i) = checked_add(V(k, i), checked_mul(c, V(k, j)));
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < W.cols(); ++k) W(i, k) = -W(i, k);
    for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) = -U(i, k);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntegerSnf w{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  const std::size_t r = std::min(m, n);

  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      // Smallest nonzero absolute value in the trailing block.
      std::size_t pi = t, pj = t;
      Int best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int v = std::abs(w.W(i, j));
          if (v != 0 && (best == 0 || v < best)) best = v, pi = i, pj = j;
        }
      if (best == 0) {
        return {std::move(w.U), std::move(w.W), std::move(w.V)};
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      const Int p = w.W(t, t);

      bool remainder = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.W(i, t) == 0) continue;
        const Int q = w.W(i, t) / p;
        w.add_row(i, t, -q);
        if (w.W(i, t) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.W(t, j) == 0) continue;
        const Int q = w.W(t, j) / p;
        w.add_col(j, t, -q);
        if (w.W(t, j) != 0) remainder = true;
      }
      if (remainder) continue;

      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.W(i, j) % p != 0) {
            w.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (!divisible) continue;
      if (p < 0) w.negate_row(t);
      break;
    }
  }
  return {std::move(w.U), std::move(w.W), std::move(w.V)};
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  std::vector<__int128> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return m[i * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && at(s, k) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  const __int128 d = at(n - 1, n - 1) * sign;
  if (d > INT64_MAX || d < INT64_MIN) throw std::overflow_error("determinant overflows int64");
  return static_cast<Int>(d);
}

// ---------------------------------------------------------------------------

namespace {

// Elimination over Z/N. Row operations act on W and P (and inversely on
// P_inv); column operations act on W and Q.
class ModWorkspace {
 public:
  ModWorkspace(const IntMatrix& a, Int n)
      : n_(n),
        W(reduce_mod(a, n)),
        P(IntMatrix::identity(a.rows())),
        P_inv(IntMatrix::identity(a.rows())),
        Q(IntMatrix::identity(a.cols())) {}

  Int n_;
  IntMatrix W, P, P_inv, Q;

  Int red(Int v) const { return mod(v, n_); }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < W.cols(); ++k) std::swap(W(i, k), W(j, k));
    for (std::size_t k = 0; k < P.cols(); ++k) std::swap(P(i, k), P(j, k));
    for (std::size_t k = 0; k < P_inv.rows(); ++k) std::swap(P_inv(k, i), P_inv(k, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < W.rows(); ++k) std::swap(W(k, i), W(k, j));
    for (std::size_t k = 0; k < Q.rows(); ++k) std::swap(Q(k, i), Q(k, j));
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, Int c) {
    c = red(c);
    if (c == 0) return;
    for (std::size_t k = 0; k < W.cols(); ++k) W(i, k) = red(W(i, k) + c * W(j, k));
    for (std::size_t k = 0; k < P.cols(); ++k) P(i, k) = red(P(i, k) + c * P(j, k));
    for (std::size_t k = 0; k < P_inv.rows(); ++k) P_inv(k, j) = red(P_inv(k, j) - c * P_inv(k, i));
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, Int c) {
    c = red(c);
    if (c == 0) return;
    for (std::size_t k = 0; k < W.rows(); ++k) W(k, i) = red(W(k, i) + c * W(k, j));
    for (std::size_t k = 0; k < Q.rows(); ++k) Q(k, i) = red(Q(k, i) + c * Q(k, j));
  }
  void scale_row(std::size_t i, Int u) {
    const Int v = inverse_mod(u, n_);
    for (std::size_t k = 0; k < W.cols(); ++k) W(i, k) = red(W(i, k) * u);
    for (std::size_t k = 0; k < P.cols(); ++k) P(i, k) = red(P(i, k) * u);
    for (std::size_t k = 0; k < P_inv.rows(); ++k) P_inv(k, i) = red(P_inv(k, i) * v);
  }
  // (row_i, row_j) <- (p row_i + q row_j, r row_i + s row_j), ps - qr = 1.
  void mix_rows(std::size_t i, std::size_t j, Int p, Int q, Int r, Int s) {
    p = red(p), q = red(q), r = red(r), s = red(s);
    for (std::size_t k = 0; k < W.cols(); ++k) {
      const Int a = W(i, k), b = W(j, k);
      W(i, k) = red(p * a + q * b);
      W(j, k) = red(r * a + s * b);
    }
    for (std::size_t k = 0; k < P.cols(); ++k) {
      const Int a = P(i, k), b = P(j, k);
      P(i, k) = red(p * a + q * b);
      P(j, k) = red(r * a + s * b);
    }
    for (std::size_t k = 0; k < P_inv.rows(); ++k) {
      const Int a = P_inv(k, i), b = P_inv(k, j);
      P_inv(k, i) = red(s * a - r * b);
      P_inv(k, j) = red(-q * a + p * b);
    }
  }
  // (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j), ps - qr = 1.
  void mix_cols(std::size_t i, std::size_t j, Int p, Int q, Int r, Int s) {
    p = red(p), q = red(q), r = red(r), s = red(s);
    for (std::size_t k = 0; k < W.rows(); ++k) {
      const Int a = W(k, i), b = W(k, j);
      W(k, i) = red(p * a + q * b);
      W(k, j) = red(r * a + s * b);
    }
    for (std::size_t k = 0; k < Q.rows(); ++k) {
      const Int a = Q(k, i), b = Q(k, j);
      Q(k, i) = red(p * a + q * b);
      Q(k, j) = red(r * a + s * b);
    }
  }

  // Unit u with u * gcd(p, N) == p (mod N).
  Int associating_unit(Int p) const {
    const Int d = std::gcd(p, n_);
    const Int step = n_ / d;
    for (Int u = p / d;; u += step)
      if (std::gcd(u, n_) == 1) return red(u);
  }

  // Clears row t and column t beyond the pivot. Returns with W(t,t) a divisor of N.
  void clear_cross(std::size_t t) {
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = t + 1; i < W.rows(); ++i) {
        const Int b = W(i, t);
        if (b == 0) continue;
        const Int d = W(t, t);
        if (b % d == 0) {
          add_row(i, t, -(b / d));
        } else {
          const auto e = ext_gcd(d, b);
          mix_rows(t, i, e.x, e.y, -(b / e.g), d / e.g);
          again = true;
        }
      }
      for (std::size_t j = t + 1; j < W.cols(); ++j) {
        const Int b = W(t, j);
        if (b == 0) continue;
        const Int d = W(t, t);
        if (b % d == 0) {
          add_col(j, t, -(b / d));
        } else {
          const auto e = ext_gcd(d, b);
          mix_cols(t, j, e.x, e.y, -(b / e.g), d / e.g);
          again = true;
        }
      }
    }
  }
};

}  // namespace

ModDiagonalization diagonalize_mod(const IntMatrix& a, Int modulus) {
  check_modulus(modulus);
  ModWorkspace w(a, modulus);
  const std::size_t m = a.rows(), n = a.cols(), r = std::min(m, n);
  IntVector diag(r, 0);

  std::size_t t = 0;
  for (; t < r; ++t) {
    bool found = true;
    for (;;) {
      std::size_t pi = 0, pj = 0;
      Int best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int v = w.W(i, j);
          if (v == 0) continue;
          const Int g = std::gcd(v, modulus);
          if (best == 0 || g < best) best = g, pi = i, pj = j;
          if (best == 1) break;
        }
      if (best == 0) {
        found = false;
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      const Int u = w.associating_unit(w.W(t, t));
      if (u != 1) w.scale_row(t, inverse_mod(u, modulus));
      w.clear_cross(t);

      const Int d = w.W(t, t);
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.W(i, j) % d != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.add_row(t, bad, 1);
    }
    if (!found) break;
    diag[t] = w.W(t, t);
  }
  return {modulus, std::move(w.P), std::move(w.P_inv), std::move(w.Q), std::move(diag)};
}

namespace {

// Particular solution (if any) and homogeneous generators of A x == b over
// (Z/N)^cols, all rows read modulo N.
std::optional<SolutionSet> solve_uniform(const IntMatrix& a, std::span<const Int> b, Int modulus,
                                         std::size_t keep_rows_of_x) {
  const auto dz = diagonalize_mod(a, modulus);
  const std::size_t m = a.rows(), n = a.cols();
  IntVector c = reduce_mod(dz.P * b, modulus);

  IntVector y(n, 0);
  bool solvable = true;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < dz.diagonal.size() && dz.diagonal[i] != 0) {
      const Int d = dz.diagonal[i];
      if (c[i] % d != 0) {
        solvable = false;
        break;
      }
      y[i] = c[i] / d;
    } else if (c[i] != 0) {
      solvable = false;
      break;
    }
  }

  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < n; ++j) {
    const Int scale = j < dz.diagonal.size() ? modulus / dz.factor(j) : 1;
    if (scale == modulus) continue;
    IntVector g(keep_rows_of_x);
    bool nonzero = false;
    for (std::size_t i = 0; i < keep_rows_of_x; ++i) {
      g[i] = mod(scale * dz.Q(i, j), modulus);
      nonzero = nonzero || g[i] != 0;
    }
    if (nonzero) gens.push_back(std::move(g));
  }

  if (!solvable) return std::nullopt;
  IntVector x = reduce_mod(dz.Q * std::span<const Int>(y), modulus);
  x.resize(keep_rows_of_x);
  return SolutionSet{std::move(x), IntMatrix::from_columns(gens, keep_rows_of_x)};
}

// [A | diag(m_i)] restricted to rows whose modulus is a proper divisor of N.
IntMatrix augment(const IntMatrix& a, std::span<const Int> row_moduli, Int modulus) {
  std::vector<std::size_t> proper;
  for (std::size_t i = 0; i < row_moduli.size(); ++i) {
    const Int mi = row_moduli[i];
    if (mi < 1 || modulus % mi != 0)
      throw InputError("row modulus " + std::to_string(mi) + " does not divide " + std::to_string(modulus));
    if (mi != modulus) proper.push_back(i);
  }
  IntMatrix out(a.rows(), a.cols() + proper.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t k = 0; k < proper.size(); ++k) out(proper[k], a.cols() + k) = row_moduli[proper[k]];
  return out;
}

}  // namespace

std::optional<SolutionSet> solve_linear_mod(const IntMatrix& a, std::span<const Int> b, Int modulus) {
  check_modulus(modulus);
  if (b.size() != a.rows()) throw InputError("solve_linear_mod: right-hand side has wrong length");
  return solve_uniform(a, b, modulus, a.cols());
}

std::optional<SolutionSet> solve_mod(const IntMatrix& a, std::span<const Int> b, std::span<const Int> row_moduli,
                                     Int modulus) {
  check_modulus(modulus);
  if (b.size() != a.rows()) throw InputError("solve_mod: right-hand side has wrong length");
  if (row_moduli.size() != a.rows()) throw InputError("solve_mod: one modulus per row required");
  return solve_uniform(augment(a, row_moduli, modulus), b, modulus, a.cols());
}

IntMatrix kernel_mod(const IntMatrix& a, std::span<const Int> target_moduli, Int modulus) {
  check_modulus(modulus);
  if (target_moduli.size() != a.rows()) throw InputError("kernel_mod: one target modulus per row required");
  const IntVector zero(a.rows(), 0);
  return solve_uniform(augment(a, target_moduli, modulus), zero, modulus, a.cols())->homogeneous;
}

}  // namespace puritylab
