#include "puritylab/ppdef.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace puritylab {

PpFormula::PpFormula(std::size_t free, std::size_t bound, IntMatrix a, IntMatrix b)
    : free_vars(free), bound_vars(bound), A(std::move(a)), B(std::move(b)) {
  if (free_vars == 0) throw InputError("pp formula: at least one free variable is required");
  if (A.cols() != free_vars || B.cols() != bound_vars || A.rows() != B.rows())
    throw InputError("pp formula: coefficient matrices have inconsistent shapes");
}

PpFormula PpFormula::tautology(std::size_t free_vars) {
  return PpFormula(free_vars, 0, IntMatrix(0, free_vars), IntMatrix(0, 0));
}

PpFormula PpFormula::divisibility(Int modulus, Int d) {
  return PpFormula(1, 1, IntMatrix{{1}}, IntMatrix{{mod(-d, modulus)}});
}

PpFormula PpFormula::annihilator(Int d) { return PpFormula(1, 0, IntMatrix{{d}}, IntMatrix(1, 0)); }

namespace {

Int symmetric(Int v, Int n) {
  if (n <= 0) return v;
  v = mod(v, n);
  return 2 * v > n ? v - n : v;
}

// Appends c·name to a signed sum being printed.
void append_term(std::string& out, Int c, const std::string& name) {
  if (c == 0) return;
  if (out.empty()) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  const Int a = c < 0 ? -c : c;
  if (a != 1) out += std::to_string(a);
  out += name;
}

}  // namespace

std::string PpFormula::to_string(Int modulus) const {
  std::string body;
  for (std::size_t r = 0; r < rows(); ++r) {
    std::string lhs, rhs;
    for (std::size_t v = 0; v < free_vars; ++v) append_term(lhs, symmetric(A(r, v), modulus), "x" + std::to_string(v + 1));
    for (std::size_t w = 0; w < bound_vars; ++w) append_term(rhs, symmetric(-B(r, w), modulus), "y" + std::to_string(w + 1));
    if (lhs.empty() && rhs.empty()) continue;
    if (!body.empty()) body += " & ";
    body += (lhs.empty() ? "0" : lhs) + " = " + (rhs.empty() ? "0" : rhs);
  }
  if (body.empty()) body = "x1 = x1";
  if (bound_vars == 0) return body;
  std::string head = "E";
  for (std::size_t w = 0; w < bound_vars; ++w) head += " y" + std::to_string(w + 1);
  return head + " : " + body;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

struct Token {
  enum Kind { number, var, symbol, end } kind;
  std::string text;
  Int value = 0;
  char var_kind = 0;
  std::size_t index = 0;  // 1-based variable index
};

Token make_token(Token::Kind kind, std::string text = {}, Int value = 0) {
  Token t{kind, std::move(text), value, 0, 0};
  return t;
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("pp formula: " + why + " at position " + std::to_string(i) + " in \"" + s + "\"");
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Int v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > kMaxModulus * 1024) fail("coefficient too large");
        ++i;
      }
      out.push_back(make_token(Token::number, {}, v));
    } else if (c == 'x' || c == 'y') {
      ++i;
      std::size_t idx = 0;
      bool digits = false;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        idx = idx * 10 + static_cast<std::size_t>(s[i] - '0');
        if (idx > 64) fail("variable index too large");
        digits = true;
        ++i;
      }
      if (digits && idx == 0) fail("variables are numbered from 1");
      Token t = make_token(Token::var);
      t.var_kind = c;
      t.index = digits ? idx : 1;
      out.push_back(t);
    } else if (c == 'E') {
      out.push_back(make_token(Token::symbol, "E"));
      ++i;
    } else if (std::string("+-*=&:").find(c) != std::string::npos) {
      out.push_back(make_token(Token::symbol, std::string(1, c)));
      ++i;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back(make_token(Token::end));
  return out;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  std::map<std::size_t, std::size_t> bound;  // y index -> column
  std::size_t max_free = 0;

  const Token& peek() const { return toks[pos]; }
  bool accept(const std::string& sym) {
    if (peek().kind == Token::symbol && peek().text == sym) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) const { throw InputError("pp formula: " + why); }

  // Coefficients keyed by ('x' or 'y', column).
  using Linear = std::map<std::pair<char, std::size_t>, Int>;

  void term(Linear& acc, Int sign) {
    Int coeff = 1;
    bool have_number = false;
    if (peek().kind == Token::number) {
      coeff = peek().value;
      have_number = true;
      ++pos;
      accept("*");
    }
    if (peek().kind == Token::var) {
      const Token& t = peek();
      std::size_t col;
      if (t.var_kind == 'x') {
        col = t.index - 1;
        max_free = std::max(max_free, t.index);
      } else {
        auto it = bound.find(t.index);
        if (it == bound.end()) fail("bound variable y" + std::to_string(t.index) + " is not declared after E");
        col = it->second;
      }
      acc[{t.var_kind, col}] += sign * coeff;
      ++pos;
      return;
    }
    if (!have_number) fail("expected a coefficient or a variable");
    if (coeff != 0) fail("pp formulas are homogeneous; the only constant allowed is 0");
  }

  Linear expr() {
    Linear acc;
    Int sign = 1;
    if (accept("-")) sign = -1;
    term(acc, sign);
    for (;;) {
      if (accept("+"))
        term(acc, 1);
      else if (accept("-"))
        term(acc, -1);
      else
        return acc;
    }
  }
};

}  // namespace

PpFormula parse_pp(const std::string& text, std::size_t free_vars) {
  Parser p;
  p.toks = tokenize(text);
  if (p.accept("E")) {
    while (p.peek().kind == Token::var) {
      const Token& t = p.peek();
      if (t.var_kind != 'y') p.fail("only y variables may be quantified");
      if (!p.bound.emplace(t.index, p.bound.size()).second) p.fail("y" + std::to_string(t.index) + " declared twice");
      ++p.pos;
    }
    if (p.bound.empty()) p.fail("E must be followed by at least one bound variable");
    if (!p.accept(":")) p.fail("expected ':' after the bound variables");
  }
  std::vector<Parser::Linear> rows;
  do {
    auto lhs = p.expr();
    if (!p.accept("=")) p.fail("expected '='");
    auto rhs = p.expr();
    for (const auto& [key, c] : rhs) lhs[key] -= c;
    rows.push_back(std::move(lhs));
  } while (p.accept("&"));
  if (p.peek().kind != Token::end) p.fail("unexpected trailing input");

  const std::size_t k = std::max({free_vars, p.max_free, std::size_t{1}});
  const std::size_t m = p.bound.size();
  std::vector<IntVector> a_rows, b_rows;
  for (const auto& row : rows) {
    IntVector a(k, 0), b(m, 0);
    for (const auto& [key, c] : row) (key.first == 'x' ? a[key.second] : b[key.second]) += c;
    const bool zero = std::all_of(a.begin(), a.end(), [](Int v) { return v == 0; }) &&
                      std::all_of(b.begin(), b.end(), [](Int v) { return v == 0; });
    if (zero) continue;
    a_rows.push_back(std::move(a));
    b_rows.push_back(std::move(b));
  }
  return PpFormula(k, m, IntMatrix::from_rows(a_rows, k), IntMatrix::from_rows(b_rows, m));
}

PpFormula conjunction(const PpFormula& a, const PpFormula& b) {
  if (a.free_vars != b.free_vars) throw InputError("pp conjunction: free variable counts differ");
  const std::size_t m = a.bound_vars + b.bound_vars;
  IntMatrix bb(a.rows() + b.rows(), m);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t w = 0; w < a.bound_vars; ++w) bb(r, w) = a.B(r, w);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t w = 0; w < b.bound_vars; ++w) bb(a.rows() + r, a.bound_vars + w) = b.B(r, w);
  return PpFormula(a.free_vars, m, a.A.vconcat(b.A), std::move(bb));
}

PpPair::PpPair(PpFormula phi, const PpFormula& psi)
    : phi_(std::move(phi)), psi_(conjunction(psi, phi_)), given_(psi) {}

std::string PpPair::to_string(Int modulus) const { return phi_.to_string(modulus) + " / " + given_.to_string(modulus); }

// ---------------------------------------------------------------------------
// Evaluation.

IntVector power_moduli(const CanonicalModule& m, std::size_t k) {
  IntVector out;
  out.reserve(k * m.rank());
  for (std::size_t v = 0; v < k; ++v) out.insert(out.end(), m.invariants().begin(), m.invariants().end());
  return out;
}

IntMatrix eval_pp(const PpFormula& phi, const CanonicalModule& m) {
  const std::size_t k = phi.free_vars, n = m.rank();
  const Int modulus = m.modulus();
  // The system splits along the canonical coordinates of M: coordinate i
  // contributes A x + B y = 0 read modulo d_i.
  const IntMatrix system = reduce_mod(phi.A.hconcat(phi.B), modulus);
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    const Int d = m.invariants()[i];
    const IntMatrix ker = kernel_mod(system, IntVector(system.rows(), d), modulus);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      IntVector g(k * n, 0);
      bool nonzero = false;
      for (std::size_t v = 0; v < k; ++v) {
        g[v * n + i] = mod(ker(v, c), d);
        nonzero = nonzero || g[v * n + i] != 0;
      }
      if (nonzero) gens.push_back(std::move(g));
    }
  }
  return IntMatrix::from_columns(gens, k * n);
}

Subquotient pp_pair_value(const PpPair& p, const CanonicalModule& m) {
  return Subquotient(power_moduli(m, p.phi().free_vars), eval_pp(p.phi(), m), eval_pp(p.psi(), m), m.modulus());
}

IntMatrix power_map(const ModuleMap& f, std::size_t k) {
  const std::size_t n = f.domain().rank(), n2 = f.codomain().rank();
  IntMatrix out(k * n2, k * n);
  for (std::size_t v = 0; v < k; ++v)
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t j = 0; j < n; ++j) out(v * n2 + i, v * n + j) = f.matrix()(i, j);
  return out;
}

ModuleMap induced_pp_map(const Subquotient& from, const Subquotient& to, const ModuleMap& f, std::size_t free_vars) {
  const IntMatrix big = power_map(f, free_vars);
  const IntMatrix& lift = from.lift_matrix();
  IntMatrix out(to.module().rank(), from.module().rank());
  for (std::size_t c = 0; c < lift.cols(); ++c) {
    const IntVector image = big * std::span<const Int>(lift.column(c));
    const IntVector y = to.project(image);
    for (std::size_t r = 0; r < y.size(); ++r) out(r, c) = y[r];
  }
  return ModuleMap(from.module(), to.module(), std::move(out));
}

ModuleMap induced_pp_map(const PpPair& p, const ModuleMap& f) {
  return induced_pp_map(pp_pair_value(p, f.domain()), pp_pair_value(p, f.codomain()), f, p.phi().free_vars);
}

// ---------------------------------------------------------------------------
// Catalog.

namespace {

// Every element of the subgroup of prod Z/a_i generated by the columns,
// as a membership bitmap over the mixed-radix encoding.
std::vector<bool> membership(const IntMatrix& gens, const IntVector& moduli) {
  std::size_t total = 1;
  for (Int a : moduli) total *= static_cast<std::size_t>(a);
  std::vector<bool> seen(total, false);
  auto encode = [&](const IntVector& x) {
    std::size_t code = 0;
    for (std::size_t i = moduli.size(); i-- > 0;) code = code * static_cast<std::size_t>(moduli[i]) + static_cast<std::size_t>(x[i]);
    return code;
  };
  std::vector<IntVector> frontier{IntVector(moduli.size(), 0)};
  seen[0] = true;
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& x : frontier)
      for (std::size_t c = 0; c < gens.cols(); ++c) {
        IntVector y(x.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod(x[i] + gens(i, c), moduli[i]);
        const std::size_t code = encode(y);
        if (!seen[code]) {
          seen[code] = true;
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

using Signature = std::vector<std::vector<bool>>;

Signature signature(const PpFormula& phi, const std::vector<CanonicalModule>& tests) {
  Signature s;
  for (const auto& t : tests) s.push_back(membership(eval_pp(phi, t), power_moduli(t, phi.free_vars)));
  return s;
}

Signature meet(const Signature& a, const Signature& b) {
  Signature out = a;
  for (std::size_t t = 0; t < out.size(); ++t)
    for (std::size_t i = 0; i < out[t].size(); ++i) out[t][i] = a[t][i] && b[t][i];
  return out;
}

// Chains b_1 | b_2 | ... of length len drawn from the proper divisors of N.
void chains(const std::vector<Int>& ds, std::size_t len, std::vector<Int>& cur, std::vector<std::vector<Int>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (Int d : ds) {
    if (!cur.empty() && d % cur.back() != 0) continue;
    cur.push_back(d);
    chains(ds, len, cur, out);
    cur.pop_back();
  }
}

constexpr double kMaxCatalogCandidates = 2e6;

std::shared_ptr<const PpCatalog> build_catalog(Int modulus, const PpBounds& bounds) {
  check_modulus(modulus);
  if (bounds.free_vars == 0) throw InputError("pp catalog: at least one free variable is required");
  const std::size_t k = bounds.free_vars;

  std::vector<CanonicalModule> tests;
  double test_size = 0;
  for (Int d : divisors(modulus))
    if (d > 1) {
      tests.push_back(CanonicalModule::cyclic(modulus, d));
      double s = 1;
      for (std::size_t v = 0; v < k; ++v) s *= static_cast<double>(d);
      test_size += s;
    }
  if (test_size > 1 << 22) throw InputError("pp catalog: too many free variables for this modulus");

  // Every formula can be rewritten, by invertible row operations and a change
  // of bound variables, so that B is diagonal with entries dividing N in a
  // chain. Entries equal to 1 give rows that always hold and entries equal to
  // N remove the bound variable, so only proper divisors need to appear.
  std::vector<Int> proper;
  for (Int d : divisors(modulus))
    if (d > 1 && d < modulus) proper.push_back(d);

  double candidates = 0;
  for (std::size_t r = 1; r <= bounds.max_rows; ++r) {
    double a_count = 1;
    for (std::size_t e = 0; e < r * k; ++e) a_count *= static_cast<double>(modulus);
    candidates += a_count * static_cast<double>(1 + std::min(r, bounds.max_exists)) *
                  static_cast<double>(std::max<std::size_t>(1, proper.size() * proper.size()));
  }
  if (candidates > kMaxCatalogCandidates)
    throw InputError("pp catalog: bounds too large for this modulus (lower the free, exists or rows bounds)");

  auto catalog = std::make_shared<PpCatalog>();
  catalog->bounds = bounds;
  catalog->modulus = modulus;
  std::map<Signature, std::size_t> seen;
  std::vector<Signature> sigs;
  auto offer = [&](PpFormula phi) {
    auto sig = signature(phi, tests);
    if (seen.emplace(sig, catalog->formulas.size()).second) {
      catalog->formulas.push_back(std::move(phi));
      sigs.push_back(std::move(sig));
    }
  };

  offer(PpFormula::tautology(k));
  if (k == 1 && bounds.max_rows >= 1) {
    if (bounds.max_exists >= 1)
      for (Int d : divisors(modulus)) offer(PpFormula::divisibility(modulus, d));
    for (Int d : divisors(modulus)) offer(PpFormula::annihilator(d));
  }

  for (std::size_t r = 1; r <= bounds.max_rows; ++r) {
    for (std::size_t m0 = 0; m0 <= std::min(r, bounds.max_exists); ++m0) {
      std::vector<std::vector<Int>> bs;
      std::vector<Int> cur;
      chains(proper, m0, cur, bs);
      for (const auto& diag : bs) {
        IntMatrix b(r, m0);
        for (std::size_t w = 0; w < m0; ++w) b(w, w) = diag[w];
        IntVector a(r * k, 0);
        for (;;) {
          IntMatrix am(r, k);
          for (std::size_t e = 0; e < a.size(); ++e) am(e / k, e % k) = a[e];
          offer(PpFormula(k, m0, std::move(am), b));
          std::size_t e = 0;
          while (e < a.size() && ++a[e] == modulus) a[e++] = 0;
          if (e == a.size()) break;
        }
      }
    }
  }

  // Pairs phi / (psi ∧ phi): drop those with psi ∧ phi equivalent to phi
  // and keep one representative of each equivalence class.
  std::set<std::pair<std::size_t, Signature>> pair_seen;
  for (std::size_t i = 0; i < catalog->formulas.size(); ++i)
    for (std::size_t j = 0; j < catalog->formulas.size(); ++j) {
      if (i == j) continue;
      auto lower = meet(sigs[i], sigs[j]);
      if (lower == sigs[i]) continue;
      if (!pair_seen.emplace(i, std::move(lower)).second) continue;
      catalog->pair_indices.emplace_back(i, j);
      catalog->pairs.emplace_back(catalog->formulas[i], catalog->formulas[j]);
    }
  return catalog;
}

}  // namespace

std::shared_ptr<const PpCatalog> enumerate_pp(Int modulus, const PpBounds& bounds) {
  static std::mutex lock;
  static std::map<std::tuple<Int, std::size_t, std::size_t, std::size_t>, std::shared_ptr<const PpCatalog>> cache;
  const auto key = std::make_tuple(modulus, bounds.free_vars, bounds.max_exists, bounds.max_rows);
  {
    std::lock_guard guard(lock);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = build_catalog(modulus, bounds);
  std::lock_guard guard(lock);
  return cache.emplace(key, std::move(built)).first->second;
}

}  // namespace puritylab
