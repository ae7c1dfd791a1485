#include "puritylab/finmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace puritylab {

CanonicalModule::CanonicalModule(Int modulus, std::vector<Int> invariants)
    : modulus_(modulus), invariants_(std::move(invariants)) {
  check_modulus(modulus_);
  for (std::size_t i = 0; i < invariants_.size(); ++i) {
    const Int d = invariants_[i];
    if (d < 2) throw InputError("invariant factor " + std::to_string(d) + " must be at least 2");
    if (modulus_ % d != 0)
      throw InputError("invariant factor " + std::to_string(d) + " does not divide the modulus " +
                       std::to_string(modulus_));
    if (i > 0 && d % invariants_[i - 1] != 0)
      throw InputError("invariant factors violate the divisibility chain at position " + std::to_string(i));
  }
}

CanonicalModule CanonicalModule::zero(Int modulus) { return CanonicalModule(modulus, {}); }

CanonicalModule CanonicalModule::cyclic(Int modulus, Int d) {
  return d == 1 ? zero(modulus) : CanonicalModule(modulus, {d});
}

CanonicalModule CanonicalModule::free(Int modulus, std::size_t rank) {
  if (modulus == 1) return zero(modulus);
  return CanonicalModule(modulus, std::vector<Int>(rank, modulus));
}

Order CanonicalModule::cardinality() const {
  Order c = 1;
  for (Int d : invariants_) c *= d;
  return c;
}

IntVector CanonicalModule::reduce(std::span<const Int> x) const {
  if (x.size() != rank()) throw InputError("element has " + std::to_string(x.size()) + " coordinates, module " +
                                           to_string() + " has " + std::to_string(rank()) + " generators");
  IntVector y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod(y[i], invariants_[i]);
  return y;
}

std::vector<IntVector> CanonicalModule::elements() const {
  std::vector<IntVector> out;
  IntVector x(rank(), 0);
  for (;;) {
    out.push_back(x);
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == invariants_[i]) x[i++] = 0;
    if (i == x.size()) break;
  }
  return out;
}

std::string CanonicalModule::to_string() const {
  if (invariants_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariants_.size(); ++i) os << (i ? " + " : "") << "Z/" << invariants_[i];
  return os.str();
}

// ---------------------------------------------------------------------------

ModuleMap::ModuleMap(CanonicalModule domain, CanonicalModule codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (domain_.modulus() != codomain_.modulus()) throw InputError("module map: modulus mismatch");
  if (matrix_.rows() != codomain_.rank() || matrix_.cols() != domain_.rank())
    throw InputError("module map " + domain_.to_string() + " -> " + codomain_.to_string() + ": expected a " +
                     std::to_string(codomain_.rank()) + "x" + std::to_string(domain_.rank()) + " matrix, got " +
                     std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
  const auto& e = codomain_.invariants();
  const auto& d = domain_.invariants();
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      Int& a = matrix_(i, j);
      a = mod(a, e[i]);
      if (mod(d[j] * a, e[i]) != 0)
        throw InputError("ill-defined map: generator " + std::to_string(j) + " has order " + std::to_string(d[j]) +
                         " but its image coordinate " + std::to_string(i) + " (" + std::to_string(a) +
                         " mod " + std::to_string(e[i]) + ") is not killed by it");
    }
}

ModuleMap ModuleMap::zero(const CanonicalModule& domain, const CanonicalModule& codomain) {
  return ModuleMap(domain, codomain, IntMatrix(codomain.rank(), domain.rank()));
}

ModuleMap ModuleMap::identity(const CanonicalModule& m) { return ModuleMap(m, m, IntMatrix::identity(m.rank())); }

IntVector ModuleMap::apply(std::span<const Int> x) const {
  if (x.size() != domain_.rank()) throw InputError("module map applied to an element of the wrong size");
  const Int n = domain_.modulus();
  IntVector y(codomain_.rank(), 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Int xj = mod(x[j], n);
    if (xj == 0) continue;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += matrix_(i, j) * xj;
  }
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod(y[i], codomain_.invariants()[i]);
  return y;
}

ModuleMap ModuleMap::operator+(const ModuleMap& rhs) const {
  if (domain_ != rhs.domain_ || codomain_ != rhs.codomain_) throw InputError("adding maps with different shapes");
  IntMatrix m = matrix_;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += rhs.matrix_(i, j);
  return ModuleMap(domain_, codomain_, std::move(m));
}

ModuleMap ModuleMap::scaled(Int c) const {
  IntMatrix m = matrix_;
  const Int cc = mod(c, domain_.modulus());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= cc;
  return ModuleMap(domain_, codomain_, std::move(m));
}

ModuleMap ModuleMap::operator-(const ModuleMap& rhs) const { return *this + rhs.scaled(-1); }

ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner) {
  if (outer.domain() != inner.codomain())
    throw InputError("cannot compose: " + inner.codomain().to_string() + " is not " + outer.domain().to_string());
  const auto& a = outer.matrix();
  const auto& b = inner.matrix();
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return ModuleMap(inner.domain(), outer.codomain(), std::move(c));
}

// ---------------------------------------------------------------------------

Presentation normalize_presentation(const IntMatrix& relations, Int modulus) {
  const auto dz = diagonalize_mod(relations, modulus);
  const std::size_t n = relations.rows();
  std::vector<Int> invariants;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    const Int f = i < dz.diagonal.size() ? dz.factor(i) : modulus;
    if (f > 1) {
      invariants.push_back(f);
      keep.push_back(i);
    }
  }
  IntMatrix to(keep.size(), n), from(n, keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      to(r, j) = mod(dz.P(keep[r], j), invariants[r]);
      from(j, r) = dz.P_inv(j, keep[r]);
    }
  }
  return {CanonicalModule(modulus, std::move(invariants)), std::move(to), std::move(from)};
}

namespace {

void check_ambient(const IntVector& ambient, Int modulus) {
  check_modulus(modulus);
  for (Int a : ambient)
    if (a < 1 || modulus % a != 0) throw InputError("ambient modulus " + std::to_string(a) + " does not divide N");
}

IntMatrix reduce_rows(IntMatrix m, const IntVector& moduli) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j), moduli[i]);
  return m;
}

}  // namespace

Subquotient::Subquotient(IntVector ambient, IntMatrix numerator, IntMatrix denominator, Int modulus)
    : ambient_(std::move(ambient)), modulus_(modulus) {
  check_ambient(ambient_, modulus_);
  if (numerator.rows() != ambient_.size() || denominator.rows() != ambient_.size())
    throw InputError("subquotient: generator vectors do not match the ambient group");
  numerator_ = reduce_rows(std::move(numerator), ambient_);
  const std::size_t s = numerator_.cols();
  const IntMatrix combined = numerator_.hconcat(denominator);
  const IntMatrix k = kernel_mod(combined, ambient_, modulus_);
  auto pres = normalize_presentation(k.block(0, 0, s, k.cols()), modulus_);
  module_ = std::move(pres.module);
  to_canonical_ = std::move(pres.to_canonical);
  lift_ = reduce_rows(numerator_ * pres.from_canonical, ambient_);
}

Subquotient Subquotient::quotient(IntVector ambient, const IntMatrix& denominator, Int modulus) {
  check_ambient(ambient, modulus);
  if (denominator.rows() != ambient.size()) throw InputError("quotient: relation vectors do not match the ambient group");
  Subquotient q;
  q.whole_ = true;
  q.modulus_ = modulus;
  q.numerator_ = IntMatrix::identity(ambient.size());
  auto pres = normalize_presentation(IntMatrix::diagonal(ambient).hconcat(denominator), modulus);
  q.module_ = std::move(pres.module);
  q.to_canonical_ = std::move(pres.to_canonical);
  q.lift_ = reduce_rows(std::move(pres.from_canonical), ambient);
  q.ambient_ = std::move(ambient);
  return q;
}

Subquotient Subquotient::subgroup(IntVector ambient, IntMatrix numerator, Int modulus) {
  IntMatrix none(ambient.size(), 0);
  return Subquotient(std::move(ambient), std::move(numerator), std::move(none), modulus);
}

IntVector Subquotient::lift(std::span<const Int> canonical) const {
  const IntVector c = module_.reduce(canonical);
  IntVector x(ambient_.size(), 0);
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += lift_(i, j) * c[j];
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], ambient_[i]);
  return x;
}

std::optional<IntVector> Subquotient::try_project(std::span<const Int> x) const {
  if (x.size() != ambient_.size()) throw InputError("subquotient: element does not match the ambient group");
  IntVector t;
  if (whole_) {
    t = reduce_mod(IntVector(x.begin(), x.end()), modulus_);
  } else {
    auto sol = solve_mod(numerator_, x, ambient_, modulus_);
    if (!sol) return std::nullopt;
    t = std::move(sol->particular);
  }
  IntVector c(module_.rank(), 0);
  for (std::size_t r = 0; r < c.size(); ++r) {
    Int acc = 0;
    for (std::size_t j = 0; j < t.size(); ++j) acc += to_canonical_(r, j) * t[j];
    c[r] = mod(acc, module_.invariants()[r]);
  }
  return c;
}

IntVector Subquotient::project(std::span<const Int> x) const {
  auto c = try_project(x);
  if (!c) throw InputError("element does not lie in the subgroup");
  return std::move(*c);
}

// ---------------------------------------------------------------------------

HomModule::HomModule(CanonicalModule source, CanonicalModule target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.modulus() != target_.modulus()) throw InputError("hom_module: modulus mismatch");
  const auto& d = source_.invariants();
  const auto& e = target_.invariants();
  IntVector ambient;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      const Int g = std::gcd(d[j], e[i]);
      ambient.push_back(g);
      step_.push_back(e[i] / g);
    }
  const std::size_t n = ambient.size();
  raw_ = Subquotient::quotient(std::move(ambient), IntMatrix(n, 0), source_.modulus());
}

ModuleMap HomModule::realize(std::span<const Int> element) const {
  const IntVector t = raw_.lift(element);
  IntMatrix a(target_.rank(), source_.rank());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const std::size_t k = i * source_.rank() + j;
      a(i, j) = t[k] * step_[k];
    }
  return ModuleMap(source_, target_, std::move(a));
}

IntVector HomModule::coordinates(const ModuleMap& f) const {
  if (f.domain() != source_ || f.codomain() != target_) throw InputError("hom coordinates: map has the wrong type");
  IntVector t(step_.size());
  for (std::size_t i = 0; i < target_.rank(); ++i)
    for (std::size_t j = 0; j < source_.rank(); ++j) {
      const std::size_t k = i * source_.rank() + j;
      t[k] = f.matrix()(i, j) / step_[k];
    }
  return raw_.project(t);
}

std::vector<ModuleMap> HomModule::generators() const {
  std::vector<ModuleMap> out;
  IntVector e(module().rank(), 0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    e[k] = 1;
    out.push_back(realize(e));
    e[k] = 0;
  }
  return out;
}

HomModule hom_module(const CanonicalModule& source, const CanonicalModule& target) { return {source, target}; }

ModuleMap hom_post(const HomModule& from, const HomModule& to, const ModuleMap& f) {
  if (from.source() != to.source() || f.domain() != from.target() || f.codomain() != to.target())
    throw InputError("hom_post: incompatible arguments");
  std::vector<IntVector> cols;
  for (const auto& s : from.generators()) cols.push_back(to.coordinates(compose(f, s)));
  return ModuleMap(from.module(), to.module(), IntMatrix::from_columns(cols, to.module().rank()));
}

ModuleMap hom_pre(const HomModule& from, const HomModule& to, const ModuleMap& u) {
  if (from.target() != to.target() || u.codomain() != from.source() || u.domain() != to.source())
    throw InputError("hom_pre: incompatible arguments");
  std::vector<IntVector> cols;
  for (const auto& s : from.generators()) cols.push_back(to.coordinates(compose(s, u)));
  return ModuleMap(from.module(), to.module(), IntMatrix::from_columns(cols, to.module().rank()));
}

// ---------------------------------------------------------------------------

TensorProduct::TensorProduct(CanonicalModule left, CanonicalModule right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.modulus() != right_.modulus()) throw InputError("tensor_modules: modulus mismatch");
  IntVector ambient;
  for (Int y : left_.invariants())
    for (Int m : right_.invariants()) ambient.push_back(std::gcd(y, m));
  const std::size_t n = ambient.size();
  raw_ = Subquotient::quotient(std::move(ambient), IntMatrix(n, 0), left_.modulus());
}

IntVector TensorProduct::pure_tensor(std::span<const Int> y, std::span<const Int> m) const {
  const IntVector yy = left_.reduce(y), mm = right_.reduce(m);
  IntVector raw(raw_size());
  for (std::size_t i = 0; i < yy.size(); ++i)
    for (std::size_t j = 0; j < mm.size(); ++j) raw[raw_index(i, j)] = yy[i] * mm[j];
  return raw_.project(raw);
}

TensorProduct tensor_modules(const CanonicalModule& left, const CanonicalModule& right) { return {left, right}; }

ModuleMap tensor_map(const TensorProduct& from, const TensorProduct& to, const ModuleMap& f) {
  if (from.left() != to.left() || f.domain() != from.right() || f.codomain() != to.right())
    throw InputError("tensor_map: incompatible arguments");
  const std::size_t k = from.module().rank();
  std::vector<IntVector> cols;
  IntVector e(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    e[c] = 1;
    const IntVector raw = from.lift_raw(e);
    e[c] = 0;
    IntVector out(to.raw_size(), 0);
    for (std::size_t i = 0; i < from.left().rank(); ++i)
      for (std::size_t j = 0; j < from.right().rank(); ++j) {
        const Int r = raw[from.raw_index(i, j)];
        if (r == 0) continue;
        for (std::size_t l = 0; l < to.right().rank(); ++l) out[to.raw_index(i, l)] += r * f.matrix()(l, j);
      }
    cols.push_back(to.project_raw(out));
  }
  return ModuleMap(from.module(), to.module(), IntMatrix::from_columns(cols, to.module().rank()));
}

ModuleMap tensor_map_left(const TensorProduct& from, const TensorProduct& to, const ModuleMap& f) {
  if (from.right() != to.right() || f.domain() != from.left() || f.codomain() != to.left())
    throw InputError("tensor_map_left: incompatible arguments");
  const std::size_t k = from.module().rank();
  std::vector<IntVector> cols;
  IntVector e(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    e[c] = 1;
    const IntVector raw = from.lift_raw(e);
    e[c] = 0;
    IntVector out(to.raw_size(), 0);
    for (std::size_t i = 0; i < from.left().rank(); ++i)
      for (std::size_t j = 0; j < from.right().rank(); ++j) {
        const Int r = raw[from.raw_index(i, j)];
        if (r == 0) continue;
        for (std::size_t l = 0; l < to.left().rank(); ++l) out[to.raw_index(l, j)] += r * f.matrix()(l, i);
      }
    cols.push_back(to.project_raw(out));
  }
  return ModuleMap(from.module(), to.module(), IntMatrix::from_columns(cols, to.module().rank()));
}

// ---------------------------------------------------------------------------

DualModule::DualModule(const CanonicalModule& original)
    : hom_(original, CanonicalModule::cyclic(original.modulus(), original.modulus())) {
  const std::size_t k = hom_.module().rank();
  pairing_ = IntMatrix(k, original.rank());
  IntVector e(k, 0);
  for (std::size_t r = 0; r < k; ++r) {
    e[r] = 1;
    const auto chi = hom_.realize(e);
    e[r] = 0;
    for (std::size_t j = 0; j < original.rank(); ++j) pairing_(r, j) = chi.matrix().rows() ? chi.matrix()(0, j) : 0;
  }
}

Int DualModule::evaluate(std::span<const Int> chi, std::span<const Int> x) const {
  const auto map = character(chi);
  if (map.codomain().is_zero()) return 0;
  return map.apply(x)[0];
}

DualModule dual_module(const CanonicalModule& m) { return DualModule(m); }

ModuleMap dual_map(const DualModule& codomain_dual, const DualModule& domain_dual, const ModuleMap& f) {
  if (codomain_dual.original() != f.codomain() || domain_dual.original() != f.domain())
    throw InputError("dual_map: duals do not match the map");
  std::vector<IntVector> cols;
  const std::size_t k = codomain_dual.underlying().rank();
  IntVector e(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    e[c] = 1;
    cols.push_back(domain_dual.coordinates(compose(codomain_dual.character(e), f)));
    e[c] = 0;
  }
  return ModuleMap(codomain_dual.underlying(), domain_dual.underlying(),
                   IntMatrix::from_columns(cols, domain_dual.underlying().rank()));
}

ModuleMap dual_map(const ModuleMap& f) { return dual_map(DualModule(f.codomain()), DualModule(f.domain()), f); }

ModuleMap evaluation_map(const CanonicalModule& m) {
  const DualModule d(m);
  const DualModule dd(d.underlying());
  const auto circle = CanonicalModule::cyclic(m.modulus(), m.modulus());
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < m.rank(); ++j) {
    IntMatrix row(circle.rank(), d.underlying().rank());
    if (circle.rank())
      for (std::size_t r = 0; r < d.underlying().rank(); ++r) row(0, r) = d.pairing()(r, j);
    cols.push_back(dd.coordinates(ModuleMap(d.underlying(), circle, std::move(row))));
  }
  return ModuleMap(m, dd.underlying(), IntMatrix::from_columns(cols, dd.underlying().rank()));
}

// ---------------------------------------------------------------------------

namespace {

IntMatrix kernel_generators(const ModuleMap& f) {
  const auto& dom = f.domain().invariants();
  return reduce_rows(kernel_mod(f.matrix(), f.codomain().invariants(), f.domain().modulus()), dom);
}

}  // namespace

Submodule kernel(const ModuleMap& f) {
  auto s = Subquotient::subgroup(f.domain().invariants(), kernel_generators(f), f.domain().modulus());
  ModuleMap inc(s.module(), f.domain(), s.lift_matrix());
  return {std::move(s), std::move(inc)};
}

Submodule image(const ModuleMap& f) {
  auto s = Subquotient::subgroup(f.codomain().invariants(), f.matrix(), f.domain().modulus());
  ModuleMap inc(s.module(), f.codomain(), s.lift_matrix());
  return {std::move(s), std::move(inc)};
}

Quotient cokernel(const ModuleMap& f) {
  auto q = Subquotient::quotient(f.codomain().invariants(), f.matrix(), f.domain().modulus());
  std::vector<IntVector> cols;
  IntVector e(f.codomain().rank(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = 1;
    cols.push_back(q.project(e));
    e[i] = 0;
  }
  ModuleMap proj(f.codomain(), q.module(), IntMatrix::from_columns(cols, q.module().rank()));
  return {std::move(q), std::move(proj)};
}

bool is_injective(const ModuleMap& f) { return kernel_generators(f).is_zero(); }

bool is_surjective(const ModuleMap& f) {
  return Subquotient::quotient(f.codomain().invariants(), f.matrix(), f.domain().modulus()).module().is_zero();
}

bool is_isomorphism(const ModuleMap& f) {
  return f.domain().cardinality() == f.codomain().cardinality() && is_injective(f);
}

DirectSum direct_sum(const CanonicalModule& a, const CanonicalModule& b) {
  if (a.modulus() != b.modulus()) throw InputError("direct_sum: modulus mismatch");
  IntVector ambient = a.invariants();
  ambient.insert(ambient.end(), b.invariants().begin(), b.invariants().end());
  const std::size_t n = ambient.size();
  const auto q = Subquotient::quotient(ambient, IntMatrix(n, 0), a.modulus());
  DirectSum s;
  s.module = q.module();
  const CanonicalModule* parts[2] = {&a, &b};
  for (int p = 0; p < 2; ++p) {
    const std::size_t offset = p == 0 ? 0 : a.rank();
    std::vector<IntVector> inc;
    for (std::size_t i = 0; i < parts[p]->rank(); ++i) {
      IntVector e(n, 0);
      e[offset + i] = 1;
      inc.push_back(q.project(e));
    }
    s.inclusion[p] = ModuleMap(*parts[p], s.module, IntMatrix::from_columns(inc, s.module.rank()));
    std::vector<IntVector> pr;
    IntVector c(s.module.rank(), 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      c[k] = 1;
      const IntVector raw = q.lift(c);
      c[k] = 0;
      pr.emplace_back(raw.begin() + static_cast<std::ptrdiff_t>(offset),
                      raw.begin() + static_cast<std::ptrdiff_t>(offset + parts[p]->rank()));
    }
    s.projection[p] = ModuleMap(s.module, *parts[p], IntMatrix::from_columns(pr, parts[p]->rank()));
  }
  return s;
}

ModuleMap direct_sum_map(const DirectSum& from, const DirectSum& to, const ModuleMap& f, const ModuleMap& g) {
  return compose(to.inclusion[0], compose(f, from.projection[0])) +
         compose(to.inclusion[1], compose(g, from.projection[1]));
}

// ---------------------------------------------------------------------------

std::string describe(ExactnessDefect d) {
  switch (d) {
    case ExactnessDefect::none: return "exact";
    case ExactnessDefect::not_composable: return "maps are not composable";
    case ExactnessDefect::not_injective: return "f is not injective";
    case ExactnessDefect::not_surjective: return "g is not surjective";
    case ExactnessDefect::middle_not_exact: return "image of f differs from kernel of g";
  }
  return "unknown";
}

ExactnessDefect exactness_defect(const ModuleMap& f, const ModuleMap& g) {
  if (f.codomain() != g.domain() || f.domain().modulus() != g.codomain().modulus())
    return ExactnessDefect::not_composable;
  if (!is_injective(f)) return ExactnessDefect::not_injective;
  if (!is_surjective(g)) return ExactnessDefect::not_surjective;
  if (!compose(g, f).is_zero() ||
      f.domain().cardinality() * g.codomain().cardinality() != f.codomain().cardinality())
    return ExactnessDefect::middle_not_exact;
  return ExactnessDefect::none;
}

bool is_exact(const CanonicalModule& l, const CanonicalModule& m, const CanonicalModule& n, const ModuleMap& f,
              const ModuleMap& g) {
  if (l.modulus() != m.modulus() || m.modulus() != n.modulus()) throw InputError("is_exact: modulus mismatch");
  if (f.domain() != l || f.codomain() != m || g.domain() != m || g.codomain() != n)
    throw InputError("is_exact: maps do not match the modules");
  return exactness_defect(f, g) == ExactnessDefect::none;
}

ShortSequence::ShortSequence(ModuleMap f, ModuleMap g) : f_(std::move(f)), g_(std::move(g)) {
  const auto d = exactness_defect(f_, g_);
  if (d != ExactnessDefect::none) throw SequenceError(d, "not a short exact sequence: " + describe(d));
}

std::optional<ModuleMap> is_split(const ShortSequence& seq) {
  const HomModule sections(seq.N(), seq.M());
  const HomModule endo(seq.N(), seq.N());
  const ModuleMap post = hom_post(sections, endo, seq.g());
  const IntVector target = endo.coordinates(ModuleMap::identity(seq.N()));
  auto sol = solve_mod(post.matrix(), target, endo.module().invariants(), seq.modulus());
  if (!sol) return std::nullopt;
  ModuleMap s = sections.realize(sections.module().reduce(sol->particular));
  if (compose(seq.g(), s) != ModuleMap::identity(seq.N())) throw std::logic_error("is_split: section check failed");
  return s;
}

ShortSequence dual_sequence(const ShortSequence& seq) {
  const DualModule dl(seq.L()), dm(seq.M()), dn(seq.N());
  return ShortSequence(dual_map(dn, dm, seq.g()), dual_map(dm, dl, seq.f()));
}

ShortSequence sequence_sum(const ShortSequence& a, const ShortSequence& b) {
  const auto l = direct_sum(a.L(), b.L());
  const auto m = direct_sum(a.M(), b.M());
  const auto n = direct_sum(a.N(), b.N());
  return ShortSequence(direct_sum_map(l, m, a.f(), b.f()), direct_sum_map(m, n, a.g(), b.g()));
}

// ---------------------------------------------------------------------------

Int Rng::below(Int n) {
  if (n <= 1) return 0;
  const auto un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return static_cast<Int>(x % un);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CanonicalModule random_module(Int modulus, std::size_t max_generators, Rng& rng) {
  std::vector<Int> choices;
  for (Int d : divisors(modulus))
    if (d > 1) choices.push_back(d);
  if (choices.empty()) return CanonicalModule::zero(modulus);
  const auto k = static_cast<std::size_t>(rng.below(static_cast<Int>(max_generators) + 1));
  IntVector orders(k);
  for (auto& o : orders) o = choices[static_cast<std::size_t>(rng.below(static_cast<Int>(choices.size())))];
  return normalize_presentation(IntMatrix::diagonal(orders), modulus).module;
}

ModuleMap random_map(const CanonicalModule& domain, const CanonicalModule& codomain, Rng& rng) {
  IntMatrix a(codomain.rank(), domain.rank());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Int e = codomain.invariants()[i];
      const Int g = std::gcd(domain.invariants()[j], e);
      a(i, j) = rng.below(g) * (e / g);
    }
  return ModuleMap(domain, codomain, std::move(a));
}

ModuleMap random_automorphism(const CanonicalModule& m, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto f = random_map(m, m, rng);
    if (is_isomorphism(f)) return f;
  }
  return ModuleMap::identity(m);
}

ShortSequence random_ses(Int modulus, const SesBounds& bounds, std::uint64_t seed) {
  check_modulus(modulus);
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto m = random_module(modulus, bounds.max_generators, rng);
    const auto c = random_module(modulus, bounds.max_generators, rng);
    const auto q = random_map(m, c, rng);
    const auto im = image(q);
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < m.rank(); ++j) cols.push_back(im.structure.project(q.matrix().column(j)));
    ModuleMap g(m, im.structure.module(), IntMatrix::from_columns(cols, im.structure.module().rank()));
    auto ker = kernel(g);
    if (ker.structure.module().rank() > bounds.max_kernel_generators) continue;
    return ShortSequence(std::move(ker.inclusion), std::move(g));
  }
  const auto m = random_module(modulus, bounds.max_generators, rng);
  return ShortSequence(ModuleMap::zero(CanonicalModule::zero(modulus), m), ModuleMap::identity(m));
}

}  // namespace puritylab
