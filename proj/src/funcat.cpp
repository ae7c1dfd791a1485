#include "puritylab/funcat.hpp"

#include <algorithm>
#include <numeric>

namespace puritylab {

IndexCategory::IndexCategory(Int modulus) : modulus_(modulus) {
  check_modulus(modulus);
  objects_ = divisors(modulus);
  for (Int d : objects_) modules_.push_back(CanonicalModule::cyclic(modulus, d));
  const std::size_t n = size();
  generators_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Int e = objects_[j];
      const Int g = hom_order(i, j);
      IntMatrix m(modules_[j].rank(), modules_[i].rank());
      if (!m.empty()) m(0, 0) = e / g;
      generators_.emplace_back(modules_[i], modules_[j], std::move(m));
    }
}

IndexCategory build_index_category(Int modulus) { return IndexCategory(modulus); }

std::size_t IndexCategory::index_of(Int d) const {
  const auto it = std::find(objects_.begin(), objects_.end(), d);
  if (it == objects_.end()) throw InputError("index category: " + std::to_string(d) + " does not divide N");
  return static_cast<std::size_t>(it - objects_.begin());
}

Int IndexCategory::hom_order(std::size_t i, std::size_t j) const { return std::gcd(objects_[i], objects_[j]); }

Int IndexCategory::composition(std::size_t i, std::size_t j, std::size_t k) const {
  const Int g = hom_order(i, k);
  if (g == 1) return 0;
  const Int f = objects_[k];
  const Int image = mod((objects_[j] / hom_order(i, j)) * (f / hom_order(j, k)), f);
  return mod(image / (f / g), g);
}

Int IndexCategory::coefficient(std::size_t i, std::size_t j, const ModuleMap& s) const {
  if (s.domain() != modules_[i] || s.codomain() != modules_[j]) throw InputError("index category: morphism has the wrong type");
  const Int g = hom_order(i, j);
  if (g == 1) return 0;
  const Int step = objects_[j] / g;
  return mod(s.matrix()(0, 0) / step, g);
}

// ---------------------------------------------------------------------------

namespace {

std::string pair_name(const IndexCategory& cat, std::size_t i, std::size_t j) {
  return "(" + std::to_string(cat.objects()[i]) + ", " + std::to_string(cat.objects()[j]) + ")";
}

}  // namespace

FunctorOnD::FunctorOnD(IndexCategory cat, Variance variance, std::vector<CanonicalModule> values,
                       std::vector<ModuleMap> actions)
    : cat_(std::move(cat)), variance_(variance), values_(std::move(values)), actions_(std::move(actions)) {
  const std::size_t n = cat_.size();
  if (values_.size() != n || actions_.size() != n * n) throw InputError("functor: wrong number of values or actions");
  for (std::size_t i = 0; i < n; ++i) {
    const Int d = cat_.objects()[i];
    if (values_[i].modulus() != cat_.modulus()) throw InputError("functor: value over the wrong modulus");
    for (Int e : values_[i].invariants())
      if (d % e != 0)
        throw InputError("functor: value at " + std::to_string(d) + " is not annihilated by " + std::to_string(d));
  }
  const bool cov = variance_ == Variance::covariant;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ModuleMap& a = action(i, j);
      const auto& src = cov ? values_[i] : values_[j];
      const auto& dst = cov ? values_[j] : values_[i];
      if (a.domain() != src || a.codomain() != dst) throw InputError("functor: action " + pair_name(cat_, i, j) + " has the wrong type");
      if (!a.scaled(cat_.hom_order(i, j)).is_zero())
        throw InputError("functor: action " + pair_name(cat_, i, j) + " is not killed by the order of the morphism");
    }
  for (std::size_t i = 0; i < n; ++i)
    if (action(i, i) != ModuleMap::identity(values_[i])) throw InputError("functor: identity is not preserved");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const ModuleMap lhs = cov ? compose(action(j, k), action(i, j)) : compose(action(i, j), action(j, k));
        if (lhs != action(i, k).scaled(cat_.composition(i, j, k)))
          throw InputError("functor: composition through " + std::to_string(cat_.objects()[j]) + " fails for " +
                           pair_name(cat_, i, k));
      }
}

ModuleMap FunctorOnD::act(std::size_t i, std::size_t j, const ModuleMap& s) const {
  return action(i, j).scaled(cat_.coefficient(i, j, s));
}

bool FunctorOnD::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const CanonicalModule& m) { return m.is_zero(); });
}

// ---------------------------------------------------------------------------
// Constructions.

namespace {

template <class Value, class Action>
FunctorOnD build(const IndexCategory& cat, Variance v, Value value, Action action) {
  std::vector<CanonicalModule> values;
  for (std::size_t i = 0; i < cat.size(); ++i) values.push_back(value(i));
  std::vector<ModuleMap> actions;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = 0; j < cat.size(); ++j) actions.push_back(action(i, j, values));
  return FunctorOnD(cat, v, std::move(values), std::move(actions));
}

ModuleMap scalar_map(const CanonicalModule& from, const CanonicalModule& to, Int c) {
  IntMatrix m(to.rank(), from.rank());
  if (!m.empty()) m(0, 0) = c;
  return ModuleMap(from, to, std::move(m));
}

}  // namespace

FunctorOnD representable_cov(const IndexCategory& cat, std::size_t a) {
  const Int n = cat.modulus();
  return build(
      cat, Variance::covariant, [&](std::size_t i) { return CanonicalModule::cyclic(n, cat.hom_order(a, i)); },
      [&](std::size_t i, std::size_t j, const std::vector<CanonicalModule>& v) {
        return scalar_map(v[i], v[j], cat.composition(a, i, j));
      });
}

FunctorOnD representable_contra(const IndexCategory& cat, std::size_t c) {
  const Int n = cat.modulus();
  return build(
      cat, Variance::contravariant, [&](std::size_t i) { return CanonicalModule::cyclic(n, cat.hom_order(i, c)); },
      [&](std::size_t i, std::size_t j, const std::vector<CanonicalModule>& v) {
        return scalar_map(v[j], v[i], cat.composition(i, j, c));
      });
}

FunctorOnD restrict_module(const IndexCategory& cat, const CanonicalModule& x) {
  std::vector<HomModule> homs;
  for (std::size_t i = 0; i < cat.size(); ++i) homs.emplace_back(cat.object(i), x);
  return build(
      cat, Variance::contravariant, [&](std::size_t i) { return homs[i].module(); },
      [&](std::size_t i, std::size_t j, const std::vector<CanonicalModule>&) {
        return hom_pre(homs[j], homs[i], cat.generator(i, j));
      });
}

FunctorOnD corepresented(const IndexCategory& cat, const CanonicalModule& x) {
  std::vector<HomModule> homs;
  for (std::size_t i = 0; i < cat.size(); ++i) homs.emplace_back(x, cat.object(i));
  return build(
      cat, Variance::covariant, [&](std::size_t i) { return homs[i].module(); },
      [&](std::size_t i, std::size_t j, const std::vector<CanonicalModule>&) {
        return hom_post(homs[i], homs[j], cat.generator(i, j));
      });
}

FunctorOnD tensor_functor(const IndexCategory& cat, const CanonicalModule& y) {
  std::vector<TensorProduct> ts;
  for (std::size_t i = 0; i < cat.size(); ++i) ts.emplace_back(y, cat.object(i));
  return build(
      cat, Variance::covariant, [&](std::size_t i) { return ts[i].module(); },
      [&](std::size_t i, std::size_t j, const std::vector<CanonicalModule>&) {
        return tensor_map(ts[i], ts[j], cat.generator(i, j));
      });
}

FunctorOnD dual_functor(const FunctorOnD& f) {
  const auto& cat = f.category();
  std::vector<DualModule> duals;
  for (std::size_t i = 0; i < cat.size(); ++i) duals.emplace_back(f.value(i));
  const Variance v = f.variance() == Variance::covariant ? Variance::contravariant : Variance::covariant;
  const bool cov = f.variance() == Variance::covariant;
  return build(
      cat, v, [&](std::size_t i) { return duals[i].underlying(); },
      [&](std::size_t i, std::size_t j, const std::vector<CanonicalModule>&) {
        // f.action(i, j) runs value(i) -> value(j) when f is covariant.
        return cov ? dual_map(duals[j], duals[i], f.action(i, j)) : dual_map(duals[i], duals[j], f.action(i, j));
      });
}

FunctorOnD functor_sum(const FunctorOnD& a, const FunctorOnD& b) {
  if (!(a.category() == b.category()) || a.variance() != b.variance())
    throw InputError("functor sum: functors live on different categories or have different variance");
  const auto& cat = a.category();
  std::vector<DirectSum> sums;
  for (std::size_t i = 0; i < cat.size(); ++i) sums.push_back(direct_sum(a.value(i), b.value(i)));
  const bool cov = a.variance() == Variance::covariant;
  return build(
      cat, a.variance(), [&](std::size_t i) { return sums[i].module; },
      [&](std::size_t i, std::size_t j, const std::vector<CanonicalModule>&) {
        const auto& from = cov ? sums[i] : sums[j];
        const auto& to = cov ? sums[j] : sums[i];
        return direct_sum_map(from, to, a.action(i, j), b.action(i, j));
      });
}

bool is_natural(const FunctorOnD& f, const FunctorOnD& h, const NatTrans& alpha) {
  const auto& cat = f.category();
  const bool cov = f.variance() == Variance::covariant;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = 0; j < cat.size(); ++j) {
      const auto& src = alpha.components[cov ? i : j];
      const auto& dst = alpha.components[cov ? j : i];
      if (compose(h.action(i, j), src) != compose(dst, f.action(i, j))) return false;
    }
  return true;
}

ModuleMap induced_on_cokernels(const Quotient& from, const Quotient& to, const ModuleMap& m) {
  const CanonicalModule& src = from.projection.codomain();
  const CanonicalModule& dst = to.projection.codomain();
  IntMatrix out(dst.rank(), src.rank());
  const IntMatrix& lift = from.structure.lift_matrix();
  for (std::size_t c = 0; c < src.rank(); ++c) {
    const IntVector y = to.projection.apply(m.apply(lift.column(c)));
    for (std::size_t r = 0; r < y.size(); ++r) out(r, c) = y[r];
  }
  return ModuleMap(src, dst, std::move(out));
}

FunctorOnD functor_cokernel(const FunctorOnD& f, const FunctorOnD& h, const NatTrans& alpha) {
  if (!is_natural(f, h, alpha)) throw InputError("functor cokernel: the transformation is not natural");
  const auto& cat = f.category();
  std::vector<Quotient> qs;
  for (std::size_t i = 0; i < cat.size(); ++i) qs.push_back(cokernel(alpha.components[i]));
  const bool cov = f.variance() == Variance::covariant;
  return build(
      cat, f.variance(), [&](std::size_t i) { return qs[i].projection.codomain(); },
      [&](std::size_t i, std::size_t j, const std::vector<CanonicalModule>&) {
        return induced_on_cokernels(cov ? qs[i] : qs[j], cov ? qs[j] : qs[i], h.action(i, j));
      });
}

FunctorOnD fp_functor_from_map(const IndexCategory& cat, const ModuleMap& u) {
  const auto& b = u.domain();
  const auto& a = u.codomain();
  NatTrans alpha;
  for (std::size_t i = 0; i < cat.size(); ++i)
    alpha.components.push_back(hom_pre(HomModule(a, cat.object(i)), HomModule(b, cat.object(i)), u));
  return functor_cokernel(corepresented(cat, a), corepresented(cat, b), alpha);
}

FpFunctorValue::FpFunctorValue(const ModuleMap& u, const CanonicalModule& x)
    : hom_a_(u.codomain(), x), hom_b_(u.domain(), x), coker_(puritylab::cokernel(hom_pre(hom_a_, hom_b_, u))) {}

CanonicalModule eval_fp_functor(const ModuleMap& u, const CanonicalModule& x) { return FpFunctorValue(u, x).module(); }

ModuleMap fp_functor_map(const FpFunctorValue& from, const FpFunctorValue& to, const ModuleMap& m) {
  return induced_on_cokernels(from.cokernel(), to.cokernel(), hom_post(from.hom_b(), to.hom_b(), m));
}

// ---------------------------------------------------------------------------
// Coends.

namespace {

IntVector unit(std::size_t n, std::size_t k) {
  IntVector e(n, 0);
  e[k] = 1;
  return e;
}

}  // namespace

CoendResult coend_tensor(const FunctorOnD& g, const FunctorOnD& f) {
  if (!(g.category() == f.category())) throw InputError("coend: functors live on different index categories");
  if (g.variance() != Variance::contravariant || f.variance() != Variance::covariant)
    throw InputError("coend: expects a contravariant and a covariant functor");
  const auto& cat = g.category();
  CoendResult out;
  IntVector ambient;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    out.offsets.push_back(ambient.size());
    out.blocks.emplace_back(g.value(i), f.value(i));
    const auto& inv = out.blocks.back().module().invariants();
    ambient.insert(ambient.end(), inv.begin(), inv.end());
  }
  // (G(s) x) ⊗ y ~ x ⊗ (F(s) y) for s = g_{d,e}, x in G(e), y in F(d).
  std::vector<IntVector> relations;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = 0; j < cat.size(); ++j) {
      if (i == j || cat.hom_order(i, j) == 1) continue;
      const auto& gs = g.action(i, j);
      const auto& fs = f.action(i, j);
      for (std::size_t a = 0; a < g.value(j).rank(); ++a)
        for (std::size_t b = 0; b < f.value(i).rank(); ++b) {
          const IntVector x = unit(g.value(j).rank(), a), y = unit(f.value(i).rank(), b);
          const IntVector left = out.blocks[i].pure_tensor(gs.apply(x), y);
          const IntVector right = out.blocks[j].pure_tensor(x, fs.apply(y));
          IntVector rel(ambient.size(), 0);
          for (std::size_t t = 0; t < left.size(); ++t) rel[out.offsets[i] + t] += left[t];
          for (std::size_t t = 0; t < right.size(); ++t) rel[out.offsets[j] + t] -= right[t];
          bool nonzero = false;
          for (std::size_t t = 0; t < rel.size(); ++t) {
            rel[t] = mod(rel[t], ambient[t]);
            nonzero = nonzero || rel[t] != 0;
          }
          if (nonzero) relations.push_back(std::move(rel));
        }
    }
  out.group = Subquotient::quotient(ambient, IntMatrix::from_columns(relations, ambient.size()), cat.modulus());
  return out;
}

ModuleMap CoendResult::injection(std::size_t i) const {
  const auto& block = blocks[i].module();
  const std::size_t total = group.ambient().size();
  IntMatrix out(module().rank(), block.rank());
  for (std::size_t c = 0; c < block.rank(); ++c) {
    const IntVector y = group.project(unit(total, offsets[i] + c));
    for (std::size_t r = 0; r < y.size(); ++r) out(r, c) = y[r];
  }
  return ModuleMap(block, module(), std::move(out));
}

ModuleMap coend_out(const CoendResult& c, const CanonicalModule& target,
                    const std::function<IntVector(std::size_t, std::size_t, std::size_t)>& value) {
  // Images of the canonical generators of each block.
  std::vector<std::vector<IntVector>> block_images(c.blocks.size());
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    const auto& t = c.blocks[i];
    const std::size_t nb = t.right().rank();
    std::vector<IntVector> raw_images(t.raw_size());
    for (std::size_t a = 0; a < t.left().rank(); ++a)
      for (std::size_t b = 0; b < nb; ++b) raw_images[t.raw_index(a, b)] = value(i, a, b);
    for (std::size_t k = 0; k < t.module().rank(); ++k) {
      const IntVector raw = t.lift_raw(unit(t.module().rank(), k));
      IntVector img(target.rank(), 0);
      for (std::size_t r = 0; r < raw.size(); ++r)
        for (std::size_t q = 0; q < img.size(); ++q) img[q] = mod(img[q] + raw[r] * raw_images[r][q], target.modulus());
      block_images[i].push_back(target.reduce(img));
    }
  }
  IntMatrix out(target.rank(), c.module().rank());
  for (std::size_t g = 0; g < c.module().rank(); ++g) {
    const IntVector x = c.group.lift(unit(c.module().rank(), g));
    IntVector img(target.rank(), 0);
    for (std::size_t i = 0; i < c.blocks.size(); ++i)
      for (std::size_t k = 0; k < c.blocks[i].module().rank(); ++k) {
        const Int coeff = x[c.offsets[i] + k];
        for (std::size_t q = 0; q < img.size(); ++q) img[q] = mod(img[q] + coeff * block_images[i][k][q], target.modulus());
      }
    img = target.reduce(img);
    for (std::size_t q = 0; q < img.size(); ++q) out(q, g) = img[q];
  }
  return ModuleMap(c.module(), target, std::move(out));
}

namespace {

IntVector embed(const CoendResult& c, std::size_t i, const IntVector& block_element) {
  IntVector x(c.group.ambient().size(), 0);
  for (std::size_t t = 0; t < block_element.size(); ++t) x[c.offsets[i] + t] = block_element[t];
  return c.group.project(x);
}

}  // namespace

ModuleMap coend_map_left(const CoendResult& from, const CoendResult& to, const NatTrans& alpha) {
  return coend_out(from, to.module(), [&](std::size_t i, std::size_t a, std::size_t b) {
    const auto& gi = from.blocks[i].left();
    const auto& fi = from.blocks[i].right();
    const IntVector x = alpha.components[i].apply(unit(gi.rank(), a));
    return embed(to, i, to.blocks[i].pure_tensor(x, unit(fi.rank(), b)));
  });
}

ModuleMap coend_map_right(const CoendResult& from, const CoendResult& to, const NatTrans& beta) {
  return coend_out(from, to.module(), [&](std::size_t i, std::size_t a, std::size_t b) {
    const auto& gi = from.blocks[i].left();
    const auto& fi = from.blocks[i].right();
    const IntVector y = beta.components[i].apply(unit(fi.rank(), b));
    return embed(to, i, to.blocks[i].pure_tensor(unit(gi.rank(), a), y));
  });
}

ModuleMap tensyon_map(const FunctorOnD& f, std::size_t a) {
  const auto& cat = f.category();
  const auto c = coend_tensor(representable_contra(cat, a), f);
  // The generator of D(d_i, d_a) is g_{i,a}.
  return coend_out(c, f.value(a), [&](std::size_t i, std::size_t, std::size_t b) {
    return f.action(i, a).apply(unit(f.value(i).rank(), b));
  });
}

CoendResult kan_extension(const FunctorOnD& f, const CanonicalModule& c) {
  return coend_tensor(restrict_module(f.category(), c), f);
}

CanonicalModule kan_eval(const FunctorOnD& f, const CanonicalModule& c) { return kan_extension(f, c).module(); }

ModuleMap kan_map(const FunctorOnD& f, const CoendResult& from, const CoendResult& to, const ModuleMap& m) {
  const auto& cat = f.category();
  NatTrans alpha;
  for (std::size_t i = 0; i < cat.size(); ++i)
    alpha.components.push_back(hom_post(HomModule(cat.object(i), m.domain()), HomModule(cat.object(i), m.codomain()), m));
  return coend_map_left(from, to, alpha);
}

ModuleMap restriction_map(const FunctorOnD& f, std::size_t a) {
  const auto& cat = f.category();
  const auto c = kan_extension(f, cat.object(a));
  std::vector<std::vector<ModuleMap>> gens;
  for (std::size_t i = 0; i < cat.size(); ++i) gens.push_back(HomModule(cat.object(i), cat.object(a)).generators());
  return coend_out(c, f.value(a), [&](std::size_t i, std::size_t k, std::size_t b) {
    return f.act(i, a, gens[i][k]).apply(unit(f.value(i).rank(), b));
  });
}

// ---------------------------------------------------------------------------
// Natural transformations.

NatModule::NatModule(const FunctorOnD& f, const FunctorOnD& h) {
  if (!(f.category() == h.category()) || f.variance() != h.variance())
    throw InputError("natural transformations: functors have different variance or categories");
  const auto& cat = f.category();
  const bool cov = f.variance() == Variance::covariant;
  IntVector ambient;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    offsets_.push_back(ambient.size());
    homs_.emplace_back(f.value(i), h.value(i));
    const auto& inv = homs_.back().module().invariants();
    ambient.insert(ambient.end(), inv.begin(), inv.end());
  }
  // One block of equations per generator morphism: H(s) α_src = α_dst F(s).
  std::vector<IntVector> rows;
  IntVector row_moduli;
  std::vector<std::vector<ModuleMap>> gens;
  for (const auto& hm : homs_) gens.push_back(hm.generators());
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = 0; j < cat.size(); ++j) {
      if (i == j || cat.hom_order(i, j) == 1) continue;
      const std::size_t src = cov ? i : j, dst = cov ? j : i;
      const HomModule target(f.value(src), h.value(dst));
      if (target.module().is_zero()) continue;
      const std::size_t base = rows.size();
      for (Int e : target.module().invariants()) {
        rows.emplace_back(ambient.size(), 0);
        row_moduli.push_back(e);
      }
      for (std::size_t k = 0; k < gens[src].size(); ++k) {
        const IntVector v = target.coordinates(compose(h.action(i, j), gens[src][k]));
        for (std::size_t r = 0; r < v.size(); ++r) rows[base + r][offsets_[src] + k] += v[r];
      }
      for (std::size_t k = 0; k < gens[dst].size(); ++k) {
        const IntVector v = target.coordinates(compose(gens[dst][k], f.action(i, j)));
        for (std::size_t r = 0; r < v.size(); ++r) rows[base + r][offsets_[dst] + k] -= v[r];
      }
    }
  const Int n = cat.modulus();
  IntMatrix system = reduce_mod(IntMatrix::from_rows(rows, ambient.size()), n);
  IntMatrix ker = kernel_mod(system, row_moduli, n);
  for (std::size_t r = 0; r < ker.rows(); ++r)
    for (std::size_t c = 0; c < ker.cols(); ++c) ker(r, c) = mod(ker(r, c), ambient[r]);
  space_ = Subquotient::subgroup(std::move(ambient), std::move(ker), n);
}

NatTrans NatModule::realize(std::span<const Int> element) const {
  const IntVector x = space_.lift(element);
  NatTrans out;
  for (std::size_t i = 0; i < homs_.size(); ++i) {
    const std::size_t r = homs_[i].module().rank();
    out.components.push_back(homs_[i].realize(std::span<const Int>(x).subspan(offsets_[i], r)));
  }
  return out;
}

NatModule nat_transformations(const FunctorOnD& f, const FunctorOnD& h) { return NatModule(f, h); }

bool hom_tensor_duality_check(const FunctorOnD& g, const FunctorOnD& f) {
  const auto& cat = g.category();
  const auto c = coend_tensor(g, f);
  const DualModule target(c.module());
  const auto circle = CanonicalModule::cyclic(cat.modulus(), cat.modulus());
  std::vector<DualModule> duals;
  for (std::size_t i = 0; i < cat.size(); ++i) duals.emplace_back(g.value(i));
  const NatModule nat(f, dual_functor(g));
  // α -> (x ⊗ y -> <α(y), x>).
  std::vector<IntVector> cols;
  for (std::size_t k = 0; k < nat.module().rank(); ++k) {
    const NatTrans alpha = nat.realize(unit(nat.module().rank(), k));
    const ModuleMap chi = coend_out(c, circle, [&](std::size_t i, std::size_t a, std::size_t b) {
      const IntVector phi = alpha.components[i].apply(unit(f.value(i).rank(), b));
      return IntVector(circle.rank(), duals[i].evaluate(phi, unit(g.value(i).rank(), a)));
    });
    cols.push_back(target.coordinates(chi));
  }
  const ModuleMap map(nat.module(), target.underlying(), IntMatrix::from_columns(cols, target.underlying().rank()));
  return is_isomorphism(map);
}

bool dual_of_hom_check(const IndexCategory& cat, const CanonicalModule& x) {
  if (x.modulus() != cat.modulus()) throw InputError("dual of hom: modulus mismatch");
  const DualModule xd(x);
  const auto circle = CanonicalModule::cyclic(cat.modulus(), cat.modulus());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const HomModule hom(cat.object(i), x);
    const DualModule hd(hom.module());
    const TensorProduct t(xd.underlying(), cat.object(i));
    const auto hom_gens = hom.generators();
    // χ ⊗ r -> (s -> χ(s(r))), recorded as a row of values on Hom generators.
    std::vector<IntVector> raw_rows(t.raw_size());
    for (std::size_t a = 0; a < xd.underlying().rank(); ++a)
      for (std::size_t b = 0; b < cat.object(i).rank(); ++b) {
        IntVector row;
        for (const auto& s : hom_gens) row.push_back(xd.evaluate(unit(xd.underlying().rank(), a), s.apply(unit(1, b))));
        raw_rows[t.raw_index(a, b)] = row;
      }
    std::vector<IntVector> cols;
    for (std::size_t k = 0; k < t.module().rank(); ++k) {
      const IntVector raw = t.lift_raw(unit(t.module().rank(), k));
      IntMatrix row(circle.rank(), hom.module().rank());
      for (std::size_t r = 0; r < raw.size(); ++r)
        for (std::size_t q = 0; q < hom_gens.size(); ++q)
          if (circle.rank()) row(0, q) = mod(row(0, q) + raw[r] * raw_rows[r][q], cat.modulus());
      cols.push_back(hd.coordinates(ModuleMap(hom.module(), circle, std::move(row))));
    }
    const ModuleMap map(t.module(), hd.underlying(), IntMatrix::from_columns(cols, hd.underlying().rank()));
    if (!is_isomorphism(map)) return false;
  }
  return true;
}

FunctorOnD random_functor(const IndexCategory& cat, std::size_t max_generators, Rng& rng) {
  const auto a = random_module(cat.modulus(), max_generators, rng);
  const auto b = random_module(cat.modulus(), max_generators, rng);
  return fp_functor_from_map(cat, random_map(b, a, rng));
}

FunctorOnD random_contravariant(const IndexCategory& cat, std::size_t max_generators, Rng& rng) {
  if (rng.coin()) return restrict_module(cat, random_module(cat.modulus(), max_generators, rng));
  return dual_functor(random_functor(cat, max_generators, rng));
}

}  // namespace puritylab
