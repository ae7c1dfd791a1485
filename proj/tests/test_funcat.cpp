#include "doctest.h"
#include "oracles.hpp"

#include <array>

#include "puritylab/funcat.hpp"

using namespace puritylab;

namespace {

CanonicalModule cm(Int n, std::vector<Int> inv) { return CanonicalModule(n, std::move(inv)); }

// Families (α_d) with every α_d enumerated explicitly, kept when natural.
std::size_t brute_nat_count(const FunctorOnD& f, const FunctorOnD& h) {
  const auto& cat = f.category();
  std::vector<std::vector<IntMatrix>> options;
  for (std::size_t i = 0; i < cat.size(); ++i) options.push_back(oracle::enumerate_homs(f.value(i), h.value(i)));
  std::vector<Int> radix;
  for (const auto& o : options) radix.push_back(static_cast<Int>(o.size()));
  std::size_t count = 0;
  oracle::for_each_vector(radix, [&](const IntVector& pick) {
    NatTrans alpha;
    for (std::size_t i = 0; i < cat.size(); ++i)
      alpha.components.emplace_back(f.value(i), h.value(i), options[i][static_cast<std::size_t>(pick[i])]);
    if (is_natural(f, h, alpha)) ++count;
  });
  return count;
}

// |coend| from the block sizes and an explicit span of the relations.
Order brute_coend_size(const FunctorOnD& g, const FunctorOnD& f) {
  const auto& cat = g.category();
  IntVector ambient;
  std::vector<TensorProduct> blocks;
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    offsets.push_back(ambient.size());
    blocks.emplace_back(g.value(i), f.value(i));
    for (Int e : blocks.back().module().invariants()) ambient.push_back(e);
  }
  // Relations for every morphism r·g_{d,e}, not just generators, and every
  // pair of elements.
  std::vector<IntVector> rels;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = 0; j < cat.size(); ++j)
      for (Int r = 0; r < cat.hom_order(i, j); ++r)
        for (const auto& x : g.value(j).elements())
          for (const auto& y : f.value(i).elements()) {
            const auto s = cat.generator(i, j).scaled(r);
            const IntVector left = blocks[i].pure_tensor(g.act(i, j, s).apply(x), y);
            const IntVector right = blocks[j].pure_tensor(x, f.act(i, j, s).apply(y));
            IntVector rel(ambient.size(), 0);
            for (std::size_t t = 0; t < left.size(); ++t) rel[offsets[i] + t] += left[t];
            for (std::size_t t = 0; t < right.size(); ++t) rel[offsets[j] + t] -= right[t];
            for (std::size_t t = 0; t < rel.size(); ++t) rel[t] = oracle::md(rel[t], ambient[t]);
            rels.push_back(rel);
          }
  Order total = 1;
  for (Int a : ambient) total *= a;
  return total / oracle::span(rels, ambient).size();
}

const std::array<Int, 5> kModuli{4, 6, 8, 9, 12};

}  // namespace

TEST_CASE("index category: documented examples and hom orders") {
  const auto cat = build_index_category(4);
  CHECK(cat.objects() == std::vector<Int>{1, 2, 4});
  CHECK(cat.hom_order(cat.index_of(2), cat.index_of(4)) == 2);
  for (std::size_t i = 0; i < cat.size(); ++i) CHECK(cat.hom_order(0, i) == 1);
  // g_{2,4} ∘ g_{4,2} = 2 g_{4,4}.
  const auto i2 = cat.index_of(2), i4 = cat.index_of(4);
  CHECK(compose(cat.generator(i2, i4), cat.generator(i4, i2)) == cat.generator(i4, i4).scaled(2));
  CHECK(cat.composition(i4, i2, i4) == 2);
  CHECK_THROWS_AS(cat.index_of(3), InputError);

  for (Int n : {1, 4, 6, 8, 9, 12, 36}) {
    const auto c = build_index_category(n);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(c.generator(i, i) == ModuleMap::identity(c.object(i)));
      for (std::size_t j = 0; j < c.size(); ++j) {
        CHECK(oracle::enumerate_homs(c.object(i), c.object(j)).size() == static_cast<std::size_t>(c.hom_order(i, j)));
        for (std::size_t k = 0; k < c.size(); ++k)
          CHECK(compose(c.generator(j, k), c.generator(i, j)) == c.generator(i, k).scaled(c.composition(i, j, k)));
      }
    }
  }
}

TEST_CASE("functor validation rejects non-functors") {
  const auto cat = build_index_category(4);
  const auto f = representable_cov(cat, cat.index_of(4));
  std::vector<ModuleMap> actions;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = 0; j < cat.size(); ++j) actions.push_back(f.action(i, j));
  auto bad = actions;
  bad[1 * cat.size() + 2] = ModuleMap::zero(f.value(1), f.value(2));
  CHECK_THROWS_AS(FunctorOnD(cat, Variance::covariant, f.values(), bad), InputError);
  auto bad_id = actions;
  bad_id[2 * cat.size() + 2] = ModuleMap::identity(f.value(2)).scaled(3);
  CHECK_THROWS_AS(FunctorOnD(cat, Variance::covariant, f.values(), bad_id), InputError);
  CHECK_THROWS_AS(FunctorOnD(cat, Variance::contravariant, f.values(), actions), InputError);
  CHECK_NOTHROW(FunctorOnD(cat, Variance::covariant, f.values(), actions));
}

TEST_CASE("representables and restrictions") {
  const auto cat = build_index_category(4);
  const auto i2 = cat.index_of(2), i4 = cat.index_of(4);
  CHECK(restrict_module(cat, cm(4, {4})).value(i2) == cm(4, {2}));
  CHECK(representable_cov(cat, 0).is_zero());
  CHECK(representable_contra(cat, 0).is_zero());
  for (Int n : kModuli) {
    const auto c = build_index_category(n);
    for (std::size_t a = 0; a < c.size(); ++a) {
      const auto r = restrict_module(c, c.object(a));
      const auto rep = representable_contra(c, a);
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(r.value(i) == rep.value(i));
      const auto h = corepresented(c, c.object(a));
      const auto cov = representable_cov(c, a);
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(h.value(i) == cov.value(i));
    }
    Rng rng(static_cast<std::uint64_t>(n));
    const auto x = random_module(n, 2, rng), y = random_module(n, 2, rng);
    const auto sum = restrict_module(c, direct_sum(x, y).module);
    const auto parts = functor_sum(restrict_module(c, x), restrict_module(c, y));
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(sum.value(i) == parts.value(i));
  }
  (void)i4;
}

TEST_CASE("coend_tensor: documented examples") {
  const auto cat = build_index_category(4);
  const auto i2 = cat.index_of(2), i4 = cat.index_of(4);
  CHECK(coend_tensor(representable_contra(cat, i4), representable_cov(cat, i2)).module() == cm(4, {2}));
  CHECK(coend_tensor(representable_contra(cat, 0), representable_cov(cat, i2)).module().is_zero());
  CHECK(coend_tensor(representable_contra(cat, i4), representable_cov(cat, 0)).module().is_zero());
  const auto z2 = cm(4, {2});
  CHECK(coend_tensor(restrict_module(cat, z2), tensor_functor(cat, z2)).module() == tensor_modules(z2, z2).module());
  CHECK_THROWS_AS(coend_tensor(representable_cov(cat, i2), representable_cov(cat, i2)), InputError);
}

TEST_CASE("coend sizes agree with an explicit quotient by all relations") {
  Rng rng(41);
  for (Int n : {4, 6, 8, 9}) {
    const auto cat = build_index_category(n);
    for (int trial = 0; trial < 15; ++trial) {
      const auto g = random_contravariant(cat, 1, rng);
      const auto f = random_functor(cat, 1, rng);
      Order blocks = 1;
      for (std::size_t i = 0; i < cat.size(); ++i) blocks *= tensor_modules(g.value(i), f.value(i)).module().cardinality();
      if (blocks > 4096) continue;
      CHECK(coend_tensor(g, f).module().cardinality() == brute_coend_size(g, f));
    }
  }
}

TEST_CASE("tensyon: D(-, a) ⊗ F -> F(a) is an isomorphism") {
  for (Int n : kModuli) {
    const auto cat = build_index_category(n);
    Rng rng(mix_seed(7, static_cast<std::uint64_t>(n)));
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_functor(cat, 2, rng);
      for (std::size_t a = 0; a < cat.size(); ++a) CHECK(is_isomorphism(tensyon_map(f, a)));
    }
  }
}

TEST_CASE("kan extension restricts to F and is additive") {
  for (Int n : kModuli) {
    const auto cat = build_index_category(n);
    Rng rng(mix_seed(8, static_cast<std::uint64_t>(n)));
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_functor(cat, 2, rng);
      for (std::size_t a = 0; a < cat.size(); ++a) {
        CHECK(kan_eval(f, cat.object(a)) == f.value(a));
        CHECK(is_isomorphism(restriction_map(f, a)));
      }
      const auto c1 = random_module(n, 2, rng), c2 = random_module(n, 2, rng);
      const auto s = direct_sum(c1, c2);
      const auto k1 = kan_extension(f, c1), k2 = kan_extension(f, c2), ks = kan_extension(f, s.module);
      const auto in1 = kan_map(f, k1, ks, s.inclusion[0]);
      const auto in2 = kan_map(f, k2, ks, s.inclusion[1]);
      const auto pieces = direct_sum(k1.module(), k2.module());
      const auto joined = compose(in1, pieces.projection[0]) + compose(in2, pieces.projection[1]);
      CHECK(is_isomorphism(joined));
      // Functoriality of the extension.
      const auto c3 = random_module(n, 2, rng);
      const auto m1 = random_map(c1, c2, rng), m2 = random_map(c2, c3, rng);
      const auto k3 = kan_extension(f, c3);
      CHECK(kan_map(f, k1, k3, compose(m2, m1)) == compose(kan_map(f, k2, k3, m2), kan_map(f, k1, k2, m1)));
    }
  }
}

TEST_CASE("kan extension of a tensor functor is the tensor product") {
  Rng rng(9);
  for (Int n : kModuli) {
    const auto cat = build_index_category(n);
    for (int trial = 0; trial < 8; ++trial) {
      const auto y = random_module(n, 2, rng), c = random_module(n, 2, rng);
      CHECK(kan_eval(tensor_functor(cat, y), c) == tensor_modules(y, c).module());
      const auto d = cat.object(static_cast<std::size_t>(rng.below(static_cast<Int>(cat.size()))));
      CHECK(kan_eval(corepresented(cat, d), c) == hom_module(d, c).module());
    }
  }
  const auto cat = build_index_category(4);
  CHECK(tensor_functor(cat, cm(4, {4})).value(cat.index_of(2)) == cm(4, {2}));
  CHECK(tensor_functor(cat, CanonicalModule::zero(4)).is_zero());
  CHECK(tensor_functor(cat, cm(4, {2})).value(cat.index_of(4)) == cm(4, {2}));
}

TEST_CASE("fp functors: documented examples and the cokernel formula") {
  const auto cat = build_index_category(4);
  const auto z4 = cm(4, {4});
  CHECK(fp_functor_from_map(cat, ModuleMap::identity(z4)).is_zero());
  CHECK(eval_fp_functor(ModuleMap::identity(z4), cm(4, {2, 4})).is_zero());
  for (const auto& c : oracle::all_modules(4, 2)) CHECK(eval_fp_functor(ModuleMap::zero(z4, z4), c) == c);
  CHECK(eval_fp_functor(ModuleMap(z4, z4, {{2}}), z4) == cm(4, {2}));

  Rng rng(10);
  for (Int n : kModuli) {
    const auto c = build_index_category(n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_module(n, 2, rng), b = random_module(n, 2, rng);
      const auto u = random_map(b, a, rng);
      const auto f = fp_functor_from_map(c, u);
      const auto x = random_module(n, 2, rng);
      CHECK(kan_eval(f, x) == eval_fp_functor(u, x));
    }
  }
}

TEST_CASE("fp functor maps are functorial") {
  Rng rng(11);
  for (Int n : kModuli)
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_module(n, 2, rng), b = random_module(n, 2, rng);
      const auto u = random_map(b, a, rng);
      const auto x = random_module(n, 2, rng), y = random_module(n, 2, rng), z = random_module(n, 2, rng);
      const auto m1 = random_map(x, y, rng), m2 = random_map(y, z, rng);
      const FpFunctorValue fx(u, x), fy(u, y), fz(u, z);
      CHECK(fp_functor_map(fx, fz, compose(m2, m1)) == compose(fp_functor_map(fy, fz, m2), fp_functor_map(fx, fy, m1)));
      CHECK(fp_functor_map(fx, fx, ModuleMap::identity(x)) == ModuleMap::identity(fx.module()));
    }
}

TEST_CASE("dual functors") {
  Rng rng(12);
  for (Int n : kModuli) {
    const auto cat = build_index_category(n);
    CHECK(dual_functor(representable_cov(cat, 0)).is_zero());
    for (int trial = 0; trial < 8; ++trial) {
      const auto f = random_functor(cat, 2, rng);
      const auto d = dual_functor(f);
      CHECK(d.variance() == Variance::contravariant);
      const auto dd = dual_functor(d);
      for (std::size_t i = 0; i < cat.size(); ++i) {
        CHECK(d.value(i).cardinality() == f.value(i).cardinality());
        // The evaluation maps assemble into a natural isomorphism F -> F**.
        CHECK(is_isomorphism(evaluation_map(f.value(i))));
      }
      NatTrans ev;
      for (std::size_t i = 0; i < cat.size(); ++i) ev.components.push_back(evaluation_map(f.value(i)));
      CHECK(is_natural(f, dd, ev));
    }
  }
}

TEST_CASE("natural transformations: Yoneda and enumeration") {
  const auto cat = build_index_category(4);
  const auto i2 = cat.index_of(2);
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = random_functor(cat, 2, rng);
    const auto nat = nat_transformations(representable_cov(cat, i2), h);
    CHECK(nat.module() == h.value(i2));
    CHECK(nat.module().cardinality() == brute_nat_count(representable_cov(cat, i2), h));
  }
  for (Int n : {4, 6, 8}) {
    const auto c = build_index_category(n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_functor(c, 1, rng), h = random_functor(c, 1, rng);
      const auto nat = nat_transformations(f, h);
      CHECK(nat.module().cardinality() == brute_nat_count(f, h));
      for (const auto& e : nat.module().elements()) CHECK(is_natural(f, h, nat.realize(e)));
      const auto g = random_contravariant(c, 1, rng), g2 = random_contravariant(c, 1, rng);
      CHECK(nat_transformations(g, g2).module().cardinality() == brute_nat_count(g, g2));
    }
  }
  const auto f = random_functor(cat, 2, rng);
  CHECK(nat_transformations(f, representable_cov(cat, 0)).module().is_zero());
  const auto self = nat_transformations(f, f);
  bool has_identity = false;
  for (const auto& e : self.module().elements()) {
    const auto alpha = self.realize(e);
    bool id = true;
    for (std::size_t i = 0; i < cat.size(); ++i) id = id && alpha.components[i] == ModuleMap::identity(f.value(i));
    has_identity = has_identity || id;
  }
  CHECK(has_identity);
}

TEST_CASE("hom-tensor duality") {
  const auto cat = build_index_category(4);
  CHECK(hom_tensor_duality_check(representable_contra(cat, cat.index_of(4)), representable_cov(cat, cat.index_of(2))));
  CHECK(hom_tensor_duality_check(representable_contra(cat, cat.index_of(4)), representable_cov(cat, 0)));
  for (Int n : {4, 9, 12}) {
    const auto c = build_index_category(n);
    Rng rng(mix_seed(14, static_cast<std::uint64_t>(n)));
    for (int trial = 0; trial < 10; ++trial)
      CHECK(hom_tensor_duality_check(random_contravariant(c, 2, rng), random_functor(c, 2, rng)));
  }
}

TEST_CASE("dual of hom") {
  const auto cat = build_index_category(4);
  CHECK(dual_of_hom_check(cat, CanonicalModule::zero(4)));
  CHECK(dual_of_hom_check(cat, cm(4, {4})));
  CHECK(hom_module(cm(4, {2}), cm(4, {4})).module().cardinality() ==
        tensor_modules(dual_module(cm(4, {4})).underlying(), cm(4, {2})).module().cardinality());
  for (Int n : {4, 6, 9, 12}) {
    const auto c = build_index_category(n);
    Rng rng(mix_seed(15, static_cast<std::uint64_t>(n)));
    for (int trial = 0; trial < 10; ++trial) CHECK(dual_of_hom_check(c, random_module(n, 3, rng)));
  }
}

TEST_CASE("tensor functors are fully faithful on modules") {
  for (Int n : {4, 6, 8}) {
    const auto cat = build_index_category(n);
    const auto mods = oracle::all_modules(n, 2);
    for (const auto& y : mods)
      for (const auto& y2 : mods) {
        const auto ty = tensor_functor(cat, y), ty2 = tensor_functor(cat, y2);
        CHECK(nat_transformations(ty, ty2).module().cardinality() == hom_module(y, y2).module().cardinality());
        bool same = true;
        for (std::size_t i = 0; i < cat.size(); ++i) same = same && ty.value(i) == ty2.value(i);
        CHECK(same == (y == y2));
      }
  }
}

TEST_CASE("degenerate category at N = 1") {
  const auto cat = build_index_category(1);
  CHECK(cat.size() == 1);
  const auto z = CanonicalModule::zero(1);
  CHECK(tensor_functor(cat, z).is_zero());
  CHECK(hom_tensor_duality_check(restrict_module(cat, z), tensor_functor(cat, z)));
  CHECK(dual_of_hom_check(cat, z));
  CHECK(is_isomorphism(tensyon_map(tensor_functor(cat, z), 0)));
}
