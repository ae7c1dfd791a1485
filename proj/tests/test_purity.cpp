#include "doctest.h"
#include "oracles.hpp"

#include "puritylab/funcat.hpp"
#include "puritylab/purity.hpp"

using namespace puritylab;

namespace {

CanonicalModule cm(Int n, std::vector<Int> inv) { return CanonicalModule(n, std::move(inv)); }

ShortSequence z4_nonpure() {
  const auto z2 = cm(4, {2}), z4 = cm(4, {4});
  return ShortSequence(ModuleMap(z2, z4, IntMatrix::from_rows({{2}}, 1)), ModuleMap(z4, z2, IntMatrix::from_rows({{1}}, 1)));
}

// 0 -> L -> L ⊕ N -> N -> 0.
ShortSequence trivial_split(const CanonicalModule& l, const CanonicalModule& n) {
  const auto s = direct_sum(l, n);
  return ShortSequence(s.inclusion[0], s.projection[1]);
}

// A section of g found by enumerating every map N -> M.
bool brute_split(const ShortSequence& seq) {
  const auto id = ModuleMap::identity(seq.N());
  for (const auto& m : oracle::enumerate_homs(seq.N(), seq.M()))
    if (compose(seq.g(), ModuleMap(seq.N(), seq.M(), m)) == id) return true;
  return false;
}

IntVector scaled(const CanonicalModule& m, const IntVector& x, Int d) {
  IntVector y(x);
  for (auto& v : y) v *= d;
  return m.reduce(y);
}

// Every element of N killed by d has a preimage in M killed by d.
bool brute_lifting(const ShortSequence& seq) {
  const Int n = seq.modulus();
  const auto zero_m = seq.M().zero_element();
  const auto zero_n = seq.N().zero_element();
  for (Int d : divisors(n)) {
    std::set<IntVector> reached;
    for (const auto& m : seq.M().elements())
      if (scaled(seq.M(), m, d) == zero_m) reached.insert(seq.g().apply(m));
    for (const auto& y : seq.N().elements())
      if (scaled(seq.N(), y, d) == zero_n && !reached.count(y)) return false;
  }
  return true;
}

Order gcd_product(Int d, const CanonicalModule& m) {
  Order out = 1;
  for (Int e : m.invariants()) out *= std::gcd(d, e);
  return out;
}

// By right exactness, Z/d ⊗ f is injective iff the sizes multiply.
bool brute_tensor(const ShortSequence& seq) {
  for (Int d : divisors(seq.modulus()))
    if (gcd_product(d, seq.L()) * gcd_product(d, seq.N()) != gcd_product(d, seq.M())) return false;
  return true;
}

std::array<bool, kCheckerCount> verdicts(const PurityReport& r) {
  std::array<bool, kCheckerCount> out{};
  for (std::size_t i = 0; i < kCheckerCount; ++i) out[i] = r.outcomes[i].verdict;
  return out;
}

void require_all(const PurityReport& r, bool value) {
  REQUIRE(r.outcomes.size() == kCheckerCount);
  for (std::size_t i = 0; i < kCheckerCount; ++i) {
    CAPTURE(r.outcomes[i].name);
    CHECK(r.outcomes[i].name == kCheckerNames[i]);
    CHECK(r.outcomes[i].verdict == value);
  }
  CHECK(r.consensus);
  CHECK(r.pure() == value);
}

}  // namespace

TEST_CASE("z4 sequence fails every checker with the expected witnesses") {
  const auto seq = z4_nonpure();
  const auto r = purity_report(seq, PurityBounds{});
  require_all(r, false);

  const auto& lift = r.outcomes[0].witness;
  CHECK(lift.kind == Witness::Kind::map);
  REQUIRE(lift.map);
  CHECK(lift.map->domain() == cm(4, {2}));
  CHECK(lift.map->codomain() == cm(4, {2}));
  CHECK(*lift.map == ModuleMap::identity(cm(4, {2})));

  const auto& tensor = r.outcomes[4].witness;
  CHECK(tensor.kind == Witness::Kind::module);
  REQUIRE(tensor.module);
  CHECK(*tensor.module == cm(4, {2}));

  const auto& pp = r.outcomes[3].witness;
  CHECK(pp.kind == Witness::Kind::pair);
  REQUIRE(pp.pair);
  CHECK(pp.pair->phi() == PpFormula::tautology(1));
  CHECK(pp.pair->psi_given() == PpFormula::divisibility(4, 2));
  CHECK(pp.pair->to_string(4) == "x1 = x1 / E y1 : x1 = 2y1");

  CHECK(r.outcomes[1].witness.kind == Witness::Kind::none);
  CHECK(r.outcomes[5].witness.kind == Witness::Kind::dual_sequence);

  // The fp witness really breaks exactness: sizes no longer multiply.
  const auto& fp = r.outcomes[2].witness;
  CHECK(fp.kind == Witness::Kind::functor);
  REQUIRE(fp.map);
  const auto fl = eval_fp_functor(*fp.map, seq.L()).cardinality();
  const auto fm = eval_fp_functor(*fp.map, seq.M()).cardinality();
  const auto fn = eval_fp_functor(*fp.map, seq.N()).cardinality();
  const FpFunctorValue vl(*fp.map, seq.L()), vm(*fp.map, seq.M()), vn(*fp.map, seq.N());
  const bool exact = fl * fn == fm && is_exact(vl.module(), vm.module(), vn.module(), fp_functor_map(vl, vm, seq.f()),
                                               fp_functor_map(vm, vn, seq.g()));
  CHECK_FALSE(exact);
}

TEST_CASE("split sequences pass every checker") {
  for (Int n : {2, 4, 6, 9, 12}) {
    for (const auto& l : oracle::all_modules(n, 1))
      for (const auto& k : oracle::all_modules(n, 1)) {
        const auto r = purity_report(trivial_split(l, k), PurityBounds{});
        require_all(r, true);
        REQUIRE(r.outcomes[1].witness.map);
        CHECK(compose(trivial_split(l, k).g(), *r.outcomes[1].witness.map) == ModuleMap::identity(k));
      }
  }
}

TEST_CASE("degenerate sequences are pure") {
  const auto m = cm(12, {2, 6});
  const auto zero = CanonicalModule::zero(12);
  require_all(purity_report(ShortSequence(ModuleMap::zero(zero, m), ModuleMap::identity(m)), PurityBounds{}), true);
  require_all(purity_report(ShortSequence(ModuleMap::identity(m), ModuleMap::zero(m, zero)), PurityBounds{}), true);
  // A free summand in the middle term.
  require_all(purity_report(trivial_split(cm(4, {4}), cm(4, {2})), PurityBounds{}), true);
}

TEST_CASE("checkers agree with brute-force oracles on random sequences") {
  for (Int n : {2, 4, 6, 8, 9, 12}) {
    for (std::uint64_t t = 0; t < 60; ++t) {
      const auto seq = random_ses(n, SesBounds{}, mix_seed(static_cast<std::uint64_t>(n), t));
      if (seq.N().cardinality() > 256) continue;
      const auto r = purity_report(seq, PurityBounds{});
      const bool split = brute_split(seq);
      CAPTURE(n);
      CAPTURE(t);
      CHECK(brute_lifting(seq) == split);
      CHECK(brute_tensor(seq) == split);
      for (std::size_t i = 0; i < kCheckerCount; ++i) {
        CAPTURE(kCheckerNames[i]);
        CHECK(r.outcomes[i].verdict == split);
      }
    }
  }
}

TEST_CASE("verdicts are invariant under automorphisms of the middle term") {
  Rng rng(11);
  for (std::uint64_t t = 0; t < 40; ++t) {
    const auto seq = random_ses(4, SesBounds{2, 2}, mix_seed(99, t));
    const auto a = random_automorphism(seq.M(), rng);
    std::optional<ModuleMap> inv;
    for (const auto& m : oracle::enumerate_homs(seq.M(), seq.M())) {
      ModuleMap b(seq.M(), seq.M(), m);
      if (compose(a, b) == ModuleMap::identity(seq.M())) inv = b;
    }
    REQUIRE(inv);
    const ShortSequence moved(compose(a, seq.f()), compose(seq.g(), *inv));
    CHECK(verdicts(purity_report(seq, PurityBounds{})) == verdicts(purity_report(moved, PurityBounds{})));
  }
}

TEST_CASE("pure sequences are closed under direct sums") {
  const auto bad = z4_nonpure();
  const auto good = trivial_split(cm(4, {2}), cm(4, {4}));
  require_all(purity_report(sequence_sum(good, good), PurityBounds{}), true);
  require_all(purity_report(sequence_sum(good, bad), PurityBounds{}), false);
  require_all(purity_report(sequence_sum(bad, good), PurityBounds{}), false);
  require_all(purity_report(sequence_sum(bad, bad), PurityBounds{}), false);
}

TEST_CASE("fp catalog is deterministic and free of isomorphisms") {
  for (Int n : {4, 8, 12}) {
    const auto& c = fp_catalog(n, 2);
    CHECK_FALSE(c.empty());
    CHECK(&c == &fp_catalog(n, 2));
    const IndexCategory cat(n);
    for (const auto& u : c) {
      CHECK_FALSE(is_isomorphism(u));
      CHECK_FALSE(fp_functor_from_map(cat, u).is_zero());
      CHECK(u.domain().rank() <= 2);
      CHECK(u.codomain().rank() <= 2);
    }
  }
  // Depth 1 already contains Z/2 -> 0 over Z/4, whose functor is Hom(Z/2, -).
  const auto& c1 = fp_catalog(4, 1);
  REQUIRE_FALSE(c1.empty());
  CHECK(c1.front().domain() == cm(4, {2}));
  CHECK(c1.front().codomain().is_zero());
}

TEST_CASE("harness is deterministic and independent of the job count") {
  const auto a = equivalence_harness(8, 60, 5, PurityBounds{});
  const auto b = equivalence_harness(8, 60, 5, PurityBounds{});
  const auto c = equivalence_harness(8, 60, 5, PurityBounds{}, SesBounds{}, 3);
  CHECK(a.disagreements == 0);
  CHECK(a.pure == b.pure);
  CHECK(a.pure == c.pure);
  CHECK(a.true_counts == c.true_counts);
  CHECK(a.pure > 0);
  CHECK(a.pure < 60);
  for (auto count : a.true_counts) CHECK(count == a.pure);
  CHECK_THROWS_AS(equivalence_harness(8, 0, 5, PurityBounds{}), InputError);
  CHECK_THROWS_AS(equivalence_harness(1, 5, 5, PurityBounds{}), InputError);
}

TEST_CASE("larger pp bounds do not change verdicts") {
  PurityBounds wide;
  wide.pp = PpBounds{1, 2, 3};
  wide.fp_depth = 3;
  for (std::uint64_t t = 0; t < 15; ++t) {
    const auto seq = random_ses(4, SesBounds{}, mix_seed(3, t));
    CHECK(verdicts(purity_report(seq, PurityBounds{})) == verdicts(purity_report(seq, wide)));
  }
}
