#include "puritylab/purity.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "puritylab/funcat.hpp"

namespace puritylab {

std::string kind_name(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::none: return "none";
    case Witness::Kind::map: return "map";
    case Witness::Kind::section: return "section";
    case Witness::Kind::functor: return "functor";
    case Witness::Kind::pair: return "pair";
    case Witness::Kind::module: return "module";
    case Witness::Kind::dual_sequence: return "dual_sequence";
  }
  return "none";
}

namespace {

std::vector<Int> proper_test_orders(Int modulus) {
  std::vector<Int> out;
  for (Int d : divisors(modulus))
    if (d > 1) out.push_back(d);
  return out;
}

std::string cyclic_name(Int d) { return "Z/" + std::to_string(d); }

}  // namespace

CheckResult check_hom_lifting(const ShortSequence& seq) {
  const Int n = seq.modulus();
  for (Int d : proper_test_orders(n)) {
    const auto zd = CanonicalModule::cyclic(n, d);
    const HomModule to_m(zd, seq.M()), to_n(zd, seq.N());
    const auto post = hom_post(to_m, to_n, seq.g());
    if (is_surjective(post)) continue;
    const auto img = image(post);
    for (const auto& s : to_n.generators()) {
      if (img.structure.try_project(to_n.coordinates(s))) continue;
      CheckResult r;
      r.witness.kind = Witness::Kind::map;
      r.witness.map = s;
      r.witness.text = "the map " + cyclic_name(d) + " -> N given by " + s.matrix().to_string() + " does not lift along g";
      return r;
    }
    throw std::logic_error("hom lifting: the image misses no generator of a non-surjective map");
  }
  return {true, {}};
}

CheckResult check_split_oracle(const ShortSequence& seq) {
  CheckResult r;
  if (auto s = is_split(seq)) {
    r.verdict = true;
    r.witness.kind = Witness::Kind::section;
    r.witness.map = *s;
    r.witness.text = "section of g: " + s->matrix().to_string();
  } else {
    r.witness.text = "g has no section";
  }
  return r;
}

CheckResult check_tensor(const ShortSequence& seq) {
  const Int n = seq.modulus();
  for (Int d : proper_test_orders(n)) {
    const auto y = CanonicalModule::cyclic(n, d);
    const TensorProduct tl(y, seq.L()), tm(y, seq.M());
    if (is_injective(tensor_map(tl, tm, seq.f()))) continue;
    CheckResult r;
    r.witness.kind = Witness::Kind::module;
    r.witness.module = y;
    r.witness.text = cyclic_name(d) + " ⊗ f is not injective";
    return r;
  }
  return {true, {}};
}

CheckResult check_dual_split(const ShortSequence& seq) {
  std::optional<ShortSequence> dual;
  try {
    dual.emplace(dual_sequence(seq));
  } catch (const SequenceError& e) {
    throw std::logic_error(std::string("dual sequence is not exact: ") + e.what());
  }
  CheckResult r;
  if (is_split(*dual)) {
    r.verdict = true;
  } else {
    r.witness.kind = Witness::Kind::dual_sequence;
    r.witness.text = "the dual sequence 0 -> " + dual->L().to_string() + " -> " + dual->M().to_string() + " -> " +
                     dual->N().to_string() + " -> 0 does not split";
  }
  return r;
}

CheckResult check_pp_pairs(const ShortSequence& seq, const PpBounds& bounds) {
  const auto catalog = enumerate_pp(seq.modulus(), bounds);
  const std::size_t k = bounds.free_vars;
  std::vector<std::array<IntMatrix, 3>> phi_values;
  for (const auto& phi : catalog->formulas) phi_values.push_back({eval_pp(phi, seq.L()), eval_pp(phi, seq.M()), eval_pp(phi, seq.N())});
  const std::array<const CanonicalModule*, 3> mods{&seq.L(), &seq.M(), &seq.N()};
  for (std::size_t p = 0; p < catalog->pairs.size(); ++p) {
    const auto& pair = catalog->pairs[p];
    const std::size_t i = catalog->pair_indices[p].first;
    std::array<Subquotient, 3> sort;
    for (std::size_t t = 0; t < 3; ++t)
      sort[t] = Subquotient(power_moduli(*mods[t], k), phi_values[i][t], eval_pp(pair.psi(), *mods[t]), seq.modulus());
    if (sort[0].module().cardinality() * sort[2].module().cardinality() == sort[1].module().cardinality()) {
      const auto fl = induced_pp_map(sort[0], sort[1], seq.f(), k);
      const auto gl = induced_pp_map(sort[1], sort[2], seq.g(), k);
      if (exactness_defect(fl, gl) == ExactnessDefect::none) continue;
    }
    CheckResult r;
    r.witness.kind = Witness::Kind::pair;
    r.witness.pair = pair;
    r.witness.text = "sort groups of " + pair.to_string(seq.modulus()) + ": 0 -> " + sort[0].module().to_string() +
                     " -> " + sort[1].module().to_string() + " -> " + sort[2].module().to_string() + " -> 0 is not exact";
    return r;
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------
// fp-functor catalog.

namespace {

// Hom(a, b) is enumerated in full up to this size; beyond it only the zero
// map, the generators and their sum are used.
constexpr Int kFpEnumerationCap = 16;

std::vector<CanonicalModule> modules_up_to(Int modulus, std::size_t depth) {
  const auto ds = proper_test_orders(modulus);
  std::vector<CanonicalModule> out{CanonicalModule::zero(modulus)};
  std::vector<std::vector<Int>> layer{{}};
  for (std::size_t r = 1; r <= depth; ++r) {
    std::vector<std::vector<Int>> next;
    for (const auto& chain : layer)
      for (Int d : ds) {
        if (!chain.empty() && d % chain.back() != 0) continue;
        auto c = chain;
        c.push_back(d);
        out.emplace_back(modulus, c);
        next.push_back(std::move(c));
      }
    layer = std::move(next);
  }
  return out;
}

// F_u on D, flattened; equal keys give naturally isomorphic extensions.
std::vector<Int> restriction_key(const FunctorOnD& f) {
  std::vector<Int> key;
  for (const auto& v : f.values()) {
    key.push_back(static_cast<Int>(v.rank()));
    key.insert(key.end(), v.invariants().begin(), v.invariants().end());
  }
  const std::size_t n = f.category().size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& m = f.action(i, j).matrix();
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) key.push_back(m(r, c));
    }
  return key;
}

std::vector<ModuleMap> build_fp_catalog(Int modulus, std::size_t depth) {
  const auto mods = modules_up_to(modulus, depth);
  const IndexCategory cat(modulus);
  std::vector<ModuleMap> out;
  std::set<std::vector<Int>> seen;
  for (const auto& b : mods) {
    if (b.is_zero()) continue;
    for (const auto& a : mods) {
      std::vector<ModuleMap> candidates;
      const HomModule h(b, a);
      if (h.module().cardinality() <= kFpEnumerationCap) {
        for (const auto& e : h.module().elements()) candidates.push_back(h.realize(e));
      } else {
        candidates.push_back(ModuleMap::zero(b, a));
        ModuleMap total = ModuleMap::zero(b, a);
        for (const auto& s : h.generators()) {
          candidates.push_back(s);
          total = total + s;
        }
        candidates.push_back(total);
      }
      for (auto& u : candidates) {
        const auto f = fp_functor_from_map(cat, u);
        if (f.is_zero()) continue;
        if (!seen.insert(restriction_key(f)).second) continue;
        out.push_back(std::move(u));
      }
    }
  }
  return out;
}

struct HomCache {
  HomModule hom[3];
  ModuleMap post_f, post_g;
};

}  // namespace

const std::vector<ModuleMap>& fp_catalog(Int modulus, std::size_t depth) {
  check_modulus(modulus);
  if (depth == 0) throw InputError("fp catalog: the depth must be at least 1");
  static std::mutex lock;
  static std::map<std::pair<Int, std::size_t>, std::unique_ptr<std::vector<ModuleMap>>> cache;
  const auto key = std::make_pair(modulus, depth);
  {
    std::lock_guard guard(lock);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<std::vector<ModuleMap>>(build_fp_catalog(modulus, depth));
  std::lock_guard guard(lock);
  return *cache.emplace(key, std::move(built)).first->second;
}

CheckResult check_fp_functors(const ShortSequence& seq, std::size_t depth) {
  const auto& catalog = fp_catalog(seq.modulus(), depth);
  const std::array<const CanonicalModule*, 3> xs{&seq.L(), &seq.M(), &seq.N()};
  std::map<std::vector<Int>, HomCache> homs;
  auto homs_of = [&](const CanonicalModule& src) -> const HomCache& {
    auto it = homs.find(src.invariants());
    if (it != homs.end()) return it->second;
    HomCache c{{HomModule(src, *xs[0]), HomModule(src, *xs[1]), HomModule(src, *xs[2])}, {}, {}};
    c.post_f = hom_post(c.hom[0], c.hom[1], seq.f());
    c.post_g = hom_post(c.hom[1], c.hom[2], seq.g());
    return homs.emplace(src.invariants(), std::move(c)).first->second;
  };
  for (const auto& u : catalog) {
    const HomCache& ha = homs_of(u.codomain());
    const HomCache& hb = homs_of(u.domain());
    std::array<Quotient, 3> q;
    for (std::size_t t = 0; t < 3; ++t) q[t] = cokernel(hom_pre(ha.hom[t], hb.hom[t], u));
    const auto& fl = q[0].projection.codomain();
    const auto& fm = q[1].projection.codomain();
    const auto& fn = q[2].projection.codomain();
    ExactnessDefect defect = ExactnessDefect::middle_not_exact;
    if (fl.cardinality() * fn.cardinality() == fm.cardinality())
      defect = exactness_defect(induced_on_cokernels(q[0], q[1], hb.post_f), induced_on_cokernels(q[1], q[2], hb.post_g));
    if (defect == ExactnessDefect::none) continue;
    CheckResult r;
    r.witness.kind = Witness::Kind::functor;
    r.witness.map = u;
    r.witness.text = "F = coker(Hom(" + u.codomain().to_string() + ", -) -> Hom(" + u.domain().to_string() +
                     ", -)) along u = " + u.matrix().to_string() + ": 0 -> " + fl.to_string() + " -> " +
                     fm.to_string() + " -> " + fn.to_string() + " -> 0 is not exact";
    return r;
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------

PurityReport purity_report(const ShortSequence& seq, const PurityBounds& bounds) {
  PurityReport report;
  report.modulus = seq.modulus();
  auto run = [&](const char* name, auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r = fn();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report.outcomes.push_back({name, r.verdict, std::move(r.witness), elapsed.count()});
  };
  run(kCheckerNames[0], [&] { return check_hom_lifting(seq); });
  run(kCheckerNames[1], [&] { return check_split_oracle(seq); });
  run(kCheckerNames[2], [&] { return check_fp_functors(seq, bounds.fp_depth); });
  run(kCheckerNames[3], [&] { return check_pp_pairs(seq, bounds.pp); });
  run(kCheckerNames[4], [&] { return check_tensor(seq); });
  run(kCheckerNames[5], [&] { return check_dual_split(seq); });
  report.consensus = true;
  for (const auto& o : report.outcomes) report.consensus = report.consensus && o.verdict == report.outcomes.front().verdict;
  return report;
}

HarnessSummary equivalence_harness(Int modulus, std::size_t trials, std::uint64_t seed, const PurityBounds& bounds,
                                   const SesBounds& ses, std::size_t jobs) {
  if (modulus < 2) throw InputError("harness: the modulus must be at least 2");
  check_modulus(modulus);
  if (trials == 0) throw InputError("harness: at least one trial is required");
  const auto start = std::chrono::steady_clock::now();
  // Build the shared catalogs before any worker starts.
  enumerate_pp(modulus, bounds.pp);
  fp_catalog(modulus, bounds.fp_depth);

  struct Row {
    std::array<bool, kCheckerCount> verdicts{};
    bool consensus = false;
  };
  std::vector<Row> rows(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        const auto seq = random_ses(modulus, ses, mix_seed(seed, i));
        const auto rep = purity_report(seq, bounds);
        for (std::size_t c = 0; c < kCheckerCount; ++c) rows[i].verdicts[c] = rep.outcomes[c].verdict;
        rows[i].consensus = rep.consensus;
      } catch (...) {
        std::lock_guard guard(failure_lock);
        if (!failure) failure = std::current_exception();
        next = trials;
        return;
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  HarnessSummary s;
  s.modulus = modulus;
  s.trials = trials;
  s.seed = seed;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto& r = rows[i];
    for (std::size_t c = 0; c < kCheckerCount; ++c) {
      s.true_counts[c] += r.verdicts[c];
      s.split_mismatches[c] += r.verdicts[c] != r.verdicts[1];
    }
    if (!r.consensus) {
      ++s.disagreements;
      s.disagreeing_trials.push_back(i);
    } else if (r.verdicts[0]) {
      ++s.pure;
    }
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  s.seconds = elapsed.count();
  return s;
}

}  // namespace puritylab
