// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "puritylab/commands.hpp"
#include "puritylab/funcat.hpp"

using namespace puritylab;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

const LemmaSuite& suite(const std::vector<LemmaSuite>& all, const std::string& name) {
  for (const auto& s : all)
    if (s.name == name) return s;
  throw std::logic_error("no suite " + name);
}

// 1. All six checkers agree on 500 random sequences per modulus.
void equivalence() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream detail;
  for (Int n : {4, 8, 9, 12}) {
    const auto s = equivalence_harness(n, 500, 2024, PurityBounds{}, SesBounds{3, 3});
    ok = ok && s.disagreements == 0 && s.pure > 0 && s.pure < s.trials;
    detail << "N=" << n << " pure " << s.pure << "/500 disagreements " << s.disagreements << "; ";
  }
  const double secs = since(start);
  ok = ok && secs < 300;
  detail << "time " << static_cast<int>(secs * 1000) / 1000.0 << " s";
  report(1, ok, detail.str());
}

// 2 and 3. Tensyon and restriction isomorphisms, additivity of the extension.
void functor_lemmas() {
  bool tensyon = true, restriction = true;
  std::ostringstream d2, d3;
  for (Int n : {4, 6, 8, 9, 12}) {
    const auto all = run_lemma_suites(n, 50, 606);
    const auto& t = suite(all, "tensyon");
    const auto& r = suite(all, "restriction");
    tensyon = tensyon && t.ok() && t.instances == 50;
    restriction = restriction && r.ok() && r.instances == 100;
    d2 << "N=" << n << " " << t.passed << "/" << t.instances << "; ";
    d3 << "N=" << n << " " << r.passed << "/" << r.instances << "; ";
  }
  report(2, tensyon, "tensyon map iso for every d | N: " + d2.str());
  report(3, restriction, "restriction iso (50) plus additivity (50): " + d3.str());
}

// 4. The bundled documents.
void bundled() {
  const auto z4 = to_sequence(example_document("z4-nonpure"));
  const auto r = purity_report(z4, PurityBounds{});
  bool all_false = r.consensus;
  for (const auto& o : r.outcomes) all_false = all_false && !o.verdict;
  const auto& lift = r.outcomes[0].witness;
  const auto& pp = r.outcomes[3].witness;
  const auto& tensor = r.outcomes[4].witness;
  const auto z2 = CanonicalModule::cyclic(4, 2);
  const bool lift_ok = lift.map && *lift.map == ModuleMap::identity(z2);
  const bool tensor_ok = tensor.module && *tensor.module == z2;
  const bool pp_ok = pp.pair && pp.pair->phi() == PpFormula::tautology(1) &&
                     pp.pair->psi_given() == PpFormula::divisibility(4, 2);
  bool split_ok = true;
  const auto split = purity_report(to_sequence(example_document("split-demo")), PurityBounds{});
  for (const auto& o : split.outcomes) split_ok = split_ok && o.verdict;
  std::ostringstream detail;
  detail << "z4-nonpure all false " << all_false << ", lift witness " << (lift.map ? lift.map->matrix().to_string() : "-")
         << ", tensor witness " << (tensor.module ? tensor.module->to_string() : "-") << ", pp witness "
         << (pp.pair ? pp.pair->to_string(4) : "-") << "; split-demo all true " << split_ok;
  report(4, all_false && lift_ok && tensor_ok && pp_ok && split_ok, detail.str());
}

// 5. Hom-tensor duality and dual-of-hom.
void proof_steps() {
  bool ok = true;
  std::ostringstream detail;
  for (Int n : {4, 9, 12}) {
    const auto all = run_lemma_suites(n, 100, 515);
    const auto& h = suite(all, "hom_tensor_duality");
    const auto& d = suite(all, "dual_of_hom");
    ok = ok && h.ok() && d.ok() && h.instances == 100 && d.instances == 100;
    detail << "N=" << n << " duality " << h.passed << "/100, dual-of-hom " << d.passed << "/100; ";
  }
  report(5, ok, detail.str());
}

// 6. Character duals.
void duality() {
  bool ok = true;
  std::size_t modules = 0, sequences = 0;
  for (Int n : {2, 3, 4, 6, 8, 9, 12}) {
    Rng rng(mix_seed(66, static_cast<std::uint64_t>(n)));
    for (int t = 0; t < 200; ++t) {
      const auto m = random_module(n, 3, rng);
      const bool good = dual_module(m).underlying().cardinality() == m.cardinality() && is_isomorphism(evaluation_map(m));
      ok = ok && good;
      modules += good;
    }
    for (std::uint64_t t = 0; t < 200; ++t) {
      const auto seq = random_ses(n, SesBounds{}, mix_seed(6600 + static_cast<std::uint64_t>(n), t));
      bool good = false;
      try {
        const auto d = dual_sequence(seq);
        good = is_exact(d.L(), d.M(), d.N(), d.f(), d.g());
      } catch (const SequenceError&) {
      }
      ok = ok && good;
      sequences += good;
    }
  }
  report(6, ok,
         "N in {2,3,4,6,8,9,12}: " + std::to_string(modules) + "/1400 modules with |M*| = |M| and M ~ M**, " +
             std::to_string(sequences) + "/1400 dual sequences exact");
}

// 7. Substrate against enumeration. The carrier of an operation is the
// product of the sizes of everything enumerated by its oracle.
void substrate() {
  std::size_t cases = 0, bad = 0;
  auto tally = [&](bool good) {
    ++cases;
    bad += !good;
  };
  for (Int n : {2, 3, 4, 6, 8}) {
    std::vector<Int> ds;
    for (Int d : divisors(n))
      if (d > 1) ds.push_back(d);
    // solve_linear_mod: unknowns (Z/N)^c, right-hand side (Z/N)^r.
    for (std::size_t r = 1; r <= 6; ++r)
      for (std::size_t c = 1; c <= 6; ++c) {
        Int carrier = 1;
        for (std::size_t i = 0; i < r + c; ++i) carrier *= n;
        if (carrier > 64) continue;
        oracle::for_each_vector(std::vector<Int>(r * c + r, n), [&](const IntVector& v) {
          IntMatrix a(r, c);
          for (std::size_t i = 0; i < r * c; ++i) a(i / c, i % c) = v[i];
          const IntVector b(v.begin() + static_cast<std::ptrdiff_t>(r * c), v.end());
          const IntVector moduli(r, n);
          const auto want = oracle::solutions(a, b, moduli, n);
          const auto sol = solve_linear_mod(a, b, n);
          if (!sol) return tally(want.empty());
          std::set<IntVector> got;
          for (const auto& h : oracle::span(oracle::columns(sol->homogeneous), IntVector(c, n))) {
            IntVector x(c);
            for (std::size_t j = 0; j < c; ++j) x[j] = oracle::md(sol->particular[j] + h[j], n);
            got.insert(x);
          }
          tally(got == want);
        });
      }
    // kernel_mod: domain (Z/N)^c, target ⊕ Z/t_i.
    for (std::size_t r = 1; r <= 5; ++r)
      for (std::size_t c = 1; c <= 6; ++c)
        oracle::for_each_vector(std::vector<Int>(r, static_cast<Int>(ds.size())), [&](const IntVector& pick) {
          IntVector moduli;
          Int carrier = 1;
          for (std::size_t i = 0; i < c; ++i) carrier *= n;
          for (Int p : pick) {
            moduli.push_back(ds[static_cast<std::size_t>(p)]);
            carrier *= moduli.back();
          }
          if (carrier > 64) return;
          oracle::for_each_vector(std::vector<Int>(r * c, n), [&](const IntVector& v) {
            IntMatrix a(r, c);
            for (std::size_t i = 0; i < r * c; ++i) a(i / c, i % c) = v[i];
            const auto want = oracle::solutions(a, IntVector(r, 0), moduli, n);
            tally(oracle::span(oracle::columns(kernel_mod(a, moduli, n)), IntVector(c, n)) == want);
          });
        });
    // hom_module and tensor_modules: every pair with |M| |X| <= 64.
    const auto mods = oracle::all_modules(n, 6);
    for (const auto& m : mods)
      for (const auto& x : mods) {
        if (m.cardinality() * x.cardinality() > 64) continue;
        const auto brute = oracle::enumerate_homs(m, x);
        const std::set<IntMatrix, bool (*)(const IntMatrix&, const IntMatrix&)> want(
            brute.begin(), brute.end(), [](const IntMatrix& p, const IntMatrix& q) { return p.to_rows() < q.to_rows(); });
        const auto h = hom_module(m, x);
        bool good = h.module().cardinality() == static_cast<Order>(brute.size());
        std::size_t distinct = 0;
        std::set<std::vector<IntVector>> seen;
        for (const auto& e : h.module().elements()) {
          const auto mat = h.realize(e).matrix();
          good = good && want.count(mat);
          distinct += seen.insert(mat.to_rows()).second;
        }
        tally(good && distinct == brute.size());
        tally(tensor_modules(m, x).module().cardinality() == oracle::count_bilinear_forms(m, x));
      }
    // eval_pp: one free variable, up to two bound variables and two rows,
    // every coefficient pattern, on modules with |M|^(1+m) <= 64.
    for (std::size_t b = 0; b <= 2; ++b)
      for (std::size_t rows = 1; rows <= 2; ++rows)
        for (const auto& m : oracle::all_modules(n, 6)) {
          Order carrier = 1;
          for (std::size_t i = 0; i <= b; ++i) carrier *= m.cardinality();
          if (carrier > 64) continue;
          oracle::for_each_vector(std::vector<Int>(rows * (1 + b), n), [&](const IntVector& v) {
            IntMatrix a(rows, 1), bm(rows, b);
            for (std::size_t r = 0; r < rows; ++r) {
              a(r, 0) = v[r * (1 + b)];
              for (std::size_t w = 0; w < b; ++w) bm(r, w) = v[r * (1 + b) + 1 + w];
            }
            const PpFormula phi(1, b, a, bm);
            const auto got = oracle::span(oracle::columns(eval_pp(phi, m)), power_moduli(m, 1));
            tally(got == oracle::pp_solutions(phi, m));
          });
        }
  }
  report(7, bad == 0,
         "N in {2,3,4,6,8}, carrier <= 64: " + std::to_string(cases - bad) + "/" + std::to_string(cases) +
             " solve/kernel/hom/tensor/pp cases match enumeration");
}

// 8. Byte-identical random output across runs and job counts.
void determinism() {
  auto run = [](Int n, std::size_t jobs) {
    CommandOptions opts;
    opts.modulus = n;
    opts.trials = 300;
    opts.seed = 7;
    opts.jobs = jobs;
    opts.format = OutputFormat::json;
    std::ostringstream out, err;
    const int code = cmd_random(opts, out, err);
    return std::to_string(code) + "\n" + out.str();
  };
  bool ok = true;
  for (Int n : {4, 12}) {
    const auto a = run(n, 1), b = run(n, 1), c = run(n, 4);
    ok = ok && a == b && a == c && a.rfind("0\n", 0) == 0;
  }
  report(8, ok, "cmd_random JSON for N in {4,12}, seed 7, 300 trials: identical for --jobs 1, 1, 4");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  auto guarded = [](int id, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  };
  guarded(1, equivalence);
  guarded(2, functor_lemmas);
  guarded(4, bundled);
  guarded(5, proof_steps);
  guarded(6, duality);
  guarded(7, substrate);
  guarded(8, determinism);
  std::printf("acceptance: %d failing, %.1f s\n", failures, since(start));
  return failures == 0 ? 0 : 1;
}
