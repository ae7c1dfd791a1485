#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "puritylab/commands.hpp"
#include "puritylab/funcat.hpp"

namespace py = pybind11;
using namespace puritylab;

namespace {

using Rows = std::vector<std::vector<Int>>;

PurityBounds make_bounds(std::size_t pp_free, std::size_t pp_exists, std::size_t pp_rows, std::size_t fp_depth) {
  PurityBounds b;
  b.pp = PpBounds{pp_free, pp_exists, pp_rows};
  b.fp_depth = fp_depth;
  return b;
}

SequenceDocument make_document(Int modulus, std::vector<Int> l, std::vector<Int> m, std::vector<Int> n, const Rows& f,
                               const Rows& g) {
  SequenceDocument doc{modulus, std::move(l), std::move(m), std::move(n), {}, {}};
  doc.f = matrix_from_json(Json(f), doc.M.size(), doc.L.size(), "f");
  doc.g = matrix_from_json(Json(g), doc.N_mod.size(), doc.M.size(), "g");
  return doc;
}

Rows rows_of(const IntMatrix& m) { return m.to_rows(); }

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Purity checks for short exact sequences of finite Z/N-modules";

  py::register_exception<InputError>(mod, "InputError", PyExc_ValueError);
  py::register_exception<DocumentError>(mod, "DocumentError", PyExc_ValueError);

  mod.attr("__version__") = kVersion;
  mod.attr("CHECKERS") = std::vector<std::string>(kCheckerNames.begin(), kCheckerNames.end());

  mod.def(
      "check_sequence",
      [](Int modulus, std::vector<Int> l, std::vector<Int> m, std::vector<Int> n, const Rows& f, const Rows& g,
         std::size_t pp_free, std::size_t pp_exists, std::size_t pp_rows, std::size_t fp_depth) {
        const auto bounds = make_bounds(pp_free, pp_exists, pp_rows, fp_depth);
        const auto seq = to_sequence(make_document(modulus, std::move(l), std::move(m), std::move(n), f, g));
        py::gil_scoped_release release;
        return serialize(make_report(purity_report(seq, bounds), bounds));
      },
      py::arg("modulus"), py::arg("L"), py::arg("M"), py::arg("N_mod"), py::arg("f"), py::arg("g"), py::kw_only(),
      py::arg("pp_free") = 1, py::arg("pp_exists") = 2, py::arg("pp_rows") = 2, py::arg("fp_depth") = 2,
      "Report document (JSON) for 0 -> L -> M -> N -> 0.");

  mod.def(
      "check_document",
      [](const std::string& text, std::size_t pp_free, std::size_t pp_exists, std::size_t pp_rows, std::size_t fp_depth) {
        const auto bounds = make_bounds(pp_free, pp_exists, pp_rows, fp_depth);
        const auto seq = to_sequence(parse_sequence_document(text));
        py::gil_scoped_release release;
        return serialize(make_report(purity_report(seq, bounds), bounds));
      },
      py::arg("text"), py::kw_only(), py::arg("pp_free") = 1, py::arg("pp_exists") = 2, py::arg("pp_rows") = 2,
      py::arg("fp_depth") = 2, "Report document (JSON) for a sequence document.");

  mod.def(
      "example", [](const std::string& name) { return serialize(example_document(name)); }, py::arg("name"),
      "Bundled sequence document (JSON).");
  mod.def("example_names", &example_names);

  mod.def(
      "random_harness",
      [](Int modulus, std::size_t trials, std::uint64_t seed, std::size_t jobs, std::size_t pp_free,
         std::size_t pp_exists, std::size_t pp_rows, std::size_t fp_depth) {
        const auto bounds = make_bounds(pp_free, pp_exists, pp_rows, fp_depth);
        py::gil_scoped_release release;
        const auto s = equivalence_harness(modulus, trials, seed, bounds, SesBounds{}, jobs);
        return harness_json(s, bounds).dump(2);
      },
      py::arg("modulus"), py::arg("trials"), py::arg("seed") = 0, py::kw_only(), py::arg("jobs") = 1,
      py::arg("pp_free") = 1, py::arg("pp_exists") = 2, py::arg("pp_rows") = 2, py::arg("fp_depth") = 2,
      "Equivalence harness summary (JSON), as printed by the random command.");

  mod.def(
      "lemma_suites",
      [](Int modulus, std::size_t trials, std::uint64_t seed) {
        py::gil_scoped_release release;
        return lemmas_json(modulus, trials, seed, run_lemma_suites(modulus, trials, seed)).dump(2);
      },
      py::arg("modulus"), py::arg("trials"), py::arg("seed") = 0, "Lemma suite results (JSON).");

  mod.def(
      "hom_invariants",
      [](Int modulus, std::vector<Int> source, std::vector<Int> target) {
        return hom_module(CanonicalModule(modulus, std::move(source)), CanonicalModule(modulus, std::move(target)))
            .module()
            .invariants();
      },
      py::arg("modulus"), py::arg("source"), py::arg("target"));
  mod.def(
      "tensor_invariants",
      [](Int modulus, std::vector<Int> left, std::vector<Int> right) {
        return tensor_modules(CanonicalModule(modulus, std::move(left)), CanonicalModule(modulus, std::move(right)))
            .module()
            .invariants();
      },
      py::arg("modulus"), py::arg("left"), py::arg("right"));
  mod.def(
      "normalize",
      [](const Rows& relations, std::size_t generators, Int modulus) {
        return normalize_presentation(IntMatrix::from_columns(relations, generators), modulus).module.invariants();
      },
      py::arg("relations"), py::arg("generators"), py::arg("modulus"),
      "Invariant chain of (Z/N)^generators modulo the span of the relation rows.");
  mod.def(
      "smith_normal_form", [](const Rows& a, std::size_t cols) {
        return smith_normal_form(IntMatrix::from_rows(a, cols)).diagonal();
      },
      py::arg("rows"), py::arg("cols"), "Integer invariant factors.");
  mod.def(
      "eval_pp",
      [](const std::string& formula, Int modulus, std::vector<Int> invariants) {
        const CanonicalModule m(modulus, std::move(invariants));
        return rows_of(eval_pp(parse_pp(formula), m).transpose());
      },
      py::arg("formula"), py::arg("modulus"), py::arg("invariants"),
      "Generators of the subgroup defined by a pp formula in one free variable.");
  mod.def(
      "pp_catalog",
      [](Int modulus, std::size_t pp_free, std::size_t pp_exists, std::size_t pp_rows) {
        const auto c = enumerate_pp(modulus, PpBounds{pp_free, pp_exists, pp_rows});
        std::vector<std::string> out;
        for (const auto& p : c->pairs) out.push_back(p.to_string(modulus));
        return out;
      },
      py::arg("modulus"), py::kw_only(), py::arg("pp_free") = 1, py::arg("pp_exists") = 2, py::arg("pp_rows") = 2,
      "The pp pairs tested by the pp checker.");
}
