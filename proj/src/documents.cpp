#include "puritylab/documents.hpp"

#include <limits>

namespace puritylab {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw DocumentError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw DocumentError(std::string("missing field \"") + name + "\"");
  return *it;
}

Int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw DocumentError(std::string(what) + ": expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Int>::max()))
    throw InputError(std::string(what) + ": integer out of range");
  return j.get<Int>();
}

std::vector<Int> integer_list(const Json& j, const char* what) {
  if (!j.is_array()) throw DocumentError(std::string(what) + ": expected an array of integers");
  std::vector<Int> out;
  for (const auto& e : j) out.push_back(integer(e, what));
  return out;
}

Json module_json(const CanonicalModule& m) { return Json(m.invariants()); }

Json map_json(const ModuleMap& m) {
  return Json{{"domain", module_json(m.domain())},
              {"codomain", module_json(m.codomain())},
              {"matrix", matrix_json(m.matrix())}};
}

Json certificate_json(const Witness& w, Int modulus) {
  switch (w.kind) {
    case Witness::Kind::map:
    case Witness::Kind::section:
    case Witness::Kind::functor:
      if (w.map) return map_json(*w.map);
      break;
    case Witness::Kind::module:
      if (w.module) return Json{{"invariants", module_json(*w.module)}};
      break;
    case Witness::Kind::pair:
      if (w.pair) return Json{{"phi", w.pair->phi().to_string(modulus)}, {"psi", w.pair->psi_given().to_string(modulus)}};
      break;
    default:
      break;
  }
  return nullptr;
}

}  // namespace

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_rows()) rows.push_back(r);
  return rows;
}

IntMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const char* name) {
  if (!j.is_array()) throw DocumentError(std::string(name) + ": expected an array of rows");
  std::vector<IntVector> out;
  for (const auto& r : j) out.push_back(integer_list(r, name));
  const std::size_t width = out.empty() ? cols : out.front().size();
  for (const auto& r : out)
    if (r.size() != width) throw DocumentError(std::string(name) + ": rows have different lengths");
  if (out.size() != rows || width != cols)
    throw InputError(std::string(name) + " must be " + std::to_string(rows) + " x " + std::to_string(cols) + ", got " +
                     std::to_string(out.size()) + " x " + std::to_string(width));
  return IntMatrix::from_rows(out, width);
}

Json to_json(const SequenceDocument& doc) {
  return Json{{"modulus", doc.modulus}, {"L", doc.L},           {"M", doc.M},
              {"N_mod", doc.N_mod},     {"f", matrix_json(doc.f)}, {"g", matrix_json(doc.g)}};
}

SequenceDocument sequence_document_from_json(const Json& j) {
  SequenceDocument doc;
  doc.modulus = integer(field(j, "modulus"), "modulus");
  doc.L = integer_list(field(j, "L"), "L");
  doc.M = integer_list(field(j, "M"), "M");
  doc.N_mod = integer_list(field(j, "N_mod"), "N_mod");
  doc.f = matrix_from_json(field(j, "f"), doc.M.size(), doc.L.size(), "f");
  doc.g = matrix_from_json(field(j, "g"), doc.N_mod.size(), doc.M.size(), "g");
  return doc;
}

std::string serialize(const SequenceDocument& doc) { return to_json(doc).dump(2) + "\n"; }

SequenceDocument parse_sequence_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON: ") + e.what());
  }
  return sequence_document_from_json(j);
}

ShortSequence to_sequence(const SequenceDocument& doc) {
  check_modulus(doc.modulus);
  const CanonicalModule l(doc.modulus, doc.L), m(doc.modulus, doc.M), n(doc.modulus, doc.N_mod);
  return ShortSequence(ModuleMap(l, m, doc.f), ModuleMap(m, n, doc.g));
}

SequenceDocument from_sequence(const ShortSequence& seq) {
  return SequenceDocument{seq.modulus(), seq.L().invariants(), seq.M().invariants(), seq.N().invariants(),
                          seq.f().matrix(), seq.g().matrix()};
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"z4-nonpure", "split-demo"};
  return names;
}

SequenceDocument example_document(std::string_view name) {
  if (name == "z4-nonpure") return SequenceDocument{4, {2}, {4}, {2}, IntMatrix{{2}}, IntMatrix{{1}}};
  // 0 -> Z/2 -> Z/2 ⊕ Z/4 -> Z/4 -> 0 over Z/4, inclusion and projection.
  if (name == "split-demo") return SequenceDocument{4, {2}, {2, 4}, {4}, IntMatrix{{1}, {0}}, IntMatrix{{0, 1}}};
  throw InputError("unknown example \"" + std::string(name) + "\"");
}

// ---------------------------------------------------------------------------

ReportDocument make_report(const PurityReport& report, const PurityBounds& bounds, std::optional<std::uint64_t> seed) {
  ReportDocument doc;
  doc.modulus = report.modulus;
  doc.consensus = report.consensus;
  doc.bounds = bounds;
  doc.seed = seed;
  for (const auto& o : report.outcomes)
    doc.verdicts.push_back(
        {o.name, o.verdict, kind_name(o.witness.kind), o.witness.text, certificate_json(o.witness, report.modulus)});
  doc.notes.push_back(
      "tensor stands for both the fp-injective and the injective functor conditions: every finite Z/N-module is "
      "pure-injective, so both classes reduce to Y ⊗ - with Y finite");
  return doc;
}

Json bounds_json(const PurityBounds& b) {
  return Json{{"pp_free", b.pp.free_vars}, {"pp_exists", b.pp.max_exists}, {"pp_rows", b.pp.max_rows},
              {"fp_depth", b.fp_depth}};
}

PurityBounds bounds_from_json(const Json& j) {
  auto count = [&](const char* name) {
    const Int v = integer(field(j, name), name);
    if (v < 0) throw DocumentError(std::string(name) + ": expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  };
  PurityBounds b;
  b.pp.free_vars = count("pp_free");
  b.pp.max_exists = count("pp_exists");
  b.pp.max_rows = count("pp_rows");
  b.fp_depth = count("fp_depth");
  return b;
}

Json to_json(const ReportDocument& doc) {
  Json verdicts = Json::array();
  for (const auto& v : doc.verdicts)
    verdicts.push_back(Json{{"checker", v.checker},
                            {"verdict", v.verdict},
                            {"witness_kind", v.witness_kind},
                            {"witness", v.witness},
                            {"certificate", v.certificate}});
  Json seed = nullptr;
  if (doc.seed) seed = *doc.seed;
  return Json{{"version", doc.version}, {"modulus", doc.modulus},          {"verdicts", verdicts},
              {"consensus", doc.consensus}, {"bounds", bounds_json(doc.bounds)}, {"seed", seed},
              {"notes", doc.notes}};
}

ReportDocument report_document_from_json(const Json& j) {
  ReportDocument doc;
  const auto& version = field(j, "version");
  if (!version.is_string()) throw DocumentError("version: expected a string");
  doc.version = version.get<std::string>();
  doc.modulus = integer(field(j, "modulus"), "modulus");
  const auto& verdicts = field(j, "verdicts");
  if (!verdicts.is_array()) throw DocumentError("verdicts: expected an array");
  for (const auto& v : verdicts) {
    VerdictEntry e;
    const auto& name = field(v, "checker");
    const auto& verdict = field(v, "verdict");
    const auto& kind = field(v, "witness_kind");
    const auto& text = field(v, "witness");
    if (!name.is_string() || !verdict.is_boolean() || !kind.is_string() || !text.is_string())
      throw DocumentError("verdicts: malformed entry");
    e.checker = name.get<std::string>();
    e.verdict = verdict.get<bool>();
    e.witness_kind = kind.get<std::string>();
    e.witness = text.get<std::string>();
    e.certificate = field(v, "certificate");
    doc.verdicts.push_back(std::move(e));
  }
  const auto& consensus = field(j, "consensus");
  if (!consensus.is_boolean()) throw DocumentError("consensus: expected a boolean");
  doc.consensus = consensus.get<bool>();
  doc.bounds = bounds_from_json(field(j, "bounds"));
  const auto& seed = field(j, "seed");
  if (!seed.is_null()) {
    if (!seed.is_number_unsigned()) throw DocumentError("seed: expected a nonnegative integer");
    doc.seed = seed.get<std::uint64_t>();
  }
  const auto& notes = field(j, "notes");
  if (!notes.is_array()) throw DocumentError("notes: expected an array");
  for (const auto& n : notes) {
    if (!n.is_string()) throw DocumentError("notes: expected strings");
    doc.notes.push_back(n.get<std::string>());
  }
  return doc;
}

std::string serialize(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

ReportDocument parse_report_document(std::string_view text) {
  try {
    return report_document_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace puritylab
