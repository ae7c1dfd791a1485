#pragma once

// JSON documents read and written by the command-line tool.
//
// Sequence document:
//   {"modulus": 4, "L": [2], "M": [4], "N_mod": [2], "f": [[2]], "g": [[1]]}
// L, M and N_mod are invariant chains (each entry divides the next and N).
// A matrix is an array of rows; row r holds the r-th canonical coordinate of
// the image of every domain generator, so f has rank(M) rows and rank(L)
// columns. A map whose codomain is zero is written [], and one whose domain
// is zero as rank(codomain) empty rows.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "puritylab/purity.hpp"

namespace puritylab {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Malformed text or a document missing a field: exit code 3.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SequenceDocument {
  Int modulus = 1;
  std::vector<Int> L, M, N_mod;
  IntMatrix f, g;
  bool operator==(const SequenceDocument&) const = default;
};

Json to_json(const SequenceDocument& doc);
SequenceDocument sequence_document_from_json(const Json& j);
std::string serialize(const SequenceDocument& doc);
/// Throws DocumentError on malformed text.
SequenceDocument parse_sequence_document(std::string_view text);
/// Throws InputError (or SequenceError) when the document is well formed but
/// does not describe a short exact sequence.
ShortSequence to_sequence(const SequenceDocument& doc);
SequenceDocument from_sequence(const ShortSequence& seq);

const std::vector<std::string>& example_names();
/// Throws InputError for an unknown name.
SequenceDocument example_document(std::string_view name);

/// Matrix rows as JSON; shapes are restored from the expected dimensions.
Json matrix_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const char* field);

struct VerdictEntry {
  std::string checker;
  bool verdict = false;
  std::string witness_kind;
  std::string witness;  // human-readable certificate
  Json certificate;     // structured form, null when there is none
  bool operator==(const VerdictEntry&) const = default;
};

struct ReportDocument {
  std::string version = kVersion;
  Int modulus = 1;
  std::vector<VerdictEntry> verdicts;
  bool consensus = false;
  PurityBounds bounds;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> notes;
  bool operator==(const ReportDocument&) const = default;
};

ReportDocument make_report(const PurityReport& report, const PurityBounds& bounds,
                           std::optional<std::uint64_t> seed = std::nullopt);
Json to_json(const ReportDocument& doc);
ReportDocument report_document_from_json(const Json& j);
std::string serialize(const ReportDocument& doc);
ReportDocument parse_report_document(std::string_view text);

Json bounds_json(const PurityBounds& b);
PurityBounds bounds_from_json(const Json& j);

}  // namespace puritylab
