#pragma once

// JSON documents for algebras, species, modules and representations, and the
// report schema. Field elements are stored as parse-grammar strings; sparse
// vectors as {"index": "literal"} objects, matrices as arrays of rows.

#include <map>
#include <string>
#include <vector>

#include "algkit/gallery.hpp"

namespace algkit {

inline constexpr const char* kAlgebraFormat = "algkit-algebra/1";
inline constexpr const char* kSpeciesFormat = "algkit-species/1";
inline constexpr const char* kModuleFormat = "algkit-module/1";
inline constexpr const char* kRepresentationFormat = "algkit-representation/1";
inline constexpr const char* kReportFormat = "algkit-report/1";

struct AlgebraDocument {
  std::string name;
  std::string note;
  AlgebraPresentation algebra;
};

struct ModuleDocument {
  std::string name;
  Module module;
};

struct RepresentationDocument {
  std::string name;
  FieldPtr field;
  std::vector<FieldPtr> towers;
  Representation representation;
};

/// All loaders throw DocumentError for malformed JSON, a wrong format tag or a
/// missing key, and with `strict` also for unknown keys. Errors inside element
/// literals keep their parse error kind.
std::string save_algebra(const AlgebraDocument& doc);
AlgebraDocument load_algebra(const std::string& text, bool strict = true);

std::string save_species(const SpeciesExample& ex);
SpeciesExample load_species(const std::string& text, bool strict = true);

std::string save_module(const ModuleDocument& doc);
ModuleDocument load_module(const std::string& text, bool strict = true);

std::string save_representation(const RepresentationDocument& doc);
RepresentationDocument load_representation(const std::string& text, bool strict = true);

/// Standalone matrix file (an --epsilon argument): {"field": ..., "rows": [...]}
/// where the field table must agree with the algebra's ground field.
std::string save_matrix(const Matrix& m);
Matrix load_matrix(const std::string& text, const FieldPtr& field);

/// The "format" tag of a document; throws DocumentError.
std::string document_format(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// ------------------------------------------------------------------ reports

struct Report {
  std::string command;
  std::vector<std::string> arguments;
  std::vector<Clause> checks;
  /// Findings shown with the report that do not decide its verdict.
  std::vector<Clause> clauses;
  std::map<std::string, std::size_t> dimensions;
  std::vector<std::string> notes;
  double seconds = 0;

  void add(std::string name, bool ok, std::string detail = "");
  void add(std::string name, Verdict v, std::string detail = "");
  /// Pass when every check passes or is not applicable; fail beats unknown.
  Verdict verdict() const;
};

std::string report_json(const Report& r);
std::string report_text(const Report& r);

}  // namespace algkit
