#include "algkit/document.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace algkit {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::DocumentError, what); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional, bool strict) {
  if (!j.is_object()) bad(where + " must be an object");
  std::set<std::string> known;
  for (const char* k : required) {
    if (!j.contains(k)) bad(where + " lacks \"" + k + "\"");
    known.insert(k);
  }
  for (const char* k : optional) known.insert(k);
  if (strict)
    for (const auto& [key, value] : j.items())
      if (!known.count(key)) bad(where + " has unknown key \"" + key + "\"");
}

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    bad(where + ": \"" + key + "\" has the wrong type");
  }
}

void check_format(const Json& j, const char* format) {
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string()) bad("missing format tag");
  if (j["format"].get<std::string>() != format)
    bad("expected format " + std::string(format) + ", found " + j["format"].get<std::string>());
}

// ------------------------------------------------------------- field tables

class FieldTable {
 public:
  std::size_t add(const FieldPtr& f) {
    for (std::size_t i = 0; i < fields_.size(); ++i)
      if (fields_[i]->same_as(*f)) return i;
    if (f->kind() == FieldKind::Extension) add(f->base());
    fields_.push_back(f);
    return fields_.size() - 1;
  }
  std::size_t index(const FieldPtr& f) const {
    for (std::size_t i = 0; i < fields_.size(); ++i)
      if (fields_[i]->same_as(*f)) return i;
    bad("field " + f->token() + " missing from the table");
  }
  const FieldPtr& at(std::size_t i) const {
    if (i >= fields_.size()) bad("field index " + std::to_string(i) + " out of range");
    return fields_[i];
  }
  std::size_t size() const { return fields_.size(); }

  Json to_json() const {
    Json out = Json::array();
    for (const auto& f : fields_) {
      Json d;
      switch (f->kind()) {
        case FieldKind::Prime:
          d["kind"] = "prime";
          d["p"] = f->characteristic();
          break;
        case FieldKind::RationalFunction:
          d["kind"] = "rational_function";
          d["p"] = f->characteristic();
          d["variable"] = f->variable();
          break;
        case FieldKind::Extension:
          d["kind"] = "extension";
          d["base"] = index(f->base());
          d["generator"] = f->variable();
          d["minpoly"] = f->minimal_polynomial().to_string(f->variable());
          d["certified"] = f->irreducibility_proof() == IrreducibilityProof::Certified;
          break;
      }
      out.push_back(std::move(d));
    }
    return out;
  }

  static FieldTable from_json(const Json& j, bool strict) {
    if (!j.is_array()) bad("\"fields\" must be an array");
    FieldTable t;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const Json& d = j[i];
      const std::string where = "field " + std::to_string(i);
      if (!d.is_object() || !d.contains("kind")) bad(where + " lacks \"kind\"");
      const auto kind = get<std::string>(d, "kind", where);
      if (kind == "prime") {
        check_keys(d, where, {"kind", "p"}, {}, strict);
        t.fields_.push_back(Field::prime(get<std::uint64_t>(d, "p", where)));
      } else if (kind == "rational_function") {
        check_keys(d, where, {"kind", "p", "variable"}, {}, strict);
        t.fields_.push_back(
            Field::rational_function(get<std::uint64_t>(d, "p", where), get<std::string>(d, "variable", where)));
      } else if (kind == "extension") {
        check_keys(d, where, {"kind", "base", "generator", "minpoly"}, {"certified"}, strict);
        const auto base = get<std::size_t>(d, "base", where);
        if (base >= i) bad(where + ": base must come earlier in the table");
        const bool certified = d.contains("certified") && get<bool>(d, "certified", where);
        t.fields_.push_back(Field::extension(t.fields_[base], get<std::string>(d, "generator", where),
                                             get<std::string>(d, "minpoly", where), certified));
      } else {
        bad(where + ": unknown kind " + kind);
      }
    }
    return t;
  }

 private:
  std::vector<FieldPtr> fields_;
};

// -------------------------------------------------------- vectors, matrices

Json sparse_json(const Vec& v) {
  Json out = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[std::to_string(i)] = v[i].to_string();
  return out;
}

Vec sparse_from(const Json& j, const FieldPtr& k, std::size_t n, const std::string& where) {
  if (!j.is_object()) bad(where + ": vector must be an object");
  Vec v = zero_vec(k, n);
  for (const auto& [key, value] : j.items()) {
    std::size_t idx = 0, used = 0;
    try {
      idx = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) bad(where + ": index \"" + key + "\" is not a number");
    if (idx >= n) bad(where + ": index " + key + " out of range");
    if (!value.is_string()) bad(where + ": entries must be strings");
    v[idx] = parse_element(value.get<std::string>(), k);
  }
  return v;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.row_data()) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    rows.push_back(std::move(r));
  }
  return Json{{"shape", {m.rows(), m.cols()}}, {"rows", std::move(rows)}};
}

Matrix matrix_from(const Json& j, const FieldPtr& k, const std::string& where, bool strict) {
  check_keys(j, where, {"shape", "rows"}, {}, strict);
  const auto shape = get<std::vector<std::size_t>>(j, "shape", where);
  if (shape.size() != 2) bad(where + ": shape needs two entries");
  const Json& rows = j["rows"];
  if (!rows.is_array() || rows.size() != shape[0]) bad(where + ": row count differs from shape");
  Matrix m(k, shape[0], shape[1]);
  for (std::size_t r = 0; r < shape[0]; ++r) {
    if (!rows[r].is_array() || rows[r].size() != shape[1]) bad(where + ": row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < shape[1]; ++c) {
      if (!rows[r][c].is_string()) bad(where + ": entries must be strings");
      m.at(r, c) = parse_element(rows[r][c].get<std::string>(), k);
    }
  }
  return m;
}

Matrix square_from(const Json& j, const FieldPtr& k, std::size_t n, const std::string& where, bool strict) {
  Matrix m = matrix_from(j, k, where, strict);
  if (m.rows() != n || m.cols() != n) bad(where + ": expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  return m;
}

Json matrices_json(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

const Json& array_at(const Json& j, const char* key, const std::string& where) {
  const Json& a = j.at(key);
  if (!a.is_array()) bad(where + ": \"" + key + "\" must be an array");
  return a;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

// ------------------------------------------------------------------ algebras

std::string save_algebra(const AlgebraDocument& doc) {
  const auto& a = doc.algebra;
  const FieldPtr& k = a.field();
  FieldTable ft;
  const std::size_t ground = ft.add(k);
  if (a.certificates.blocks)
    for (const auto& b : *a.certificates.blocks) ft.add(b.tower);
  Json j;
  j["format"] = kAlgebraFormat;
  j["name"] = doc.name;
  if (!doc.note.empty()) j["note"] = doc.note;
  j["fields"] = ft.to_json();
  j["ground"] = ground;
  j["basis"] = a.names();
  j["unit"] = sparse_json(a.unit());
  Json products = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t l = 0; l < a.dim(); ++l) {
      const SparseVec& p = a.product(i, l);
      if (p.empty()) continue;
      products.push_back(Json{{"left", i}, {"right", l}, {"value", sparse_json(to_dense(p, k, a.dim()))}});
    }
  j["products"] = std::move(products);
  Json cert = Json::object();
  auto vecs = [&](const std::vector<Vec>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(sparse_json(v));
    return out;
  };
  const auto& c = a.certificates;
  if (c.radical) cert["radical"] = vecs(*c.radical);
  if (c.idempotents) cert["idempotents"] = vecs(*c.idempotents);
  if (c.blocks) {
    Json blocks = Json::array();
    for (const auto& b : *c.blocks) blocks.push_back(Json{{"tower", ft.index(b.tower)}, {"lift", vecs(b.lift)}});
    cert["blocks"] = std::move(blocks);
  }
  if (c.epsilon) cert["epsilon"] = matrix_json(*c.epsilon);
  j["certificates"] = std::move(cert);
  return dump(j);
}

AlgebraDocument load_algebra(const std::string& text, bool strict) {
  const Json j = parse_json(text);
  check_format(j, kAlgebraFormat);
  check_keys(j, "algebra", {"format", "fields", "ground", "basis", "unit", "products"},
             {"name", "note", "certificates"}, strict);
  const FieldTable ft = FieldTable::from_json(j["fields"], strict);
  const FieldPtr k = ft.at(get<std::size_t>(j, "ground", "algebra"));
  AlgebraDocument doc;
  if (j.contains("name")) doc.name = get<std::string>(j, "name", "algebra");
  if (j.contains("note")) doc.note = get<std::string>(j, "note", "algebra");
  auto names = get<std::vector<std::string>>(j, "basis", "algebra");
  const std::size_t d = names.size();
  const Vec unit = sparse_from(j["unit"], k, d, "unit");
  std::vector<SparseVec> table(d * d);
  std::vector<bool> seen(d * d, false);
  for (const auto& p : array_at(j, "products", "algebra")) {
    check_keys(p, "product", {"left", "right", "value"}, {}, strict);
    const auto i = get<std::size_t>(p, "left", "product");
    const auto l = get<std::size_t>(p, "right", "product");
    if (i >= d || l >= d) bad("product index out of range");
    if (seen[i * d + l]) bad("product (" + std::to_string(i) + ", " + std::to_string(l) + ") given twice");
    seen[i * d + l] = true;
    table[i * d + l] = to_sparse(sparse_from(p["value"], k, d, "product value"));
  }
  doc.algebra = AlgebraPresentation(k, std::move(names), unit, std::move(table));
  if (!j.contains("certificates")) return doc;
  const Json& c = j["certificates"];
  check_keys(c, "certificates", {}, {"radical", "idempotents", "blocks", "epsilon"}, strict);
  auto vecs = [&](const Json& arr, const std::string& where) {
    if (!arr.is_array()) bad(where + " must be an array");
    std::vector<Vec> out;
    for (const auto& v : arr) out.push_back(sparse_from(v, k, d, where));
    return out;
  };
  auto& cert = doc.algebra.certificates;
  if (c.contains("radical")) cert.radical = vecs(c["radical"], "radical");
  if (c.contains("idempotents")) cert.idempotents = vecs(c["idempotents"], "idempotents");
  if (c.contains("blocks")) {
    std::vector<BlockCertificate> blocks;
    for (const auto& b : array_at(c, "blocks", "certificates")) {
      check_keys(b, "block", {"tower", "lift"}, {}, strict);
      blocks.push_back({ft.at(get<std::size_t>(b, "tower", "block")), vecs(b["lift"], "block lift")});
    }
    cert.blocks = std::move(blocks);
  }
  if (c.contains("epsilon")) {
    Matrix eps = matrix_from(c["epsilon"], k, "epsilon", strict);
    if (eps.rows() != d) bad("epsilon must have one row per basis element");
    cert.epsilon = std::move(eps);
  }
  return doc;
}

// ------------------------------------------------------------------- species

std::string save_species(const SpeciesExample& ex) {
  const Species& s = ex.species;
  FieldTable ft;
  const std::size_t ground = ft.add(s.field());
  std::vector<std::size_t> vertices;
  for (std::size_t i = 0; i < s.vertex_count(); ++i) vertices.push_back(ft.add(s.vertex(i)));
  Json j;
  j["format"] = kSpeciesFormat;
  j["name"] = ex.name;
  j["fields"] = ft.to_json();
  j["ground"] = ground;
  j["vertices"] = vertices;
  Json edges = Json::array();
  for (const auto& b : s.edges())
    edges.push_back(Json{{"source", b.source},
                         {"target", b.target},
                         {"labels", b.labels},
                         {"left", matrices_json(b.left)},
                         {"right", matrices_json(b.right)}});
  j["edges"] = std::move(edges);
  Json rels = Json::array();
  for (const auto& r : ex.relations) {
    Json comps = Json::array();
    for (const auto& [path, v] : r.components) comps.push_back(Json{{"path", path}, {"coords", sparse_json(v)}});
    rels.push_back(Json{{"start", r.start}, {"end", r.end}, {"components", std::move(comps)}});
  }
  j["relations"] = std::move(rels);
  j["bound"] = ex.bound ? Json(*ex.bound) : Json(nullptr);
  return dump(j);
}

SpeciesExample load_species(const std::string& text, bool strict) {
  const Json j = parse_json(text);
  check_format(j, kSpeciesFormat);
  check_keys(j, "species", {"format", "fields", "ground", "vertices", "edges"}, {"name", "relations", "bound"}, strict);
  const FieldTable ft = FieldTable::from_json(j["fields"], strict);
  const FieldPtr k = ft.at(get<std::size_t>(j, "ground", "species"));
  std::vector<FieldPtr> towers;
  for (auto idx : get<std::vector<std::size_t>>(j, "vertices", "species")) towers.push_back(ft.at(idx));
  std::vector<Bimodule> edges;
  for (const auto& e : array_at(j, "edges", "species")) {
    const std::string where = "edge " + std::to_string(edges.size());
    check_keys(e, where, {"source", "target", "labels", "left", "right"}, {}, strict);
    Bimodule b;
    b.source = get<std::size_t>(e, "source", where);
    b.target = get<std::size_t>(e, "target", where);
    if (b.source >= towers.size() || b.target >= towers.size()) bad(where + ": endpoint out of range");
    b.labels = get<std::vector<std::string>>(e, "labels", where);
    for (const auto& m : array_at(e, "left", where)) b.left.push_back(square_from(m, k, b.dim(), where, strict));
    for (const auto& m : array_at(e, "right", where)) b.right.push_back(square_from(m, k, b.dim(), where, strict));
    edges.push_back(std::move(b));
  }
  SpeciesExample ex;
  if (j.contains("name")) ex.name = get<std::string>(j, "name", "species");
  ex.species = Species(k, std::move(towers), std::move(edges));
  if (j.contains("bound") && !j["bound"].is_null()) ex.bound = get<std::size_t>(j, "bound", "species");
  if (!j.contains("relations")) return ex;
  const PathSystem ps(ex.species, ex.bound);
  for (const auto& r : array_at(j, "relations", "species")) {
    check_keys(r, "relation", {"start", "end", "components"}, {}, strict);
    Relation rel{get<std::size_t>(r, "start", "relation"), get<std::size_t>(r, "end", "relation"), {}};
    for (const auto& c : array_at(r, "components", "relation")) {
      check_keys(c, "component", {"path", "coords"}, {}, strict);
      auto path = get<std::vector<std::size_t>>(c, "path", "component");
      const auto p = ps.find(path);
      if (!p) throw Error(ErrorKind::RelationOutOfBound, "relation component is not a path of the species");
      rel.components.emplace_back(std::move(path), sparse_from(c["coords"], k, ps.module(*p).dim(), "component"));
    }
    ex.relations.push_back(normalize_relation(ps, std::move(rel)));
  }
  return ex;
}

// --------------------------------------------------- modules, representations

std::string save_module(const ModuleDocument& doc) {
  FieldTable ft;
  const std::size_t ground = ft.add(doc.module.field);
  Json j;
  j["format"] = kModuleFormat;
  j["name"] = doc.name;
  j["fields"] = ft.to_json();
  j["ground"] = ground;
  j["dim"] = doc.module.dim;
  j["action"] = matrices_json(doc.module.action);
  return dump(j);
}

ModuleDocument load_module(const std::string& text, bool strict) {
  const Json j = parse_json(text);
  check_format(j, kModuleFormat);
  check_keys(j, "module", {"format", "fields", "ground", "dim", "action"}, {"name"}, strict);
  const FieldTable ft = FieldTable::from_json(j["fields"], strict);
  ModuleDocument doc;
  if (j.contains("name")) doc.name = get<std::string>(j, "name", "module");
  doc.module.field = ft.at(get<std::size_t>(j, "ground", "module"));
  doc.module.dim = get<std::size_t>(j, "dim", "module");
  for (const auto& m : array_at(j, "action", "module"))
    doc.module.action.push_back(square_from(m, doc.module.field, doc.module.dim, "action", strict));
  return doc;
}

std::string save_representation(const RepresentationDocument& doc) {
  FieldTable ft;
  const std::size_t ground = ft.add(doc.field);
  std::vector<std::size_t> vertices;
  for (const auto& t : doc.towers) vertices.push_back(ft.add(t));
  const auto& r = doc.representation;
  Json j;
  j["format"] = kRepresentationFormat;
  j["name"] = doc.name;
  j["fields"] = ft.to_json();
  j["ground"] = ground;
  j["vertices"] = vertices;
  j["dims"] = r.dims;
  Json va = Json::array();
  for (const auto& ms : r.vertex_action) va.push_back(matrices_json(ms));
  j["vertex_action"] = std::move(va);
  j["edge_maps"] = matrices_json(r.edge_maps);
  return dump(j);
}

RepresentationDocument load_representation(const std::string& text, bool strict) {
  const Json j = parse_json(text);
  check_format(j, kRepresentationFormat);
  check_keys(j, "representation", {"format", "fields", "ground", "vertices", "dims", "vertex_action", "edge_maps"},
             {"name"}, strict);
  const FieldTable ft = FieldTable::from_json(j["fields"], strict);
  RepresentationDocument doc;
  if (j.contains("name")) doc.name = get<std::string>(j, "name", "representation");
  doc.field = ft.at(get<std::size_t>(j, "ground", "representation"));
  for (auto idx : get<std::vector<std::size_t>>(j, "vertices", "representation")) doc.towers.push_back(ft.at(idx));
  auto& r = doc.representation;
  r.dims = get<std::vector<std::size_t>>(j, "dims", "representation");
  if (r.dims.size() != doc.towers.size()) bad("one dimension per vertex expected");
  const Json& va = array_at(j, "vertex_action", "representation");
  if (va.size() != r.dims.size()) bad("one action list per vertex expected");
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (!va[i].is_array()) bad("vertex action must be an array of matrices");
    std::vector<Matrix> ms;
    for (const auto& m : va[i]) ms.push_back(square_from(m, doc.field, r.dims[i], "vertex action", strict));
    r.vertex_action.push_back(std::move(ms));
  }
  for (const auto& m : array_at(j, "edge_maps", "representation"))
    r.edge_maps.push_back(matrix_from(m, doc.field, "edge map", strict));
  return doc;
}

std::string save_matrix(const Matrix& m) {
  FieldTable ft;
  const std::size_t ground = ft.add(m.field());
  Json j;
  j["format"] = "algkit-matrix/1";
  j["fields"] = ft.to_json();
  j["ground"] = ground;
  j["matrix"] = matrix_json(m);
  return dump(j);
}

Matrix load_matrix(const std::string& text, const FieldPtr& field) {
  const Json j = parse_json(text);
  check_format(j, "algkit-matrix/1");
  check_keys(j, "matrix file", {"format", "fields", "ground", "matrix"}, {}, true);
  const FieldTable ft = FieldTable::from_json(j["fields"], true);
  const FieldPtr k = ft.at(get<std::size_t>(j, "ground", "matrix file"));
  if (!k->same_as(*field)) bad("matrix over " + k->token() + ", expected " + field->token());
  return matrix_from(j["matrix"], field, "matrix", true);
}

std::string document_format(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string()) bad("missing format tag");
  return j["format"].get<std::string>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path);
  out << text;
}

// ------------------------------------------------------------------- reports

void Report::add(std::string name, bool ok, std::string detail) {
  add(std::move(name), ok ? Verdict::Pass : Verdict::Fail, std::move(detail));
}

void Report::add(std::string name, Verdict v, std::string detail) {
  checks.push_back({std::move(name), v, std::move(detail)});
}

Verdict Report::verdict() const {
  bool unknown = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    unknown = unknown || c.verdict == Verdict::Unknown;
  }
  return unknown ? Verdict::Unknown : Verdict::Pass;
}

std::string report_json(const Report& r) {
  Json j;
  j["format"] = kReportFormat;
  j["command"] = r.command;
  j["arguments"] = r.arguments;
  j["verdict"] = to_string(r.verdict());
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  Json clauses = Json::array();
  for (const auto& c : r.clauses)
    clauses.push_back(Json{{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
  j["clauses"] = std::move(clauses);
  j["dimensions"] = r.dimensions;
  j["notes"] = r.notes;
  j["timing"] = Json{{"seconds", r.seconds}};
  return dump(j);
}

std::string report_text(const Report& r) {
  std::ostringstream out;
  out << "command: " << r.command;
  for (const auto& a : r.arguments) out << ' ' << a;
  out << '\n';
  for (const auto& [name, d] : r.dimensions) out << "dim " << name << " = " << d << '\n';
  for (const auto& c : r.clauses) {
    out << "  clause " << c.name << ": " << to_string(c.verdict);
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
  for (const auto& c : r.checks) {
    out << to_string(c.verdict) << "  " << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  out << "verdict: " << to_string(r.verdict()) << '\n';
  return out.str();
}

}  // namespace algkit
