// algkit: command line front end. Every command loads one document, runs its
// checks and writes a report; the exit code is 0 when all verdicts pass.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "algkit/document.hpp"

#ifndef ALGKIT_GALLERY_DIR
#define ALGKIT_GALLERY_DIR "gallery"
#endif

using namespace algkit;
namespace fs = std::filesystem;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kUnsupported = 3 };

struct Options {
  std::string document;
  std::string suite;
  std::string mode = "rsplit";
  std::string epsilon;
  std::optional<std::size_t> bound;
  bool strict_duality = false;
  std::uint64_t seed = 0;
  std::size_t samples = 10;
  std::string out = "-";
  std::string format = "text";
};

// Failure of the input stage: the document could not be read or understood.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kTriangleNote =
    "corner product (ab, 0) with right action (f, g)b = (fb + g delta(b), gb); the other orderings fail the "
    "associativity check or are isomorphic to this one";

std::string gallery_dir() {
  if (const char* env = std::getenv("ALGKIT_EXAMPLES_DIR")) return env;
  return ALGKIT_GALLERY_DIR;
}

bool is_example(const std::string& name) {
  for (const auto& n : example_names())
    if (n == name) return true;
  return false;
}

// A path on disk, else a gallery name (with or without directory and suffix),
// looked up in the gallery directory and finally built in memory.
std::string document_text(const std::string& arg) {
  if (fs::is_regular_file(arg)) return read_file(arg);
  const std::string stem = fs::path(arg).stem().string();
  if (!is_example(stem)) throw InputError("no such file or gallery example: " + arg);
  const fs::path p = fs::path(gallery_dir()) / (stem + ".alg");
  if (fs::is_regular_file(p)) return read_file(p.string());
  return save_algebra({stem, stem == "dr3-triangle" ? kTriangleNote : "", example_algebra(stem)});
}

struct Input {
  std::string format;
  std::optional<AlgebraDocument> algebra;
  std::optional<SpeciesExample> species;
};

Input load(const Options& o) {
  Input in;
  const std::string text = document_text(o.document);
  in.format = document_format(text);
  if (in.format == kAlgebraFormat) {
    in.algebra = load_algebra(text);
  } else if (in.format == kSpeciesFormat) {
    in.species = load_species(text);
    if (o.bound) in.species->bound = o.bound;
  } else {
    throw InputError("unsupported document format " + in.format);
  }
  return in;
}

const AlgebraPresentation& need_algebra(const Input& in) {
  if (!in.algebra) throw InputError("this command needs an algebra document");
  return in.algebra->algebra;
}

const SpeciesExample& need_species(const Input& in) {
  if (!in.species) throw InputError("this command needs a species document");
  return *in.species;
}

std::optional<Matrix> epsilon(const Options& o, const AlgebraPresentation& a) {
  if (!o.epsilon.empty()) return load_matrix(read_file(o.epsilon), a.field());
  return a.certificates.epsilon;
}

SurjectionMode mode_of(const Options& o) {
  if (o.mode == "rsplit") return SurjectionMode::RSplit;
  if (o.mode == "enlarged") return SurjectionMode::SplitEnlarged;
  throw InputError("unknown mode " + o.mode + " (rsplit or enlarged)");
}

std::string vec_text(const Vec& v, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += v[i].is_one() ? names[i] : "(" + v[i].to_string() + ")*" + names[i];
  }
  return out.empty() ? "0" : out;
}

std::string relation_text(const PathSystem& ps, const Relation& r) {
  std::string out = std::to_string(r.start) + "->" + std::to_string(r.end) + ": ";
  bool first = true;
  for (const auto& [path, v] : r.components) {
    const auto p = *ps.find(path);
    std::vector<std::string> labels;
    for (std::size_t w = 0; w < ps.module(p).dim(); ++w) labels.push_back(ps.word_label(p, w));
    out += (first ? "" : " + ") + vec_text(v, labels);
    first = false;
  }
  return out;
}

Matrix eps_or_fail(const Options& o, const AlgebraPresentation& a) {
  const auto e = epsilon(o, a);
  if (!e) throw Error(ErrorKind::NotSplit, "no splitting map: give --epsilon or embed one");
  return *e;
}

// ------------------------------------------------------------------ commands

void cmd_validate(const Options& o, const Input& in, Report& r) {
  if (in.algebra) {
    const auto& a = in.algebra->algebra;
    r.dimensions["algebra"] = a.dim();
    try {
      validate_algebra(a);
      r.add("associative_unital", true);
    } catch (const Error& e) {
      r.add("associative_unital", false, e.what());
    }
    return;
  }
  const auto& ex = need_species(in);
  r.dimensions["vertices"] = ex.species.vertex_count();
  r.dimensions["edges"] = ex.species.edge_count();
  try {
    validate_species(ex.species, o.strict_duality);
    r.add(o.strict_duality ? "species_axioms_and_duality" : "species_axioms", true);
  } catch (const Error& e) {
    r.add(o.strict_duality ? "species_axioms_and_duality" : "species_axioms", false, e.what());
  }
  if (!ex.relations.empty()) {
    const auto c = validate_canonical_set(ex.species, ex.relations);
    r.add("canonical_relation_set", c.ok ? Verdict::Pass : Verdict::NotApplicable, c.diagnostic);
  }
}

void cmd_radical(const Options&, const Input& in, Report& r) {
  const auto& a = need_algebra(in);
  const auto& c = a.certificates;
  r.dimensions["algebra"] = a.dim();
  Subspace rad;
  if (c.radical && c.blocks) {
    rad = radical_supplied(a, c);
    r.add("supplied_radical", true, "ideal, nilpotent, semisimple quotient by certified blocks");
  } else if (a.field()->characteristic() == 0) {
    rad = radical_trace_char0(a);
    r.add("trace_radical", true, "trace form kernel");
  } else {
    throw Error(ErrorKind::UnsupportedShape, "radical over " + a.field()->token() + " needs a certificate");
  }
  r.dimensions["radical"] = rad.dim();
  r.dimensions["radical_square"] = ideal_power(a, rad, 2).dim();
  r.dimensions["loewy_length"] = *nilpotency_index(a, rad);
  for (const auto& v : rad.basis()) r.notes.push_back("radical: " + vec_text(v, a.names()));
}

void cmd_idempotents(const Options&, const Input& in, Report& r) {
  const auto& a = need_algebra(in);
  const auto s = BasicStructure::verify(a);
  r.add("idempotents", true, a.certificates.idempotents ? "supplied and verified" : "lifted from the block units");
  r.dimensions["blocks"] = s.block_count();
  for (std::size_t i = 0; i < s.block_count(); ++i) {
    r.notes.push_back("e" + std::to_string(i) + " = " + vec_text(s.idempotents()[i], a.names()) + "  D = " +
                      s.block(i).tower->token());
  }
  const auto p = peirce(a, s.idempotents());
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t i = 0; i < p.size(); ++i)
      r.dimensions["peirce_" + std::to_string(j) + "_" + std::to_string(i)] = p[j][i].dim();
}

void describe_species(const Species& sp, Report& r, const std::string& prefix) {
  for (std::size_t i = 0; i < sp.vertex_count(); ++i)
    r.notes.push_back(prefix + "vertex " + std::to_string(i) + ": " + sp.vertex(i)->token());
  for (std::size_t e = 0; e < sp.edge_count(); ++e) {
    const auto& b = sp.edge(e);
    r.notes.push_back(prefix + "edge " + std::to_string(e) + ": " + std::to_string(b.source) + "->" +
                      std::to_string(b.target) + " dim " + std::to_string(b.dim()));
  }
}

void cmd_species(const Options& o, const Input& in, Report& r) {
  const auto s = BasicStructure::verify(need_algebra(in));
  const auto as = species_of(s);
  r.dimensions["vertices"] = as.species.vertex_count();
  r.dimensions["edges"] = as.species.edge_count();
  r.dimensions["radical_top"] = s.radical().dim() - s.radical_square().dim();
  describe_species(as.species, r, "");
  try {
    validate_species(as.species, o.strict_duality);
    r.add("species_axioms", true);
  } catch (const Error& e) {
    r.add("species_axioms", false, e.what());
  }
}

void cmd_enlarged(const Options&, const Input& in, Report& r) {
  const auto s = BasicStructure::verify(need_algebra(in));
  const auto en = enlarged_species(species_of(s).species);
  describe_species(en.species, r, "enlarged ");
  bool onto = true;
  for (const auto& g : en.g) onto = onto && rank(g) == g.rows();
  r.add("epimorphism_onto_species", onto);
  r.dimensions["edges"] = en.species.edge_count();
}

void cmd_surject(const Options& o, const Input& in, Report& r) {
  const auto& a = need_algebra(in);
  const auto s = BasicStructure::verify(a);
  const auto res = build_surjection(s, eps_or_fail(o, a), mode_of(o));
  r.dimensions["algebra"] = a.dim();
  r.dimensions["tensor"] = res.tensor.dim();
  r.dimensions["kernel"] = res.kernel.dim();
  r.dimensions["loewy_length"] = res.loewy_length;
  r.add("onto", true);
  r.add("top_power_in_kernel", res.contains_top_power);
  r.add(res.mode == SurjectionMode::RSplit ? "kernel_in_J2" : "kernel_in_J", res.inside_bound);
  if (res.mode == SurjectionMode::SplitEnlarged)
    r.notes.push_back(std::string("kernel ") + (res.inside_J2 ? "inside" : "not inside") + " J^2");
}

void cmd_relations(const Options& o, const Input& in, Report& r) {
  const auto& a = need_algebra(in);
  const auto res = build_surjection(BasicStructure::verify(a), eps_or_fail(o, a), mode_of(o));
  const auto rels = kernel_relations(res);
  r.dimensions["relations"] = rels.size();
  r.dimensions["kernel"] = res.kernel.dim();
  for (const auto& rel : rels) r.notes.push_back(relation_text(res.tensor.paths(), rel));
  const auto w = verify_presentation(a, res.tensor, res.realization, rels);
  r.add("generates_kernel", true);
  r.add("isomorphic", true);
  r.notes.push_back(std::string("admissible: ") + (w.admissible ? "yes" : "no") +
                    ", canonical: " + (w.canonical ? "yes" : "no") + ", strong: " + (w.strong_canonical ? "yes" : "no"));
}

void cmd_presentation(const Options& o, const Input& in, Report& r) {
  if (in.algebra) {
    const auto& a = in.algebra->algebra;
    const auto res = build_surjection(BasicStructure::verify(a), eps_or_fail(o, a), mode_of(o));
    const auto rels = kernel_relations(res);
    const auto w = verify_presentation(a, res.tensor, res.realization, rels);
    r.dimensions["quotient"] = w.quotient.algebra.dim();
    r.add("isomorphic", true);
    r.add("admissible", w.admissible ? Verdict::Pass : Verdict::NotApplicable);
    r.add("canonical", w.canonical ? Verdict::Pass : Verdict::NotApplicable);
    r.add("strong_canonical", w.strong_canonical ? Verdict::Pass : Verdict::NotApplicable);
    return;
  }
  const auto& ex = need_species(in);
  const TensorAlgebra t(ex.species, ex.bound);
  const auto q = quotient_by_relations(t, ex.relations);
  r.dimensions["tensor"] = t.dim();
  r.dimensions["quotient"] = q.algebra.dim();
  r.dimensions["ideal"] = q.ideal.dim();
  r.add("sound_truncation", q.sound);
  const bool canonical = validate_canonical_set(ex.species, ex.relations).ok;
  bool strong = canonical && !ex.relations.empty();
  for (const auto& rel : ex.relations) strong = strong && is_strong_canonical(rel);
  r.add("admissible", q.admissible() ? Verdict::Pass : Verdict::NotApplicable);
  r.add("canonical", canonical ? Verdict::Pass : Verdict::NotApplicable);
  r.add("strong_canonical", strong ? Verdict::Pass : Verdict::NotApplicable);
  for (const auto& rel : ex.relations) r.notes.push_back(relation_text(t.paths(), rel));
}

void cmd_hereditary(const Options&, const Input& in, Report& r) {
  AlgebraPresentation a;
  if (in.algebra) {
    a = in.algebra->algebra;
  } else {
    a = presented_algebra(need_species(in));
  }
  const auto s = BasicStructure::verify(a);
  const auto h = hereditary_check(s);
  r.dimensions["algebra"] = a.dim();
  for (std::size_t i = 0; i < h.radicals.size(); ++i) {
    const auto& v = h.radicals[i];
    r.add("radical_e" + std::to_string(i) + "_projective", v.projective,
          "dim " + std::to_string(v.module_dim) + ", cover " + std::to_string(v.cover_dim));
  }
  r.add("hereditary", h.hereditary);
}

void cmd_canonical(const Options& o, const Input& in, Report& r) {
  if (in.algebra) {
    const auto& a = in.algebra->algebra;
    const auto rep = theorem_suite(BasicStructure::verify(a), "canonical_presentation", epsilon(o, a));
    r.clauses = rep.clauses;
    r.add(rep.theorem, rep.verdict);
    return;
  }
  const auto& ex = need_species(in);
  const auto c = validate_canonical_set(ex.species, ex.relations);
  r.add("canonical_relation_set", c.ok, c.diagnostic);
  if (!c.ok) return;
  const TensorAlgebra t(ex.species, ex.bound);
  const auto q = quotient_by_relations(t, ex.relations);
  r.add("quotient_hereditary", hereditary_check(BasicStructure::verify(q.algebra)).hereditary);
  const auto red = reduce_to_strong_canonical(ex.species, ex.relations);
  const TensorAlgebra tm(red.species, ex.bound);
  const auto qm = quotient_by_relations(tm, red.relations);
  r.add("strong_reduction_isomorphic", induced_isomorphism(q, qm, tensor_map(t, tm, red.map)).has_value(),
        std::to_string(red.eliminated) + " eliminated");
  r.dimensions["quotient"] = q.algebra.dim();
  r.dimensions["strong_relations"] = red.relations.size();
}

void cmd_functor(const Options& o, const Input& in, Report& r) {
  const auto& ex = need_species(in);
  const TensorAlgebra t(ex.species, ex.bound);
  const auto q = quotient_by_relations(t, ex.relations);
  Rng rng(o.seed);
  std::size_t gf = 0, fg = 0, sat = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    const auto rep = random_representation(ex.species, rng);
    gf += module_to_rep(t, rep_to_module(t, rep)).edge_maps == rep.edge_maps;
    const bool satisfies = rep_satisfies_relations(t, rep, ex.relations);
    sat += satisfies == annihilated_by(t, rep, q.ideal);
    const auto m = random_module(q.algebra, rng);
    const auto g = module_to_rep(t, m, &q);
    fg += is_module_isomorphism(m, rep_to_module(t, g, &q), vertex_basis_change(t, m, &q)) &&
          rep_satisfies_relations(t, g, ex.relations);
  }
  const std::string of = " of " + std::to_string(o.samples);
  r.add("G_after_F_identity", gf == o.samples, std::to_string(gf) + of);
  r.add("F_after_G_isomorphic", fg == o.samples, std::to_string(fg) + of);
  r.add("relations_match_annihilator", sat == o.samples, std::to_string(sat) + of);
}

void cmd_suite(const Options& o, const Input& in, Report& r) {
  const auto& a = need_algebra(in);
  const auto rep = theorem_suite(BasicStructure::verify(a), o.suite, epsilon(o, a));
  r.clauses = rep.clauses;
  r.add(rep.theorem, rep.verdict);
}

void cmd_examples(const Options&, Report& r) {
  const fs::path dir = gallery_dir();
  fs::create_directories(dir);
  for (const auto& name : example_names()) {
    const auto a = example_algebra(name);
    validate_algebra(a);
    write_file((dir / (name + ".alg")).string(), save_algebra({name, name == "dr3-triangle" ? kTriangleNote : "", a}));
    r.notes.push_back((dir / (name + ".alg")).string());
  }
  write_file((dir / "dr3-species.species").string(), save_species(dr3_species()));
  r.notes.push_back((dir / "dr3-species.species").string());
  r.add("gallery_written", true, dir.string());
}

int exit_code(Verdict v) { return v == Verdict::Pass || v == Verdict::NotApplicable ? kPass : kFail; }

bool is_input_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownSymbol:
    case ErrorKind::DescriptorMismatch:
    case ErrorKind::InvalidDescriptor:
    case ErrorKind::IrreducibilityUnproven:
    case ErrorKind::NoTowerPath:
    case ErrorKind::DocumentError:
    case ErrorKind::UnknownExample:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algkit: finite-dimensional algebras, species and their presentations"};
  app.require_subcommand(1);
  Options o;
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"validate", "check algebra or species axioms"},
      {"radical", "verify or compute the radical"},
      {"idempotents", "primitive orthogonal idempotents and Peirce blocks"},
      {"species", "species of a basic algebra"},
      {"enlarged", "enlarged species"},
      {"surject", "surjection from the tensor algebra"},
      {"relations", "generating relations of the kernel"},
      {"presentation", "presentation as a quotient of a tensor algebra"},
      {"hereditary", "hereditary test by projective radicals"},
      {"canonical", "canonical relation machinery"},
      {"functor", "module / representation equivalence checks"},
      {"suite", "instance-wise theorem checks"},
      {"examples", "write the gallery documents"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    if (std::string(c.name) == "suite")
      sub->add_option("check", o.suite, "one of hereditary_tensor, canonical_presentation, tree_corollary, perfect_r_split")
          ->required();
    if (std::string(c.name) != "examples") sub->add_option("document", o.document, "document file or gallery name")->required();
    sub->add_option("--mode", o.mode, "rsplit or enlarged");
    sub->add_option("--epsilon", o.epsilon, "matrix document with the splitting map");
    sub->add_option("--bound", o.bound, "path length bound for species documents");
    sub->add_flag("--strict-duality", o.strict_duality, "require isomorphic Hom duals on every edge");
    sub->add_option("--seed", o.seed, "seed for randomized checks");
    sub->add_option("--samples", o.samples, "random samples per functor check");
    sub->add_option("--out", o.out, "report destination, - for standard output");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInput;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Report report;
  report.command = command;
  for (int i = 2; i < argc; ++i) report.arguments.push_back(argv[i]);
  const auto start = std::chrono::steady_clock::now();
  int rc = kPass;
  try {
    if (command == "examples") {
      cmd_examples(o, report);
    } else {
      Input in;
      try {
        in = load(o);
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      if (in.algebra) report.dimensions["document"] = in.algebra->algebra.dim();
      if (command == "validate") cmd_validate(o, in, report);
      else if (command == "radical") cmd_radical(o, in, report);
      else if (command == "idempotents") cmd_idempotents(o, in, report);
      else if (command == "species") cmd_species(o, in, report);
      else if (command == "enlarged") cmd_enlarged(o, in, report);
      else if (command == "surject") cmd_surject(o, in, report);
      else if (command == "relations") cmd_relations(o, in, report);
      else if (command == "presentation") cmd_presentation(o, in, report);
      else if (command == "hereditary") cmd_hereditary(o, in, report);
      else if (command == "canonical") cmd_canonical(o, in, report);
      else if (command == "functor") cmd_functor(o, in, report);
      else if (command == "suite") cmd_suite(o, in, report);
    }
    rc = exit_code(report.verdict());
  } catch (const InputError& e) {
    report.add("input", false, e.what());
    rc = kInput;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnsupportedShape) {
      report.add(command, Verdict::Unknown, e.what());
      rc = kUnsupported;
    } else if (is_input_kind(e.kind())) {
      report.add("input", false, e.what());
      rc = kInput;
    } else {
      report.add(command, false, e.what());
      rc = kFail;
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string text = o.format == "json" ? report_json(report) : report_text(report);
  if (o.out == "-") {
    std::cout << text;
  } else {
    try {
      write_file(o.out, text);
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return kInput;
    }
  }
  return rc;
}
