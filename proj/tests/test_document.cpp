#include <gtest/gtest.h>

#include "algkit/document.hpp"

using namespace algkit;

namespace {

template <class Fn>
ErrorKind kind_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::UnknownExample;
}

void expect_same(const AlgebraPresentation& a, const AlgebraPresentation& b) {
  EXPECT_TRUE(a.field()->same_as(*b.field()));
  EXPECT_EQ(a.names(), b.names());
  EXPECT_EQ(a.unit(), b.unit());
  EXPECT_EQ(a.table(), b.table());
  const auto &c = a.certificates, &d = b.certificates;
  EXPECT_EQ(c.radical, d.radical);
  EXPECT_EQ(c.idempotents, d.idempotents);
  EXPECT_EQ(c.epsilon, d.epsilon);
  ASSERT_EQ(c.blocks.has_value(), d.blocks.has_value());
  if (!c.blocks) return;
  ASSERT_EQ(c.blocks->size(), d.blocks->size());
  for (std::size_t i = 0; i < c.blocks->size(); ++i) {
    EXPECT_TRUE((*c.blocks)[i].tower->same_as(*(*d.blocks)[i].tower));
    EXPECT_EQ((*c.blocks)[i].lift, (*d.blocks)[i].lift);
  }
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

}  // namespace

TEST(AlgebraDocument, GalleryRoundTrip) {
  for (const auto& name : example_names()) {
    const AlgebraDocument doc{name, "note", example_algebra(name)};
    const std::string text = save_algebra(doc);
    const auto back = load_algebra(text);
    EXPECT_EQ(back.name, name);
    EXPECT_EQ(back.note, "note");
    expect_same(doc.algebra, back.algebra);
    EXPECT_EQ(save_algebra(back), text) << name;
    EXPECT_NO_THROW(validate_algebra(back.algebra));
    EXPECT_NO_THROW(BasicStructure::verify(back.algebra));
  }
}

TEST(AlgebraDocument, CorpusRoundTrip) {
  for (const auto& entry : perfect_corpus()) {
    const std::string text = save_algebra({entry.name, "", entry.algebra});
    expect_same(entry.algebra, load_algebra(text).algebra);
    EXPECT_EQ(save_algebra(load_algebra(text)), text);
  }
}

TEST(AlgebraDocument, Errors) {
  const std::string text = save_algebra({"f4z", "", f4z_dual()});
  EXPECT_EQ(kind_of([&] { load_algebra("{ not json"); }), ErrorKind::DocumentError);
  EXPECT_EQ(kind_of([&] { load_algebra(replace(text, "algkit-algebra/1", "algkit-algebra/9")); }),
            ErrorKind::DocumentError);
  const std::string extra = replace(text, "\"basis\"", "\"colour\": 3,\n  \"basis\"");
  EXPECT_EQ(kind_of([&] { load_algebra(extra); }), ErrorKind::DocumentError);
  EXPECT_NO_THROW(load_algebra(extra, false));
  EXPECT_EQ(kind_of([&] { load_algebra(replace(text, "\"unit\"", "\"unity\"")); }), ErrorKind::DocumentError);
  EXPECT_EQ(kind_of([&] { load_algebra(replace(text, "\"0\": \"1\"", "\"0\": \"1 +\"")); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { load_algebra(replace(text, "\"0\": \"1\"", "\"0\": \"q\"")); }), ErrorKind::UnknownSymbol);
  EXPECT_EQ(document_format(text), kAlgebraFormat);
}

TEST(SpeciesDocument, RoundTrip) {
  std::vector<SpeciesExample> all{dr3_species(), commutative_square_species(3), star_species(),
                                  a3_radical_square_species()};
  for (const auto& e : functor_corpus()) all.push_back(e.presentation);
  for (const auto& ex : all) {
    const std::string text = save_species(ex);
    const auto back = load_species(text);
    EXPECT_EQ(back.name, ex.name);
    EXPECT_EQ(back.bound, ex.bound);
    ASSERT_EQ(back.species.edge_count(), ex.species.edge_count());
    for (std::size_t e = 0; e < ex.species.edge_count(); ++e) {
      EXPECT_EQ(back.species.edge(e).left, ex.species.edge(e).left);
      EXPECT_EQ(back.species.edge(e).right, ex.species.edge(e).right);
      EXPECT_EQ(back.species.edge(e).labels, ex.species.edge(e).labels);
    }
    ASSERT_EQ(back.relations.size(), ex.relations.size());
    for (std::size_t r = 0; r < ex.relations.size(); ++r)
      EXPECT_EQ(back.relations[r].components, ex.relations[r].components);
    EXPECT_EQ(save_species(back), text) << ex.name;
    EXPECT_NO_THROW(validate_species(back.species));
  }
}

TEST(ModuleDocument, RoundTrip) {
  Rng rng(2);
  const auto a = dr3_triangle();
  const ModuleDocument doc{"m", random_module(a, rng)};
  const std::string text = save_module(doc);
  const auto back = load_module(text);
  EXPECT_EQ(back.module.dim, doc.module.dim);
  EXPECT_EQ(back.module.action, doc.module.action);
  EXPECT_NO_THROW(verify_module(a, back.module));
  EXPECT_EQ(save_module(back), text);
}

TEST(RepresentationDocument, RoundTrip) {
  Rng rng(4);
  const auto ex = bridge_species(3);
  const RepresentationDocument doc{"r", ex.species.field(), {ex.species.vertex(0), ex.species.vertex(1)},
                                   random_representation(ex.species, rng)};
  const std::string text = save_representation(doc);
  const auto back = load_representation(text);
  EXPECT_EQ(back.representation.dims, doc.representation.dims);
  EXPECT_EQ(back.representation.vertex_action, doc.representation.vertex_action);
  EXPECT_EQ(back.representation.edge_maps, doc.representation.edge_maps);
  EXPECT_NO_THROW(validate_representation(ex.species, back.representation));
  EXPECT_EQ(save_representation(back), text);
}

TEST(MatrixDocument, RoundTripAndFieldCheck) {
  const auto a = dr3_triangle();
  const Matrix& eps = *a.certificates.epsilon;
  EXPECT_EQ(load_matrix(save_matrix(eps), a.field()), eps);
  EXPECT_EQ(kind_of([&] { load_matrix(save_matrix(eps), Field::prime(2)); }), ErrorKind::DocumentError);
}

TEST(Report, VerdictsAndRendering) {
  Report r;
  r.command = "hereditary";
  r.add("a", true);
  r.add("b", Verdict::NotApplicable, "absent");
  EXPECT_EQ(r.verdict(), Verdict::Pass);
  r.add("c", Verdict::Unknown);
  EXPECT_EQ(r.verdict(), Verdict::Unknown);
  r.add("d", false, "why");
  EXPECT_EQ(r.verdict(), Verdict::Fail);
  r.dimensions["algebra"] = 14;
  const std::string j = report_json(r);
  EXPECT_EQ(document_format(j), kReportFormat);
  EXPECT_NE(j.find("\"not-applicable\""), std::string::npos);
  const std::string t = report_text(r);
  EXPECT_NE(t.find("verdict: fail"), std::string::npos);
  EXPECT_NE(t.find("dim algebra = 14"), std::string::npos);
}
