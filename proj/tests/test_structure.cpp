#include <gtest/gtest.h>

#include "algkit/gallery.hpp"

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
  return ErrorKind::DocumentError;
}

Matrix epsilon_of(const AlgebraPresentation& a) { return *a.certificates.epsilon; }

Verdict suite(const AlgebraPresentation& a, const std::string& name) {
  return theorem_suite(BasicStructure::verify(a), name).verdict;
}

}  // namespace

TEST(Surjection, DualNumbersOverF4) {
  const auto a = f4z_dual();
  const auto s = BasicStructure::verify(a);
  const auto res = build_surjection(s, epsilon_of(a), SurjectionMode::RSplit);
  EXPECT_EQ(res.loewy_length, 2u);
  // F4 + F4 z + F4 z^2 over F2, with z^2 in the kernel
  EXPECT_EQ(res.tensor.dim(), 6u);
  EXPECT_EQ(res.kernel.dim(), 2u);
  EXPECT_EQ(res.kernel, res.tensor.J_power(2));
  EXPECT_TRUE(res.inside_J2);
  EXPECT_TRUE(res.inside_bound);
  EXPECT_TRUE(res.contains_top_power);
  EXPECT_TRUE(is_algebra_morphism(res.tensor.algebra(), a, res.map));
  EXPECT_EQ(rank(res.map), 4u);
}

TEST(Surjection, TriangleEnlarged) {
  const auto a = dr3_triangle();
  const auto s = BasicStructure::verify(a);
  EXPECT_EQ(kind_of([&] { build_surjection(s, epsilon_of(a), SurjectionMode::RSplit); }), ErrorKind::SectionMissing);
  const auto res = build_surjection(s, epsilon_of(a), SurjectionMode::SplitEnlarged);
  EXPECT_EQ(res.loewy_length, 3u);
  // 3 vertices of dim 2, three edges of dim 8, one path of dim 8 * 8 / 2
  EXPECT_EQ(res.tensor.dim(), 62u);
  EXPECT_EQ(res.kernel.dim(), 48u);
  EXPECT_TRUE(res.contains_top_power);
  EXPECT_TRUE(res.inside_bound);
  EXPECT_TRUE(res.tensor.J().contains(res.kernel));
  EXPECT_FALSE(res.inside_J2);
  EXPECT_FALSE(res.tensor.J_power(2).contains(res.kernel));
}

TEST(Surjection, TreeHasZeroKernel) {
  for (const auto& entry : tree_corpus()) {
    const auto s = BasicStructure::verify(entry.algebra);
    const auto res = build_surjection(s, epsilon_of(entry.algebra), SurjectionMode::RSplit);
    EXPECT_EQ(res.kernel.dim(), 0u) << entry.name;
    EXPECT_TRUE(kernel_relations(res).empty()) << entry.name;
  }
}

TEST(Surjection, RejectedSplitting) {
  const auto a = nonsplit_f2x();
  const auto s = BasicStructure::verify(a);
  // the certified lift of the quotient is not multiplicative
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < s.quotient_dim(); ++c) cols.push_back(s.lift(unit_vec(a.field(), s.quotient_dim(), c)));
  const Matrix lift = Matrix::from_columns(a.field(), cols, a.dim());
  ASSERT_FALSE(verify_split(s, lift).ok);
  EXPECT_EQ(kind_of([&] { build_surjection(s, lift, SurjectionMode::SplitEnlarged); }), ErrorKind::NotSplit);
}

TEST(UniversalExtension, TriangleRealization) {
  const auto ex = dr3_species();
  const TensorAlgebra t(ex.species, std::nullopt);
  const auto a = dr3_triangle();
  const Matrix f = universal_extension(t, a, dr3_realization());
  EXPECT_EQ(f.rows(), 14u);
  EXPECT_EQ(f.cols(), 16u);
  EXPECT_TRUE(is_algebra_morphism(t.algebra(), a, f));
  EXPECT_EQ(rank(f), 14u);
  EXPECT_TRUE(is_zero_vec(f.apply(t.relation_vector(ex.relations[0]))));
  auto broken = dr3_realization();
  std::swap(broken.edge[0][0], broken.edge[0][1]);
  EXPECT_EQ(kind_of([&] { universal_extension(t, a, broken); }), ErrorKind::EquivarianceFails);
}

TEST(KernelRelations, DualNumbersGiveOneSquare) {
  const auto a = f4z_dual();
  const auto res = build_surjection(BasicStructure::verify(a), epsilon_of(a), SurjectionMode::RSplit);
  const auto rels = kernel_relations(res);
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_FALSE(rels[0].arrow_part().has_value());
  ASSERT_EQ(rels[0].components.size(), 1u);
  EXPECT_EQ(rels[0].components[0].first, (std::vector<std::size_t>{0, 0}));
  const auto w = verify_presentation(a, res.tensor, res.realization, rels);
  EXPECT_EQ(w.quotient.algebra.dim(), 4u);
  EXPECT_TRUE(w.admissible);
  EXPECT_FALSE(w.canonical);
}

TEST(KernelRelations, ZeroKernel) {
  const TensorAlgebra t(a2_species(3).species, std::nullopt);
  EXPECT_TRUE(kernel_relations(t, Subspace(t.algebra().field(), t.dim())).empty());
}

TEST(KernelRelations, RegenerateTheIdeal) {
  const auto ex = commutative_square_species(2);
  const TensorAlgebra t(ex.species, ex.bound);
  const auto q = quotient_by_relations(t, ex.relations);
  const auto rels = kernel_relations(t, q.ideal);
  EXPECT_EQ(quotient_by_relations(t, rels).ideal, q.ideal);
}

TEST(KernelRelations, TriangleEnlargedPipeline) {
  const auto a = dr3_triangle();
  const auto res = build_surjection(BasicStructure::verify(a), epsilon_of(a), SurjectionMode::SplitEnlarged);
  const auto rels = kernel_relations(res);
  EXPECT_TRUE(validate_canonical_set(res.species, rels).ok);
  const auto w = verify_presentation(a, res.tensor, res.realization, rels);
  EXPECT_TRUE(w.canonical);
  EXPECT_FALSE(w.admissible);
  const auto red = reduce_to_strong_canonical(res.species, rels);
  ASSERT_FALSE(red.relations.empty());
  for (const auto& r : red.relations) EXPECT_TRUE(is_strong_canonical(r));
  const TensorAlgebra tm(red.species, std::nullopt);
  const auto wm = verify_presentation(a, tm, restrict_realization(res.realization, red.map, red.species), red.relations);
  EXPECT_TRUE(wm.strong_canonical);
  EXPECT_EQ(wm.quotient.algebra.dim(), 14u);
}

TEST(Presentation, TriangleSigma) {
  const auto ex = dr3_species();
  const TensorAlgebra t(ex.species, std::nullopt);
  const auto w = verify_presentation(dr3_triangle(), t, dr3_realization(), ex.relations);
  EXPECT_TRUE(w.canonical);
  EXPECT_TRUE(w.strong_canonical);
  EXPECT_FALSE(w.admissible);
  EXPECT_EQ(w.iso.rows(), 14u);
  EXPECT_EQ(w.iso.cols(), 14u);
  EXPECT_TRUE(is_algebra_morphism(w.quotient.algebra, dr3_triangle(), w.iso));
}

TEST(Presentation, Failures) {
  const auto ex = dr3_species();
  const TensorAlgebra t(ex.species, std::nullopt);
  const auto a = dr3_triangle();
  try {
    verify_presentation(a, t, dr3_realization(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIsomorphic);
    EXPECT_NE(std::string(e.what()).find("16"), std::string::npos);
  }
  const auto k = ex.species.field();
  const Relation corner{2, 0, {{{2}, unit_vec(k, 4, 0)}}};
  EXPECT_EQ(kind_of([&] { verify_presentation(a, t, dr3_realization(), {corner}); }), ErrorKind::NotIsomorphic);
}

TEST(Presentation, InducedIsomorphism) {
  const auto ex = dr3_species();
  const TensorAlgebra t(ex.species, std::nullopt);
  const auto q = quotient_by_relations(t, ex.relations);
  const auto id = Matrix::identity(t.algebra().field(), t.dim());
  EXPECT_TRUE(induced_isomorphism(q, q, id).has_value());
  const auto full = quotient_by_relations(t, {});
  // the identity does not carry <sigma> into the zero ideal
  EXPECT_FALSE(induced_isomorphism(q, full, id).has_value());
}

TEST(Suites, Names) {
  EXPECT_EQ(theorem_names().size(), 4u);
  const auto s = BasicStructure::verify(f4z_dual());
  EXPECT_EQ(kind_of([&] { theorem_suite(s, "no-such-check"); }), ErrorKind::UnknownExample);
  EXPECT_EQ(to_string(Verdict::NotApplicable), "not-applicable");
}

TEST(Suites, HereditaryTensor) {
  EXPECT_EQ(suite(presented_algebra(a2_species(2)), "hereditary_tensor"), Verdict::Pass);
  EXPECT_EQ(suite(f4z_dual(), "hereditary_tensor"), Verdict::Pass);
  // split but not r-split
  EXPECT_EQ(suite(dr3_triangle(), "hereditary_tensor"), Verdict::NotApplicable);
  EXPECT_EQ(suite(nonsplit_f2x(), "hereditary_tensor"), Verdict::NotApplicable);
}

TEST(Suites, CanonicalPresentationOnTriangle) {
  const auto rep = theorem_suite(BasicStructure::verify(dr3_triangle()), "canonical_presentation");
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  for (const auto& c : rep.clauses) EXPECT_EQ(c.verdict, Verdict::Pass) << c.name << ": " << c.detail;
  EXPECT_EQ(rep.clauses.back().name, "strong_canonical_presentation");
}

TEST(Suites, TreeCorollary) {
  for (const auto& entry : tree_corpus()) EXPECT_EQ(suite(entry.algebra, "tree_corollary"), Verdict::Pass) << entry.name;
  EXPECT_EQ(suite(dr3_triangle(), "tree_corollary"), Verdict::NotApplicable);
  EXPECT_EQ(suite(f4z_dual(), "tree_corollary"), Verdict::NotApplicable);
}

TEST(Suites, PerfectRSplit) {
  EXPECT_EQ(suite(nonsplit_f2x(), "perfect_r_split"), Verdict::NotApplicable);
  EXPECT_EQ(suite(dr3_triangle(), "perfect_r_split"), Verdict::NotApplicable);
  EXPECT_EQ(suite(f4z_dual(), "perfect_r_split"), Verdict::Pass);
  auto bare = f4z_dual();
  bare.certificates.epsilon.reset();
  const auto rep = theorem_suite(BasicStructure::verify(bare), "perfect_r_split");
  EXPECT_EQ(rep.verdict, Verdict::Unknown);
}
