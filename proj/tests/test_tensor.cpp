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

bool same_rep(const Representation& a, const Representation& b) {
  return a.dims == b.dims && a.vertex_action == b.vertex_action && a.edge_maps == b.edge_maps;
}

// Vertices 0, 1, 2 over F_p with arrows 0 -> 1, 1 -> 2 and a 2-dimensional corner 0 -> 2.
Species corner_species(std::uint64_t p) {
  const auto k = Field::prime(p);
  return Species(k, {k, k, k}, {free_bimodule(k, 1, 0, 1), free_bimodule(k, 1, 1, 2), free_bimodule(k, 2, 0, 2)});
}

}  // namespace

TEST(TensorAlgebra, Dimensions) {
  EXPECT_EQ(TensorAlgebra(a2_species(2).species, std::nullopt).dim(), 3u);
  // F3 + F9 + F9 over F3
  EXPECT_EQ(TensorAlgebra(bridge_species(3).species, std::nullopt).dim(), 5u);
  const auto k = Field::prime(2);
  const TensorAlgebra loop(loop_species(k, k, 3).species, 3);
  EXPECT_EQ(loop.dim(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(loop.degree(i), i);
  EXPECT_EQ(loop.J().dim(), 3u);
  EXPECT_EQ(loop.J_power(2).dim(), 2u);
  EXPECT_EQ(loop.J_power(4).dim(), 0u);
  EXPECT_FALSE(loop.full());
  // 6 + 8 + 2
  EXPECT_EQ(TensorAlgebra(dr3_species().species, std::nullopt).dim(), 16u);
  EXPECT_EQ(kind_of([&] { TensorAlgebra(loop_species(k, k, 3).species, std::nullopt); }),
            ErrorKind::CyclicWithoutBound);
}

TEST(TensorAlgebra, ProductsOnA2) {
  // basis e0, e1, a with a: 0 -> 1
  const TensorAlgebra t(a2_species(2).species, std::nullopt);
  const auto& a = t.algebra();
  const Vec e0 = a.basis(0), e1 = a.basis(1), x = a.basis(2), z = a.zero();
  EXPECT_EQ(a.mul(e1, x), x);
  EXPECT_EQ(a.mul(x, e0), x);
  EXPECT_EQ(a.mul(e0, x), z);
  EXPECT_EQ(a.mul(x, e1), z);
  EXPECT_EQ(a.mul(x, x), z);
  EXPECT_EQ(a.mul(e0, e0), e0);
  EXPECT_EQ(a.mul(e0, e1), z);
  EXPECT_EQ(a.unit(), add(e0, e1));
}

TEST(TensorAlgebra, WordConcatenationInLinearA3) {
  const auto ex = a3_radical_square_species();
  const TensorAlgebra t(ex.species, std::nullopt);
  const auto& ps = t.paths();
  const auto k = ex.species.field();
  const Vec a = t.path_vector(*ps.find({0}), unit_vec(k, 1, 0));
  const Vec b = t.path_vector(*ps.find({1}), unit_vec(k, 1, 0));
  const Vec ba = t.path_vector(*ps.find({0, 1}), unit_vec(k, 1, 0));
  EXPECT_EQ(t.algebra().mul(b, a), ba);
  EXPECT_TRUE(is_zero_vec(t.algebra().mul(a, b)));
  EXPECT_EQ(t.degree(t.dim() - 1), 2u);
}

TEST(TensorAlgebra, ValidatesAndCertifies) {
  for (const auto& ex : {dr3_species(), bridge_species(3), star_species(), a2_f4_species()}) {
    const TensorAlgebra t(ex.species, ex.bound);
    EXPECT_NO_THROW(validate_algebra(t.algebra())) << ex.name;
    const auto s = BasicStructure::verify(t.algebra());
    EXPECT_EQ(s.radical(), t.J()) << ex.name;
    EXPECT_EQ(s.block_count(), ex.species.vertex_count());
  }
}

TEST(TensorAlgebra, RelationVectorErrors) {
  const auto k = Field::prime(2);
  const TensorAlgebra loop(loop_species(k, k, 2).species, 2);
  const Relation deep{0, 0, {{{0, 0, 0}, unit_vec(k, 1, 0)}}};
  EXPECT_EQ(kind_of([&] { loop.relation_vector(deep); }), ErrorKind::RelationOutOfBound);
}

TEST(Quotient, TriangleRelation) {
  const auto ex = dr3_species();
  const TensorAlgebra t(ex.species, std::nullopt);
  const auto q = quotient_by_relations(t, ex.relations);
  EXPECT_EQ(q.basis.size(), 14u);
  EXPECT_EQ(q.algebra.dim(), 14u);
  EXPECT_EQ(q.ideal.dim(), 2u);
  EXPECT_TRUE(q.sound);
  EXPECT_FALSE(q.inside_J2);
  EXPECT_FALSE(q.admissible());
  EXPECT_NO_THROW(validate_algebra(q.algebra));
  EXPECT_EQ(quotient_by_relations(t, {}).algebra.dim(), 16u);
  EXPECT_EQ(presented_algebra(ex).dim(), 14u);
}

TEST(Quotient, AdmissibleSquare) {
  const auto ex = commutative_square_species(3);
  const TensorAlgebra t(ex.species, ex.bound);
  const auto q = quotient_by_relations(t, ex.relations);
  // k[x,y]/(x^2, y^2): 1, x, y, xy
  EXPECT_EQ(q.algebra.dim(), 4u);
  EXPECT_TRUE(q.inside_J2);
  EXPECT_EQ(q.contains_J_power, 3u);
  EXPECT_TRUE(q.admissible());
  EXPECT_TRUE(q.sound);
  EXPECT_TRUE(q.algebra.is_commutative());
}

TEST(Quotient, SoundnessOfTruncations) {
  // in the degree-3 truncation of k[x] a quotient is sound once x^3 lies in the ideal
  const auto k = Field::prime(3);
  const TensorAlgebra t(loop_species(k, k, 3).species, 3);
  const auto q = quotient_by_relations(t, {Relation{0, 0, {{{0, 0}, unit_vec(k, 1, 0)}}}});
  EXPECT_EQ(q.algebra.dim(), 2u);
  EXPECT_TRUE(q.sound);
  EXPECT_EQ(q.contains_J_power, 2u);
  const auto q3 = quotient_by_relations(t, {Relation{0, 0, {{{0, 0, 0}, unit_vec(k, 1, 0)}}}});
  EXPECT_EQ(q3.algebra.dim(), 3u);
  EXPECT_TRUE(q3.sound);
  EXPECT_EQ(q3.contains_J_power, 3u);
  const auto none = quotient_by_relations(t, {});
  EXPECT_FALSE(none.sound);
  EXPECT_FALSE(none.contains_J_power.has_value());
}

TEST(Quotient, NotAnIdeal) {
  const TensorAlgebra t(a2_species(2).species, std::nullopt);
  const auto bad = Subspace::span(t.algebra().field(), 3, {t.algebra().basis(0)});
  EXPECT_EQ(kind_of([&] { quotient_by_ideal(t, bad); }), ErrorKind::DimensionMismatch);
}

TEST(Modules, RegularAndGenerated) {
  const auto a = dr3_triangle();
  const auto reg = regular_module(a);
  EXPECT_NO_THROW(verify_module(a, reg));
  EXPECT_EQ(generated_submodule(reg, {a.unit()}).dim, a.dim());
  Rng rng(5);
  for (int i = 0; i < 5; ++i) EXPECT_NO_THROW(verify_module(a, random_module(a, rng)));
  Module broken = reg;
  broken.action[0] = Matrix::identity(a.field(), a.dim());
  broken.action[1] = Matrix::identity(a.field(), a.dim());
  EXPECT_EQ(kind_of([&] { verify_module(a, broken); }), ErrorKind::NotAModule);
}

TEST(Representations, EdgeMapMustBeLinearOverTheTarget) {
  const auto ex = bridge_species(3);
  const auto& s = ex.species;
  const auto k = s.field();
  Representation r;
  r.dims = {1, 2};
  r.vertex_action = {{Matrix::identity(k, 1)}, {tower_mult(s.tower(1), 0, k), tower_mult(s.tower(1), 1, k)}};
  // a rank-one map F9 -> F9 is never F9-linear
  Matrix m(k, 2, 2);
  m.at(0, 0) = k->one();
  r.edge_maps = {m};
  EXPECT_EQ(kind_of([&] { validate_representation(s, r); }), ErrorKind::EquivarianceFails);
  r.edge_maps = {tower_mult(s.tower(1), 1, k)};
  EXPECT_NO_THROW(validate_representation(s, r));
}

TEST(Functors, RoundTripsOnCorpus) {
  Rng rng(17);
  for (const auto& entry : functor_corpus()) {
    const auto& ex = entry.presentation;
    const TensorAlgebra t(ex.species, ex.bound);
    const auto q = quotient_by_relations(t, ex.relations);
    for (int i = 0; i < 6; ++i) {
      const auto m = random_module(q.algebra, rng);
      const auto g = module_to_rep(t, m, &q);
      EXPECT_NO_THROW(validate_representation(ex.species, g));
      EXPECT_TRUE(rep_satisfies_relations(t, g, ex.relations)) << entry.name;
      const auto fg = rep_to_module(t, g, &q);
      EXPECT_TRUE(is_module_isomorphism(m, fg, vertex_basis_change(t, m, &q))) << entry.name;

      const auto r = random_representation(ex.species, rng);
      const auto fr = rep_to_module(t, r);
      EXPECT_TRUE(same_rep(module_to_rep(t, fr), r)) << entry.name;
      EXPECT_EQ(rep_satisfies_relations(t, r, ex.relations), annihilated_by(t, r, q.ideal)) << entry.name;
    }
  }
}

TEST(Functors, RelationSatisfactionMatchesAnnihilation) {
  // on A3 modulo the path: a representation satisfies the relation iff the composite vanishes
  const auto ex = a3_radical_square_species();
  const TensorAlgebra t(ex.species, std::nullopt);
  const auto q = quotient_by_relations(t, ex.relations);
  const auto k = ex.species.field();
  Representation r;
  r.dims = {1, 1, 1};
  r.vertex_action = {{Matrix::identity(k, 1)}, {Matrix::identity(k, 1)}, {Matrix::identity(k, 1)}};
  r.edge_maps = {Matrix::identity(k, 1), Matrix::identity(k, 1)};
  EXPECT_FALSE(rep_satisfies_relations(t, r, ex.relations));
  EXPECT_FALSE(annihilated_by(t, r, q.ideal));
  r.edge_maps[1] = Matrix(k, 1, 1);
  EXPECT_TRUE(rep_satisfies_relations(t, r, ex.relations));
  EXPECT_TRUE(annihilated_by(t, r, q.ideal));
  EXPECT_NO_THROW(rep_to_module(t, r, &q));
}

TEST(Projectives, NonsplitRadicalIsNotProjective) {
  const auto s = BasicStructure::verify(nonsplit_f2x());
  const auto rad = radical_of(s, regular_module(s.algebra()));
  EXPECT_EQ(rad.dim, 2u);
  const auto v = is_projective(s, rad);
  EXPECT_FALSE(v.projective);
  EXPECT_EQ(v.module_dim, 2u);
  EXPECT_EQ(v.cover_dim, 4u);
  EXPECT_FALSE(hereditary_check(s).hereditary);
}

TEST(Projectives, IndecomposableProjectivesOfA2) {
  const auto s = BasicStructure::verify(TensorAlgebra(a2_species(2).species, std::nullopt).algebra());
  EXPECT_EQ(projective_module(s, 0).dim, 2u);
  EXPECT_EQ(projective_module(s, 1).dim, 1u);
  EXPECT_EQ(top_multiplicities(s, regular_module(s.algebra())), (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(is_projective(s, projective_module(s, 0)).projective);
}

TEST(Hereditary, Examples) {
  EXPECT_TRUE(hereditary_check(BasicStructure::verify(dr3_triangle())).hereditary);
  EXPECT_FALSE(hereditary_check(BasicStructure::verify(f4z_dual())).hereditary);
  EXPECT_TRUE(hereditary_check(BasicStructure::verify(presented_algebra(bridge_species(3)))).hereditary);
  EXPECT_FALSE(hereditary_check(BasicStructure::verify(presented_algebra(a3_radical_square_species()))).hereditary);
}

TEST(Hereditary, RadicalMultiplicitiesOfTensorAlgebras) {
  Rng rng(23);
  for (int i = 0; i < 5; ++i) {
    const auto s = random_acyclic_species(rng);
    const TensorAlgebra t(s, std::nullopt);
    const auto h = hereditary_check(BasicStructure::verify(t.algebra()));
    EXPECT_TRUE(h.hereditary);
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
      std::vector<std::size_t> expect(s.vertex_count(), 0);
      for (const auto& e : s.edges())
        if (e.source == v) expect[e.target] = e.dim() / s.tower(e.target).dim();
      EXPECT_EQ(h.radicals[v].multiplicity, expect);
    }
  }
}

TEST(Hereditary, MismatchedAnnihilatorsBreakTheQuotient) {
  // g1 on an untwisted F9 edge, g2 on a parallel path through a Frobenius-twisted
  // edge: <g1 + g2> is all of M (+) path module, so the relation kills the path
  const auto k = Field::prime(3);
  const auto F9 = Field::extension(k, "w", "w^2 + 1");
  const Species s(k, {F9, F9, F9},
                  {field_bimodule(k, F9, F9, F9, 0, 1), field_bimodule(k, F9, F9, F9, 0, 2),
                   field_bimodule(k, F9, F9, F9, 2, 1, 1)});
  const PathSystem ps(s, std::nullopt);
  const auto path = *ps.find({1, 2});
  const Relation sigma = normalize_relation(
      ps, {0, 1, {{{0}, unit_vec(k, 2, 0)}, {{1, 2}, ps.reduce(path, std::vector<std::size_t>{0, 0})}}});
  ASSERT_TRUE(validate_canonical_set(s, {sigma}).ok);
  const TensorAlgebra t(s, std::nullopt);
  const auto q = quotient_by_relations(t, {sigma});
  EXPECT_EQ(q.ideal.dim(), 4u);
  EXPECT_EQ(s.generated(0, {unit_vec(k, 2, 0)}).dim(), 2u);
  const auto h = hereditary_check(BasicStructure::verify(q.algebra));
  EXPECT_FALSE(h.hereditary);
  // r e_0 is the edge 0 -> 2 alone, its cover P_2 = D_2 (+) M_{2->1}
  EXPECT_EQ(h.radicals[0].module_dim, 2u);
  EXPECT_EQ(h.radicals[0].cover_dim, 4u);
}

TEST(Hereditary, CanonicalSetsWithMatchingAnnihilators) {
  Rng rng(31);
  for (int i = 0; i < 6; ++i) {
    const auto s = random_acyclic_species(rng);
    const auto rels = random_canonical_relations(s, rng);
    const TensorAlgebra t(s, std::nullopt);
    const auto q = quotient_by_relations(t, rels);
    EXPECT_TRUE(hereditary_check(BasicStructure::verify(q.algebra)).hereditary);
  }
}

TEST(StrongReduction, WholeEdgeDeletion) {
  const auto ex = a2_species(2);
  const auto k = ex.species.field();
  const auto red = reduce_to_strong_canonical(ex.species, {Relation{0, 1, {{{0}, unit_vec(k, 1, 0)}}}});
  EXPECT_EQ(red.species.edge_count(), 0u);
  EXPECT_TRUE(red.relations.empty());
  EXPECT_EQ(red.eliminated, 1u);
  EXPECT_EQ(red.dim_before, 2u);
  EXPECT_TRUE(red.witness());
}

TEST(StrongReduction, StrongSetUnchanged) {
  const auto ex = dr3_species();
  const auto red = reduce_to_strong_canonical(ex.species, ex.relations);
  EXPECT_EQ(red.eliminated, 0u);
  ASSERT_EQ(red.relations.size(), 1u);
  EXPECT_TRUE(is_strong_canonical(red.relations[0]));
  EXPECT_EQ(red.dim_after, 14u);
}

TEST(StrongReduction, MixedSet) {
  const auto s = corner_species(3);
  const auto k = s.field();
  const PathSystem ps(s, std::nullopt);
  const Relation pure{0, 2, {{{2}, unit_vec(k, 2, 0)}}};
  const Relation strong{0, 2, {{{2}, unit_vec(k, 2, 1)}, {{0, 1}, scale(-k->one(), unit_vec(k, 1, 0))}}};
  ASSERT_TRUE(validate_canonical_set(s, {pure, strong}).ok);
  const auto red = reduce_to_strong_canonical(s, {pure, strong});
  EXPECT_EQ(red.eliminated, 1u);
  ASSERT_EQ(red.relations.size(), 1u);
  EXPECT_TRUE(is_strong_canonical(red.relations[0]));
  EXPECT_EQ(red.species.edge(*red.map.edge[2]).dim(), 1u);
  // 3 vertices + 2 arrows + 2 corner + 1 path, minus the two relations
  EXPECT_EQ(red.dim_before, 6u);
  EXPECT_TRUE(red.witness());
  const TensorAlgebra t1(s, std::nullopt), t2(red.species, std::nullopt);
  const auto q1 = quotient_by_relations(t1, {pure, strong});
  const auto q2 = quotient_by_relations(t2, red.relations);
  EXPECT_TRUE(induced_isomorphism(q1, q2, tensor_map(t1, t2, red.map)).has_value());
}

TEST(StrongReduction, RejectsNonCanonical) {
  const auto s = corner_species(2);
  const auto k = s.field();
  const Relation pure2{0, 2, {{{0, 1}, unit_vec(k, 1, 0)}}};
  EXPECT_EQ(kind_of([&] { reduce_to_strong_canonical(s, {pure2}); }), ErrorKind::NotCanonicalSet);
}

TEST(SpeciesMaps, TensorMapIsAlgebraMorphism) {
  const auto s = corner_species(2);
  const auto k = s.field();
  const auto sub = s.generated(2, {unit_vec(k, 2, 0)});
  const auto eq = quotient_edge(s, 2, sub);
  std::vector<Bimodule> edges = s.edges();
  edges[2] = eq.bimodule;
  const Species target(k, {k, k, k}, edges);
  SpeciesMap f = SpeciesMap::identity(s);
  f.project[2] = eq.project;
  f.kept[2] = eq.kept;
  const TensorAlgebra t1(s, std::nullopt), t2(target, std::nullopt);
  const Matrix m = tensor_map(t1, t2, f);
  EXPECT_EQ(m.rows(), 7u);
  EXPECT_EQ(m.cols(), 8u);
  EXPECT_TRUE(is_algebra_morphism(t1.algebra(), t2.algebra(), m));
  EXPECT_EQ(rank(m), 7u);
}
