#pragma once

// Truncated tensor algebras of species, quotients by relations, modules and
// representations with the functors between them, projectivity and the
// hereditary test.

#include "algkit/random.hpp"
#include "algkit/species.hpp"

namespace algkit {

/// T(S) truncated at a path-length bound, as structure constants on the word
/// basis: vertex tower bases first, then path modules in path order. The
/// presentation carries certificates (radical J, vertex towers, vertex units,
/// vertex inclusion as epsilon).
class TensorAlgebra {
 public:
  TensorAlgebra() = default;
  /// nullopt bound: all paths (acyclic species only, CyclicWithoutBound).
  TensorAlgebra(const Species& s, std::optional<std::size_t> bound);

  const Species& species() const { return ps_.species(); }
  const PathSystem& paths() const { return ps_; }
  std::size_t bound() const { return ps_.bound(); }
  bool full() const { return full_; }
  const AlgebraPresentation& algebra() const { return alg_; }
  std::size_t dim() const { return alg_.dim(); }
  std::size_t degree(std::size_t i) const { return degree_[i]; }
  /// Span of the words of degree >= 1.
  const Subspace& J() const { return J_; }
  /// Span of the words of degree >= n.
  Subspace J_power(std::size_t n) const;

  std::size_t vertex_offset(std::size_t i) const { return vertex_offset_[i]; }
  std::size_t path_offset(std::size_t p) const { return path_offset_[p]; }
  Vec vertex_unit(std::size_t i) const;
  Vec vertex_element(std::size_t i, const Elem& d) const;
  /// Element of the summand of path p with the given path-module coordinates.
  Vec path_vector(std::size_t p, const Vec& coords) const;
  /// Throws RelationOutOfBound or NotHomogeneousEndpoints.
  Vec relation_vector(const Relation& r) const;
  /// Splits x in J into its nonzero pieces e_b x e_a.
  std::vector<Relation> decompose(const Vec& x) const;

 private:
  PathSystem ps_;
  bool full_ = false;
  AlgebraPresentation alg_;
  std::vector<std::size_t> degree_;
  std::vector<std::size_t> vertex_offset_, path_offset_;
  Subspace J_;
};

struct Quotient {
  AlgebraPresentation algebra;
  Subspace ideal;
  std::vector<std::size_t> basis;  // surviving word indices
  bool sound = false;
  bool inside_J2 = false;
  /// Least n >= 2 with J^n inside the ideal.
  std::optional<std::size_t> contains_J_power;

  bool admissible() const { return inside_J2 && contains_J_power.has_value(); }
  Vec project(const Vec& x) const { return ideal.quotient_coords(x); }
  Vec lift(const Vec& q) const;
};

Quotient quotient_by_ideal(const TensorAlgebra& t, const Subspace& ideal);
Quotient quotient_by_relations(const TensorAlgebra& t, const std::vector<Relation>& rels);

// ---------------------------------------------------------------- modules

/// Left module: one k-matrix per algebra basis element.
struct Module {
  FieldPtr field;
  std::size_t dim = 0;
  std::vector<Matrix> action;

  Matrix act(const Vec& x) const;
};

/// Throws NotAModule unless the action is unital and multiplicative.
void verify_module(const AlgebraPresentation& a, const Module& m);
Module regular_module(const AlgebraPresentation& a);
/// Restriction to an invariant subspace (NotAModule otherwise), in its RREF basis.
Module submodule(const Module& m, const Subspace& sub);
/// Submodule generated by the vectors.
Module generated_submodule(const Module& m, const std::vector<Vec>& gens);
/// Cyclic submodule of the regular module with a random generator.
Module random_module(const AlgebraPresentation& a, Rng& rng);
/// P invertible with a.action[u] * P = P * b.action[u] for all u.
bool is_module_isomorphism(const Module& a, const Module& b, const Matrix& P);

// --------------------------------------------------------- representations

struct Representation {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Matrix>> vertex_action;  // [i][x], dims[i] square
  std::vector<Matrix> edge_maps;                   // [e]: dims[target] x dim(M_e (x) V_source)
};

/// M_e (x)_{D_i} V_i.
BalancedTensor edge_tensor(const Species& s, std::size_t e, const Representation& r);
/// D_i-module axioms at each vertex (NotAModule) and D_j-linearity of each edge
/// map (EquivarianceFails).
void validate_representation(const Species& s, const Representation& r);
/// V_i = D_i^{n_i} with n_i <= max_mult, random D_j-linear edge maps.
Representation random_representation(const Species& s, Rng& rng, std::size_t max_mult = 2);

/// The functor G. With a quotient, m is a module over q.algebra; otherwise over t.
Representation module_to_rep(const TensorAlgebra& t, const Module& m, const Quotient* q = nullptr);
/// The functor F; verifies the result is a module (NotAModule).
Module rep_to_module(const TensorAlgebra& t, const Representation& r, const Quotient* q = nullptr);
/// Columns: the bases of the V_i chosen by G, vertex after vertex.
Matrix vertex_basis_change(const TensorAlgebra& t, const Module& m, const Quotient* q = nullptr);
bool rep_satisfies_relations(const TensorAlgebra& t, const Representation& r, const std::vector<Relation>& rels);
/// Whether every element of the ideal acts as zero on F(r).
bool annihilated_by(const TensorAlgebra& t, const Representation& r, const Subspace& ideal);

// ------------------------------------------------------------ projectives

Module projective_module(const BasicStructure& s, std::size_t i);
Module radical_of(const BasicStructure& s, const Module& m);
/// Multiplicity of each simple in m / rm.
std::vector<std::size_t> top_multiplicities(const BasicStructure& s, const Module& m);

struct ProjectivityVerdict {
  bool projective = false;
  std::vector<std::size_t> multiplicity;  // copies of P_j in the cover
  std::size_t cover_dim = 0;
  std::size_t module_dim = 0;
};
/// Compares m with the projective cover built from its top.
ProjectivityVerdict is_projective(const BasicStructure& s, const Module& m);

struct HereditaryReport {
  bool hereditary = true;
  std::vector<ProjectivityVerdict> radicals;  // r e_i per vertex
};
HereditaryReport hereditary_check(const BasicStructure& s);

// ------------------------------------------------------ species morphisms

/// Edge-wise surjections S -> S' between species on the same vertices.
struct SpeciesMap {
  std::vector<std::optional<std::size_t>> edge;  // old edge -> new edge
  std::vector<Matrix> project;                   // per old edge: new dim x old dim
  std::vector<std::vector<std::size_t>> kept;    // old basis indices lifting the new basis

  static SpeciesMap identity(const Species& s);
  SpeciesMap then(const SpeciesMap& next) const;
};

/// Matrix of the induced algebra map T(S) -> T(S') (both truncated alike).
Matrix tensor_map(const TensorAlgebra& from, const TensorAlgebra& to, const SpeciesMap& f);
Relation map_relation(const PathSystem& from, const PathSystem& to, const SpeciesMap& f, const Relation& r);

struct StrongReduction {
  Species species;
  std::vector<Relation> relations;
  SpeciesMap map;
  std::size_t eliminated = 0;
  std::size_t dim_before = 0;
  std::size_t dim_after = 0;

  bool witness() const { return dim_before == dim_after; }
};
/// Quotients every edge carrying a pure arrow relation by the sub-bimodule it
/// generates, until only relations with higher-degree summands remain.
/// Throws NotCanonicalSet; needs an acyclic species.
StrongReduction reduce_to_strong_canonical(const Species& s, const std::vector<Relation>& rels);

}  // namespace algkit
