#pragma once

// Ready-made algebras with embedded certificates.

#include <functional>

#include "algkit/random.hpp"
#include "algkit/structure.hpp"

namespace algkit {

/// Builds a presentation from a product rule on basis indices.
AlgebraPresentation make_algebra(const FieldPtr& k, std::vector<std::string> names, Vec unit,
                                 const std::function<Vec(std::size_t, std::size_t)>& product);

/// k[y,z]/(z^2, y^2 - x - z) over k = F2(x); local, not split.
AlgebraPresentation nonsplit_f2x();

/// Lower triangular 3x3 matrices over K = F2(s)[t]/(t^2 + s) with the (3,1)
/// entry replaced by a twisted K-K-bimodule M = K^2; dimension 14 over F2(s).
AlgebraPresentation dr3_triangle();

/// F4[z]/(z^2) over F2.
AlgebraPresentation f4z_dual();

// ----------------------------------------------------------------- species

/// F as a D_target - D_source bimodule for towers D inside the field F over k,
/// acting by multiplication; the right action is precomposed with the
/// twist-th power of Frobenius.
Bimodule field_bimodule(const FieldPtr& k, const FieldPtr& F, const FieldPtr& d_target, const FieldPtr& d_source,
                        std::size_t source, std::size_t target, std::size_t twist = 0);
/// k^n as a k-k bimodule.
Bimodule free_bimodule(const FieldPtr& k, std::size_t n, std::size_t source, std::size_t target);

struct SpeciesExample {
  std::string name;
  Species species;
  std::vector<Relation> relations;
  std::optional<std::size_t> bound;  // nullopt: all paths
};

/// T(S, bound) / <relations> with certificates.
AlgebraPresentation presented_algebra(const SpeciesExample& ex);

/// The triangle species with edges K, K and the twisted corner M, with the
/// relation sigma; it presents dr3_triangle() through dr3_realization().
SpeciesExample dr3_species();
SpeciesRealization dr3_realization();

SpeciesExample a2_species(std::uint64_t p);
/// F_p -> F_{p^2} with edge F_{p^2}.
SpeciesExample bridge_species(std::uint64_t p);
/// 0 -> 1 <- 2 over F_p.
SpeciesExample tree_a3_species(std::uint64_t p);
/// A2 with all rings F4 over k = F4.
SpeciesExample a2_f4_species();
/// Star around an F4 vertex over F2 with legs in both directions.
SpeciesExample star_species();
/// One vertex D, one loop D (twisted on the right), truncated at `bound`.
SpeciesExample loop_species(const FieldPtr& k, const FieldPtr& D, std::size_t bound, std::size_t twist = 0);
/// k<x,y> / (x^2, y^2, xy - yx) truncated at degree 3: k[x,y]/(x^2, y^2).
SpeciesExample commutative_square_species(std::uint64_t p);
/// Linear A3 over Q modulo the square of the arrow ideal.
SpeciesExample a3_radical_square_species();

struct CorpusEntry {
  std::string name;
  SpeciesExample presentation;
  AlgebraPresentation algebra;
};
/// Split algebras over perfect fields (F2, F3, F4, Q) with embedded epsilon.
std::vector<CorpusEntry> perfect_corpus();
/// Tensor algebras of tree species.
std::vector<CorpusEntry> tree_corpus();
/// Small acyclic presentations used for the functor checks.
std::vector<CorpusEntry> functor_corpus();

/// Acyclic species on 2..max_vertices vertices over F2 or F3, towers F_p or
/// F_{p^2}, edges i -> j for i < j of k-dimension at most 2.
Species random_acyclic_species(Rng& rng, std::size_t max_vertices = 5);
/// Canonical relation set on an acyclic species passing validate_canonical_set,
/// where each relation generates a sub-bimodule isomorphic to that of its arrow
/// summand.
std::vector<Relation> random_canonical_relations(const Species& s, Rng& rng);

// ------------------------------------------------------------------ names

/// Algebra examples by name; throws UnknownExample.
AlgebraPresentation example_algebra(const std::string& name);
const std::vector<std::string>& example_names();

}  // namespace algkit
