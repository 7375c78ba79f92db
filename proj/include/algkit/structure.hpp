#pragma once

// Maps from tensor algebras of species onto a basic algebra, kernels and their
// relation sets, presentation checks and the instance-wise theorem suites.

#include "algkit/tensor.hpp"

namespace algkit {

/// Images in an algebra of the degree-0 and degree-1 generators of T(S).
struct SpeciesRealization {
  std::vector<std::vector<Vec>> vertex;  // [i][x]: image of the x-th k-basis element of D_i
  std::vector<std::vector<Vec>> edge;    // [e][l]: image of the l-th basis element of M_e
};

/// Extends f to the truncation word by word (a word maps to the product of the
/// images of its letters, last edge leftmost). Checks that f is an algebra map
/// on the vertex part and bimodule map on the edges, then multiplicativity of
/// the extension. Throws EquivarianceFails. Returns a dim(a) x dim(t) matrix.
Matrix universal_extension(const TensorAlgebra& t, const AlgebraPresentation& a, const SpeciesRealization& f);

/// Realization of the quotient species S_m through the kept basis elements.
SpeciesRealization restrict_realization(const SpeciesRealization& f, const SpeciesMap& m, const Species& target);

enum class SurjectionMode { RSplit, SplitEnlarged };
std::string_view to_string(SurjectionMode mode);

struct SurjectionResult {
  SurjectionMode mode = SurjectionMode::RSplit;
  AlgebraSpecies base;       // S_Lambda with its radical representatives
  Species species;           // S_Lambda or the enlarged species
  TensorAlgebra tensor;      // truncated at rl(Lambda)
  SpeciesRealization realization;
  Matrix map;                // dim Lambda x dim T
  Subspace kernel;
  std::size_t loewy_length = 0;
  bool contains_top_power = false;  // J^rl inside the kernel
  bool inside_bound = false;        // kernel inside J^2 (r-split) or J (enlarged)
  bool inside_J2 = false;
};

/// Throws NotSplit when eps fails verify_split, SectionMissing when r-split mode
/// finds no section, NotIsomorphic when the map is not onto and BoundViolation
/// when a kernel bound fails.
SurjectionResult build_surjection(const BasicStructure& s, const Matrix& eps, SurjectionMode mode);

/// A finite generating set of the ideal `kernel` of T, split into relations
/// with fixed endpoints. Generators carrying arrow summands come first, chosen so
/// that their arrow summands generate independent sub-bimodules where possible.
std::vector<Relation> kernel_relations(const TensorAlgebra& t, const Subspace& kernel);
std::vector<Relation> kernel_relations(const SurjectionResult& res);

struct PresentationWitness {
  Quotient quotient;
  Matrix iso;  // dim Lambda x dim quotient
  bool admissible = false;
  bool canonical = false;
  bool strong_canonical = false;
};

/// Builds T/<rels> -> Lambda from f and checks it is a well defined algebra
/// isomorphism. Throws NotIsomorphic with the failing condition.
PresentationWitness verify_presentation(const AlgebraPresentation& a, const TensorAlgebra& t,
                                        const SpeciesRealization& f, const std::vector<Relation>& rels);

/// The map of quotients induced by `map` (T1 -> T2) when it carries ideal1 into
/// ideal2; nullopt when it does not or the induced map is not bijective.
std::optional<Matrix> induced_isomorphism(const Quotient& q1, const Quotient& q2, const Matrix& map);

// ------------------------------------------------------------------ suites

enum class Verdict { Pass, Fail, NotApplicable, Unknown };
std::string_view to_string(Verdict v);

struct Clause {
  std::string name;
  Verdict verdict = Verdict::Unknown;
  std::string detail;
};

struct TheoremReport {
  std::string theorem;
  Verdict verdict = Verdict::Unknown;
  std::vector<Clause> clauses;
};

/// One of theorem_names(): "hereditary_tensor", "canonical_presentation",
/// "tree_corollary", "perfect_r_split". eps is the splitting to use; without it
/// the certificate's epsilon is tried.
TheoremReport theorem_suite(const BasicStructure& s, const std::string& which,
                            const std::optional<Matrix>& eps = std::nullopt);
const std::vector<std::string>& theorem_names();

}  // namespace algkit
