#pragma once

// Species (modulated quivers): vertex field towers over a common ground field k,
// edge bimodules with explicit action matrices, tensor words along paths and
// relations expressed in those words.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algkit/algebra.hpp"

namespace algkit {

/// A D_target - D_source bimodule, finite-dimensional over k. left[x] is the
/// matrix of m -> d_x m for the k-basis d_x of D_target; right[y] the matrix of
/// m -> m d_y for the k-basis of D_source.
struct Bimodule {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::string> labels;
  std::vector<Matrix> left;
  std::vector<Matrix> right;

  std::size_t dim() const { return labels.size(); }
};

/// Sum of coefficient-weighted action matrices.
Matrix action_of(const std::vector<Matrix>& mats, const Vec& coords, const FieldPtr& k, std::size_t n);
/// Multiplication by the x-th k-basis element of a tower, on tower coordinates.
Matrix tower_mult(const TowerOverK& t, std::size_t x, const FieldPtr& k);

class Species {
 public:
  Species() = default;
  /// Checks shapes only; see validate_species for the axioms.
  Species(FieldPtr k, std::vector<FieldPtr> towers, std::vector<Bimodule> edges);

  const FieldPtr& field() const { return k_; }
  std::size_t vertex_count() const { return towers_.size(); }
  const FieldPtr& vertex(std::size_t i) const { return towers_[i]; }
  const TowerOverK& tower(std::size_t i) const { return tower_data_[i]; }
  std::size_t edge_count() const { return edges_.size(); }
  const Bimodule& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<Bimodule>& edges() const { return edges_; }
  std::optional<std::size_t> edge_between(std::size_t source, std::size_t target) const;

  Matrix left_action(std::size_t e, const Elem& d) const;
  Matrix right_action(std::size_t e, const Elem& d) const;
  /// Sub-bimodule of edge e generated by v.
  Subspace generated(std::size_t e, const std::vector<Vec>& gens) const;

 private:
  FieldPtr k_;
  std::vector<FieldPtr> towers_;
  std::vector<TowerOverK> tower_data_;
  std::vector<Bimodule> edges_;
};

/// Unital, associative, commuting actions on every edge; with strict_duality the
/// two Hom-duals of each edge must be isomorphic bimodules.
/// Throws ActionAxiomFails or DualityFails.
void validate_species(const Species& s, bool strict_duality = false);

// ------------------------------------------------------------------ quivers

struct Quiver {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  // (source, target)

  std::optional<std::size_t> arrow(std::size_t source, std::size_t target) const;
};

Quiver underlying(const Species& s);
bool is_acyclic(const Quiver& q);
/// Length of a longest path, nullopt when there is an oriented cycle.
std::optional<std::size_t> longest_path(const Quiver& q);
/// Connected and without cycles as an undirected graph (loops count as cycles).
bool is_tree_graph(const Quiver& q);
/// All paths i ~> j as arrow sequences (first arrow first), by depth-first search.
std::vector<std::vector<std::size_t>> enumerate_paths(const Quiver& q, std::size_t i, std::size_t j,
                                                      std::size_t max_len);

/// The arrow i -> j together with all paths i ~> j of length >= 2.
struct CanonicalQuiver {
  std::size_t arrow = 0;
  std::vector<std::vector<std::size_t>> paths;
  Quiver quiver;  // same vertices, arrows restricted to those on the paths

  bool trivial() const { return paths.empty(); }
};
/// Throws ArrowMissing; requires an acyclic quiver (CyclicWithoutBound).
CanonicalQuiver canonical_quiver(const Quiver& q, std::size_t source, std::size_t target);

// ----------------------------------------------------------- tensor words

/// X (x) _D Y for a right D-action on X and a left D-action on Y, as a quotient of
/// X (x)_k Y by the balancing relations. The basis consists of pure pairs.
struct BalancedTensor {
  std::size_t dim_x = 0, dim_y = 0;
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  std::vector<Vec> reduce;  // reduce[a * dim_y + b] = coordinates of x_a (x) y_b

  std::size_t dim() const { return basis.size(); }
  const Vec& pure(std::size_t a, std::size_t b) const { return reduce[a * dim_y + b]; }
};
BalancedTensor balanced_tensor(const FieldPtr& k, std::size_t dim_x, const std::vector<Matrix>& x_right,
                               std::size_t dim_y, const std::vector<Matrix>& y_left);

struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> edges;  // first traversed first

  std::size_t length() const { return edges.size(); }
};

/// M_{e_n} (x) ... (x) M_{e_1} for a path e_1, ..., e_n of length >= 1, built as
/// last edge (x) (module of the prefix).
struct PathModule {
  Path path;
  std::size_t prefix = 0;  // index of the prefix path (unused for length 1)
  BalancedTensor step;     // M_{e_n} (x) prefix module
  std::vector<std::vector<std::size_t>> words;  // per basis element, edge basis indices in path order
  std::vector<Matrix> left;   // D_target action
  std::vector<Matrix> right;  // D_source action

  std::size_t dim() const { return words.size(); }
};

/// All paths up to a length bound with their modules.
class PathSystem {
 public:
  PathSystem() = default;
  /// nullopt bound: all paths, which requires an acyclic quiver (CyclicWithoutBound).
  PathSystem(const Species& s, std::optional<std::size_t> bound);

  const Species& species() const { return s_; }
  std::size_t bound() const { return bound_; }
  std::size_t count() const { return modules_.size(); }
  const PathModule& module(std::size_t p) const { return modules_[p]; }
  std::optional<std::size_t> find(const std::vector<std::size_t>& edges) const;
  /// Paths from i to j, ordered by length.
  std::vector<std::size_t> between(std::size_t i, std::size_t j) const;

  /// Coordinates of the pure word (one edge basis index per edge) in module(p).
  Vec reduce(std::size_t p, std::span<const std::size_t> word) const;
  std::string word_label(std::size_t p, std::size_t w) const;

 private:
  Species s_;
  std::size_t bound_ = 0;
  std::vector<PathModule> modules_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

/// Direct sum of path modules over all paths i ~> j up to max_len (nullopt: all,
/// acyclic only).
struct PathBimodule {
  std::size_t source = 0, target = 0;
  std::vector<std::size_t> paths;  // indices into the path system
  std::vector<std::size_t> offsets;
  std::size_t dim = 0;
  std::vector<std::size_t> degree;  // per basis element
  std::vector<Matrix> left, right;
};
PathBimodule path_bimodule(const PathSystem& ps, std::size_t i, std::size_t j);

// --------------------------------------------------------------- relations

/// An element of D_end T D_start given by components on paths start ~> end.
struct Relation {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::pair<std::vector<std::size_t>, Vec>> components;  // path edges, coordinates

  /// Degree-1 component, if any nonzero one exists.
  std::optional<Vec> arrow_part() const;
  std::size_t nonzero_components() const;
};

/// Merges components on equal paths, drops zero ones and checks endpoints
/// (NotHomogeneousEndpoints) against the path system.
Relation normalize_relation(const PathSystem& ps, Relation r);
bool is_canonical(const Relation& r);
bool is_strong_canonical(const Relation& r);

struct CanonicalReport {
  bool ok = true;
  std::string diagnostic;
};
/// (i) every relation canonical; (ii) the sub-bimodules generated by the arrow
/// parts of relations with equal endpoints intersect trivially.
CanonicalReport validate_canonical_set(const Species& s, const std::vector<Relation>& rels);

// ------------------------------------------------------ species of algebras

/// Species of a basic algebra: vertices are the certified towers, edge i -> j is
/// e_j (r/r^2) e_i with actions through the block lifts.
struct AlgebraSpecies {
  Species species;
  /// Per edge: elements of e_j r e_i representing the edge basis.
  std::vector<std::vector<Vec>> reps;
  /// Coordinates modulo r^2 with respect to all reps, edge after edge.
  RadicalQuotient quotient;
  std::vector<std::size_t> edge_offset;
};
AlgebraSpecies species_of(const BasicStructure& s);

/// D_j (x)_k M (x)_k D_i on every edge, with the epimorphism g onto M.
struct EnlargedSpecies {
  Species species;
  std::vector<Matrix> g;  // per edge: dim M x dim M~
};
EnlargedSpecies enlarged_species(const Species& s);

/// The quotient of edge e by a sub-bimodule; `kept` are the surviving old basis
/// indices (the new basis) and `project` maps old coordinates to new ones.
struct EdgeQuotient {
  Bimodule bimodule;
  std::vector<std::size_t> kept;
  Matrix project;
};
EdgeQuotient quotient_edge(const Species& s, std::size_t e, const Subspace& sub);

}  // namespace algkit
