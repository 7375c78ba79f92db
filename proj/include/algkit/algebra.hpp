#pragma once

// Finite-dimensional associative algebras given by structure constants, with
// certificate-driven radical, idempotents, split and r-split tests.

#include <optional>
#include <string>
#include <vector>

#include "algkit/linalg.hpp"

namespace algkit {

using SparseVec = std::vector<std::pair<std::size_t, Elem>>;

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, const FieldPtr& k, std::size_t n);

/// Image of the k-basis of a field tower D_i inside the algebra. The i-th entry of
/// `lift` is the image of TowerOverK(tower, k).basis(i).
struct BlockCertificate {
  FieldPtr tower;
  std::vector<Vec> lift;
};

struct Certificates {
  std::optional<std::vector<Vec>> radical;
  std::optional<std::vector<Vec>> idempotents;
  std::optional<std::vector<BlockCertificate>> blocks;
  /// d x (sum of block dimensions), columns in block order.
  std::optional<Matrix> epsilon;
};

class AlgebraPresentation {
 public:
  AlgebraPresentation() = default;
  /// table[i * d + j] holds the coordinates of b_i * b_j.
  AlgebraPresentation(FieldPtr k, std::vector<std::string> names, Vec unit, std::vector<SparseVec> table);

  const FieldPtr& field() const { return k_; }
  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const Vec& unit() const { return unit_; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  const std::vector<SparseVec>& table() const { return table_; }

  Vec basis(std::size_t i) const { return unit_vec(k_, dim(), i); }
  Vec zero() const { return zero_vec(k_, dim()); }
  Vec mul(const Vec& a, const Vec& b) const;
  BilinearMap multiplication() const;
  /// Matrix of x -> a*x (left) or x -> x*a (right).
  Matrix left_mult(const Vec& a) const;
  Matrix right_mult(const Vec& a) const;
  bool is_commutative() const;

  Certificates certificates;

 private:
  FieldPtr k_;
  std::vector<std::string> names_;
  Vec unit_;
  std::vector<SparseVec> table_;
};

/// Throws NotAssociative (first failing triple) or UnitFails.
void validate_algebra(const AlgebraPresentation& a);

/// Least two-sided ideal containing gens.
Subspace ideal_closure(const AlgebraPresentation& a, const std::vector<Vec>& gens);
bool is_ideal(const AlgebraPresentation& a, const Subspace& s);
/// I^n for n >= 1.
Subspace ideal_power(const AlgebraPresentation& a, const Subspace& ideal, std::size_t n);
/// Least n with I^n = 0, or nullopt when I is not nilpotent.
std::optional<std::size_t> nilpotency_index(const AlgebraPresentation& a, const Subspace& ideal);

/// Dickson criterion in characteristic zero: {x : tr L_{x b_j} = 0 for all j}.
Subspace radical_trace_char0(const AlgebraPresentation& a);

/// Verified radical, blocks and idempotents of a basic algebra.
class BasicStructure {
 public:
  const AlgebraPresentation& algebra() const { return alg_; }
  const FieldPtr& field() const { return alg_.field(); }
  const Subspace& radical() const { return rad_; }
  const Subspace& radical_square() const { return rad2_; }
  std::size_t loewy_length() const { return loewy_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Vec>& idempotents() const { return idems_; }
  const BlockCertificate& block(std::size_t i) const { return blocks_[i]; }
  const TowerOverK& tower(std::size_t i) const { return towers_[i]; }
  std::size_t block_offset(std::size_t i) const { return offsets_[i]; }
  std::size_t quotient_dim() const { return qdim_; }

  /// pi: coordinates of v + r in the quotient, block by block.
  Vec project(const Vec& v) const;
  /// Certified lift of quotient coordinates (not multiplicative in general).
  Vec lift(const Vec& q) const;
  /// Product in the quotient, computed inside the towers.
  Vec quotient_product(const Vec& a, const Vec& b) const;
  /// Quotient coordinates of an element of D_i.
  Vec quotient_of_block(std::size_t i, const Elem& d) const;
  /// Element of D_i from the block slice of quotient coordinates.
  Elem block_element(std::size_t i, const Vec& q) const;

  /// Radical basis, block certificates and idempotents (supplied or lifted) are
  /// all checked here; throws CertificateRejected or an idempotent error.
  static BasicStructure verify(const AlgebraPresentation& a);
  static BasicStructure verify(const AlgebraPresentation& a, const Certificates& c);

 private:
  AlgebraPresentation alg_;
  Subspace rad_, rad2_;
  std::size_t loewy_ = 0;
  std::vector<Vec> idems_;
  std::vector<BlockCertificate> blocks_;
  std::vector<TowerOverK> towers_;
  std::vector<std::size_t> offsets_;
  std::size_t qdim_ = 0;
  Matrix coord_;  // Lambda coordinates -> (quotient part, radical part)
};

/// Checks a candidate radical together with block certificates (supplied mode).
Subspace radical_supplied(const AlgebraPresentation& a, const Certificates& c);

/// Verifies idempotents: idempotent, orthogonal, complete, primitive. Returns the
/// block index matched by each idempotent.
std::vector<std::size_t> verify_idempotents(const AlgebraPresentation& a, const Subspace& rad,
                                            const std::vector<BlockCertificate>& blocks,
                                            const std::vector<Vec>& idems);
/// Lifts the block units of the quotient to a complete set of orthogonal idempotents.
std::vector<Vec> lift_idempotents(const AlgebraPresentation& a, const Subspace& rad,
                                  const std::vector<BlockCertificate>& blocks);

/// blocks[j][i] = e_j Lambda e_i.
std::vector<std::vector<Subspace>> peirce(const AlgebraPresentation& a, const std::vector<Vec>& idems);

/// False when some certified block is visibly non-commutative; otherwise verifies
/// the certificates (throwing CertificateRejected on failure) and returns true.
bool is_basic(const AlgebraPresentation& a, const Certificates& c);

struct SplitVerdict {
  bool ok = false;
  std::string diagnostic;
};

/// eps is a d x quotient_dim matrix.
SplitVerdict verify_split(const BasicStructure& s, const Matrix& eps);

/// Decides splitting for a commutative algebra whose quotient is generated by a
/// root of u^{p^e} - c. Returns eps or nullopt when none exists; throws
/// UnsupportedShape for every other shape.
std::optional<Matrix> find_splitting_charp(const BasicStructure& s);

/// Representatives c_l of a basis of r/r^2, with the induced coordinate map.
struct RadicalQuotient {
  Subspace rad, rad2;
  std::vector<Vec> reps;
  Matrix inverse;  // radical coordinates -> (reps part, r^2 part)
  /// Coordinates of v (in r) modulo r^2 with respect to reps.
  Vec coords(const Vec& v) const;
};
RadicalQuotient radical_quotient(const BasicStructure& s);
/// Same with caller-chosen representatives (independent modulo r^2, spanning r/r^2).
RadicalQuotient radical_quotient(const BasicStructure& s, std::vector<Vec> reps);

/// Section s: r/r^2 -> r of the projection, equivariant with respect to eps, as a
/// d x m matrix with columns s(c_l); nullopt when the linear system is inconsistent.
std::optional<Matrix> r_split_check(const BasicStructure& s, const Matrix& eps);
/// Post-hoc verification of a section.
bool verify_section(const BasicStructure& s, const Matrix& eps, const Matrix& section);

/// True when `map` (dst.dim x src.dim) is unital and multiplicative.
bool is_algebra_morphism(const AlgebraPresentation& src, const AlgebraPresentation& dst, const Matrix& map);

}  // namespace algkit
