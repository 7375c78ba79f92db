#pragma once

// Dense exact linear algebra over a field descriptor. Vectors are plain Vec
// (std::vector<Elem>); subspaces are kept in reduced row-echelon form so that
// equality is a data comparison.

#include <functional>
#include <optional>

#include "algkit/fields.hpp"

namespace algkit {

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldPtr& field, std::size_t n);
  static Matrix from_rows(const FieldPtr& field, std::vector<Vec> rows, std::size_t cols);
  static Matrix from_columns(const FieldPtr& field, const std::vector<Vec>& cols, std::size_t rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Elem& at(std::size_t r, std::size_t c) { return rows_[r][c]; }
  const Elem& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const Vec& row(std::size_t r) const { return rows_[r]; }
  Vec column(std::size_t c) const;
  const std::vector<Vec>& row_data() const { return rows_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix transpose() const;
  Vec apply(const Vec& v) const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

 private:
  FieldPtr field_;
  std::size_t cols_ = 0;
  std::vector<Vec> rows_;
};

class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of field^ambient.
  Subspace(FieldPtr field, std::size_t ambient);

  static Subspace span(const FieldPtr& field, std::size_t ambient, std::vector<Vec> vectors);
  static Subspace full(const FieldPtr& field, std::size_t ambient);

  const FieldPtr& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its projection along the basis, so that v's pivot entries vanish.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  /// Coordinates of a member with respect to basis(); nullopt when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool operator==(const Subspace& o) const;

  /// Standard complement: the unit vectors at the non-pivot columns.
  std::vector<std::size_t> complement() const;
  /// Coordinates of v + U in the quotient, with respect to the complement basis.
  Vec quotient_coords(const Vec& v) const;

 private:
  void check(const Vec& v) const;
  FieldPtr field_;
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

struct SolveResult {
  Matrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  /// Solution of a*x = b when b was given and the system is consistent.
  std::optional<Matrix> particular;
  Subspace kernel;
};

/// Gauss-Jordan elimination of a, optionally solving a*x = b.
SolveResult rref_solve(const Matrix& a, const std::optional<Matrix>& b = std::nullopt);

/// In-place RREF of a list of equal-length rows; zero rows are dropped.
std::vector<std::size_t> rref_rows(std::vector<Vec>& rows, std::size_t width);

std::size_t rank(const Matrix& a);
/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);

/// Solution x of sum_i x_i * columns[i] = target, or nullopt.
std::optional<Vec> solve_columns(const FieldPtr& field, const std::vector<Vec>& columns, const Vec& target);

Vec zero_vec(const FieldPtr& field, std::size_t n);
Vec unit_vec(const FieldPtr& field, std::size_t n, std::size_t i);
bool is_zero_vec(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Elem& s, const Vec& v);
/// a += s * b
void axpy(Vec& a, const Elem& s, const Vec& b);

using BilinearMap = std::function<Vec(const Vec&, const Vec&)>;

/// Span of all products of a u-basis vector by a v-basis vector.
Subspace bilinear_image(const Subspace& u, const Subspace& v, const BilinearMap& product);

/// Solves sum_i a_i^q * columns[i] = target for a in base^n, where all vectors
/// have entries in `base` and q is a power of the characteristic. The system is
/// reduced to a linear one over `base` through the q-basis decomposition.
std::optional<Vec> solve_semilinear(const std::vector<Vec>& columns, const Vec& target, std::uint64_t q,
                                    const FieldPtr& base);

/// Solutions X (rows x cols, flattened row-major) of A X - X B = 0 for every pair (A, B).
Subspace sylvester_kernel(const FieldPtr& k, std::size_t rows, std::size_t cols,
                          const std::vector<std::pair<Matrix, Matrix>>& constraints);

}  // namespace algkit
