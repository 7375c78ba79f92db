#include "algkit/linalg.hpp"

namespace algkit {

Vec zero_vec(const FieldPtr& field, std::size_t n) { return Vec(n, field->zero()); }

Vec unit_vec(const FieldPtr& field, std::size_t n, std::size_t i) {
  Vec v = zero_vec(field, n);
  v[i] = field->one();
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector lengths differ");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero()) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector lengths differ");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero()) r[i] -= b[i];
  return r;
}

Vec scale(const Elem& s, const Vec& v) {
  Vec r = v;
  for (auto& e : r)
    if (!e.is_zero()) e *= s;
  return r;
}

void axpy(Vec& a, const Elem& s, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector lengths differ");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += s * b[i];
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), cols_(cols), rows_(rows, Vec(cols, field_->zero())) {}

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i][i] = field->one();
  return m;
}

Matrix Matrix::from_rows(const FieldPtr& field, std::vector<Vec> rows, std::size_t cols) {
  Matrix m;
  m.field_ = field;
  m.cols_ = cols;
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (const auto& e : r) require_same_field(field, e.field());
  }
  m.rows_ = std::move(rows);
  return m;
}

Matrix Matrix::from_columns(const FieldPtr& field, const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(field, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorKind::DimensionMismatch, "ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m.rows_[r][c] = cols[c][r];
  }
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v;
  v.reserve(rows());
  for (const auto& r : rows_) v.push_back(r[c]);
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  Matrix m(field_, rows(), o.cols_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      if (rows_[i][l].is_zero()) continue;
      axpy(m.rows_[i], rows_[i][l], o.rows_[l]);
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows() != o.rows() || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes");
  Matrix m = *this;
  for (std::size_t i = 0; i < rows(); ++i) m.rows_[i] = add(rows_[i], o.rows_[i]);
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows() != o.rows() || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shapes");
  Matrix m = *this;
  for (std::size_t i = 0; i < rows(); ++i) m.rows_[i] = sub(rows_[i], o.rows_[i]);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.rows_[j][i] = rows_[i][j];
  return m;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes");
  Vec out = zero_vec(field_, rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    Elem acc = field_->zero();
    for (std::size_t j = 0; j < cols_; ++j)
      if (!rows_[i][j].is_zero() && !v[j].is_zero()) acc += rows_[i][j] * v[j];
    out[i] = std::move(acc);
  }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& r : rows_)
    if (!is_zero_vec(r)) return false;
  return true;
}

// ------------------------------------------------------------ elimination

std::vector<std::size_t> rref_rows(std::vector<Vec>& rows, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    if (!rows[r][c].is_one()) {
      const Elem inv = rows[r][c].inverse();
      for (std::size_t j = c; j < rows[r].size(); ++j)
        if (!rows[r][j].is_zero()) rows[r][j] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Elem f = -rows[i][c];
      for (std::size_t j = c; j < rows[i].size(); ++j)
        if (!rows[r][j].is_zero()) rows[i][j] += f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

SolveResult rref_solve(const Matrix& a, const std::optional<Matrix>& b) {
  const std::size_t n = a.cols();
  std::vector<Vec> rows = a.row_data();
  const std::size_t bc = b ? b->cols() : 0;
  if (b) {
    if (b->rows() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side row count");
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].insert(rows[i].end(), b->row(i).begin(), b->row(i).end());
  }
  std::vector<std::size_t> piv = rref_rows(rows, n + bc);
  SolveResult res;
  bool consistent = true;
  while (!piv.empty() && piv.back() >= n) {
    consistent = false;
    piv.pop_back();
    rows.pop_back();
  }
  res.rank = piv.size();
  res.pivots = piv;
  std::vector<Vec> left;
  for (const auto& r : rows) left.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
  while (left.size() < a.rows()) left.push_back(zero_vec(a.field(), n));
  res.rref = Matrix::from_rows(a.field(), left, n);

  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> kern;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec x = unit_vec(a.field(), n, f);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -rows[i][f];
    kern.push_back(std::move(x));
  }
  res.kernel = Subspace::span(a.field(), n, std::move(kern));
  if (b && consistent) {
    Matrix x(a.field(), n, bc);
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (std::size_t c = 0; c < bc; ++c) x.at(piv[i], c) = rows[i][n + c];
    res.particular = std::move(x);
  }
  return res;
}

std::size_t rank(const Matrix& a) {
  std::vector<Vec> rows = a.row_data();
  return rref_rows(rows, a.cols()).size();
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  auto res = rref_solve(a, Matrix::identity(a.field(), a.rows()));
  if (res.rank != a.rows()) return std::nullopt;
  return res.particular;
}

std::optional<Vec> solve_columns(const FieldPtr& field, const std::vector<Vec>& columns, const Vec& target) {
  const Matrix a = Matrix::from_columns(field, columns, target.size());
  Matrix b(field, target.size(), 1);
  for (std::size_t i = 0; i < target.size(); ++i) b.at(i, 0) = target[i];
  auto res = rref_solve(a, b);
  if (!res.particular) return std::nullopt;
  return res.particular->column(0);
}

// --------------------------------------------------------------- Subspace

Subspace::Subspace(FieldPtr field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

Subspace Subspace::span(const FieldPtr& field, std::size_t ambient, std::vector<Vec> vectors) {
  Subspace s(field, ambient);
  for (const auto& v : vectors) s.check(v);
  s.pivots_ = rref_rows(vectors, ambient);
  s.basis_ = std::move(vectors);
  return s;
}

Subspace Subspace::full(const FieldPtr& field, std::size_t ambient) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < ambient; ++i) rows.push_back(unit_vec(field, ambient, i));
  return span(field, ambient, std::move(rows));
}

void Subspace::check(const Vec& v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::AmbientMismatch, "vector of length " + std::to_string(v.size()) +
                                                                      " in ambient dimension " + std::to_string(ambient_));
}

Vec Subspace::reduce(Vec v) const {
  check(v);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Elem c = v[pivots_[i]];
    if (c.is_zero()) continue;
    axpy(v, -c, basis_[i]);
  }
  return v;
}

bool Subspace::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::AmbientMismatch, "subspace ambient dimensions differ");
  for (const auto& b : o.basis_)
    if (!contains(b)) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c;
  c.reserve(dim());
  for (auto p : pivots_) c.push_back(v[p]);
  return c;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::AmbientMismatch, "subspace ambient dimensions differ");
  std::vector<Vec> rows = basis_;
  rows.insert(rows.end(), o.basis_.begin(), o.basis_.end());
  return span(field_, ambient_, std::move(rows));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::AmbientMismatch, "subspace ambient dimensions differ");
  // Zassenhaus: rows (u | u) and (v | 0); rows with vanishing left half span U ∩ V.
  const std::size_t n = ambient_;
  std::vector<Vec> rows;
  for (const auto& u : basis_) {
    Vec r = u;
    r.insert(r.end(), u.begin(), u.end());
    rows.push_back(std::move(r));
  }
  for (const auto& v : o.basis_) {
    Vec r = v;
    r.resize(2 * n, field_->zero());
    rows.push_back(std::move(r));
  }
  const auto piv = rref_rows(rows, 2 * n);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (piv[i] < n) continue;
    out.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(n), rows[i].end());
  }
  return span(field_, n, std::move(out));
}

bool Subspace::operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

std::vector<std::size_t> Subspace::complement() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < ambient_; ++c) {
    if (k < pivots_.size() && pivots_[k] == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

Vec Subspace::quotient_coords(const Vec& v) const {
  const Vec r = reduce(v);
  Vec out;
  for (auto c : complement()) out.push_back(r[c]);
  return out;
}

Subspace bilinear_image(const Subspace& u, const Subspace& v, const BilinearMap& product) {
  std::vector<Vec> rows;
  std::size_t n = 0;
  for (const auto& a : u.basis())
    for (const auto& b : v.basis()) {
      Vec p = product(a, b);
      n = p.size();
      rows.push_back(std::move(p));
    }
  if (rows.empty()) {
    if (u.ambient() != v.ambient()) throw Error(ErrorKind::DimensionMismatch, "bilinear image of mismatched spaces");
    return Subspace(u.field(), u.ambient());
  }
  return Subspace::span(u.field(), n, std::move(rows));
}

std::optional<Vec> solve_semilinear(const std::vector<Vec>& columns, const Vec& target, std::uint64_t q,
                                    const FieldPtr& base) {
  const std::size_t m = target.size();
  const std::size_t nb = q_basis_size(base, q);
  std::vector<Vec> lin_cols(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].size() != m) throw Error(ErrorKind::DimensionMismatch, "semilinear column length");
    for (std::size_t j = 0; j < m; ++j) {
      Vec parts = q_basis_decompose(columns[i][j], q);
      lin_cols[i].insert(lin_cols[i].end(), parts.begin(), parts.end());
    }
  }
  Vec rhs;
  for (std::size_t j = 0; j < m; ++j) {
    Vec parts = q_basis_decompose(target[j], q);
    rhs.insert(rhs.end(), parts.begin(), parts.end());
  }
  if (rhs.size() != m * nb) throw Error(ErrorKind::UnsupportedShape, "inconsistent q-basis sizes");
  if (columns.empty()) {
    if (is_zero_vec(rhs)) return Vec{};
    return std::nullopt;
  }
  return solve_columns(base, lin_cols, rhs);
}

Subspace sylvester_kernel(const FieldPtr& k, std::size_t rows, std::size_t cols,
                          const std::vector<std::pair<Matrix, Matrix>>& constraints) {
  std::vector<Vec> eqs;
  const std::size_t n = rows * cols;
  for (const auto& [A, B] : constraints)
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        Vec eq = zero_vec(k, n);
        for (std::size_t a = 0; a < rows; ++a) eq[a * cols + c] += A.at(r, a);
        for (std::size_t b = 0; b < cols; ++b) eq[r * cols + b] -= B.at(b, c);
        eqs.push_back(std::move(eq));
      }
  if (eqs.empty()) return Subspace::full(k, n);
  return rref_solve(Matrix::from_rows(k, std::move(eqs), n)).kernel;
}

}  // namespace algkit
