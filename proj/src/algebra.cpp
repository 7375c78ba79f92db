#include "algkit/algebra.hpp"

#include <deque>

namespace algkit {

SparseVec to_sparse(const Vec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

Vec to_dense(const SparseVec& v, const FieldPtr& k, std::size_t n) {
  Vec out = zero_vec(k, n);
  for (const auto& [i, c] : v) out.at(i) = c;
  return out;
}

AlgebraPresentation::AlgebraPresentation(FieldPtr k, std::vector<std::string> names, Vec unit,
                                         std::vector<SparseVec> table)
    : k_(std::move(k)), names_(std::move(names)), unit_(std::move(unit)), table_(std::move(table)) {
  const std::size_t d = names_.size();
  if (unit_.size() != d) throw Error(ErrorKind::DimensionMismatch, "unit has the wrong length");
  if (table_.size() != d * d) throw Error(ErrorKind::DimensionMismatch, "structure table must have d*d entries");
  for (const auto& e : unit_) require_same_field(k_, e.field());
  for (auto& entry : table_) {
    SparseVec clean;
    for (auto& [i, c] : entry) {
      if (i >= d) throw Error(ErrorKind::DimensionMismatch, "structure constant index out of range");
      require_same_field(k_, c.field());
      if (!c.is_zero()) clean.emplace_back(i, c);
    }
    std::sort(clean.begin(), clean.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t t = 1; t < clean.size(); ++t)
      if (clean[t].first == clean[t - 1].first) throw Error(ErrorKind::DimensionMismatch, "duplicate structure constant");
    entry = std::move(clean);
  }
}

Vec AlgebraPresentation::mul(const Vec& a, const Vec& b) const {
  const std::size_t d = dim();
  if (a.size() != d || b.size() != d) throw Error(ErrorKind::DimensionMismatch, "algebra element length");
  Vec out = zero();
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      const auto& p = table_[i * d + j];
      if (p.empty()) continue;
      const Elem c = a[i] * b[j];
      for (const auto& [l, v] : p) out[l] += c * v;
    }
  }
  return out;
}

BilinearMap AlgebraPresentation::multiplication() const {
  return [this](const Vec& a, const Vec& b) { return mul(a, b); };
}

Matrix AlgebraPresentation::left_mult(const Vec& a) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(a, basis(j)));
  return Matrix::from_columns(k_, cols, dim());
}

Matrix AlgebraPresentation::right_mult(const Vec& a) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(basis(j), a));
  return Matrix::from_columns(k_, cols, dim());
}

bool AlgebraPresentation::is_commutative() const {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const auto& x = table_[i * d + j];
      const auto& y = table_[j * d + i];
      if (x.size() != y.size()) return false;
      for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t].first != y[t].first || x[t].second != y[t].second) return false;
    }
  return true;
}

void validate_algebra(const AlgebraPresentation& a) {
  const std::size_t d = a.dim();
  if (d == 0) throw Error(ErrorKind::UnitFails, "the zero space has no unit");
  std::vector<Vec> prod(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i * d + j] = to_dense(a.product(i, j), a.field(), d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        if (a.mul(prod[i * d + j], a.basis(l)) != a.mul(a.basis(i), prod[j * d + l]))
          throw Error(ErrorKind::NotAssociative, "(" + a.names()[i] + ", " + a.names()[j] + ", " + a.names()[l] + ")");
      }
  for (std::size_t i = 0; i < d; ++i) {
    if (a.mul(a.unit(), a.basis(i)) != a.basis(i) || a.mul(a.basis(i), a.unit()) != a.basis(i))
      throw Error(ErrorKind::UnitFails, "unit does not fix " + a.names()[i]);
  }
}

Subspace ideal_closure(const AlgebraPresentation& a, const std::vector<Vec>& gens) {
  const std::size_t d = a.dim();
  Subspace s(a.field(), d);
  std::deque<Vec> queue;
  auto push = [&](const Vec& v) {
    Vec r = s.reduce(v);
    if (is_zero_vec(r)) return;
    std::vector<Vec> b = s.basis();
    b.push_back(r);
    s = Subspace::span(a.field(), d, std::move(b));
    queue.push_back(std::move(r));
  };
  for (const auto& g : gens) push(g);
  while (!queue.empty()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < d; ++i) {
      push(a.mul(a.basis(i), v));
      push(a.mul(v, a.basis(i)));
    }
  }
  return s;
}

bool is_ideal(const AlgebraPresentation& a, const Subspace& s) {
  for (const auto& v : s.basis())
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (!s.contains(a.mul(a.basis(i), v)) || !s.contains(a.mul(v, a.basis(i)))) return false;
  return true;
}

Subspace ideal_power(const AlgebraPresentation& a, const Subspace& ideal, std::size_t n) {
  Subspace p = ideal;
  for (std::size_t i = 1; i < n && p.dim() > 0; ++i) p = bilinear_image(p, ideal, a.multiplication());
  return p;
}

std::optional<std::size_t> nilpotency_index(const AlgebraPresentation& a, const Subspace& ideal) {
  Subspace p = ideal;
  std::size_t n = 1;
  while (p.dim() > 0) {
    if (n > a.dim()) return std::nullopt;
    Subspace next = bilinear_image(p, ideal, a.multiplication());
    if (next == p) return std::nullopt;
    p = std::move(next);
    ++n;
  }
  return n;
}

Subspace radical_trace_char0(const AlgebraPresentation& a) {
  if (a.field()->characteristic() != 0)
    throw Error(ErrorKind::WrongCharacteristic, "the trace radical needs characteristic 0");
  const std::size_t d = a.dim();
  Vec tr = zero_vec(a.field(), d);  // tr[l] = trace of L_{b_l}
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t m = 0; m < d; ++m)
      for (const auto& [i, c] : a.product(l, m))
        if (i == m) tr[l] += c;
  Matrix t(a.field(), d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      Elem acc = a.field()->zero();
      for (const auto& [l, c] : a.product(i, j)) acc += c * tr[l];
      t.at(j, i) = acc;
    }
  return rref_solve(t).kernel;
}

// ---------------------------------------------------------- certificates

namespace {

[[noreturn]] void reject(const std::string& why) { throw Error(ErrorKind::CertificateRejected, why); }

struct Frame {
  std::vector<TowerOverK> towers;
  std::vector<std::size_t> offsets;
  std::size_t qdim = 0;
  Matrix coord;

  Vec project(const Vec& v) const {
    Vec full = coord.apply(v);
    full.resize(qdim);
    return full;
  }
};

Frame make_frame(const AlgebraPresentation& a, const Subspace& rad, const std::vector<BlockCertificate>& blocks) {
  Frame f;
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (!b.tower) reject("block " + std::to_string(i) + " has no tower");
    try {
      f.towers.emplace_back(b.tower, a.field());
    } catch (const Error& e) {
      reject("block " + std::to_string(i) + ": " + e.what());
    }
    if (b.lift.size() != f.towers.back().dim())
      reject("block " + std::to_string(i) + " lift has " + std::to_string(b.lift.size()) + " vectors, tower dimension is " +
             std::to_string(f.towers.back().dim()));
    f.offsets.push_back(f.qdim);
    f.qdim += b.lift.size();
    for (const auto& v : b.lift) {
      if (v.size() != a.dim()) reject("lift vector of wrong length");
      cols.push_back(v);
    }
  }
  for (const auto& r : rad.basis()) cols.push_back(r);
  if (cols.size() != a.dim())
    reject("block dimensions (" + std::to_string(f.qdim) + ") plus radical dimension (" + std::to_string(rad.dim()) +
           ") differ from dim = " + std::to_string(a.dim()));
  auto inv = inverse(Matrix::from_columns(a.field(), cols, a.dim()));
  if (!inv) reject("block lifts together with the radical do not span the algebra");
  f.coord = std::move(*inv);
  return f;
}

void check_blocks(const AlgebraPresentation& a, const Subspace& rad, const std::vector<BlockCertificate>& blocks,
                  const Frame& f) {
  Vec unit_sum = a.zero();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& tw = f.towers[i];
    const auto& L = blocks[i].lift;
    for (std::size_t m = 0; m < tw.dim(); ++m)
      for (std::size_t n = 0; n < tw.dim(); ++n) {
        Vec expect = a.zero();
        const Vec& pc = tw.product(m, n);
        for (std::size_t t = 0; t < pc.size(); ++t) axpy(expect, pc[t], L[t]);
        if (!rad.contains(sub(a.mul(L[m], L[n]), expect)))
          reject("block " + std::to_string(i) + " lift is not multiplicative modulo the radical at (" + tw.label(m) +
                 ", " + tw.label(n) + ")");
      }
    unit_sum = add(unit_sum, L[0]);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (j == i) continue;
      for (const auto& x : L)
        for (const auto& y : blocks[j].lift)
          if (!rad.contains(a.mul(x, y)))
            reject("blocks " + std::to_string(i) + " and " + std::to_string(j) + " do not annihilate each other");
    }
  }
  if (!rad.contains(sub(unit_sum, a.unit()))) reject("block units do not sum to 1 modulo the radical");
}

Vec idempotize(const AlgebraPresentation& a, Vec e) {
  for (int it = 0; it < 64; ++it) {
    const Vec e2 = a.mul(e, e);
    if (e2 == e) return e;
    const Vec e3 = a.mul(e2, e);
    e = sub(scale(a.field()->from_int(3), e2), scale(a.field()->from_int(2), e3));
  }
  throw Error(ErrorKind::NotIdempotent, "idempotent lifting did not converge");
}

}  // namespace

Subspace radical_supplied(const AlgebraPresentation& a, const Certificates& c) {
  if (!c.radical) throw Error(ErrorKind::UnsupportedShape, "supplied mode needs a radical certificate");
  if (!c.blocks) throw Error(ErrorKind::UnsupportedShape, "supplied mode needs block certificates");
  for (const auto& v : *c.radical)
    if (v.size() != a.dim()) reject("radical vector of wrong length");
  Subspace rad = Subspace::span(a.field(), a.dim(), *c.radical);
  if (!is_ideal(a, rad)) reject("radical candidate is not a two-sided ideal");
  if (!nilpotency_index(a, rad)) reject("radical candidate is not nilpotent");
  const Frame f = make_frame(a, rad, *c.blocks);
  check_blocks(a, rad, *c.blocks, f);
  return rad;
}

std::vector<std::size_t> verify_idempotents(const AlgebraPresentation& a, const Subspace& rad,
                                            const std::vector<BlockCertificate>& blocks, const std::vector<Vec>& idems) {
  Vec sum = a.zero();
  for (std::size_t i = 0; i < idems.size(); ++i) {
    if (idems[i].size() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "idempotent of wrong length");
    if (a.mul(idems[i], idems[i]) != idems[i]) throw Error(ErrorKind::NotIdempotent, "e" + std::to_string(i));
    for (std::size_t j = 0; j < idems.size(); ++j)
      if (i != j && !is_zero_vec(a.mul(idems[i], idems[j])))
        throw Error(ErrorKind::NotOrthogonal, "e" + std::to_string(i) + " e" + std::to_string(j) + " != 0");
    sum = add(sum, idems[i]);
  }
  if (sum != a.unit()) throw Error(ErrorKind::NotComplete, "idempotents do not sum to 1");
  const Frame f = make_frame(a, rad, blocks);
  std::vector<std::size_t> match;
  std::vector<bool> used(blocks.size(), false);
  for (std::size_t i = 0; i < idems.size(); ++i) {
    const Vec q = f.project(idems[i]);
    std::optional<std::size_t> hit;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Vec unit_b = zero_vec(a.field(), f.qdim);
      unit_b[f.offsets[b]] = a.field()->one();
      if (q == unit_b) hit = b;
    }
    if (!hit || used[*hit])
      throw Error(ErrorKind::NotPrimitive, "e" + std::to_string(i) + " is not the unit of a single quotient block");
    used[*hit] = true;
    match.push_back(*hit);
  }
  if (match.size() != blocks.size()) throw Error(ErrorKind::NotComplete, "fewer idempotents than quotient blocks");
  return match;
}

std::vector<Vec> lift_idempotents(const AlgebraPresentation& a, const Subspace& rad,
                                  const std::vector<BlockCertificate>& blocks) {
  std::vector<Vec> out;
  if (blocks.empty()) return out;
  Vec s = a.zero();
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    const Vec one_minus_s = sub(a.unit(), s);
    Vec e = idempotize(a, blocks[i].lift[0]);
    e = a.mul(a.mul(one_minus_s, e), one_minus_s);
    e = idempotize(a, e);
    s = add(s, e);
    out.push_back(std::move(e));
  }
  out.push_back(sub(a.unit(), s));
  verify_idempotents(a, rad, blocks, out);
  return out;
}

std::vector<std::vector<Subspace>> peirce(const AlgebraPresentation& a, const std::vector<Vec>& idems) {
  const std::size_t n = idems.size();
  std::vector<std::vector<Subspace>> out(n, std::vector<Subspace>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Vec> vs;
      for (std::size_t m = 0; m < a.dim(); ++m) vs.push_back(a.mul(a.mul(idems[j], a.basis(m)), idems[i]));
      out[j][i] = Subspace::span(a.field(), a.dim(), std::move(vs));
    }
  return out;
}

bool is_basic(const AlgebraPresentation& a, const Certificates& c) {
  if (!c.radical || !c.blocks) throw Error(ErrorKind::CertificateRejected, "basicness needs radical and block certificates");
  const Subspace rad = Subspace::span(a.field(), a.dim(), *c.radical);
  for (const auto& b : *c.blocks)
    for (const auto& x : b.lift)
      for (const auto& y : b.lift)
        if (!rad.contains(sub(a.mul(x, y), a.mul(y, x)))) return false;
  radical_supplied(a, c);
  return true;
}

// -------------------------------------------------------- BasicStructure

BasicStructure BasicStructure::verify(const AlgebraPresentation& a) { return verify(a, a.certificates); }

BasicStructure BasicStructure::verify(const AlgebraPresentation& a, const Certificates& c) {
  BasicStructure s;
  s.alg_ = a;
  s.alg_.certificates = c;
  s.rad_ = radical_supplied(a, c);
  s.blocks_ = *c.blocks;
  if (c.idempotents) {
    const auto match = verify_idempotents(a, s.rad_, s.blocks_, *c.idempotents);
    std::vector<BlockCertificate> ordered;
    for (auto b : match) ordered.push_back(s.blocks_[b]);
    s.blocks_ = std::move(ordered);
    s.idems_ = *c.idempotents;
  } else {
    s.idems_ = lift_idempotents(a, s.rad_, s.blocks_);
  }
  const Frame f = make_frame(a, s.rad_, s.blocks_);
  s.towers_ = f.towers;
  s.offsets_ = f.offsets;
  s.qdim_ = f.qdim;
  s.coord_ = f.coord;
  s.rad2_ = ideal_power(a, s.rad_, 2);
  s.loewy_ = *nilpotency_index(a, s.rad_);
  return s;
}

Vec BasicStructure::project(const Vec& v) const {
  Vec full = coord_.apply(v);
  full.resize(qdim_);
  return full;
}

Vec BasicStructure::lift(const Vec& q) const {
  Vec out = alg_.zero();
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (std::size_t m = 0; m < towers_[i].dim(); ++m) axpy(out, q[offsets_[i] + m], blocks_[i].lift[m]);
  return out;
}

Elem BasicStructure::block_element(std::size_t i, const Vec& q) const {
  return towers_[i].element(std::span<const Elem>(q).subspan(offsets_[i], towers_[i].dim()));
}

Vec BasicStructure::quotient_of_block(std::size_t i, const Elem& d) const {
  Vec q = zero_vec(field(), qdim_);
  const Vec c = towers_[i].coords(d);
  for (std::size_t m = 0; m < c.size(); ++m) q[offsets_[i] + m] = c[m];
  return q;
}

Vec BasicStructure::quotient_product(const Vec& a, const Vec& b) const {
  Vec out = zero_vec(field(), qdim_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Vec c = towers_[i].coords(block_element(i, a) * block_element(i, b));
    for (std::size_t m = 0; m < c.size(); ++m) out[offsets_[i] + m] = c[m];
  }
  return out;
}

// ------------------------------------------------------------- splitting

SplitVerdict verify_split(const BasicStructure& s, const Matrix& eps) {
  const auto& a = s.algebra();
  const std::size_t q = s.quotient_dim();
  if (eps.rows() != a.dim() || eps.cols() != q)
    return {false, "epsilon must be " + std::to_string(a.dim()) + " x " + std::to_string(q)};
  Vec one = zero_vec(s.field(), q);
  for (std::size_t i = 0; i < s.block_count(); ++i) one[s.block_offset(i)] = s.field()->one();
  if (eps.apply(one) != a.unit()) return {false, "epsilon(1) != 1"};
  for (std::size_t x = 0; x < q; ++x) {
    const Vec ex = eps.column(x);
    if (s.project(ex) != unit_vec(s.field(), q, x))
      return {false, "pi(epsilon(q" + std::to_string(x) + ")) != q" + std::to_string(x)};
    for (std::size_t y = 0; y < q; ++y) {
      const Vec lhs = a.mul(ex, eps.column(y));
      const Vec rhs = eps.apply(s.quotient_product(unit_vec(s.field(), q, x), unit_vec(s.field(), q, y)));
      if (lhs != rhs) return {false, "epsilon not multiplicative at (" + std::to_string(x) + ", " + std::to_string(y) + ")"};
    }
  }
  return {true, ""};
}

namespace {

Vec algebra_pow(const AlgebraPresentation& a, const Vec& v, std::uint64_t e) {
  Vec r = a.unit();
  Vec b = v;
  while (e) {
    if (e & 1) r = a.mul(r, b);
    e >>= 1;
    if (e) b = a.mul(b, b);
  }
  return r;
}

}  // namespace

std::optional<Matrix> find_splitting_charp(const BasicStructure& s) {
  const auto& a = s.algebra();
  const FieldPtr& k = a.field();
  const std::uint64_t p = k->characteristic();
  if (p == 0) throw Error(ErrorKind::UnsupportedShape, "splitting search needs characteristic p > 0");
  if (s.block_count() != 1) throw Error(ErrorKind::UnsupportedShape, "splitting search needs a local algebra");
  if (!a.is_commutative()) throw Error(ErrorKind::UnsupportedShape, "splitting search needs a commutative algebra");
  const FieldPtr& D = s.block(0).tower;
  if (same_field(D, k)) {
    Matrix eps(k, a.dim(), 1);
    for (std::size_t i = 0; i < a.dim(); ++i) eps.at(i, 0) = a.unit()[i];
    return eps;
  }
  const auto& m = D->minimal_polynomial();
  bool shape = D->kind() == FieldKind::Extension && same_field(D->base(), k);
  std::uint64_t q = 1;
  while (shape && q < static_cast<std::uint64_t>(m.degree())) q *= p;
  shape = shape && q == static_cast<std::uint64_t>(m.degree());
  for (int i = 1; shape && i < m.degree(); ++i)
    if (!m.coeff(i).is_zero()) shape = false;
  if (!shape)
    throw Error(ErrorKind::UnsupportedShape, "quotient generator minimal polynomial " + m.to_string(D->variable()) +
                                                 " is not of the form u^(p^e) - c over k");
  const Elem c = -m.coeff(0);
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < a.dim(); ++i) cols.push_back(algebra_pow(a, a.basis(i), q));
  const auto w = solve_semilinear(cols, scale(c, a.unit()), q, k);
  if (!w) return std::nullopt;
  Matrix eps(k, a.dim(), q);
  Vec power = a.unit();
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t i = 0; i < a.dim(); ++i) eps.at(i, j) = power[i];
    power = a.mul(power, *w);
  }
  const auto verdict = verify_split(s, eps);
  if (!verdict.ok) throw Error(ErrorKind::UnsupportedShape, "semilinear solution failed verification: " + verdict.diagnostic);
  return eps;
}

Vec RadicalQuotient::coords(const Vec& v) const {
  auto rc = rad.coordinates(v);
  if (!rc) throw Error(ErrorKind::DimensionMismatch, "element is not in the radical");
  Vec full = inverse.apply(*rc);
  full.resize(reps.size());
  return full;
}

RadicalQuotient radical_quotient(const BasicStructure& s) {
  std::vector<Vec> reps;
  Subspace acc = s.radical_square();
  for (const auto& v : s.radical().basis()) {
    if (acc.contains(v)) continue;
    reps.push_back(v);
    std::vector<Vec> b = acc.basis();
    b.push_back(v);
    acc = Subspace::span(s.field(), s.algebra().dim(), std::move(b));
  }
  return radical_quotient(s, std::move(reps));
}

RadicalQuotient radical_quotient(const BasicStructure& s, std::vector<Vec> reps) {
  RadicalQuotient rq;
  rq.rad = s.radical();
  rq.rad2 = s.radical_square();
  rq.reps = std::move(reps);
  if (rq.reps.size() + rq.rad2.dim() != rq.rad.dim())
    throw Error(ErrorKind::DimensionMismatch, "representatives do not match dim r/r^2");
  std::vector<Vec> cols;
  for (const auto& v : rq.reps) cols.push_back(*rq.rad.coordinates(v));
  for (const auto& v : rq.rad2.basis()) cols.push_back(*rq.rad.coordinates(v));
  if (cols.empty()) {
    rq.inverse = Matrix(s.field(), 0, 0);
  } else {
    auto inv = inverse(Matrix::from_columns(s.field(), cols, rq.rad.dim()));
    if (!inv) throw Error(ErrorKind::DimensionMismatch, "representatives are dependent modulo r^2");
    rq.inverse = std::move(*inv);
  }
  return rq;
}

std::optional<Matrix> r_split_check(const BasicStructure& s, const Matrix& eps) {
  const auto& a = s.algebra();
  const FieldPtr& k = a.field();
  const std::size_t d = a.dim();
  const RadicalQuotient rq = radical_quotient(s);
  const std::size_t m = rq.reps.size();
  const auto& r2 = rq.rad2.basis();
  const std::size_t n2 = r2.size();
  const std::size_t unknowns = m * n2;
  std::vector<Vec> columns(unknowns);
  Vec rhs;
  for (std::size_t x = 0; x < s.quotient_dim(); ++x) {
    const Vec ex = eps.column(x);
    for (std::size_t l = 0; l < m; ++l)
      for (int side = 0; side < 2; ++side) {
        auto act = [&](const Vec& v) { return side == 0 ? a.mul(ex, v) : a.mul(v, ex); };
        const Vec moved = act(rq.reps[l]);
        const Vec alpha = rq.coords(moved);
        Vec constant = scale(k->from_int(-1), moved);
        for (std::size_t l2 = 0; l2 < m; ++l2) axpy(constant, alpha[l2], rq.reps[l2]);
        // constant + sum_{l2,t} alpha_{l2} y_{l2,t} r2_t - sum_t y_{l,t} act(r2_t) = 0
        std::vector<Vec> block(unknowns, zero_vec(k, d));
        for (std::size_t t = 0; t < n2; ++t) {
          for (std::size_t l2 = 0; l2 < m; ++l2) axpy(block[l2 * n2 + t], alpha[l2], r2[t]);
          block[l * n2 + t] = sub(block[l * n2 + t], act(r2[t]));
        }
        for (std::size_t u = 0; u < unknowns; ++u) columns[u].insert(columns[u].end(), block[u].begin(), block[u].end());
        for (const auto& e : constant) rhs.push_back(-e);
      }
  }
  Vec y;
  if (unknowns == 0) {
    if (!is_zero_vec(rhs)) return std::nullopt;
  } else {
    auto sol = solve_columns(k, columns, rhs);
    if (!sol) return std::nullopt;
    y = std::move(*sol);
  }
  Matrix sec(k, d, m);
  for (std::size_t l = 0; l < m; ++l) {
    Vec col = rq.reps[l];
    for (std::size_t t = 0; t < n2; ++t) axpy(col, y[l * n2 + t], r2[t]);
    for (std::size_t i = 0; i < d; ++i) sec.at(i, l) = col[i];
  }
  if (!verify_section(s, eps, sec)) throw Error(ErrorKind::EquivarianceFails, "computed section failed re-verification");
  return sec;
}

bool verify_section(const BasicStructure& s, const Matrix& eps, const Matrix& section) {
  const auto& a = s.algebra();
  const RadicalQuotient rq = radical_quotient(s);
  const std::size_t m = rq.reps.size();
  if (section.rows() != a.dim() || section.cols() != m) return false;
  for (std::size_t l = 0; l < m; ++l) {
    const Vec col = section.column(l);
    if (!rq.rad.contains(col)) return false;
    if (rq.coords(col) != unit_vec(a.field(), m, l)) return false;
  }
  for (std::size_t x = 0; x < s.quotient_dim(); ++x) {
    const Vec ex = eps.column(x);
    for (std::size_t l = 0; l < m; ++l) {
      const Vec sl = section.column(l);
      if (section.apply(rq.coords(a.mul(ex, rq.reps[l]))) != a.mul(ex, sl)) return false;
      if (section.apply(rq.coords(a.mul(rq.reps[l], ex))) != a.mul(sl, ex)) return false;
    }
  }
  return true;
}

bool is_algebra_morphism(const AlgebraPresentation& src, const AlgebraPresentation& dst, const Matrix& map) {
  if (map.rows() != dst.dim() || map.cols() != src.dim()) return false;
  if (map.apply(src.unit()) != dst.unit()) return false;
  std::vector<Vec> img;
  for (std::size_t i = 0; i < src.dim(); ++i) img.push_back(map.column(i));
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j) {
      Vec lhs = map.apply(to_dense(src.product(i, j), src.field(), src.dim()));
      if (lhs != dst.mul(img[i], img[j])) return false;
    }
  return true;
}

}  // namespace algkit
