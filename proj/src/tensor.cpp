#include "algkit/tensor.hpp"

#include <deque>
#include <functional>

namespace algkit {

namespace {

void place(Vec& out, std::size_t offset, const Vec& part) {
  for (std::size_t i = 0; i < part.size(); ++i) out[offset + i] = part[i];
}

Vec slice(const Vec& v, std::size_t offset, std::size_t n) {
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(offset), v.begin() + static_cast<std::ptrdiff_t>(offset + n));
}

void place_block(Matrix& out, std::size_t r0, std::size_t c0, const Matrix& block) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) out.at(r0 + r, c0 + c) = block.at(r, c);
}

Subspace units_of_degree_at_least(const FieldPtr& k, const std::vector<std::size_t>& degree, std::size_t n) {
  std::vector<Vec> v;
  for (std::size_t i = 0; i < degree.size(); ++i)
    if (degree[i] >= n) v.push_back(unit_vec(k, degree.size(), i));
  return Subspace::span(k, degree.size(), std::move(v));
}

Subspace column_space(const Matrix& m) {
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Subspace::span(m.field(), m.rows(), std::move(cols));
}

}  // namespace

// ------------------------------------------------------------ tensor algebra

TensorAlgebra::TensorAlgebra(const Species& s, std::optional<std::size_t> bound)
    : ps_(s, bound), full_(!bound.has_value()) {
  const FieldPtr& k = s.field();
  std::vector<std::string> names;
  // owner[i] = (is_vertex, vertex or path index, local index)
  struct Owner {
    bool vertex;
    std::size_t index, local;
  };
  std::vector<Owner> owner;
  std::size_t cur = 0;
  for (std::size_t i = 0; i < s.vertex_count(); ++i) {
    vertex_offset_.push_back(cur);
    for (std::size_t x = 0; x < s.tower(i).dim(); ++x) {
      names.push_back("v" + std::to_string(i) + "." + s.tower(i).label(x));
      owner.push_back({true, i, x});
      degree_.push_back(0);
    }
    cur += s.tower(i).dim();
  }
  for (std::size_t p = 0; p < ps_.count(); ++p) {
    const PathModule& pm = ps_.module(p);
    path_offset_.push_back(cur);
    for (std::size_t w = 0; w < pm.dim(); ++w) {
      names.push_back(ps_.word_label(p, w));
      owner.push_back({false, p, w});
      degree_.push_back(pm.path.length());
    }
    cur += pm.dim();
  }
  const std::size_t d = cur;
  std::vector<SparseVec> table;
  table.reserve(d * d);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      const Owner& a = owner[u];
      const Owner& b = owner[v];
      Vec out = zero_vec(k, d);
      if (a.vertex && b.vertex) {
        if (a.index == b.index) place(out, vertex_offset_[a.index], s.tower(a.index).product(a.local, b.local));
      } else if (a.vertex) {
        const PathModule& pm = ps_.module(b.index);
        if (pm.path.target == a.index) place(out, path_offset_[b.index], pm.left[a.local].column(b.local));
      } else if (b.vertex) {
        const PathModule& pm = ps_.module(a.index);
        if (pm.path.source == b.index) place(out, path_offset_[a.index], pm.right[b.local].column(a.local));
      } else {
        const PathModule& pa = ps_.module(a.index);
        const PathModule& pb = ps_.module(b.index);
        if (pa.path.source == pb.path.target) {
          std::vector<std::size_t> edges = pb.path.edges;
          edges.insert(edges.end(), pa.path.edges.begin(), pa.path.edges.end());
          if (const auto pc = ps_.find(edges)) {
            std::vector<std::size_t> word = pb.words[b.local];
            word.insert(word.end(), pa.words[a.local].begin(), pa.words[a.local].end());
            place(out, path_offset_[*pc], ps_.reduce(*pc, word));
          }
        }
      }
      table.push_back(to_sparse(out));
    }
  Vec unit = zero_vec(k, d);
  for (std::size_t i = 0; i < s.vertex_count(); ++i) unit = add(unit, vertex_element(i, s.vertex(i)->one()));
  alg_ = AlgebraPresentation(k, std::move(names), std::move(unit), std::move(table));

  J_ = units_of_degree_at_least(k, degree_, 1);
  alg_.certificates.radical = J_.basis();
  std::vector<BlockCertificate> blocks;
  std::vector<Vec> idems;
  std::size_t qdim = 0;
  for (std::size_t i = 0; i < s.vertex_count(); ++i) qdim += s.tower(i).dim();
  Matrix eps(k, d, qdim);
  for (std::size_t i = 0; i < s.vertex_count(); ++i) {
    BlockCertificate b{s.vertex(i), {}};
    for (std::size_t x = 0; x < s.tower(i).dim(); ++x) {
      b.lift.push_back(unit_vec(k, d, vertex_offset_[i] + x));
      eps.at(vertex_offset_[i] + x, vertex_offset_[i] + x) = k->one();
    }
    blocks.push_back(std::move(b));
    idems.push_back(vertex_unit(i));
  }
  alg_.certificates.blocks = std::move(blocks);
  alg_.certificates.idempotents = std::move(idems);
  alg_.certificates.epsilon = std::move(eps);
}

Subspace TensorAlgebra::J_power(std::size_t n) const { return units_of_degree_at_least(alg_.field(), degree_, n); }

Vec TensorAlgebra::vertex_unit(std::size_t i) const { return vertex_element(i, species().vertex(i)->one()); }

Vec TensorAlgebra::vertex_element(std::size_t i, const Elem& d) const {
  Vec out = zero_vec(species().field(), degree_.size());
  place(out, vertex_offset_[i], species().tower(i).coords(d));
  return out;
}

Vec TensorAlgebra::path_vector(std::size_t p, const Vec& coords) const {
  if (coords.size() != ps_.module(p).dim()) throw Error(ErrorKind::DimensionMismatch, "path coordinates");
  Vec out = zero_vec(species().field(), degree_.size());
  place(out, path_offset_[p], coords);
  return out;
}

Vec TensorAlgebra::relation_vector(const Relation& r) const {
  const Relation n = normalize_relation(ps_, r);
  Vec out = zero_vec(species().field(), degree_.size());
  for (const auto& [edges, v] : n.components) out = add(out, path_vector(*ps_.find(edges), v));
  return out;
}

std::vector<Relation> TensorAlgebra::decompose(const Vec& x) const {
  for (std::size_t i = 0; i < degree_.size(); ++i)
    if (degree_[i] == 0 && !x[i].is_zero()) throw Error(ErrorKind::DimensionMismatch, "element has a degree-0 part");
  std::vector<Relation> out;
  const std::size_t n = species().vertex_count();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Relation r{a, b, {}};
      for (std::size_t p : ps_.between(a, b)) {
        Vec part = slice(x, path_offset_[p], ps_.module(p).dim());
        if (!is_zero_vec(part)) r.components.emplace_back(ps_.module(p).path.edges, std::move(part));
      }
      if (!r.components.empty()) out.push_back(std::move(r));
    }
  return out;
}

// ---------------------------------------------------------------- quotients

Vec Quotient::lift(const Vec& q) const {
  Vec out = zero_vec(ideal.field(), ideal.ambient());
  for (std::size_t l = 0; l < basis.size(); ++l) out[basis[l]] = q[l];
  return out;
}

Quotient quotient_by_ideal(const TensorAlgebra& t, const Subspace& ideal) {
  const auto& T = t.algebra();
  const FieldPtr& k = T.field();
  if (!is_ideal(T, ideal)) throw Error(ErrorKind::DimensionMismatch, "subspace is not a two-sided ideal");
  Quotient q;
  q.ideal = ideal;
  q.basis = ideal.complement();
  const std::size_t n = q.basis.size();
  std::vector<std::string> names;
  for (std::size_t i : q.basis) names.push_back(T.names()[i]);
  std::vector<SparseVec> table;
  table.reserve(n * n);
  for (std::size_t u : q.basis)
    for (std::size_t v : q.basis) table.push_back(to_sparse(q.project(to_dense(T.product(u, v), k, T.dim()))));
  q.algebra = AlgebraPresentation(k, std::move(names), q.project(T.unit()), std::move(table));

  const auto& c = T.certificates;
  std::vector<Vec> rad;
  for (const auto& v : *c.radical) rad.push_back(q.project(v));
  q.algebra.certificates.radical = Subspace::span(k, n, std::move(rad)).basis();
  std::vector<BlockCertificate> blocks;
  for (const auto& b : *c.blocks) {
    BlockCertificate nb{b.tower, {}};
    for (const auto& v : b.lift) nb.lift.push_back(q.project(v));
    blocks.push_back(std::move(nb));
  }
  q.algebra.certificates.blocks = std::move(blocks);
  std::vector<Vec> idems;
  for (const auto& v : *c.idempotents) idems.push_back(q.project(v));
  q.algebra.certificates.idempotents = std::move(idems);
  std::vector<Vec> eps_cols;
  for (std::size_t col = 0; col < c.epsilon->cols(); ++col) eps_cols.push_back(q.project(c.epsilon->column(col)));
  q.algebra.certificates.epsilon = Matrix::from_columns(k, eps_cols, n);

  q.sound = t.full() || ideal.contains(t.J_power(t.bound()));
  q.inside_J2 = t.J_power(2).contains(ideal);
  const std::size_t top = std::max<std::size_t>(2, t.full() ? t.bound() + 1 : t.bound());
  for (std::size_t m = 2; m <= top; ++m)
    if (ideal.contains(t.J_power(m))) {
      q.contains_J_power = m;
      break;
    }
  return q;
}

Quotient quotient_by_relations(const TensorAlgebra& t, const std::vector<Relation>& rels) {
  std::vector<Vec> gens;
  for (const auto& r : rels) gens.push_back(t.relation_vector(r));
  return quotient_by_ideal(t, ideal_closure(t.algebra(), gens));
}

// ------------------------------------------------------------------ modules

Matrix Module::act(const Vec& x) const {
  Matrix out(field, dim, dim);
  for (std::size_t l = 0; l < action.size(); ++l) {
    if (x[l].is_zero()) continue;
    const Matrix& a = action[l];
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        if (!a.at(r, c).is_zero()) out.at(r, c) += x[l] * a.at(r, c);
  }
  return out;
}

void verify_module(const AlgebraPresentation& a, const Module& m) {
  if (m.action.size() != a.dim()) throw Error(ErrorKind::NotAModule, "one action matrix per basis element expected");
  for (const auto& x : m.action)
    if (x.rows() != m.dim || x.cols() != m.dim) throw Error(ErrorKind::NotAModule, "action matrix shape");
  if (m.act(a.unit()) != Matrix::identity(a.field(), m.dim)) throw Error(ErrorKind::NotAModule, "unit does not act as 1");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (m.action[i] * m.action[j] != m.act(to_dense(a.product(i, j), a.field(), a.dim())))
        throw Error(ErrorKind::NotAModule, "action not multiplicative at (" + a.names()[i] + ", " + a.names()[j] + ")");
}

Module regular_module(const AlgebraPresentation& a) {
  Module m{a.field(), a.dim(), {}};
  for (std::size_t l = 0; l < a.dim(); ++l) m.action.push_back(a.left_mult(a.basis(l)));
  return m;
}

Module submodule(const Module& m, const Subspace& sub) {
  Module out{m.field, sub.dim(), {}};
  for (const auto& a : m.action) {
    std::vector<Vec> cols;
    for (const auto& b : sub.basis()) {
      auto c = sub.coordinates(a.apply(b));
      if (!c) throw Error(ErrorKind::NotAModule, "subspace is not invariant");
      cols.push_back(std::move(*c));
    }
    out.action.push_back(Matrix::from_columns(m.field, cols, sub.dim()));
  }
  return out;
}

Module generated_submodule(const Module& m, const std::vector<Vec>& gens) {
  Subspace s(m.field, m.dim);
  std::deque<Vec> queue;
  auto push = [&](const Vec& v) {
    Vec r = s.reduce(v);
    if (is_zero_vec(r)) return;
    s = s.sum(Subspace::span(m.field, m.dim, {r}));
    queue.push_back(std::move(r));
  };
  for (const auto& g : gens) push(g);
  while (!queue.empty()) {
    const Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : m.action) push(a.apply(v));
  }
  return submodule(m, s);
}

Module random_module(const AlgebraPresentation& a, Rng& rng) {
  return generated_submodule(regular_module(a), {random_vec(a.field(), a.dim(), rng)});
}

bool is_module_isomorphism(const Module& a, const Module& b, const Matrix& P) {
  if (a.dim != b.dim || a.action.size() != b.action.size()) return false;
  if (P.rows() != a.dim || P.cols() != a.dim || rank(P) != a.dim) return false;
  for (std::size_t u = 0; u < a.action.size(); ++u)
    if (a.action[u] * P != P * b.action[u]) return false;
  return true;
}

// ---------------------------------------------------------- representations

namespace {

// Left D_target action on M_e (x) V_i, for the x-th tower basis element.
Matrix tensor_left(const Bimodule& b, const BalancedTensor& t, std::size_t x, const FieldPtr& k) {
  const std::size_t n = t.dim();
  Matrix m(k, n, n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto [a, v] = t.basis[q];
    Vec col = zero_vec(k, n);
    for (std::size_t c = 0; c < b.dim(); ++c)
      if (!b.left[x].at(c, a).is_zero()) axpy(col, b.left[x].at(c, a), t.pure(c, v));
    for (std::size_t r = 0; r < n; ++r) m.at(r, q) = col[r];
  }
  return m;
}

// Action of every word of T on F(r), without verification.
std::vector<Matrix> word_actions(const TensorAlgebra& t, const Representation& r) {
  const Species& s = t.species();
  const FieldPtr& k = s.field();
  std::vector<std::size_t> off;
  std::size_t total = 0;
  for (std::size_t d : r.dims) {
    off.push_back(total);
    total += d;
  }
  std::vector<Matrix> acts(t.dim(), Matrix(k, total, total));
  for (std::size_t i = 0; i < s.vertex_count(); ++i)
    for (std::size_t x = 0; x < s.tower(i).dim(); ++x)
      place_block(acts[t.vertex_offset(i) + x], off[i], off[i], r.vertex_action[i][x]);
  // step[e][a]: V_source -> V_target, v -> phi_e(m_a (x) v)
  std::vector<std::vector<Matrix>> step(s.edge_count());
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const Bimodule& b = s.edge(e);
    const BalancedTensor bt = edge_tensor(s, e, r);
    for (std::size_t a = 0; a < b.dim(); ++a) {
      Matrix red(k, bt.dim(), r.dims[b.source]);
      for (std::size_t v = 0; v < r.dims[b.source]; ++v) {
        const Vec& c = bt.pure(a, v);
        for (std::size_t q = 0; q < c.size(); ++q) red.at(q, v) = c[q];
      }
      step[e].push_back(r.edge_maps[e] * red);
    }
  }
  const PathSystem& ps = t.paths();
  for (std::size_t p = 0; p < ps.count(); ++p) {
    const PathModule& pm = ps.module(p);
    for (std::size_t w = 0; w < pm.dim(); ++w) {
      Matrix m = Matrix::identity(k, r.dims[pm.path.source]);
      for (std::size_t l = 0; l < pm.path.length(); ++l) m = step[pm.path.edges[l]][pm.words[w][l]] * m;
      place_block(acts[t.path_offset(p) + w], off[pm.path.target], off[pm.path.source], m);
    }
  }
  return acts;
}

Matrix combine(const std::vector<Matrix>& acts, const Vec& x, const FieldPtr& k, std::size_t n) {
  return action_of(acts, x, k, n);
}

// G's vertex spaces V_i = e_i V.
std::vector<Subspace> vertex_spaces(const TensorAlgebra& t, const std::function<Matrix(const Vec&)>& act) {
  std::vector<Subspace> out;
  for (std::size_t i = 0; i < t.species().vertex_count(); ++i) out.push_back(column_space(act(t.vertex_unit(i))));
  return out;
}

std::function<Matrix(const Vec&)> module_action(const Module& m, const Quotient* q) {
  if (q) return [&m, q](const Vec& x) { return m.act(q->project(x)); };
  return [&m](const Vec& x) { return m.act(x); };
}

}  // namespace

BalancedTensor edge_tensor(const Species& s, std::size_t e, const Representation& r) {
  const Bimodule& b = s.edge(e);
  return balanced_tensor(s.field(), b.dim(), b.right, r.dims[b.source], r.vertex_action[b.source]);
}

void validate_representation(const Species& s, const Representation& r) {
  const FieldPtr& k = s.field();
  if (r.dims.size() != s.vertex_count() || r.vertex_action.size() != s.vertex_count() ||
      r.edge_maps.size() != s.edge_count())
    throw Error(ErrorKind::NotAModule, "representation shape does not match the species");
  for (std::size_t i = 0; i < s.vertex_count(); ++i) {
    const TowerOverK& D = s.tower(i);
    const auto& A = r.vertex_action[i];
    const std::size_t n = r.dims[i];
    if (A.size() != D.dim()) throw Error(ErrorKind::NotAModule, "vertex " + std::to_string(i) + ": action count");
    for (const auto& m : A)
      if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::NotAModule, "vertex " + std::to_string(i) + ": shape");
    if (action_of(A, D.coords(D.tower()->one()), k, n) != Matrix::identity(k, n))
      throw Error(ErrorKind::NotAModule, "vertex " + std::to_string(i) + ": 1 does not act as identity");
    for (std::size_t x = 0; x < D.dim(); ++x)
      for (std::size_t y = 0; y < D.dim(); ++y)
        if (A[x] * A[y] != action_of(A, D.product(x, y), k, n))
          throw Error(ErrorKind::NotAModule, "vertex " + std::to_string(i) + ": action not multiplicative");
  }
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const Bimodule& b = s.edge(e);
    const BalancedTensor bt = edge_tensor(s, e, r);
    const Matrix& phi = r.edge_maps[e];
    if (phi.rows() != r.dims[b.target] || phi.cols() != bt.dim())
      throw Error(ErrorKind::NotAModule, "edge " + std::to_string(e) + ": map shape");
    for (std::size_t x = 0; x < s.tower(b.target).dim(); ++x)
      if (phi * tensor_left(b, bt, x, k) != r.vertex_action[b.target][x] * phi)
        throw Error(ErrorKind::EquivarianceFails, "edge " + std::to_string(e) + ": map is not D-linear");
  }
}

Representation random_representation(const Species& s, Rng& rng, std::size_t max_mult) {
  const FieldPtr& k = s.field();
  Representation r;
  for (std::size_t i = 0; i < s.vertex_count(); ++i) {
    const TowerOverK& D = s.tower(i);
    const std::size_t copies = static_cast<std::size_t>(rng() % (max_mult + 1));
    const std::size_t n = copies * D.dim();
    r.dims.push_back(n);
    std::vector<Matrix> acts;
    for (std::size_t x = 0; x < D.dim(); ++x) {
      Matrix m(k, n, n);
      const Matrix mul = tower_mult(D, x, k);
      for (std::size_t c = 0; c < copies; ++c) place_block(m, c * D.dim(), c * D.dim(), mul);
      acts.push_back(std::move(m));
    }
    r.vertex_action.push_back(std::move(acts));
  }
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const Bimodule& b = s.edge(e);
    const BalancedTensor bt = edge_tensor(s, e, r);
    const std::size_t rows = r.dims[b.target], cols = bt.dim();
    Matrix phi(k, rows, cols);
    if (rows > 0 && cols > 0) {
      std::vector<std::pair<Matrix, Matrix>> cons;
      for (std::size_t x = 0; x < s.tower(b.target).dim(); ++x)
        cons.emplace_back(r.vertex_action[b.target][x], tensor_left(b, bt, x, k));
      const Subspace maps = sylvester_kernel(k, rows, cols, cons);
      Vec flat = zero_vec(k, rows * cols);
      for (const auto& v : maps.basis()) axpy(flat, random_elem(k, rng, 2), v);
      for (std::size_t q = 0; q < rows; ++q)
        for (std::size_t c = 0; c < cols; ++c) phi.at(q, c) = flat[q * cols + c];
    }
    r.edge_maps.push_back(std::move(phi));
  }
  return r;
}

Representation module_to_rep(const TensorAlgebra& t, const Module& m, const Quotient* q) {
  const Species& s = t.species();
  const FieldPtr& k = s.field();
  const auto act = module_action(m, q);
  const auto V = vertex_spaces(t, act);
  Representation r;
  for (std::size_t i = 0; i < s.vertex_count(); ++i) {
    r.dims.push_back(V[i].dim());
    std::vector<Matrix> acts;
    for (std::size_t x = 0; x < s.tower(i).dim(); ++x) {
      const Matrix a = act(t.vertex_element(i, s.tower(i).basis(x)));
      std::vector<Vec> cols;
      for (const auto& b : V[i].basis()) cols.push_back(*V[i].coordinates(a.apply(b)));
      acts.push_back(Matrix::from_columns(k, cols, V[i].dim()));
    }
    r.vertex_action.push_back(std::move(acts));
  }
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const Bimodule& b = s.edge(e);
    const BalancedTensor bt = edge_tensor(s, e, r);
    Matrix phi(k, r.dims[b.target], bt.dim());
    if (const auto p = t.paths().find({e})) {
      std::vector<Matrix> word_act;
      for (std::size_t a = 0; a < b.dim(); ++a) word_act.push_back(act(t.path_vector(*p, unit_vec(k, b.dim(), a))));
      for (std::size_t c = 0; c < bt.dim(); ++c) {
        const auto [a, v] = bt.basis[c];
        const auto coords = V[b.target].coordinates(word_act[a].apply(V[b.source].basis()[v]));
        if (!coords) throw Error(ErrorKind::NotAModule, "edge word leaves the target vertex space");
        for (std::size_t row = 0; row < coords->size(); ++row) phi.at(row, c) = (*coords)[row];
      }
    }
    r.edge_maps.push_back(std::move(phi));
  }
  return r;
}

Module rep_to_module(const TensorAlgebra& t, const Representation& r, const Quotient* q) {
  validate_representation(t.species(), r);
  const FieldPtr& k = t.species().field();
  std::size_t total = 0;
  for (std::size_t d : r.dims) total += d;
  auto acts = word_actions(t, r);
  Module m{k, total, {}};
  if (q) {
    for (std::size_t u : q->basis) m.action.push_back(acts[u]);
    verify_module(q->algebra, m);
  } else {
    m.action = std::move(acts);
    verify_module(t.algebra(), m);
  }
  return m;
}

Matrix vertex_basis_change(const TensorAlgebra& t, const Module& m, const Quotient* q) {
  const auto V = vertex_spaces(t, module_action(m, q));
  std::vector<Vec> cols;
  for (const auto& vi : V) cols.insert(cols.end(), vi.basis().begin(), vi.basis().end());
  return Matrix::from_columns(m.field, cols, m.dim);
}

bool annihilated_by(const TensorAlgebra& t, const Representation& r, const Subspace& ideal) {
  const FieldPtr& k = t.species().field();
  std::size_t total = 0;
  for (std::size_t d : r.dims) total += d;
  const auto acts = word_actions(t, r);
  for (const auto& y : ideal.basis())
    if (!combine(acts, y, k, total).is_zero()) return false;
  return true;
}

bool rep_satisfies_relations(const TensorAlgebra& t, const Representation& r, const std::vector<Relation>& rels) {
  const Species& s = t.species();
  const FieldPtr& k = s.field();
  const auto& T = t.algebra();
  std::size_t total = 0;
  for (std::size_t d : r.dims) total += d;
  const auto acts = word_actions(t, r);
  for (const auto& rel : rels) {
    const Vec x = t.relation_vector(rel);
    std::vector<Vec> span;
    for (std::size_t a = 0; a < s.tower(rel.end).dim(); ++a) {
      const Vec left = T.mul(t.vertex_element(rel.end, s.tower(rel.end).basis(a)), x);
      for (std::size_t b = 0; b < s.tower(rel.start).dim(); ++b)
        span.push_back(T.mul(left, t.vertex_element(rel.start, s.tower(rel.start).basis(b))));
    }
    const Subspace generated = Subspace::span(k, T.dim(), std::move(span));
    for (const auto& y : generated.basis())
      if (!combine(acts, y, k, total).is_zero()) return false;
  }
  return true;
}

// -------------------------------------------------------------- projectives

Module projective_module(const BasicStructure& s, std::size_t i) {
  const auto& a = s.algebra();
  std::vector<Vec> v;
  for (std::size_t l = 0; l < a.dim(); ++l) v.push_back(a.mul(a.basis(l), s.idempotents()[i]));
  return submodule(regular_module(a), Subspace::span(a.field(), a.dim(), std::move(v)));
}

namespace {

Subspace radical_part(const BasicStructure& s, const Module& m) {
  std::vector<Vec> v;
  for (const auto& r : s.radical().basis()) {
    const Matrix a = m.act(r);
    for (std::size_t c = 0; c < m.dim; ++c) v.push_back(a.column(c));
  }
  return Subspace::span(m.field, m.dim, std::move(v));
}

}  // namespace

Module radical_of(const BasicStructure& s, const Module& m) { return submodule(m, radical_part(s, m)); }

std::vector<std::size_t> top_multiplicities(const BasicStructure& s, const Module& m) {
  const Subspace R = radical_part(s, m);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.block_count(); ++i) {
    const Subspace Ei = column_space(m.act(s.idempotents()[i]));
    out.push_back((R.sum(Ei).dim() - R.dim()) / s.tower(i).dim());
  }
  return out;
}

ProjectivityVerdict is_projective(const BasicStructure& s, const Module& m) {
  const auto& a = s.algebra();
  ProjectivityVerdict v;
  v.module_dim = m.dim;
  const Subspace R = radical_part(s, m);
  Subspace image(m.field, m.dim);
  for (std::size_t j = 0; j < s.block_count(); ++j) {
    const Subspace Ej = column_space(m.act(s.idempotents()[j]));
    std::vector<Vec> pj;
    for (std::size_t l = 0; l < a.dim(); ++l) pj.push_back(a.mul(a.basis(l), s.idempotents()[j]));
    const Subspace Pj = Subspace::span(a.field(), a.dim(), std::move(pj));
    Subspace cur = R;
    std::size_t mult = 0;
    for (const auto& g : Ej.basis()) {
      if (cur.contains(Ej)) break;
      std::vector<Vec> span;
      for (const auto& lift : s.block(j).lift) span.push_back(m.act(lift).apply(g));
      const Subspace next = cur.sum(Subspace::span(m.field, m.dim, std::move(span)));
      if (next.dim() == cur.dim()) continue;
      cur = next;
      ++mult;
      std::vector<Vec> img;
      for (const auto& y : Pj.basis()) img.push_back(m.act(y).apply(g));
      image = image.sum(Subspace::span(m.field, m.dim, std::move(img)));
      v.cover_dim += Pj.dim();
    }
    v.multiplicity.push_back(mult);
  }
  v.projective = image.dim() == m.dim && v.cover_dim == m.dim;
  return v;
}

HereditaryReport hereditary_check(const BasicStructure& s) {
  const auto& a = s.algebra();
  const Module reg = regular_module(a);
  HereditaryReport rep;
  for (std::size_t i = 0; i < s.block_count(); ++i) {
    std::vector<Vec> v;
    for (const auto& r : s.radical().basis()) v.push_back(a.mul(r, s.idempotents()[i]));
    const Module re = submodule(reg, Subspace::span(a.field(), a.dim(), std::move(v)));
    rep.radicals.push_back(is_projective(s, re));
    rep.hereditary = rep.hereditary && rep.radicals.back().projective;
  }
  return rep;
}

// ------------------------------------------------------- species morphisms

SpeciesMap SpeciesMap::identity(const Species& s) {
  SpeciesMap f;
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const std::size_t n = s.edge(e).dim();
    f.edge.push_back(e);
    f.project.push_back(Matrix::identity(s.field(), n));
    std::vector<std::size_t> kept(n);
    for (std::size_t l = 0; l < n; ++l) kept[l] = l;
    f.kept.push_back(std::move(kept));
  }
  return f;
}

SpeciesMap SpeciesMap::then(const SpeciesMap& next) const {
  SpeciesMap f;
  for (std::size_t e = 0; e < edge.size(); ++e) {
    if (!edge[e] || !next.edge[*edge[e]]) {
      f.edge.push_back(std::nullopt);
      f.project.emplace_back();
      f.kept.emplace_back();
      continue;
    }
    const std::size_t mid = *edge[e];
    f.edge.push_back(next.edge[mid]);
    f.project.push_back(next.project[mid] * project[e]);
    std::vector<std::size_t> kept_new;
    for (std::size_t l : next.kept[mid]) kept_new.push_back(kept[e][l]);
    f.kept.push_back(std::move(kept_new));
  }
  return f;
}

namespace {

// Image of the pure word along path p of `from`: (path index in `to`, coordinates).
std::optional<std::pair<std::size_t, Vec>> map_word(const PathSystem& from, const PathSystem& to, const SpeciesMap& f,
                                                    std::size_t p, const std::vector<std::size_t>& word) {
  const PathModule& pm = from.module(p);
  std::vector<std::size_t> edges;
  std::vector<Vec> images;
  for (std::size_t l = 0; l < pm.path.length(); ++l) {
    const std::size_t e = pm.path.edges[l];
    if (!f.edge[e]) return std::nullopt;
    edges.push_back(*f.edge[e]);
    images.push_back(f.project[e].column(word[l]));
  }
  const auto q = to.find(edges);
  if (!q) return std::nullopt;
  const FieldPtr& k = to.species().field();
  Vec out = zero_vec(k, to.module(*q).dim());
  std::vector<std::size_t> cur(edges.size());
  std::function<void(std::size_t, const Elem&)> expand = [&](std::size_t l, const Elem& c) {
    if (l == edges.size()) {
      axpy(out, c, to.reduce(*q, cur));
      return;
    }
    for (std::size_t x = 0; x < images[l].size(); ++x) {
      if (images[l][x].is_zero()) continue;
      cur[l] = x;
      expand(l + 1, c * images[l][x]);
    }
  };
  expand(0, k->one());
  return std::make_pair(*q, std::move(out));
}

}  // namespace

Matrix tensor_map(const TensorAlgebra& from, const TensorAlgebra& to, const SpeciesMap& f) {
  const FieldPtr& k = from.species().field();
  Matrix m(k, to.dim(), from.dim());
  for (std::size_t i = 0; i < from.species().vertex_count(); ++i)
    for (std::size_t x = 0; x < from.species().tower(i).dim(); ++x)
      m.at(to.vertex_offset(i) + x, from.vertex_offset(i) + x) = k->one();
  const PathSystem& ps = from.paths();
  for (std::size_t p = 0; p < ps.count(); ++p)
    for (std::size_t w = 0; w < ps.module(p).dim(); ++w) {
      const auto img = map_word(ps, to.paths(), f, p, ps.module(p).words[w]);
      if (!img) continue;
      for (std::size_t r = 0; r < img->second.size(); ++r)
        m.at(to.path_offset(img->first) + r, from.path_offset(p) + w) = img->second[r];
    }
  return m;
}

Relation map_relation(const PathSystem& from, const PathSystem& to, const SpeciesMap& f, const Relation& r) {
  Relation out{r.start, r.end, {}};
  for (const auto& [edges, v] : r.components) {
    const auto p = from.find(edges);
    if (!p) throw Error(ErrorKind::RelationOutOfBound, "relation component outside the path system");
    for (std::size_t w = 0; w < v.size(); ++w) {
      if (v[w].is_zero()) continue;
      const auto img = map_word(from, to, f, *p, from.module(*p).words[w]);
      if (!img) continue;
      out.components.emplace_back(to.module(img->first).path.edges, scale(v[w], img->second));
    }
  }
  return normalize_relation(to, std::move(out));
}

StrongReduction reduce_to_strong_canonical(const Species& s, const std::vector<Relation>& rels) {
  const PathSystem ps0(s, std::nullopt);
  std::vector<Relation> cur_rels;
  for (const auto& r : rels) cur_rels.push_back(normalize_relation(ps0, r));
  const auto check = validate_canonical_set(s, cur_rels);
  if (!check.ok) throw Error(ErrorKind::NotCanonicalSet, check.diagnostic);

  StrongReduction out;
  out.dim_before = quotient_by_relations(TensorAlgebra(s, std::nullopt), cur_rels).algebra.dim();
  Species cur = s;
  SpeciesMap map = SpeciesMap::identity(s);
  for (;;) {
    std::optional<std::size_t> pick;
    for (std::size_t t = 0; t < cur_rels.size() && !pick; ++t)
      if (is_canonical(cur_rels[t]) && cur_rels[t].nonzero_components() == 1) pick = t;
    if (!pick) break;
    const Relation& rel = cur_rels[*pick];
    const std::size_t e = *cur.edge_between(rel.start, rel.end);
    const EdgeQuotient eq = quotient_edge(cur, e, cur.generated(e, {*rel.arrow_part()}));
    SpeciesMap step;
    std::vector<Bimodule> edges;
    for (std::size_t x = 0; x < cur.edge_count(); ++x) {
      if (x == e && eq.bimodule.dim() == 0) {
        step.edge.push_back(std::nullopt);
        step.project.emplace_back();
        step.kept.emplace_back();
        continue;
      }
      step.edge.push_back(edges.size());
      if (x == e) {
        edges.push_back(eq.bimodule);
        step.project.push_back(eq.project);
        step.kept.push_back(eq.kept);
      } else {
        edges.push_back(cur.edge(x));
        step.project.push_back(Matrix::identity(cur.field(), cur.edge(x).dim()));
        std::vector<std::size_t> kept(cur.edge(x).dim());
        for (std::size_t l = 0; l < kept.size(); ++l) kept[l] = l;
        step.kept.push_back(std::move(kept));
      }
    }
    std::vector<FieldPtr> towers;
    for (std::size_t i = 0; i < cur.vertex_count(); ++i) towers.push_back(cur.vertex(i));
    Species next(cur.field(), std::move(towers), std::move(edges));
    const PathSystem from(cur, std::nullopt), to(next, std::nullopt);
    std::vector<Relation> next_rels;
    for (std::size_t t = 0; t < cur_rels.size(); ++t) {
      if (t == *pick) continue;
      Relation mapped = map_relation(from, to, step, cur_rels[t]);
      if (mapped.nonzero_components() > 0) next_rels.push_back(std::move(mapped));
    }
    map = map.then(step);
    cur = std::move(next);
    cur_rels = std::move(next_rels);
    ++out.eliminated;
  }
  out.dim_after = quotient_by_relations(TensorAlgebra(cur, std::nullopt), cur_rels).algebra.dim();
  out.species = std::move(cur);
  out.relations = std::move(cur_rels);
  out.map = std::move(map);
  return out;
}

}  // namespace algkit
