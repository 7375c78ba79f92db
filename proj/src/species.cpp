#include "algkit/species.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace algkit {

namespace {

void add_scaled(Matrix& acc, const Elem& c, const Matrix& m) {
  if (c.is_zero()) return;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t q = 0; q < m.cols(); ++q)
      if (!m.at(r, q).is_zero()) acc.at(r, q) += c * m.at(r, q);
}

bool square_of(const Matrix& m, std::size_t n) { return m.rows() == n && m.cols() == n; }

std::string edge_name(const Bimodule& b) { return std::to_string(b.source) + "->" + std::to_string(b.target); }

}  // namespace

Matrix action_of(const std::vector<Matrix>& mats, const Vec& coords, const FieldPtr& k, std::size_t n) {
  Matrix out(k, n, n);
  for (std::size_t m = 0; m < mats.size(); ++m) add_scaled(out, coords[m], mats[m]);
  return out;
}

Matrix tower_mult(const TowerOverK& t, std::size_t x, const FieldPtr& k) {
  Matrix m(k, t.dim(), t.dim());
  for (std::size_t a = 0; a < t.dim(); ++a)
    for (std::size_t c = 0; c < t.dim(); ++c) m.at(c, a) = t.product(a, x)[c];
  return m;
}

Species::Species(FieldPtr k, std::vector<FieldPtr> towers, std::vector<Bimodule> edges)
    : k_(std::move(k)), towers_(std::move(towers)), edges_(std::move(edges)) {
  for (const auto& t : towers_) tower_data_.emplace_back(t, k_);
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges_) {
    if (e.source >= towers_.size() || e.target >= towers_.size())
      throw Error(ErrorKind::DimensionMismatch, "edge " + edge_name(e) + " has a missing endpoint");
    const std::pair<std::size_t, std::size_t> key{e.source, e.target};
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw Error(ErrorKind::DimensionMismatch, "two edges " + edge_name(e) + "; sum the bimodules instead");
    seen.push_back(key);
    if (e.dim() == 0) throw Error(ErrorKind::DimensionMismatch, "zero bimodule on edge " + edge_name(e));
    if (e.left.size() != tower_data_[e.target].dim() || e.right.size() != tower_data_[e.source].dim())
      throw Error(ErrorKind::DimensionMismatch, "edge " + edge_name(e) + " needs one matrix per tower basis element");
    for (const auto& m : e.left)
      if (!square_of(m, e.dim())) throw Error(ErrorKind::DimensionMismatch, "left action shape on " + edge_name(e));
    for (const auto& m : e.right)
      if (!square_of(m, e.dim())) throw Error(ErrorKind::DimensionMismatch, "right action shape on " + edge_name(e));
  }
}

std::optional<std::size_t> Species::edge_between(std::size_t source, std::size_t target) const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].source == source && edges_[e].target == target) return e;
  return std::nullopt;
}

Matrix Species::left_action(std::size_t e, const Elem& d) const {
  const auto& b = edges_[e];
  return action_of(b.left, tower_data_[b.target].coords(d), k_, b.dim());
}

Matrix Species::right_action(std::size_t e, const Elem& d) const {
  const auto& b = edges_[e];
  return action_of(b.right, tower_data_[b.source].coords(d), k_, b.dim());
}

Subspace Species::generated(std::size_t e, const std::vector<Vec>& gens) const {
  const auto& b = edges_[e];
  std::vector<Vec> span;
  for (const auto& g : gens)
    for (const auto& l : b.left) {
      const Vec lg = l.apply(g);
      for (const auto& r : b.right) span.push_back(r.apply(lg));
    }
  return Subspace::span(k_, b.dim(), std::move(span));
}

// --------------------------------------------------------------- validation

namespace {

// Enough pairwise distinct elements of f, as many as exist up to `count`.
std::vector<Elem> distinct_elements(const FieldPtr& f, std::size_t count) {
  std::vector<Elem> out;
  const std::uint64_t p = f->characteristic();
  switch (f->kind()) {
    case FieldKind::Prime:
      for (std::size_t i = 0; i < count && (p == 0 || i < p); ++i) out.push_back(f->from_int(static_cast<long long>(i)));
      break;
    case FieldKind::RationalFunction:
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint32_t> digits;
        for (std::size_t x = i; x > 0; x /= p) digits.push_back(static_cast<std::uint32_t>(x % p));
        out.push_back(make_ratfun(f, FpPoly(static_cast<std::uint32_t>(p), digits), FpPoly::constant(static_cast<std::uint32_t>(p), 1)));
      }
      break;
    case FieldKind::Extension: {
      const auto base = distinct_elements(f->base(), count);
      const std::size_t deg = f->degree();
      if (base.size() >= count) {
        for (const auto& b : base) out.push_back(embed(b, f));
        break;
      }
      for (std::size_t i = 0; out.size() < count; ++i) {
        Vec c;
        std::size_t x = i;
        for (std::size_t l = 0; l < deg; ++l, x /= base.size()) c.push_back(base[x % base.size()]);
        if (x > 0) break;
        out.emplace_back(f, std::move(c));
      }
      break;
    }
  }
  return out;
}

// A finite extension of k with at least `count` elements (k itself when large enough).
FieldPtr large_field(const FieldPtr& k, std::size_t count) {
  if (distinct_elements(k, count).size() >= count) return k;
  const auto elems = distinct_elements(k, k->cardinality().value_or(count));
  const auto symbols = k->symbols();
  std::string name = "zeta";
  while (std::find(symbols.begin(), symbols.end(), name) != symbols.end()) name += "z";
  for (std::size_t deg = 2;; ++deg) {
    std::size_t total = 1;
    for (std::size_t l = 0; l < deg; ++l) total *= elems.size();
    if (total < count) continue;
    for (std::size_t i = 0; i < total; ++i) {
      Vec c;
      std::size_t x = i;
      for (std::size_t l = 0; l < deg; ++l, x /= elems.size()) c.push_back(elems[x % elems.size()]);
      c.push_back(k->one());
      try {
        return Field::extension(k, name, Polynomial(k, c));
      } catch (const Error&) {
      }
    }
  }
}

struct HomDual {
  Subspace space;              // inside k^{rows * m}
  std::vector<Matrix> act_i;   // D_source action in space coordinates
  std::vector<Matrix> act_j;   // D_target action
};

Matrix unflatten(const Vec& v, std::size_t rows, std::size_t cols, const FieldPtr& k) {
  Matrix m(k, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = v[r * cols + c];
  return m;
}

Vec flatten(const Matrix& m) {
  Vec v;
  for (const auto& row : m.row_data()) v.insert(v.end(), row.begin(), row.end());
  return v;
}

Matrix restricted(const Subspace& space, const std::function<Vec(const Vec&)>& f, const FieldPtr& k) {
  std::vector<Vec> cols;
  for (const auto& b : space.basis()) {
    auto c = space.coordinates(f(b));
    if (!c) throw Error(ErrorKind::DualityFails, "Hom space not stable under the actions");
    cols.push_back(std::move(*c));
  }
  return Matrix::from_columns(k, cols, space.dim());
}

void check_duality(const Species& s, std::size_t e) {
  const FieldPtr& k = s.field();
  const Bimodule& b = s.edge(e);
  const TowerOverK& Di = s.tower(b.source);
  const TowerOverK& Dj = s.tower(b.target);
  const std::size_t m = b.dim();
  const std::size_t di = Di.dim(), dj = Dj.dim();

  // X = Hom_{D_i}(M, D_i): Phi R_y = Mul_y Phi.
  std::vector<std::pair<Matrix, Matrix>> cx;
  for (std::size_t y = 0; y < di; ++y) cx.emplace_back(tower_mult(Di, y, k), b.right[y]);
  HomDual X{sylvester_kernel(k, di, m, cx), {}, {}};
  // Y = Hom_{D_j}(M, D_j): Psi L_z = Mul_z Psi.
  std::vector<std::pair<Matrix, Matrix>> cy;
  for (std::size_t z = 0; z < dj; ++z) cy.emplace_back(tower_mult(Dj, z, k), b.left[z]);
  HomDual Y{sylvester_kernel(k, dj, m, cy), {}, {}};
  if (X.space.dim() != Y.space.dim())
    throw Error(ErrorKind::DualityFails, "edge " + edge_name(b) + ": Hom duals have different dimensions");
  const std::size_t n = X.space.dim();

  for (std::size_t x = 0; x < di; ++x) {
    const Matrix mul = tower_mult(Di, x, k);
    X.act_i.push_back(restricted(X.space, [&](const Vec& v) { return flatten(mul * unflatten(v, di, m, k)); }, k));
    Y.act_i.push_back(restricted(Y.space, [&](const Vec& v) { return flatten(unflatten(v, dj, m, k) * b.right[x]); }, k));
  }
  for (std::size_t z = 0; z < dj; ++z) {
    const Matrix mul = tower_mult(Dj, z, k);
    X.act_j.push_back(restricted(X.space, [&](const Vec& v) { return flatten(unflatten(v, di, m, k) * b.left[z]); }, k));
    Y.act_j.push_back(restricted(Y.space, [&](const Vec& v) { return flatten(mul * unflatten(v, dj, m, k)); }, k));
  }
  // Intertwiners T: T A_X = A_Y T.
  std::vector<std::pair<Matrix, Matrix>> ct;
  for (std::size_t x = 0; x < di; ++x) ct.emplace_back(Y.act_i[x], X.act_i[x]);
  for (std::size_t z = 0; z < dj; ++z) ct.emplace_back(Y.act_j[z], X.act_j[z]);
  const Subspace inter = sylvester_kernel(k, n, n, ct);
  const std::size_t r = inter.dim();
  if (r == 0) throw Error(ErrorKind::DualityFails, "edge " + edge_name(b) + ": no bimodule maps between the Hom duals");

  // det(sum z_l T_l) has degree <= n in each variable, so it is nonzero as a
  // polynomial iff it is nonzero somewhere on a grid S^r with |S| = n + 1.
  const FieldPtr F = large_field(k, n + 1);
  const auto S = distinct_elements(F, n + 1);
  std::vector<Matrix> T;
  for (const auto& v : inter.basis()) {
    Matrix t(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t.at(i, j) = embed(v[i * n + j], F);
    T.push_back(std::move(t));
  }
  constexpr std::size_t kMaxPoints = 20000;
  std::vector<std::size_t> idx(r, 0);
  idx[0] = 1;
  for (std::size_t count = 0; count < kMaxPoints; ++count) {
    Matrix sum(F, n, n);
    for (std::size_t l = 0; l < r; ++l) add_scaled(sum, S[idx[l]], T[l]);
    if (rank(sum) == n) return;
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == S.size()) idx[pos++] = 0;
    if (pos == r) throw Error(ErrorKind::DualityFails, "edge " + edge_name(b) + ": Hom duals are not isomorphic");
  }
  throw Error(ErrorKind::UnsupportedShape, "edge " + edge_name(b) + ": intertwiner space too large for the determinant grid");
}

}  // namespace

void validate_species(const Species& s, bool strict_duality) {
  const FieldPtr& k = s.field();
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const Bimodule& b = s.edge(e);
    const TowerOverK& Dj = s.tower(b.target);
    const TowerOverK& Di = s.tower(b.source);
    const std::size_t n = b.dim();
    auto fail = [&](const std::string& what) {
      throw Error(ErrorKind::ActionAxiomFails, "edge " + edge_name(b) + ": " + what);
    };
    const Matrix id = Matrix::identity(k, n);
    if (action_of(b.left, Dj.coords(Dj.tower()->one()), k, n) != id) fail("left action of 1 is not the identity");
    if (action_of(b.right, Di.coords(Di.tower()->one()), k, n) != id) fail("right action of 1 is not the identity");
    for (std::size_t x = 0; x < Dj.dim(); ++x)
      for (std::size_t y = 0; y < Dj.dim(); ++y)
        if (b.left[x] * b.left[y] != action_of(b.left, Dj.product(x, y), k, n))
          fail("left action not associative at (" + Dj.label(x) + ", " + Dj.label(y) + ")");
    for (std::size_t x = 0; x < Di.dim(); ++x)
      for (std::size_t y = 0; y < Di.dim(); ++y)
        if (b.right[x] * b.right[y] != action_of(b.right, Di.product(y, x), k, n))
          fail("right action not associative at (" + Di.label(x) + ", " + Di.label(y) + ")");
    for (std::size_t x = 0; x < Dj.dim(); ++x)
      for (std::size_t y = 0; y < Di.dim(); ++y)
        if (b.left[x] * b.right[y] != b.right[y] * b.left[x])
          fail("actions do not commute at (" + Dj.label(x) + ", " + Di.label(y) + ")");
  }
  if (strict_duality)
    for (std::size_t e = 0; e < s.edge_count(); ++e) check_duality(s, e);
}

// ------------------------------------------------------------------ quivers

std::optional<std::size_t> Quiver::arrow(std::size_t source, std::size_t target) const {
  for (std::size_t a = 0; a < arrows.size(); ++a)
    if (arrows[a] == std::make_pair(source, target)) return a;
  return std::nullopt;
}

Quiver underlying(const Species& s) {
  Quiver q;
  q.vertices = s.vertex_count();
  for (const auto& e : s.edges()) q.arrows.emplace_back(e.source, e.target);
  return q;
}

std::optional<std::size_t> longest_path(const Quiver& q) {
  std::vector<std::size_t> indeg(q.vertices, 0), best(q.vertices, 0);
  for (const auto& [s, t] : q.arrows) ++indeg[t];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < q.vertices; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t done = 0, longest = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++done;
    longest = std::max(longest, best[v]);
    for (const auto& [s, t] : q.arrows) {
      if (s != v) continue;
      best[t] = std::max(best[t], best[v] + 1);
      if (--indeg[t] == 0) ready.push_back(t);
    }
  }
  if (done != q.vertices) return std::nullopt;
  return longest;
}

bool is_acyclic(const Quiver& q) { return longest_path(q).has_value(); }

bool is_tree_graph(const Quiver& q) {
  if (q.vertices == 0) return false;
  std::vector<std::size_t> parent(q.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& [s, t] : q.arrows) {
    const std::size_t a = find(s), b = find(t);
    if (a == b) return false;
    parent[a] = b;
  }
  for (std::size_t v = 1; v < q.vertices; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

std::vector<std::vector<std::size_t>> enumerate_paths(const Quiver& q, std::size_t i, std::size_t j,
                                                      std::size_t max_len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    if (!cur.empty() && v == j) out.push_back(cur);
    if (cur.size() == max_len) return;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      if (q.arrows[a].first != v) continue;
      cur.push_back(a);
      dfs(q.arrows[a].second);
      cur.pop_back();
    }
  };
  dfs(i);
  return out;
}

CanonicalQuiver canonical_quiver(const Quiver& q, std::size_t source, std::size_t target) {
  const auto a = q.arrow(source, target);
  if (!a) throw Error(ErrorKind::ArrowMissing, "no arrow " + std::to_string(source) + "->" + std::to_string(target));
  if (!is_acyclic(q)) throw Error(ErrorKind::CyclicWithoutBound, "canonical quivers need an acyclic quiver");
  CanonicalQuiver c;
  c.arrow = *a;
  std::vector<bool> used(q.arrows.size(), false);
  used[*a] = true;
  for (auto& p : enumerate_paths(q, source, target, q.vertices)) {
    if (p.size() < 2) continue;
    for (std::size_t x : p) used[x] = true;
    c.paths.push_back(std::move(p));
  }
  c.quiver.vertices = q.vertices;
  for (std::size_t x = 0; x < q.arrows.size(); ++x)
    if (used[x]) c.quiver.arrows.push_back(q.arrows[x]);
  return c;
}

// ----------------------------------------------------------- tensor words

BalancedTensor balanced_tensor(const FieldPtr& k, std::size_t dim_x, const std::vector<Matrix>& x_right,
                               std::size_t dim_y, const std::vector<Matrix>& y_left) {
  if (x_right.size() != y_left.size()) throw Error(ErrorKind::DimensionMismatch, "balanced tensor over different rings");
  BalancedTensor t;
  t.dim_x = dim_x;
  t.dim_y = dim_y;
  const std::size_t n = dim_x * dim_y;
  // Columns run in reverse pair order so that pivots fall on late pairs and
  // the surviving basis prefers early ones.
  auto col = [&](std::size_t a, std::size_t b) { return n - 1 - (a * dim_y + b); };
  std::vector<Vec> rels;
  for (std::size_t m = 0; m < x_right.size(); ++m)
    for (std::size_t a = 0; a < dim_x; ++a)
      for (std::size_t b = 0; b < dim_y; ++b) {
        Vec v = zero_vec(k, n);
        for (std::size_t c = 0; c < dim_x; ++c) v[col(c, b)] += x_right[m].at(c, a);
        for (std::size_t c = 0; c < dim_y; ++c) v[col(a, c)] -= y_left[m].at(c, b);
        if (!is_zero_vec(v)) rels.push_back(std::move(v));
      }
  const Subspace rel = Subspace::span(k, n, std::move(rels));
  std::vector<bool> pivot(n, false);
  for (std::size_t p : rel.pivots()) pivot[p] = true;
  std::vector<std::size_t> kept;  // pair indices, ascending
  for (std::size_t q = 0; q < n; ++q)
    if (!pivot[n - 1 - q]) {
      kept.push_back(q);
      t.basis.emplace_back(q / dim_y, q % dim_y);
    }
  t.reduce.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    const Vec r = rel.reduce(unit_vec(k, n, n - 1 - q));
    Vec c;
    c.reserve(kept.size());
    for (std::size_t kq : kept) c.push_back(r[n - 1 - kq]);
    t.reduce.push_back(std::move(c));
  }
  return t;
}

PathSystem::PathSystem(const Species& s, std::optional<std::size_t> bound) : s_(s) {
  const Quiver q = underlying(s);
  if (bound) {
    bound_ = *bound;
  } else {
    const auto l = longest_path(q);
    if (!l) throw Error(ErrorKind::CyclicWithoutBound, "the quiver has an oriented cycle; give a length bound");
    bound_ = *l;
  }
  const FieldPtr& k = s.field();
  std::vector<std::size_t> level;
  if (bound_ >= 1)
    for (std::size_t e = 0; e < s.edge_count(); ++e) {
      const Bimodule& b = s.edge(e);
      PathModule pm;
      pm.path = {b.source, b.target, {e}};
      for (std::size_t l = 0; l < b.dim(); ++l) pm.words.push_back({l});
      pm.left = b.left;
      pm.right = b.right;
      index_[pm.path.edges] = modules_.size();
      level.push_back(modules_.size());
      modules_.push_back(std::move(pm));
    }
  for (std::size_t len = 2; len <= bound_ && !level.empty(); ++len) {
    std::vector<std::size_t> next;
    for (std::size_t p : level)
      for (std::size_t e = 0; e < s.edge_count(); ++e) {
        const Bimodule& b = s.edge(e);
        if (b.source != modules_[p].path.target) continue;
        const PathModule& pre = modules_[p];
        PathModule pm;
        pm.path = {pre.path.source, b.target, pre.path.edges};
        pm.path.edges.push_back(e);
        pm.prefix = p;
        pm.step = balanced_tensor(k, b.dim(), b.right, pre.dim(), pre.left);
        const std::size_t n = pm.step.dim();
        if (n == 0) continue;
        for (const auto& [a, w] : pm.step.basis) {
          auto word = pre.words[w];
          word.push_back(a);
          pm.words.push_back(std::move(word));
        }
        for (const auto& L : b.left) {
          Matrix m(k, n, n);
          for (std::size_t q = 0; q < n; ++q) {
            const auto [a, w] = pm.step.basis[q];
            Vec col = zero_vec(k, n);
            for (std::size_t c = 0; c < b.dim(); ++c)
              if (!L.at(c, a).is_zero()) axpy(col, L.at(c, a), pm.step.pure(c, w));
            for (std::size_t r = 0; r < n; ++r) m.at(r, q) = col[r];
          }
          pm.left.push_back(std::move(m));
        }
        for (const auto& R : pre.right) {
          Matrix m(k, n, n);
          for (std::size_t q = 0; q < n; ++q) {
            const auto [a, w] = pm.step.basis[q];
            Vec col = zero_vec(k, n);
            for (std::size_t c = 0; c < pre.dim(); ++c)
              if (!R.at(c, w).is_zero()) axpy(col, R.at(c, w), pm.step.pure(a, c));
            for (std::size_t r = 0; r < n; ++r) m.at(r, q) = col[r];
          }
          pm.right.push_back(std::move(m));
        }
        index_[pm.path.edges] = modules_.size();
        next.push_back(modules_.size());
        modules_.push_back(std::move(pm));
      }
    level = std::move(next);
  }
}

std::optional<std::size_t> PathSystem::find(const std::vector<std::size_t>& edges) const {
  auto it = index_.find(edges);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> PathSystem::between(std::size_t i, std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < modules_.size(); ++p)
    if (modules_[p].path.source == i && modules_[p].path.target == j) out.push_back(p);
  return out;
}

Vec PathSystem::reduce(std::size_t p, std::span<const std::size_t> word) const {
  const PathModule& pm = modules_[p];
  if (word.size() != pm.path.length()) throw Error(ErrorKind::DimensionMismatch, "word length differs from path length");
  const FieldPtr& k = s_.field();
  if (word.size() == 1) return unit_vec(k, pm.dim(), word[0]);
  const Vec tail = reduce(pm.prefix, word.first(word.size() - 1));
  Vec out = zero_vec(k, pm.dim());
  for (std::size_t b = 0; b < tail.size(); ++b)
    if (!tail[b].is_zero()) axpy(out, tail[b], pm.step.pure(word.back(), b));
  return out;
}

std::string PathSystem::word_label(std::size_t p, std::size_t w) const {
  const PathModule& pm = modules_[p];
  std::string out;
  for (std::size_t l = pm.path.length(); l-- > 0;) {
    const std::size_t e = pm.path.edges[l];
    if (!out.empty()) out += "*";
    out += "e" + std::to_string(e) + "." + s_.edge(e).labels[pm.words[w][l]];
  }
  return out;
}

PathBimodule path_bimodule(const PathSystem& ps, std::size_t i, std::size_t j) {
  PathBimodule pb;
  pb.source = i;
  pb.target = j;
  pb.paths = ps.between(i, j);
  for (std::size_t p : pb.paths) {
    pb.offsets.push_back(pb.dim);
    pb.dim += ps.module(p).dim();
    pb.degree.insert(pb.degree.end(), ps.module(p).dim(), ps.module(p).path.length());
  }
  const Species& s = ps.species();
  const FieldPtr& k = s.field();
  auto block_diag = [&](bool left, std::size_t count) {
    std::vector<Matrix> out;
    for (std::size_t x = 0; x < count; ++x) {
      Matrix m(k, pb.dim, pb.dim);
      for (std::size_t q = 0; q < pb.paths.size(); ++q) {
        const PathModule& pm = ps.module(pb.paths[q]);
        const Matrix& a = left ? pm.left[x] : pm.right[x];
        for (std::size_t r = 0; r < pm.dim(); ++r)
          for (std::size_t c = 0; c < pm.dim(); ++c) m.at(pb.offsets[q] + r, pb.offsets[q] + c) = a.at(r, c);
      }
      out.push_back(std::move(m));
    }
    return out;
  };
  pb.left = block_diag(true, s.tower(j).dim());
  pb.right = block_diag(false, s.tower(i).dim());
  return pb;
}

// --------------------------------------------------------------- relations

std::optional<Vec> Relation::arrow_part() const {
  for (const auto& [p, v] : components)
    if (p.size() == 1 && !is_zero_vec(v)) return v;
  return std::nullopt;
}

std::size_t Relation::nonzero_components() const {
  std::size_t n = 0;
  for (const auto& c : components)
    if (!is_zero_vec(c.second)) ++n;
  return n;
}

Relation normalize_relation(const PathSystem& ps, Relation r) {
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, Vec> merged;
  for (auto& [edges, v] : r.components) {
    const auto p = ps.find(edges);
    if (!p) throw Error(ErrorKind::RelationOutOfBound, "relation component is not a path within the bound");
    const PathModule& pm = ps.module(*p);
    if (pm.path.source != r.start || pm.path.target != r.end)
      throw Error(ErrorKind::NotHomogeneousEndpoints, "component path " + std::to_string(pm.path.source) + "->" +
                                                          std::to_string(pm.path.target) + " in a relation " +
                                                          std::to_string(r.start) + "->" + std::to_string(r.end));
    if (v.size() != pm.dim()) throw Error(ErrorKind::DimensionMismatch, "component length differs from path module");
    auto key = std::make_pair(edges.size(), edges);
    auto it = merged.find(key);
    if (it == merged.end()) merged.emplace(key, std::move(v));
    else it->second = add(it->second, v);
  }
  Relation out{r.start, r.end, {}};
  for (auto& [key, v] : merged)
    if (!is_zero_vec(v)) out.components.emplace_back(key.second, std::move(v));
  return out;
}

bool is_canonical(const Relation& r) { return r.arrow_part().has_value(); }

bool is_strong_canonical(const Relation& r) { return is_canonical(r) && r.nonzero_components() > 1; }

CanonicalReport validate_canonical_set(const Species& s, const std::vector<Relation>& rels) {
  CanonicalReport rep;
  std::vector<std::optional<Subspace>> gen(rels.size());
  for (std::size_t t = 0; t < rels.size(); ++t) {
    const auto g = rels[t].arrow_part();
    if (!g) {
      rep.ok = false;
      rep.diagnostic = "relation " + std::to_string(t) + " has no arrow summand";
      return rep;
    }
    gen[t] = s.generated(*s.edge_between(rels[t].start, rels[t].end), {*g});
  }
  for (std::size_t t = 0; t < rels.size(); ++t)
    for (std::size_t u = t + 1; u < rels.size(); ++u) {
      if (rels[t].start != rels[u].start || rels[t].end != rels[u].end) continue;
      if (gen[t]->intersect(*gen[u]).dim() != 0) {
        rep.ok = false;
        rep.diagnostic = "arrow summands of relations " + std::to_string(t) + " and " + std::to_string(u) +
                         " generate intersecting sub-bimodules";
        return rep;
      }
    }
  return rep;
}

// ------------------------------------------------------ species of algebras

namespace {

std::string rep_label(const AlgebraPresentation& a, const Vec& v, std::size_t fallback) {
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (hit || !v[i].is_one()) return "r" + std::to_string(fallback);
    hit = i;
  }
  return hit ? a.names()[*hit] : "r" + std::to_string(fallback);
}

}  // namespace

AlgebraSpecies species_of(const BasicStructure& s) {
  const auto& a = s.algebra();
  const FieldPtr& k = a.field();
  const std::size_t n = s.block_count();
  const auto blocks = peirce(a, s.idempotents());
  AlgebraSpecies out;
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  std::vector<Vec> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Subspace part = blocks[j][i].intersect(s.radical());
      Subspace acc = s.radical_square();
      std::vector<Vec> reps;
      for (const auto& v : part.basis()) {
        if (acc.contains(v)) continue;
        reps.push_back(v);
        acc = acc.sum(Subspace::span(k, a.dim(), {v}));
      }
      if (reps.empty()) continue;
      ends.emplace_back(i, j);
      out.edge_offset.push_back(all.size());
      all.insert(all.end(), reps.begin(), reps.end());
      out.reps.push_back(std::move(reps));
    }
  out.quotient = radical_quotient(s, all);
  std::vector<Bimodule> edges;
  for (std::size_t e = 0; e < ends.size(); ++e) {
    const auto [i, j] = ends[e];
    const auto& reps = out.reps[e];
    const std::size_t off = out.edge_offset[e];
    const std::size_t m = reps.size();
    Bimodule b;
    b.source = i;
    b.target = j;
    for (std::size_t l = 0; l < m; ++l) b.labels.push_back(rep_label(a, reps[l], off + l));
    auto action = [&](const Vec& lift, bool left) {
      Matrix mat(k, m, m);
      for (std::size_t l = 0; l < m; ++l) {
        const Vec c = out.quotient.coords(left ? a.mul(lift, reps[l]) : a.mul(reps[l], lift));
        for (std::size_t q = 0; q < c.size(); ++q) {
          const bool inside = q >= off && q < off + m;
          if (inside) mat.at(q - off, l) = c[q];
          else if (!c[q].is_zero()) throw Error(ErrorKind::CertificateRejected, "block lift moves r/r^2 across Peirce blocks");
        }
      }
      return mat;
    };
    for (const auto& lift : s.block(j).lift) b.left.push_back(action(lift, true));
    for (const auto& lift : s.block(i).lift) b.right.push_back(action(lift, false));
    edges.push_back(std::move(b));
  }
  std::vector<FieldPtr> towers;
  for (std::size_t i = 0; i < n; ++i) towers.push_back(s.block(i).tower);
  out.species = Species(k, std::move(towers), std::move(edges));
  validate_species(out.species);
  return out;
}

EnlargedSpecies enlarged_species(const Species& s) {
  const FieldPtr& k = s.field();
  EnlargedSpecies out;
  std::vector<Bimodule> edges;
  for (const auto& b : s.edges()) {
    const TowerOverK& Dj = s.tower(b.target);
    const TowerOverK& Di = s.tower(b.source);
    const std::size_t dj = Dj.dim(), m = b.dim(), di = Di.dim();
    const std::size_t n = dj * m * di;
    auto idx = [&](std::size_t x, std::size_t l, std::size_t y) { return (x * m + l) * di + y; };
    Bimodule nb;
    nb.source = b.source;
    nb.target = b.target;
    for (std::size_t x = 0; x < dj; ++x)
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t y = 0; y < di; ++y) nb.labels.push_back(Dj.label(x) + "|" + b.labels[l] + "|" + Di.label(y));
    for (std::size_t z = 0; z < dj; ++z) {
      Matrix mat(k, n, n);
      for (std::size_t x = 0; x < dj; ++x)
        for (std::size_t c = 0; c < dj; ++c)
          for (std::size_t l = 0; l < m; ++l)
            for (std::size_t y = 0; y < di; ++y) mat.at(idx(c, l, y), idx(x, l, y)) = Dj.product(z, x)[c];
      nb.left.push_back(std::move(mat));
    }
    for (std::size_t z = 0; z < di; ++z) {
      Matrix mat(k, n, n);
      for (std::size_t x = 0; x < dj; ++x)
        for (std::size_t l = 0; l < m; ++l)
          for (std::size_t y = 0; y < di; ++y)
            for (std::size_t c = 0; c < di; ++c) mat.at(idx(x, l, c), idx(x, l, y)) = Di.product(y, z)[c];
      nb.right.push_back(std::move(mat));
    }
    Matrix g(k, m, n);
    for (std::size_t x = 0; x < dj; ++x)
      for (std::size_t y = 0; y < di; ++y) {
        const Matrix lr = b.left[x] * b.right[y];
        for (std::size_t l = 0; l < m; ++l)
          for (std::size_t r = 0; r < m; ++r) g.at(r, idx(x, l, y)) = lr.at(r, l);
      }
    out.g.push_back(std::move(g));
    edges.push_back(std::move(nb));
  }
  std::vector<FieldPtr> towers;
  for (std::size_t i = 0; i < s.vertex_count(); ++i) towers.push_back(s.vertex(i));
  out.species = Species(k, std::move(towers), std::move(edges));
  return out;
}

EdgeQuotient quotient_edge(const Species& s, std::size_t e, const Subspace& sub) {
  const Bimodule& b = s.edge(e);
  const FieldPtr& k = s.field();
  if (sub.ambient() != b.dim()) throw Error(ErrorKind::AmbientMismatch, "sub-bimodule lives elsewhere");
  if (!(s.generated(e, sub.basis()) == sub))
    throw Error(ErrorKind::ActionAxiomFails, "quotient by a subspace that is not a sub-bimodule");
  EdgeQuotient q;
  q.kept = sub.complement();
  const std::size_t n = q.kept.size();
  q.project = Matrix(k, n, b.dim());
  for (std::size_t c = 0; c < b.dim(); ++c) {
    const Vec v = sub.quotient_coords(unit_vec(k, b.dim(), c));
    for (std::size_t r = 0; r < n; ++r) q.project.at(r, c) = v[r];
  }
  q.bimodule.source = b.source;
  q.bimodule.target = b.target;
  for (std::size_t c : q.kept) q.bimodule.labels.push_back(b.labels[c]);
  auto induced = [&](const Matrix& act) {
    Matrix m(k, n, n);
    for (std::size_t c = 0; c < n; ++c) {
      const Vec v = q.project.apply(act.column(q.kept[c]));
      for (std::size_t r = 0; r < n; ++r) m.at(r, c) = v[r];
    }
    return m;
  };
  for (const auto& L : b.left) q.bimodule.left.push_back(induced(L));
  for (const auto& R : b.right) q.bimodule.right.push_back(induced(R));
  return q;
}

}  // namespace algkit
