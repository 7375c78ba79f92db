#include "algkit/gallery.hpp"

#include <array>

namespace algkit {

AlgebraPresentation make_algebra(const FieldPtr& k, std::vector<std::string> names, Vec unit,
                                 const std::function<Vec(std::size_t, std::size_t)>& product) {
  const std::size_t d = names.size();
  std::vector<SparseVec> table;
  table.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) table.push_back(to_sparse(product(i, j)));
  return AlgebraPresentation(k, std::move(names), std::move(unit), std::move(table));
}

AlgebraPresentation nonsplit_f2x() {
  const auto k = Field::rational_function(2, "x");
  const auto K = Field::extension(k, "t", "t^2 + x");
  // monomials 1, y, z, yz as exponent pairs
  const std::array<std::pair<int, int>, 4> mono{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
  auto product = [&](std::size_t i, std::size_t j) {
    const int ey = mono[i].first + mono[j].first;
    const int ez = mono[i].second + mono[j].second;
    Vec out = zero_vec(k, 4);
    if (ez >= 2) return out;
    // y^2 = x + z
    if (ey < 2) {
      out[ey + 2 * ez] = k->one();
    } else if (ez == 0) {
      out[0] = k->generator();
      out[2] = k->one();
    } else {
      out[2] = k->generator();
    }
    return out;
  };
  auto a = make_algebra(k, {"1", "y", "z", "yz"}, unit_vec(k, 4, 0), product);
  a.certificates.radical = std::vector<Vec>{unit_vec(k, 4, 2), unit_vec(k, 4, 3)};
  a.certificates.blocks = std::vector<BlockCertificate>{{K, {unit_vec(k, 4, 0), unit_vec(k, 4, 1)}}};
  a.certificates.idempotents = std::vector<Vec>{unit_vec(k, 4, 0)};
  return a;
}

namespace {

// Entries of the triangular algebra: a11, a22, a33, a21, a32 in K and (f, g) in M.
struct Tri {
  std::array<Elem, 5> a;
  Elem f, g;
};

constexpr std::size_t kSlots = 7;

}  // namespace

AlgebraPresentation dr3_triangle() {
  const auto k = Field::rational_function(2, "s");
  const auto K = Field::extension(k, "t", "t^2 + s");
  const Elem zero = K->zero();
  const Elem t = K->generator();
  auto delta = [&](const Elem& b) { return embed(b.coords()[1], K); };

  // basis: slot s in 0..6 (a11, a22, a33, a21, a32, f, g) times {1, t}
  auto basis_tri = [&](std::size_t idx) {
    Tri x{{zero, zero, zero, zero, zero}, zero, zero};
    const Elem v = idx % 2 == 0 ? K->one() : t;
    const std::size_t slot = idx / 2;
    if (slot < 5) x.a[slot] = v;
    else if (slot == 5) x.f = v;
    else x.g = v;
    return x;
  };
  auto mul = [&](const Tri& x, const Tri& y) {
    Tri r{{zero, zero, zero, zero, zero}, zero, zero};
    r.a[0] = x.a[0] * y.a[0];
    r.a[1] = x.a[1] * y.a[1];
    r.a[2] = x.a[2] * y.a[2];
    r.a[3] = x.a[3] * y.a[0] + x.a[1] * y.a[3];
    r.a[4] = x.a[4] * y.a[1] + x.a[2] * y.a[4];
    // (3,1): M*K (twisted right action) + K*K -> (ab, 0) + K*M (left action)
    r.f = x.f * y.a[0] + x.g * delta(y.a[0]) + x.a[4] * y.a[3] + x.a[2] * y.f;
    r.g = x.g * y.a[0] + x.a[2] * y.g;
    return r;
  };
  auto coords = [&](const Tri& x) {
    Vec out;
    auto put = [&](const Elem& e) {
      out.push_back(e.coords()[0]);
      out.push_back(e.coords()[1]);
    };
    for (const auto& e : x.a) put(e);
    put(x.f);
    put(x.g);
    return out;
  };
  const std::vector<std::string> names{"E11", "tE11", "E22", "tE22", "E33", "tE33", "E21",
                                       "tE21", "E32", "tE32", "M1",  "tM1",  "M2",  "tM2"};
  const std::size_t d = 2 * kSlots;
  Vec unit = zero_vec(k, d);
  unit[0] = unit[2] = unit[4] = k->one();
  auto a = make_algebra(k, names, unit, [&](std::size_t i, std::size_t j) { return coords(mul(basis_tri(i), basis_tri(j))); });
  std::vector<Vec> rad;
  for (std::size_t i = 6; i < d; ++i) rad.push_back(unit_vec(k, d, i));
  a.certificates.radical = rad;
  // vertex order: E33, E22, E11
  std::vector<BlockCertificate> blocks;
  std::vector<Vec> idems;
  Matrix eps(k, d, 6);
  for (std::size_t v = 0; v < 3; ++v) {
    const std::size_t slot = 2 - v;
    blocks.push_back({K, {unit_vec(k, d, 2 * slot), unit_vec(k, d, 2 * slot + 1)}});
    idems.push_back(unit_vec(k, d, 2 * slot));
    eps.at(2 * slot, 2 * v) = k->one();
    eps.at(2 * slot + 1, 2 * v + 1) = k->one();
  }
  a.certificates.blocks = blocks;
  a.certificates.idempotents = idems;
  a.certificates.epsilon = eps;
  return a;
}

AlgebraPresentation f4z_dual() {
  const auto k = Field::prime(2);
  const auto F4 = Field::extension(k, "w", "w^2 + w + 1");
  // basis 1, w, z, wz; products computed in F4[z]/(z^2) with coordinates over F2
  auto elem = [&](std::size_t i) { return std::make_pair(i % 2 == 0 ? F4->one() : F4->generator(), static_cast<int>(i / 2)); };
  auto product = [&](std::size_t i, std::size_t j) {
    const auto [x, ex] = elem(i);
    const auto [y, ey] = elem(j);
    Vec out = zero_vec(k, 4);
    if (ex + ey >= 2) return out;
    const Elem c = x * y;
    out[2 * (ex + ey)] = c.coords()[0];
    out[2 * (ex + ey) + 1] = c.coords()[1];
    return out;
  };
  auto a = make_algebra(k, {"1", "w", "z", "wz"}, unit_vec(k, 4, 0), product);
  a.certificates.radical = std::vector<Vec>{unit_vec(k, 4, 2), unit_vec(k, 4, 3)};
  a.certificates.blocks = std::vector<BlockCertificate>{{F4, {unit_vec(k, 4, 0), unit_vec(k, 4, 1)}}};
  a.certificates.idempotents = std::vector<Vec>{unit_vec(k, 4, 0)};
  Matrix eps(k, 4, 2);
  eps.at(0, 0) = k->one();
  eps.at(1, 1) = k->one();
  a.certificates.epsilon = eps;
  return a;
}

// ----------------------------------------------------------------- species

Bimodule field_bimodule(const FieldPtr& k, const FieldPtr& F, const FieldPtr& d_target, const FieldPtr& d_source,
                        std::size_t source, std::size_t target, std::size_t twist) {
  const TowerOverK f(F, k), dt(d_target, k), ds(d_source, k);
  long long q = 1;
  for (std::size_t i = 0; i < twist; ++i) q *= static_cast<long long>(F->characteristic());
  Bimodule b;
  b.source = source;
  b.target = target;
  b.labels = f.labels();
  const std::size_t n = f.dim();
  auto mult = [&](const Elem& c, bool left) {
    std::vector<Vec> cols;
    for (std::size_t l = 0; l < n; ++l) cols.push_back(f.coords(left ? c * f.basis(l) : f.basis(l) * c));
    return Matrix::from_columns(k, cols, n);
  };
  for (std::size_t x = 0; x < dt.dim(); ++x) b.left.push_back(mult(embed(dt.basis(x), F), true));
  for (std::size_t y = 0; y < ds.dim(); ++y) b.right.push_back(mult(embed(ds.basis(y), F).pow(q), false));
  return b;
}

Bimodule free_bimodule(const FieldPtr& k, std::size_t n, std::size_t source, std::size_t target) {
  Bimodule b;
  b.source = source;
  b.target = target;
  for (std::size_t l = 0; l < n; ++l) b.labels.push_back("m" + std::to_string(l));
  b.left.push_back(Matrix::identity(k, n));
  b.right.push_back(Matrix::identity(k, n));
  return b;
}

AlgebraPresentation presented_algebra(const SpeciesExample& ex) {
  const TensorAlgebra t(ex.species, ex.bound);
  if (ex.relations.empty()) return t.algebra();
  return quotient_by_relations(t, ex.relations).algebra;
}

namespace {

FieldPtr dr3_ground() { return Field::rational_function(2, "s"); }
FieldPtr dr3_top(const FieldPtr& k) { return Field::extension(k, "t", "t^2 + s"); }

FieldPtr quadratic_extension(const FieldPtr& k) {
  return Field::extension(k, "w", k->characteristic() == 2 ? "w^2 + w + 1" : "w^2 + 1");
}

}  // namespace

SpeciesExample dr3_species() {
  const auto k = dr3_ground();
  const auto K = dr3_top(k);
  const TowerOverK tk(K, k);
  // corner M = K^2 with a(f, g) = (af, ag) and (f, g)b = (fb + g delta(b), gb)
  auto delta = [&](const Elem& b) { return embed(b.coords()[1], K); };
  auto coords = [&](const Elem& f, const Elem& g) {
    Vec v = tk.coords(f);
    const Vec w = tk.coords(g);
    v.insert(v.end(), w.begin(), w.end());
    return v;
  };
  auto pair_of = [&](std::size_t l) {
    const Elem b = tk.basis(l % 2);
    return l < 2 ? std::make_pair(b, K->zero()) : std::make_pair(K->zero(), b);
  };
  Bimodule m;
  m.source = 2;
  m.target = 0;
  m.labels = {"M1", "tM1", "M2", "tM2"};
  for (std::size_t x = 0; x < 2; ++x) {
    std::vector<Vec> cols;
    const Elem a = tk.basis(x);
    for (std::size_t l = 0; l < 4; ++l) {
      const auto [f, g] = pair_of(l);
      cols.push_back(coords(a * f, a * g));
    }
    m.left.push_back(Matrix::from_columns(k, cols, 4));
  }
  for (std::size_t y = 0; y < 2; ++y) {
    std::vector<Vec> cols;
    const Elem b = tk.basis(y);
    for (std::size_t l = 0; l < 4; ++l) {
      const auto [f, g] = pair_of(l);
      cols.push_back(coords(f * b + g * delta(b), g * b));
    }
    m.right.push_back(Matrix::from_columns(k, cols, 4));
  }
  SpeciesExample ex;
  ex.name = "dr3-species";
  ex.species = Species(k, {K, K, K}, {field_bimodule(k, K, K, K, 2, 1), field_bimodule(k, K, K, K, 1, 0), m});
  // sigma = ((1,0),0) - (0, 1 (x) 1)
  const PathSystem ps(ex.species, std::nullopt);
  const std::size_t two = *ps.find({0, 1});
  const std::vector<std::size_t> ones{0, 0};
  Relation sigma{2, 0, {{{2}, unit_vec(k, 4, 0)}, {{0, 1}, scale(-k->one(), ps.reduce(two, ones))}}};
  ex.relations = {normalize_relation(ps, sigma)};
  return ex;
}

SpeciesRealization dr3_realization() {
  const auto k = dr3_ground();
  const std::size_t d = 14;
  SpeciesRealization f;
  for (std::size_t v = 0; v < 3; ++v) {
    const std::size_t slot = 2 - v;
    f.vertex.push_back({unit_vec(k, d, 2 * slot), unit_vec(k, d, 2 * slot + 1)});
  }
  f.edge.push_back({unit_vec(k, d, 6), unit_vec(k, d, 7)});
  f.edge.push_back({unit_vec(k, d, 8), unit_vec(k, d, 9)});
  f.edge.push_back({unit_vec(k, d, 10), unit_vec(k, d, 11), unit_vec(k, d, 12), unit_vec(k, d, 13)});
  return f;
}

SpeciesExample a2_species(std::uint64_t p) {
  const auto k = Field::prime(p);
  return {"a2-f" + std::to_string(p), Species(k, {k, k}, {free_bimodule(k, 1, 0, 1)}), {}, std::nullopt};
}

SpeciesExample bridge_species(std::uint64_t p) {
  const auto k = Field::prime(p);
  const auto F = quadratic_extension(k);
  return {"bridge-f" + std::to_string(p), Species(k, {k, F}, {field_bimodule(k, F, F, k, 0, 1)}), {}, std::nullopt};
}

SpeciesExample tree_a3_species(std::uint64_t p) {
  const auto k = Field::prime(p);
  return {"tree-a3-f" + std::to_string(p),
          Species(k, {k, k, k}, {free_bimodule(k, 1, 0, 1), free_bimodule(k, 1, 2, 1)}), {}, std::nullopt};
}

SpeciesExample a2_f4_species() {
  const auto F = quadratic_extension(Field::prime(2));
  return {"a2-f4", Species(F, {F, F}, {field_bimodule(F, F, F, F, 0, 1)}), {}, std::nullopt};
}

SpeciesExample star_species() {
  const auto k = Field::prime(2);
  const auto F = quadratic_extension(k);
  return {"star-f2",
          Species(k, {F, k, k, k},
                  {field_bimodule(k, F, F, k, 1, 0), field_bimodule(k, F, k, F, 0, 2), field_bimodule(k, F, F, k, 3, 0)}),
          {}, std::nullopt};
}

SpeciesExample loop_species(const FieldPtr& k, const FieldPtr& D, std::size_t bound, std::size_t twist) {
  return {"loop", Species(k, {D}, {field_bimodule(k, D, D, D, 0, 0, twist)}), {}, bound};
}

SpeciesExample commutative_square_species(std::uint64_t p) {
  const auto k = Field::prime(p);
  SpeciesExample ex{"square-f" + std::to_string(p), Species(k, {k}, {free_bimodule(k, 2, 0, 0)}), {}, 3};
  const PathSystem ps(ex.species, 2);
  const std::size_t two = *ps.find({0, 0});
  auto word = [&](std::size_t a, std::size_t b) { return ps.reduce(two, std::vector<std::size_t>{a, b}); };
  ex.relations = {Relation{0, 0, {{{0, 0}, word(0, 0)}}}, Relation{0, 0, {{{0, 0}, word(1, 1)}}},
                  Relation{0, 0, {{{0, 0}, sub(word(0, 1), word(1, 0))}}}};
  return ex;
}

SpeciesExample a3_radical_square_species() {
  const auto k = Field::rationals();
  SpeciesExample ex{"a3-q-j2", Species(k, {k, k, k}, {free_bimodule(k, 1, 0, 1), free_bimodule(k, 1, 1, 2)}), {},
                    std::nullopt};
  ex.relations = {Relation{0, 2, {{{0, 1}, unit_vec(k, 1, 0)}}}};
  return ex;
}

namespace {

SpeciesExample commuting_square_species(std::uint64_t p) {
  const auto k = Field::prime(p);
  SpeciesExample ex{"commuting-square-f" + std::to_string(p),
                    Species(k, {k, k, k, k},
                            {free_bimodule(k, 1, 0, 1), free_bimodule(k, 1, 1, 3), free_bimodule(k, 1, 0, 2),
                             free_bimodule(k, 1, 2, 3)}),
                    {}, std::nullopt};
  ex.relations = {Relation{0, 3, {{{0, 1}, unit_vec(k, 1, 0)}, {{2, 3}, scale(-k->one(), unit_vec(k, 1, 0))}}}};
  return ex;
}

CorpusEntry entry(std::string name, SpeciesExample ex) {
  AlgebraPresentation a = presented_algebra(ex);
  return {std::move(name), std::move(ex), std::move(a)};
}

}  // namespace

std::vector<CorpusEntry> perfect_corpus() {
  const auto f2 = Field::prime(2), f3 = Field::prime(3), q = Field::rationals();
  const auto f4 = quadratic_extension(f2);
  std::vector<CorpusEntry> out;
  out.push_back(entry("a2-f2", a2_species(2)));
  out.push_back(entry("bridge-f3-f9", bridge_species(3)));
  out.push_back(entry("tree-a3-f3", tree_a3_species(3)));
  out.push_back(entry("a2-f4", a2_f4_species()));
  out.push_back(entry("f4-dual-numbers", loop_species(f2, f4, 1)));
  out.push_back(entry("q-dual-numbers", loop_species(q, q, 1)));
  out.push_back(entry("f4-twisted-loop", loop_species(f2, f4, 1, 1)));
  out.push_back(entry("f3-truncated-cube", loop_species(f3, f3, 2)));
  out.push_back(entry("a3-q-j2", a3_radical_square_species()));
  out.push_back(entry("f2-xy-squares", commutative_square_species(2)));
  return out;
}

std::vector<CorpusEntry> tree_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back(entry("a2-f2", a2_species(2)));
  out.push_back(entry("bridge-f3-f9", bridge_species(3)));
  out.push_back(entry("tree-a3-f3", tree_a3_species(3)));
  out.push_back(entry("a2-f4", a2_f4_species()));
  out.push_back(entry("star-f2", star_species()));
  return out;
}

std::vector<CorpusEntry> functor_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back(entry("a2-f2", a2_species(2)));
  out.push_back(entry("bridge-f3-f9", bridge_species(3)));
  out.push_back(entry("tree-a3-f3", tree_a3_species(3)));
  out.push_back(entry("a3-q-j2", a3_radical_square_species()));
  out.push_back(entry("commuting-square-f3", commuting_square_species(3)));
  return out;
}

Species random_acyclic_species(Rng& rng, std::size_t max_vertices) {
  const std::uint64_t p = rng() % 2 == 0 ? 2 : 3;
  const auto k = Field::prime(p);
  const auto F = quadratic_extension(k);
  const std::size_t n = 2 + rng() % (std::max<std::size_t>(max_vertices, 2) - 1);
  std::vector<FieldPtr> towers;
  for (std::size_t i = 0; i < n; ++i) towers.push_back(rng() % 2 == 0 ? k : F);
  std::vector<Bimodule> edges;
  auto make = [&](std::size_t i, std::size_t j) {
    const bool big_s = towers[i] != k, big_t = towers[j] != k;
    if (!big_s && !big_t) return free_bimodule(k, 1 + rng() % 2, i, j);
    return field_bimodule(k, F, towers[j], towers[i], i, j, big_s && big_t ? rng() % 2 : 0);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng() % 3 != 0) edges.push_back(make(i, j));
  if (edges.empty()) edges.push_back(make(0, 1));
  Species s(k, std::move(towers), std::move(edges));
  validate_species(s);
  return s;
}

std::vector<Relation> random_canonical_relations(const Species& s, Rng& rng) {
  const FieldPtr& k = s.field();
  const PathSystem ps(s, std::nullopt);
  auto nonzero = [&](std::size_t n) {
    Vec v = random_vec(k, n, rng);
    if (is_zero_vec(v)) v[rng() % n] = k->one();
    return v;
  };
  // Higher summands are drawn from the part killed by the annihilator of g1 in
  // D_target (x) D_source^op, so that <sigma> and <g1> are isomorphic.
  auto relation = [&](std::size_t e, bool strong) {
    const Bimodule& b = s.edge(e);
    const Vec g1 = nonzero(b.dim());
    Relation r{b.source, b.target, {{{e}, g1}}};
    if (!strong) return normalize_relation(ps, std::move(r));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<Vec> cols;
    for (std::size_t x = 0; x < b.left.size(); ++x)
      for (std::size_t y = 0; y < b.right.size(); ++y) {
        pairs.emplace_back(x, y);
        cols.push_back((b.left[x] * b.right[y]).apply(g1));
      }
    const Subspace ann = rref_solve(Matrix::from_columns(k, cols, b.dim())).kernel;
    for (std::size_t p : ps.between(b.source, b.target)) {
      const PathModule& pm = ps.module(p);
      if (pm.path.length() < 2) continue;
      std::vector<Vec> rows;
      for (const auto& c : ann.basis()) {
        Matrix act(k, pm.dim(), pm.dim());
        for (std::size_t q = 0; q < pairs.size(); ++q)
          if (!c[q].is_zero()) {
            const Matrix lr = pm.left[pairs[q].first] * pm.right[pairs[q].second];
            for (std::size_t u = 0; u < pm.dim(); ++u)
              for (std::size_t v = 0; v < pm.dim(); ++v) act.at(u, v) += c[q] * lr.at(u, v);
          }
        for (const auto& row : act.row_data()) rows.push_back(row);
      }
      const Subspace free = rows.empty() ? Subspace::full(k, pm.dim())
                                         : rref_solve(Matrix::from_rows(k, std::move(rows), pm.dim())).kernel;
      if (free.dim() == 0) continue;
      Vec v = zero_vec(k, pm.dim());
      for (const auto& f : free.basis()) axpy(v, random_elem(k, rng), f);
      if (is_zero_vec(v)) v = free.basis()[0];
      r.components.emplace_back(pm.path.edges, std::move(v));
    }
    return normalize_relation(ps, std::move(r));
  };
  std::vector<Relation> out;
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const Bimodule& b = s.edge(e);
    bool has_long = false;
    for (std::size_t p : ps.between(b.source, b.target)) has_long = has_long || ps.module(p).path.length() >= 2;
    const auto roll = rng() % 4;
    if (has_long && roll < 3) out.push_back(relation(e, true));
    else if (roll == 3) out.push_back(relation(e, false));
    else continue;
    // a second relation on the same edge when the first arrow summand leaves room
    const Subspace first = s.generated(e, {*out.back().arrow_part()});
    if (first.dim() < b.dim() && rng() % 2 == 0) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        Relation r = relation(e, has_long);
        if (s.generated(e, {*r.arrow_part()}).intersect(first).dim() == 0) {
          out.push_back(std::move(r));
          break;
        }
      }
    }
  }
  const auto check = validate_canonical_set(s, out);
  if (!check.ok) throw Error(ErrorKind::NotCanonicalSet, check.diagnostic);
  return out;
}

// ------------------------------------------------------------------ names

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"nonsplit-f2x", "dr3-triangle", "a2-fp", "bridge-fp-fp2", "f4z-dual",
                                               "tree-a3"};
  return names;
}

AlgebraPresentation example_algebra(const std::string& name) {
  if (name == "nonsplit-f2x") return nonsplit_f2x();
  if (name == "dr3-triangle") return dr3_triangle();
  if (name == "a2-fp") return presented_algebra(a2_species(2));
  if (name == "bridge-fp-fp2") return presented_algebra(bridge_species(3));
  if (name == "f4z-dual") return f4z_dual();
  if (name == "tree-a3") return presented_algebra(tree_a3_species(3));
  throw Error(ErrorKind::UnknownExample, "no example named '" + name + "'");
}

}  // namespace algkit
