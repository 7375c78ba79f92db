#include "algkit/structure.hpp"

namespace algkit {

namespace {

Vec slice(const Vec& v, std::size_t offset, std::size_t n) {
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(offset), v.begin() + static_cast<std::ptrdiff_t>(offset + n));
}

Vec combination(const std::vector<Vec>& images, const Vec& coords, const FieldPtr& k, std::size_t n) {
  Vec out = zero_vec(k, n);
  for (std::size_t x = 0; x < coords.size(); ++x)
    if (!coords[x].is_zero()) axpy(out, coords[x], images[x]);
  return out;
}

// (source, target) of every basis word of t.
std::vector<std::pair<std::size_t, std::size_t>> word_endpoints(const TensorAlgebra& t) {
  std::vector<std::pair<std::size_t, std::size_t>> out(t.dim());
  const Species& s = t.species();
  for (std::size_t i = 0; i < s.vertex_count(); ++i)
    for (std::size_t x = 0; x < s.tower(i).dim(); ++x) out[t.vertex_offset(i) + x] = {i, i};
  for (std::size_t p = 0; p < t.paths().count(); ++p) {
    const PathModule& pm = t.paths().module(p);
    for (std::size_t w = 0; w < pm.dim(); ++w) out[t.path_offset(p) + w] = {pm.path.source, pm.path.target};
  }
  return out;
}

}  // namespace

// ------------------------------------------------------ universal extension

Matrix universal_extension(const TensorAlgebra& t, const AlgebraPresentation& a, const SpeciesRealization& f) {
  const Species& s = t.species();
  const FieldPtr& k = a.field();
  require_same_field(k, s.field());
  const std::size_t d = a.dim();
  if (f.vertex.size() != s.vertex_count() || f.edge.size() != s.edge_count())
    throw Error(ErrorKind::DimensionMismatch, "realization does not match the species");
  Vec unit = zero_vec(k, d);
  for (std::size_t i = 0; i < s.vertex_count(); ++i) {
    const TowerOverK& D = s.tower(i);
    if (f.vertex[i].size() != D.dim()) throw Error(ErrorKind::DimensionMismatch, "vertex image count");
    unit = add(unit, combination(f.vertex[i], D.coords(D.tower()->one()), k, d));
    for (std::size_t x = 0; x < D.dim(); ++x)
      for (std::size_t y = 0; y < D.dim(); ++y)
        if (a.mul(f.vertex[i][x], f.vertex[i][y]) != combination(f.vertex[i], D.product(x, y), k, d))
          throw Error(ErrorKind::EquivarianceFails, "vertex " + std::to_string(i) + " is not mapped multiplicatively");
  }
  if (unit != a.unit()) throw Error(ErrorKind::EquivarianceFails, "vertex units do not map to 1");
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const Bimodule& b = s.edge(e);
    if (f.edge[e].size() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "edge image count");
    for (std::size_t l = 0; l < b.dim(); ++l) {
      for (std::size_t x = 0; x < b.left.size(); ++x)
        if (a.mul(f.vertex[b.target][x], f.edge[e][l]) != combination(f.edge[e], b.left[x].column(l), k, d))
          throw Error(ErrorKind::EquivarianceFails, "edge " + std::to_string(e) + ": left action not preserved");
      for (std::size_t y = 0; y < b.right.size(); ++y)
        if (a.mul(f.edge[e][l], f.vertex[b.source][y]) != combination(f.edge[e], b.right[y].column(l), k, d))
          throw Error(ErrorKind::EquivarianceFails, "edge " + std::to_string(e) + ": right action not preserved");
    }
  }
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < s.vertex_count(); ++i)
    for (const auto& v : f.vertex[i]) cols.push_back(v);
  const PathSystem& ps = t.paths();
  for (std::size_t p = 0; p < ps.count(); ++p) {
    const PathModule& pm = ps.module(p);
    for (const auto& word : pm.words) {
      Vec img = f.edge[pm.path.edges[0]][word[0]];
      for (std::size_t l = 1; l < word.size(); ++l) img = a.mul(f.edge[pm.path.edges[l]][word[l]], img);
      cols.push_back(std::move(img));
    }
  }
  Matrix map = Matrix::from_columns(k, cols, d);
  if (!is_algebra_morphism(t.algebra(), a, map))
    throw Error(ErrorKind::EquivarianceFails, "the extension to the truncation is not multiplicative");
  return map;
}

SpeciesRealization restrict_realization(const SpeciesRealization& f, const SpeciesMap& m, const Species& target) {
  SpeciesRealization out;
  out.vertex = f.vertex;
  out.edge.resize(target.edge_count());
  for (std::size_t e = 0; e < m.edge.size(); ++e) {
    if (!m.edge[e]) continue;
    for (std::size_t l : m.kept[e]) out.edge[*m.edge[e]].push_back(f.edge[e][l]);
  }
  return out;
}

// --------------------------------------------------------------- surjection

std::string_view to_string(SurjectionMode mode) {
  return mode == SurjectionMode::RSplit ? "r_split" : "split_enlarged";
}

SurjectionResult build_surjection(const BasicStructure& s, const Matrix& eps, SurjectionMode mode) {
  const auto& a = s.algebra();
  const auto split = verify_split(s, eps);
  if (!split.ok) throw Error(ErrorKind::NotSplit, split.diagnostic);
  SurjectionResult res;
  res.mode = mode;
  res.base = species_of(s);
  res.loewy_length = s.loewy_length();
  const Species& base = res.base.species;
  for (std::size_t i = 0; i < s.block_count(); ++i) {
    std::vector<Vec> imgs;
    for (std::size_t x = 0; x < s.tower(i).dim(); ++x) imgs.push_back(eps.column(s.block_offset(i) + x));
    res.realization.vertex.push_back(std::move(imgs));
  }
  if (mode == SurjectionMode::RSplit) {
    const auto section = r_split_check(s, eps);
    if (!section) throw Error(ErrorKind::SectionMissing, "no eps-equivariant section of r -> r/r^2");
    const RadicalQuotient rq = radical_quotient(s);
    res.species = base;
    for (const auto& reps : res.base.reps) {
      std::vector<Vec> imgs;
      for (const auto& r : reps) imgs.push_back(section->apply(rq.coords(r)));
      res.realization.edge.push_back(std::move(imgs));
    }
  } else {
    res.species = enlarged_species(base).species;
    for (std::size_t e = 0; e < base.edge_count(); ++e) {
      const Bimodule& b = base.edge(e);
      const auto& lj = res.realization.vertex[b.target];
      const auto& li = res.realization.vertex[b.source];
      std::vector<Vec> imgs;
      for (std::size_t x = 0; x < lj.size(); ++x)
        for (std::size_t l = 0; l < b.dim(); ++l)
          for (std::size_t y = 0; y < li.size(); ++y) imgs.push_back(a.mul(a.mul(lj[x], res.base.reps[e][l]), li[y]));
      res.realization.edge.push_back(std::move(imgs));
    }
  }
  res.tensor = TensorAlgebra(res.species, res.loewy_length);
  res.map = universal_extension(res.tensor, a, res.realization);
  if (rank(res.map) != a.dim()) throw Error(ErrorKind::NotIsomorphic, "the tensor algebra map is not onto");
  res.kernel = rref_solve(res.map).kernel;
  res.contains_top_power = res.kernel.contains(res.tensor.J_power(res.loewy_length));
  res.inside_J2 = res.tensor.J_power(2).contains(res.kernel);
  res.inside_bound = mode == SurjectionMode::RSplit ? res.inside_J2 : res.tensor.J().contains(res.kernel);
  if (!res.contains_top_power) throw Error(ErrorKind::BoundViolation, "kernel misses J^rl");
  if (!res.inside_bound)
    throw Error(ErrorKind::BoundViolation, mode == SurjectionMode::RSplit ? "kernel leaves J^2" : "kernel leaves J");
  return res;
}

// ----------------------------------------------------------- kernel relations

namespace {

// Adjusts y inside y + span(translates) so that the arrow summand of the result
// generates a sub-bimodule meeting S trivially, when such an adjustment exists.
Vec separate_from(const TensorAlgebra& t, std::size_t e, const Subspace& S, const Vec& y,
                  const std::vector<Vec>& translates, const std::function<Vec(const Vec&)>& arrow) {
  const Species& s = t.species();
  const FieldPtr& k = s.field();
  const Bimodule& b = s.edge(e);
  const std::size_t m = b.dim();
  if (translates.empty()) return y;
  const Vec g = arrow(y);
  std::vector<Matrix> acts;
  std::vector<Vec> cols;
  for (const auto& L : b.left)
    for (const auto& R : b.right) {
      acts.push_back(L * R);
      cols.push_back(S.reduce(acts.back().apply(g)));
    }
  const Subspace ann = rref_solve(Matrix::from_columns(k, cols, m)).kernel;
  if (ann.dim() == 0) return y;
  std::vector<Matrix> iotas;
  for (const auto& c : ann.basis()) iotas.push_back(action_of(acts, c, k, m));
  std::vector<Vec> columns;
  for (const auto& tr : translates) {
    const Vec ta = arrow(tr);
    Vec col;
    for (const auto& io : iotas) {
      const Vec v = io.apply(ta);
      col.insert(col.end(), v.begin(), v.end());
    }
    columns.push_back(std::move(col));
  }
  Vec target;
  for (const auto& io : iotas) {
    const Vec v = scale(-k->one(), io.apply(g));
    target.insert(target.end(), v.begin(), v.end());
  }
  const auto sol = solve_columns(k, columns, target);
  if (!sol) return y;
  Vec out = y;
  for (std::size_t r = 0; r < translates.size(); ++r)
    if (!(*sol)[r].is_zero()) axpy(out, (*sol)[r], translates[r]);
  return out;
}

}  // namespace

std::vector<Relation> kernel_relations(const TensorAlgebra& t, const Subspace& kernel) {
  const auto& T = t.algebra();
  const Species& s = t.species();
  const FieldPtr& k = s.field();
  const std::size_t d = T.dim();
  if (!t.J().contains(kernel)) throw Error(ErrorKind::DimensionMismatch, "kernel meets the degree-0 part");
  const auto ends = word_endpoints(t);
  auto peirce_part = [&](std::size_t a, std::size_t b) {
    std::vector<Vec> v;
    for (const auto& x : kernel.basis()) {
      Vec y = zero_vec(k, d);
      for (std::size_t i = 0; i < d; ++i)
        if (ends[i] == std::make_pair(a, b)) y[i] = x[i];
      if (!is_zero_vec(y)) v.push_back(std::move(y));
    }
    return Subspace::span(k, d, std::move(v));
  };
  Rng rng(0);
  std::vector<Vec> gens;
  const std::size_t n = s.vertex_count();
  std::vector<std::vector<Subspace>> W(n, std::vector<Subspace>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      W[a][b] = peirce_part(a, b);
      if (W[a][b].dim() == 0) continue;
      const auto e = s.edge_between(a, b);
      const auto p1 = e ? t.paths().find({*e}) : std::nullopt;
      if (!p1) continue;
      const std::size_t m = s.edge(*e).dim();
      const std::size_t off = t.path_offset(*p1);
      const std::function<Vec(const Vec&)> arrow = [&](const Vec& y) { return slice(y, off, m); };
      std::vector<Vec> units;
      for (std::size_t l = 0; l < m; ++l) units.push_back(unit_vec(k, d, off + l));
      const Subspace pure = W[a][b].intersect(Subspace::span(k, d, std::move(units)));
      Subspace S(k, m);
      std::vector<Vec> chosen;
      for (const Subspace* phase : {&pure, static_cast<const Subspace*>(&W[a][b])}) {
        for (;;) {
          std::vector<Vec> cands = phase->basis();
          for (int r = 0; r < 4 && phase->dim() > 1; ++r)
            cands.push_back(combination(phase->basis(), random_vec(k, phase->dim(), rng), k, d));
          std::optional<Vec> best;
          std::size_t best_dim = S.dim();
          for (const auto& c : cands) {
            const std::size_t dim = S.sum(s.generated(*e, {arrow(c)})).dim();
            if (dim > best_dim) {
              best_dim = dim;
              best = c;
            }
          }
          if (!best) break;
          std::vector<Vec> translates;
          for (const auto& c : chosen)
            for (std::size_t x = 0; x < s.tower(b).dim(); ++x) {
              const Vec left = T.mul(t.vertex_element(b, s.tower(b).basis(x)), c);
              for (std::size_t y = 0; y < s.tower(a).dim(); ++y)
                translates.push_back(T.mul(left, t.vertex_element(a, s.tower(a).basis(y))));
            }
          const Vec g = separate_from(t, *e, S, *best, translates, arrow);
          S = S.sum(s.generated(*e, {arrow(g)}));
          chosen.push_back(g);
          gens.push_back(g);
        }
      }
    }
  Subspace ideal = ideal_closure(T, gens);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& x : W[a][b].basis()) {
        if (ideal.contains(x)) continue;
        gens.push_back(x);
        std::vector<Vec> seed = ideal.basis();
        seed.push_back(x);
        ideal = ideal_closure(T, seed);
      }
  if (!(ideal == kernel)) throw Error(ErrorKind::DimensionMismatch, "relations do not regenerate the kernel");
  std::vector<Relation> out;
  for (const auto& g : gens)
    for (auto& r : t.decompose(g)) out.push_back(std::move(r));
  return out;
}

std::vector<Relation> kernel_relations(const SurjectionResult& res) { return kernel_relations(res.tensor, res.kernel); }

// ------------------------------------------------------------- presentation

PresentationWitness verify_presentation(const AlgebraPresentation& a, const TensorAlgebra& t,
                                        const SpeciesRealization& f, const std::vector<Relation>& rels) {
  PresentationWitness w;
  std::vector<Relation> normal;
  for (const auto& r : rels) normal.push_back(normalize_relation(t.paths(), r));
  w.quotient = quotient_by_relations(t, normal);
  const Quotient& q = w.quotient;
  if (!q.sound) throw Error(ErrorKind::NotIsomorphic, "the truncated quotient is not sound");
  const Matrix map = universal_extension(t, a, f);
  for (const auto& v : q.ideal.basis())
    if (!is_zero_vec(map.apply(v))) throw Error(ErrorKind::NotIsomorphic, "a relation does not map to zero");
  if (q.basis.size() != a.dim())
    throw Error(ErrorKind::NotIsomorphic,
                "dimension " + std::to_string(q.basis.size()) + " != " + std::to_string(a.dim()));
  std::vector<Vec> cols;
  for (std::size_t i : q.basis) cols.push_back(map.column(i));
  w.iso = Matrix::from_columns(a.field(), cols, a.dim());
  if (rank(w.iso) != a.dim()) throw Error(ErrorKind::NotIsomorphic, "the induced map is not injective");
  if (!is_algebra_morphism(q.algebra, a, w.iso))
    throw Error(ErrorKind::NotIsomorphic, "the induced map is not multiplicative");
  w.admissible = q.admissible();
  w.canonical = validate_canonical_set(t.species(), normal).ok;
  w.strong_canonical = w.canonical;
  for (const auto& r : normal) w.strong_canonical = w.strong_canonical && is_strong_canonical(r);
  return w;
}

std::optional<Matrix> induced_isomorphism(const Quotient& q1, const Quotient& q2, const Matrix& map) {
  for (const auto& v : q1.ideal.basis())
    if (!q2.ideal.contains(map.apply(v))) return std::nullopt;
  if (q1.basis.size() != q2.basis.size()) return std::nullopt;
  std::vector<Vec> cols;
  for (std::size_t i : q1.basis) cols.push_back(q2.project(map.column(i)));
  Matrix m = Matrix::from_columns(q2.algebra.field(), cols, q2.basis.size());
  if (rank(m) != q2.basis.size() || !is_algebra_morphism(q1.algebra, q2.algebra, m)) return std::nullopt;
  return m;
}

// ------------------------------------------------------------------ suites

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

const std::vector<std::string>& theorem_names() {
  static const std::vector<std::string> names{"hereditary_tensor", "canonical_presentation", "tree_corollary",
                                              "perfect_r_split"};
  return names;
}

namespace {

Verdict of(bool b) { return b ? Verdict::Pass : Verdict::Fail; }

std::optional<Matrix> splitting_for(const BasicStructure& s, const std::optional<Matrix>& eps) {
  if (eps) return eps;
  if (s.algebra().certificates.epsilon) return s.algebra().certificates.epsilon;
  return std::nullopt;
}

// The split enlarged pipeline down to S_m, as clauses.
struct CanonicalRun {
  bool canonical = false;
  std::optional<StrongReduction> reduction;
  std::optional<PresentationWitness> strong;
  std::vector<Clause> clauses;
};

CanonicalRun canonical_run(const BasicStructure& s, const Matrix& eps) {
  CanonicalRun run;
  const auto res = build_surjection(s, eps, SurjectionMode::SplitEnlarged);
  run.clauses.push_back({"enlarged_kernel_bounds", of(res.contains_top_power && res.inside_bound),
                         "kernel dim " + std::to_string(res.kernel.dim()) + " in T of dim " +
                             std::to_string(res.tensor.dim())});
  const auto rels = kernel_relations(res);
  const auto w = verify_presentation(s.algebra(), res.tensor, res.realization, rels);
  run.canonical = w.canonical;
  run.clauses.push_back({"canonical_presentation", of(w.canonical), std::to_string(rels.size()) + " relations"});
  if (!w.canonical) {
    run.clauses.push_back({"strong_canonical_presentation", Verdict::NotApplicable, "no canonical set to reduce"});
    return run;
  }
  if (!is_acyclic(underlying(res.species))) {
    run.clauses.push_back({"strong_canonical_presentation", Verdict::NotApplicable, "cyclic species"});
    return run;
  }
  run.reduction = reduce_to_strong_canonical(res.species, rels);
  const StrongReduction& red = *run.reduction;
  const TensorAlgebra tm(red.species, std::nullopt);
  run.strong = verify_presentation(s.algebra(), tm, restrict_realization(res.realization, red.map, red.species),
                                   red.relations);
  const Quiver base = underlying(res.base.species);
  bool sub = true;
  for (const auto& [i, j] : underlying(red.species).arrows) sub = sub && base.arrow(i, j).has_value();
  run.clauses.push_back({"strong_canonical_presentation", of(run.strong->strong_canonical && sub),
                         std::to_string(red.relations.size()) + " strong relations after " +
                             std::to_string(red.eliminated) + " eliminations" + (sub ? "" : "; not a subquiver")});
  return run;
}

TheoremReport hereditary_tensor(const BasicStructure& s, const std::optional<Matrix>& eps) {
  TheoremReport rep{"hereditary_tensor", Verdict::Unknown, {}};
  const bool h = hereditary_check(s).hereditary;
  rep.clauses.push_back({"hereditary", of(h), ""});
  auto na = [&](const std::string& why) {
    rep.clauses.push_back({"tensor_algebra_of_acyclic_species", Verdict::NotApplicable, why});
    rep.verdict = Verdict::NotApplicable;
    return rep;
  };
  if (!eps) return na("no splitting map");
  if (!verify_split(s, *eps).ok) return na("the splitting map is rejected");
  if (!r_split_check(s, *eps)) return na("not r-split");
  const auto res = build_surjection(s, *eps, SurjectionMode::RSplit);
  const auto longest = longest_path(underlying(res.species));
  const bool tensor = res.kernel.dim() == 0 && longest && *longest < res.loewy_length;
  rep.clauses.push_back({"tensor_algebra_of_acyclic_species", of(tensor),
                         "kernel dim " + std::to_string(res.kernel.dim())});
  rep.verdict = of(h == tensor);
  return rep;
}

TheoremReport canonical_presentation(const BasicStructure& s, const std::optional<Matrix>& eps) {
  TheoremReport rep{"canonical_presentation", Verdict::Unknown, {}};
  const bool h = hereditary_check(s).hereditary;
  rep.clauses.push_back({"hereditary", of(h), ""});
  if (!eps || !verify_split(s, *eps).ok) {
    rep.verdict = Verdict::NotApplicable;
    rep.clauses.push_back({"split", Verdict::NotApplicable, "no accepted splitting map"});
    return rep;
  }
  auto run = canonical_run(s, *eps);
  rep.clauses.insert(rep.clauses.end(), run.clauses.begin(), run.clauses.end());
  bool ok = h == run.canonical;
  const Clause& last = rep.clauses.back();
  if (last.verdict != Verdict::NotApplicable) ok = ok && ((last.verdict == Verdict::Pass) == run.canonical);
  rep.verdict = of(ok);
  return rep;
}

TheoremReport tree_corollary(const BasicStructure& s, const std::optional<Matrix>& eps) {
  TheoremReport rep{"tree_corollary", Verdict::Unknown, {}};
  auto na = [&](const std::string& name, const std::string& why) {
    rep.clauses.push_back({name, Verdict::NotApplicable, why});
    rep.verdict = Verdict::NotApplicable;
    return rep;
  };
  if (!eps || !verify_split(s, *eps).ok) return na("split", "no accepted splitting map");
  if (!hereditary_check(s).hereditary) return na("hereditary", "the algebra is not hereditary");
  auto run = canonical_run(s, *eps);
  rep.clauses.insert(rep.clauses.end(), run.clauses.begin(), run.clauses.end());
  if (!run.reduction) {
    rep.verdict = Verdict::Fail;
    return rep;
  }
  if (!is_tree_graph(underlying(run.reduction->species))) return na("tree", "the reduced species is not a tree");
  rep.clauses.push_back({"tree", Verdict::Pass, ""});
  bool ok = run.reduction->relations.empty();
  rep.clauses.push_back({"no_relations", of(ok), std::to_string(run.reduction->relations.size()) + " relations"});
  if (r_split_check(s, *eps)) {
    const auto res = build_surjection(s, *eps, SurjectionMode::RSplit);
    const bool empty = kernel_relations(res).empty();
    bool iso = false;
    if (empty) {
      const TensorAlgebra full(res.species, std::nullopt);
      try {
        verify_presentation(s.algebra(), full, res.realization, {});
        iso = true;
      } catch (const Error&) {
      }
    }
    rep.clauses.push_back({"tensor_algebra_of_own_species", of(empty && iso), empty ? "" : "kernel relations remain"});
    ok = ok && empty && iso;
  }
  rep.verdict = of(ok);
  return rep;
}

TheoremReport perfect_r_split(const BasicStructure& s, const std::optional<Matrix>& eps) {
  TheoremReport rep{"perfect_r_split", Verdict::Unknown, {}};
  if (!s.field()->is_perfect()) {
    rep.verdict = Verdict::NotApplicable;
    rep.clauses.push_back({"perfect_field", Verdict::NotApplicable, s.field()->token() + " is not perfect"});
    return rep;
  }
  rep.clauses.push_back({"perfect_field", Verdict::Pass, s.field()->token()});
  if (!eps) {
    rep.clauses.push_back({"split", Verdict::Unknown, "no splitting map supplied"});
    return rep;
  }
  const auto split = verify_split(s, *eps);
  rep.clauses.push_back({"split", of(split.ok), split.diagnostic});
  if (!split.ok) {
    rep.verdict = Verdict::Fail;
    return rep;
  }
  const bool r = r_split_check(s, *eps).has_value();
  rep.clauses.push_back({"r_split", of(r), ""});
  rep.verdict = of(r);
  return rep;
}

}  // namespace

TheoremReport theorem_suite(const BasicStructure& s, const std::string& which, const std::optional<Matrix>& eps) {
  const auto e = splitting_for(s, eps);
  if (which == "hereditary_tensor") return hereditary_tensor(s, e);
  if (which == "canonical_presentation") return canonical_presentation(s, e);
  if (which == "tree_corollary") return tree_corollary(s, e);
  if (which == "perfect_r_split") return perfect_r_split(s, e);
  throw Error(ErrorKind::UnknownExample, "no theorem check named '" + which + "'");
}

}  // namespace algkit
