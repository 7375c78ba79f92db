// Acceptance run: one line per criterion, exit code 1 if any line fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "algkit/gallery.hpp"

using namespace algkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failing condition; later failures are counted only.
class Tally {
 public:
  void expect(bool cond, const std::string& what) {
    ++total_;
    if (cond) return;
    ++failed_;
    if (first_.empty()) first_ = what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream out;
    out << summary << ", " << (total_ - failed_) << "/" << total_ << " checks";
    if (failed_) out << ", first failure: " << first_;
    return {failed_ == 0, out.str()};
  }

 private:
  std::size_t total_ = 0, failed_ = 0;
  std::string first_;
};

bool same_rep(const Representation& a, const Representation& b) {
  return a.dims == b.dims && a.vertex_action == b.vertex_action && a.edge_maps == b.edge_maps;
}

Outcome nonsplit_example() {
  Tally t;
  const auto a = nonsplit_f2x();
  const auto k = a.field();
  validate_algebra(a);
  t.expect(a.dim() == 4, "dim");
  const auto rad = radical_supplied(a, a.certificates);
  t.expect(rad == Subspace::span(k, 4, {a.basis(2), a.basis(3)}), "radical is span{z, yz}");
  const auto s = BasicStructure::verify(a);
  t.expect(s.block_count() == 1 && s.quotient_dim() == 2, "quotient is one block of dim 2");
  // the image of y is a root of t^2 - x, and 1, y stay independent modulo r
  const Vec y2 = a.mul(a.basis(1), a.basis(1));
  t.expect(rad.contains(sub(y2, scale(k->generator(), a.unit()))), "y^2 - x lies in the radical");
  t.expect(!rad.contains(a.basis(1)) && !rad.contains(a.unit()), "1 and y survive in the quotient");
  t.expect(!frobenius_preimage(k->generator()).has_value(), "t^2 - x has no root in F2(x)");
  t.expect(s.block(0).tower->minimal_polynomial().degree() == 2, "certified tower has degree 2");
  t.expect(s.loewy_length() == 2, "rl = 2");
  t.expect(!find_splitting_charp(s).has_value(), "no splitting");
  return t.outcome("dim 4, rad span{z, yz}, quotient F2(x)[t]/(t^2 - x), rl 2, not split");
}

Outcome triangle_example() {
  Tally t;
  const auto a = dr3_triangle();
  validate_algebra(a);
  t.expect(a.dim() == 14, "dim");
  const auto s = BasicStructure::verify(a);
  const auto& eps = *a.certificates.epsilon;
  t.expect(verify_split(s, eps).ok, "diagonal epsilon splits");
  t.expect(!r_split_check(s, eps).has_value(), "r-split infeasible");
  t.expect(hereditary_check(s).hereditary, "hereditary");
  const auto ex = dr3_species();
  const TensorAlgebra tensor(ex.species, std::nullopt);
  const auto w = verify_presentation(a, tensor, dr3_realization(), ex.relations);
  t.expect(w.iso.rows() == 14 && w.iso.cols() == 14, "presentation isomorphic");
  t.expect(is_algebra_morphism(w.quotient.algebra, a, w.iso), "iso is an algebra morphism");
  t.expect(w.strong_canonical, "strong canonical");
  t.expect(!w.admissible, "not admissible");
  return t.outcome("dim 14, split, not r-split, hereditary, T(S)/<sigma> iso");
}

Outcome functor_equivalence() {
  Tally t;
  Rng rng(2024);
  const auto corpus = functor_corpus();
  for (const auto& entry : corpus) {
    const auto& ex = entry.presentation;
    const TensorAlgebra tensor(ex.species, ex.bound);
    const auto q = quotient_by_relations(tensor, ex.relations);
    for (int i = 0; i < 50; ++i) {
      const auto m = random_module(q.algebra, rng);
      const auto g = module_to_rep(tensor, m, &q);
      t.expect(rep_satisfies_relations(tensor, g, ex.relations), entry.name + ": G(M) satisfies the relations");
      const auto fg = rep_to_module(tensor, g, &q);
      t.expect(is_module_isomorphism(m, fg, vertex_basis_change(tensor, m, &q)), entry.name + ": FG(M) iso M");
    }
    for (int i = 0; i < 50; ++i) {
      const auto r = random_representation(ex.species, rng);
      const auto fr = rep_to_module(tensor, r);
      t.expect(same_rep(module_to_rep(tensor, fr), r), entry.name + ": GF(V) = V");
      const bool sat = rep_satisfies_relations(tensor, r, ex.relations);
      t.expect(sat == annihilated_by(tensor, r, q.ideal), entry.name + ": relations iff ideal annihilates");
      if (sat) {
        const auto fq = rep_to_module(tensor, r, &q);
        t.expect(same_rep(module_to_rep(tensor, fq, &q), r), entry.name + ": GF(V) = V over the quotient");
      }
    }
  }
  return t.outcome(std::to_string(corpus.size()) + " algebras x (50 modules + 50 representations)");
}

Outcome tensor_hereditary() {
  Tally t;
  Rng rng(37);
  for (int i = 0; i < 10; ++i) {
    const auto s = random_acyclic_species(rng);
    const TensorAlgebra tensor(s, std::nullopt);
    const auto h = hereditary_check(BasicStructure::verify(tensor.algebra()));
    const std::string tag = "species " + std::to_string(i);
    t.expect(h.hereditary, tag + ": hereditary");
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
      std::vector<std::size_t> expect(s.vertex_count(), 0);
      for (const auto& e : s.edges())
        if (e.source == v) expect[e.target] += e.dim() / s.tower(e.target).dim();
      t.expect(h.radicals[v].multiplicity == expect, tag + ": multiplicities at vertex " + std::to_string(v));
    }
  }
  return t.outcome("10 random acyclic species");
}

Outcome kernel_bounds() {
  Tally t;
  for (const auto& entry : perfect_corpus()) {
    const auto s = BasicStructure::verify(entry.algebra);
    const auto res = build_surjection(s, *entry.algebra.certificates.epsilon, SurjectionMode::RSplit);
    const auto rl = s.loewy_length();
    t.expect(res.kernel.contains(res.tensor.J_power(rl)), entry.name + ": J^rl in ker");
    t.expect(res.tensor.J_power(2).contains(res.kernel), entry.name + ": ker in J^2");
  }
  const auto a = dr3_triangle();
  const auto s = BasicStructure::verify(a);
  const auto res = build_surjection(s, *a.certificates.epsilon, SurjectionMode::SplitEnlarged);
  t.expect(res.kernel.contains(res.tensor.J_power(s.loewy_length())), "dr3: J^rl in ker");
  t.expect(res.tensor.J().contains(res.kernel), "dr3: ker in J");
  t.expect(!res.tensor.J_power(2).contains(res.kernel), "dr3: ker not in J^2");
  return t.outcome("r-split corpus and enlarged dr3 (ker " + std::to_string(res.kernel.dim()) + " in T of dim " +
                   std::to_string(res.tensor.dim()) + ")");
}

Outcome tree_corollary() {
  Tally t;
  const auto corpus = tree_corpus();
  for (const auto& entry : corpus) {
    const auto s = BasicStructure::verify(entry.algebra);
    const auto res = build_surjection(s, *entry.algebra.certificates.epsilon, SurjectionMode::RSplit);
    const auto rels = kernel_relations(res);
    t.expect(rels.empty(), entry.name + ": no relations");
    const auto w = verify_presentation(entry.algebra, res.tensor, res.realization, rels);
    t.expect(w.iso.rows() == entry.algebra.dim() && w.iso.cols() == res.tensor.dim(), entry.name + ": iso with T(S)");
  }
  return t.outcome(std::to_string(corpus.size()) + " tree species");
}

Outcome perfect_r_split() {
  Tally t;
  const auto corpus = perfect_corpus();
  for (const auto& entry : corpus) {
    const auto s = BasicStructure::verify(entry.algebra);
    const auto& eps = *entry.algebra.certificates.epsilon;
    t.expect(verify_split(s, eps).ok, entry.name + ": epsilon verified");
    const auto sec = r_split_check(s, eps);
    t.expect(sec.has_value() && verify_section(s, eps, *sec), entry.name + ": r-split");
  }
  return t.outcome(std::to_string(corpus.size()) + " algebras over F2, F3, F4, Q");
}

Outcome canonical_machinery() {
  Tally t;
  Rng rng(41);
  std::size_t relations = 0;
  for (int i = 0; i < 10; ++i) {
    const std::string tag = "species " + std::to_string(i);
    const auto s = random_acyclic_species(rng);
    const auto rels = random_canonical_relations(s, rng);
    relations += rels.size();
    t.expect(validate_canonical_set(s, rels).ok, tag + ": canonical input");
    const TensorAlgebra tensor(s, std::nullopt);
    const auto q = quotient_by_relations(tensor, rels);
    t.expect(hereditary_check(BasicStructure::verify(q.algebra)).hereditary, tag + ": hereditary quotient");
    const auto again = kernel_relations(tensor, q.ideal);
    t.expect(validate_canonical_set(s, again).ok, tag + ": kernel relations canonical");
    t.expect(quotient_by_relations(tensor, again).ideal == q.ideal, tag + ": kernel relations regenerate");
    const auto red = reduce_to_strong_canonical(s, rels);
    for (const auto& r : red.relations) t.expect(is_strong_canonical(r), tag + ": reduced relation strong");
    const TensorAlgebra reduced(red.species, std::nullopt);
    const auto q2 = quotient_by_relations(reduced, red.relations);
    t.expect(induced_isomorphism(q, q2, tensor_map(tensor, reduced, red.map)).has_value(), tag + ": reduction iso");
  }
  return t.outcome("10 random species, " + std::to_string(relations) + " canonical relations");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"nonsplit example", nonsplit_example},
      {"triangle example", triangle_example},
      {"functor equivalence", functor_equivalence},
      {"hereditary tensor algebras", tensor_hereditary},
      {"kernel bounds", kernel_bounds},
      {"tree corollary", tree_corollary},
      {"perfect fields are r-split", perfect_r_split},
      {"canonical machinery", canonical_machinery},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << "  ("
              << secs << " s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
