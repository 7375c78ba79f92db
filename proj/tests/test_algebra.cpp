#include <gtest/gtest.h>

#include "algkit/algebra.hpp"
#include "algkit/gallery.hpp"

using namespace algkit;

namespace {

template <class Fn>
ErrorKind kind_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::DocumentError;
}

// The field K = k[t]/(t^2 + x) presented as a 2-dimensional k-algebra.
AlgebraPresentation field_as_algebra() {
  const auto k = Field::rational_function(2, "x");
  const auto K = Field::extension(k, "t", "t^2 + x");
  const Elem b[2] = {K->one(), K->generator()};
  auto a = make_algebra(k, {"1", "t"}, unit_vec(k, 2, 0), [&](std::size_t i, std::size_t j) { return (b[i] * b[j]).coords(); });
  a.certificates.radical = std::vector<Vec>{};
  a.certificates.blocks = std::vector<BlockCertificate>{{K, {unit_vec(k, 2, 0), unit_vec(k, 2, 1)}}};
  return a;
}

// F4 x F2 over F2, basis (1,0), (w,0), (0,1).
AlgebraPresentation f4_times_f2() {
  const auto k = Field::prime(2);
  const auto F4 = Field::extension(k, "w", "w^2 + w + 1");
  auto product = [&](std::size_t i, std::size_t j) {
    Vec out = zero_vec(k, 3);
    if (i == 2 || j == 2) {
      if (i == 2 && j == 2) out[2] = k->one();
      return out;
    }
    const Elem x = i == 0 ? F4->one() : F4->generator();
    const Elem y = j == 0 ? F4->one() : F4->generator();
    const Elem c = x * y;
    out[0] = c.coords()[0];
    out[1] = c.coords()[1];
    return out;
  };
  Vec unit = zero_vec(k, 3);
  unit[0] = unit[2] = k->one();
  auto a = make_algebra(k, {"1a", "wa", "1b"}, unit, product);
  a.certificates.radical = std::vector<Vec>{};
  a.certificates.blocks =
      std::vector<BlockCertificate>{{F4, {unit_vec(k, 3, 0), unit_vec(k, 3, 1)}}, {k, {unit_vec(k, 3, 2)}}};
  return a;
}

// 2x2 matrices over F2, basis E11, E12, E21, E22.
AlgebraPresentation m2f2() {
  const auto k = Field::prime(2);
  auto product = [&](std::size_t i, std::size_t j) {
    Vec out = zero_vec(k, 4);
    const std::size_t r1 = i / 2, c1 = i % 2, r2 = j / 2, c2 = j % 2;
    if (c1 == r2) out[2 * r1 + c2] = k->one();
    return out;
  };
  Vec unit = zero_vec(k, 4);
  unit[0] = unit[3] = k->one();
  return make_algebra(k, {"E11", "E12", "E21", "E22"}, unit, product);
}

}  // namespace

TEST(Validate, NonsplitExampleHasDimensionFour) {
  const auto a = nonsplit_f2x();
  EXPECT_NO_THROW(validate_algebra(a));
  EXPECT_EQ(a.dim(), 4u);
}

TEST(Validate, MissingUnit) {
  const auto k = Field::prime(2);
  // b1 b1 = b2, b2 bi = b1
  auto a = make_algebra(k, {"b1", "b2"}, unit_vec(k, 2, 0), [&](std::size_t i, std::size_t j) {
    if (i == 0 && j == 0) return unit_vec(k, 2, 1);
    if (i == 1) return unit_vec(k, 2, 0);
    return zero_vec(k, 2);
  });
  EXPECT_THROW(validate_algebra(a), Error);
  EXPECT_TRUE(kind_of([&] { validate_algebra(a); }) == ErrorKind::UnitFails ||
              kind_of([&] { validate_algebra(a); }) == ErrorKind::NotAssociative);
  auto commutative_no_unit = make_algebra(k, {"b1", "b2"}, unit_vec(k, 2, 0), [&](std::size_t i, std::size_t j) {
    return i == 1 && j == 1 ? unit_vec(k, 2, 1) : zero_vec(k, 2);
  });
  EXPECT_EQ(kind_of([&] { validate_algebra(commutative_no_unit); }), ErrorKind::UnitFails);
}

TEST(Validate, NotAssociativeReportsTriple) {
  const auto k = Field::prime(3);
  // a*a = 1 + a, a*1 = 1*a = a, but with a*a*a broken by an inconsistent rule on (a,a)
  auto a = make_algebra(k, {"1", "a", "b"}, unit_vec(k, 3, 0), [&](std::size_t i, std::size_t j) {
    if (i == 0) return unit_vec(k, 3, j);
    if (j == 0) return unit_vec(k, 3, i);
    if (i == 1 && j == 2) return unit_vec(k, 3, 2);
    return zero_vec(k, 3);
  });
  try {
    validate_algebra(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAssociative);
    EXPECT_NE(std::string(e.what()).find("("), std::string::npos);
  }
}

TEST(Validate, FieldAsAlgebra) { EXPECT_NO_THROW(validate_algebra(field_as_algebra())); }

TEST(Ideals, Closure) {
  const auto a = nonsplit_f2x();
  const auto k = a.field();
  EXPECT_EQ(ideal_closure(a, {a.basis(2)}), Subspace::span(k, 4, {a.basis(2), a.basis(3)}));
  EXPECT_EQ(ideal_closure(a, {a.unit()}), Subspace::full(k, 4));
  EXPECT_EQ(ideal_closure(a, {}).dim(), 0u);
}

TEST(Ideals, RadicalSquareVanishesByDirectProducts) {
  // z*z, z*yz, yz*z, yz*yz read off the table one by one
  const auto a = nonsplit_f2x();
  for (std::size_t i : {2u, 3u})
    for (std::size_t j : {2u, 3u}) EXPECT_TRUE(a.product(i, j).empty());
  const auto rad = Subspace::span(a.field(), 4, {a.basis(2), a.basis(3)});
  EXPECT_EQ(bilinear_image(rad, rad, a.multiplication()).dim(), 0u);
  EXPECT_EQ(bilinear_image(Subspace::full(a.field(), 4), Subspace::full(a.field(), 4), a.multiplication()).dim(), 4u);
}

TEST(Ideals, NilpotencyIndex) {
  const auto a = nonsplit_f2x();
  const auto rad = Subspace::span(a.field(), 4, {a.basis(2), a.basis(3)});
  EXPECT_EQ(nilpotency_index(a, rad), 2u);
  EXPECT_EQ(nilpotency_index(a, Subspace(a.field(), 4)), 1u);
  EXPECT_FALSE(nilpotency_index(a, Subspace::full(a.field(), 4)).has_value());
}

TEST(Radical, TraceCharZero) {
  const auto q = Field::rationals();
  auto a = make_algebra(q, {"1", "x"}, unit_vec(q, 2, 0), [&](std::size_t i, std::size_t j) {
    return i + j < 2 ? unit_vec(q, 2, i + j) : zero_vec(q, 2);
  });
  EXPECT_EQ(radical_trace_char0(a), Subspace::span(q, 2, {unit_vec(q, 2, 1)}));
  EXPECT_EQ(kind_of([] { radical_trace_char0(nonsplit_f2x()); }), ErrorKind::WrongCharacteristic);
}

TEST(Radical, SuppliedCertificates) {
  const auto a = nonsplit_f2x();
  EXPECT_EQ(radical_supplied(a, a.certificates).dim(), 2u);
  Certificates bad = a.certificates;
  bad.radical = std::vector<Vec>{a.basis(1)};
  EXPECT_EQ(kind_of([&] { radical_supplied(a, bad); }), ErrorKind::CertificateRejected);
  // y generates the unit ideal
  EXPECT_EQ(ideal_closure(a, {a.basis(1)}).dim(), 4u);
}

TEST(Radical, LoewyLength) {
  EXPECT_EQ(BasicStructure::verify(nonsplit_f2x()).loewy_length(), 2u);
  EXPECT_EQ(BasicStructure::verify(field_as_algebra()).loewy_length(), 1u);
  const auto dr3 = dr3_triangle();
  const auto s = BasicStructure::verify(dr3);
  EXPECT_EQ(s.loewy_length(), 3u);
  EXPECT_EQ(s.radical().dim(), 8u);
  EXPECT_EQ(s.radical_square().dim(), 2u);
}

TEST(Idempotents, VerifyAndLift) {
  const auto dr3 = dr3_triangle();
  const Subspace rad = radical_supplied(dr3, dr3.certificates);
  EXPECT_EQ(verify_idempotents(dr3, rad, *dr3.certificates.blocks, *dr3.certificates.idempotents),
            (std::vector<std::size_t>{0, 1, 2}));
  const auto lifted = lift_idempotents(dr3, rad, *dr3.certificates.blocks);
  EXPECT_EQ(lifted.size(), 3u);

  const auto local = nonsplit_f2x();
  EXPECT_EQ(BasicStructure::verify(local).idempotents(), (std::vector<Vec>{local.unit()}));

  const auto prod = f4_times_f2();
  const auto s = BasicStructure::verify(prod);
  EXPECT_EQ(s.idempotents(), (std::vector<Vec>{prod.basis(0), prod.basis(2)}));

  std::vector<Vec> wrong{dr3.basis(0), dr3.basis(2)};
  EXPECT_EQ(kind_of([&] { verify_idempotents(dr3, rad, *dr3.certificates.blocks, wrong); }), ErrorKind::NotComplete);
  std::vector<Vec> not_idem{dr3.basis(1), dr3.basis(2), dr3.basis(4)};
  EXPECT_EQ(kind_of([&] { verify_idempotents(dr3, rad, *dr3.certificates.blocks, not_idem); }),
            ErrorKind::NotIdempotent);
}

TEST(Idempotents, LiftingFromPerturbedUnits) {
  // perturb the block lifts by radical elements; lifting must still succeed
  auto dr3 = dr3_triangle();
  auto blocks = *dr3.certificates.blocks;
  blocks[2].lift[0] = add(blocks[2].lift[0], dr3.basis(6));   // E11 + E21
  blocks[1].lift[0] = add(blocks[1].lift[0], dr3.basis(10));  // E22 + M1
  const Subspace rad = radical_supplied(dr3, dr3.certificates);
  const auto lifted = lift_idempotents(dr3, rad, blocks);
  EXPECT_NO_THROW(verify_idempotents(dr3, rad, blocks, lifted));
}

TEST(Peirce, TriangleBlockDimensions) {
  const auto dr3 = dr3_triangle();
  const std::vector<Vec> idems{dr3.basis(0), dr3.basis(2), dr3.basis(4)};  // E11, E22, E33
  const auto blocks = peirce(dr3, idems);
  const std::size_t expected[3][3] = {{2, 0, 0}, {2, 2, 0}, {4, 2, 2}};
  std::size_t total = 0;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(blocks[j][i].dim(), expected[j][i]) << j << "," << i;
      total += blocks[j][i].dim();
    }
  EXPECT_EQ(total, dr3.dim());
  const auto single = peirce(dr3, {dr3.unit()});
  EXPECT_EQ(single[0][0].dim(), 14u);
  const auto prod = f4_times_f2();
  const auto pb = peirce(prod, BasicStructure::verify(prod).idempotents());
  EXPECT_EQ(pb[0][1].dim() + pb[1][0].dim(), 0u);
}

TEST(Basic, Examples) {
  EXPECT_TRUE(is_basic(nonsplit_f2x(), nonsplit_f2x().certificates));
  EXPECT_TRUE(is_basic(f4_times_f2(), f4_times_f2().certificates));
  const auto m2 = m2f2();
  EXPECT_NO_THROW(validate_algebra(m2));
  // E12 and E21 do not commute: no field tower can be isomorphic to this block.
  EXPECT_NE(m2.mul(m2.basis(1), m2.basis(2)), m2.mul(m2.basis(2), m2.basis(1)));
  Certificates c;
  c.radical = std::vector<Vec>{};
  const auto F16 = Field::extension(Field::prime(2), "w", "w^4 + w + 1");
  c.blocks = std::vector<BlockCertificate>{{F16, {m2.unit(), m2.basis(1), m2.basis(2), m2.basis(0)}}};
  EXPECT_FALSE(is_basic(m2, c));
}

TEST(Split, VerifySplit) {
  const auto dr3 = dr3_triangle();
  const auto s = BasicStructure::verify(dr3);
  EXPECT_TRUE(verify_split(s, *dr3.certificates.epsilon).ok);
  EXPECT_FALSE(verify_split(s, Matrix(dr3.field(), 14, 6)).ok);
  const auto K = field_as_algebra();
  EXPECT_TRUE(verify_split(BasicStructure::verify(K), Matrix::identity(K.field(), 2)).ok);
}

TEST(Split, FindSplittingCharP) {
  EXPECT_FALSE(find_splitting_charp(BasicStructure::verify(nonsplit_f2x())).has_value());
  const auto K = field_as_algebra();
  const auto eps = find_splitting_charp(BasicStructure::verify(K));
  ASSERT_TRUE(eps.has_value());
  EXPECT_EQ(*eps, Matrix::identity(K.field(), 2));
  EXPECT_EQ(kind_of([] { find_splitting_charp(BasicStructure::verify(f4z_dual())); }), ErrorKind::UnsupportedShape);
  const auto f4z = f4z_dual();
  EXPECT_TRUE(verify_split(BasicStructure::verify(f4z), *f4z.certificates.epsilon).ok);
}

TEST(Split, NonsplitSemilinearSystemByHand) {
  // w = a0 + a1 y + a2 z + a3 yz with w^2 = x: the z-coordinate forces a1 = 0,
  // then a0^2 = x has no solution in F2(x).
  const auto a = nonsplit_f2x();
  const auto k = a.field();
  const Vec y2 = a.mul(a.basis(1), a.basis(1));
  EXPECT_EQ(y2, (Vec{k->generator(), k->zero(), k->one(), k->zero()}));
  EXPECT_FALSE(frobenius_preimage(k->generator()).has_value());
}

TEST(RSplit, Examples) {
  const auto dr3 = dr3_triangle();
  const auto s = BasicStructure::verify(dr3);
  EXPECT_FALSE(r_split_check(s, *dr3.certificates.epsilon).has_value());

  const auto f4z = f4z_dual();
  const auto sf = BasicStructure::verify(f4z);
  const auto sec = r_split_check(sf, *f4z.certificates.epsilon);
  ASSERT_TRUE(sec.has_value());
  EXPECT_TRUE(verify_section(sf, *f4z.certificates.epsilon, *sec));
  // r^2 = 0: the section is the identity on r
  EXPECT_EQ(sec->column(0), f4z.basis(2));
  EXPECT_EQ(sec->column(1), f4z.basis(3));
}

// Four candidate resolutions of the corner of the triangular example: product
// K x K -> M landing in the first or second coordinate, and the right action of
// K on M either (f,g)b = (fb, gb + f d(b)) or (f,g)b = (fb + g d(b), gb).
TEST(TriangleOracle, AssociativityOfCornerCandidates) {
  const auto k = Field::rational_function(2, "s");
  const auto K = Field::extension(k, "t", "t^2 + s");
  const Elem zero = K->zero();
  auto delta = [&](const Elem& b) { return embed(b.coords()[1], K); };
  struct T {
    Elem a11, a22, a33, a21, a32, f, g;
  };
  bool valid[2][2];
  for (int prod_first = 0; prod_first < 2; ++prod_first)
    for (int twisted = 0; twisted < 2; ++twisted) {
      auto basis = [&](std::size_t i) {
        T x{zero, zero, zero, zero, zero, zero, zero};
        Elem* slots[7] = {&x.a11, &x.a22, &x.a33, &x.a21, &x.a32, &x.f, &x.g};
        *slots[i / 2] = i % 2 == 0 ? K->one() : K->generator();
        return x;
      };
      auto mul = [&](const T& x, const T& y) {
        T r{zero, zero, zero, zero, zero, zero, zero};
        r.a11 = x.a11 * y.a11;
        r.a22 = x.a22 * y.a22;
        r.a33 = x.a33 * y.a33;
        r.a21 = x.a21 * y.a11 + x.a22 * y.a21;
        r.a32 = x.a32 * y.a22 + x.a33 * y.a32;
        const Elem b = y.a11;
        Elem f = twisted ? x.f * b + x.g * delta(b) : x.f * b;
        Elem g = twisted ? x.g * b : x.g * b + x.f * delta(b);
        f = f + x.a33 * y.f;
        g = g + x.a33 * y.g;
        const Elem ab = x.a32 * y.a21;
        if (prod_first) f = f + ab;
        else g = g + ab;
        r.f = f;
        r.g = g;
        return r;
      };
      auto coords = [&](const T& x) {
        Vec out;
        for (const Elem* e : {&x.a11, &x.a22, &x.a33, &x.a21, &x.a32, &x.f, &x.g}) {
          out.push_back(e->coords()[0]);
          out.push_back(e->coords()[1]);
        }
        return out;
      };
      std::vector<std::string> names;
      for (int i = 0; i < 14; ++i) names.push_back("b" + std::to_string(i));
      Vec unit = zero_vec(k, 14);
      unit[0] = unit[2] = unit[4] = k->one();
      auto alg = make_algebra(k, names, unit, [&](std::size_t i, std::size_t j) { return coords(mul(basis(i), basis(j))); });
      try {
        validate_algebra(alg);
        valid[prod_first][twisted] = true;
      } catch (const Error&) {
        valid[prod_first][twisted] = false;
      }
    }
  // (ab, 0) needs the twisted action; (0, ab) works with the literal one.
  EXPECT_TRUE(valid[1][1]);
  EXPECT_FALSE(valid[1][0]);
  EXPECT_TRUE(valid[0][0]);
  EXPECT_FALSE(valid[0][1]);
  // the gallery algebra is the first of these
  EXPECT_NO_THROW(validate_algebra(dr3_triangle()));
}
