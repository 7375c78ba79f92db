#include <gtest/gtest.h>

#include "algkit/fields.hpp"
#include "algkit/random.hpp"

using namespace algkit;

namespace {

FieldPtr f2x() { return Field::rational_function(2, "x"); }
FieldPtr k_sqrt_x() { return Field::extension(f2x(), "t", "t^2 + x"); }
FieldPtr f4() { return Field::extension(Field::prime(2), "w", "w^2 + w + 1"); }

std::vector<FieldPtr> descriptors() {
  return {Field::prime(2),
          Field::prime(7),
          Field::rationals(),
          f2x(),
          Field::rational_function(3, "x"),
          f4(),
          Field::extension(Field::prime(3), "i", "i^2 + 1"),
          k_sqrt_x(),
          Field::extension(Field::rationals(), "r", "r^3 - 2")};
}

int expect_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return static_cast<int>(e.kind());
  }
  return -1;
}

}  // namespace

TEST(Parse, RationalFunctionIsNormalized) {
  const auto k = f2x();
  const Elem e = parse_element("x/(x+1)", k);
  EXPECT_EQ(e.ratfun().num, FpPoly(2, {0, 1}));
  EXPECT_EQ(e.ratfun().den, FpPoly(2, {1, 1}));
  EXPECT_EQ(parse_element("(x^2 + x)/(x^2 + 1)", k), e);
}

TEST(Parse, GeneratorSquareIsEmbeddedBase) {
  const auto K = k_sqrt_x();
  const Elem e = parse_element("t^2", K);
  EXPECT_EQ(e, embed(parse_element("x", f2x()), K));
  EXPECT_EQ(e.coords()[0], parse_element("x", f2x()));
  EXPECT_TRUE(e.coords()[1].is_zero());
}

TEST(Parse, Errors) {
  const auto k = f2x();
  EXPECT_EQ(expect_kind([&] { parse_element("1/0", k); }), static_cast<int>(ErrorKind::DivisionByZero));
  EXPECT_EQ(expect_kind([&] { parse_element("y + 1", k); }), static_cast<int>(ErrorKind::UnknownSymbol));
  EXPECT_EQ(expect_kind([&] { parse_element("x + * 1", k); }), static_cast<int>(ErrorKind::SyntaxError));
  EXPECT_EQ(expect_kind([&] { parse_element("(x + 1", k); }), static_cast<int>(ErrorKind::SyntaxError));
  EXPECT_EQ(expect_kind([&] { parse_element("", k); }), static_cast<int>(ErrorKind::SyntaxError));
}

TEST(Parse, SyntaxErrorReportsPosition) {
  try {
    parse_element("x + )", f2x());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
  }
}

TEST(Parse, NegativeExponentsAndUnaryMinus) {
  const auto q = Field::rationals();
  EXPECT_EQ(parse_element("2^-2", q), q->from_rational(mpq_class(1, 4)));
  EXPECT_EQ(parse_element("-3^2", q), q->from_int(-9));
  EXPECT_EQ(parse_element("(-3)^2", q), q->from_int(9));
}

TEST(Arith, InverseLaw) {
  const auto k = f2x();
  const Elem x = k->generator();
  EXPECT_TRUE((x.inverse() * x).is_one());
  EXPECT_EQ(parse_element("x/x", k), k->one());
}

TEST(Arith, FrobeniusOfShiftedGenerator) {
  // (t + 1)^2 = t^2 + 2t + 1 = x + 1, expanded by hand in the power basis.
  const auto K = k_sqrt_x();
  const Elem t = K->generator();
  const Elem s = (t + K->one()) * (t + K->one());
  Vec expected{parse_element("x + 1", f2x()), f2x()->zero()};
  EXPECT_EQ(s.coords(), expected);
  EXPECT_EQ(s.to_string(), "x + 1");
}

TEST(Arith, DescriptorMismatch) {
  const Elem a = Field::prime(2)->one();
  const Elem b = Field::prime(3)->one();
  EXPECT_EQ(expect_kind([&] { (void)(a + b); }), static_cast<int>(ErrorKind::DescriptorMismatch));
  EXPECT_EQ(expect_kind([&] { (void)Field::prime(5)->zero().inverse(); }), static_cast<int>(ErrorKind::DivisionByZero));
}

TEST(Embed, Examples) {
  const auto k = f2x();
  const auto K = k_sqrt_x();
  const Elem xe = embed(k->generator(), K);
  EXPECT_EQ(xe.coords(), (Vec{k->generator(), k->zero()}));
  EXPECT_EQ(embed(Field::prime(2)->one(), k), k->one());
  EXPECT_EQ(expect_kind([&] { embed(K->generator(), k); }), static_cast<int>(ErrorKind::NoTowerPath));
}

TEST(Frobenius, Examples) {
  const auto k = f2x();
  const auto K = k_sqrt_x();
  EXPECT_EQ(frobenius_preimage(parse_element("x^2", k)), k->generator());
  EXPECT_FALSE(frobenius_preimage(k->generator()).has_value());
  EXPECT_EQ(frobenius_preimage(parse_element("t^2", K)), K->generator());
  EXPECT_EQ(expect_kind([&] { frobenius_preimage(Field::rationals()->one()); }), static_cast<int>(ErrorKind::CharZero));
}

TEST(Frobenius, ExponentParityOracle) {
  // Squares in F2(x) have only even exponents in reduced numerator and denominator.
  const auto k = f2x();
  Rng rng(11);
  for (int it = 0; it < 100; ++it) {
    const Elem e = random_nonzero(k, rng, 4);
    bool even = true;
    for (const FpPoly* p : {&e.ratfun().num, &e.ratfun().den})
      for (std::size_t i = 0; i < p->coeffs().size(); ++i)
        if (p->coeffs()[i] != 0 && i % 2 == 1) even = false;
    EXPECT_EQ(frobenius_preimage(e).has_value(), even) << e.to_string();
  }
}

TEST(Perfect, Examples) {
  EXPECT_TRUE(Field::prime(2)->is_perfect());
  EXPECT_FALSE(f2x()->is_perfect());
  EXPECT_TRUE(Field::rationals()->is_perfect());
  EXPECT_TRUE(f4()->is_perfect());
  EXPECT_FALSE(k_sqrt_x()->is_perfect());
}

TEST(Descriptor, IrreducibilityPolicy) {
  EXPECT_EQ(k_sqrt_x()->irreducibility_proof(), IrreducibilityProof::PurelyInseparable);
  EXPECT_EQ(f4()->irreducibility_proof(), IrreducibilityProof::Rabin);
  EXPECT_EQ(expect_kind([] { Field::extension(Field::prime(2), "w", "w^2 + 1"); }),
            static_cast<int>(ErrorKind::InvalidDescriptor));
  EXPECT_EQ(expect_kind([] { Field::extension(f2x(), "t", "t^2 + x^2"); }),
            static_cast<int>(ErrorKind::InvalidDescriptor));
  EXPECT_EQ(expect_kind([] { Field::extension(Field::rationals(), "r", "r^2 - 4"); }),
            static_cast<int>(ErrorKind::InvalidDescriptor));
  EXPECT_EQ(expect_kind([] { Field::extension(Field::rationals(), "r", "r^4 + 1"); }),
            static_cast<int>(ErrorKind::IrreducibilityUnproven));
  EXPECT_EQ(Field::extension(Field::rationals(), "r", "r^4 + 1", true)->irreducibility_proof(),
            IrreducibilityProof::Certified);
  EXPECT_EQ(expect_kind([] { Field::extension(k_sqrt_x(), "t", "t^2 + x"); }),
            static_cast<int>(ErrorKind::InvalidDescriptor));
  EXPECT_EQ(Field::prime(3)->token(), "F3");
  EXPECT_EQ(k_sqrt_x()->token(), "F2(x)[t]/(t^2 + x)");
  EXPECT_EQ(Field::extension(Field::prime(2), "w", "w^4 + w + 1")->cardinality(), 16u);
}

TEST(Tower, CoordinatesOverGround) {
  const auto F4 = f4();
  const auto E = Field::extension(F4, "v", "v^2 + v + w");
  TowerOverK tw(E, Field::prime(2));
  ASSERT_EQ(tw.dim(), 4u);
  EXPECT_EQ(tw.labels(), (std::vector<std::string>{"1", "w", "v", "v*w"}));
  Rng rng(3);
  for (int it = 0; it < 20; ++it) {
    const Elem e = random_elem(E, rng);
    EXPECT_EQ(tw.element(tw.coords(e)), e);
  }
}

class FieldProperties : public ::testing::TestWithParam<int> {};

TEST_P(FieldProperties, AxiomsOnRandomTriples) {
  const auto f = descriptors()[GetParam()];
  Rng rng(1000 + GetParam());
  for (int it = 0; it < 200; ++it) {
    const Elem a = random_elem(f, rng), b = random_elem(f, rng), c = random_elem(f, rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    if (!a.is_zero()) ASSERT_TRUE((a * a.inverse()).is_one()) << a.to_string();
  }
}

TEST_P(FieldProperties, ParsePrintRoundTrip) {
  const auto f = descriptors()[GetParam()];
  Rng rng(2000 + GetParam());
  for (int it = 0; it < 100; ++it) {
    const Elem a = random_elem(f, rng), b = random_nonzero(f, rng);
    for (const Elem& e : {a, a * b, a / b, -a, a - b}) ASSERT_EQ(parse_element(e.to_string(), f), e) << e.to_string();
  }
}

TEST_P(FieldProperties, FrobeniusRoundTrip) {
  const auto f = descriptors()[GetParam()];
  if (f->characteristic() == 0) GTEST_SKIP();
  Rng rng(3000 + GetParam());
  const auto p = static_cast<long long>(f->characteristic());
  for (int it = 0; it < 100; ++it) {
    const Elem a = random_elem(f, rng);
    const auto root = frobenius_preimage(a.pow(p));
    ASSERT_TRUE(root.has_value()) << a.to_string();
    ASSERT_EQ(*root, a);
  }
}

INSTANTIATE_TEST_SUITE_P(Descriptors, FieldProperties, ::testing::Range(0, 9));

TEST(EmbedProperties, InjectiveAndMultiplicative) {
  const std::vector<std::pair<FieldPtr, FieldPtr>> pairs = {
      {Field::prime(2), f2x()}, {f2x(), k_sqrt_x()}, {Field::prime(2), k_sqrt_x()}, {Field::prime(2), f4()}};
  Rng rng(77);
  for (const auto& [sub, super] : pairs) {
    for (int it = 0; it < 100; ++it) {
      const Elem a = random_elem(sub, rng), b = random_elem(sub, rng);
      ASSERT_EQ(embed(a * b, super), embed(a, super) * embed(b, super));
      ASSERT_EQ(embed(a + b, super), embed(a, super) + embed(b, super));
      ASSERT_EQ(a == b, embed(a, super) == embed(b, super));
    }
  }
}
