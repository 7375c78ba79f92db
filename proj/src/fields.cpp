#include "algkit/fields.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "algkit/linalg.hpp"

namespace algkit {

std::string_view to_string(IrreducibilityProof proof) {
  switch (proof) {
    case IrreducibilityProof::NotApplicable: return "not-applicable";
    case IrreducibilityProof::PurelyInseparable: return "purely-inseparable";
    case IrreducibilityProof::Rabin: return "rabin";
    case IrreducibilityProof::RationalRoots: return "rational-roots";
    case IrreducibilityProof::DivisorEnumeration: return "divisor-enumeration";
    case IrreducibilityProof::Certified: return "certified";
  }
  return "?";
}

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t p32(const FieldPtr& f) { return static_cast<std::uint32_t>(f->characteristic()); }

RatFun normalize(FpPoly num, FpPoly den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  const std::uint32_t p = den.modulus();
  if (num.is_zero()) return {FpPoly(p, {}), FpPoly::constant(p, 1)};
  FpPoly g = gcd(num, den);
  if (!g.is_one()) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  const std::uint32_t inv = fp_inverse(den.leading(), p);
  if (inv != 1) {
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return {std::move(num), std::move(den)};
}

// Multiply coordinate vectors in base^d and reduce by the monic minimal polynomial.
Vec ext_mul(const Vec& a, const Vec& b, const Polynomial& m) {
  const std::size_t d = a.size();
  const Elem zero = a[0].field()->zero();
  Vec acc(2 * d - 1, zero);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      acc[i + j] += a[i] * b[j];
    }
  }
  const Vec& mc = m.coeffs();
  for (std::size_t k = acc.size(); k-- > d;) {
    if (acc[k].is_zero()) continue;
    const Elem c = acc[k];
    for (std::size_t i = 0; i < d; ++i) acc[k - d + i] -= c * mc[i];
    acc[k] = zero;
  }
  acc.resize(d);
  return acc;
}

std::tuple<Polynomial, Polynomial> ext_gcd_inverse(const Polynomial& a, const Polynomial& m) {
  // returns (g, s) with s*a = g (mod m)
  Polynomial r0 = m, r1 = a;
  Polynomial s0(a.field(), {}), s1(a.field(), {a.field()->one()});
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Polynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  return {r0, s0};
}

}  // namespace

// ------------------------------------------------------------------ Elem

Elem::Elem(FieldPtr field, Rep rep) : field_(std::move(field)), rep_(std::move(rep)) {}

bool Elem::is_zero() const {
  switch (rep_.index()) {
    case 1: return std::get<1>(rep_) == 0;
    case 2: return sgn(std::get<2>(rep_)) == 0;
    case 3: return std::get<3>(rep_).num.is_zero();
    case 4:
      for (const auto& c : std::get<4>(rep_))
        if (!c.is_zero()) return false;
      return true;
    default: return false;
  }
}

bool Elem::is_one() const {
  switch (rep_.index()) {
    case 1: return std::get<1>(rep_) == 1;
    case 2: return std::get<2>(rep_) == 1;
    case 3: return std::get<3>(rep_).num.is_one() && std::get<3>(rep_).den.is_one();
    case 4: {
      const auto& v = std::get<4>(rep_);
      if (!v[0].is_one()) return false;
      for (std::size_t i = 1; i < v.size(); ++i)
        if (!v[i].is_zero()) return false;
      return true;
    }
    default: return false;
  }
}

Elem Elem::operator-() const {
  switch (rep_.index()) {
    case 1: {
      const std::int64_t p = static_cast<std::int64_t>(field_->characteristic());
      const std::int64_t r = std::get<1>(rep_);
      return Elem(field_, r == 0 ? std::int64_t{0} : p - r);
    }
    case 2: return Elem(field_, mpq_class(-std::get<2>(rep_)));
    case 3: {
      const auto& f = std::get<3>(rep_);
      return Elem(field_, RatFun{-f.num, f.den});
    }
    case 4: {
      Vec v = std::get<4>(rep_);
      for (auto& c : v) c = -c;
      return Elem(field_, std::move(v));
    }
    default: throw Error(ErrorKind::DescriptorMismatch, "arithmetic on a null element");
  }
}

Elem& Elem::operator+=(const Elem& o) {
  require_same_field(field_, o.field_);
  switch (rep_.index()) {
    case 1: {
      const std::int64_t p = static_cast<std::int64_t>(field_->characteristic());
      std::int64_t s = std::get<1>(rep_) + std::get<1>(o.rep_);
      if (s >= p) s -= p;
      std::get<1>(rep_) = s;
      break;
    }
    case 2: std::get<2>(rep_) += std::get<2>(o.rep_); break;
    case 3: {
      auto& a = std::get<3>(rep_);
      const auto& b = std::get<3>(o.rep_);
      if (b.num.is_zero()) break;
      if (a.num.is_zero()) {
        a = b;
        break;
      }
      if (a.den == b.den) {
        a = normalize(a.num + b.num, a.den);
      } else {
        a = normalize(a.num * b.den + b.num * a.den, a.den * b.den);
      }
      break;
    }
    case 4: {
      auto& a = std::get<4>(rep_);
      const auto& b = std::get<4>(o.rep_);
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!b[i].is_zero()) a[i] += b[i];
      break;
    }
    default: throw Error(ErrorKind::DescriptorMismatch, "arithmetic on a null element");
  }
  return *this;
}

Elem& Elem::operator-=(const Elem& o) { return *this += -o; }

Elem& Elem::operator*=(const Elem& o) {
  require_same_field(field_, o.field_);
  switch (rep_.index()) {
    case 1: {
      const std::uint64_t p = field_->characteristic();
      std::get<1>(rep_) = static_cast<std::int64_t>(
          (static_cast<std::uint64_t>(std::get<1>(rep_)) * static_cast<std::uint64_t>(std::get<1>(o.rep_))) % p);
      break;
    }
    case 2: std::get<2>(rep_) *= std::get<2>(o.rep_); break;
    case 3: {
      auto& a = std::get<3>(rep_);
      const auto& b = std::get<3>(o.rep_);
      if (a.num.is_zero()) break;
      if (b.num.is_zero()) {
        a = b;
        break;
      }
      if (b.den.is_one() && a.den.is_one()) {
        a.num = a.num * b.num;
      } else {
        a = normalize(a.num * b.num, a.den * b.den);
      }
      break;
    }
    case 4: {
      const auto& a = std::get<4>(rep_);
      const auto& b = std::get<4>(o.rep_);
      rep_ = ext_mul(a, b, field_->minimal_polynomial());
      break;
    }
    default: throw Error(ErrorKind::DescriptorMismatch, "arithmetic on a null element");
  }
  return *this;
}

Elem Elem::inverse() const {
  if (is_null()) throw Error(ErrorKind::DescriptorMismatch, "inverse of a null element");
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + field_->token());
  switch (rep_.index()) {
    case 1: {
      const auto p = static_cast<std::uint32_t>(field_->characteristic());
      return Elem(field_, static_cast<std::int64_t>(fp_inverse(static_cast<std::uint32_t>(std::get<1>(rep_)), p)));
    }
    case 2: return Elem(field_, mpq_class(1 / std::get<2>(rep_)));
    case 3: {
      const auto& f = std::get<3>(rep_);
      return Elem(field_, normalize(f.den, f.num));
    }
    case 4: {
      const Polynomial a(field_->base(), std::get<4>(rep_));
      auto [g, s] = ext_gcd_inverse(a, field_->minimal_polynomial());
      if (g.degree() != 0) throw Error(ErrorKind::DivisionByZero, "element not invertible (reducible modulus?)");
      const Elem ginv = g.coeff(0).inverse();
      Vec out(field_->degree(), field_->base()->zero());
      for (std::size_t i = 0; i < s.coeffs().size() && i < out.size(); ++i) out[i] = s.coeffs()[i] * ginv;
      return Elem(field_, std::move(out));
    }
    default: throw Error(ErrorKind::DescriptorMismatch, "inverse of a null element");
  }
}

Elem Elem::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  Elem result = field_->one();
  Elem b = *this;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

bool operator==(const Elem& a, const Elem& b) {
  if (a.is_null() || b.is_null()) return a.is_null() && b.is_null();
  if (!same_field(a.field_, b.field_)) return false;
  switch (a.rep_.index()) {
    case 1: return std::get<1>(a.rep_) == std::get<1>(b.rep_);
    case 2: return std::get<2>(a.rep_) == std::get<2>(b.rep_);
    case 3: {
      const auto& x = std::get<3>(a.rep_);
      const auto& y = std::get<3>(b.rep_);
      return x.num == y.num && x.den == y.den;
    }
    case 4: return std::get<4>(a.rep_) == std::get<4>(b.rep_);
    default: return false;
  }
}

Elem make_ratfun(const FieldPtr& f, FpPoly num, FpPoly den) {
  if (f->kind() != FieldKind::RationalFunction)
    throw Error(ErrorKind::DescriptorMismatch, "make_ratfun needs a rational function field");
  return Elem(f, normalize(std::move(num), std::move(den)));
}

// ------------------------------------------------------------ Polynomial

Polynomial::Polynomial(FieldPtr field, Vec coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (const auto& c : c_) require_same_field(field_, c.field());
  trim();
}

Polynomial Polynomial::monomial(const Elem& c, std::size_t degree) {
  Vec v(degree + 1, c.field()->zero());
  v[degree] = c;
  return Polynomial(c.field(), std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Elem Polynomial::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_->zero(); }

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Vec v(std::max(c_.size(), o.c_.size()), field_->zero());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return Polynomial(field_, std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Vec v = c_;
  for (auto& c : v) c = -c;
  return Polynomial(field_, std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial(field_, {});
  Vec v(c_.size() + o.c_.size() - 1, field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return Polynomial(field_, std::move(v));
}

Polynomial Polynomial::scaled(const Elem& s) const {
  Vec v = c_;
  for (auto& c : v) c *= s;
  return Polynomial(field_, std::move(v));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  return scaled(c_.back().inverse());
}

Elem Polynomial::evaluate(const Elem& x) const {
  Elem acc = x.field()->zero();
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + embed(c_[k], x.field());
  return acc;
}

bool Polynomial::operator==(const Polynomial& o) const { return c_ == o.c_; }

std::string Polynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) out += " + ";
    first = false;
    std::string cs = c_[k].to_string();
    if (k == 0) {
      out += cs;
      continue;
    }
    if (!c_[k].is_one()) {
      if (cs.find(" + ") != std::string::npos) cs = "(" + cs + ")";
      out += cs + "*";
    }
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  const FieldPtr& f = b.field();
  Vec r = a.coeffs();
  const Vec& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (r.size() < bc.size()) return {Polynomial(f, {}), a};
  Vec q(r.size() - db, f->zero());
  const Elem inv = bc.back().inverse();
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k].is_zero()) continue;
    const Elem c = r[k] * inv;
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= c * bc[i];
  }
  return {Polynomial(f, std::move(q)), Polynomial(f, std::move(r))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Polynomial powmod(const Polynomial& base, std::uint64_t e, const Polynomial& mod) {
  Polynomial result(mod.field(), {mod.field()->one()});
  result = divmod(result, mod).second;
  Polynomial b = divmod(base, mod).second;
  while (e) {
    if (e & 1) result = divmod(result * b, mod).second;
    e >>= 1;
    if (e) b = divmod(b * b, mod).second;
  }
  return result;
}

// ----------------------------------------------------------------- Field

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b))
    throw Error(ErrorKind::DescriptorMismatch,
                (a ? a->token() : std::string("null")) + " vs " + (b ? b->token() : std::string("null")));
}

FieldPtr Field::prime(std::uint64_t p) {
  if (p != 0 && !is_prime(p)) throw Error(ErrorKind::InvalidDescriptor, std::to_string(p) + " is not prime");
  if (p >= (1ull << 31)) throw Error(ErrorKind::InvalidDescriptor, "prime too large (must be < 2^31)");
  auto f = std::make_shared<Field>(Private{});
  f->kind_ = FieldKind::Prime;
  f->p_ = p;
  f->token_ = p == 0 ? "Q" : "F" + std::to_string(p);
  return f;
}

namespace {
bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}
}  // namespace

FieldPtr Field::rational_function(std::uint64_t p, std::string variable) {
  if (p == 0) throw Error(ErrorKind::InvalidDescriptor, "rational function fields need a prime p > 0");
  if (!valid_identifier(variable)) throw Error(ErrorKind::InvalidDescriptor, "bad indeterminate name '" + variable + "'");
  auto f = std::make_shared<Field>(Private{});
  f->kind_ = FieldKind::RationalFunction;
  f->p_ = p;
  f->base_ = prime(p);
  f->var_ = std::move(variable);
  f->token_ = "F" + std::to_string(p) + "(" + f->var_ + ")";
  return f;
}

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// u^{q} - c with q a power of p: returns c.
std::optional<Elem> purely_inseparable_constant(const Polynomial& m, std::uint64_t p) {
  if (p == 0) return std::nullopt;
  const std::uint64_t d = static_cast<std::uint64_t>(m.degree());
  std::uint64_t q = 1;
  while (q < d) q *= p;
  if (q != d) return std::nullopt;
  for (std::size_t i = 1; i < m.coeffs().size() - 1; ++i)
    if (!m.coeffs()[i].is_zero()) return std::nullopt;
  return -m.coeff(0);
}

bool rabin_irreducible(const Polynomial& m, std::uint64_t q) {
  const auto n = static_cast<std::uint64_t>(m.degree());
  const FieldPtr& f = m.field();
  const Polynomial x = Polynomial::monomial(f->one(), 1);
  auto frob_iter = [&](std::uint64_t k) {
    Polynomial r = x;
    for (std::uint64_t i = 0; i < k; ++i) r = powmod(r, q, m);
    return r;
  };
  if (!(frob_iter(n) - x).is_zero()) return false;
  for (std::uint64_t r : prime_divisors(n)) {
    const Polynomial h = frob_iter(n / r) - x;
    if (gcd(h, m).degree() != 0) return false;
  }
  return true;
}

std::vector<mpz_class> divisors_of(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n > mpz_class("1000000000000")) throw Error(ErrorKind::IrreducibilityUnproven, "constant term too large for root test");
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

bool has_rational_root(const Polynomial& m) {
  mpz_class l = 1;
  for (const auto& c : m.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> ic;
  for (const auto& c : m.coeffs()) ic.push_back(mpz_class(c.rational() * l));
  if (ic[0] == 0) return true;
  const FieldPtr& f = m.field();
  for (const auto& a : divisors_of(ic[0])) {
    for (const auto& b : divisors_of(ic.back())) {
      for (int sign : {1, -1}) {
        mpq_class r(sign * a, b);
        r.canonicalize();
        if (m.evaluate(f->from_rational(r)).is_zero()) return true;
      }
    }
  }
  return false;
}

std::vector<FpPoly> monic_divisors(const FpPoly& g) {
  const std::uint32_t p = g.modulus();
  const int deg = g.degree();
  double count = 1;
  for (int i = 0; i < deg; ++i) count *= p;
  if (count > 70000) throw Error(ErrorKind::IrreducibilityUnproven, "divisor enumeration too large; supply a certificate");
  std::vector<FpPoly> out;
  for (int d = 0; d <= deg; ++d) {
    std::vector<std::uint32_t> c(d + 1, 0);
    c[d] = 1;
    while (true) {
      FpPoly h(p, c);
      if (divmod(g, h).second.is_zero()) out.push_back(h);
      int i = 0;
      while (i < d) {
        if (++c[i] < p) break;
        c[i] = 0;
        ++i;
      }
      if (i == d) break;
    }
  }
  return out;
}

bool has_ratfun_root(const Polynomial& m) {
  const FieldPtr& f = m.field();
  const std::uint32_t p = p32(f);
  FpPoly l = FpPoly::constant(p, 1);
  for (const auto& c : m.coeffs()) {
    const FpPoly& den = c.ratfun().den;
    l = divmod(l * den, gcd(l, den)).first;
  }
  std::vector<FpPoly> ic;
  for (const auto& c : m.coeffs()) ic.push_back(c.ratfun().num * divmod(l, c.ratfun().den).first);
  if (ic[0].is_zero()) return true;
  for (const auto& a : monic_divisors(ic[0])) {
    for (const auto& b : monic_divisors(ic.back())) {
      for (std::uint32_t u = 1; u < p; ++u) {
        if (m.evaluate(make_ratfun(f, a.scaled(u), b)).is_zero()) return true;
      }
    }
  }
  return false;
}

IrreducibilityProof certify_irreducible(const Polynomial& m, const FieldPtr& base, bool certified) {
  if (certified) return IrreducibilityProof::Certified;
  const std::uint64_t p = base->characteristic();
  if (auto c = purely_inseparable_constant(m, p)) {
    try {
      if (frobenius_preimage(*c))
        throw Error(ErrorKind::InvalidDescriptor, "u^q - c is reducible: c is a p-th power");
      return IrreducibilityProof::PurelyInseparable;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnsupportedShape) throw;
    }
  }
  if (base->is_finite()) {
    auto q = base->cardinality();
    if (!q) throw Error(ErrorKind::IrreducibilityUnproven, "base field too large for Rabin test");
    if (!rabin_irreducible(m, *q)) throw Error(ErrorKind::InvalidDescriptor, "minimal polynomial is reducible over " + base->token());
    return IrreducibilityProof::Rabin;
  }
  if (m.degree() <= 3 && base->kind() == FieldKind::Prime && p == 0) {
    if (has_rational_root(m)) throw Error(ErrorKind::InvalidDescriptor, "minimal polynomial has a rational root");
    return IrreducibilityProof::RationalRoots;
  }
  if (m.degree() <= 3 && base->kind() == FieldKind::RationalFunction) {
    if (has_ratfun_root(m)) throw Error(ErrorKind::InvalidDescriptor, "minimal polynomial has a root in " + base->token());
    return IrreducibilityProof::DivisorEnumeration;
  }
  throw Error(ErrorKind::IrreducibilityUnproven,
              "no deterministic irreducibility test for this shape over " + base->token() + "; supply a certificate");
}

}  // namespace

FieldPtr Field::extension(FieldPtr base, std::string generator, Polynomial minpoly, bool certified) {
  if (!base) throw Error(ErrorKind::InvalidDescriptor, "extension without base");
  if (!valid_identifier(generator)) throw Error(ErrorKind::InvalidDescriptor, "bad generator name '" + generator + "'");
  for (const auto& s : base->symbols())
    if (s == generator) throw Error(ErrorKind::InvalidDescriptor, "generator '" + generator + "' already used in the tower");
  require_same_field(minpoly.field(), base);
  if (minpoly.degree() < 2) throw Error(ErrorKind::InvalidDescriptor, "minimal polynomial must have degree >= 2");
  if (!minpoly.leading().is_one()) throw Error(ErrorKind::InvalidDescriptor, "minimal polynomial must be monic");
  auto f = std::make_shared<Field>(Private{});
  f->kind_ = FieldKind::Extension;
  f->p_ = base->characteristic();
  f->proof_ = certify_irreducible(minpoly, base, certified);
  f->base_ = std::move(base);
  f->var_ = std::move(generator);
  f->token_ = f->base_->token() + "[" + f->var_ + "]/(" + minpoly.to_string(f->var_) + ")";
  f->minpoly_ = std::move(minpoly);
  return f;
}

FieldPtr Field::extension(FieldPtr base, std::string generator, const std::string& minpoly_text, bool certified) {
  Polynomial m = parse_polynomial(minpoly_text, base, generator);
  return extension(std::move(base), std::move(generator), std::move(m), certified);
}

FieldPtr Field::prime_field() const {
  if (kind_ == FieldKind::Prime) return ptr();
  return base_->prime_field();
}

std::size_t Field::degree() const {
  return kind_ == FieldKind::Extension ? static_cast<std::size_t>(minpoly_.degree()) : 1;
}

bool Field::is_finite() const {
  switch (kind_) {
    case FieldKind::Prime: return p_ != 0;
    case FieldKind::RationalFunction: return false;
    case FieldKind::Extension: return base_->is_finite();
  }
  return false;
}

std::optional<std::uint64_t> Field::cardinality() const {
  if (!is_finite()) return std::nullopt;
  if (kind_ == FieldKind::Prime) return p_;
  auto b = base_->cardinality();
  if (!b) return std::nullopt;
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < degree(); ++i) {
    if (r > (std::uint64_t{1} << 62) / *b) return std::nullopt;
    r *= *b;
  }
  return r;
}

bool Field::is_perfect() const {
  switch (kind_) {
    case FieldKind::Prime: return true;
    case FieldKind::RationalFunction: return false;
    case FieldKind::Extension: return base_->is_perfect();
  }
  return false;
}

Elem Field::zero() const {
  switch (kind_) {
    case FieldKind::Prime:
      if (p_ == 0) return Elem(ptr(), mpq_class(0));
      return Elem(ptr(), std::int64_t{0});
    case FieldKind::RationalFunction:
      return Elem(ptr(), RatFun{FpPoly(static_cast<std::uint32_t>(p_), {}), FpPoly::constant(static_cast<std::uint32_t>(p_), 1)});
    case FieldKind::Extension: return Elem(ptr(), Vec(degree(), base_->zero()));
  }
  return {};
}

Elem Field::one() const { return from_int(1); }

Elem Field::from_int(long long n) const {
  switch (kind_) {
    case FieldKind::Prime: {
      if (p_ == 0) return Elem(ptr(), mpq_class(static_cast<long>(n)));
      long long r = n % static_cast<long long>(p_);
      if (r < 0) r += static_cast<long long>(p_);
      return Elem(ptr(), static_cast<std::int64_t>(r));
    }
    case FieldKind::RationalFunction:
      return Elem(ptr(), RatFun{FpPoly::constant(static_cast<std::uint32_t>(p_), n), FpPoly::constant(static_cast<std::uint32_t>(p_), 1)});
    case FieldKind::Extension: {
      Vec v(degree(), base_->zero());
      v[0] = base_->from_int(n);
      return Elem(ptr(), std::move(v));
    }
  }
  return {};
}

Elem Field::from_rational(const mpq_class& q) const {
  if (p_ == 0) {
    if (kind_ == FieldKind::Prime) return Elem(ptr(), q);
    return embed(prime_field()->from_rational(q), ptr());
  }
  mpz_class num = q.get_num() % p_, den = q.get_den() % p_;
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "denominator divisible by the characteristic");
  return from_int(num.get_si()) / from_int(den.get_si());
}

Elem Field::generator() const {
  switch (kind_) {
    case FieldKind::Prime: throw Error(ErrorKind::UnknownSymbol, "prime fields have no generator");
    case FieldKind::RationalFunction: {
      const auto p = static_cast<std::uint32_t>(p_);
      return Elem(ptr(), RatFun{FpPoly::monomial(p, 1, 1), FpPoly::constant(p, 1)});
    }
    case FieldKind::Extension: {
      Vec v(degree(), base_->zero());
      v[1] = base_->one();
      return Elem(ptr(), std::move(v));
    }
  }
  return {};
}

std::vector<std::string> Field::symbols() const {
  std::vector<std::string> out;
  if (kind_ == FieldKind::Prime) return out;
  out.push_back(var_);
  if (kind_ == FieldKind::Extension) {
    auto rest = base_->symbols();
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

// ---------------------------------------------------------------- towers

bool has_tower_path(const FieldPtr& sub, const FieldPtr& super) {
  for (FieldPtr f = super; f; f = f->kind() == FieldKind::Prime ? nullptr : f->base()) {
    if (same_field(f, sub)) return true;
  }
  return false;
}

Elem embed(const Elem& e, const FieldPtr& target) {
  if (same_field(e.field(), target)) return e;
  switch (target->kind()) {
    case FieldKind::Prime: break;
    case FieldKind::RationalFunction:
      if (e.field()->kind() == FieldKind::Prime && e.field()->characteristic() == target->characteristic()) {
        const auto p = static_cast<std::uint32_t>(target->characteristic());
        return Elem(target, RatFun{FpPoly::constant(p, e.residue()), FpPoly::constant(p, 1)});
      }
      break;
    case FieldKind::Extension:
      if (has_tower_path(e.field(), target->base())) {
        Vec v(target->degree(), target->base()->zero());
        v[0] = embed(e, target->base());
        return Elem(target, std::move(v));
      }
      break;
  }
  throw Error(ErrorKind::NoTowerPath, e.field()->token() + " -> " + target->token());
}

TowerOverK::TowerOverK(FieldPtr tower, FieldPtr ground) : tower_(std::move(tower)), ground_(std::move(ground)) {
  if (same_field(tower_, ground_)) {
    basis_.push_back(tower_->one());
    labels_.push_back("1");
  } else {
    if (tower_->kind() != FieldKind::Extension || !has_tower_path(ground_, tower_->base()))
      throw Error(ErrorKind::NoTowerPath, ground_->token() + " is not reached from " + tower_->token() + " by finite extensions");
    sub_ = std::make_shared<const TowerOverK>(tower_->base(), ground_);
    const TowerOverK& sub = *sub_;
    const Elem u = tower_->generator();
    Elem upow = tower_->one();
    for (std::size_t i = 0; i < tower_->degree(); ++i) {
      std::string ulabel = i == 0 ? "" : (i == 1 ? tower_->variable() : tower_->variable() + "^" + std::to_string(i));
      for (std::size_t j = 0; j < sub.dim(); ++j) {
        basis_.push_back(upow * embed(sub.basis(j), tower_));
        if (ulabel.empty()) labels_.push_back(sub.label(j));
        else if (sub.label(j) == "1") labels_.push_back(ulabel);
        else labels_.push_back(ulabel + "*" + sub.label(j));
      }
      upow *= u;
    }
  }
  const std::size_t n = basis_.size();
  table_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table_.push_back(coords(basis_[i] * basis_[j]));
}

Vec TowerOverK::coords(const Elem& d) const {
  require_same_field(d.field(), tower_);
  if (same_field(tower_, ground_)) return {d};
  const TowerOverK& sub = *sub_;
  Vec out;
  out.reserve(dim());
  for (const auto& c : d.coords()) {
    Vec part = sub.coords(c);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Elem TowerOverK::element(std::span<const Elem> coords) const {
  if (coords.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "tower coordinate length");
  if (same_field(tower_, ground_)) return coords[0];
  const std::size_t sd = dim() / tower_->degree();
  const TowerOverK& sub = *sub_;
  Vec v;
  for (std::size_t i = 0; i < tower_->degree(); ++i) v.push_back(sub.element(coords.subspan(i * sd, sd)));
  return Elem(tower_, std::move(v));
}

// ------------------------------------------------------------- frobenius

std::optional<Elem> frobenius_preimage(const Elem& e) {
  const FieldPtr& f = e.field();
  const std::uint64_t p = f->characteristic();
  if (p == 0) throw Error(ErrorKind::CharZero, "Frobenius preimage needs characteristic p > 0");
  switch (f->kind()) {
    case FieldKind::Prime: return e;
    case FieldKind::RationalFunction: {
      auto root = [&](const FpPoly& g) -> std::optional<FpPoly> {
        std::vector<std::uint32_t> c;
        for (std::size_t k = 0; k < g.coeffs().size(); ++k) {
          if (g.coeffs()[k] == 0) continue;
          if (k % p != 0) return std::nullopt;
          if (c.size() <= k / p) c.resize(k / p + 1, 0);
          c[k / p] = g.coeffs()[k];
        }
        return FpPoly(static_cast<std::uint32_t>(p), std::move(c));
      };
      auto n = root(e.ratfun().num);
      auto d = root(e.ratfun().den);
      if (!n || !d) return std::nullopt;
      return make_ratfun(f, *n, *d);
    }
    case FieldKind::Extension: {
      const std::size_t d = f->degree();
      const Elem u = f->generator();
      std::vector<Vec> cols;
      Elem ui = f->one();
      for (std::size_t i = 0; i < d; ++i) {
        cols.push_back(ui.pow(static_cast<long long>(p)).coords());
        ui *= u;
      }
      auto sol = solve_semilinear(cols, e.coords(), p, f->base());
      if (!sol) return std::nullopt;
      return Elem(f, std::move(*sol));
    }
  }
  return std::nullopt;
}

std::size_t q_basis_size(const FieldPtr& f, std::uint64_t q) {
  switch (f->kind()) {
    case FieldKind::Prime: return 1;
    case FieldKind::RationalFunction: return static_cast<std::size_t>(q);
    case FieldKind::Extension:
      if (f->is_perfect()) return 1;
      break;
  }
  throw Error(ErrorKind::UnsupportedShape, "no p-basis decomposition for " + f->token());
}

Vec q_basis_decompose(const Elem& e, std::uint64_t q) {
  const FieldPtr& f = e.field();
  switch (f->kind()) {
    case FieldKind::Prime: return {e};
    case FieldKind::RationalFunction: {
      const auto p = static_cast<std::uint32_t>(f->characteristic());
      const FpPoly& g = e.ratfun().den;
      FpPoly h = e.ratfun().num;
      for (std::uint64_t i = 1; i < q; ++i) h = h * g;
      Vec out;
      for (std::uint64_t r = 0; r < q; ++r) {
        std::vector<std::uint32_t> c;
        for (std::size_t k = r; k < h.coeffs().size(); k += q) c.push_back(h.coeffs()[k]);
        out.push_back(make_ratfun(f, FpPoly(p, std::move(c)), g));
      }
      return out;
    }
    case FieldKind::Extension: {
      if (!f->is_perfect()) break;
      Elem r = e;
      for (std::uint64_t qq = q; qq > 1; qq /= f->characteristic()) {
        auto pre = frobenius_preimage(r);
        if (!pre) throw Error(ErrorKind::UnsupportedShape, "finite field without p-th root?");
        r = *pre;
      }
      return {r};
    }
  }
  throw Error(ErrorKind::UnsupportedShape, "no p-basis decomposition for " + f->token());
}

}  // namespace algkit
