#include "algkit/fp_poly.hpp"

#include <sstream>

#include "algkit/error.hpp"

namespace algkit {

namespace {
inline std::uint32_t addm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}
inline std::uint32_t subm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t(a) + p - b);
}
inline std::uint32_t mulm(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p);
}
}  // namespace

std::uint32_t fp_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in F_" + std::to_string(p));
  return fp_pow(a, p - 2, p);
}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint32_t p, std::int64_t c) {
  std::int64_t r = c % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return FpPoly(p, {static_cast<std::uint32_t>(r)});
}

FpPoly FpPoly::monomial(std::uint32_t p, std::uint32_t c, std::size_t degree) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  FpPoly r;
  r.p_ = p_;
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = addm(coeff(i), o.coeff(i), p_);
  r.trim();
  return r;
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  FpPoly r;
  r.p_ = p_;
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = subm(coeff(i), o.coeff(i), p_);
  r.trim();
  return r;
}

FpPoly FpPoly::operator-() const {
  FpPoly r = *this;
  for (auto& c : r.c_) c = c == 0 ? 0 : p_ - c;
  return r;
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  FpPoly r;
  r.p_ = p_;
  if (c_.empty() || o.c_.empty()) return r;
  std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t(c_[i]) * o.c_[j]) % p_;
    }
  }
  r.c_.assign(acc.begin(), acc.end());
  r.trim();
  return r;
}

FpPoly FpPoly::scaled(std::uint32_t s) const {
  FpPoly r = *this;
  for (auto& c : r.c_) c = mulm(c, s % p_, p_);
  r.trim();
  return r;
}

FpPoly FpPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(fp_inverse(c_.back(), p_));
}

std::string FpPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << c_[k];
      continue;
    }
    if (c_[k] != 1) os << c_[k] << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  const std::uint32_t p = b.modulus();
  std::vector<std::uint32_t> r(a.coeffs());
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (r.size() < bc.size()) return {FpPoly(p, {}), a};
  std::vector<std::uint32_t> q(r.size() - db, 0);
  const std::uint32_t inv = fp_inverse(bc.back(), p);
  for (std::size_t k = r.size(); k-- > db;) {
    std::uint32_t c = mulm(r[k], inv, p);
    if (c == 0) continue;
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = subm(r[k - db + i], mulm(c, bc[i], p), p);
  }
  return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

}  // namespace algkit
