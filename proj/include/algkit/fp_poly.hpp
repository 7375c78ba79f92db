#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace algkit {

/// Dense univariate polynomial over F_p (p an odd or even prime below 2^31).
/// Coefficients are stored low degree first without trailing zeros.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static FpPoly constant(std::uint32_t p, std::int64_t c);
  static FpPoly monomial(std::uint32_t p, std::uint32_t c, std::size_t degree);

  std::uint32_t modulus() const { return p_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator-() const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly scaled(std::uint32_t s) const;
  FpPoly monic() const;

  bool operator==(const FpPoly& o) const { return c_ == o.c_; }

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> c_;
};

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);
std::uint32_t fp_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);

/// Quotient and remainder; divisor must be nonzero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
/// Monic gcd (zero if both inputs are zero).
FpPoly gcd(const FpPoly& a, const FpPoly& b);

}  // namespace algkit
