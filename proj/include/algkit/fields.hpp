#pragma once

// Exact arithmetic over the field towers used throughout algkit:
// prime fields F_p and Q, rational function fields F_p(x), and simple
// algebraic extensions B[u]/(m(u)) over any of these.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "algkit/error.hpp"
#include "algkit/fp_poly.hpp"

namespace algkit {

class Field;
class Elem;
class Polynomial;
using FieldPtr = std::shared_ptr<const Field>;
using Vec = std::vector<Elem>;

enum class FieldKind { Prime, RationalFunction, Extension };

/// How irreducibility of an extension's minimal polynomial was established.
enum class IrreducibilityProof {
  NotApplicable,
  PurelyInseparable,   // u^{p^e} - c with c not a p-th power
  Rabin,               // deterministic test over a finite base
  RationalRoots,       // degree <= 3 over Q
  DivisorEnumeration,  // degree <= 3 over F_p(x)
  Certified,           // supplied by the caller
};

std::string_view to_string(IrreducibilityProof proof);

/// Canonical rational function: coprime numerator/denominator, monic denominator.
struct RatFun {
  FpPoly num;
  FpPoly den;
};

/// An element of a field descriptor in canonical form. Default-constructed
/// elements are null placeholders and must not take part in arithmetic.
class Elem {
 public:
  using Rep = std::variant<std::monostate, std::int64_t, mpq_class, RatFun, Vec>;

  Elem() = default;
  Elem(FieldPtr field, Rep rep);

  const FieldPtr& field() const { return field_; }
  bool is_null() const { return !field_; }
  bool is_zero() const;
  bool is_one() const;

  std::int64_t residue() const { return std::get<std::int64_t>(rep_); }
  const mpq_class& rational() const { return std::get<mpq_class>(rep_); }
  const RatFun& ratfun() const { return std::get<RatFun>(rep_); }
  const Vec& coords() const { return std::get<Vec>(rep_); }
  const Rep& rep() const { return rep_; }

  Elem operator-() const;
  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  Elem& operator*=(const Elem& o);
  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(Elem a, const Elem& b) { return a *= b; }
  friend Elem operator/(const Elem& a, const Elem& b) { return a * b.inverse(); }
  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

  Elem inverse() const;
  Elem pow(long long e) const;

  /// Literal in the parse grammar; parse(to_string()) reproduces the element.
  std::string to_string() const;

 private:
  FieldPtr field_;
  Rep rep_;
};

/// Dense univariate polynomial with coefficients in a field descriptor.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(FieldPtr field, Vec coeffs);

  static Polynomial monomial(const Elem& c, std::size_t degree);

  const FieldPtr& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Vec& coeffs() const { return c_; }
  Elem coeff(std::size_t i) const;
  const Elem& leading() const { return c_.back(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Elem& s) const;
  Polynomial monic() const;
  Elem evaluate(const Elem& x) const;
  bool operator==(const Polynomial& o) const;

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  FieldPtr field_;
  Vec c_;
};

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial powmod(const Polynomial& base, std::uint64_t e, const Polynomial& mod);

class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr prime(std::uint64_t p);
  static FieldPtr rationals() { return prime(0); }
  static FieldPtr rational_function(std::uint64_t p, std::string variable);
  static FieldPtr extension(FieldPtr base, std::string generator, Polynomial minpoly,
                            bool certified = false);
  /// minpoly_text is an expression in `generator` with coefficients in `base`.
  static FieldPtr extension(FieldPtr base, std::string generator,
                            const std::string& minpoly_text, bool certified = false);

  FieldKind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }
  /// Stable structural identity, e.g. "F2(x)[t]/(t^2 + x)".
  const std::string& token() const { return token_; }
  /// Base of an extension; the prime field of a rational function field.
  const FieldPtr& base() const { return base_; }
  FieldPtr prime_field() const;
  const std::string& variable() const { return var_; }
  const Polynomial& minimal_polynomial() const { return minpoly_; }
  /// Degree over base (extensions), 1 otherwise.
  std::size_t degree() const;
  IrreducibilityProof irreducibility_proof() const { return proof_; }
  bool is_finite() const;
  /// Number of elements of a finite field (nullopt when infinite or too large).
  std::optional<std::uint64_t> cardinality() const;
  bool is_perfect() const;

  bool same_as(const Field& o) const { return this == &o || token_ == o.token_; }

  Elem zero() const;
  Elem one() const;
  Elem from_int(long long n) const;
  Elem from_rational(const mpq_class& q) const;
  /// The indeterminate of F_p(x) or the generator of an extension.
  Elem generator() const;
  /// All generator/indeterminate names along the tower, top first.
  std::vector<std::string> symbols() const;

  FieldPtr ptr() const { return shared_from_this(); }

  struct Private {};
  explicit Field(Private) {}

 private:
  FieldKind kind_ = FieldKind::Prime;
  std::uint64_t p_ = 0;
  std::string token_;
  FieldPtr base_;
  std::string var_;
  Polynomial minpoly_;
  IrreducibilityProof proof_ = IrreducibilityProof::NotApplicable;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);
void require_same_field(const FieldPtr& a, const FieldPtr& b);

/// Rational function helper: build num/den in F_p(x) with normalization.
Elem make_ratfun(const FieldPtr& f, FpPoly num, FpPoly den);

// ---------------------------------------------------------------- towers

/// True when `sub` lies on the base chain of `super` (or equals it).
bool has_tower_path(const FieldPtr& sub, const FieldPtr& super);
/// Image of e under the canonical tower inclusion; throws NoTowerPath.
Elem embed(const Elem& e, const FieldPtr& target);

/// Coordinates of a finite tower D over a subfield k reached by extensions only.
class TowerOverK {
 public:
  TowerOverK(FieldPtr tower, FieldPtr ground);

  const FieldPtr& tower() const { return tower_; }
  const FieldPtr& ground() const { return ground_; }
  std::size_t dim() const { return basis_.size(); }
  const Elem& basis(std::size_t i) const { return basis_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  Vec coords(const Elem& d) const;
  Elem element(std::span<const Elem> coords) const;
  /// Coordinates of basis(i) * basis(j).
  const Vec& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

 private:
  FieldPtr tower_, ground_;
  std::shared_ptr<const TowerOverK> sub_;
  Vec basis_;
  std::vector<std::string> labels_;
  std::vector<Vec> table_;
};

// ------------------------------------------------------------- frobenius

/// f with f^p = e in e's field, or nullopt. Throws CharZero in characteristic 0
/// and UnsupportedShape for towers where no p-basis decomposition is available.
std::optional<Elem> frobenius_preimage(const Elem& e);

/// Number of elements of the standard q-basis of F over F^q (q a power of p).
std::size_t q_basis_size(const FieldPtr& f, std::uint64_t q);
/// Components a_r with e = sum_r a_r^q * beta_r for the standard q-basis beta.
Vec q_basis_decompose(const Elem& e, std::uint64_t q);


// ---------------------------------------------------------------- parsing

Elem parse_element(const std::string& text, const FieldPtr& field);
/// Polynomial in `var` with coefficients in `coeff_field`.
Polynomial parse_polynomial(const std::string& text, const FieldPtr& coeff_field,
                            const std::string& var);

}  // namespace algkit
