#include <cctype>
#include <functional>

#include "algkit/fields.hpp"

namespace algkit {

namespace {

// Recursive-descent parser over an abstract value type. Ops supplies
// integer literals, symbol lookup and the arithmetic.
template <class T, class Ops>
class Parser {
 public:
  Parser(const std::string& text, Ops ops) : s_(text), ops_(std::move(ops)) {}

  T run() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    T v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  T expr() {
    T v = term();
    while (true) {
      if (eat('+')) v = ops_.add(v, term());
      else if (eat('-')) v = ops_.sub(v, term());
      else return v;
    }
  }

  T term() {
    T v = unary();
    while (true) {
      if (eat('*')) v = ops_.mul(v, unary());
      else if (eat('/')) v = ops_.div(v, unary());
      else return v;
    }
  }

  T unary() {
    if (eat('-')) return ops_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }

  T power() {
    T base = primary();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer exponent");
    long long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + (s_[pos_++] - '0');
      if (e > 1000000) fail("exponent too large");
    }
    return ops_.pow(base, neg ? -e : e);
  }

  T primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      T v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ops_.integer(mpz_class(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return ops_.symbol(s_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  Ops ops_;
  std::size_t pos_ = 0;
};

// Element of `f` for a tower symbol, or nullopt.
std::optional<Elem> tower_symbol(const std::string& name, const FieldPtr& f) {
  for (FieldPtr g = f; g && g->kind() != FieldKind::Prime; g = g->base()) {
    if (g->variable() == name) return embed(g->generator(), f);
  }
  return std::nullopt;
}

struct ElemOps {
  FieldPtr f;
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem pow(const Elem& a, long long e) const { return a.pow(e); }
  Elem integer(const mpz_class& z) const { return f->from_rational(mpq_class(z)); }
  Elem symbol(const std::string& name) const {
    if (auto e = tower_symbol(name, f)) return *e;
    throw Error(ErrorKind::UnknownSymbol, "'" + name + "' is not a symbol of " + f->token());
  }
};

struct PolyOps {
  FieldPtr f;
  std::string var;
  Polynomial constant(const Elem& c) const { return Polynomial(f, {c}); }
  Polynomial add(const Polynomial& a, const Polynomial& b) const { return a + b; }
  Polynomial sub(const Polynomial& a, const Polynomial& b) const { return a - b; }
  Polynomial mul(const Polynomial& a, const Polynomial& b) const { return a * b; }
  Polynomial div(const Polynomial& a, const Polynomial& b) const {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (b.degree() != 0) throw Error(ErrorKind::SyntaxError, "division by a non-constant polynomial in " + var);
    return a.scaled(b.coeff(0).inverse());
  }
  Polynomial neg(const Polynomial& a) const { return -a; }
  Polynomial pow(const Polynomial& a, long long e) const {
    if (e < 0) {
      if (a.degree() != 0) throw Error(ErrorKind::SyntaxError, "negative power of a non-constant polynomial");
      return constant(a.coeff(0).pow(e));
    }
    Polynomial r = constant(f->one());
    for (long long i = 0; i < e; ++i) r = r * a;
    return r;
  }
  Polynomial integer(const mpz_class& z) const { return constant(f->from_rational(mpq_class(z))); }
  Polynomial symbol(const std::string& name) const {
    if (name == var) return Polynomial::monomial(f->one(), 1);
    if (auto e = tower_symbol(name, f)) return constant(*e);
    throw Error(ErrorKind::UnknownSymbol, "'" + name + "' is neither " + var + " nor a symbol of " + f->token());
  }
};

}  // namespace

Elem parse_element(const std::string& text, const FieldPtr& field) {
  return Parser<Elem, ElemOps>(text, ElemOps{field}).run();
}

Polynomial parse_polynomial(const std::string& text, const FieldPtr& coeff_field, const std::string& var) {
  return Parser<Polynomial, PolyOps>(text, PolyOps{coeff_field, var}).run();
}

std::string Elem::to_string() const {
  switch (rep_.index()) {
    case 1: return std::to_string(std::get<1>(rep_));
    case 2: return std::get<2>(rep_).get_str();
    case 3: {
      const auto& f = std::get<3>(rep_);
      std::string num = f.num.to_string(field_->variable());
      if (f.den.is_one()) return num;
      std::string den = f.den.to_string(field_->variable());
      if (num.find(" + ") != std::string::npos) num = "(" + num + ")";
      if (den.find(' ') != std::string::npos || den.find('*') != std::string::npos) den = "(" + den + ")";
      return num + "/" + den;
    }
    case 4: {
      const auto& v = std::get<4>(rep_);
      const std::string& u = field_->variable();
      std::string out;
      for (std::size_t k = v.size(); k-- > 0;) {
        if (v[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = v[k].to_string();
        if (k == 0) {
          out += cs;
          continue;
        }
        if (!v[k].is_one()) {
          if (cs.find(" + ") != std::string::npos) cs = "(" + cs + ")";
          out += cs + "*";
        }
        out += u;
        if (k > 1) out += "^" + std::to_string(k);
      }
      return out.empty() ? "0" : out;
    }
    default: return "<null>";
  }
}

}  // namespace algkit
