#include "algkit/random.hpp"

namespace algkit {

Elem random_elem(const FieldPtr& field, Rng& rng, int size) {
  switch (field->kind()) {
    case FieldKind::Prime: {
      if (field->characteristic() == 0) {
        std::uniform_int_distribution<long> num(-size * 3, size * 3), den(1, size + 1);
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        return field->from_rational(q);
      }
      std::uniform_int_distribution<long long> d(0, static_cast<long long>(field->characteristic()) - 1);
      return field->from_int(d(rng));
    }
    case FieldKind::RationalFunction: {
      const auto p = static_cast<std::uint32_t>(field->characteristic());
      std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
      std::uniform_int_distribution<int> deg(0, size);
      auto poly = [&] {
        std::vector<std::uint32_t> v(deg(rng) + 1);
        for (auto& e : v) e = c(rng);
        return FpPoly(p, std::move(v));
      };
      FpPoly num = poly();
      FpPoly den = poly();
      if (den.is_zero() || std::uniform_int_distribution<int>(0, 2)(rng) == 0) den = FpPoly::constant(p, 1);
      return make_ratfun(field, num, den);
    }
    case FieldKind::Extension: {
      Vec v;
      for (std::size_t i = 0; i < field->degree(); ++i) v.push_back(random_elem(field->base(), rng, std::max(1, size - 1)));
      return Elem(field, std::move(v));
    }
  }
  return field->zero();
}

Elem random_nonzero(const FieldPtr& field, Rng& rng, int size) {
  while (true) {
    Elem e = random_elem(field, rng, size);
    if (!e.is_zero()) return e;
  }
}

Vec random_vec(const FieldPtr& field, std::size_t n, Rng& rng, int size) {
  Vec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_elem(field, rng, size));
  return v;
}

}  // namespace algkit
