#pragma once

#include <random>

#include "algkit/fields.hpp"

namespace algkit {

using Rng = std::mt19937_64;

/// A random element with small coefficients; `size` bounds degrees and numerators.
Elem random_elem(const FieldPtr& field, Rng& rng, int size = 3);
Elem random_nonzero(const FieldPtr& field, Rng& rng, int size = 3);
Vec random_vec(const FieldPtr& field, std::size_t n, Rng& rng, int size = 2);

}  // namespace algkit
