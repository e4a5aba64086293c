// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "liouville/rational.hpp"

namespace liouville {

struct nearest_result {
    integer m;
    rational dist; // |x - m| <= 1/2
};

// Nearest integer to x; at an exact half, the even candidate wins.
nearest_result nearest_int(const rational& x);

// Largest integer <= t^e for rational t > 1 and integer e >= 0.
integer floor_pow(const rational& t, const integer& e);

// Largest integer <= t^e for rational t > 1 and rational e >= 0
// (via ⌊t^e⌋ = ⌊⌊t^a⌋^(1/b)⌋ for e = a/b).
integer floor_pow_rational(const rational& t, const rational& e);

// Sign of x - base^e, decided exactly (base >= 2, e rational; x <= 0 compares
// below any power). Power-of-two values never leave exponent arithmetic.
std::strong_ordering cmp_pow(const rational& x, const integer& base, const rational& e);

// Enclosure [lo, hi] of v^e with hi - lo <= 2^-prec_bits * ceil(v^e) scale
// (v rational > 0). Exact when e clears to an integer power.
std::pair<rational, rational> pow_enclosure(const rational& v, const rational& e,
                                            unsigned prec_bits);

} // namespace liouville
