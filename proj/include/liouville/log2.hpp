// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "liouville/rational.hpp"

namespace liouville {

// Rational bounds on log2 of a positive rational, lo <= log2(x) <= hi.
struct log2_bounds {
    rational lo;
    rational hi;

    rational width() const { return hi - lo; }
    bool exact() const { return lo == hi; }
};

// Enclosure of log2(x) with width <= 2^-frac_bits; exact (width 0) when x is
// a power of two. Integer part comes from bit lengths, fractional bits from
// repeated squaring of a directed-rounded dyadic mantissa interval.
log2_bounds log2_interval(const rational& x, unsigned frac_bits = 64);

} // namespace liouville
