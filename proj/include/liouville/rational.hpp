// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>

#include "liouville/integer.hpp"

namespace liouville {

// Exact rational with canonical form gcd(num, den) = 1, den >= 1. Inherits the
// symbolic power-of-two fast path from integer, so dyadic values like
// 2^-(2n+1)! stay exponent-sized. Comparisons factor the two-adic part out
// first and never materialize a large power of two.
class rational {
public:
    rational() : num_(0L), den_(1L) {}
    rational(long v) : num_(v), den_(1L) {}
    rational(integer v) : num_(std::move(v)), den_(1L) {}
    rational(integer num, integer den);

    // "p/q" or "p", decimal only
    static rational from_string(const std::string& s);

    const integer& num() const noexcept { return num_; }
    const integer& den() const noexcept { return den_; }

    int sign() const noexcept { return num_.sign(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }

    rational operator-() const;
    rational abs() const;
    rational inverse() const;

    friend rational operator+(const rational& a, const rational& b);
    friend rational operator-(const rational& a, const rational& b);
    friend rational operator*(const rational& a, const rational& b);
    friend rational operator/(const rational& a, const rational& b);
    rational& operator+=(const rational& b) { return *this = *this + b; }
    rational& operator-=(const rational& b) { return *this = *this - b; }
    rational& operator*=(const rational& b) { return *this = *this * b; }
    rational& operator/=(const rational& b) { return *this = *this / b; }

    friend std::strong_ordering operator<=>(const rational& a, const rational& b);
    friend bool operator==(const rational& a, const rational& b);

    integer floor() const;
    integer ceil() const;

    // this^e for any integer e (e < 0 requires a nonzero value)
    rational pow_int(long e) const;

    // value = sign * 2^t * (p/q) with p, q odd; requires a nonzero value
    struct two_adic {
        int sign;
        integer t;
        integer p; // odd
        integer q; // odd
    };
    two_adic two_adic_decompose() const;

    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, const rational& v);

private:
    void canonicalize();

    // sign of |a| - |b| without materializing large powers of two
    static std::strong_ordering cmp_abs(const rational& a, const rational& b);

    integer num_;
    integer den_;
};

inline const rational& min(const rational& a, const rational& b) { return b < a ? b : a; }
inline const rational& max(const rational& a, const rational& b) { return a < b ? b : a; }

} // namespace liouville
