// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "liouville/errors.hpp"

namespace liouville {

// Arbitrary-precision signed integer with a lazy power-of-two representation.
//
// Values of the form +/- 2^E are kept as the exponent E alone, so sequence
// terms like 2^(2n)! stay cheap to build, compare, multiply and raise to
// powers even when the dense form would run to terabits. Conversion to the
// dense (limb) form happens only when an operation genuinely needs it and is
// guarded by max_dense_bits.
class integer {
public:
    // Densification guard: converting a symbolic 2^E with E above this bound
    // throws precision_exhausted instead of attempting the allocation.
    static constexpr unsigned long max_dense_bits = 1ul << 26;

    integer() = default;
    integer(long v);
    integer(unsigned long v);
    integer(int v) : integer(static_cast<long>(v)) {}
    explicit integer(const mpz_class& v);
    explicit integer(mpz_class&& v);

    static integer from_string(const std::string& s);
    // 2^e, e >= 0 (kept symbolic)
    static integer pow2(const integer& e);
    static integer factorial(unsigned long n);

    int sign() const noexcept { return sign_; }
    bool is_zero() const noexcept { return sign_ == 0; }
    bool is_one() const;
    bool is_negative() const noexcept { return sign_ < 0; }

    // True when the value equals 2^k for some k >= 0 (value-based, not
    // representation-based).
    bool is_pow2_value() const;
    // The k above; requires is_pow2_value().
    integer pow2_exponent() const;

    bool is_even() const;

    integer operator-() const;
    integer abs() const;

    friend integer operator+(const integer& a, const integer& b);
    friend integer operator-(const integer& a, const integer& b);
    friend integer operator*(const integer& a, const integer& b);
    integer& operator+=(const integer& b) { return *this = *this + b; }
    integer& operator-=(const integer& b) { return *this = *this - b; }
    integer& operator*=(const integer& b) { return *this = *this * b; }

    // floor division with remainder: a = q*b + r, 0 <= r < |b|
    static std::pair<integer, integer> fdiv_qr(const integer& a, const integer& b);
    static integer fdiv_q(const integer& a, const integer& b);
    static integer cdiv_q(const integer& a, const integer& b);

    static integer gcd(const integer& a, const integer& b);

    // this^e, e >= 0. Stays symbolic for a power-of-two base.
    integer pow(const integer& e) const;

    // largest r >= 0 with r^k <= this (requires this >= 0, k >= 1)
    integer root_floor(unsigned long k) const;

    // number of bits of |this| (requires this != 0); exact
    integer bit_length() const;

    // |this| = 2^t * odd with odd odd; requires this != 0
    std::pair<integer, integer> two_adic_split() const;

    // this * 2^e for e >= 0 (symbolic when possible)
    integer mul_pow2(const integer& e) const;

    friend std::strong_ordering operator<=>(const integer& a, const integer& b);
    friend bool operator==(const integer& a, const integer& b);

    bool fits_ulong() const;
    unsigned long get_ulong() const;
    bool fits_slong() const;
    long get_slong() const;

    // Dense magnitude as mpz (sign dropped); guarded by max_dense_bits.
    mpz_class dense_abs() const;

    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, const integer& v);

private:
    integer(int sign, bool pow2, mpz_class payload);
    void canonicalize();
    // compare |a| vs |b|
    static std::strong_ordering cmp_abs(const integer& a, const integer& b);
    static integer add_abs(const integer& a, const integer& b, int sign);
    static integer sub_abs(const integer& big, const integer& small, int sign);

    int sign_ = 0;     // -1, 0, +1
    bool pow2_ = false; // |value| == 2^payload_ when set, else |value| == payload_
    mpz_class payload_;
};

} // namespace liouville
