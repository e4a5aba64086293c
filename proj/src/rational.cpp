// SPDX-License-Identifier: Apache-2.0

#include "liouville/rational.hpp"

#include <ostream>

namespace liouville {

namespace {

// x <> 2^shift * y for positive x, y and shift >= 0; decided by bit lengths
// whenever possible so a huge shift never hits memory
std::strong_ordering cmp_abs_shifted(const integer& x, const integer& y, const integer& shift) {
    integer blx = x.bit_length();
    integer bly = shift + y.bit_length();
    if (blx != bly) return blx < bly ? std::strong_ordering::less : std::strong_ordering::greater;
    return x <=> y.mul_pow2(shift);
}

} // namespace

rational::rational(integer num, integer den) : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
}

void rational::canonicalize() {
    if (den_.is_zero()) fail(errc::usage, "zero denominator");
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = integer(1L);
        return;
    }
    integer g = integer::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = integer::fdiv_q(num_, g);
        den_ = integer::fdiv_q(den_, g);
    }
}

rational rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return rational(integer::from_string(s));
    return rational(integer::from_string(s.substr(0, slash)),
                    integer::from_string(s.substr(slash + 1)));
}

rational rational::operator-() const {
    rational r = *this;
    r.num_ = -r.num_;
    return r;
}

rational rational::abs() const {
    rational r = *this;
    r.num_ = r.num_.abs();
    return r;
}

rational rational::inverse() const {
    if (is_zero()) fail(errc::usage, "inverse of zero");
    return rational(den_, num_);
}

rational operator+(const rational& a, const rational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    integer g = integer::gcd(a.den_, b.den_);
    integer bs = integer::fdiv_q(b.den_, g);
    integer as = integer::fdiv_q(a.den_, g);
    integer t = a.num_ * bs + b.num_ * as;
    return rational(std::move(t), a.den_ * bs);
}

rational operator-(const rational& a, const rational& b) { return a + (-b); }

rational operator*(const rational& a, const rational& b) {
    if (a.is_zero() || b.is_zero()) return rational();
    integer g1 = integer::gcd(a.num_, b.den_);
    integer g2 = integer::gcd(b.num_, a.den_);
    rational r;
    r.num_ = integer::fdiv_q(a.num_, g1) * integer::fdiv_q(b.num_, g2);
    r.den_ = integer::fdiv_q(a.den_, g2) * integer::fdiv_q(b.den_, g1);
    return r;
}

rational operator/(const rational& a, const rational& b) { return a * b.inverse(); }

std::strong_ordering rational::cmp_abs(const rational& a, const rational& b) {
    // |a| <> |b|  <=>  pa*qb <> 2^(Tb-Ta) * pb*qa  after factoring out two-adic parts
    auto da = a.two_adic_decompose();
    auto db = b.two_adic_decompose();
    integer x = da.p * db.q;
    integer y = db.p * da.q;
    integer shift = db.t - da.t;
    if (shift.is_negative()) {
        std::swap(x, y);
        shift = -shift;
        auto c = cmp_abs_shifted(x, y, shift);
        return c == std::strong_ordering::less      ? std::strong_ordering::greater
               : c == std::strong_ordering::greater ? std::strong_ordering::less
                                                    : c;
    }
    return cmp_abs_shifted(x, y, shift);
}

std::strong_ordering operator<=>(const rational& a, const rational& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    auto mags = rational::cmp_abs(a, b);
    if (sa > 0) return mags;
    return mags == std::strong_ordering::less      ? std::strong_ordering::greater
           : mags == std::strong_ordering::greater ? std::strong_ordering::less
                                                   : mags;
}

bool operator==(const rational& a, const rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

integer rational::floor() const {
    if (num_.is_zero()) return integer();
    if (den_.is_one()) return num_;
    // |x| < 1: avoid dividing by a possibly huge power of two
    if (cmp_abs(*this, rational(1L)) == std::strong_ordering::less)
        return num_.is_negative() ? integer(-1L) : integer();
    return integer::fdiv_q(num_, den_);
}

integer rational::ceil() const { return -((-*this).floor()); }

rational rational::pow_int(long e) const {
    if (e == 0) return rational(1L);
    if (e < 0) return inverse().pow_int(-e);
    integer ee(e);
    rational r;
    r.num_ = num_.pow(ee);
    r.den_ = den_.pow(ee);
    return r;
}

rational::two_adic rational::two_adic_decompose() const {
    if (is_zero()) fail(errc::usage, "two-adic decomposition of zero");
    auto [tn, pn] = num_.two_adic_split();
    auto [td, qd] = den_.two_adic_split();
    return {num_.sign(), tn - td, std::move(pn), std::move(qd)};
}

std::string rational::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::ostream& operator<<(std::ostream& os, const rational& v) {
    if (v.den_.is_one()) return os << v.num_;
    return os << v.num_ << '/' << v.den_;
}

} // namespace liouville
