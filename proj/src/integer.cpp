// SPDX-License-Identifier: Apache-2.0

#include "liouville/integer.hpp"

#include <algorithm>
#include <ostream>

namespace liouville {

namespace {

unsigned long checked_shift_amount(const mpz_class& e) {
    if (e < 0 || !e.fits_ulong_p() || e.get_ui() > integer::max_dense_bits)
        fail(errc::precision_exhausted,
             "power-of-two exponent " + e.get_str() + " exceeds the dense-conversion guard");
    return e.get_ui();
}

void check_dense_bits(std::size_t bits, const char* what) {
    if (bits > integer::max_dense_bits)
        fail(errc::precision_exhausted,
             std::string(what) + " would need " + std::to_string(bits) + " bits");
}

std::strong_ordering flip(std::strong_ordering o) {
    if (o == std::strong_ordering::less) return std::strong_ordering::greater;
    if (o == std::strong_ordering::greater) return std::strong_ordering::less;
    return o;
}

} // namespace

integer::integer(long v) {
    sign_ = (v > 0) - (v < 0);
    payload_ = mpz_class(v);
    if (v < 0) payload_ = -payload_;
}

integer::integer(unsigned long v) {
    sign_ = v > 0 ? 1 : 0;
    payload_ = mpz_class(v);
}

integer::integer(const mpz_class& v) {
    sign_ = sgn(v);
    payload_ = ::abs(v);
}

integer::integer(mpz_class&& v) {
    sign_ = sgn(v);
    payload_ = std::move(v);
    if (sign_ < 0) payload_ = -payload_;
}

integer::integer(int sign, bool pow2, mpz_class payload)
    : sign_(sign), pow2_(pow2), payload_(std::move(payload)) {
    canonicalize();
}

void integer::canonicalize() {
    if (pow2_) {
        if (payload_ == 0) { // 2^0: fold into the dense unit
            pow2_ = false;
            payload_ = 1;
        }
    } else if (sign_ != 0 && payload_ == 0) {
        sign_ = 0;
    }
}

integer integer::from_string(const std::string& s) {
    mpz_class v;
    if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        fail(errc::usage, "not a decimal integer: '" + s + "'");
    return integer(std::move(v));
}

integer integer::pow2(const integer& e) {
    if (e.is_negative()) fail(errc::usage, "pow2 exponent must be >= 0");
    return integer(1, true, e.dense_abs());
}

integer integer::factorial(unsigned long n) {
    mpz_class v;
    mpz_fac_ui(v.get_mpz_t(), n);
    return integer(std::move(v));
}

bool integer::is_one() const { return sign_ > 0 && !pow2_ && payload_ == 1; }

bool integer::is_pow2_value() const {
    if (sign_ <= 0) return false;
    return pow2_ || mpz_popcount(payload_.get_mpz_t()) == 1;
}

integer integer::pow2_exponent() const {
    if (!is_pow2_value()) fail(errc::usage, "pow2_exponent of a non power of two");
    if (pow2_) return integer(payload_);
    return integer(static_cast<unsigned long>(mpz_scan1(payload_.get_mpz_t(), 0)));
}

bool integer::is_even() const {
    if (sign_ == 0) return true;
    if (pow2_) return payload_ >= 1;
    return mpz_even_p(payload_.get_mpz_t()) != 0;
}

integer integer::operator-() const {
    integer r = *this;
    r.sign_ = -r.sign_;
    return r;
}

integer integer::abs() const {
    integer r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

mpz_class integer::dense_abs() const {
    if (sign_ == 0) return mpz_class(0);
    if (!pow2_) return payload_;
    return mpz_class(1) << checked_shift_amount(payload_);
}

std::strong_ordering integer::cmp_abs(const integer& a, const integer& b) {
    if (a.sign_ == 0 || b.sign_ == 0) {
        int la = a.sign_ != 0, lb = b.sign_ != 0;
        return la <=> lb;
    }
    if (a.pow2_ == b.pow2_) {
        int c = cmp(a.payload_, b.payload_);
        return c <=> 0;
    }
    const integer& p = a.pow2_ ? a : b; // the 2^E side
    const integer& d = a.pow2_ ? b : a; // the dense side
    std::size_t bl = mpz_sizeinbase(d.payload_.get_mpz_t(), 2);
    // 2^E has bit length E+1
    int c = mpz_cmp_ui(p.payload_.get_mpz_t(), static_cast<unsigned long>(bl - 1));
    std::strong_ordering for_p = std::strong_ordering::equal;
    if (c > 0)
        for_p = std::strong_ordering::greater;
    else if (c < 0)
        for_p = std::strong_ordering::less;
    else
        // equal bit lengths: dense >= 2^E, equal iff a single bit is set
        for_p = mpz_popcount(d.payload_.get_mpz_t()) == 1 ? std::strong_ordering::equal
                                                          : std::strong_ordering::less;
    return a.pow2_ ? for_p : flip(for_p);
}

std::strong_ordering operator<=>(const integer& a, const integer& b) {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    if (a.sign_ == 0) return std::strong_ordering::equal;
    auto mags = integer::cmp_abs(a, b);
    return a.sign_ > 0 ? mags : flip(mags);
}

bool operator==(const integer& a, const integer& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

integer integer::add_abs(const integer& a, const integer& b, int sign) {
    if (a.pow2_ && b.pow2_ && a.payload_ == b.payload_)
        return integer(sign, true, a.payload_ + 1); // 2^e + 2^e
    return integer(sign, false, a.dense_abs() + b.dense_abs());
}

integer integer::sub_abs(const integer& big, const integer& small, int sign) {
    return integer(sign, false, big.dense_abs() - small.dense_abs());
}

integer operator+(const integer& a, const integer& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) return integer::add_abs(a, b, a.sign_);
    auto c = integer::cmp_abs(a, b);
    if (c == std::strong_ordering::equal) return integer();
    return c == std::strong_ordering::greater ? integer::sub_abs(a, b, a.sign_)
                                              : integer::sub_abs(b, a, b.sign_);
}

integer operator-(const integer& a, const integer& b) { return a + (-b); }

integer operator*(const integer& a, const integer& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return integer();
    int sign = a.sign_ * b.sign_;
    if (a.pow2_ && b.pow2_) return integer(sign, true, a.payload_ + b.payload_);
    if (a.pow2_ || b.pow2_) {
        const integer& p = a.pow2_ ? a : b;
        const integer& d = a.pow2_ ? b : a;
        if (d.abs().is_pow2_value())
            return integer(sign, true, p.payload_ + d.abs().pow2_exponent().dense_abs());
        unsigned long sh = checked_shift_amount(p.payload_);
        check_dense_bits(mpz_sizeinbase(d.payload_.get_mpz_t(), 2) + sh, "product");
        mpz_class r;
        mpz_mul_2exp(r.get_mpz_t(), d.payload_.get_mpz_t(), sh);
        return integer(sign, false, std::move(r));
    }
    check_dense_bits(mpz_sizeinbase(a.payload_.get_mpz_t(), 2) +
                         mpz_sizeinbase(b.payload_.get_mpz_t(), 2),
                     "product");
    return integer(sign, false, a.payload_ * b.payload_);
}

std::pair<integer, integer> integer::fdiv_qr(const integer& a, const integer& b) {
    if (b.sign_ == 0) fail(errc::usage, "division by zero");
    if (a.sign_ == 0) return {integer(), integer()};
    if (b.is_one()) return {a, integer()};
    // 2^B | 2^A: exact, so floor division needs no dense form
    if (a.pow2_ && b.pow2_ && a.payload_ >= b.payload_)
        return {integer(a.sign_ * b.sign_, true, a.payload_ - b.payload_), integer()};
    mpz_class da = a.dense_abs(), db = b.dense_abs();
    if (a.sign_ < 0) da = -da;
    if (b.sign_ < 0) db = -db;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
    return {integer(std::move(q)), integer(std::move(r))};
}

integer integer::fdiv_q(const integer& a, const integer& b) { return fdiv_qr(a, b).first; }

integer integer::cdiv_q(const integer& a, const integer& b) {
    if (b.sign_ == 0) fail(errc::usage, "division by zero");
    if (a.sign_ == 0) return integer();
    if (a.pow2_ && b.pow2_ && a.sign_ > 0 && b.sign_ > 0) {
        if (a.payload_ >= b.payload_) return integer(1, true, a.payload_ - b.payload_);
        return integer(1L);
    }
    mpz_class da = a.dense_abs(), db = b.dense_abs();
    if (a.sign_ < 0) da = -da;
    if (b.sign_ < 0) db = -db;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
    return integer(std::move(q));
}

integer integer::gcd(const integer& a, const integer& b) {
    if (a.sign_ == 0) return b.abs();
    if (b.sign_ == 0) return a.abs();
    if (a.pow2_ && b.pow2_) return integer(1, true, std::min(a.payload_, b.payload_));
    if (a.pow2_ || b.pow2_) {
        const integer& p = a.pow2_ ? a : b;
        const integer& d = a.pow2_ ? b : a;
        mpz_class tz(static_cast<unsigned long>(mpz_scan1(d.payload_.get_mpz_t(), 0)));
        return integer(1, true, std::min(p.payload_, tz));
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.payload_.get_mpz_t(), b.payload_.get_mpz_t());
    return integer(std::move(g));
}

integer integer::pow(const integer& e) const {
    if (e.is_negative()) fail(errc::usage, "negative exponent");
    if (e.is_zero()) return integer(1L);
    if (sign_ == 0) return integer();
    int sign = sign_ < 0 && !e.is_even() ? -1 : 1;
    if (abs().is_pow2_value()) {
        mpz_class base_exp = abs().pow2_exponent().dense_abs();
        return integer(sign, true, base_exp * e.dense_abs());
    }
    if (!e.fits_ulong()) fail(errc::precision_exhausted, "exponent too large for a dense power");
    unsigned long ee = e.get_ulong();
    check_dense_bits(mpz_sizeinbase(payload_.get_mpz_t(), 2) * ee, "power");
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), payload_.get_mpz_t(), ee);
    return integer(sign, false, std::move(r));
}

integer integer::root_floor(unsigned long k) const {
    if (k == 0) fail(errc::usage, "zeroth root");
    if (sign_ < 0) fail(errc::usage, "root of a negative value");
    if (sign_ == 0) return integer();
    if (k == 1) return *this;
    if (pow2_ && mpz_divisible_ui_p(payload_.get_mpz_t(), k))
        return integer(1, true, payload_ / k);
    mpz_class r;
    mpz_root(r.get_mpz_t(), dense_abs().get_mpz_t(), k);
    return integer(std::move(r));
}

integer integer::bit_length() const {
    if (sign_ == 0) fail(errc::usage, "bit length of zero");
    if (pow2_) return integer(payload_ + 1);
    return integer(static_cast<unsigned long>(mpz_sizeinbase(payload_.get_mpz_t(), 2)));
}

std::pair<integer, integer> integer::two_adic_split() const {
    if (sign_ == 0) fail(errc::usage, "two-adic split of zero");
    if (pow2_) return {integer(payload_), integer(1L)};
    unsigned long t = static_cast<unsigned long>(mpz_scan1(payload_.get_mpz_t(), 0));
    mpz_class odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), payload_.get_mpz_t(), t);
    return {integer(t), integer(1, false, std::move(odd))};
}

integer integer::mul_pow2(const integer& e) const {
    if (e.is_negative()) fail(errc::usage, "mul_pow2 with negative exponent");
    if (sign_ == 0 || e.is_zero()) return *this;
    if (abs().is_pow2_value())
        return integer(sign_, true, abs().pow2_exponent().dense_abs() + e.dense_abs());
    unsigned long sh = checked_shift_amount(e.dense_abs());
    check_dense_bits(mpz_sizeinbase(payload_.get_mpz_t(), 2) + sh, "shift");
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), payload_.get_mpz_t(), sh);
    return integer(sign_, false, std::move(r));
}

bool integer::fits_ulong() const {
    if (sign_ < 0) return false;
    if (sign_ == 0) return true;
    if (pow2_) return payload_ <= 63;
    return payload_.fits_ulong_p();
}

unsigned long integer::get_ulong() const {
    if (!fits_ulong()) fail(errc::usage, "value does not fit an unsigned long");
    if (sign_ == 0) return 0;
    return dense_abs().get_ui();
}

bool integer::fits_slong() const {
    if (sign_ == 0) return true;
    if (pow2_) return payload_ <= 62;
    mpz_class v = sign_ < 0 ? mpz_class(-payload_) : payload_;
    return v.fits_slong_p();
}

long integer::get_slong() const {
    if (!fits_slong()) fail(errc::usage, "value does not fit a long");
    if (sign_ == 0) return 0;
    long m = dense_abs().get_si();
    return sign_ < 0 ? -m : m;
}

std::string integer::to_string() const {
    if (sign_ == 0) return "0";
    std::string s = dense_abs().get_str();
    return sign_ < 0 ? "-" + s : s;
}

std::ostream& operator<<(std::ostream& os, const integer& v) {
    if (v.pow2_ && v.payload_ > 4096) {
        if (v.sign_ < 0) os << '-';
        return os << "2^" << v.payload_.get_str();
    }
    return os << v.to_string();
}

} // namespace liouville
