// SPDX-License-Identifier: Apache-2.0

#include "liouville/log2.hpp"

namespace liouville {

namespace {

// floor(log2(p/q)) for odd positive dense p, q
long floor_log2_odd(const mpz_class& p, const mpz_class& q) {
    long blp = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2));
    long blq = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
    long k0 = blp - blq;
    // q*2^k0 <= p  <=>  k = k0, else k = k0 - 1
    mpz_class lhs = p, rhs = q;
    if (k0 >= 0)
        rhs <<= static_cast<unsigned long>(k0);
    else
        lhs <<= static_cast<unsigned long>(-k0);
    return lhs >= rhs ? k0 : k0 - 1;
}

// Extracts `iters` leading fractional bits of log2(y), y = (p/q)/2^k in [1,2),
// by repeated squaring of a dyadic mantissa interval with directed rounding.
// Returns false when the interval straddled 2 at some step (caller retries
// with a wider guard).
bool mantissa_bits(const mpz_class& p, const mpz_class& q, long k, unsigned long iters,
                   unsigned long guard, mpz_class& bits_out) {
    unsigned long F = 3 * iters + guard;
    mpz_class two_f = mpz_class(1) << F;
    mpz_class bound = two_f << 1; // represents the value 2

    // l <= y*2^F <= h
    mpz_class num = p, den = q;
    long shift = static_cast<long>(F) - k;
    if (shift >= 0)
        num <<= static_cast<unsigned long>(shift);
    else
        den <<= static_cast<unsigned long>(-shift);
    mpz_class l, r;
    mpz_fdiv_qr(l.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h = l + (r != 0 ? 1 : 0);

    mpz_class bits;
    for (unsigned long i = 0; i < iters; ++i) {
        l = (l * l) >> F;                 // floor
        h = ((h * h) + two_f - 1) >> F;   // ceil
        bits <<= 1;
        if (l >= bound) {                 // y^2 >= 2 for certain
            bits += 1;
            l >>= 1;
            h = (h + 1) >> 1;
        } else if (h >= bound) {          // undecided: straddles 2
            return false;
        }
    }
    bits_out = std::move(bits);
    return true;
}

} // namespace

log2_bounds log2_interval(const rational& x, unsigned frac_bits) {
    if (x.sign() <= 0) fail(errc::usage, "log2 of a non-positive value");
    if (frac_bits < 1) fail(errc::usage, "frac_bits must be >= 1");
    if (frac_bits > 65536) fail(errc::precision_exhausted, "frac_bits beyond supported range");

    auto parts = x.two_adic_decompose();
    if (parts.p == parts.q) {
        rational t(parts.t);
        return {t, t}; // power of two: exact
    }

    mpz_class p = parts.p.dense_abs();
    mpz_class q = parts.q.dense_abs();
    long k = floor_log2_odd(p, q);

    const unsigned long iters = frac_bits + 1;
    mpz_class bits;
    for (unsigned long guard = 64;; guard *= 2) {
        if (guard > 1ul << 16)
            fail(errc::precision_exhausted, "log2 mantissa failed to separate from 2");
        if (mantissa_bits(p, q, k, iters, guard, bits)) break;
    }

    integer ulp_den = integer::pow2(integer(iters));
    rational lo = rational(parts.t + integer(k)) + rational(integer(std::move(bits)), ulp_den);
    rational hi = lo + rational(integer(1L), ulp_den);
    return {std::move(lo), std::move(hi)};
}

} // namespace liouville
