// SPDX-License-Identifier: Apache-2.0

#include "liouville/kernel.hpp"

namespace liouville {

namespace {

const rational& half() {
    static const rational h(integer(1L), integer(2L));
    return h;
}

// positive value kept as 2^t * odd so comparisons stay in exponent space
struct padic {
    integer t;
    integer odd;

    static padic of(const integer& v) {
        auto [t, odd] = v.two_adic_split();
        return {std::move(t), std::move(odd)};
    }

    padic& mul(const padic& o) {
        t += o.t;
        odd *= o.odd;
        return *this;
    }
};

std::strong_ordering cmp_padic(const padic& a, const padic& b) {
    // a.odd * 2^a.t <> b.odd * 2^b.t
    integer bla = a.t + a.odd.bit_length();
    integer blb = b.t + b.odd.bit_length();
    if (bla != blb) return bla < blb ? std::strong_ordering::less : std::strong_ordering::greater;
    integer shift = b.t - a.t;
    if (shift.is_negative()) return a.odd.mul_pow2(-shift) <=> b.odd;
    return a.odd <=> b.odd.mul_pow2(shift);
}

} // namespace

nearest_result nearest_int(const rational& x) {
    rational ax = x.abs();
    auto small = ax <=> half();
    if (small != std::strong_ordering::greater) {
        // |x| <= 1/2: nearest is 0 (the half-way case also rounds to the even 0)
        return {integer(), std::move(ax)};
    }
    auto [q, r] = integer::fdiv_qr(x.num(), x.den());
    if (r.is_zero()) return {std::move(q), rational()};
    integer twice_r = r.mul_pow2(integer(1L));
    auto c = twice_r <=> x.den();
    if (c == std::strong_ordering::less) return {std::move(q), rational(std::move(r), x.den())};
    if (c == std::strong_ordering::greater)
        return {q + integer(1L), rational(x.den() - r, x.den())};
    // exact half: pick the even neighbour
    integer m = q.is_even() ? std::move(q) : q + integer(1L);
    return {std::move(m), half()};
}

integer floor_pow(const rational& t, const integer& e) {
    if (!(t > rational(1L)))
        fail(errc::usage, "floor_pow requires t > 1, got " + t.to_string());
    if (e.is_negative()) fail(errc::usage, "floor_pow requires e >= 0");
    if (e.is_zero()) return integer(1L);
    integer pn = t.num().pow(e);
    if (t.den().is_one()) return pn;
    return integer::fdiv_q(pn, t.den().pow(e));
}

integer floor_pow_rational(const rational& t, const rational& e) {
    if (e.sign() < 0) fail(errc::usage, "floor_pow_rational requires e >= 0");
    if (e.is_integer()) return floor_pow(t, e.num());
    if (!(t > rational(1L)))
        fail(errc::usage, "floor_pow_rational requires t > 1, got " + t.to_string());
    if (!e.den().fits_ulong()) fail(errc::precision_exhausted, "root index too large");
    // ⌊t^(a/b)⌋ = ⌊(t^a)^(1/b)⌋ = ⌊⌊t^a⌋^(1/b)⌋ since the root is monotone
    rational ta(t.num().pow(e.num()), t.den().pow(e.num()));
    return ta.floor().root_floor(e.den().get_ulong());
}

std::strong_ordering cmp_pow(const rational& x, const integer& base, const rational& e) {
    if (base < integer(2L)) fail(errc::usage, "cmp_pow requires base >= 2");
    if (x.sign() <= 0) return std::strong_ordering::less;
    // x <> base^(a/b)  <=>  x^b <> base^a
    const integer& a = e.num();
    const integer& b = e.den();
    padic lhs = padic::of(x.num().pow(b));
    padic rhs = padic::of(x.den().pow(b));
    padic base_pow = padic::of(base.pow(a.abs()));
    if (a.is_negative())
        lhs.mul(base_pow);
    else
        rhs.mul(base_pow);
    return cmp_padic(lhs, rhs);
}

std::pair<rational, rational> pow_enclosure(const rational& v, const rational& e,
                                            unsigned prec_bits) {
    if (v.sign() <= 0) fail(errc::usage, "pow_enclosure requires v > 0");
    const integer& a = e.num();
    const integer& b = e.den();
    rational w(v.num().pow(a.abs()), v.den().pow(a.abs()));
    if (a.is_negative()) w = w.inverse();
    if (b.is_one()) return {w, w};
    if (!b.fits_ulong()) fail(errc::precision_exhausted, "root index too large");
    unsigned long bb = b.get_ulong();
    // w^(1/b) * 2^k = (w * 2^(k*b))^(1/b), bracketed by integer roots
    integer scale = integer::pow2(integer(static_cast<unsigned long>(prec_bits) * bb));
    integer lo = (w * rational(scale)).floor().root_floor(bb);
    integer den = integer::pow2(integer(static_cast<unsigned long>(prec_bits)));
    return {rational(lo, den), rational(lo + integer(1L), den)};
}

} // namespace liouville
