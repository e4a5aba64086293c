// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "liouville/certificate.hpp"

using namespace liouville;

namespace {

rational rat(long n, long d = 1) { return rational(integer(n), integer(d)); }

approx_witness::ptr classic2_witness(rational k1 = rat(1), rational k2 = rat(1, 2)) {
    return make_base_term_witness(make_classic(integer(2L)), make_factorial_pow2(),
                                  exponent_sequence::identity(), k1, k2);
}

approx_witness::ptr classic4_witness() {
    // denominators 4^(n!) = q_n^2 over the factorial base, so kappa1 = 2
    return make_own_denominator_witness(make_classic(integer(4L)), make_factorial_pow2(),
                                        exponent_sequence::identity(), rat(2), rat(1, 2));
}

std::mt19937_64 rng(0xabcdefULL);

} // namespace

TEST_CASE("the natural witness of the binary Liouville constant") {
    auto w = classic2_witness();
    auto p3 = w->pair(3);
    CHECK(p3.b == integer(64L));
    CHECK(p3.a == integer(49L));

    auto rec = verify_at(*w, 3);
    CHECK(rec.size_ok);
    CHECK(rec.approx_ok);
    CHECK(rec.pass());
    // |64 xi - 49| is about 2^-18, between the bound 2^-9 and zero
    CHECK(rec.lhs_log2.lo < rat(-17));
    CHECK(rec.lhs_log2.hi > rat(-19));
    CHECK(rec.rhs_log2 == rat(-9));
    CHECK(rec.rhs_log2_exact);

    for (std::size_t n = 3; n <= 6; ++n) CHECK(verify_at(*w, n).pass());
}

TEST_CASE("an overtight kappa2 flips the verdict") {
    auto w = classic2_witness(rat(1), rat(4));
    auto rec = verify_at(*w, 3);
    CHECK(rec.size_ok);
    CHECK(!rec.approx_ok); // bound 64^-12 = 2^-72 sits far below 2^-18
    CHECK(!rec.pass());
}

TEST_CASE("the size condition rejects b beyond q^kappa1") {
    auto subject = make_classic(integer(2L));
    auto w = make_explicit_witness(subject, make_factorial_pow2(), exponent_sequence::identity(),
                                   rat(1), rat(1, 2), 3, 3, {{integer(65L), integer(50L)}});
    auto rec = verify_at(*w, 3);
    CHECK(!rec.size_ok);
    CHECK(!rec.pass());
}

TEST_CASE("affine pairs follow the proof formulas") {
    auto w = classic2_witness();
    auto shifted = affine_q(w, integer(1L), integer(2L), affine_mode::shift);
    auto p = shifted->pair(3); // (2*64, 2*49 - 1*64)
    CHECK(p.b == integer(128L));
    CHECK(p.a == integer(34L));

    auto scaled = affine_q(w, integer(3L), integer(1L), affine_mode::scale);
    p = scaled->pair(3);
    CHECK(p.b == integer(64L));
    CHECK(p.a == integer(147L));
    CHECK(verify_at(*scaled, 4).pass());

    auto ident = affine_q(w, integer(0L), integer(1L), affine_mode::shift);
    p = ident->pair(3);
    CHECK(p.b == integer(64L));
    CHECK(p.a == integer(49L));
    CHECK(ident->kappa1() == w->kappa1());
    CHECK(ident->kappa2() == w->kappa2());

    CHECK_THROWS_AS(affine_q(w, integer(1L), integer(0L), affine_mode::shift), error);
    CHECK_THROWS_AS(affine_q(w, integer(0L), integer(1L), affine_mode::scale), error);
}

TEST_CASE("combine2 instantiates the difference and product formulas") {
    auto wa = classic2_witness();
    auto stand_in = make_rational_point(rat(3, 8));
    auto wb = make_explicit_witness(stand_in, make_factorial_pow2(),
                                    exponent_sequence::identity(), rat(1), rat(1, 2), 3, 3,
                                    {{integer(8L), integer(3L)}});
    auto diff = combine2(wa, wb, combine_mode::sub);
    auto p = diff->pair(3);
    CHECK(p.b == integer(512L));
    CHECK(p.a == integer(200L)); // 49*8 - 64*3

    auto prod = combine2(wa, wb, combine_mode::mul);
    p = prod->pair(3);
    CHECK(p.b == integer(512L));
    CHECK(p.a == integer(147L));

    auto sum = combine2(wa, wb, combine_mode::add);
    p = sum->pair(3);
    CHECK(p.a == integer(584L)); // 49*8 + 64*3

    auto other = make_base_term_witness(make_classic(integer(2L)), make_tau_factorial(rat(1, 2)),
                                        exponent_sequence::identity());
    CHECK_THROWS_AS(combine2(wa, other, combine_mode::sub), error);
}

TEST_CASE("squaring a witness by combine2 passes verification") {
    auto w = classic2_witness();
    auto sq = combine2(w, w, combine_mode::mul);
    CHECK(sq->kappa1() == rat(2));
    CHECK(sq->kappa2() == rat(1, 4));
    for (std::size_t n = 3; n <= 6; ++n) CHECK(verify_at(*sq, n).pass());
}

TEST_CASE("reciprocal swaps the pair with its sign") {
    auto w = classic2_witness();
    auto r = reciprocal(w);
    auto p = r->pair(3);
    CHECK(p.b == integer(49L));
    CHECK(p.a == integer(64L));
    CHECK(r->kappa1() == rat(2));
    CHECK(r->kappa2() == rat(1, 4));
    for (std::size_t n = 3; n <= 6; ++n) CHECK(verify_at(*r, n).pass());

    // a negative subject flips the stored sign
    auto neg = affine_q(w, integer(-1L), integer(1L), affine_mode::scale);
    auto rn = reciprocal(neg);
    p = rn->pair(3);
    CHECK(p.b == integer(49L));
    CHECK(p.a == integer(-64L));
}

TEST_CASE("normalization lifts small b to the q_n scale") {
    auto base = make_explicit_sequence({integer(10L), integer(100L), integer(10000L)});
    auto subject = make_rational_point(rat(2, 3));
    auto w = make_explicit_witness(subject, base, exponent_sequence::identity(), rat(1),
                                   rat(1, 2), 1, 1,
                                   {{integer(3L), integer(2L)}, {integer(10L), integer(7L)}});
    auto nw = normalize(w);
    auto p = nw->pair(1);
    CHECK(p.b == integer(12L)); // ceil(10/3) = 4
    CHECK(p.a == integer(8L));
    // normalized pairs land in the bracket q_n <= b' <= 2 q_n
    CHECK(integer(10L) <= p.b);
    CHECK(p.b <= integer(20L));
    // normalization preserves the approximated fraction
    CHECK(rational(p.a, p.b) == rational(integer(2L), integer(3L)));

    p = nw->pair(2);
    CHECK(p.b == integer(100L)); // ceil(100/10) = 10 lifts (10, 7) to (100, 70)
    CHECK(p.a == integer(70L));
}

TEST_CASE("normalization leaves pairs at or above q_n unchanged") {
    auto base = make_explicit_sequence({integer(10L), integer(100L)});
    auto subject = make_rational_point(rat(7, 10));
    auto w = make_explicit_witness(subject, base, exponent_sequence::identity(), rat(1),
                                   rat(1, 2), 1, 1, {{integer(10L), integer(7L)}});
    auto nw = normalize(w);
    auto p = nw->pair(1);
    CHECK(p.b == integer(10L));
    CHECK(p.a == integer(7L));
}

TEST_CASE("the closure identities hold exactly on rational stand-ins") {
    std::uniform_int_distribution<long> d(-50, 50);
    std::uniform_int_distribution<long> pos(1, 50);
    for (int i = 0; i < 500; ++i) {
        rational xi = rat(d(rng), pos(rng));
        rational xi2 = rat(d(rng), pos(rng));
        integer b(pos(rng)), b2(pos(rng)), a(d(rng)), a2(d(rng));
        rational rb(b), rb2(b2), ra(a), ra2(a2);
        // b''(xi - xi') - a'' = b'(b xi - a) - b(b' xi' - a')
        rational lhs = rb * rb2 * (xi - xi2) - (ra * rb2 - rb * ra2);
        rational rhs = rb2 * (rb * xi - ra) - rb * (rb2 * xi2 - ra2);
        CHECK(lhs == rhs);
        // b* xi xi' - a* = b xi (b' xi' - a') + a'(b xi - a)
        lhs = rb * rb2 * xi * xi2 - ra * ra2;
        rhs = rb * xi * (rb2 * xi2 - ra2) + ra2 * (rb * xi - ra);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("closure soundness on the factorial constructions") {
    auto wa = classic2_witness();
    auto wb = classic4_witness();
    for (auto mode : {combine_mode::sub, combine_mode::mul}) {
        auto c = combine2(wa, wb, mode);
        auto rep = verify_range(*c, 2, 6);
        CHECK(rep.greedy_valid_from <= 3); // the combined pairs settle by n = 3
        for (const auto& r : rep.records)
            if (r.n >= rep.greedy_valid_from) CHECK(r.pass());
    }
}

TEST_CASE("rational functions compose through the algebra") {
    auto w = classic2_witness();
    // R(X) = X^2 equals the direct product witness
    auto sq = apply_rational_function(w, {integer(0L), integer(0L), integer(1L)}, {integer(1L)});
    auto direct = combine2(w, w, combine_mode::mul);
    for (std::size_t n = 3; n <= 5; ++n) {
        CHECK(sq->pair(n).b == direct->pair(n).b);
        CHECK(sq->pair(n).a == direct->pair(n).a);
    }
    CHECK(sq->kappa1() == rat(3)); // (deg P + deg Q + 1) kappa1

    // R(X) = (2X + 1)/X
    auto r = apply_rational_function(w, {integer(1L), integer(2L)}, {integer(0L), integer(1L)});
    for (std::size_t n = 3; n <= 5; ++n) {
        auto p = r->pair(n);
        auto base = w->pair(n);
        CHECK(p.b == base.a.abs() * base.b);
        CHECK(p.a == (base.a * integer(2L) + base.b) * integer(base.a.sign()) * base.b);
        CHECK(verify_at(*r, n).pass());
    }

    CHECK_THROWS_AS(apply_rational_function(w, {integer(3L)}, {integer(2L)}), error);
}

TEST_CASE("a vanishing combination is refused rather than certified") {
    auto w = classic2_witness();
    auto zero = combine2(w, w, combine_mode::sub); // subject xi - xi = 0
    budget b;
    b.max_terms = 12;
    CHECK_THROWS_AS(verify_at(*zero, 3, b), error);
}

TEST_CASE("a rational subject is flagged as a rational hit") {
    auto base = make_explicit_sequence({integer(3L), integer(9L), integer(27L)});
    auto w = make_base_term_witness(make_rational_point(rat(1, 3)), base,
                                    exponent_sequence::identity());
    CHECK_THROWS_WITH_AS((void)verify_at(*w, 2), doctest::Contains("rational"), error);
}

TEST_CASE("thm3 block pairs coincide with the base-term pairs on the Liouville constant") {
    auto xi = make_xi_theorem3("+", make_factorial_pow2(), exponent_sequence::identity(),
                               rat(1, 2));
    auto w = make_thm3_witness(xi);
    auto direct = classic2_witness();
    // at n = 1 the block pair is the raw partial sum (2, 1), not yet the
    // nearest integer; from n = 2 on the two coincide
    CHECK(w->pair(1).b == integer(2L));
    CHECK(w->pair(1).a == integer(1L));
    for (std::size_t n = 2; n <= 5; ++n) {
        CHECK(w->pair(n).b == direct->pair(n).b);
        CHECK(w->pair(n).a == direct->pair(n).a);
        CHECK(verify_at(*w, n + 2).pass());
    }
}

TEST_CASE("subsequence witnesses re-index against the matching base") {
    auto w = classic2_witness();
    auto we = subsequence_witness(w, 2, 0);
    CHECK(we->base()->spec() == "even(factorial-pow2)");
    for (std::size_t n = 1; n <= 3; ++n) {
        CHECK(we->pair(n).b == w->pair(2 * n).b);
        CHECK(verify_at(*we, n + 1).pass());
    }
}

TEST_CASE("certificates round trip byte for byte and catch tampering") {
    auto w = classic2_witness();
    certificate c = make_certificate(*w, 3, 6);
    CHECK(c.valid_from == 3);
    std::string bytes = certificate_to_json(c);
    CHECK(bytes.find("\"schema\":\"liouville-witness-v1\"") != std::string::npos);
    CHECK(bytes.find("{\"pow2\":6}") != std::string::npos); // q_3 = 2^6

    certificate back = certificate_from_json(bytes);
    CHECK(certificate_to_json(back) == bytes);
    reverify(back); // all verdicts reproduce

    // deterministic: an independent run serializes identically
    certificate c2 = make_certificate(*classic2_witness(), 3, 6);
    CHECK(certificate_to_json(c2) == bytes);

    // tampering a single digit of a_3 = 49 flips verification
    std::string tampered = bytes;
    auto pos = tampered.find("\"49\"");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 4, "\"48\"");
    CHECK_THROWS_AS(reverify(certificate_from_json(tampered)), error);

    CHECK_THROWS_AS(certificate_from_json("{\"schema\":\"nope\"}"), error);
    CHECK_THROWS_AS(certificate_from_json("not json"), error);
}

TEST_CASE("greedy valid_from is recorded from the verification range") {
    auto wa = classic2_witness();
    auto wb = classic4_witness();
    auto c = combine2(wa, wb, combine_mode::sub);
    auto rep = verify_range(*c, 2, 6);
    CHECK(!rep.records[0].pass()); // n = 2 is before the combined slack settles
    CHECK(rep.greedy_valid_from == 3);
    certificate cert = make_certificate(*c, 2, 6);
    CHECK(cert.valid_from == 3);
}
