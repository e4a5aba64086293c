// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "liouville/sequence.hpp"

using namespace liouville;

namespace {

rational rat(long n, long d = 1) { return rational(integer(n), integer(d)); }

base_sequence::ptr powers_of(long base, std::size_t count) {
    std::vector<integer> t;
    integer v(1L);
    for (std::size_t i = 0; i < count; ++i) {
        v *= integer(base);
        t.push_back(v);
    }
    return make_explicit_sequence(std::move(t));
}

std::vector<integer> lambda_list(std::initializer_list<long> xs) {
    std::vector<integer> out;
    for (long x : xs) out.push_back(integer(x));
    return out;
}

} // namespace

TEST_CASE("eval_base matches the closed forms") {
    auto fp2 = make_factorial_pow2();
    CHECK(fp2->at(3) == integer(64L));
    CHECK(fp2->at(1) == integer(2L));
    CHECK(fp2->at(5) == integer::pow2(integer(120L)));

    CHECK(make_tau_factorial(rat(1, 2))->at(4) == integer::pow2(integer(48L)));
    CHECK(make_tau_factorial(rat(1, 3))->at(2) == integer(4L));
    CHECK_THROWS_AS(make_tau_factorial(rat(3, 2)), error);

    auto powf = make_pow_of_f(exponent_sequence::identity());
    CHECK(powf->valid_from() == 2);
    CHECK(powf->at(1) == integer(2L));
    CHECK(powf->at(2) == integer(2L)); // f(2) = u_1 = 1 duplicates the first term
    CHECK(powf->at(3) == integer(4L));
    CHECK(powf->at(5) == integer::pow2(integer(24L)));
}

TEST_CASE("monotonicity violations raise instead of passing silently") {
    auto bad = make_explicit_sequence({integer(4L), integer(4L)});
    CHECK_THROWS_AS(bad->at(2), error);
    auto shrinking = make_explicit_sequence({integer(9L), integer(5L)});
    CHECK_THROWS_AS(shrinking->at(2), error);
    auto low = make_explicit_sequence({integer(1L)});
    CHECK_THROWS_AS(low->at(1), error); // q_n >= 2
}

TEST_CASE("merge produces the sorted union with provenance") {
    auto m = make_merge(make_explicit_sequence({integer(4L), integer(16L), integer(256L)}),
                        make_explicit_sequence({integer(8L), integer(64L)}));
    long expect[] = {4, 8, 16, 64, 256};
    for (std::size_t i = 0; i < 5; ++i) CHECK(m->at(i + 1) == integer(expect[i]));

    auto dup = make_merge(make_explicit_sequence({integer(2L), integer(4L)}),
                          make_explicit_sequence({integer(2L), integer(8L)}));
    CHECK(dup->at(1) == integer(2L));
    CHECK(dup->at(2) == integer(4L));
    CHECK(dup->at(3) == integer(8L));
    CHECK(dup->merge_provenance(1) == base_sequence::prov::both);
    CHECK(dup->merge_provenance(2) == base_sequence::prov::left);
    CHECK(dup->merge_provenance(3) == base_sequence::prov::right);
}

TEST_CASE("merging the even and odd factorial subsequences restores the whole") {
    auto fp2 = make_factorial_pow2();
    auto evens = make_arith_subseq(fp2, 2, 0);  // q_2, q_4, ...
    auto odds = make_arith_subseq(fp2, 2, -1);  // q_1, q_3, ...
    CHECK(evens->spec() == "even(factorial-pow2)");
    CHECK(odds->spec() == "odd(factorial-pow2)");
    auto m = make_merge(odds, evens);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(m->at(n) == fp2->at(n));
}

TEST_CASE("merge keeps every source term and nothing else") {
    auto a = make_explicit_sequence({integer(3L), integer(9L), integer(30L), integer(100L)});
    auto b = make_explicit_sequence({integer(2L), integer(9L), integer(50L)});
    auto m = make_merge(a, b);
    std::vector<integer> merged;
    for (std::size_t n = 1; n <= 6; ++n) merged.push_back(m->at(n));
    // sorted union of {3,9,30,100} and {2,9,50}
    long expect[] = {2, 3, 9, 30, 50, 100};
    for (std::size_t i = 0; i < 6; ++i) CHECK(merged[i] == integer(expect[i]));
    CHECK(m->merge_provenance(3) == base_sequence::prov::both);
    CHECK_THROWS_AS(m->at(7), error); // nothing else
}

TEST_CASE("lemma4_indices picks minimal indices with u_m > n") {
    auto u = exponent_sequence::explicit_list(
        {rat(1, 2), rat(6, 5), rat(9, 5), rat(5, 2), rat(31, 10)});
    auto idx = lemma4_indices(*u, 3);
    CHECK(idx == std::vector<std::size_t>{2, 4, 5});

    CHECK(lemma4_indices(*exponent_sequence::identity(), 4) ==
          std::vector<std::size_t>{2, 3, 4, 5});

    auto big = exponent_sequence::explicit_list({rat(10), rat(20), rat(30)});
    CHECK(lemma4_indices(*big, 3) == std::vector<std::size_t>{1, 2, 3});

    // minimality: everything strictly between consecutive picks fails the bound
    auto u2 = exponent_sequence::explicit_list(
        {rat(3, 2), rat(1, 2), rat(2), rat(9, 4), rat(4), rat(5)});
    auto picks = lemma4_indices(*u2, 3);
    std::size_t prev = 0;
    for (std::size_t j = 0; j < picks.size(); ++j) {
        CHECK(u2->at(picks[j]) > rat(long(j + 1)));
        for (std::size_t m = prev + 1; m < picks[j]; ++m)
            CHECK(!(u2->at(m) > rat(long(j + 1))));
        prev = picks[j];
    }
}

TEST_CASE("lemma8 interleave matches the direct scan") {
    auto q = make_lemma8(powers_of(2, 40), powers_of(3, 40), budget::defaults());
    CHECK(q->at(1) == integer(3L));
    CHECK(q->at(2) == integer(4L));
    CHECK(q->at(3) == integer(27L));
    CHECK(q->at(4) == integer(32768L));

    // degenerate equal inputs break strictness immediately
    auto same = make_explicit_sequence(
        {integer(2L), integer(4L), integer(16L), integer(256L), integer(65536L)});
    auto bad = make_lemma8(same, same, budget::defaults());
    CHECK_THROWS_AS(bad->at(2), error);

    // the second pick comes from the even-index source at threshold q_2^2
    auto q2 = make_lemma8(powers_of(10, 30), powers_of(5, 30), budget::defaults());
    CHECK(q2->at(1) == integer(5L));
    CHECK(q2->at(2) == integer(10L));
    CHECK(q2->at(3) == integer(125L));
}

TEST_CASE("lemma8 growth and alternation invariants hold on the prefix") {
    auto a = powers_of(2, 4000);
    auto b = powers_of(3, 2600);
    auto q = make_lemma8(a, b, budget::defaults());
    for (std::size_t n = 1; n + 1 <= 6; ++n) {
        integer lhs = q->at(n + 1);
        integer rhs = q->at(n).pow(integer((unsigned long)n));
        CHECK(!(lhs < rhs)); // q_{n+1} >= q_n^n
    }
    // even-indexed terms are powers of 2, odd-indexed powers of 3
    for (std::size_t n = 1; n <= 6; ++n) {
        integer v = q->at(n);
        if (n % 2 == 0)
            CHECK(v.is_pow2_value());
        else {
            integer w = v;
            while (w > integer(1L)) {
                auto [quot, rem] = integer::fdiv_qr(w, integer(3L));
                CHECK(rem.is_zero());
                w = quot;
            }
        }
    }
}

TEST_CASE("prop13 schedule: lambda_s = s+1 gives odd/even classes and the d recursion") {
    auto sched = prop13_schedule(lambda_list({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}), 10);
    std::vector<std::size_t> odds{1, 3, 5, 7, 9}, evens{2, 4, 6, 8, 10};
    CHECK(sched.n_prime == odds);
    CHECK(sched.n_dprime == evens);
    long d_expect[] = {2, 2, 2, 4, 8, 24, 72, 288, 1152, 5760};
    REQUIRE(sched.d.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(sched.d[i] == integer(d_expect[i]));

    CHECK(sched.q->valid_from() == 3);
    CHECK(sched.q->at(1) == integer(4L));
    CHECK(sched.q->at(3) == integer(4L));
    CHECK(sched.q->at(4) == integer(16L));
    CHECK(sched.q->at(6) == integer::pow2(integer(24L)));
}

TEST_CASE("prop13 schedule: the doubly exponential lambda family") {
    auto lambda = lambda_list({1, 2, 4, 16, 256, 65536});
    auto sched = prop13_schedule(lambda, 300);
    // the index lists partition {1..300}
    std::vector<bool> seen(301, false);
    for (auto n : sched.n_prime) {
        REQUIRE(n <= 300);
        CHECK(!seen[n]);
        seen[n] = true;
    }
    for (auto n : sched.n_dprime) {
        REQUIRE(n <= 300);
        CHECK(!seen[n]);
        seen[n] = true;
    }
    for (std::size_t n = 1; n <= 300; ++n) CHECK(seen[n]);

    // k(s) at n = lambda_{2s}: position is the alternating sum, below sqrt(lambda_{2s})
    // s = 2: n = 256, k = lambda_3 - lambda_2 + lambda_1 = 14 < 16 = sqrt(256)
    auto it = std::find(sched.n_prime.begin(), sched.n_prime.end(), std::size_t(256));
    REQUIRE(it != sched.n_prime.end());
    std::size_t k_of_s = std::size_t(it - sched.n_prime.begin()) + 1;
    CHECK(k_of_s == 14);
    CHECK(integer((unsigned long)k_of_s) * integer((unsigned long)k_of_s) < integer(256L));
}

TEST_CASE("prop13 class positions match the alternating boundary formulas") {
    auto lambda = lambda_list({1, 2, 4, 16, 256, 65536});
    auto sched = prop13_schedule(lambda, 250);
    auto lam = [&](std::size_t i) { return lambda[i].get_slong(); };
    // primes: n in [lambda_{2s}, lambda_{2s+1}) at position
    // (n - lambda_{2s}) + 1 + sum_j (lambda_{2j-1} - lambda_{2j-2})
    for (std::size_t k = 1; k <= sched.n_prime.size(); ++k) {
        long n = long(sched.n_prime[k - 1]);
        long s = -1;
        for (std::size_t j = 0; j + 1 < lambda.size(); j += 2)
            if (lam(j) <= n && n < lam(j + 1)) s = long(j / 2);
        REQUIRE(s >= 0);
        long expect = n - lam(2 * s) + 1;
        for (long j = 1; j <= s; ++j) expect += lam(2 * j - 1) - lam(2 * j - 2);
        CHECK(long(k) == expect);
    }
    for (std::size_t h = 1; h <= sched.n_dprime.size(); ++h) {
        long n = long(sched.n_dprime[h - 1]);
        long s = -1;
        for (std::size_t j = 1; j + 1 < lambda.size(); j += 2)
            if (lam(j) <= n && n < lam(j + 1)) s = long(j / 2);
        REQUIRE(s >= 0);
        long expect = n - lam(2 * s + 1) + 1;
        for (long j = 0; j < s; ++j) expect += lam(2 * j + 2) - lam(2 * j + 1);
        CHECK(long(h) == expect);
    }
}

TEST_CASE("prop13 rejects a non-increasing lambda") {
    CHECK_THROWS_AS(prop13_schedule(lambda_list({1, 2, 2, 4}), 3), error);
    CHECK_THROWS_AS(prop13_schedule(lambda_list({2, 3}), 2), error); // lambda_0 != 1
}

TEST_CASE("prop11 paired tau sequence starts flat then grows strictly") {
    auto q = make_prop11_pair(rat(1, 3), rat(2, 3));
    CHECK(q->valid_from() == 5);
    CHECK(q->at(1) == integer(2L));
    CHECK(q->at(2) == integer(2L));
    CHECK(q->at(4) == integer(4L));
    CHECK(q->at(5) == integer(4L));
    CHECK(q->at(6) == integer(64L));                       // 2^(3! * floor(3^(1/3)))
    CHECK(q->at(7) == integer::pow2(integer(12L)));        // 2^(3! * floor(3^(2/3)))
    CHECK(q->at(32) == integer::pow2(integer::factorial(16) * integer(2L))); // 2^(16! * 2)
    CHECK(q->at(33) == integer::pow2(integer::factorial(16) * integer(6L)));
    CHECK_THROWS_AS(make_prop11_pair(rat(2, 3), rat(1, 3)), error);
}

TEST_CASE("sequence specs round trip through the parser") {
    const char* specs[] = {
        "factorial-pow2",
        "tau:1/2",
        "pow-of-f:identity",
        "pow-of-f:explicit:2,3,4",
        "prop13:1,2,3,4,5,6",
        "prop11:1/3:2/3",
        "explicit:4,8,16",
        "merge(explicit:4,16,explicit:8,64)",
        "lemma8(explicit:2,4,8,explicit:3,9,27)",
        "even(factorial-pow2)",
        "odd(factorial-pow2)",
        "arith(factorial-pow2,2,1)",
        "pick(factorial-pow2,2,4,6)",
    };
    for (const char* s : specs) {
        auto q = parse_base_sequence(s);
        CHECK(q->spec() == s);
        auto again = parse_base_sequence(q->spec());
        CHECK(again->at(1) == q->at(1));
    }
    CHECK_THROWS_AS(parse_base_sequence("wat:1"), error);
}

TEST_CASE("subsequence maps carve out the even and odd index tracks") {
    auto fp2 = make_factorial_pow2();
    auto qp = make_arith_subseq(fp2, 2, 0);  // q_{2n}
    auto qpp = make_arith_subseq(fp2, 2, 1); // q_{2n+1}
    CHECK(qp->at(1) == integer(4L));
    CHECK(qp->at(2) == integer::pow2(integer(24L)));
    CHECK(qpp->at(1) == integer(64L));
    CHECK(qpp->at(2) == integer::pow2(integer(120L)));
}

TEST_CASE("exponent sequence flags are attested") {
    auto id = exponent_sequence::identity();
    CHECK(id->increasing());
    CHECK(id->step_ge_one());
    CHECK(id->sqrt_dominated());

    auto slow = exponent_sequence::explicit_list({rat(1), rat(3, 2), rat(2)});
    CHECK(slow->increasing());
    CHECK(!slow->step_ge_one());

    auto jumpy = exponent_sequence::explicit_list({rat(1), rat(9)}); // sqrt(9) > 1 + 1
    CHECK(!jumpy->sqrt_dominated());

    auto aff = exponent_sequence::affine(rat(1, 2), rat(0));
    CHECK(aff->at(3) == rat(3, 2));
    CHECK(aff->increasing());
    CHECK(!aff->step_ge_one());

    CHECK_THROWS_AS(exponent_sequence::explicit_list({rat(1), rat(-1)}), error);
}

TEST_CASE("shared sequences evaluate consistently under concurrent readers") {
    auto q = make_merge(make_factorial_pow2(), make_tau_factorial(rat(1, 2)));
    std::vector<std::vector<integer>> seen(8);
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < seen.size(); ++t)
        workers.emplace_back([&, t] {
            for (std::size_t n = 1; n <= 12; ++n) seen[t].push_back(q->at(n));
        });
    for (auto& w : workers) w.join();
    for (std::size_t t = 1; t < seen.size(); ++t) CHECK(seen[t] == seen[0]);
}
