// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "liouville/sequence.hpp"

namespace liouville {

// Certified enclosure of a real number.
struct interval {
    rational lo, hi;

    rational width() const { return hi - lo; }
    bool contains(const rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    interval intersect(const interval& o) const;
};

interval add(const interval& a, const interval& b);
interval sub(const interval& a, const interval& b);
interval mul(const interval& a, const interval& b);
interval invert(const interval& a); // requires 0 outside a
interval abs(const interval& a);

enum class irrationality {
    rational_value, // exactly rational, value available
    attested,       // irrational by construction kind
    heuristic,      // combination of attested values; rational hits detected at runtime
};

// A computable real given by refinable certified enclosures. Level k+1
// encloses at least as tightly as level k (enforced by intersection).
class real_number {
public:
    using ptr = std::shared_ptr<const real_number>;
    virtual ~real_number() = default;

    interval enclose(std::size_t level, const budget& bud = budget::defaults()) const;
    virtual irrationality attestation() const noexcept = 0;
    virtual std::optional<rational> exact_value() const { return std::nullopt; }
    virtual std::string spec() const = 0;

protected:
    virtual interval compute_enclosure(std::size_t level, const budget& bud) const = 0;

private:
    mutable std::mutex mu_;
    mutable std::vector<interval> memo_;
};

// Exact partial sum with a certified bound on the dropped tail.
struct truncation {
    rational value;
    rational tail_bound; // |xi - value| <= tail_bound
    std::size_t terms_used;
};

// A real given as a series sum e_n / d_n with e_n in {-1, 0, +1} and
// denominators at least doubling from valid_from on; the uniform tail bound
// 2/d_{n+1} is certified by that growth. Tail bounds whose exponent would
// dwarf the value's precision are clamped outward to keep arithmetic cheap.
class series_number : public real_number {
public:
    using ptr = std::shared_ptr<const series_number>;

    struct term {
        int e;
        integer d;
    };

    term term_at(std::size_t n, const budget& bud = budget::defaults()) const; // n >= 1
    std::size_t valid_from() const noexcept { return valid_from_; }
    truncation truncate(std::size_t n, const budget& bud = budget::defaults()) const; // n >= 0

    irrationality attestation() const noexcept override { return attest_; }

protected:
    series_number(std::size_t valid_from, irrationality attest)
        : valid_from_(valid_from), attest_(attest) {}
    // called with n = prev.size() + 1, in order, under the term lock
    virtual term compute_term(std::size_t n, const std::vector<term>& prev) const = 0;
    interval compute_enclosure(std::size_t level, const budget& bud) const override;
    void set_valid_from(std::size_t vf) noexcept { valid_from_ = vf; }

private:
    void extend_terms(std::size_t n, const budget& bud) const;

    std::size_t valid_from_ = 1;
    irrationality attest_;
    mutable std::mutex mu_;
    mutable std::vector<term> terms_;
    mutable std::vector<rational> partial_; // partial_[n] = sum of the first n terms
};

// --- constructions -----------------------------------------------------

// sum of base^(-n!) for base >= 2
series_number::ptr make_classic(const integer& base);

// sum of 1/floor(t^f(n)), f(1) = 1, f(n+1) = f(n) u_n, for t > 1
series_number::ptr make_xi_t(const rational& t, exponent_sequence::ptr u);

// Growth-block construction: indices N_l where q grows beyond q^(theta u), binary
// blocks c_l = bitlen(q_{N_l}) - 1, value sum e_l 2^(-c_l). The sign string is
// applied cyclically.
class thm3_series final : public series_number {
public:
    thm3_series(std::string signs, base_sequence::ptr q, exponent_sequence::ptr u,
                rational theta, const budget& bud = budget::defaults());

    // witness data per the construction
    std::size_t block_index(std::size_t l, const budget& bud = budget::defaults()) const; // N_l
    integer block_exponent(std::size_t l, const budget& bud = budget::defaults()) const;  // c_l
    int sign_at(std::size_t l) const;                                                     // e_l
    base_sequence::ptr base() const { return q_; }
    exponent_sequence::ptr exponents() const { return u_; }

    std::string spec() const override;

protected:
    term compute_term(std::size_t n, const std::vector<term>& prev) const override;

private:
    void extend_blocks(std::size_t l, const budget& bud) const;

    std::string signs_;
    base_sequence::ptr q_;
    exponent_sequence::ptr u_;
    rational theta_;
    budget bud_;
    mutable std::mutex blocks_mu_;
    mutable std::vector<std::size_t> n_l_; // N_l indices
};

std::shared_ptr<const thm3_series> make_xi_theorem3(std::string signs, base_sequence::ptr q,
                                                    exponent_sequence::ptr u, rational theta,
                                                    const budget& bud = budget::defaults());

// prop12 number: sum 2^(-(2n-1)! lambda_n); lambda either the default
// schedule floor(sqrt(n)) + 1 or an explicit attested prefix
series_number::ptr make_xi_prop12_default();
series_number::ptr make_xi_prop12(std::vector<integer> lambda);

// prop13 number: sum 1/q_n over the schedule's q (duplicates allowed
// before its valid_from)
series_number::ptr make_xi_prop13(const std::vector<integer>& lambda);

// prop14 number: sum 1/d_n with d_n = q_n (even n), q_{n-1}^floor(sqrt(u_n))
// (odd n >= 3), d_1 = q_1
class prop14_series final : public series_number {
public:
    prop14_series(base_sequence::ptr q, exponent_sequence::ptr u,
                  const budget& bud = budget::defaults());

    // the proof's product denominators b_n = d_1...d_n and numerators
    // a_n = sum_m b_n/d_m
    integer product_denominator(std::size_t n, const budget& bud = budget::defaults()) const;
    integer product_numerator(std::size_t n, const budget& bud = budget::defaults()) const;
    base_sequence::ptr base() const { return q_; }

    std::string spec() const override;

protected:
    term compute_term(std::size_t n, const std::vector<term>& prev) const override;

private:
    base_sequence::ptr q_;
    exponent_sequence::ptr u_;
};

std::shared_ptr<const prop14_series> make_xi_prop14(base_sequence::ptr q, exponent_sequence::ptr u,
                                                    const budget& bud = budget::defaults());

// exact rational stand-in
real_number::ptr make_rational_point(const rational& r);

// --- composite numbers (witness algebra subjects) ----------------------

real_number::ptr make_sum(real_number::ptr a, real_number::ptr b);
real_number::ptr make_diff(real_number::ptr a, real_number::ptr b);
real_number::ptr make_prod(real_number::ptr a, real_number::ptr b);
// x - r/s and x * r/s
real_number::ptr make_shift(real_number::ptr x, const rational& r_over_s);
real_number::ptr make_scale(real_number::ptr x, const rational& r_over_s);
// 1/x; refines until the enclosure excludes zero
real_number::ptr make_reciprocal(real_number::ptr x, const budget& bud = budget::defaults());

real_number::ptr parse_number(const std::string& spec);

// --- truncate / digit split --------------------------------------------

inline truncation truncate(const series_number& x, std::size_t n,
                           const budget& bud = budget::defaults()) {
    return x.truncate(n, bud);
}

// Binary digit-block split: digits of x in the even lambda blocks go to the
// first output, odd blocks to the second; positions outside a part's blocks
// are zero, so the parts add back to x digit-for-digit. Requires 0 < x < 1.
struct erdos_split_result {
    series_number::ptr xi;
    series_number::ptr eta;
    std::vector<int> digits; // certified binary digits of x, 1-based positions
};

// lambda given as the block boundaries (lambda_0 = 1 first); the factorial
// default is lambda_s = s! with the empty [1,1) block tolerated
std::vector<integer> erdos_factorial_lambda(std::size_t count);
erdos_split_result erdos_split(const real_number& x, const std::vector<integer>& lambda,
                               std::size_t depth, const budget& bud = budget::defaults());

// Digit-run audit of a split part: for consecutive certified nonzero digit
// positions p < p' the denominator 2^p' must reach (2^p)^(ratio - 1) where
// ratio is the lambda-ratio at the boundary crossed between them.
bool digit_run_audit(const series_number& part, const std::vector<integer>& lambda,
                     std::size_t depth, const budget& bud = budget::defaults());

} // namespace liouville
