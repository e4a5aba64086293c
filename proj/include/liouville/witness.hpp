// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>

#include "liouville/log2.hpp"
#include "liouville/series.hpp"

namespace liouville {

struct witness_pair {
    integer b; // 1 <= b <= q_n^kappa1
    integer a; // nearest integer to b*xi
};

// Finite-prefix membership certificate data for xi in S_{q,u}: per index n a
// pair (b_n, a_n) meant to satisfy 1 <= b_n <= q_n^kappa1 and
// |b_n xi - a_n| <= q_n^(-kappa2 u_n), checked exactly by verify_at.
class approx_witness {
public:
    using ptr = std::shared_ptr<const approx_witness>;
    virtual ~approx_witness() = default;

    base_sequence::ptr base() const { return base_; }
    exponent_sequence::ptr u() const { return u_; }
    real_number::ptr subject() const { return subject_; }
    const rational& kappa1() const { return kappa1_; }
    const rational& kappa2() const { return kappa2_; }
    std::size_t valid_from() const { return valid_from_; }

    witness_pair pair(std::size_t n, const budget& bud = budget::defaults()) const;

    // b_n alone; cheap for every generator whose denominators do not depend
    // on the nearest-integer side (used by scans over denominator sequences)
    virtual integer denominator(std::size_t n, const budget& bud = budget::defaults()) const;

protected:
    approx_witness(real_number::ptr subject, base_sequence::ptr base, exponent_sequence::ptr u,
                   rational kappa1, rational kappa2, std::size_t valid_from);
    virtual witness_pair compute_pair(std::size_t n, const budget& bud) const = 0;

    real_number::ptr subject_;
    base_sequence::ptr base_;
    exponent_sequence::ptr u_;
    rational kappa1_, kappa2_;
    std::size_t valid_from_;

private:
    mutable std::mutex mu_;
    mutable std::map<std::size_t, witness_pair> memo_;
};

// nearest integer to b*x, certified through enclosure refinement
integer certified_nearest(const integer& b, const real_number& x,
                          const budget& bud = budget::defaults());

// --- constructors --------------------------------------------------------

// b_n = q_n, a_n the nearest integer (the p_n of the base-term witness)
approx_witness::ptr make_base_term_witness(real_number::ptr subject, base_sequence::ptr base,
                                           exponent_sequence::ptr u, rational kappa1 = rational(1L),
                                           rational kappa2 = rational(integer(1L), integer(2L)));

// b_n = the subject's own denominator d_n, a_n the exact partial numerator
approx_witness::ptr make_own_denominator_witness(series_number::ptr subject,
                                                 base_sequence::ptr base, exponent_sequence::ptr u,
                                                 rational kappa1 = rational(1L),
                                                 rational kappa2 = rational(integer(1L),
                                                                            integer(2L)));

// the growth-block witness of a thm3 series: b_n = 2^(c_{l-1}) for
// N_{l-1} <= n < N_l, with
// a_n the signed partial numerator
approx_witness::ptr make_thm3_witness(std::shared_ptr<const thm3_series> subject,
                                      rational kappa1 = rational(1L),
                                      rational kappa2 = rational(integer(1L), integer(2L)));

// explicit pair list starting at index first_n (certificate reload)
approx_witness::ptr make_explicit_witness(real_number::ptr subject, base_sequence::ptr base,
                                          exponent_sequence::ptr u, rational kappa1,
                                          rational kappa2, std::size_t valid_from,
                                          std::size_t first_n, std::vector<witness_pair> pairs);

// --- the witness algebra --------------------------------------------------

enum class affine_mode { shift, scale }; // xi - r/s or xi * r/s

approx_witness::ptr affine_q(const approx_witness::ptr& w, const integer& r, const integer& s,
                             affine_mode mode);

enum class combine_mode { sub, add, mul };

approx_witness::ptr combine2(const approx_witness::ptr& w, const approx_witness::ptr& w2,
                             combine_mode mode);

approx_witness::ptr reciprocal(const approx_witness::ptr& w,
                               const budget& bud = budget::defaults());

// lifts every b_n below q_n to the multiple ceil(q_n/b_n) * b_n, so that
// q_n <= b_n <= 2 q_n there
approx_witness::ptr normalize(const approx_witness::ptr& w);

// witness for P(xi)/Q(xi), coefficients low-to-high, via the algebra above;
// the declared kappa1 is the (deg P + deg Q + 1) * kappa1 closure bound
approx_witness::ptr apply_rational_function(const approx_witness::ptr& w,
                                            const std::vector<integer>& p_coeffs,
                                            const std::vector<integer>& q_coeffs,
                                            const budget& bud = budget::defaults());

// re-index a witness along n -> stride*n + offset against the matching
// subsequence of its base
approx_witness::ptr subsequence_witness(const approx_witness::ptr& w, long stride, long offset);

// --- verification ----------------------------------------------------------

struct verify_record {
    std::size_t n = 0;
    witness_pair pr;
    bool size_ok = false;   // 1 <= b_n <= q_n^kappa1
    bool approx_ok = false; // 0 < |b_n xi - a_n| <= q_n^(-kappa2 u_n)
    log2_bounds lhs_log2;   // certified bounds on log2 |b_n xi - a_n|
    rational rhs_log2;      // log2 of the target bound (exact for pow2 bases)
    bool rhs_log2_exact = false;

    bool pass() const noexcept { return size_ok && approx_ok; }
};

verify_record verify_at(const approx_witness& w, std::size_t n,
                        const budget& bud = budget::defaults());

struct verify_report {
    std::vector<verify_record> records;
    // smallest n0 in range with every n in [n0, n_hi] passing; n_hi + 1 if none
    std::size_t greedy_valid_from = 0;
    bool all_pass = false;
};

verify_report verify_range(const approx_witness& w, std::size_t n_lo, std::size_t n_hi,
                           const budget& bud = budget::defaults());

} // namespace liouville
