// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>

#include "liouville/witness.hpp"

namespace liouville {

enum class check_verdict { pass, fail };

// --- irrationality-measure profiling ---------------------------------------

struct measure_row {
    std::size_t n = 0;
    integer q_bits;        // bit length of q_n
    log2_bounds dist_log2; // enclosure of log2 ||q_n xi||
    rational u_lo, u_hi;   // enclosure of u_n(xi) = -log||q_n xi|| / log q_n
};

struct measure_profile {
    std::vector<measure_row> rows;
    std::string csv() const; // n,q_bits,dist_log2_lo,dist_log2_hi,u_lo,u_hi
};

struct profile_options {
    unsigned frac_bits = 64;
    rational target_width = rational(integer(1L), integer(256L)); // of the u_n enclosure
};

measure_profile un_profile(const real_number& xi, const base_sequence& q, std::size_t n_lo,
                           std::size_t n_hi, const profile_options& opts = {},
                           const budget& bud = budget::defaults());

// --- the non-emptiness criterion ratio --------------------------------------

struct criterion_row {
    std::size_t n = 0;
    rational lo, hi; // enclosure of log q_{n+1} / (u_n log q_n)
    bool exact = false;
    bool exceeds = false; // certified > theta
};

struct criterion_report_t {
    std::vector<criterion_row> rows;
    std::vector<std::size_t> candidates; // indices whose ratio exceeds theta
    bool hypothesis_warning = false;     // u lacks u_{n+1} >= u_n + 1
    std::string csv() const;             // n,ratio_lo,ratio_hi,exceeds_theta
};

criterion_report_t criterion_report(const base_sequence& q, const exponent_sequence& u,
                                    std::size_t n_max, const rational& theta,
                                    unsigned frac_bits = 64,
                                    const budget& bud = budget::defaults());

// --- the gap lemma -----------------------------------------------------------

// Checks the dichotomy q' >= q^u or q >= q'^u for two good approximations of a
// common point; the hypotheses (distinct fractions, intersecting approximation
// intervals) are validated first and raise hypothesis_violated.
check_verdict gap_check(const integer& p, const integer& q, const integer& p2, const integer& q2,
                        const rational& u_n);

// --- continued fractions ------------------------------------------------------

struct cf_expansion {
    std::vector<integer> quotients;
    std::vector<std::pair<integer, integer>> convergents; // (p_k, q_k)
};

cf_expansion cf_convergents(const rational& x, std::size_t max_terms = 10000);

// --- finite-level non-membership probe ----------------------------------------

struct probe_result {
    check_verdict verdict;
    // a fraction r/s with s <= q_n^kappa1 and |s xi - r| <= q_n^(-kappa2 u_n),
    // present exactly when the probe fails
    std::optional<std::pair<integer, integer>> found;
};

// PASS means no denominator up to q_n^kappa1 beats the level-n threshold;
// completeness of the convergent candidates is classical best-approximation
// theory.
probe_result nonmember_probe(const series_number& xi, const base_sequence& q,
                             const exponent_sequence& u, const rational& kappa1,
                             const rational& kappa2, std::size_t n,
                             const budget& bud = budget::defaults());

// --- the common-companion construction ----------------------------------------

struct companion_result {
    base_sequence::ptr q; // interleave of the two witness denominator sequences
    std::shared_ptr<const thm3_series> rho;
    approx_witness::ptr rho_even; // rho against (q_{2n})
    approx_witness::ptr rho_odd;  // rho against (q_{2n-1})
};

companion_result companion(const approx_witness::ptr& w_xi, const approx_witness::ptr& w_eta,
                           const budget& bud = budget::defaults());

// --- sum-of-two-squares obstruction --------------------------------------------

struct two_squares_result {
    bool obstructed = false; // N is not a sum of two integer squares
    // positive solutions (x, y, z) of x^2 + y^2 = N z^2 with x <= y, z <= z_max
    std::vector<std::array<unsigned long, 3>> solutions;
};

two_squares_result two_squares_check(const integer& n_value, const integer& z_max);

} // namespace liouville
