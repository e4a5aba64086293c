// SPDX-License-Identifier: Apache-2.0

#include "liouville/measure.hpp"

#include <cmath>
#include <sstream>

namespace liouville {

namespace {

const rational& one_half() {
    static const rational h(integer(1L), integer(2L));
    return h;
}

// range of |x - nearest(x)| over an interval
interval dist_interval(const interval& iv) {
    auto nlo = nearest_int(iv.lo);
    auto nhi = nearest_int(iv.hi);
    if (nlo.m == nhi.m) {
        // one shared nearest integer; the distance is V-shaped around it
        if (iv.contains(rational(nlo.m))) return {rational(), max(nlo.dist, nhi.dist)};
        return {min(nlo.dist, nhi.dist), max(nlo.dist, nhi.dist)};
    }
    // the interval spans a half-integer, where the distance peaks at 1/2
    integer first_int = iv.lo.ceil();
    bool integer_inside = rational(first_int) <= iv.hi;
    rational lo = integer_inside ? rational() : min(nlo.dist, nhi.dist);
    return {std::move(lo), one_half()};
}

} // namespace

measure_profile un_profile(const real_number& xi, const base_sequence& q, std::size_t n_lo,
                           std::size_t n_hi, const profile_options& opts, const budget& bud) {
    if (n_lo == 0 || n_hi < n_lo) fail(errc::usage, "bad profile range");
    measure_profile out;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        integer qn = q.at(n);
        rational qv(qn);
        log2_bounds qlog = log2_interval(qv, opts.frac_bits);
        bool done = false;
        for (std::size_t k = 0; k <= bud.max_terms && !done; ++k) {
            interval iv = xi.enclose(k, bud);
            interval scaled = mul({qv, qv}, iv);
            interval dist = dist_interval(scaled);
            if (dist.hi.is_zero())
                fail(errc::rational_hit,
                     "||q_n xi|| = 0 at n = " + std::to_string(n) + "; subject is rational");
            if (dist.lo.is_zero()) continue; // an integer is still inside; refine
            log2_bounds dlo = log2_interval(dist.lo, opts.frac_bits);
            log2_bounds dhi = log2_interval(dist.hi, opts.frac_bits);
            rational a_lo = -dhi.hi, a_hi = -dlo.lo; // -log2 of the distance
            rational u_lo = a_lo / qlog.hi;
            rational u_hi = a_hi / qlog.lo;
            if (u_hi - u_lo <= opts.target_width) {
                out.rows.push_back(
                    {n, qn.bit_length(), {dlo.lo, dhi.hi}, std::move(u_lo), std::move(u_hi)});
                done = true;
            }
        }
        if (!done)
            fail(errc::precision_exhausted,
                 "u_n enclosure did not reach the target width at n = " + std::to_string(n));
    }
    return out;
}

std::string measure_profile::csv() const {
    std::ostringstream os;
    os << "n,q_bits,dist_log2_lo,dist_log2_hi,u_lo,u_hi\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.q_bits.to_string() << ',' << r.dist_log2.lo.to_string() << ','
           << r.dist_log2.hi.to_string() << ',' << r.u_lo.to_string() << ','
           << r.u_hi.to_string() << '\n';
    return os.str();
}

criterion_report_t criterion_report(const base_sequence& q, const exponent_sequence& u,
                                    std::size_t n_max, const rational& theta, unsigned frac_bits,
                                    const budget& bud) {
    (void)bud;
    if (n_max == 0) fail(errc::usage, "criterion needs n_max >= 1");
    criterion_report_t out;
    out.hypothesis_warning = !u.step_ge_one();
    for (std::size_t n = 1; n <= n_max; ++n) {
        integer qn = q.at(n);
        integer qn1 = q.at(n + 1);
        rational un = u.at(n);
        criterion_row row;
        row.n = n;
        if (qn.is_pow2_value() && qn1.is_pow2_value()) {
            rational ratio = rational(qn1.pow2_exponent()) / (un * rational(qn.pow2_exponent()));
            row.lo = row.hi = std::move(ratio);
            row.exact = true;
        } else {
            log2_bounds l0 = log2_interval(rational(qn), frac_bits);
            log2_bounds l1 = log2_interval(rational(qn1), frac_bits);
            row.lo = l1.lo / (un * l0.hi);
            row.hi = l1.hi / (un * l0.lo);
            row.exact = row.lo == row.hi;
        }
        row.exceeds = row.lo > theta;
        if (row.exceeds) out.candidates.push_back(n);
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string criterion_report_t::csv() const {
    std::ostringstream os;
    os << "n,ratio_lo,ratio_hi,exceeds_theta\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.lo.to_string() << ',' << r.hi.to_string() << ','
           << (r.exceeds ? "true" : "false") << '\n';
    return os.str();
}

check_verdict gap_check(const integer& p, const integer& q, const integer& p2, const integer& q2,
                        const rational& u_n) {
    if (q < integer(1L) || q2 < integer(1L)) fail(errc::usage, "denominators must be >= 1");
    if (u_n.sign() <= 0) fail(errc::usage, "u_n must be positive");
    rational f1(p, q), f2(p2, q2);
    if (f1 == f2) fail(errc::hypothesis_violated, "the two fractions coincide");

    // a common xi exists iff the two approximation intervals intersect:
    // |p/q - p'/q'| <= q^-(u+1) + q'^-(u+2)
    rational gap = (f1 - f2).abs();
    rational e1 = -(u_n + rational(1L));
    rational e2 = -(u_n + rational(2L));
    bool intersect = false, decided = false;
    for (unsigned bits = 64; bits <= 8192 && !decided; bits *= 2) {
        auto [l1, h1] = pow_enclosure(rational(q), e1, bits);
        auto [l2, h2] = pow_enclosure(rational(q2), e2, bits);
        if (gap <= l1 + l2) {
            intersect = true;
            decided = true;
        } else if (gap > h1 + h2) {
            intersect = false;
            decided = true;
        }
    }
    if (!decided)
        fail(errc::hypothesis_violated, "interval intersection is borderline beyond precision");
    if (!intersect)
        fail(errc::hypothesis_violated, "the two approximation intervals are disjoint");

    bool first = cmp_pow(rational(q2), q, u_n) != std::strong_ordering::less;  // q' >= q^u
    bool second = cmp_pow(rational(q), q2, u_n) != std::strong_ordering::less; // q >= q'^u
    return first || second ? check_verdict::pass : check_verdict::fail;
}

cf_expansion cf_convergents(const rational& x, std::size_t max_terms) {
    if (max_terms == 0) fail(errc::usage, "max_terms must be >= 1");
    cf_expansion out;
    // h_{-2} = 0, h_{-1} = 1 / k_{-2} = 1, k_{-1} = 0 seed the recurrence
    integer p_prev(0L), q_prev(1L);
    integer p_cur(1L), q_cur(0L);
    rational rest = x;
    for (std::size_t k = 0; k < max_terms; ++k) {
        integer a = rest.floor();
        integer p_next = a * p_cur + p_prev;
        integer q_next = a * q_cur + q_prev;
        out.quotients.push_back(a);
        out.convergents.emplace_back(p_next, q_next);
        rational frac = rest - rational(a);
        p_prev = std::move(p_cur);
        q_prev = std::move(q_cur);
        p_cur = std::move(p_next);
        q_cur = std::move(q_next);
        if (frac.is_zero()) break;
        rest = frac.inverse();
    }
    return out;
}

probe_result nonmember_probe(const series_number& xi, const base_sequence& q,
                             const exponent_sequence& u, const rational& kappa1,
                             const rational& kappa2, std::size_t n, const budget& bud) {
    if (n == 0) fail(errc::usage, "probe levels are 1-based");
    integer qn = q.at(n);
    rational neg_t = -(kappa2 * u.at(n)); // threshold is q_n^neg_t
    // candidate denominators stop at cap = q_n^kappa1; everything is compared
    // in power form so the cap is never materialized
    for (std::size_t m = xi.valid_from(); m <= bud.max_terms; ++m) {
        truncation tr = xi.truncate(m, bud);
        // require cap * tail <= threshold / 4 before trusting the truncation
        if (cmp_pow(tr.tail_bound * rational(4L), qn, neg_t - kappa1) ==
            std::strong_ordering::greater)
            continue;

        // stream the convergents of the truncation up to the cap
        integer p_prev(0L), q_prev(1L), p_cur(1L), q_cur(0L);
        rational rest = tr.value;
        std::optional<std::pair<integer, integer>> last; // largest candidate
        bool exhausted_inside_cap = false;
        for (std::size_t k = 0; k < 100000; ++k) {
            integer a = rest.floor();
            integer p_next = a * p_cur + p_prev;
            integer q_next = a * q_cur + q_prev;
            rational frac = rest - rational(a);
            bool within = cmp_pow(rational(q_next), qn, kappa1) != std::strong_ordering::greater;
            if (!within) break;
            // failure side: |s xi - r| <= |s x^ - r| + s * tail
            rational dist = (rational(q_next) * tr.value - rational(p_next)).abs();
            if (cmp_pow(dist + rational(q_next) * tr.tail_bound, qn, neg_t) !=
                std::strong_ordering::greater)
                return {check_verdict::fail, std::make_pair(p_next, q_next)};
            last = std::make_pair(p_next, q_next);
            if (frac.is_zero()) {
                exhausted_inside_cap = true; // the truncation itself has a small denominator
                break;
            }
            p_prev = std::move(p_cur);
            q_prev = std::move(q_cur);
            p_cur = std::move(p_next);
            q_cur = std::move(q_next);
            rest = frac.inverse();
        }
        if (exhausted_inside_cap) continue; // refine: x^ is too coarse at this cap

        // pass side: every s below the next convergent denominator satisfies
        // ||s x^|| >= ||q_K x^|| (best approximations of the second kind), so
        // ||s xi|| >= ||q_K x^|| - cap * tail
        if (!last) fail(errc::precision_exhausted, "no candidate below the cap");
        rational best = (rational(last->second) * tr.value - rational(last->first)).abs();
        // margin check: best - cap*tail > q_n^neg_t, with cap*tail bounded by
        // the already-verified threshold/4
        rational quarter(integer(1L), integer(4L));
        // best > q_n^neg_t * (1 + 1/4) certainly implies the margin
        if (cmp_pow(best * rational(4L) * rational(integer(1L), integer(5L)), qn, neg_t) ==
            std::strong_ordering::greater)
            return {check_verdict::pass, std::nullopt};
        // not separated yet: refine the truncation
        (void)quarter;
    }
    fail(errc::precision_exhausted, "probe could not separate candidates from the threshold");
}

namespace {

// witness denominators viewed as a base sequence (for the interleave)
class denom_seq final : public base_sequence {
public:
    denom_seq(approx_witness::ptr w, std::size_t offset, budget bud)
        : base_sequence(1), w_(std::move(w)), offset_(offset), bud_(bud) {}
    std::string spec() const override {
        return "denoms+" + std::to_string(offset_) + "(" + w_->subject()->spec() + ")";
    }

protected:
    integer compute(std::size_t n, const std::vector<integer>&) const override {
        return w_->denominator(n + offset_, bud_);
    }

private:
    approx_witness::ptr w_;
    std::size_t offset_;
    budget bud_;
};

} // namespace

companion_result companion(const approx_witness::ptr& w_xi, const approx_witness::ptr& w_eta,
                           const budget& bud) {
    // identical witnesses would tie immediately in the interleave; offset one
    // copy so the scan starts past the collision
    bool identical = w_xi->base()->spec() == w_eta->base()->spec() &&
                     w_xi->subject()->spec() == w_eta->subject()->spec();
    auto a = std::make_shared<denom_seq>(w_xi, identical ? 1 : 0, bud);
    auto b = std::make_shared<denom_seq>(w_eta, 0, bud);
    companion_result out;
    out.q = make_lemma8(a, b, bud);
    out.rho = make_xi_theorem3("+", out.q, exponent_sequence::identity(), one_half(), bud);
    auto w_rho = make_thm3_witness(out.rho);
    out.rho_even = subsequence_witness(w_rho, 2, 0);
    out.rho_odd = subsequence_witness(w_rho, 2, -1);
    return out;
}

two_squares_result two_squares_check(const integer& n_value, const integer& z_max) {
    if (n_value < integer(1L) || z_max < integer(1L))
        fail(errc::usage, "two-squares check needs N >= 1 and z_max >= 1");
    if (!n_value.fits_ulong() || !z_max.fits_ulong())
        fail(errc::precision_exhausted, "two-squares search is desk-scale only");
    unsigned long nv = n_value.get_ulong();
    unsigned long zm = z_max.get_ulong();
    if (nv > 100'000'000ul || zm > 100'000ul || nv > (1ul << 40) / (zm * zm))
        fail(errc::precision_exhausted, "two-squares search bounds too large");

    auto is_square = [](unsigned long v, unsigned long& root) {
        unsigned long r = static_cast<unsigned long>(std::sqrt(static_cast<double>(v)));
        while (r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        root = r;
        return r * r == v;
    };

    two_squares_result out;
    out.obstructed = true;
    for (unsigned long x = 0; x * x * 2 <= nv; ++x) {
        unsigned long y;
        if (is_square(nv - x * x, y)) {
            out.obstructed = false;
            break;
        }
    }
    // scan x^2 + y^2 = N z^2 in positive integers up to z_max; empty exactly
    // when the obstruction holds
    for (unsigned long z = 1; z <= zm; ++z) {
        unsigned long target = nv * z * z;
        for (unsigned long x = 1; x * x * 2 <= target; ++x) {
            unsigned long y;
            if (is_square(target - x * x, y) && y >= 1)
                out.solutions.push_back({x, y, z});
        }
    }
    return out;
}

} // namespace liouville
