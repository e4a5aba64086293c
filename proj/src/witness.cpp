// SPDX-License-Identifier: Apache-2.0

#include "liouville/witness.hpp"

#include <functional>

namespace liouville {

approx_witness::approx_witness(real_number::ptr subject, base_sequence::ptr base,
                               exponent_sequence::ptr u, rational kappa1, rational kappa2,
                               std::size_t valid_from)
    : subject_(std::move(subject)), base_(std::move(base)), u_(std::move(u)),
      kappa1_(std::move(kappa1)), kappa2_(std::move(kappa2)), valid_from_(valid_from) {
    if (kappa1_.sign() <= 0 || kappa2_.sign() <= 0)
        fail(errc::usage, "kappa constants must be positive");
}

witness_pair approx_witness::pair(std::size_t n, const budget& bud) const {
    if (n == 0) fail(errc::usage, "witness pairs are 1-based");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
    }
    witness_pair p = compute_pair(n, bud);
    std::lock_guard<std::mutex> lk(mu_);
    return memo_.emplace(n, std::move(p)).first->second;
}

integer approx_witness::denominator(std::size_t n, const budget& bud) const {
    return pair(n, bud).b;
}

integer certified_nearest(const integer& b, const real_number& x, const budget& bud) {
    rational bb(b);
    if (auto v = x.exact_value()) return nearest_int(bb * *v).m;
    for (std::size_t k = 0; k <= bud.max_terms; ++k) {
        interval iv = x.enclose(k, bud);
        integer lo = nearest_int(bb * iv.lo).m;
        integer hi = nearest_int(bb * iv.hi).m;
        if (lo == hi) return lo;
    }
    fail(errc::precision_exhausted,
         "nearest integer to " + b.to_string() + " * (" + x.spec() + ") did not stabilize");
}

namespace {

class fn_witness final : public approx_witness {
public:
    using pair_fn = std::function<witness_pair(std::size_t, const budget&)>;
    using denom_fn = std::function<integer(std::size_t, const budget&)>;

    fn_witness(real_number::ptr subject, base_sequence::ptr base, exponent_sequence::ptr u,
               rational kappa1, rational kappa2, std::size_t valid_from, pair_fn f,
               denom_fn d = nullptr)
        : approx_witness(std::move(subject), std::move(base), std::move(u), std::move(kappa1),
                         std::move(kappa2), valid_from),
          f_(std::move(f)), d_(std::move(d)) {}

    integer denominator(std::size_t n, const budget& bud) const override {
        return d_ ? d_(n, bud) : approx_witness::denominator(n, bud);
    }

protected:
    witness_pair compute_pair(std::size_t n, const budget& bud) const override {
        return f_(n, bud);
    }

private:
    pair_fn f_;
    denom_fn d_;
};

approx_witness::ptr make_fn_witness(real_number::ptr subject, base_sequence::ptr base,
                                    exponent_sequence::ptr u, rational k1, rational k2,
                                    std::size_t vf, fn_witness::pair_fn f,
                                    fn_witness::denom_fn d = nullptr) {
    return std::make_shared<fn_witness>(std::move(subject), std::move(base), std::move(u),
                                        std::move(k1), std::move(k2), vf, std::move(f),
                                        std::move(d));
}

rational half_of(const rational& k) { return k * rational(integer(1L), integer(2L)); }

} // namespace

approx_witness::ptr make_base_term_witness(real_number::ptr subject, base_sequence::ptr base,
                                           exponent_sequence::ptr u, rational kappa1,
                                           rational kappa2) {
    auto subj = subject;
    auto q = base;
    return make_fn_witness(
        subject, base, std::move(u), std::move(kappa1), std::move(kappa2), 1,
        [subj, q](std::size_t n, const budget& bud) {
            integer b = q->at(n);
            return witness_pair{b, certified_nearest(b, *subj, bud)};
        },
        [q](std::size_t n, const budget&) { return q->at(n); });
}

approx_witness::ptr make_own_denominator_witness(series_number::ptr subject,
                                                 base_sequence::ptr base, exponent_sequence::ptr u,
                                                 rational kappa1, rational kappa2) {
    auto subj = subject;
    return make_fn_witness(
        subject, std::move(base), std::move(u), std::move(kappa1), std::move(kappa2),
        subject->valid_from(),
        [subj](std::size_t n, const budget& bud) {
            integer b = subj->term_at(n, bud).d;
            return witness_pair{b, certified_nearest(b, *subj, bud)};
        },
        [subj](std::size_t n, const budget& bud) { return subj->term_at(n, bud).d; });
}

approx_witness::ptr make_thm3_witness(std::shared_ptr<const thm3_series> subject, rational kappa1,
                                      rational kappa2) {
    auto subj = subject;
    return make_fn_witness(
        subject, subject->base(), subject->exponents(), std::move(kappa1), std::move(kappa2), 1,
        [subj](std::size_t n, const budget& bud) {
            // l is minimal with N_l > n, so the pair lives on block l-1
            std::size_t l = 1;
            while (subj->block_index(l, bud) <= n) ++l;
            integer c_top = subj->block_exponent(l - 1, bud);
            integer b = integer::pow2(c_top);
            integer a;
            for (std::size_t h = 1; h < l; ++h) {
                integer c_h = subj->block_exponent(h, bud);
                integer sgn(subj->sign_at(h));
                a += sgn * integer::pow2(c_top - c_h);
            }
            return witness_pair{std::move(b), std::move(a)};
        });
}

approx_witness::ptr make_explicit_witness(real_number::ptr subject, base_sequence::ptr base,
                                          exponent_sequence::ptr u, rational kappa1,
                                          rational kappa2, std::size_t valid_from,
                                          std::size_t first_n, std::vector<witness_pair> pairs) {
    auto stored = std::make_shared<std::vector<witness_pair>>(std::move(pairs));
    return make_fn_witness(std::move(subject), std::move(base), std::move(u), std::move(kappa1),
                           std::move(kappa2), valid_from,
                           [stored, first_n](std::size_t n, const budget&) {
                               if (n < first_n || n >= first_n + stored->size())
                                   fail(errc::prefix_exhausted,
                                        "no pair recorded for n = " + std::to_string(n));
                               return (*stored)[n - first_n];
                           });
}

approx_witness::ptr affine_q(const approx_witness::ptr& w, const integer& r, const integer& s,
                             affine_mode mode) {
    if (s < integer(1L)) fail(errc::usage, "affine witness needs s >= 1");
    if (mode == affine_mode::scale && r.is_zero())
        fail(errc::usage, "scaling a witness by zero");
    rational c(r, s);
    real_number::ptr subject = mode == affine_mode::shift ? make_shift(w->subject(), c)
                                                          : make_scale(w->subject(), c);
    // the pair error picks up a factor of s (shift) or |r| (scale); any
    // kappa2 below the original absorbs it for large n
    integer factor = mode == affine_mode::shift ? s : r.abs();
    rational k1 = s.is_one() ? w->kappa1() : w->kappa1() + rational(1L);
    rational k2 = factor.is_one() ? w->kappa2() : half_of(w->kappa2());
    integer rr = r, ss = s;
    auto parent = w;
    return make_fn_witness(
        subject, w->base(), w->u(), std::move(k1), std::move(k2), w->valid_from(),
        [parent, rr, ss, mode](std::size_t n, const budget& bud) {
            witness_pair p = parent->pair(n, bud);
            if (mode == affine_mode::shift)
                return witness_pair{ss * p.b, ss * p.a - rr * p.b};
            return witness_pair{ss * p.b, rr * p.a};
        },
        [parent, ss](std::size_t n, const budget& bud) {
            return ss * parent->denominator(n, bud);
        });
}

approx_witness::ptr combine2(const approx_witness::ptr& w, const approx_witness::ptr& w2,
                             combine_mode mode) {
    if (w->base()->spec() != w2->base()->spec() || w->u()->spec() != w2->u()->spec())
        fail(errc::usage, "combine2 requires witnesses on the same base and exponent sequences");
    real_number::ptr subject;
    switch (mode) {
    case combine_mode::sub: subject = make_diff(w->subject(), w2->subject()); break;
    case combine_mode::add: subject = make_sum(w->subject(), w2->subject()); break;
    case combine_mode::mul: subject = make_prod(w->subject(), w2->subject()); break;
    }
    rational k1 = w->kappa1() + w2->kappa1();
    rational k2 = half_of(min(w->kappa2(), w2->kappa2()));
    std::size_t vf = std::max(w->valid_from(), w2->valid_from());
    auto pa = w, pb = w2;
    return make_fn_witness(
        subject, w->base(), w->u(), std::move(k1), std::move(k2), vf,
        [pa, pb, mode](std::size_t n, const budget& bud) {
            witness_pair x = pa->pair(n, bud);
            witness_pair y = pb->pair(n, bud);
            integer b = x.b * y.b;
            integer a;
            switch (mode) {
            case combine_mode::sub: a = x.a * y.b - x.b * y.a; break;
            case combine_mode::add: a = x.a * y.b + x.b * y.a; break;
            case combine_mode::mul: a = x.a * y.a; break;
            }
            return witness_pair{std::move(b), std::move(a)};
        },
        [pa, pb](std::size_t n, const budget& bud) {
            return pa->denominator(n, bud) * pb->denominator(n, bud);
        });
}

approx_witness::ptr reciprocal(const approx_witness::ptr& w, const budget& bud) {
    real_number::ptr subject = make_reciprocal(w->subject(), bud);
    // raise valid_from until the nearest integers are nonzero
    std::size_t vf = w->valid_from();
    bool found = false;
    for (std::size_t n = vf; n < vf + bud.max_terms; ++n) {
        if (!w->pair(n, bud).a.is_zero()) {
            vf = n;
            found = true;
            break;
        }
    }
    if (!found)
        fail(errc::precision_exhausted, "a_n = 0 persists beyond the budget; cannot invert");
    auto parent = w;
    return make_fn_witness(subject, w->base(), w->u(), w->kappa1() * rational(2L),
                           half_of(w->kappa2()), vf, [parent](std::size_t n, const budget& b) {
                               witness_pair p = parent->pair(n, b);
                               if (p.a.is_zero())
                                   fail(errc::precision_exhausted,
                                        "a_n = 0 at n = " + std::to_string(n) +
                                            "; reciprocal pair undefined");
                               integer sgn(p.a.sign());
                               return witness_pair{p.a.abs(), sgn * p.b};
                           });
}

approx_witness::ptr normalize(const approx_witness::ptr& w) {
    if (w->kappa1() < rational(1L))
        fail(errc::usage, "normalization assumes kappa1 >= 1");
    auto parent = w;
    auto q = w->base();
    return make_fn_witness(w->subject(), w->base(), w->u(), w->kappa1(), half_of(w->kappa2()),
                           w->valid_from(), [parent, q](std::size_t n, const budget& bud) {
                               witness_pair p = parent->pair(n, bud);
                               integer qn = q->at(n);
                               if (!(p.b < qn)) return p;
                               integer c = integer::cdiv_q(qn, p.b);
                               return witness_pair{c * p.b, c * p.a};
                           });
}

approx_witness::ptr apply_rational_function(const approx_witness::ptr& w,
                                            const std::vector<integer>& p_coeffs,
                                            const std::vector<integer>& q_coeffs,
                                            const budget& bud) {
    auto degree = [](const std::vector<integer>& c) -> long {
        for (std::size_t i = c.size(); i > 0; --i)
            if (!c[i - 1].is_zero()) return long(i) - 1;
        return -1;
    };
    long dp = degree(p_coeffs), dq = degree(q_coeffs);
    if (dp < 0) fail(errc::usage, "zero numerator polynomial");
    if (dq < 0) fail(errc::usage, "zero denominator polynomial");
    if (dp == 0 && dq == 0) fail(errc::usage, "constant rational function rejected");
    if (dp > 16 || dq > 16) fail(errc::usage, "polynomial degree beyond supported range");

    // Horner evaluation in the witness algebra: the top two coefficients seed
    // c_d xi + c_{d-1}, then each step multiplies by xi and shifts
    auto horner = [&](const std::vector<integer>& c, long d) -> approx_witness::ptr {
        approx_witness::ptr acc =
            c[d].is_one() ? w : affine_q(w, c[d], integer(1L), affine_mode::scale);
        for (long k = d - 1; k >= 0; --k) {
            if (k < d - 1) acc = combine2(acc, w, combine_mode::mul);
            if (!c[k].is_zero()) acc = affine_q(acc, -c[k], integer(1L), affine_mode::shift);
        }
        return acc;
    };

    approx_witness::ptr result;
    if (dq == 0) {
        // P(xi)/c: scale the numerator witness
        result = horner(p_coeffs, dp);
        integer c = q_coeffs[0];
        if (!c.is_one()) {
            if (c.is_negative())
                result = affine_q(result, integer(-1L), -c, affine_mode::scale);
            else
                result = affine_q(result, integer(1L), c, affine_mode::scale);
        }
    } else {
        auto wq = reciprocal(horner(q_coeffs, dq), bud);
        if (dp == 0) {
            result = p_coeffs[0].is_one() ? wq
                                          : affine_q(wq, p_coeffs[0], integer(1L),
                                                     affine_mode::scale);
        } else {
            result = combine2(horner(p_coeffs, dp), wq, combine_mode::mul);
        }
    }
    // declared closure bound on the denominator growth
    rational declared = rational(integer(dp + dq + 1)) * w->kappa1();
    return make_fn_witness(result->subject(), result->base(), result->u(), declared,
                           result->kappa2(), result->valid_from(),
                           [result](std::size_t n, const budget& b) { return result->pair(n, b); });
}

approx_witness::ptr subsequence_witness(const approx_witness::ptr& w, long stride, long offset) {
    if (stride < 1 || stride + offset < 1 || (stride - 1) + offset < 0)
        fail(errc::usage, "subsequence witness needs sigma(n) >= max(n, 1)");
    auto base = make_arith_subseq(w->base(), stride, offset);
    std::size_t vf = 1;
    while (static_cast<long>(vf) * stride + offset < static_cast<long>(w->valid_from())) ++vf;
    auto parent = w;
    return make_fn_witness(
        w->subject(), base, w->u(), w->kappa1(), w->kappa2(), vf,
        [parent, stride, offset](std::size_t n, const budget& bud) {
            return parent->pair(static_cast<std::size_t>(stride * static_cast<long>(n) + offset),
                                bud);
        },
        [parent, stride, offset](std::size_t n, const budget& bud) {
            return parent->denominator(
                static_cast<std::size_t>(stride * static_cast<long>(n) + offset), bud);
        });
}

// ---------------------------------------------------------------------------
// verification

verify_record verify_at(const approx_witness& w, std::size_t n, const budget& bud) {
    verify_record rec;
    rec.n = n;
    rec.pr = w.pair(n, bud);
    integer qn = w.base()->at(n);
    rational un = w.u()->at(n);
    rational neg_exp = -(w.kappa2() * un); // target bound is q_n^neg_exp

    rec.size_ok = !(rec.pr.b < integer(1L)) &&
                  cmp_pow(rational(rec.pr.b), qn, w.kappa1()) != std::strong_ordering::greater;

    rational babs(rec.pr.b);
    interval lhs{rational(), rational()};
    bool decided = false;
    if (auto v = w.subject()->exact_value()) {
        rational exact = (babs * *v - rational(rec.pr.a)).abs();
        if (exact.is_zero())
            fail(errc::rational_hit, "b_n * xi equals a_n exactly at n = " + std::to_string(n) +
                                         "; the subject is rational");
        lhs = {exact, exact};
        rec.approx_ok = cmp_pow(exact, qn, neg_exp) != std::strong_ordering::greater;
        decided = true;
    } else {
        for (std::size_t k = 0; k <= bud.max_terms && !decided; ++k) {
            interval iv = w.subject()->enclose(k, bud);
            interval scaled = mul({babs, babs}, iv);
            interval centered = {scaled.lo - rational(rec.pr.a), scaled.hi - rational(rec.pr.a)};
            interval labs = abs(centered);
            if (!(labs.lo.sign() > 0)) continue; // zero not excluded yet
            if (cmp_pow(labs.hi, qn, neg_exp) != std::strong_ordering::greater) {
                rec.approx_ok = true;
                lhs = labs;
                decided = true;
            } else if (cmp_pow(labs.lo, qn, neg_exp) == std::strong_ordering::greater) {
                rec.approx_ok = false;
                lhs = labs;
                decided = true;
            }
        }
        if (!decided)
            fail(errc::precision_exhausted,
                 "enclosure straddles the bound at n = " + std::to_string(n));
    }

    rec.lhs_log2 = {log2_interval(lhs.lo, 64).lo, log2_interval(lhs.hi, 64).hi};
    if (qn.is_pow2_value()) {
        rec.rhs_log2 = neg_exp * rational(qn.pow2_exponent());
        rec.rhs_log2_exact = true;
    } else {
        rec.rhs_log2 = neg_exp * log2_interval(rational(qn), 64).lo;
        rec.rhs_log2_exact = false;
    }
    return rec;
}

verify_report verify_range(const approx_witness& w, std::size_t n_lo, std::size_t n_hi,
                           const budget& bud) {
    if (n_lo == 0 || n_hi < n_lo) fail(errc::usage, "bad verification range");
    verify_report rep;
    for (std::size_t n = n_lo; n <= n_hi; ++n) rep.records.push_back(verify_at(w, n, bud));
    rep.greedy_valid_from = n_lo;
    for (const auto& r : rep.records)
        if (!r.pass()) rep.greedy_valid_from = r.n + 1;
    rep.all_pass = rep.greedy_valid_from == n_lo;
    return rep;
}

} // namespace liouville
