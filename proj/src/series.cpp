// SPDX-License-Identifier: Apache-2.0

#include "liouville/series.hpp"

#include <algorithm>
#include <cctype>

namespace liouville {

// ---------------------------------------------------------------------------
// intervals

interval interval::intersect(const interval& o) const {
    interval r{max(lo, o.lo), min(hi, o.hi)};
    if (r.hi < r.lo)
        fail(errc::precision_exhausted, "enclosures drifted apart; refinement is inconsistent");
    return r;
}

interval add(const interval& a, const interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

interval sub(const interval& a, const interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

interval mul(const interval& a, const interval& b) {
    rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    rational lo = min(min(c1, c2), min(c3, c4));
    rational hi = max(max(c1, c2), max(c3, c4));
    return {std::move(lo), std::move(hi)};
}

interval invert(const interval& a) {
    if (a.contains_zero()) fail(errc::usage, "inverting an interval that straddles zero");
    return {a.hi.inverse(), a.lo.inverse()};
}

interval abs(const interval& a) {
    if (a.lo.sign() >= 0) return a;
    if (a.hi.sign() <= 0) return {-a.hi, -a.lo};
    return {rational(), max(-a.lo, a.hi)};
}

// ---------------------------------------------------------------------------
// real_number

interval real_number::enclose(std::size_t level, const budget& bud) const {
    std::lock_guard<std::mutex> lk(mu_);
    while (memo_.size() <= level) {
        interval iv = compute_enclosure(memo_.size(), bud);
        if (!memo_.empty()) iv = iv.intersect(memo_.back());
        memo_.push_back(std::move(iv));
    }
    return memo_[level];
}

// ---------------------------------------------------------------------------
// series_number

void series_number::extend_terms(std::size_t n, const budget&) const {
    // caller holds mu_
    while (terms_.size() < n) {
        std::size_t k = terms_.size() + 1;
        term t = compute_term(k, terms_);
        if (t.e < -1 || t.e > 1)
            fail(errc::growth_violation, spec() + ": series coefficients must stay in {-1,0,1}");
        if (t.d < integer(1L) || (k >= valid_from_ && t.d < integer(2L)))
            fail(errc::growth_violation, spec() + ": denominator below 2 at n = " + std::to_string(k));
        if (k >= 2 && k - 1 >= valid_from_) {
            // the 2/d_{n+1} tail bound needs at least doubling denominators
            if (terms_.back().d.mul_pow2(integer(1L)) > t.d)
                fail(errc::growth_violation,
                     spec() + ": denominators stop doubling at n = " + std::to_string(k));
        }
        terms_.push_back(std::move(t));
    }
}

series_number::term series_number::term_at(std::size_t n, const budget& bud) const {
    if (n == 0) fail(errc::usage, "series terms are 1-based");
    std::lock_guard<std::mutex> lk(mu_);
    extend_terms(n, bud);
    return terms_[n - 1];
}

namespace {

// 2/d_next, clamped outward to the precision of the running value so a
// gigantic denominator never forces gigantic arithmetic
rational clamped_tail(const integer& d_next, const rational& value) {
    integer tau = d_next.bit_length() - integer(2L); // 2/d <= 2^-tau
    integer cap = value.den().bit_length() * integer(2L) + integer(64L);
    if (cap < integer(4096L)) cap = integer(4096L);
    if (tau > cap && cap.fits_ulong()) return rational(integer(1L), integer::pow2(cap));
    return rational(integer(2L), d_next);
}

} // namespace

truncation series_number::truncate(std::size_t n, const budget& bud) const {
    std::lock_guard<std::mutex> lk(mu_);
    std::size_t need = std::max(n + 1, valid_from_);
    extend_terms(need, bud);
    if (partial_.empty()) partial_.push_back(rational()); // empty sum
    while (partial_.size() <= n) {
        const term& t = terms_[partial_.size() - 1]; // term index == partial_.size()
        if (t.e != 0) {
            integer bl = t.d.bit_length();
            if (!bl.fits_ulong() || bl.get_ulong() > bud.max_bits)
                fail(errc::precision_exhausted,
                     spec() + ": summing term " + std::to_string(partial_.size()) +
                         " exceeds the bit budget");
        }
        partial_.push_back(partial_.back() + rational(integer((long)t.e), t.d));
    }
    rational value = partial_[n];
    rational tail;
    if (n + 1 >= valid_from_) {
        tail = clamped_tail(terms_[n].d, value);
    } else {
        // pre-stabilization terms are summed outright before the uniform bound
        rational head;
        for (std::size_t m = n + 1; m < valid_from_; ++m) {
            const term& t = terms_[m - 1];
            if (t.e != 0) head += rational(integer(1L), t.d);
        }
        tail = head + clamped_tail(terms_[valid_from_ - 1].d, value);
    }
    return {std::move(value), std::move(tail), n};
}

interval series_number::compute_enclosure(std::size_t level, const budget& bud) const {
    std::size_t n = valid_from_ - 1 + level;
    if (n > bud.max_terms)
        fail(errc::precision_exhausted, spec() + ": refinement exceeded max-terms budget");
    truncation t = truncate(n, bud);
    return {t.value - t.tail_bound, t.value + t.tail_bound};
}

// ---------------------------------------------------------------------------
// concrete constructions

namespace {

class classic_series final : public series_number {
public:
    explicit classic_series(integer base)
        : series_number(1, irrationality::attested), base_(std::move(base)) {
        if (base_ < integer(2L)) fail(errc::usage, "classic base must be >= 2");
    }
    std::string spec() const override { return "classic:" + base_.to_string(); }

protected:
    term compute_term(std::size_t n, const std::vector<term>&) const override {
        return {1, base_.pow(integer::factorial((unsigned long)n))};
    }

private:
    integer base_;
};

class xi_t_series final : public series_number {
public:
    xi_t_series(rational t, exponent_sequence::ptr u)
        : series_number(1, irrationality::attested), t_(std::move(t)), u_(std::move(u)) {
        if (!(t_ > rational(1L))) fail(errc::usage, "xi_t requires t > 1");
        // duplicate leading terms are expected (f stays small); place valid_from
        // after the last observed flat-or-slow step
        std::size_t probe = u_->length() ? *u_->length() + 1 : 12;
        std::size_t vf = 1;
        rational f(1L);
        integer prev;
        integer t_bits = t_.num().bit_length();
        for (std::size_t n = 1; n <= probe; ++n) {
            if (n > 1) f *= u_->at(n - 1);
            if (rational(t_bits) * f > rational(integer(1L << 20))) break;
            integer d = floor_pow_rational(t_, f);
            if (d < integer(2L)) vf = n + 1; // floor(t^f) still 1
            else if (n > 1 && prev.mul_pow2(integer(1L)) > d) vf = n;
            prev = std::move(d);
        }
        set_valid_from(vf);
    }
    std::string spec() const override { return "xi-t:" + t_.to_string() + ":" + u_->spec(); }

protected:
    term compute_term(std::size_t n, const std::vector<term>&) const override {
        while (f_.size() < n)
            f_.push_back(f_.empty() ? rational(1L) : f_.back() * u_->at(f_.size()));
        return {1, floor_pow_rational(t_, f_[n - 1])};
    }

private:
    rational t_;
    exponent_sequence::ptr u_;
    mutable std::vector<rational> f_; // guarded by the term lock
};

class prop12_series final : public series_number {
public:
    prop12_series() : series_number(1, irrationality::attested), formula_(true) {}

    explicit prop12_series(std::vector<integer> lambda)
        : series_number(1, irrationality::attested), formula_(false), lambda_(std::move(lambda)) {
        if (lambda_.size() < 8)
            fail(errc::flag_violation, "explicit prop12 lambda needs at least 8 terms to attest growth");
        for (std::size_t i = 0; i < lambda_.size(); ++i) {
            if (lambda_[i] < integer(1L)) fail(errc::flag_violation, "lambda must be positive");
            if (i && lambda_[i] < lambda_[i - 1])
                fail(errc::flag_violation, "lambda must be nondecreasing");
        }
        if (!(lambda_.front() < lambda_.back()))
            fail(errc::flag_violation, "lambda must grow (lambda_n -> infinity not attested)");
        // lambda_n / n -> 0 attested by decay across the prefix
        rational first(lambda_.front(), integer(1L));
        rational last(lambda_.back(), integer((unsigned long)lambda_.size()));
        if (!(last + last <= first))
            fail(errc::flag_violation, "lambda_n/n decay not attested on the prefix");
    }

    std::string spec() const override {
        if (formula_) return "prop12:default";
        std::string s = "prop12:";
        for (std::size_t i = 0; i < lambda_.size(); ++i) {
            if (i) s += ',';
            s += lambda_[i].to_string();
        }
        return s;
    }

protected:
    term compute_term(std::size_t n, const std::vector<term>&) const override {
        integer lam;
        if (formula_)
            lam = integer((unsigned long)n).root_floor(2) + integer(1L);
        else if (n <= lambda_.size())
            lam = lambda_[n - 1];
        else
            fail(errc::prefix_exhausted, "prop12 lambda prefix exhausted");
        return {1, integer::pow2(integer::factorial(2 * (unsigned long)n - 1) * lam)};
    }

private:
    bool formula_;
    std::vector<integer> lambda_;
};

class prop13_series final : public series_number {
public:
    explicit prop13_series(const std::vector<integer>& lambda)
        : series_number(1, irrationality::attested), q_(make_prop13(lambda)) {
        set_valid_from(q_->valid_from());
    }
    std::string spec() const override { return q_->spec(); }

protected:
    term compute_term(std::size_t n, const std::vector<term>&) const override {
        return {1, q_->at(n)};
    }

private:
    base_sequence::ptr q_;
};

class rational_point final : public real_number {
public:
    explicit rational_point(rational v) : v_(std::move(v)) {}
    irrationality attestation() const noexcept override { return irrationality::rational_value; }
    std::optional<rational> exact_value() const override { return v_; }
    std::string spec() const override { return "rat:" + v_.to_string(); }

protected:
    interval compute_enclosure(std::size_t, const budget&) const override { return {v_, v_}; }

private:
    rational v_;
};

// certified digit prefix produced by the block split
class digit_series final : public series_number {
public:
    digit_series(std::vector<int> digits, std::string label, irrationality attest)
        : series_number(1, attest), digits_(std::move(digits)), label_(std::move(label)) {}
    std::string spec() const override { return label_; }

protected:
    term compute_term(std::size_t n, const std::vector<term>&) const override {
        // one sentinel past the certified range carries the tail denominator
        // 2^(n+1); its digit is never summed (truncation at depth+1 errors)
        if (n > digits_.size() + 1)
            fail(errc::precision_exhausted,
                 label_ + ": only " + std::to_string(digits_.size()) + " digits are certified");
        int e = n <= digits_.size() ? digits_[n - 1] : 0;
        return {e, integer::pow2(integer((unsigned long)n))};
    }

private:
    std::vector<int> digits_;
    std::string label_;
};

} // namespace

series_number::ptr make_classic(const integer& base) {
    return std::make_shared<classic_series>(base);
}

series_number::ptr make_xi_t(const rational& t, exponent_sequence::ptr u) {
    return std::make_shared<xi_t_series>(t, std::move(u));
}

series_number::ptr make_xi_prop12_default() { return std::make_shared<prop12_series>(); }

series_number::ptr make_xi_prop12(std::vector<integer> lambda) {
    return std::make_shared<prop12_series>(std::move(lambda));
}

series_number::ptr make_xi_prop13(const std::vector<integer>& lambda) {
    return std::make_shared<prop13_series>(lambda);
}

real_number::ptr make_rational_point(const rational& r) {
    return std::make_shared<rational_point>(r);
}

// ---------------------------------------------------------------------------
// thm3_series

thm3_series::thm3_series(std::string signs, base_sequence::ptr q, exponent_sequence::ptr u,
                         rational theta, const budget& bud)
    : series_number(1, irrationality::attested), signs_(std::move(signs)), q_(std::move(q)),
      u_(std::move(u)), theta_(std::move(theta)), bud_(bud) {
    if (signs_.empty() || signs_.find_first_not_of("+-") != std::string::npos)
        fail(errc::usage, "sign sequence must be a nonempty string over {+,-}");
    if (!(theta_ > rational())) fail(errc::usage, "theta must be positive");
    extend_blocks(2, bud_); // the criterion must fire at least once past n = 1
}

void thm3_series::extend_blocks(std::size_t l, const budget& bud) const {
    std::lock_guard<std::mutex> lk(blocks_mu_);
    while (n_l_.size() < l) {
        if (n_l_.empty()) {
            n_l_.push_back(1); // q_1 opens the block list unconditionally
            continue;
        }
        std::size_t n = n_l_.back();
        for (std::size_t steps = 0;; ++steps) {
            if (steps >= bud.max_scan)
                fail(errc::criterion_not_met,
                     spec() + ": no index with q_n > q_{n-1}^(theta u_{n-1}) within budget");
            ++n;
            try {
                rational e = theta_ * u_->at(n - 1);
                if (cmp_pow(rational(q_->at(n)), q_->at(n - 1), e) ==
                    std::strong_ordering::greater) {
                    n_l_.push_back(n);
                    break;
                }
            } catch (const error& err) {
                if (err.code() == errc::prefix_exhausted)
                    fail(errc::criterion_not_met,
                         spec() + ": sequence exhausted before the criterion fired");
                throw;
            }
        }
    }
}

std::size_t thm3_series::block_index(std::size_t l, const budget& bud) const {
    if (l == 0) fail(errc::usage, "block indices are 1-based");
    extend_blocks(l, bud);
    std::lock_guard<std::mutex> lk(blocks_mu_);
    return n_l_[l - 1];
}

integer thm3_series::block_exponent(std::size_t l, const budget& bud) const {
    return q_->at(block_index(l, bud)).bit_length() - integer(1L);
}

int thm3_series::sign_at(std::size_t l) const {
    if (l == 0) fail(errc::usage, "block indices are 1-based");
    return signs_[(l - 1) % signs_.size()] == '+' ? 1 : -1;
}

series_number::term thm3_series::compute_term(std::size_t n, const std::vector<term>&) const {
    return {sign_at(n), integer::pow2(block_exponent(n, bud_))};
}

std::string thm3_series::spec() const {
    return "thm3:" + signs_ + ":" + q_->spec() + ":" + theta_.to_string();
}

std::shared_ptr<const thm3_series> make_xi_theorem3(std::string signs, base_sequence::ptr q,
                                                    exponent_sequence::ptr u, rational theta,
                                                    const budget& bud) {
    return std::make_shared<thm3_series>(std::move(signs), std::move(q), std::move(u),
                                         std::move(theta), bud);
}

// ---------------------------------------------------------------------------
// prop14_series

prop14_series::prop14_series(base_sequence::ptr q, exponent_sequence::ptr u, const budget& bud)
    : series_number(1, irrationality::attested), q_(std::move(q)), u_(std::move(u)) {
    if (!u_->step_ge_one() || !u_->sqrt_dominated())
        fail(errc::flag_violation,
             "prop14 needs sqrt(u_{n+1}) <= u_n + 1 <= u_{n+1} attested");
    // the first odd term repeats q_2 whenever floor(sqrt(u_3)) = 1
    std::size_t vf = 1;
    integer prev;
    for (std::size_t n = 1; n <= 8; ++n) {
        term t;
        try {
            t = compute_term(n, {});
        } catch (const error& e) {
            if (e.code() == errc::prefix_exhausted) break;
            throw;
        }
        if (n > 1 && prev.mul_pow2(integer(1L)) > t.d) vf = n;
        prev = t.d;
        (void)bud;
    }
    set_valid_from(vf);
}

series_number::term prop14_series::compute_term(std::size_t n, const std::vector<term>&) const {
    if (n >= 2) {
        // the construction stands on q_{m+1} > q_m^(u_m); check as we go
        if (cmp_pow(rational(q_->at(n)), q_->at(n - 1), u_->at(n - 1)) !=
            std::strong_ordering::greater)
            fail(errc::growth_violation,
                 spec() + ": q_{n+1} > q_n^(u_n) fails at n = " + std::to_string(n - 1));
    }
    if (n == 1 || n % 2 == 0) return {1, q_->at(n)};
    integer root = u_->at(n).floor().root_floor(2); // floor(sqrt(u_n))
    return {1, q_->at(n - 1).pow(root)};
}

integer prop14_series::product_denominator(std::size_t n, const budget& bud) const {
    integer b(1L);
    for (std::size_t m = 1; m <= n; ++m) b *= term_at(m, bud).d;
    return b;
}

integer prop14_series::product_numerator(std::size_t n, const budget& bud) const {
    integer b = product_denominator(n, bud);
    integer a;
    for (std::size_t m = 1; m <= n; ++m) a += integer::fdiv_q(b, term_at(m, bud).d);
    return a;
}

std::string prop14_series::spec() const { return "prop14:" + q_->spec() + ":" + u_->spec(); }

std::shared_ptr<const prop14_series> make_xi_prop14(base_sequence::ptr q, exponent_sequence::ptr u,
                                                    const budget& bud) {
    return std::make_shared<prop14_series>(std::move(q), std::move(u), bud);
}

// ---------------------------------------------------------------------------
// composites

namespace {

irrationality combine_attestation(irrationality a, irrationality b) {
    if (a == irrationality::rational_value && b == irrationality::rational_value)
        return irrationality::rational_value;
    if (a == irrationality::rational_value) return b;
    if (b == irrationality::rational_value) return a;
    // irrational (+,-,*) irrational can cancel to a rational; detected at
    // verification time, never assumed away
    return irrationality::heuristic;
}

class binary_number final : public real_number {
public:
    enum class op { add, sub, mul };
    binary_number(op o, real_number::ptr a, real_number::ptr b)
        : op_(o), a_(std::move(a)), b_(std::move(b)) {}

    irrationality attestation() const noexcept override {
        return combine_attestation(a_->attestation(), b_->attestation());
    }
    std::optional<rational> exact_value() const override {
        auto va = a_->exact_value();
        auto vb = b_->exact_value();
        if (!va || !vb) return std::nullopt;
        switch (op_) {
        case op::add: return *va + *vb;
        case op::sub: return *va - *vb;
        case op::mul: return *va * *vb;
        }
        return std::nullopt;
    }
    std::string spec() const override {
        const char* name = op_ == op::add ? "add" : op_ == op::sub ? "sub" : "mul";
        return std::string(name) + "(" + a_->spec() + "," + b_->spec() + ")";
    }

protected:
    interval compute_enclosure(std::size_t level, const budget& bud) const override {
        interval ia = a_->enclose(level, bud);
        interval ib = b_->enclose(level, bud);
        switch (op_) {
        case op::add: return add(ia, ib);
        case op::sub: return sub(ia, ib);
        case op::mul: return mul(ia, ib);
        }
        fail(errc::usage, "unreachable");
    }

private:
    op op_;
    real_number::ptr a_, b_;
};

class affine_number final : public real_number {
public:
    // value = x - c (shift) or x * c (scale)
    affine_number(bool is_scale, real_number::ptr x, rational c)
        : scale_(is_scale), x_(std::move(x)), c_(std::move(c)) {
        if (scale_ && c_.is_zero()) fail(errc::usage, "scaling by zero");
    }
    irrationality attestation() const noexcept override { return x_->attestation(); }
    std::optional<rational> exact_value() const override {
        auto v = x_->exact_value();
        if (!v) return std::nullopt;
        return scale_ ? *v * c_ : *v - c_;
    }
    std::string spec() const override {
        return std::string(scale_ ? "scale" : "shift") + "(" + x_->spec() + "," + c_.to_string() +
               ")";
    }

protected:
    interval compute_enclosure(std::size_t level, const budget& bud) const override {
        interval ix = x_->enclose(level, bud);
        if (!scale_) return {ix.lo - c_, ix.hi - c_};
        interval ic{c_, c_};
        return mul(ix, ic);
    }

private:
    bool scale_;
    real_number::ptr x_;
    rational c_;
};

class recip_number final : public real_number {
public:
    recip_number(real_number::ptr x, const budget& bud) : x_(std::move(x)) {
        if (auto v = x_->exact_value()) {
            if (v->is_zero()) fail(errc::usage, "reciprocal of zero");
            base_level_ = 0;
            return;
        }
        for (std::size_t k = 0;; ++k) {
            if (k > bud.max_terms)
                fail(errc::precision_exhausted,
                     x_->spec() + ": enclosure still contains zero at every budgeted level");
            if (!x_->enclose(k, bud).contains_zero()) {
                base_level_ = k;
                break;
            }
        }
    }
    irrationality attestation() const noexcept override { return x_->attestation(); }
    std::optional<rational> exact_value() const override {
        auto v = x_->exact_value();
        if (!v) return std::nullopt;
        return v->inverse();
    }
    std::string spec() const override { return "recip(" + x_->spec() + ")"; }

protected:
    interval compute_enclosure(std::size_t level, const budget& bud) const override {
        return invert(x_->enclose(base_level_ + level, bud));
    }

private:
    real_number::ptr x_;
    std::size_t base_level_ = 0;
};

} // namespace

real_number::ptr make_sum(real_number::ptr a, real_number::ptr b) {
    return std::make_shared<binary_number>(binary_number::op::add, std::move(a), std::move(b));
}

real_number::ptr make_diff(real_number::ptr a, real_number::ptr b) {
    return std::make_shared<binary_number>(binary_number::op::sub, std::move(a), std::move(b));
}

real_number::ptr make_prod(real_number::ptr a, real_number::ptr b) {
    return std::make_shared<binary_number>(binary_number::op::mul, std::move(a), std::move(b));
}

real_number::ptr make_shift(real_number::ptr x, const rational& r_over_s) {
    return std::make_shared<affine_number>(false, std::move(x), r_over_s);
}

real_number::ptr make_scale(real_number::ptr x, const rational& r_over_s) {
    return std::make_shared<affine_number>(true, std::move(x), r_over_s);
}

real_number::ptr make_reciprocal(real_number::ptr x, const budget& bud) {
    return std::make_shared<recip_number>(std::move(x), bud);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

std::vector<std::string> split_top(const std::string& s, char delim) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == delim && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string join_range(const std::vector<std::string>& v, std::size_t lo, std::size_t hi,
                       char delim) {
    std::string s;
    for (std::size_t i = lo; i < hi; ++i) {
        if (i > lo) s += delim;
        s += v[i];
    }
    return s;
}

} // namespace

real_number::ptr parse_number(const std::string& spec) {
    if (spec.rfind("classic:", 0) == 0)
        return make_classic(integer::from_string(spec.substr(8)));
    if (spec.rfind("rat:", 0) == 0) return make_rational_point(rational::from_string(spec.substr(4)));
    if (spec.rfind("xi-t:", 0) == 0) {
        auto rest = spec.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos) fail(errc::usage, "xi-t spec needs t and a u-spec");
        return make_xi_t(rational::from_string(rest.substr(0, colon)),
                         exponent_sequence::parse(rest.substr(colon + 1)));
    }
    if (spec.rfind("thm3:", 0) == 0) {
        auto rest = spec.substr(5);
        auto first = rest.find(':');
        auto last = rest.rfind(':');
        if (first == std::string::npos || last == first)
            fail(errc::usage, "thm3 spec needs signs:q-spec:theta");
        return make_xi_theorem3(rest.substr(0, first),
                                parse_base_sequence(rest.substr(first + 1, last - first - 1)),
                                exponent_sequence::identity(),
                                rational::from_string(rest.substr(last + 1)));
    }
    if (spec.rfind("prop12:", 0) == 0) {
        auto rest = spec.substr(7);
        if (rest == "default") return make_xi_prop12_default();
        std::vector<integer> lambda;
        for (const auto& part : split_top(rest, ',')) lambda.push_back(integer::from_string(part));
        return make_xi_prop12(std::move(lambda));
    }
    if (spec.rfind("prop13:", 0) == 0) {
        std::vector<integer> lambda;
        for (const auto& part : split_top(spec.substr(7), ','))
            lambda.push_back(integer::from_string(part));
        return make_xi_prop13(lambda);
    }
    if (spec.rfind("prop14:", 0) == 0) {
        auto parts = split_top(spec.substr(7), ':');
        // the q-spec may itself contain colons; try every split point
        for (std::size_t i = 1; i < parts.size(); ++i) {
            try {
                auto q = parse_base_sequence(join_range(parts, 0, i, ':'));
                auto u = exponent_sequence::parse(join_range(parts, i, parts.size(), ':'));
                return make_xi_prop14(std::move(q), std::move(u));
            } catch (const error& e) {
                if (e.code() != errc::usage) throw;
            }
        }
        fail(errc::usage, "prop14 spec needs q-spec:u-spec");
    }
    // call forms; number specs can contain top-level commas (lambda lists),
    // so two-argument forms retry every split point
    auto open = spec.find('(');
    if (open != std::string::npos && spec.back() == ')') {
        std::string head = spec.substr(0, open);
        auto args = split_top(spec.substr(open + 1, spec.size() - open - 2), ',');
        auto parse_two = [&](auto&& make) -> real_number::ptr {
            for (std::size_t i = 1; i < args.size(); ++i) {
                try {
                    return make(parse_number(join_range(args, 0, i, ',')),
                                parse_number(join_range(args, i, args.size(), ',')));
                } catch (const error& e) {
                    if (e.code() != errc::usage) throw;
                }
            }
            fail(errc::usage, "cannot split arguments of '" + spec + "'");
        };
        if (head == "add" && args.size() >= 2)
            return parse_two([](real_number::ptr a, real_number::ptr b) { return make_sum(a, b); });
        if (head == "sub" && args.size() >= 2)
            return parse_two(
                [](real_number::ptr a, real_number::ptr b) { return make_diff(a, b); });
        if (head == "mul" && args.size() >= 2)
            return parse_two(
                [](real_number::ptr a, real_number::ptr b) { return make_prod(a, b); });
        if (head == "recip" && args.size() >= 1)
            return make_reciprocal(parse_number(join_range(args, 0, args.size(), ',')));
        if ((head == "shift" || head == "scale") && args.size() >= 2) {
            rational c = rational::from_string(args.back());
            auto x = parse_number(join_range(args, 0, args.size() - 1, ','));
            return head == "shift" ? make_shift(std::move(x), c) : make_scale(std::move(x), c);
        }
    }
    fail(errc::usage, "unknown number spec: '" + spec + "'");
}

// ---------------------------------------------------------------------------
// digit split

std::vector<integer> erdos_factorial_lambda(std::size_t count) {
    std::vector<integer> out;
    out.push_back(integer(1L)); // lambda_0 = 1 = 1!; the [1,1) block is empty
    for (std::size_t s = 1; s <= count; ++s) out.push_back(integer::factorial((unsigned long)s));
    return out;
}

namespace {

void validate_split_lambda(const std::vector<integer>& lambda) {
    if (lambda.size() < 3) fail(errc::usage, "split needs at least two lambda blocks");
    if (!(lambda[0] == integer(1L))) fail(errc::usage, "lambda_0 must be 1");
    for (std::size_t i = 1; i < lambda.size(); ++i) {
        bool first_pair = i == 1;
        if (lambda[i] < lambda[i - 1] || (!first_pair && lambda[i] == lambda[i - 1]))
            fail(errc::usage, "lambda must be strictly increasing (an empty first block aside)");
    }
}

// 0-based index of the block [lambda_j, lambda_{j+1}) containing position p
std::size_t block_of(const std::vector<integer>& lambda, std::size_t p) {
    integer pos((unsigned long)p);
    for (std::size_t j = 0; j + 1 < lambda.size(); ++j)
        if (!(pos < lambda[j]) && pos < lambda[j + 1]) return j;
    fail(errc::prefix_exhausted, "digit position beyond the lambda blocks");
}

} // namespace

erdos_split_result erdos_split(const real_number& x, const std::vector<integer>& lambda,
                               std::size_t depth, const budget& bud) {
    validate_split_lambda(lambda);
    if (depth == 0) fail(errc::usage, "depth must be >= 1");
    if (!(integer((unsigned long)depth) < lambda.back()))
        fail(errc::prefix_exhausted, "depth exceeds the lambda block coverage");

    // certified integer floor(x * 2^depth), which carries all depth digits
    integer shifted;
    bool have = false;
    if (auto v = x.exact_value()) {
        if (!(v->sign() > 0 && *v < rational(1L))) fail(errc::usage, "split requires 0 < x < 1");
        shifted = (*v * rational(integer::pow2(integer((unsigned long)depth)))).floor();
        have = true;
    } else {
        rational scale(integer::pow2(integer((unsigned long)depth)));
        bool in_unit = false;
        for (std::size_t k = 0; k <= bud.max_terms; ++k) {
            interval iv = x.enclose(k, bud);
            if (!(iv.lo.sign() > 0 && iv.hi < rational(1L))) continue;
            in_unit = true;
            integer flo = (iv.lo * scale).floor();
            integer fhi = (iv.hi * scale).floor();
            if (flo == fhi) {
                shifted = std::move(flo);
                have = true;
                break;
            }
        }
        if (!have && !in_unit) fail(errc::usage, "split requires 0 < x < 1");
    }
    if (!have)
        fail(errc::precision_exhausted, "depth exceeds the certified digits of " + x.spec());

    mpz_class bits = shifted.dense_abs();
    std::vector<int> digits(depth), dxi(depth), deta(depth);
    for (std::size_t p = 1; p <= depth; ++p) {
        int bit = mpz_tstbit(bits.get_mpz_t(), (mp_bitcnt_t)(depth - p));
        digits[p - 1] = bit;
        if (block_of(lambda, p) % 2 == 0)
            dxi[p - 1] = bit;
        else
            deta[p - 1] = bit;
    }

    irrationality attest = x.attestation() == irrationality::attested ? irrationality::heuristic
                                                                      : x.attestation();
    erdos_split_result out;
    out.xi = std::make_shared<digit_series>(std::move(dxi), "split-even(" + x.spec() + ")", attest);
    out.eta =
        std::make_shared<digit_series>(std::move(deta), "split-odd(" + x.spec() + ")", attest);
    out.digits = std::move(digits);
    return out;
}

bool digit_run_audit(const series_number& part, const std::vector<integer>& lambda,
                     std::size_t depth, const budget& bud) {
    validate_split_lambda(lambda);
    std::optional<std::size_t> prev;
    for (std::size_t p = 1; p <= depth; ++p) {
        if (part.term_at(p, bud).e == 0) continue;
        if (prev) {
            std::size_t jp = block_of(lambda, *prev);
            std::size_t jq = block_of(lambda, p);
            if (jq > jp && jp + 2 < lambda.size()) {
                // crossing the foreign block [lambda_{jp+1}, lambda_{jp+2}):
                // 2^p >= (2^prev)^(ratio - 1) for its boundary ratio
                rational ratio(lambda[jp + 2], lambda[jp + 1]);
                rational needed = rational(integer((unsigned long)*prev)) * (ratio - rational(1L));
                if (rational(integer((unsigned long)p)) < needed) return false;
            }
        }
        prev = p;
    }
    return true;
}

} // namespace liouville
