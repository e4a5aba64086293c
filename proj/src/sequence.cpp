// SPDX-License-Identifier: Apache-2.0

#include "liouville/sequence.hpp"

#include <algorithm>

namespace liouville {

namespace {

std::vector<std::string> split_top_level(const std::string& s, char delim) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
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

// "head(arg1,arg2,...)" -> {head, args}; empty head when s is not a call form
std::pair<std::string, std::vector<std::string>> parse_call(const std::string& s) {
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') return {"", {}};
    std::string head = s.substr(0, open);
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    return {head, split_top_level(inner, ',')};
}

std::vector<rational> parse_rational_list(const std::string& s) {
    std::vector<rational> out;
    for (const auto& item : split_top_level(s, ','))
        out.push_back(rational::from_string(item));
    return out;
}

long safe_stol(const std::string& s) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) fail(errc::usage, "not an integer: '" + s + "'");
        return v;
    } catch (const std::exception&) {
        fail(errc::usage, "not an integer: '" + s + "'");
    }
}

// floor(n^tau) for 0 < tau < 1
integer floor_npow_tau(std::size_t n, const rational& tau) {
    if (!tau.den().fits_ulong()) fail(errc::precision_exhausted, "tau denominator too large");
    return integer((unsigned long)n).pow(tau.num()).root_floor(tau.den().get_ulong());
}

} // namespace

// ---------------------------------------------------------------------------
// exponent_sequence

exponent_sequence::ptr exponent_sequence::identity() {
    auto p = std::shared_ptr<exponent_sequence>(new exponent_sequence());
    p->kind_ = kind::identity;
    return p;
}

exponent_sequence::ptr exponent_sequence::explicit_list(std::vector<rational> terms) {
    if (terms.empty()) fail(errc::usage, "empty exponent sequence");
    auto p = std::shared_ptr<exponent_sequence>(new exponent_sequence());
    p->kind_ = kind::explicit_list;
    p->terms_ = std::move(terms);
    for (std::size_t i = 0; i < p->terms_.size(); ++i) {
        const rational& u = p->terms_[i];
        if (u.sign() <= 0) fail(errc::flag_violation, "exponent sequence must stay positive");
        if (i == 0) continue;
        const rational& prev = p->terms_[i - 1];
        if (!(prev < u)) p->increasing_ = false;
        if (u - prev < rational(1L)) p->step_ge_one_ = false;
        rational bound = prev + rational(1L);
        if (u > bound * bound) p->sqrt_dominated_ = false;
    }
    return p;
}

exponent_sequence::ptr exponent_sequence::affine(const rational& slope, const rational& offset) {
    auto p = std::shared_ptr<exponent_sequence>(new exponent_sequence());
    p->kind_ = kind::affine;
    p->slope_ = slope;
    p->offset_ = offset;
    if (slope + offset <= rational()) fail(errc::flag_violation, "affine exponent sequence must start positive");
    if (slope.sign() <= 0) fail(errc::flag_violation, "affine exponent sequence must increase");
    p->increasing_ = true;
    p->step_ge_one_ = slope >= rational(1L);
    // sqrt(u_{n+1}) <= u_n + 1 <=> u_{n+1} <= (u_n+1)^2; with positive slope the
    // quadratic side wins for every n once it wins at n = 1
    rational u1 = slope + offset, u2 = slope + slope + offset;
    rational b = u1 + rational(1L);
    p->sqrt_dominated_ = u2 <= b * b;
    return p;
}

rational exponent_sequence::at(std::size_t n) const {
    if (n == 0) fail(errc::usage, "exponent sequences are 1-based");
    switch (kind_) {
    case kind::identity: return rational(integer((unsigned long)n));
    case kind::explicit_list:
        if (n > terms_.size())
            fail(errc::prefix_exhausted,
                 "exponent sequence has only " + std::to_string(terms_.size()) + " terms");
        return terms_[n - 1];
    case kind::affine: return slope_ * rational(integer((unsigned long)n)) + offset_;
    }
    fail(errc::usage, "unreachable");
}

std::optional<std::size_t> exponent_sequence::length() const noexcept {
    if (kind_ == kind::explicit_list) return terms_.size();
    return std::nullopt;
}

std::string exponent_sequence::spec() const {
    switch (kind_) {
    case kind::identity: return "identity";
    case kind::explicit_list: {
        std::string s = "explicit:";
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) s += ',';
            s += terms_[i].to_string();
        }
        return s;
    }
    case kind::affine: return "affine:" + slope_.to_string() + ":" + offset_.to_string();
    }
    return "";
}

exponent_sequence::ptr exponent_sequence::parse(const std::string& spec) {
    if (spec == "identity") return identity();
    if (spec.rfind("explicit:", 0) == 0)
        return explicit_list(parse_rational_list(spec.substr(9)));
    if (spec.rfind("affine:", 0) == 0) {
        auto parts = split_top_level(spec.substr(7), ':');
        if (parts.size() != 2) fail(errc::usage, "affine u-spec needs slope:offset");
        return affine(rational::from_string(parts[0]), rational::from_string(parts[1]));
    }
    fail(errc::usage, "unknown u-spec: '" + spec + "'");
}

// ---------------------------------------------------------------------------
// base_sequence

integer base_sequence::at(std::size_t n) const {
    if (n == 0) fail(errc::usage, "base sequences are 1-based");
    std::lock_guard<std::mutex> lk(mu_);
    while (memo_.size() < n) {
        std::size_t k = memo_.size() + 1;
        integer v = compute(k, memo_);
        if (v < integer(2L))
            fail(errc::flag_violation, spec() + ": term " + std::to_string(k) + " is below 2");
        if (k >= 2 && k - 1 >= valid_from_ && !(memo_.back() < v))
            fail(errc::monotonicity_violation,
                 spec() + ": not strictly increasing at n = " + std::to_string(k));
        memo_.push_back(std::move(v));
    }
    return memo_[n - 1];
}

base_sequence::prov base_sequence::merge_provenance(std::size_t) const {
    fail(errc::usage, "provenance is only tracked by merge sequences");
}

namespace {

class factorial_pow2_seq final : public base_sequence {
public:
    factorial_pow2_seq() : base_sequence(1) {}
    std::string spec() const override { return "factorial-pow2"; }

protected:
    integer compute(std::size_t n, const std::vector<integer>&) const override {
        return integer::pow2(integer::factorial((unsigned long)n));
    }
};

class tau_factorial_seq final : public base_sequence {
public:
    explicit tau_factorial_seq(rational tau) : base_sequence(1), tau_(std::move(tau)) {
        if (!(rational() < tau_ && tau_ < rational(1L)))
            fail(errc::usage, "tau must satisfy 0 < tau < 1");
    }
    std::string spec() const override { return "tau:" + tau_.to_string(); }

protected:
    integer compute(std::size_t n, const std::vector<integer>&) const override {
        return integer::pow2(integer::factorial((unsigned long)n) * floor_npow_tau(n, tau_));
    }

private:
    rational tau_;
};

class pow_of_f_seq final : public base_sequence {
public:
    explicit pow_of_f_seq(exponent_sequence::ptr u) : base_sequence(1), u_(std::move(u)) {
        // probe the early range once to place valid_from after any flat floor(2^f) terms
        std::size_t probe = u_->length() ? *u_->length() + 1 : 16;
        std::size_t vf = 1;
        integer prev;
        rational f(1L);
        for (std::size_t n = 1; n <= probe; ++n) {
            if (n > 1) f *= u_->at(n - 1);
            integer v = floor_pow_rational(rational(2L), f);
            if (n > 1 && !(prev < v)) vf = n;
            prev = std::move(v);
        }
        set_valid_from(vf);
    }
    std::optional<std::size_t> length() const noexcept override {
        if (auto l = u_->length()) return *l + 1;
        return std::nullopt;
    }
    std::string spec() const override { return "pow-of-f:" + u_->spec(); }

protected:
    integer compute(std::size_t n, const std::vector<integer>&) const override {
        while (f_.size() < n) {
            if (f_.empty())
                f_.push_back(rational(1L)); // f(1) = 1
            else
                f_.push_back(f_.back() * u_->at(f_.size()));
        }
        return floor_pow_rational(rational(2L), f_[n - 1]);
    }

private:
    exponent_sequence::ptr u_;
    mutable std::vector<rational> f_; // guarded by the memo lock
};

class explicit_seq final : public base_sequence {
public:
    explicit explicit_seq(std::vector<integer> terms) : base_sequence(1), terms_(std::move(terms)) {
        if (terms_.empty()) fail(errc::usage, "empty explicit sequence");
    }
    std::optional<std::size_t> length() const noexcept override { return terms_.size(); }
    std::string spec() const override {
        std::string s = "explicit:";
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) s += ',';
            s += terms_[i].to_string();
        }
        return s;
    }

protected:
    integer compute(std::size_t n, const std::vector<integer>&) const override {
        if (n > terms_.size())
            fail(errc::prefix_exhausted,
                 spec() + " has only " + std::to_string(terms_.size()) + " terms");
        return terms_[n - 1];
    }

private:
    std::vector<integer> terms_;
};

class merge_seq final : public base_sequence {
public:
    merge_seq(base_sequence::ptr a, base_sequence::ptr b)
        : base_sequence(1), a_(std::move(a)), b_(std::move(b)) {}
    std::string spec() const override { return "merge(" + a_->spec() + "," + b_->spec() + ")"; }

    prov merge_provenance(std::size_t n) const override {
        at(n); // make sure the term exists
        std::lock_guard<std::mutex> lk(prov_mu_);
        return prov_[n - 1];
    }

protected:
    integer compute(std::size_t, const std::vector<integer>&) const override {
        auto next = [](const base_sequence& s, std::size_t i) -> std::optional<integer> {
            if (auto l = s.length(); l && i > *l) return std::nullopt;
            try {
                return s.at(i);
            } catch (const error& e) {
                if (e.code() == errc::prefix_exhausted) return std::nullopt;
                throw;
            }
        };
        std::optional<integer> va = next(*a_, ia_ + 1);
        std::optional<integer> vb = next(*b_, ib_ + 1);
        if (!va && !vb) fail(errc::prefix_exhausted, spec() + ": both sources exhausted");
        prov p = prov::both;
        if (va && vb) {
            auto c = *va <=> *vb;
            p = c == std::strong_ordering::less      ? prov::left
                : c == std::strong_ordering::greater ? prov::right
                                                     : prov::both;
        } else {
            p = va ? prov::left : prov::right;
        }
        if (p != prov::right) ++ia_;
        if (p != prov::left) ++ib_;
        {
            std::lock_guard<std::mutex> lk(prov_mu_);
            prov_.push_back(p);
        }
        return p == prov::right ? std::move(*vb) : std::move(*va);
    }

private:
    base_sequence::ptr a_, b_;
    mutable std::size_t ia_ = 0, ib_ = 0; // consumed prefix lengths, under memo lock
    mutable std::mutex prov_mu_;
    mutable std::vector<prov> prov_;
};

class arith_subseq final : public base_sequence {
public:
    arith_subseq(base_sequence::ptr parent, long stride, long offset)
        : base_sequence(1), parent_(std::move(parent)), stride_(stride), offset_(offset) {
        if (stride < 1 || stride + offset < 1)
            fail(errc::usage, "subsequence map must produce indices >= 1");
        // strict from the first child index mapped at or past the parent's valid_from
        long vf_p = static_cast<long>(parent_->valid_from());
        long n0 = (vf_p - offset + stride - 1) / stride;
        set_valid_from(static_cast<std::size_t>(std::max(1L, n0)));
    }
    std::optional<std::size_t> length() const noexcept override {
        if (auto l = parent_->length()) {
            long hi = (static_cast<long>(*l) - offset_) / stride_;
            return hi < 0 ? 0 : static_cast<std::size_t>(hi);
        }
        return std::nullopt;
    }
    std::string spec() const override {
        if (stride_ == 2 && offset_ == 0) return "even(" + parent_->spec() + ")";
        if (stride_ == 2 && offset_ == -1) return "odd(" + parent_->spec() + ")";
        return "arith(" + parent_->spec() + "," + std::to_string(stride_) + "," +
               std::to_string(offset_) + ")";
    }

protected:
    integer compute(std::size_t n, const std::vector<integer>&) const override {
        return parent_->at(static_cast<std::size_t>(stride_ * static_cast<long>(n) + offset_));
    }

private:
    base_sequence::ptr parent_;
    long stride_, offset_;
};

class pick_seq final : public base_sequence {
public:
    pick_seq(base_sequence::ptr parent, std::vector<std::size_t> indices)
        : base_sequence(1), parent_(std::move(parent)), idx_(std::move(indices)) {
        if (idx_.empty()) fail(errc::usage, "empty index list");
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (idx_[i] < 1 || (i && idx_[i] <= idx_[i - 1]))
                fail(errc::usage, "pick indices must be strictly increasing and >= 1");
        }
        std::size_t vf = 1;
        while (vf <= idx_.size() && idx_[vf - 1] < parent_->valid_from()) ++vf;
        set_valid_from(std::min(vf, idx_.size()));
    }
    std::optional<std::size_t> length() const noexcept override { return idx_.size(); }
    std::string spec() const override {
        std::string s = "pick(" + parent_->spec();
        for (auto i : idx_) s += "," + std::to_string(i);
        return s + ")";
    }

protected:
    integer compute(std::size_t n, const std::vector<integer>&) const override {
        if (n > idx_.size()) fail(errc::prefix_exhausted, "pick list exhausted");
        return parent_->at(idx_[n - 1]);
    }

private:
    base_sequence::ptr parent_;
    std::vector<std::size_t> idx_;
};

class lemma8_seq final : public base_sequence {
public:
    lemma8_seq(base_sequence::ptr a, base_sequence::ptr b, budget bud)
        : base_sequence(1), a_(std::move(a)), b_(std::move(b)), bud_(bud) {}
    std::string spec() const override { return "lemma8(" + a_->spec() + "," + b_->spec() + ")"; }

protected:
    integer compute(std::size_t n, const std::vector<integer>& prev) const override {
        if (n == 1) return b_->at(++ib_);
        // q_n: from a for even n, from b for odd n, least term >= q_{n-1}^{n-1}
        integer thr = prev.back().pow(integer((unsigned long)(n - 1)));
        const base_sequence& src = (n % 2 == 0) ? *a_ : *b_;
        std::size_t& ptr = (n % 2 == 0) ? ia_ : ib_;
        for (std::size_t steps = 0; steps < bud_.max_scan; ++steps) {
            integer v = src.at(ptr + 1);
            ++ptr;
            if (!(v < thr)) return v;
        }
        fail(errc::prefix_exhausted,
             spec() + ": no source term reached the growth threshold within budget");
    }

private:
    base_sequence::ptr a_, b_;
    budget bud_;
    mutable std::size_t ia_ = 0, ib_ = 0; // under the memo lock
};

class prop11_pair_seq final : public base_sequence {
public:
    prop11_pair_seq(rational tau1, rational tau2)
        : base_sequence(1), tau1_(std::move(tau1)), tau2_(std::move(tau2)) {
        if (!(rational() < tau1_ && tau1_ < tau2_ && tau2_ < rational(1L)))
            fail(errc::usage, "prop11 needs 0 < tau1 < tau2 < 1");
        // flats occur exactly while floor(k^tau1) = floor(k^tau2); once the floors
        // differ by 3 the gap k^tau2 - k^tau1 >= 2 keeps them apart for good
        std::size_t last_flat = 0;
        bool certified = false;
        for (std::size_t k = 1; k <= 100000; ++k) {
            integer f1 = floor_npow_tau(k, tau1_);
            integer f2 = floor_npow_tau(k, tau2_);
            if (f1 == f2) last_flat = k;
            if (f2 >= f1 + integer(3L)) {
                certified = true;
                break;
            }
        }
        if (!certified) fail(errc::flag_violation, "tau pair too close to separate");
        set_valid_from(last_flat == 0 ? 1 : 2 * last_flat + 1);
    }
    std::string spec() const override {
        return "prop11:" + tau1_.to_string() + ":" + tau2_.to_string();
    }

protected:
    integer compute(std::size_t n, const std::vector<integer>&) const override {
        if (n == 1) return integer::pow2(floor_npow_tau(1, tau1_));
        std::size_t k = n / 2;
        const rational& tau = (n % 2 == 0) ? tau1_ : tau2_;
        return integer::pow2(integer::factorial((unsigned long)k) * floor_npow_tau(k, tau));
    }

private:
    rational tau1_, tau2_;
};

// d_n for the prop13 schedule, by walking the lambda blocks
struct prop13_walk {
    const std::vector<integer>& lambda;

    // classification of n: {is_prime_block, 1-based position within its class}
    struct cls {
        bool prime;
        std::size_t pos;
    };

    std::vector<cls> classify_up_to(std::size_t n_max) const {
        std::vector<cls> out;
        std::size_t kc = 0, hc = 0;
        for (std::size_t b = 0; b + 1 < lambda.size() && out.size() < n_max; ++b) {
            if (!lambda[b + 1].fits_ulong() || !lambda[b].fits_ulong())
                fail(errc::precision_exhausted, "lambda blocks beyond index range");
            std::size_t lo = lambda[b].get_ulong();
            std::size_t hi = lambda[b + 1].get_ulong();
            bool prime = (b % 2 == 0);
            for (std::size_t n = lo; n < hi && out.size() < n_max; ++n)
                out.push_back({prime, prime ? ++kc : ++hc});
        }
        if (out.size() < n_max)
            fail(errc::prefix_exhausted, "lambda list exhausted before the requested index");
        return out;
    }
};

void validate_lambda(const std::vector<integer>& lambda) {
    if (lambda.size() < 2) fail(errc::usage, "lambda needs at least two entries");
    if (!(lambda[0] == integer(1L))) fail(errc::usage, "lambda_0 must be 1");
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (!(lambda[i - 1] < lambda[i]))
            fail(errc::usage, "lambda must be strictly increasing");
}

class prop13_seq final : public base_sequence {
public:
    explicit prop13_seq(std::vector<integer> lambda) : base_sequence(1), lambda_(std::move(lambda)) {
        validate_lambda(lambda_);
        // the class-position multiplier equals 1 only at n = 1 and n = lambda_1,
        // so q is strictly increasing from lambda_1 + 1 on
        if (!lambda_[1].fits_ulong()) fail(errc::precision_exhausted, "lambda_1 out of range");
        set_valid_from(lambda_[1].get_ulong() + 1);
    }
    std::optional<std::size_t> length() const noexcept override {
        if (!lambda_.back().fits_ulong()) return std::nullopt;
        return lambda_.back().get_ulong();
    }
    std::string spec() const override {
        std::string s = "prop13:";
        for (std::size_t i = 0; i < lambda_.size(); ++i) {
            if (i) s += ',';
            s += lambda_[i].to_string();
        }
        return s;
    }

protected:
    integer compute(std::size_t n, const std::vector<integer>& prev) const override {
        if (n == 1) return integer::pow2(integer(2L)); // d_1 = 2
        if (cls_.size() < n - 1) cls_ = prop13_walk{lambda_}.classify_up_to(n - 1);
        integer d_prev = prev.back().pow2_exponent();
        return integer::pow2(integer((unsigned long)cls_[n - 2].pos) * d_prev);
    }

private:
    std::vector<integer> lambda_;
    mutable std::vector<prop13_walk::cls> cls_; // under the memo lock
};

} // namespace

base_sequence::ptr make_factorial_pow2() { return std::make_shared<factorial_pow2_seq>(); }

base_sequence::ptr make_tau_factorial(const rational& tau) {
    return std::make_shared<tau_factorial_seq>(tau);
}

base_sequence::ptr make_pow_of_f(exponent_sequence::ptr u) {
    return std::make_shared<pow_of_f_seq>(std::move(u));
}

base_sequence::ptr make_explicit_sequence(std::vector<integer> terms) {
    return std::make_shared<explicit_seq>(std::move(terms));
}

base_sequence::ptr make_merge(base_sequence::ptr a, base_sequence::ptr b) {
    return std::make_shared<merge_seq>(std::move(a), std::move(b));
}

base_sequence::ptr make_arith_subseq(base_sequence::ptr parent, long stride, long offset) {
    return std::make_shared<arith_subseq>(std::move(parent), stride, offset);
}

base_sequence::ptr make_pick(base_sequence::ptr parent, std::vector<std::size_t> indices) {
    return std::make_shared<pick_seq>(std::move(parent), std::move(indices));
}

base_sequence::ptr make_lemma8(base_sequence::ptr a, base_sequence::ptr b, const budget& bud) {
    return std::make_shared<lemma8_seq>(std::move(a), std::move(b), bud);
}

base_sequence::ptr make_prop11_pair(const rational& tau1, const rational& tau2) {
    return std::make_shared<prop11_pair_seq>(tau1, tau2);
}

base_sequence::ptr make_prop13(const std::vector<integer>& lambda) {
    return std::make_shared<prop13_seq>(lambda);
}

base_sequence::ptr parse_base_sequence(const std::string& spec) {
    if (spec == "factorial-pow2") return make_factorial_pow2();
    if (spec.rfind("tau:", 0) == 0) return make_tau_factorial(rational::from_string(spec.substr(4)));
    if (spec.rfind("pow-of-f:", 0) == 0)
        return make_pow_of_f(exponent_sequence::parse(spec.substr(9)));
    if (spec.rfind("prop13:", 0) == 0) {
        std::vector<integer> lambda;
        for (const auto& item : split_top_level(spec.substr(7), ','))
            lambda.push_back(integer::from_string(item));
        return make_prop13(lambda);
    }
    if (spec.rfind("prop11:", 0) == 0) {
        auto parts = split_top_level(spec.substr(7), ':');
        if (parts.size() != 2) fail(errc::usage, "prop11 spec needs tau1:tau2");
        return make_prop11_pair(rational::from_string(parts[0]), rational::from_string(parts[1]));
    }
    if (spec.rfind("explicit:", 0) == 0) {
        std::vector<integer> terms;
        for (const auto& item : split_top_level(spec.substr(9), ','))
            terms.push_back(integer::from_string(item));
        return make_explicit_sequence(std::move(terms));
    }
    auto [head, args] = parse_call(spec);
    // explicit:-lists carry top-level commas, so call forms with sequence
    // arguments are re-joined at every split point until both sides parse
    auto join = [&](std::size_t lo, std::size_t hi) {
        std::string s;
        for (std::size_t i = lo; i < hi; ++i) {
            if (i > lo) s += ',';
            s += args[i];
        }
        return s;
    };
    auto parse_two = [&](auto&& make) -> base_sequence::ptr {
        for (std::size_t i = 1; i < args.size(); ++i) {
            try {
                return make(parse_base_sequence(join(0, i)), parse_base_sequence(join(i, args.size())));
            } catch (const error& e) {
                if (e.code() != errc::usage) throw;
            }
        }
        fail(errc::usage, "cannot split arguments of '" + spec + "'");
    };
    if (head == "merge" && args.size() >= 2)
        return parse_two([](base_sequence::ptr a, base_sequence::ptr b) { return make_merge(a, b); });
    if (head == "lemma8" && args.size() >= 2)
        return parse_two(
            [](base_sequence::ptr a, base_sequence::ptr b) { return make_lemma8(a, b); });
    if (head == "even" && args.size() >= 1)
        return make_arith_subseq(parse_base_sequence(join(0, args.size())), 2, 0);
    if (head == "odd" && args.size() >= 1)
        return make_arith_subseq(parse_base_sequence(join(0, args.size())), 2, -1);
    if (head == "arith" && args.size() >= 3)
        return make_arith_subseq(parse_base_sequence(join(0, args.size() - 2)),
                                 safe_stol(args[args.size() - 2]), safe_stol(args.back()));
    if (head == "pick" && args.size() >= 2) {
        // trailing integer-looking arguments are the picked indices
        std::size_t first_idx = args.size();
        while (first_idx > 1 &&
               args[first_idx - 1].find_first_not_of("0123456789") == std::string::npos)
            --first_idx;
        std::vector<std::size_t> idx;
        for (std::size_t i = first_idx; i < args.size(); ++i) idx.push_back(static_cast<std::size_t>(safe_stol(args[i])));
        if (idx.empty()) fail(errc::usage, "pick needs indices");
        return make_pick(parse_base_sequence(join(0, first_idx)), std::move(idx));
    }
    fail(errc::usage, "unknown base-sequence spec: '" + spec + "'");
}

std::vector<std::size_t> lemma4_indices(const exponent_sequence& u, std::size_t count,
                                        const budget& bud) {
    std::vector<std::size_t> out;
    std::size_t m = 0;
    for (std::size_t jn = 1; jn <= count; ++jn) {
        rational threshold(integer((unsigned long)jn));
        ++m;
        std::size_t steps = 0;
        while (!(u.at(m) > threshold)) {
            ++m;
            if (++steps > bud.max_scan)
                fail(errc::prefix_exhausted, "u did not exceed " + std::to_string(jn) +
                                                 " within the scan budget");
        }
        out.push_back(m);
    }
    return out;
}

prop13_schedule_t prop13_schedule(const std::vector<integer>& lambda, std::size_t count) {
    validate_lambda(lambda);
    prop13_schedule_t out;
    out.q = make_prop13(lambda);
    if (count == 0) return out;
    auto cls = prop13_walk{lambda}.classify_up_to(count);
    out.d.push_back(integer(2L));
    for (std::size_t n = 1; n <= count; ++n) {
        const auto& c = cls[n - 1];
        (c.prime ? out.n_prime : out.n_dprime).push_back(n);
        if (out.d.size() < count)
            out.d.push_back(integer((unsigned long)c.pos) * out.d.back());
    }
    return out;
}

} // namespace liouville
