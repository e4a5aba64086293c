// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "liouville/kernel.hpp"

namespace liouville {

// Exponent sequence u_n > 0 with u_n -> infinity, 1-based. Kinds: identity
// (u_n = n), an explicit rational prefix, or an affine formula a*n + b.
// Growth flags are attested by the kind and checked on the evaluated prefix.
class exponent_sequence {
public:
    using ptr = std::shared_ptr<const exponent_sequence>;

    static ptr identity();
    static ptr explicit_list(std::vector<rational> terms);
    static ptr affine(const rational& slope, const rational& offset);
    static ptr parse(const std::string& spec);

    rational at(std::size_t n) const; // n >= 1
    std::optional<std::size_t> length() const noexcept;

    bool increasing() const noexcept { return increasing_; }
    bool step_ge_one() const noexcept { return step_ge_one_; }       // u_{n+1} >= u_n + 1
    bool sqrt_dominated() const noexcept { return sqrt_dominated_; } // sqrt(u_{n+1}) <= u_n + 1

    std::string spec() const;

private:
    enum class kind { identity, explicit_list, affine };
    exponent_sequence() = default;

    kind kind_ = kind::identity;
    std::vector<rational> terms_;
    rational slope_, offset_;
    bool increasing_ = true, step_ge_one_ = true, sqrt_dominated_ = true;
};

// Increasing integer base sequence q_n >= 2, 1-based, lazily evaluated and
// memoized. Strict monotonicity is enforced from valid_from on; a violation
// raises instead of returning a bad term. Terms of power-of-two kinds stay in
// exponent form.
class base_sequence {
public:
    using ptr = std::shared_ptr<const base_sequence>;

    virtual ~base_sequence() = default;

    integer at(std::size_t n) const; // n >= 1
    std::size_t valid_from() const noexcept { return valid_from_; }
    virtual std::optional<std::size_t> length() const noexcept { return std::nullopt; }
    virtual std::string spec() const = 0;

    enum class prov { left, right, both };
    // provenance of a merged term (merge kind only)
    virtual prov merge_provenance(std::size_t n) const;

protected:
    explicit base_sequence(std::size_t valid_from) : valid_from_(valid_from) {}
    // called with n = prev.size() + 1, strictly in order, under the memo lock
    virtual integer compute(std::size_t n, const std::vector<integer>& prev) const = 0;
    void set_valid_from(std::size_t vf) noexcept { valid_from_ = vf; }

private:
    std::size_t valid_from_ = 1;
    mutable std::mutex mu_;
    mutable std::vector<integer> memo_;
};

base_sequence::ptr make_factorial_pow2();
base_sequence::ptr make_tau_factorial(const rational& tau); // 2^(n! * floor(n^tau)), 0 < tau < 1
base_sequence::ptr make_pow_of_f(exponent_sequence::ptr u); // floor(2^f(n)), f(n) = u_1...u_{n-1}
base_sequence::ptr make_explicit_sequence(std::vector<integer> terms);
base_sequence::ptr make_merge(base_sequence::ptr a, base_sequence::ptr b);
// n -> parent[stride*n + offset]
base_sequence::ptr make_arith_subseq(base_sequence::ptr parent, long stride, long offset);
base_sequence::ptr make_pick(base_sequence::ptr parent, std::vector<std::size_t> indices);
// the alternating interleave with q_{n+1} >= q_n^n
base_sequence::ptr make_lemma8(base_sequence::ptr a, base_sequence::ptr b,
                               const budget& bud = budget::defaults());
// paired tau-sequences without duplicate collapse: q_{2n} = tau1-term n,
// q_{2n+1} = tau2-term n
base_sequence::ptr make_prop11_pair(const rational& tau1, const rational& tau2);

base_sequence::ptr parse_base_sequence(const std::string& spec);

// least m_1 < ... < m_count with u_{m_n} > n, each minimal past its predecessor
std::vector<std::size_t> lemma4_indices(const exponent_sequence& u, std::size_t count,
                                        const budget& bud = budget::defaults());

// index partition and doubling schedule induced by the lambda blocks, with
// d_1 = 2, d_{n+1} = k d_n (n = n'_k) or h d_n (n = n''_h) and q_n = 2^(d_n)
struct prop13_schedule_t {
    std::vector<std::size_t> n_prime;
    std::vector<std::size_t> n_dprime;
    std::vector<integer> d;
    base_sequence::ptr q;
};
prop13_schedule_t prop13_schedule(const std::vector<integer>& lambda, std::size_t count);

base_sequence::ptr make_prop13(const std::vector<integer>& lambda);

} // namespace liouville
