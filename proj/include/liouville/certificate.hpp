// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "liouville/witness.hpp"

namespace liouville {

// Self-contained, re-verifiable record of a witness over an index range.
// Serialization is canonical: fixed key order, no whitespace, every number a
// decimal string or a {"pow2": E} object; identical inputs give identical
// bytes.
struct certificate {
    std::string subject_spec;
    std::string base_spec;
    std::string u_spec;
    rational kappa1;
    rational kappa2;
    std::size_t valid_from = 1; // greedy: smallest n from which the range passes

    struct entry {
        std::size_t n = 0;
        integer b;
        integer a;
        rational lhs_log2_lo;
        rational lhs_log2_hi;
        rational rhs_log2;
        bool pass = false;
    };
    std::vector<entry> entries;
};

// runs verify_at over [n_lo, n_hi] and freezes the outcome
certificate make_certificate(const approx_witness& w, std::size_t n_lo, std::size_t n_hi,
                             const budget& bud = budget::defaults());

std::string certificate_to_json(const certificate& c);
certificate certificate_from_json(const std::string& text);

// reconstructs an explicit-pair witness from the stored fields
approx_witness::ptr witness_from_certificate(const certificate& c);

// re-verifies every entry; a verdict that does not reproduce raises
// verdict_mismatch (corrupt or tampered certificate)
void reverify(const certificate& c, const budget& bud = budget::defaults());

} // namespace liouville
