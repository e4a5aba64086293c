// SPDX-License-Identifier: Apache-2.0

// Python bindings: the main operations behind a thin string-based API so
// every value crosses the boundary as an exact decimal string.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liouville/certificate.hpp"
#include "liouville/measure.hpp"

namespace py = pybind11;
using namespace liouville;

namespace {

rational rat(const std::string& s) { return rational::from_string(s); }

py::object int_py(const integer& v) {
    if (v.is_pow2_value() && v.pow2_exponent() >= integer(1L)) {
        py::dict d;
        d["pow2"] = v.pow2_exponent().to_string();
        return d;
    }
    return py::str(v.to_string());
}

approx_witness::ptr build_witness(const std::string& numspec, const std::string& gen,
                                  const std::string& base_spec, const std::string& u_spec,
                                  const std::string& k1, const std::string& k2) {
    auto x = parse_number(numspec);
    auto base = parse_base_sequence(base_spec);
    auto u = exponent_sequence::parse(u_spec);
    if (gen == "base-terms") return make_base_term_witness(x, base, u, rat(k1), rat(k2));
    if (gen == "own-denominator") {
        auto s = std::dynamic_pointer_cast<const series_number>(x);
        if (!s) fail(errc::usage, numspec + " is not series-backed");
        return make_own_denominator_witness(s, base, u, rat(k1), rat(k2));
    }
    if (gen == "thm3") {
        auto t = std::dynamic_pointer_cast<const thm3_series>(x);
        if (!t) fail(errc::usage, numspec + " is not a thm3 construction");
        return make_thm3_witness(t, rat(k1), rat(k2));
    }
    fail(errc::usage, "unknown generator '" + gen + "'");
}

py::dict record_py(const verify_record& r) {
    py::dict d;
    d["n"] = r.n;
    d["b"] = int_py(r.pr.b);
    d["a"] = int_py(r.pr.a);
    d["size_ok"] = r.size_ok;
    d["approx_ok"] = r.approx_ok;
    d["pass"] = r.pass();
    d["lhs_log2"] = py::make_tuple(r.lhs_log2.lo.to_string(), r.lhs_log2.hi.to_string());
    d["rhs_log2"] = r.rhs_log2.to_string();
    return d;
}

} // namespace

PYBIND11_MODULE(_liouville, m) {
    m.doc() = "exact-arithmetic toolkit for Liouville numbers, sets and fields";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const error& e) {
            std::string msg = std::string("[") + e.kind() + "] " + e.what();
            if (e.code() == errc::usage || e.code() == errc::schema_violation)
                PyErr_SetString(PyExc_ValueError, msg.c_str());
            else
                PyErr_SetString(PyExc_RuntimeError, msg.c_str());
        }
    });

    m.def(
        "nearest_int",
        [](const std::string& x) {
            auto r = nearest_int(rat(x));
            return py::make_tuple(r.m.to_string(), r.dist.to_string());
        },
        py::arg("x"), "nearest integer to a rational and the distance to it");

    m.def(
        "floor_pow",
        [](const std::string& t, long e) { return floor_pow(rat(t), integer(e)).to_string(); },
        py::arg("t"), py::arg("e"), "largest integer <= t^e for rational t > 1");

    m.def(
        "log2_interval",
        [](const std::string& x, unsigned bits) {
            auto b = log2_interval(rat(x), bits);
            return py::make_tuple(b.lo.to_string(), b.hi.to_string());
        },
        py::arg("x"), py::arg("frac_bits") = 64,
        "rational enclosure of log2(x) with width <= 2^-frac_bits");

    m.def(
        "eval_base",
        [](const std::string& spec, std::size_t n) { return int_py(parse_base_sequence(spec)->at(n)); },
        py::arg("spec"), py::arg("n"), "n-th term of a base sequence spec");

    m.def(
        "truncate",
        [](const std::string& spec, std::size_t n) {
            auto x = std::dynamic_pointer_cast<const series_number>(parse_number(spec));
            if (!x) fail(errc::usage, spec + " is not series-backed");
            truncation t = x->truncate(n);
            py::dict d;
            d["value"] = t.value.to_string();
            d["tail_bound"] = t.tail_bound.to_string();
            d["terms_used"] = t.terms_used;
            return d;
        },
        py::arg("spec"), py::arg("n"), "certified truncation of a series number");

    m.def(
        "criterion_rows",
        [](const std::string& base, const std::string& u, std::size_t n_max,
           const std::string& theta) {
            auto rep = criterion_report(*parse_base_sequence(base), *exponent_sequence::parse(u),
                                        n_max, rat(theta));
            py::list rows;
            for (const auto& r : rep.rows) {
                py::dict d;
                d["n"] = r.n;
                d["lo"] = r.lo.to_string();
                d["hi"] = r.hi.to_string();
                d["exact"] = r.exact;
                d["exceeds_theta"] = r.exceeds;
                rows.append(d);
            }
            return rows;
        },
        py::arg("base"), py::arg("u") = "identity", py::arg("n_max") = 6,
        py::arg("theta") = "1/2", "non-emptiness criterion ratio rows");

    m.def(
        "un_profile",
        [](const std::string& number, const std::string& base, std::size_t lo, std::size_t hi) {
            auto prof = un_profile(*parse_number(number), *parse_base_sequence(base), lo, hi);
            py::list rows;
            for (const auto& r : prof.rows) {
                py::dict d;
                d["n"] = r.n;
                d["u_lo"] = r.u_lo.to_string();
                d["u_hi"] = r.u_hi.to_string();
                rows.append(d);
            }
            return rows;
        },
        py::arg("number"), py::arg("base"), py::arg("n_lo"), py::arg("n_hi"),
        "certified u_n(xi) enclosures along a base sequence");

    m.def(
        "verify_witness",
        [](const std::string& number, const std::string& gen, const std::string& base,
           const std::string& u, const std::string& k1, const std::string& k2, std::size_t n) {
            auto w = build_witness(number, gen, base, u, k1, k2);
            return record_py(verify_at(*w, n));
        },
        py::arg("number"), py::arg("gen") = "base-terms", py::arg("base") = "factorial-pow2",
        py::arg("u") = "identity", py::arg("kappa1") = "1", py::arg("kappa2") = "1/2",
        py::arg("n") = 3, "verify the Eq.-(1) inequalities for one index");

    m.def(
        "combine_certificate",
        [](const std::string& a, const std::string& gen_a, const std::string& k1a,
           const std::string& b, const std::string& gen_b, const std::string& k1b,
           const std::string& base, const std::string& mode, std::size_t lo, std::size_t hi) {
            auto wa = build_witness(a, gen_a, base, "identity", k1a, "1/2");
            auto wb = build_witness(b, gen_b, base, "identity", k1b, "1/2");
            combine_mode m = mode == "sub"   ? combine_mode::sub
                             : mode == "add" ? combine_mode::add
                                             : combine_mode::mul;
            return certificate_to_json(make_certificate(*combine2(wa, wb, m), lo, hi));
        },
        py::arg("a"), py::arg("gen_a"), py::arg("kappa1_a"), py::arg("b"), py::arg("gen_b"),
        py::arg("kappa1_b"), py::arg("base") = "factorial-pow2", py::arg("mode") = "sub",
        py::arg("n_lo") = 3, py::arg("n_hi") = 6,
        "combine two natural witnesses and freeze the certificate JSON");

    m.def(
        "reverify_certificate",
        [](const std::string& json_text) {
            reverify(certificate_from_json(json_text));
            return true;
        },
        py::arg("json_text"), "re-verify a certificate; raises on any verdict mismatch");

    m.def(
        "gap_check",
        [](const std::string& p, const std::string& q, const std::string& p2,
           const std::string& q2, const std::string& u) {
            return gap_check(integer::from_string(p), integer::from_string(q),
                             integer::from_string(p2), integer::from_string(q2),
                             rat(u)) == check_verdict::pass;
        },
        py::arg("p"), py::arg("q"), py::arg("p2"), py::arg("q2"), py::arg("u_n") = "2",
        "the two-approximation gap dichotomy");

    m.def(
        "nonmember_probe",
        [](const std::string& number, const std::string& base, const std::string& u,
           const std::string& k1, const std::string& k2, std::size_t n) {
            auto x = std::dynamic_pointer_cast<const series_number>(parse_number(number));
            if (!x) fail(errc::usage, number + " is not series-backed");
            auto r = nonmember_probe(*x, *parse_base_sequence(base),
                                     *exponent_sequence::parse(u), rat(k1), rat(k2), n);
            py::dict d;
            d["pass"] = r.verdict == check_verdict::pass;
            if (r.found)
                d["found"] = py::make_tuple(int_py(r.found->first), int_py(r.found->second));
            return d;
        },
        py::arg("number"), py::arg("base"), py::arg("u") = "identity", py::arg("kappa1") = "1",
        py::arg("kappa2") = "1/2", py::arg("n") = 2, "level-n non-membership probe");

    m.def(
        "two_squares",
        [](unsigned long n, unsigned long z_max) {
            auto r = two_squares_check(integer(n), integer(z_max));
            py::list sols;
            for (const auto& s : r.solutions) sols.append(py::make_tuple(s[0], s[1], s[2]));
            py::dict d;
            d["obstructed"] = r.obstructed;
            d["solutions"] = sols;
            return d;
        },
        py::arg("n"), py::arg("z_max") = 20, "sum-of-two-squares obstruction check");

    m.def(
        "erdos_split",
        [](const std::string& x, std::size_t lambda_count, std::size_t depth) {
            auto lambda = erdos_factorial_lambda(lambda_count);
            auto r = erdos_split(*parse_number(x), lambda, depth);
            std::string digits, dx, de;
            for (std::size_t p = 1; p <= depth; ++p) {
                digits += char('0' + r.digits[p - 1]);
                dx += char('0' + r.xi->term_at(p).e);
                de += char('0' + r.eta->term_at(p).e);
            }
            py::dict d;
            d["digits"] = digits;
            d["xi_digits"] = dx;
            d["eta_digits"] = de;
            d["audit_xi"] = digit_run_audit(*r.xi, lambda, depth);
            d["audit_eta"] = digit_run_audit(*r.eta, lambda, depth);
            return d;
        },
        py::arg("x"), py::arg("lambda_count") = 7, py::arg("depth") = 24,
        "binary digit-block split with the factorial schedule");

    m.def(
        "cf_convergents",
        [](const std::string& x, std::size_t max_terms) {
            auto e = cf_convergents(rat(x), max_terms);
            py::list quots, convs;
            for (const auto& a : e.quotients) quots.append(a.to_string());
            for (const auto& [p, q] : e.convergents)
                convs.append(py::make_tuple(p.to_string(), q.to_string()));
            return py::make_tuple(quots, convs);
        },
        py::arg("x"), py::arg("max_terms") = 10000,
        "continued-fraction quotients and convergents of a rational");

#ifdef LIOUVILLE_VERSION
    m.attr("__version__") = LIOUVILLE_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
