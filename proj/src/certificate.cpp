// SPDX-License-Identifier: Apache-2.0

#include "liouville/certificate.hpp"

#include <json.hpp>

namespace liouville {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json encode_int(const integer& v) {
    if (v.is_pow2_value() && v.pow2_exponent() >= integer(1L)) {
        integer e = v.pow2_exponent();
        ordered_json o;
        if (e.fits_slong() && e.get_slong() <= (1L << 53))
            o["pow2"] = e.get_slong();
        else
            o["pow2"] = e.to_string();
        return o;
    }
    return v.to_string();
}

integer decode_int(const ordered_json& j) {
    if (j.is_string()) return integer::from_string(j.get<std::string>());
    if (j.is_object() && j.contains("pow2") && j.size() == 1) {
        const auto& e = j.at("pow2");
        if (e.is_number_integer()) return integer::pow2(integer(e.get<long>()));
        if (e.is_string()) return integer::pow2(integer::from_string(e.get<std::string>()));
    }
    fail(errc::schema_violation, "integer fields must be decimal strings or {\"pow2\":E}");
}

rational decode_rational(const ordered_json& j) {
    if (!j.is_string()) fail(errc::schema_violation, "rational fields must be strings");
    return rational::from_string(j.get<std::string>());
}

} // namespace

certificate make_certificate(const approx_witness& w, std::size_t n_lo, std::size_t n_hi,
                             const budget& bud) {
    verify_report rep = verify_range(w, n_lo, n_hi, bud);
    certificate c;
    c.subject_spec = w.subject()->spec();
    c.base_spec = w.base()->spec();
    c.u_spec = w.u()->spec();
    c.kappa1 = w.kappa1();
    c.kappa2 = w.kappa2();
    c.valid_from = rep.greedy_valid_from;
    for (const auto& r : rep.records)
        c.entries.push_back({r.n, r.pr.b, r.pr.a, r.lhs_log2.lo, r.lhs_log2.hi, r.rhs_log2,
                             r.pass()});
    return c;
}

std::string certificate_to_json(const certificate& c) {
    ordered_json j;
    j["schema"] = "liouville-witness-v1";
    j["subject"] = c.subject_spec;
    j["base"] = c.base_spec;
    j["u"] = c.u_spec;
    j["kappa1"] = c.kappa1.to_string();
    j["kappa2"] = c.kappa2.to_string();
    j["valid_from"] = c.valid_from;
    j["entries"] = ordered_json::array();
    for (const auto& e : c.entries) {
        ordered_json je;
        je["n"] = e.n;
        je["b"] = encode_int(e.b);
        je["a"] = encode_int(e.a);
        je["lhs_log2"] = ordered_json::array(
            {e.lhs_log2_lo.to_string(), e.lhs_log2_hi.to_string()});
        je["rhs_log2"] = e.rhs_log2.to_string();
        je["verdict"] = e.pass ? "pass" : "fail";
        j["entries"].push_back(std::move(je));
    }
    return j.dump();
}

certificate certificate_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& ex) {
        fail(errc::schema_violation, std::string("certificate is not valid JSON: ") + ex.what());
    }
    try {
        if (j.at("schema").get<std::string>() != "liouville-witness-v1")
            fail(errc::schema_violation, "unknown certificate schema");
        certificate c;
        c.subject_spec = j.at("subject").get<std::string>();
        c.base_spec = j.at("base").get<std::string>();
        c.u_spec = j.at("u").get<std::string>();
        c.kappa1 = decode_rational(j.at("kappa1"));
        c.kappa2 = decode_rational(j.at("kappa2"));
        c.valid_from = j.at("valid_from").get<std::size_t>();
        for (const auto& je : j.at("entries")) {
            certificate::entry e;
            e.n = je.at("n").get<std::size_t>();
            e.b = decode_int(je.at("b"));
            e.a = decode_int(je.at("a"));
            const auto& lhs = je.at("lhs_log2");
            if (!lhs.is_array() || lhs.size() != 2)
                fail(errc::schema_violation, "lhs_log2 must be a two-element array");
            e.lhs_log2_lo = decode_rational(lhs[0]);
            e.lhs_log2_hi = decode_rational(lhs[1]);
            e.rhs_log2 = decode_rational(je.at("rhs_log2"));
            std::string v = je.at("verdict").get<std::string>();
            if (v != "pass" && v != "fail") fail(errc::schema_violation, "bad verdict value");
            e.pass = v == "pass";
            if (!c.entries.empty() && e.n != c.entries.back().n + 1)
                fail(errc::schema_violation, "entry indices must be contiguous and ascending");
            c.entries.push_back(std::move(e));
        }
        if (c.entries.empty()) fail(errc::schema_violation, "certificate has no entries");
        return c;
    } catch (const ordered_json::exception& ex) {
        fail(errc::schema_violation, std::string("certificate field error: ") + ex.what());
    }
}

approx_witness::ptr witness_from_certificate(const certificate& c) {
    std::vector<witness_pair> pairs;
    for (const auto& e : c.entries) pairs.push_back({e.b, e.a});
    return make_explicit_witness(parse_number(c.subject_spec), parse_base_sequence(c.base_spec),
                                 exponent_sequence::parse(c.u_spec), c.kappa1, c.kappa2,
                                 c.valid_from, c.entries.front().n, std::move(pairs));
}

void reverify(const certificate& c, const budget& bud) {
    approx_witness::ptr w = witness_from_certificate(c);
    for (const auto& e : c.entries) {
        verify_record r = verify_at(*w, e.n, bud);
        if (r.pass() != e.pass)
            fail(errc::verdict_mismatch,
                 "verdict at n = " + std::to_string(e.n) +
                     " does not reproduce; the certificate is corrupt");
    }
}

} // namespace liouville
