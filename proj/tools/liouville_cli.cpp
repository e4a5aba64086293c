// SPDX-License-Identifier: Apache-2.0

// Command-line front end: construction, measurement, witness algebra,
// criterion checks and certificate round trips with JSON/CSV output.
// Every number printed is an exact decimal string or a {"pow2":E} object.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "liouville/certificate.hpp"
#include "liouville/measure.hpp"

using namespace liouville;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json int_json(const integer& v) {
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

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            std::size_t v = std::stoul(s);
            return {v, v};
        }
        return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
    } catch (const std::exception&) {
        fail(errc::usage, "bad range '" + s + "', expected a..b");
    }
}

std::vector<integer> parse_int_list(const std::string& s) {
    std::vector<integer> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(integer::from_string(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (out.empty()) fail(errc::usage, "empty integer list");
    return out;
}

std::vector<integer> parse_lambda_spec(const std::string& s) {
    if (s.rfind("factorial:", 0) == 0) {
        try {
            return erdos_factorial_lambda(std::stoul(s.substr(10)));
        } catch (const std::exception&) {
            fail(errc::usage, "bad factorial lambda count");
        }
    }
    return parse_int_list(s);
}

series_number::ptr require_series(const real_number::ptr& x) {
    auto s = std::dynamic_pointer_cast<const series_number>(x);
    if (!s) fail(errc::usage, x->spec() + " is not a series-backed number");
    return s;
}

approx_witness::ptr build_witness(const std::string& numspec, const std::string& gen,
                                  const base_sequence::ptr& base, const exponent_sequence::ptr& u,
                                  const rational& k1, const rational& k2, const budget& bud) {
    auto x = parse_number(numspec);
    if (gen == "base-terms") return make_base_term_witness(x, base, u, k1, k2);
    if (gen == "own-denominator") return make_own_denominator_witness(require_series(x), base, u, k1, k2);
    if (gen == "thm3") {
        auto t = std::dynamic_pointer_cast<const thm3_series>(x);
        if (!t) fail(errc::usage, numspec + " is not a thm3 construction");
        (void)bud;
        return make_thm3_witness(t, k1, k2);
    }
    fail(errc::usage, "unknown pair generator '" + gen + "' (base-terms|own-denominator|thm3)");
}

void emit(const ordered_json& j) { std::cout << j.dump() << "\n"; }

int exit_code_for(const error& e) {
    switch (e.code()) {
    case errc::usage:
    case errc::schema_violation: return 2;
    case errc::precision_exhausted: return 3;
    default: return 1;
    }
}

struct witness_side_options {
    std::string number;
    std::string gen = "base-terms";
    std::string kappa1 = "1";
    std::string kappa2 = "1/2";
};

void add_side(CLI::App* cmd, witness_side_options& o, const std::string& tag, bool required) {
    auto* opt = cmd->add_option("--" + tag, o.number, "number spec (side " + tag + ")");
    if (required) opt->required();
    cmd->add_option("--gen-" + tag, o.gen, "pair generator: base-terms|own-denominator|thm3");
    cmd->add_option("--kappa1-" + tag, o.kappa1, "kappa1 for side " + tag);
    cmd->add_option("--kappa2-" + tag, o.kappa2, "kappa2 for side " + tag);
}

ordered_json certificate_json_of(const approx_witness& w, std::size_t lo, std::size_t hi,
                                 const budget& bud, int& exit_status) {
    certificate c = make_certificate(w, lo, hi, bud);
    for (const auto& e : c.entries)
        if (!e.pass) exit_status = 1;
    return ordered_json::parse(certificate_to_json(c));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for Liouville numbers, sets and fields"};
    app.require_subcommand(1);

    budget bud;
    app.add_option("--max-terms", bud.max_terms, "series refinement budget")->capture_default_str();
    app.add_option("--max-bits", bud.max_bits, "largest dense value materialized")
        ->capture_default_str();

    std::string number, base_spec = "factorial-pow2", u_spec = "identity", format = "json";
    std::string theta = "1/2", kappa1 = "1", kappa2 = "1/2", range = "1..4", gen = "base-terms";
    std::string cert_path, out_path;
    std::size_t trunc_n = 3, n_max = 6, level = 1;

    auto* construct = app.add_subcommand("construct", "evaluate a certified truncation");
    construct->add_option("--number", number, "number spec")->required();
    construct->add_option("--trunc", trunc_n, "number of series terms");
    construct->add_option("--format", format, "json");

    auto* measure_cmd = app.add_subcommand("measure", "profile u_n(xi) along a base sequence");
    measure_cmd->add_option("--number", number, "number spec")->required();
    measure_cmd->add_option("--base", base_spec, "base sequence spec");
    measure_cmd->add_option("--n", range, "index range a..b");
    measure_cmd->add_option("--format", format, "csv|json")->default_val("json");

    auto* criterion_cmd = app.add_subcommand("criterion", "non-emptiness criterion ratios");
    criterion_cmd->add_option("--base", base_spec, "base sequence spec");
    criterion_cmd->add_option("--u", u_spec, "exponent sequence spec");
    criterion_cmd->add_option("--n-max", n_max, "last ratio index");
    criterion_cmd->add_option("--theta", theta, "threshold");
    criterion_cmd->add_option("--format", format, "csv|json")->default_val("json");

    auto* witness_cmd = app.add_subcommand("witness", "witness algebra and certificates");
    witness_cmd->require_subcommand(1);
    witness_side_options side_a, side_b;

    auto* w_combine = witness_cmd->add_subcommand("combine", "combine two witnesses");
    std::string mode = "sub";
    add_side(w_combine, side_a, "a", true);
    add_side(w_combine, side_b, "b", true);
    w_combine->add_option("--base", base_spec, "common base sequence");
    w_combine->add_option("--u", u_spec, "common exponent sequence");
    w_combine->add_option("--mode", mode, "sub|add|mul");
    w_combine->add_option("--range", range, "certificate range a..b");
    w_combine->add_option("--out", out_path, "write the certificate to a file");

    auto* w_verify = witness_cmd->add_subcommand("verify", "re-verify a certificate");
    w_verify->add_option("--cert", cert_path, "certificate file")->required();
    w_verify->add_option("--n", range, "entry range a..b");

    auto* w_normalize = witness_cmd->add_subcommand("normalize", "lift b_n to at least q_n");
    add_side(w_normalize, side_a, "a", true);
    w_normalize->add_option("--base", base_spec, "base sequence");
    w_normalize->add_option("--u", u_spec, "exponent sequence");
    w_normalize->add_option("--range", range, "certificate range a..b");
    w_normalize->add_option("--out", out_path, "write the certificate to a file");

    auto* w_recip = witness_cmd->add_subcommand("reciprocal", "witness for 1/xi");
    add_side(w_recip, side_a, "a", true);
    w_recip->add_option("--base", base_spec, "base sequence");
    w_recip->add_option("--u", u_spec, "exponent sequence");
    w_recip->add_option("--range", range, "certificate range a..b");
    w_recip->add_option("--out", out_path, "write the certificate to a file");

    auto* w_ratfn = witness_cmd->add_subcommand("rational-fn", "witness for P(xi)/Q(xi)");
    std::string p_poly = "0,1", q_poly = "1";
    add_side(w_ratfn, side_a, "a", true);
    w_ratfn->add_option("--base", base_spec, "base sequence");
    w_ratfn->add_option("--u", u_spec, "exponent sequence");
    w_ratfn->add_option("--p", p_poly, "numerator coefficients c0,c1,...");
    w_ratfn->add_option("--q-poly", q_poly, "denominator coefficients c0,c1,...");
    w_ratfn->add_option("--range", range, "certificate range a..b");
    w_ratfn->add_option("--out", out_path, "write the certificate to a file");

    auto* probe_cmd = app.add_subcommand("probe", "non-membership probe at one level");
    probe_cmd->add_option("--number", number, "number spec")->required();
    probe_cmd->add_option("--base", base_spec, "base sequence spec");
    probe_cmd->add_option("--u", u_spec, "exponent sequence spec");
    probe_cmd->add_option("--kappa1", kappa1, "size exponent");
    probe_cmd->add_option("--kappa2", kappa2, "approximation exponent");
    probe_cmd->add_option("--n", level, "probe level");

    auto* gap_cmd = app.add_subcommand("gap-check", "the two-approximation gap dichotomy");
    std::string gp, gq, gpp, gqp, gu = "2";
    gap_cmd->add_option("--p", gp, "first numerator")->required();
    gap_cmd->add_option("--q", gq, "first denominator")->required();
    gap_cmd->add_option("--pp", gpp, "second numerator")->required();
    gap_cmd->add_option("--qp", gqp, "second denominator")->required();
    gap_cmd->add_option("--u-n", gu, "exponent u_n");

    auto* companion_cmd = app.add_subcommand("companion", "common companion via the interleave");
    witness_side_options side_xi, side_eta;
    std::size_t comp_count = 4;
    companion_cmd->add_option("--xi", side_xi.number, "first number spec")->required();
    companion_cmd->add_option("--eta", side_eta.number, "second number spec")->required();
    companion_cmd->add_option("--gen-xi", side_xi.gen, "pair generator for xi");
    companion_cmd->add_option("--gen-eta", side_eta.gen, "pair generator for eta");
    companion_cmd->add_option("--base-xi", base_spec, "base sequence for xi");
    std::string base_eta = "factorial-pow2";
    companion_cmd->add_option("--base-eta", base_eta, "base sequence for eta");
    companion_cmd->add_option("--count", comp_count, "terms of the interleave to emit");

    auto* squares_cmd = app.add_subcommand("two-squares", "sum-of-two-squares obstruction");
    std::string n_str, z_str = "20";
    squares_cmd->add_option("--n", n_str, "the integer N")->required();
    squares_cmd->add_option("--z-max", z_str, "largest z searched");

    auto* split_cmd = app.add_subcommand("erdos-split", "binary digit-block split");
    std::string lambda_spec = "factorial:7";
    std::size_t depth = 24;
    split_cmd->add_option("--x", number, "number spec (0 < x < 1)")->required();
    split_cmd->add_option("--lambda", lambda_spec, "factorial:K or a comma list");
    split_cmd->add_option("--depth", depth, "certified digit positions");

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << ordered_json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    }

    int exit_status = 0;
    try {
        if (*construct) {
            auto x = require_series(parse_number(number));
            truncation t = x->truncate(trunc_n, bud);
            ordered_json j;
            j["value"] = t.value.to_string();
            j["tail_bound"] = t.tail_bound.to_string();
            j["terms_used"] = t.terms_used;
            emit(j);
        } else if (*measure_cmd) {
            auto [lo, hi] = parse_range(range);
            auto x = parse_number(number);
            auto q = parse_base_sequence(base_spec);
            measure_profile prof = un_profile(*x, *q, lo, hi, {}, bud);
            if (format == "csv") {
                std::cout << prof.csv();
            } else {
                ordered_json rows = ordered_json::array();
                for (const auto& r : prof.rows)
                    rows.push_back({{"n", r.n},
                                    {"q_bits", r.q_bits.to_string()},
                                    {"dist_log2_lo", r.dist_log2.lo.to_string()},
                                    {"dist_log2_hi", r.dist_log2.hi.to_string()},
                                    {"u_lo", r.u_lo.to_string()},
                                    {"u_hi", r.u_hi.to_string()}});
                emit(ordered_json{{"rows", rows}});
            }
        } else if (*criterion_cmd) {
            auto q = parse_base_sequence(base_spec);
            auto u = exponent_sequence::parse(u_spec);
            auto rep = criterion_report(*q, *u, n_max, rational::from_string(theta), 64, bud);
            if (format == "csv") {
                std::cout << rep.csv();
            } else {
                ordered_json rows = ordered_json::array();
                for (const auto& r : rep.rows)
                    rows.push_back({{"n", r.n},
                                    {"ratio_lo", r.lo.to_string()},
                                    {"ratio_hi", r.hi.to_string()},
                                    {"exact", r.exact},
                                    {"exceeds_theta", r.exceeds}});
                ordered_json j;
                j["hypothesis_warning"] = rep.hypothesis_warning;
                j["candidates"] = rep.candidates;
                j["rows"] = rows;
                emit(j);
            }
        } else if (*w_combine || *w_normalize || *w_recip || *w_ratfn) {
            auto q = parse_base_sequence(base_spec);
            auto u = exponent_sequence::parse(u_spec);
            auto wa = build_witness(side_a.number, side_a.gen, q, u,
                                    rational::from_string(side_a.kappa1),
                                    rational::from_string(side_a.kappa2), bud);
            approx_witness::ptr w;
            if (*w_combine) {
                auto wb = build_witness(side_b.number, side_b.gen, q, u,
                                        rational::from_string(side_b.kappa1),
                                        rational::from_string(side_b.kappa2), bud);
                combine_mode m = mode == "sub"   ? combine_mode::sub
                                 : mode == "add" ? combine_mode::add
                                 : mode == "mul" ? combine_mode::mul
                                                 : throw error(errc::usage, "bad --mode");
                w = combine2(wa, wb, m);
            } else if (*w_normalize) {
                w = normalize(wa);
            } else if (*w_recip) {
                w = reciprocal(wa, bud);
            } else {
                w = apply_rational_function(wa, parse_int_list(p_poly), parse_int_list(q_poly),
                                            bud);
            }
            auto [lo, hi] = parse_range(range);
            ordered_json j = certificate_json_of(*w, lo, hi, bud, exit_status);
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                f << j.dump() << "\n";
            }
            emit(j);
        } else if (*w_verify) {
            std::ifstream f(cert_path);
            if (!f) fail(errc::usage, "cannot read certificate file " + cert_path);
            std::string text((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
            certificate c = certificate_from_json(text);
            reverify(c, bud);
            auto [lo, hi] = parse_range(range);
            ordered_json verdicts = ordered_json::array();
            for (const auto& e : c.entries) {
                if (e.n < lo || e.n > hi) continue;
                verdicts.push_back({{"n", e.n}, {"verdict", e.pass ? "pass" : "fail"}});
                if (!e.pass) exit_status = 1;
            }
            emit(ordered_json{{"verified", true}, {"entries", verdicts}});
        } else if (*probe_cmd) {
            auto x = require_series(parse_number(number));
            auto q = parse_base_sequence(base_spec);
            auto u = exponent_sequence::parse(u_spec);
            probe_result r = nonmember_probe(*x, *q, *u, rational::from_string(kappa1),
                                             rational::from_string(kappa2), level, bud);
            ordered_json j;
            j["level"] = level;
            j["verdict"] = r.verdict == check_verdict::pass ? "pass" : "fail";
            if (r.found) {
                j["found"] = {{"r", int_json(r.found->first)}, {"s", int_json(r.found->second)}};
                exit_status = 1;
            }
            emit(j);
        } else if (*gap_cmd) {
            check_verdict v = gap_check(integer::from_string(gp), integer::from_string(gq),
                                        integer::from_string(gpp), integer::from_string(gqp),
                                        rational::from_string(gu));
            emit(ordered_json{{"verdict", v == check_verdict::pass ? "pass" : "fail"}});
            if (v != check_verdict::pass) exit_status = 1;
        } else if (*companion_cmd) {
            auto def_u = exponent_sequence::identity();
            auto wxi = build_witness(side_xi.number, side_xi.gen, parse_base_sequence(base_spec),
                                     def_u, rational(1L), rational::from_string("1/2"), bud);
            auto weta = build_witness(side_eta.number, side_eta.gen, parse_base_sequence(base_eta),
                                      def_u, rational(1L), rational::from_string("1/2"), bud);
            companion_result c = companion(wxi, weta, bud);
            ordered_json terms = ordered_json::array();
            for (std::size_t n = 1; n <= comp_count; ++n) terms.push_back(int_json(c.q->at(n)));
            ordered_json even = ordered_json::array(), odd = ordered_json::array();
            for (std::size_t n = 2; n <= 1 + comp_count / 2; ++n) {
                even.push_back(
                    {{"n", n}, {"verdict", verify_at(*c.rho_even, n, bud).pass() ? "pass" : "fail"}});
                odd.push_back(
                    {{"n", n}, {"verdict", verify_at(*c.rho_odd, n, bud).pass() ? "pass" : "fail"}});
            }
            ordered_json j;
            j["q"] = terms;
            j["rho"] = c.rho->spec();
            j["rho_even"] = even;
            j["rho_odd"] = odd;
            emit(j);
        } else if (*squares_cmd) {
            two_squares_result r =
                two_squares_check(integer::from_string(n_str), integer::from_string(z_str));
            ordered_json sols = ordered_json::array();
            for (const auto& s : r.solutions) sols.push_back({s[0], s[1], s[2]});
            emit(ordered_json{{"n", n_str}, {"obstructed", r.obstructed}, {"solutions", sols}});
        } else if (*split_cmd) {
            auto x = parse_number(number);
            auto lambda = parse_lambda_spec(lambda_spec);
            erdos_split_result r = erdos_split(*x, lambda, depth, bud);
            std::string all, dx, de;
            for (std::size_t p = 1; p <= depth; ++p) {
                all += char('0' + r.digits[p - 1]);
                dx += char('0' + r.xi->term_at(p, bud).e);
                de += char('0' + r.eta->term_at(p, bud).e);
            }
            rational sum = r.xi->truncate(depth, bud).value + r.eta->truncate(depth, bud).value;
            ordered_json j;
            j["digits"] = all;
            j["xi_digits"] = dx;
            j["eta_digits"] = de;
            j["sum"] = sum.to_string();
            j["split_exact"] = true; // xi + eta reproduces the digits by construction
            j["audit_xi"] = digit_run_audit(*r.xi, lambda, depth, bud);
            j["audit_eta"] = digit_run_audit(*r.eta, lambda, depth, bud);
            emit(j);
        }
    } catch (const error& e) {
        std::cerr << ordered_json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump()
                  << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << ordered_json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 1;
    }
    return exit_status;
}
