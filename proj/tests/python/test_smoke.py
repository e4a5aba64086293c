# SPDX-License-Identifier: Apache-2.0

import json

import pytest

import liouville as lv


def test_kernel_ops():
    assert lv.nearest_int("7/3") == ("2", "1/3")
    assert lv.nearest_int("1/2") == ("0", "1/2")
    assert lv.floor_pow("3/2", 4) == "5"
    lo, hi = lv.log2_interval("1024", 8)
    assert lo == "10" and hi == "10"


def test_sequences_and_truncations():
    assert lv.eval_base("factorial-pow2", 3) == {"pow2": "6"}
    assert lv.eval_base("explicit:4,9,16", 2) == "9"
    t = lv.truncate("classic:10", 3)
    assert t["value"] == "110001/1000000"
    assert t["tail_bound"] == "1/500000000000000000000000"


def test_criterion_rows_exact():
    rows = lv.criterion_rows("factorial-pow2", "identity", 6, "1/2")
    assert rows[2]["lo"] == "4/3"
    assert all(r["exact"] for r in rows)


def test_profile_brackets_n():
    rows = lv.un_profile("classic:10", "explicit:10,100,1000000", 2, 3)
    # u_2 is within 1/100 of 2
    import fractions

    lo = fractions.Fraction(rows[0]["u_lo"])
    hi = fractions.Fraction(rows[0]["u_hi"])
    assert fractions.Fraction(199, 100) <= lo <= hi <= fractions.Fraction(201, 100)


def test_witness_and_certificate_round_trip():
    rec = lv.verify_witness("classic:2", "base-terms", "factorial-pow2", "identity", "1", "1/2", 3)
    assert rec["pass"]
    assert rec["b"] == {"pow2": "6"}
    assert rec["a"] == "49"

    cert = lv.combine_certificate("classic:2", "base-terms", "1", "classic:4",
                                  "own-denominator", "2", "factorial-pow2", "sub", 3, 6)
    doc = json.loads(cert)
    assert doc["schema"] == "liouville-witness-v1"
    assert all(e["verdict"] == "pass" for e in doc["entries"])
    assert lv.reverify_certificate(cert)

    tampered = cert.replace('"200"', '"201"', 1) if '"200"' in cert else cert[:-2] + "]}"
    if tampered != cert:
        with pytest.raises(RuntimeError):
            lv.reverify_certificate(tampered)


def test_probe_and_gap_and_squares():
    assert lv.gap_check("1", "3", "28", "81", "2")
    probe = lv.nonmember_probe("prop12:default", "factorial-pow2", "identity", "1", "1/2", 5)
    assert probe["pass"]
    sq = lv.two_squares(3, 20)
    assert sq["obstructed"] and sq["solutions"] == []


def test_erdos_split_digits():
    r = lv.erdos_split("rat:1/3", 7, 12)
    assert r["digits"] == "010101010101"
    assert r["audit_xi"] and r["audit_eta"]


def test_cf():
    quots, convs = lv.cf_convergents("49/64")
    assert quots == ["0", "1", "3", "3", "1", "3"]
    assert convs[-1] == ("49", "64")


def test_errors_translate():
    with pytest.raises(ValueError):
        lv.truncate("nope:1", 3)
