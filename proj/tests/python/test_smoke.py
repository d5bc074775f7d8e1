import json
from fractions import Fraction

import numpy as np
import pytest

import osmoduli


def test_moduli_dimension_spot_values():
    assert osmoduli.moduli_dimension("psl2", 4)["dim_Mbar"] == 9
    assert osmoduli.moduli_dimension("psl2", 11)["dim_Mbar"] == 25
    sz = osmoduli.moduli_dimension("sz", 8, k=2)
    assert sz["dim_Mbar"] == 3 * 14 * 14
    assert sz["equal"]


def test_piterman_theta1_psl2_4():
    lhs, rhs, equal = osmoduli.piterman("psl2", 4, "theta_1", "theta_1")
    assert lhs == rhs == Fraction(14)
    assert equal


def test_character_table_json():
    table = json.loads(osmoduli.character_table("psl2", 4))
    assert "theta_1" in json.dumps(table)


def test_rho0_claims_all_pass():
    claims = osmoduli.rho0_claims("psl2", 11)
    assert claims and all(c["pass"] for c in claims)


def test_realize_rho0_is_a_unitary_representation():
    r = osmoduli.realize_rho0(4, seed=3)
    mats = r["matrices"]
    assert r["degree"] == 3
    assert len(mats) == 60
    for m in mats:
        assert np.allclose(m @ m.conj().T, np.eye(3), atol=1e-8)
    traces = sorted({round(np.trace(m).real, 6) for m in mats})
    golden = (1 + 5 ** 0.5) / 2
    assert np.allclose(traces, sorted([-1.0, 0.0, 3.0, golden, 1 - golden]), atol=1e-6)


def test_verify_report_schema():
    report = json.loads(osmoduli.verify("psl2", [4], ["tables", "moduli-dim"], timing=False))
    assert set(report["header"]) == {"version", "seed", "timestamp"}
    for rec in report["records"]:
        assert {"name", "anchor", "expected", "computed", "pass", "millis"} <= set(rec)
        assert rec["pass"]


def test_verify_sz_numerics_skipped():
    report = json.loads(osmoduli.verify("sz", [8], ["numerics"]))
    assert report["records"][0]["computed"] == "skipped: class-data model"


def test_smith_invariants():
    assert osmoduli.smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_out_of_scope_q_raises():
    with pytest.raises(ValueError):
        osmoduli.verify("psl2", [6], ["tables"])
