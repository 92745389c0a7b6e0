import json

import pytest

from octoder.octonion import OctType
from octoder.scalar import Field
from octoder.suite import CHECKS, verify_suite


def test_dimension_table_type_independent():
    a = verify_suite(oct_types=[1], checks=["dimension"])
    b = verify_suite(oct_types=[2], checks=["dimension"])
    strip = lambda rep: {r.key.split("/")[1]: r.computed for r in rep.rows}
    assert strip(a) == strip(b)
    assert len(a.rows) == 13


def test_identity_rows_and_order():
    rep = verify_suite(oct_types=[OctType.II], checks=["identity", "nucleus"])
    keys = [r.key for r in rep.rows]
    assert keys == sorted(keys)
    assert rep.passed
    assert rep.row("identity/alternative/II/Fp:101").computed == {"cases": 512, "failures": 0}
    with pytest.raises(KeyError):
        rep.row("missing")


def test_char_three_skips_h2_h3_rows():
    rep = verify_suite(Field(3), oct_types=[1], checks=["dimension"])
    labels = {r.key.split("/")[1] for r in rep.rows}
    assert "h_2" not in labels and "h_3" not in labels and "h_4" in labels


def test_unknown_check():
    with pytest.raises(ValueError):
        verify_suite(checks=["bogus"])


def test_report_formats():
    rep = verify_suite(oct_types=[1], checks=["nucleus"])
    data = json.loads(rep.to_json())
    assert data["summary"] == {"failed": 0, "rows": 1}
    assert set(data["config"]["checks"]) == {"nucleus"}
    assert "seconds" in rep.to_json(timings=True)
    assert rep.to_text().splitlines()[-1] == "1/1 rows passed"
    assert set(CHECKS) >= {"dimension", "span", "lie"}
