"""End-to-end gate: each check prints one PASS/FAIL line.

The full matrix runs once over F_101 and once over Q (algebras up to
dimension 52); the individual tests read rows out of those two reports.
"""
import time

import pytest

from conftest import ACCEPTANCE
from octoder.scalar import QQ, Field
from octoder.suite import verify_suite

F101 = Field(101)
FP_BUDGET = 600.0
Q_BUDGET = 1800.0


@pytest.fixture(scope="module")
def fp_run():
    t0 = time.perf_counter()
    rep = verify_suite(F101)
    return rep, time.perf_counter() - t0


@pytest.fixture(scope="module")
def q_run():
    t0 = time.perf_counter()
    rep = verify_suite(QQ)
    return rep, time.perf_counter() - t0


def record(name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def dims(reports, label, fields=("Fp:101", "Q")):
    out = {}
    for rep in reports:
        for t in ("I", "II"):
            for f in fields:
                key = f"dim/{label}/{t}/{f}"
                try:
                    out[(t, f)] = rep.row(key).computed
                except KeyError:
                    pass
    return out


def check_dims(fp_run, q_run, name, table, q_too=True):
    reps = [fp_run[0], q_run[0]]
    bad, seen = [], 0
    for label, want in table.items():
        got = dims(reps, label)
        need = {(t, "Fp:101") for t in ("I", "II")}
        if q_too and label not in ("h_5", "a_4"):
            need |= {(t, "Q") for t in ("I", "II")}
        missing = need - set(got)
        if missing:
            bad.append(f"{label} missing {sorted(missing)}")
        for k, v in got.items():
            seen += 1
            if v != want:
                bad.append(f"{label}/{k[0]}/{k[1]}={v} (want {want})")
    record(name, not bad, "; ".join(bad) if bad else f"{seen} rows exact")


def test_dim_octonions(fp_run, q_run):
    check_dims(fp_run, q_run, "der(O) = 14", {"o": 14})


def test_dim_degenerate(fp_run, q_run):
    check_dims(fp_run, q_run, "der(h_1) = 0, der(a_1) = 14", {"h_1": 0, "a_1": 14})


def test_dim_h2_h3(fp_run, q_run):
    check_dims(fp_run, q_run, "der(h_2) = 36, der(h_3) = 52", {"h_2": 36, "h_3": 52})


def test_dim_hermitian(fp_run, q_run):
    check_dims(fp_run, q_run, "der(h_4) = 20, der(h_5) = 24", {"h_4": 20, "h_5": 24})


def test_dim_antihermitian(fp_run, q_run):
    check_dims(fp_run, q_run, "der(a_n) = 14, 15, 17, 20",
               {"a_1": 14, "a_2": 15, "a_3": 17, "a_4": 20})


def test_dim_full_matrices(fp_run, q_run):
    check_dims(fp_run, q_run, "der(M_2(O)) = 18 std, 18 anticomm, 19 comm",
               {"m_std_2": 18, "m_anticomm_2": 18, "m_comm_2": 19})


def test_span_verification(fp_run, q_run):
    rows = [r for rep in (fp_run[0], q_run[0]) for r in rep.rows if r.check == "span"]
    labels = {r.key.split("/")[1] for r in rows}
    h3 = [r.computed for r in rows if r.key.startswith("span/h_3/")]
    ok = (labels == {"h_3", "h_4", "a_1", "a_2", "a_3"} and len(rows) == 20
          and all(r.passed for r in rows)
          and all(c["embedded_dim"] == 17 and c["computed_dim"] == 52 for c in h3))
    record("embedded g2 + so_n spans h_4, a_1..a_3; 17 < 52 inside h_3", ok,
           f"{sum(r.passed for r in rows)}/{len(rows)} span rows")


def test_lie_structure(fp_run, q_run):
    rows = [r for rep in (fp_run[0], q_run[0]) for r in rep.rows if r.check == "lie"]
    ok = len(rows) == 8 and all(r.passed for r in rows)
    record("der(O), der(h_3): closed, trivial centre, perfect", ok,
           ", ".join(f"{r.key}={r.computed['derived_dim']}" for r in rows if not r.passed))


def test_identity_suites(fp_run, q_run):
    rows = [r for rep in (fp_run[0], q_run[0]) for r in rep.rows
            if r.check in ("identity", "crosscheck")]
    alt = [r for r in rows if "/alternative/" in r.key]
    mou = [r for r in rows if "/moufang/" in r.key]
    norm = [r for r in rows if "/norm_multiplicative/" in r.key]
    families = {r.key.split("/")[2] for r in rows if r.check == "crosscheck"}
    ok = (all(r.passed for r in rows) and len(alt) == 4
          and all(r.computed["cases"] == 512 for r in alt)
          and all(r.computed["cases"] >= 512 for r in mou)
          and all(r.computed["cases"] == 200 for r in norm)
          and {"3", "4", "5", "6", "7", "14", "15", "16", "17", "fifth"} <= families)
    record("alternativity, Moufang, sign pattern, norm, product families", ok,
           f"{sum(r.passed for r in rows)}/{len(rows)} rows")


def test_nucleus(fp_run, q_run):
    rows = [r for rep in (fp_run[0], q_run[0]) for r in rep.rows if r.check == "nucleus"]
    record("nucleus(O) is one-dimensional", len(rows) == 4 and all(r.passed for r in rows))


def test_performance(fp_run, q_run):
    fp_s, q_s = fp_run[1], q_run[1]
    record("F_101 suite under 10 min, Q suite under 30 min",
           fp_s < FP_BUDGET and q_s < Q_BUDGET, f"F_101 {fp_s:.1f}s, Q {q_s:.1f}s")


def test_determinism(fp_run):
    again = verify_suite(F101).to_json()
    record("two suite runs give byte-identical JSON", again == fp_run[0].to_json())
