"""The full verification matrix: dimensions, spans, Lie structure, identities.

Every number in a :class:`SuiteReport` comes from a computation made during
the same call.  Rows are keyed ``check/label/type/field`` and reported in
sorted key order, so the JSON form is reproducible byte for byte.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

from .derivations import DerivationSpace, lie_checks, solve_derivations
from .identities import run_identities
from .known import expected_derivation_dim, verify_theorem
from .matalg import Kind, MatrixSpaceSpec, build_algebra, crosscheck_products, expected_dimension
from .octonion import OctType, build_octonion, nucleus
from .scalar import QQ, Field, parse_field

__all__ = ["SuiteRow", "SuiteReport", "verify_suite", "CHECKS", "DEFAULT_FIELD", "Q_MAX_DIM"]

log = logging.getLogger(__name__)

DEFAULT_FIELD = parse_field("mod:101")
# rational rows beyond this algebra dimension are not run
Q_MAX_DIM = 52

# (kind, n); None stands for the octonions themselves
DIMENSION_ROWS: tuple = (
    (None, 1),
    *((Kind.HERMITIAN, n) for n in range(1, 6)),
    *((Kind.ANTIHERMITIAN, n) for n in range(1, 5)),
    (Kind.FULL_STANDARD, 2),
    (Kind.FULL_ANTICOMMUTATOR, 2),
    (Kind.FULL_COMMUTATOR, 2),
)
SPAN_ROWS = ((Kind.HERMITIAN, 3), (Kind.HERMITIAN, 4),
             (Kind.ANTIHERMITIAN, 1), (Kind.ANTIHERMITIAN, 2), (Kind.ANTIHERMITIAN, 3))
LIE_ROWS = ((None, 1), (Kind.HERMITIAN, 3))
CROSSCHECK_ROWS = ((Kind.HERMITIAN, 3), (Kind.HERMITIAN, 4),
                   (Kind.ANTIHERMITIAN, 3), (Kind.ANTIHERMITIAN, 4))
CHECKS = ("dimension", "span", "lie", "identity", "crosscheck", "nucleus")


@dataclass
class SuiteRow:
    key: str
    check: str
    expected: object
    computed: object
    passed: bool
    seconds: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = {"key": self.key, "check": self.check, "expected": self.expected,
               "computed": self.computed, "passed": self.passed}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class SuiteReport:
    config: dict
    rows: list[SuiteRow] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[SuiteRow]:
        return [r for r in self.rows if not r.passed]

    def row(self, key: str) -> SuiteRow:
        for r in self.rows:
            if r.key == key:
                return r
        raise KeyError(key)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "config": self.config,
            "passed": self.passed,
            "summary": {"rows": len(self.rows), "failed": len(self.failures)},
            "rows": [r.to_dict(timings) for r in self.rows],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        for r in self.rows:
            tag = "PASS" if r.passed else "FAIL"
            lines.append(f"{tag}  {r.key:<44} expected={_short(r.expected)} "
                         f"computed={_short(r.computed)}")
        lines.append(f"{len(self.rows) - len(self.failures)}/{len(self.rows)} rows passed")
        return "\n".join(lines) + "\n"


def _short(v) -> str:
    if isinstance(v, dict):
        return ",".join(f"{k}={v[k]}" for k in sorted(v))
    return str(v)


def _label(kind: Kind | None, n: int) -> str:
    return "o" if kind is None else f"{kind.short}_{n}"


def _algebra_dim(kind: Kind | None, n: int) -> int:
    return 8 if kind is None else expected_dimension(kind, n)


class _Runner:
    def __init__(self, report: SuiteReport, progress: Callable[[SuiteRow], None] | None):
        self.report = report
        self.progress = progress
        self.cache: dict[tuple, DerivationSpace] = {}

    def add(self, key: str, check: str, expected, computed, passed: bool, t0: float):
        row = SuiteRow(key, check, expected, computed, bool(passed), time.perf_counter() - t0)
        self.report.rows.append(row)
        log.info("%s %s", "PASS" if row.passed else "FAIL", key)
        if self.progress:
            self.progress(row)

    def derivations(self, kind, n, t: OctType, F: Field) -> DerivationSpace:
        k = (kind, n, t, F)
        if k not in self.cache:
            if kind is None:
                alg = build_octonion(F, t).as_structure()
            else:
                alg = build_algebra(MatrixSpaceSpec(kind, n, t, F))
            self.cache[k] = solve_derivations(alg)
        return self.cache[k]


def _skip(kind, n, F: Field) -> bool:
    if F.is_rational and _algebra_dim(kind, n) > Q_MAX_DIM:
        return True
    # the h_2/h_3 dimensions are only claimed away from characteristic three
    return kind is Kind.HERMITIAN and n in (2, 3) and F.characteristic == 3


def verify_suite(field: Field = DEFAULT_FIELD, oct_types: Iterable = (OctType.I, OctType.II),
                 include_q: bool = False, checks: Iterable[str] | None = None,
                 progress: Callable[[SuiteRow], None] | None = None) -> SuiteReport:
    """Run every row of the verification matrix.

    ``field`` is the primary field; ``include_q`` adds the rational rows
    (algebras of dimension at most :data:`Q_MAX_DIM`).  ``checks`` restricts
    the run to a subset of :data:`CHECKS`.
    """
    wanted = set(CHECKS if checks is None else checks)
    if wanted - set(CHECKS):
        raise ValueError(f"unknown checks: {sorted(wanted - set(CHECKS))}")
    types = sorted({OctType.coerce(t) for t in oct_types}, key=lambda t: t.value)
    fields = [field]
    if include_q and not field.is_rational:
        fields.append(QQ)
    report = SuiteReport({
        "fields": [str(F) for F in fields],
        "oct_types": [t.value for t in types],
        "q_max_dim": Q_MAX_DIM,
        "checks": sorted(wanted),
    })
    run = _Runner(report, progress)
    for F in fields:
        for t in types:
            _run_one(run, F, t, wanted)
    report.rows.sort(key=lambda r: r.key)
    return report


def _run_one(run: _Runner, F: Field, t: OctType, wanted: set[str]) -> None:
    suffix = f"{t.value}/{F}"
    rows = {c: (r if c in wanted else ()) for c, r in (
        ("dimension", DIMENSION_ROWS), ("span", SPAN_ROWS), ("lie", LIE_ROWS),
        ("crosscheck", CROSSCHECK_ROWS))}

    for kind, n in rows["dimension"]:
        if _skip(kind, n, F):
            continue
        t0 = time.perf_counter()
        S = run.derivations(kind, n, t, F)
        want = 14 if kind is None else expected_derivation_dim(kind, n)
        run.add(f"dim/{_label(kind, n)}/{suffix}", "dimension", want, S.dim, S.dim == want, t0)

    for kind, n in rows["span"]:
        if _skip(kind, n, F):
            continue
        t0 = time.perf_counter()
        spec = MatrixSpaceSpec(kind, n, t, F)
        rep = verify_theorem(spec, run.derivations(kind, n, t, F))
        computed = {"computed_dim": rep.computed_dim, "embedded_dim": rep.embedded_dim,
                    "contained": rep.contained, "span_match": rep.span_match,
                    "commuting": rep.commuting, "generators_derive": rep.generators_derive}
        expected = {"relation": rep.relation, "computed_dim": rep.expected_dim}
        run.add(f"span/{_label(kind, n)}/{suffix}", "span", expected, computed, rep.passed, t0)

    for kind, n in rows["lie"]:
        if _skip(kind, n, F):
            continue
        t0 = time.perf_counter()
        S = run.derivations(kind, n, t, F)
        lie = lie_checks(S)
        expected = {"closed": True, "center_dim": 0, "derived_dim": S.dim}
        computed = {"closed": lie.closed, "center_dim": lie.center_dim,
                    "derived_dim": lie.derived_dim}
        run.add(f"lie/{_label(kind, n)}/{suffix}", "lie", expected, computed,
                computed == expected, t0)

    A = build_octonion(F, t)
    t0 = time.perf_counter()
    for name, (cases, bad) in (run_identities(A).items() if "identity" in wanted else ()):
        run.add(f"identity/{name}/{suffix}", "identity", {"failures": 0},
                {"cases": cases, "failures": bad}, bad == 0, t0)
        t0 = time.perf_counter()

    for kind, n in rows["crosscheck"]:
        t0 = time.perf_counter()
        for res in crosscheck_products(MatrixSpaceSpec(kind, n, t, F)):
            run.add(f"crosscheck/{_label(kind, n)}/{res.family}/{suffix}", "crosscheck",
                    {"failures": 0}, {"cases": res.cases, "failures": res.failures},
                    res.passed, t0)
            t0 = time.perf_counter()

    if "nucleus" not in wanted:
        return
    t0 = time.perf_counter()
    N = nucleus(A.as_structure())
    run.add(f"nucleus/o/{suffix}", "nucleus", 1, N.dim, N.dim == 1, t0)
