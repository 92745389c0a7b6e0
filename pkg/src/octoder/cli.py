"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
Diagnostics go to stderr; reports go to stdout.  The default field is
``mod:101`` unless ``OCTODER_FIELD`` says otherwise.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .derivations import DerivationSpace, solve_derivations
from .known import PreconditionError, check_preconditions, verify_theorem
from .matalg import MatrixSpaceSpec, build_algebra, kind_from_cli
from .octonion import OctType, build_octonion, nucleus
from .scalar import Field, FieldError, parse_field
from .structure import StructureAlgebra, StructureError
from .suite import verify_suite

FIELD_ENV = "OCTODER_FIELD"
COMMANDS = ("table", "build", "derive", "verify", "nucleus", "suite")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    space: str
    product: str
    n: int
    oct_type: int
    field: Field
    output: str
    emit_basis: bool = False
    golden: Path | None = None
    update_golden: bool = False
    include_q: bool = False
    timings: bool = False
    from_json: Path | None = None

    @property
    def spec(self) -> MatrixSpaceSpec:
        if self.space == "o":
            raise UsageError(f"'{self.command}' needs a matrix space (h, a or m)")
        return MatrixSpaceSpec(kind_from_cli(self.space, self.product), self.n,
                               OctType.coerce(self.oct_type), self.field)

    @property
    def golden_name(self) -> str:
        space = self.space if self.space != "m" else f"m{self.product}"
        fld = "q" if self.field.is_rational else f"mod{self.field.modulus}"
        return f"{space}_{self.n}_{self.oct_type}_{fld}.json"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="octoder", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("table", "derivation dimension table"),
        ("build", "structure constants of a matrix algebra"),
        ("derive", "derivation algebra of a matrix algebra"),
        ("verify", "compare der(A) with the embedded g2 + so_n"),
        ("nucleus", "nucleus of the octonions"),
        ("suite", "run the full verification matrix"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--space", choices=["h", "a", "m", "o"], default="h")
        p.add_argument("--n", type=int, default=3)
        p.add_argument("--product", choices=["std", "comm", "anticomm"], default="std")
        p.add_argument("--oct-type", type=int, choices=[1, 2], default=None)
        p.add_argument("--field", default=None, help="q or mod:<p> (default mod:101)")
        p.add_argument("--output", choices=["json", "csv", "text"], default="json")
        p.add_argument("--emit-basis", action="store_true")
        p.add_argument("--golden", type=Path, default=None, metavar="DIR")
        p.add_argument("--update-golden", action="store_true",
                       help="write the golden file instead of comparing")
        p.add_argument("--include-q", action="store_true")
        p.add_argument("--timings", action="store_true",
                       help="add wall-clock timings (makes output non-reproducible)")
        p.add_argument("--from-json", type=Path, default=None, metavar="FILE",
                       help="read structure constants instead of building them")
    return ap


def make_config(args: argparse.Namespace) -> RunConfig:
    field = parse_field(args.field or os.environ.get(FIELD_ENV) or "mod:101")
    if args.n < 1:
        raise UsageError("--n must be positive")
    cfg = RunConfig(
        command=args.command, space=args.space, product=args.product, n=args.n,
        oct_type=args.oct_type or 1, field=field, output=args.output,
        emit_basis=args.emit_basis, golden=args.golden, update_golden=args.update_golden,
        include_q=args.include_q, timings=args.timings, from_json=args.from_json)
    if cfg.command == "suite":
        cfg.oct_type = args.oct_type
    if field.characteristic == 2:
        raise FieldError("characteristic two excluded")
    if cfg.command == "verify":
        check_preconditions(cfg.spec)
    return cfg


# -- output ------------------------------------------------------------------

def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _flat(value) -> str:
    if isinstance(value, dict):
        return ";".join(f"{k}={value[k]}" for k in sorted(value))
    return str(value)


def _render(cfg: RunConfig, data: dict) -> str:
    if cfg.output == "json":
        return _json(data)
    if cfg.output == "csv":
        keys = sorted(k for k in data if k != "basis")
        return _csv(keys, [[_flat(data[k]) for k in keys]])
    return "\n".join(f"{k}: {_flat(data[k])}" for k in sorted(data) if k != "basis") + "\n"


# -- commands ----------------------------------------------------------------

def _algebra(cfg: RunConfig) -> tuple[StructureAlgebra, dict]:
    if cfg.from_json is not None:
        try:
            alg = StructureAlgebra.from_json(cfg.from_json.read_text())
        except OSError as exc:
            raise UsageError(str(exc)) from None
        return alg, {"source": str(cfg.from_json), "name": alg.name}
    if cfg.space == "o":
        return build_octonion(cfg.field, cfg.oct_type).as_structure(), \
            {"name": "O", "oct_type": OctType.coerce(cfg.oct_type).value, "field": str(cfg.field)}
    spec = cfg.spec
    return build_algebra(spec), {**spec.to_dict(), "name": spec.label}


def cmd_build(cfg: RunConfig) -> tuple[int, str]:
    t0 = time.perf_counter()
    alg, spec = _algebra(cfg)
    data = alg.to_dict()
    data["spec"] = {**spec, "symmetry": alg.symmetry.value}
    if cfg.timings:
        data["timings"] = {"build": round(time.perf_counter() - t0, 3)}
    if cfg.output == "csv":
        rows = [[c["i"], c["j"], c["k"], c["value"]] for c in data["constants"]]
        return 0, _csv(["i", "j", "k", "value"], rows)
    if cfg.output == "text":
        lines = [f"{spec['name']} over {alg.field}: dim {alg.dim}, "
                 f"{len(data['constants'])} nonzero structure constants"]
        return 0, "\n".join(lines) + "\n"
    return 0, _json(data)


def _derive(cfg: RunConfig) -> tuple[DerivationSpace, dict]:
    alg, spec = _algebra(cfg)
    return solve_derivations(alg), spec


def cmd_derive(cfg: RunConfig) -> tuple[int, str]:
    S, spec = _derive(cfg)
    data = S.to_dict(emit_basis=cfg.emit_basis)
    data["spec"] = spec
    if cfg.timings:
        data["timings"] = {k: round(v, 3) for k, v in S.timings.items()}
    return 0, _render(cfg, data)


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    rep = verify_theorem(cfg.spec)
    data = rep.to_dict(timings=cfg.timings)
    code = 0 if rep.passed else 1
    if cfg.golden is not None:
        code = max(code, _golden(cfg, rep.to_dict()))
    return code, _render(cfg, data)


def _golden(cfg: RunConfig, data: dict) -> int:
    path = cfg.golden / cfg.golden_name
    text = _json(data)
    if cfg.update_golden:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        return 0
    if not path.exists():
        raise UsageError(f"no golden file {path}")
    if path.read_text() != text:
        print(f"golden mismatch: {path}", file=sys.stderr)
        return 1
    return 0


def cmd_nucleus(cfg: RunConfig) -> tuple[int, str]:
    A = build_octonion(cfg.field, cfg.oct_type)
    N = nucleus(A.as_structure())
    data = {"algebra": "O", "oct_type": A.type_tag.value, "field": str(cfg.field),
            "dim": N.dim, "expected_dim": 1}
    if cfg.emit_basis:
        data["basis"] = N.to_list()
    return (0 if N.dim == 1 else 1), _render(cfg, data)


def _suite(cfg: RunConfig, checks=None):
    types = (OctType.I, OctType.II) if cfg.oct_type is None else (OctType.coerce(cfg.oct_type),)
    return verify_suite(cfg.field, types, include_q=cfg.include_q, checks=checks)


def _report_out(cfg: RunConfig, rep) -> str:
    if cfg.output == "json":
        return rep.to_json(timings=cfg.timings)
    if cfg.output == "csv":
        rows = [[r.key, r.check, "pass" if r.passed else "fail", _flat(r.expected),
                 _flat(r.computed)] + ([round(r.seconds, 3)] if cfg.timings else [])
                for r in rep.rows]
        header = ["key", "check", "result", "expected", "computed"]
        return _csv(header + (["seconds"] if cfg.timings else []), rows)
    return rep.to_text()


def cmd_table(cfg: RunConfig) -> tuple[int, str]:
    rep = _suite(cfg, checks=["dimension"])
    return (0 if rep.passed else 1), _report_out(cfg, rep)


def cmd_suite(cfg: RunConfig) -> tuple[int, str]:
    rep = _suite(cfg)
    return (0 if rep.passed else 1), _report_out(cfg, rep)


HANDLERS = {"table": cmd_table, "build": cmd_build, "derive": cmd_derive,
            "verify": cmd_verify, "nucleus": cmd_nucleus, "suite": cmd_suite}


def run(cfg: RunConfig) -> tuple[int, str]:
    return HANDLERS[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = make_config(args)
        code, out = run(cfg)
    except (UsageError, FieldError, PreconditionError, StructureError, ValueError) as exc:
        print(f"octoder: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
