"""Command-line front end.

Exit codes: 0 every check passed, 1 the structure is invalid (witnesses are
reported), 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time

from . import __version__
from .errors import (ConsistencyError, InvalidStructure, PathError, SchemaError, ShapeError,
                     StructureIncomplete)
from .functors import (cat1_compose, cat1_to_xmod, dg_to_cat1, dg_to_xmod, roundtrip,
                       xmod_to_cat1, xmod_to_dg)
from .graded import Complex01
from .higher import ad_square, derivations, tot_algebra, validate_2crossed, validate_dg2
from .io import (bilinear_to_json, loads, matrix_to_json, max_dimension, structure_to_document,
                 to_text)
from .linalg import BilinearMap, Matrix
from .structures import (DgPAlgebra1, Report, validate_algebra, validate_cat1,
                         validate_dg1, validate_xmod)

VERBS = ("validate", "convert", "semidirect", "compose", "tot", "derivations", "adsquare", "roundtrip")
DEFAULT_MAX_DIM = 64

VALIDATORS = {"algebra": validate_algebra, "dg1": validate_dg1, "xmod": validate_xmod,
              "cat1": validate_cat1, "xmod2": validate_2crossed, "dg2": validate_dg2}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xalg", description="Validate and convert crossed algebraic structures.")
    parser.add_argument("--version", action="version", version=f"xalg {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)
    helps = {
        "validate": "run the validator for the file's kind",
        "convert": "convert between dg1, xmod and cat1",
        "semidirect": "build the Cat1 semidirect product of a dg1 or xmod file",
        "compose": "check the internal-category composition of a cat1 file",
        "tot": "totalize an xmod2 file into a dg algebra in degrees 0 to 2",
        "derivations": "derivation algebra of a dg1 (or algebra) file",
        "adsquare": "2-crossed ad square of a dg1 (or algebra) Lie file",
        "roundtrip": "apply a chain of functors and compare with the input",
    }
    for verb in VERBS:
        p = sub.add_parser(verb, help=helps[verb])
        p.add_argument("input", help="JSON structure file")
        p.add_argument("--json", action="store_true", help="write the JSON report to stdout")
        p.add_argument("-o", "--output", help="also write the JSON report to this file")
        if verb == "convert":
            p.add_argument("--to", required=True, choices=("dg1", "xmod", "cat1"))
        if verb == "roundtrip":
            p.add_argument("--path", required=True, help="comma-separated functor names")
    return parser


def _promote(pres, kind, structure):
    """Read an algebra as a dg1 algebra concentrated in degree 0."""
    if kind == "algebra":
        n = structure.dim
        zero = lambda a, b: {g: BilinearMap.zeros(0, a, b) for g in pres.generator_names}
        return "dg1", DgPAlgebra1(Complex01(0, n, Matrix.zeros(n, 0)), dict(structure.mult),
                                  zero(0, n), zero(n, 0))
    return kind, structure


def _expect(kind, allowed, verb):
    if kind not in allowed:
        raise UsageError(f"{verb} expects a {' or '.join(allowed)} file, got {kind}")


CONVERSIONS = {
    ("dg1", "xmod"): [dg_to_xmod], ("dg1", "cat1"): [dg_to_cat1],
    ("xmod", "dg1"): [xmod_to_dg], ("xmod", "cat1"): [xmod_to_cat1],
    ("cat1", "xmod"): [cat1_to_xmod], ("cat1", "dg1"): [cat1_to_xmod, xmod_to_dg],
}


def execute(verb: str, pres, kind: str, structure, args) -> tuple:
    """Run one verb; returns ``(reports, result, extra)``; a result with a "kind" is a structure."""
    if verb == "validate":
        return [VALIDATORS[kind](pres, structure)], None, {}
    if verb in ("convert", "semidirect"):
        kind, structure = _promote(pres, kind, structure)
        target = "cat1" if verb == "semidirect" else args.to
        if verb == "semidirect":
            _expect(kind, ("dg1", "xmod"), verb)
        if kind == target:
            report = VALIDATORS[kind](pres, structure)
            return [report], structure_to_document(pres, structure) if report.valid else None, {}
        if (kind, target) not in CONVERSIONS:
            raise UsageError(f"no conversion from {kind} to {target}")
        out = structure
        for fn in CONVERSIONS[(kind, target)]:
            out = fn(pres, out)
        return [VALIDATORS[target](pres, out)], structure_to_document(pres, out), {}
    if verb == "compose":
        _expect(kind, ("cat1",), verb)
        return [cat1_compose(pres, structure)], None, {}
    if verb == "tot":
        _expect(kind, ("xmod2",), verb)
        out = tot_algebra(pres, structure)
        return [validate_dg2(pres, out)], structure_to_document(pres, out), {}
    if verb == "derivations":
        kind, structure = _promote(pres, kind, structure)
        _expect(kind, ("dg1",), verb)
        der = derivations(pres, structure)
        result = {
            "dims": list(der.dims),
            "der0": [{"D0": matrix_to_json(d0), "D1": matrix_to_json(d1)}
                     for d0, d1 in (der.der0_element(k) for k in range(der.dims[0]))],
            "der1": [matrix_to_json(der.der1_element(k)) for k in range(der.dims[1])],
            "bracket00": bilinear_to_json(der.bracket00),
            "bracket01": bilinear_to_json(der.bracket01),
            "boundary": matrix_to_json(der.boundary),
        }
        return [validate_dg1(pres, structure)], result, {}
    if verb == "adsquare":
        kind, structure = _promote(pres, kind, structure)
        _expect(kind, ("dg1",), verb)
        out = ad_square(pres, structure)
        return [validate_2crossed(pres, out)], structure_to_document(pres, out), {}
    if verb == "roundtrip":
        path = [p.strip() for p in args.path.split(",") if p.strip()]
        rt = roundtrip(pres, structure, path)
        extra = {"direction": rt.direction, "isomorphic": rt.isomorphic}
        report = Report("roundtrip", ())
        return [report], None, dict(extra, mismatches=[w.to_dict() for w in rt.mismatches])
    raise UsageError(f"unknown verb {verb!r}")


def _report(verb, digest, reports, result, extra, elapsed) -> dict:
    checks, witnesses = [], []
    for rep in reports:
        for r in rep.results:
            checks.append({"name": r.name, "status": "pass" if r.passed else "fail",
                           "cases": r.cases, "failures": len(r.witnesses)})
            witnesses.extend(w.to_dict() for w in r.witnesses)
    if "isomorphic" in extra:
        checks.append({"name": "ROUNDTRIP", "status": "pass" if extra["isomorphic"] else "fail",
                       "cases": 1, "failures": len(extra["mismatches"])})
        witnesses.extend(extra["mismatches"])
    ok = all(c["status"] == "pass" for c in checks)
    doc = {"tool": "xalg", "version": __version__, "command": verb, "input_digest": digest,
           "status": "pass" if ok else "fail", "checks": checks, "witnesses": witnesses}
    if "direction" in extra:
        doc["roundtrip"] = {"direction": extra["direction"], "isomorphic": extra["isomorphic"]}
    if result is not None:
        doc["result"] = result
    doc["timing"] = {"seconds": round(elapsed, 6)}
    return doc


def _output(report: dict, structure_doc) -> dict:
    """A produced structure is written in the input schema with the report attached."""
    doc = dict(structure_doc) if structure_doc is not None else {}
    doc["report"] = report
    return doc


def _human(report: dict) -> str:
    lines = [f"xalg {report['command']}: {report['status'].upper()}"]
    for c in report["checks"]:
        mark = "pass" if c["status"] == "pass" else f"FAIL ({c['failures']} witnesses)"
        lines.append(f"  {c['name']}: {mark}, {c['cases']} cases")
    for w in report["witnesses"]:
        lines.append(f"  witness {w['check']} [{w['label']}] degrees={w['degrees']} "
                     f"indices={w['indices']} defect=({', '.join(w['defect'])})")
    if "roundtrip" in report:
        lines.append(f"  roundtrip {report['roundtrip']['direction']}: "
                     f"isomorphic={str(report['roundtrip']['isomorphic']).lower()}")
    if "dims" in (report.get("result") or {}):
        lines.append(f"  derivation dims: Der0={report['result']['dims'][0]}, Der1={report['result']['dims'][1]}")
    return "\n".join(lines)


def _max_dim() -> int:
    raw = os.environ.get("XALG_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"XALG_MAX_DIM must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError("XALG_MAX_DIM must be non-negative")
    return value


def _emit(report, structure_doc, args, out):
    text = to_text(_output(report, structure_doc))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text if args.json else _human(report), file=out)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        with open(args.input, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        print(f"xalg: cannot read {args.input}: {exc.strerror}", file=err)
        return 2
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    try:
        pres, kind, structure = loads(raw.decode("utf-8"))
        limit = _max_dim()
        if max_dimension(structure) > limit:
            raise UsageError(f"dimension {max_dimension(structure)} exceeds XALG_MAX_DIM={limit}")
        reports, result, extra = execute(args.verb, pres, kind, structure, args)
    except InvalidStructure as exc:
        report = _report(args.verb, digest, [exc.report], None, {}, time.perf_counter() - start)
        _emit(report, None, args, out)
        return 1
    except ConsistencyError as exc:
        print(f"xalg: consistency failure: {exc}", file=err)
        return 1
    except (UsageError, SchemaError, ShapeError, StructureIncomplete, PathError, UnicodeDecodeError) as exc:
        print(f"xalg: {exc}", file=err)
        return 2
    structure_doc = result if isinstance(result, dict) and "kind" in result else None
    report = _report(args.verb, digest, reports, None if structure_doc else result, extra,
                     time.perf_counter() - start)
    _emit(report, structure_doc, args, out)
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
