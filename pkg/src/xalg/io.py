"""JSON structure files (schema 1).

Rationals are written as ints or ``"p/q"`` strings.  A matrix is a list of
rows.  A bilinear map ``T`` is nested as ``T[i][j]`` = coordinates of the
product of basis vectors i and j (structure constants ``c_ij^k``).

Kinds and their fields::

    algebra  dim, mult{gen: T}
    dg1      dim0, dim1, d, mult{gen: {"00": T, "10": T, "01": T}}
    xmod     x{dim, mult}, b{dim, mult}, actLeft{gen: T}, actRight{gen: T}, d
    cat1     e{dim, mult}, b{dim, mult}, s, t, i
    xmod2    square{dims[c00, c10, c01, c11], dh0, dh1, dv0, dv1},
             mult{gen: {"00x10": T, ...}}
    dg2      dims[t0, t1, t2], d1, d2, mult{gen: {"0x1": T, ...}}

The theory is a builtin name under ``"theory"`` or a custom presentation
under ``"presentation"``.  A component may be omitted only when it is empty
(some space involved has dimension zero).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .errors import SchemaError, StructureIncomplete
from .graded import Complex01, Square11, TotComplex
from .higher import BIDEGREES, DgPAlgebra2, TwoCrossed
from .linalg import BilinearMap, Matrix, frac
from .operads import (BUILTIN_THEORIES, OperadPresentation, builtin_presentation,
                      presentation_from_dict, presentation_to_dict)
from .structures import Cat1Algebra, CrossedModule, DgPAlgebra1, PAlgebra

SCHEMA_VERSION = 1
KINDS = ("algebra", "dg1", "xmod", "cat1", "xmod2", "dg2")


def rational_to_json(x: Fraction):
    x = frac(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(f"{where}: expected an int or a \"p/q\" string, got {x!r}")
    try:
        return frac(x)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: {x!r} is not a rational") from None


def _dim(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise SchemaError(f"{where}: expected a non-negative int, got {x!r}")
    return x


def _field(data: dict, key: str, where: str):
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in data:
        raise SchemaError(f"{where}: missing field {key!r}")
    return data[key]


def matrix_from_json(data, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(data, list) or len(data) != rows:
        raise SchemaError(f"{where}: expected {rows} rows")
    out = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"{where}: row {r} must have {cols} entries")
        out.append(tuple(_rational(x, f"{where}[{r}]") for x in row))
    return Matrix(rows, cols, tuple(out))


def matrix_to_json(m: Matrix) -> list:
    return [[rational_to_json(x) for x in row] for row in m.entries]


def bilinear_from_json(data, dim_out: int, dim_a: int, dim_b: int, where: str) -> BilinearMap:
    if data is None:
        if dim_out and dim_a and dim_b:
            raise StructureIncomplete(f"{where}: missing multiplication component")
        return BilinearMap.zeros(dim_out, dim_a, dim_b)
    if not isinstance(data, list) or len(data) != dim_a:
        raise SchemaError(f"{where}: expected {dim_a} rows of products")
    images = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != dim_b:
            raise SchemaError(f"{where}[{i}]: expected {dim_b} products")
        cells = []
        for j, v in enumerate(row):
            if not isinstance(v, list) or len(v) != dim_out:
                raise SchemaError(f"{where}[{i}][{j}]: expected a vector of length {dim_out}")
            cells.append([_rational(x, f"{where}[{i}][{j}]") for x in v])
        images.append(cells)
    return BilinearMap.from_function(dim_out, dim_a, dim_b, lambda i, j: images[i][j])


def bilinear_to_json(f: BilinearMap) -> list:
    return [[[rational_to_json(x) for x in f.on_basis(i, j)] for j in range(f.dim_b)]
            for i in range(f.dim_a)]


# -------------------------------------------------------------- presentation

def presentation_from_document(doc: dict) -> OperadPresentation:
    if "theory" in doc:
        name = doc["theory"]
        if name not in BUILTIN_THEORIES:
            raise SchemaError(f"unknown theory {name!r}; expected one of {', '.join(BUILTIN_THEORIES)}")
        return builtin_presentation(name)
    if "presentation" in doc:
        try:
            return presentation_from_dict(doc["presentation"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"presentation: {exc}") from None
    raise SchemaError("missing \"theory\" or \"presentation\"")


def presentation_to_document(pres: OperadPresentation) -> dict:
    if pres.name in BUILTIN_THEORIES and builtin_presentation(pres.name) == pres:
        return {"theory": pres.name}
    return {"presentation": presentation_to_dict(pres)}


# ----------------------------------------------------------------- per kind

def _family(data, gens, dims, where) -> dict:
    data = data or {}
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected an object keyed by generator")
    extra = set(data) - set(gens)
    if extra:
        raise SchemaError(f"{where}: undeclared generators {sorted(extra)}")
    return {g: bilinear_from_json(data.get(g), *dims, f"{where}.{g}") for g in gens}


def _algebra(data, gens, where) -> PAlgebra:
    n = _dim(_field(data, "dim", where), f"{where}.dim")
    return PAlgebra(n, _family(data.get("mult"), gens, (n, n, n), f"{where}.mult"))


def _algebra_json(a: PAlgebra) -> dict:
    return {"dim": a.dim, "mult": {g: bilinear_to_json(f) for g, f in a.mult.items()}}


def _graded_family(data, gens, shapes: dict, where) -> dict:
    """``{gen: {key: T}}`` -> ``{gen: {key: BilinearMap}}`` for the given key shapes."""
    data = data or {}
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected an object keyed by generator")
    extra = set(data) - set(gens)
    if extra:
        raise SchemaError(f"{where}: undeclared generators {sorted(extra)}")
    out = {}
    for g in gens:
        comps = data.get(g) or {}
        unknown = set(comps) - set(shapes)
        if unknown:
            raise SchemaError(f"{where}.{g}: unknown components {sorted(unknown)}")
        out[g] = {key: bilinear_from_json(comps.get(key), *shape, f"{where}.{g}.{key}")
                  for key, shape in shapes.items()}
    return out


def _bideg_key(a, b) -> str:
    return f"{a[0]}{a[1]}x{b[0]}{b[1]}"


def structure_from_document(doc: dict) -> tuple:
    """Parse a schema-1 document into ``(presentation, kind, structure)``."""
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}; expected {SCHEMA_VERSION}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    pres = presentation_from_document(doc)
    gens = pres.generator_names

    if kind == "algebra":
        return pres, kind, _algebra(doc, gens, "algebra")

    if kind == "dg1":
        n0 = _dim(_field(doc, "dim0", "dg1"), "dim0")
        n1 = _dim(_field(doc, "dim1", "dg1"), "dim1")
        d = matrix_from_json(_field(doc, "d", "dg1"), n0, n1, "d")
        comps = _graded_family(doc.get("mult"), gens,
                               {"00": (n0, n0, n0), "10": (n1, n1, n0), "01": (n1, n0, n1)}, "mult")
        return pres, kind, DgPAlgebra1(Complex01(n1, n0, d),
                                       {g: c["00"] for g, c in comps.items()},
                                       {g: c["10"] for g, c in comps.items()},
                                       {g: c["01"] for g, c in comps.items()})

    if kind == "xmod":
        x = _algebra(_field(doc, "x", "xmod"), gens, "x")
        b = _algebra(_field(doc, "b", "xmod"), gens, "b")
        return pres, kind, CrossedModule(
            x, b, _family(doc.get("actLeft"), gens, (x.dim, b.dim, x.dim), "actLeft"),
            _family(doc.get("actRight"), gens, (x.dim, x.dim, b.dim), "actRight"),
            matrix_from_json(_field(doc, "d", "xmod"), b.dim, x.dim, "d"))

    if kind == "cat1":
        e = _algebra(_field(doc, "e", "cat1"), gens, "e")
        b = _algebra(_field(doc, "b", "cat1"), gens, "b")
        return pres, kind, Cat1Algebra(
            e, b, matrix_from_json(_field(doc, "s", "cat1"), b.dim, e.dim, "s"),
            matrix_from_json(_field(doc, "t", "cat1"), b.dim, e.dim, "t"),
            matrix_from_json(_field(doc, "i", "cat1"), e.dim, b.dim, "i"))

    if kind == "xmod2":
        sqd = _field(doc, "square", "xmod2")
        dims = _field(sqd, "dims", "square")
        if not isinstance(dims, list) or len(dims) != 4:
            raise SchemaError("square.dims must list four dimensions")
        c00, c10, c01, c11 = (_dim(x, "square.dims") for x in dims)
        sq = Square11((c00, c10, c01, c11),
                      matrix_from_json(_field(sqd, "dh0", "square"), c00, c10, "dh0"),
                      matrix_from_json(_field(sqd, "dh1", "square"), c01, c11, "dh1"),
                      matrix_from_json(_field(sqd, "dv0", "square"), c00, c01, "dv0"),
                      matrix_from_json(_field(sqd, "dv1", "square"), c10, c11, "dv1"))
        shapes, keys = {}, {}
        for a in BIDEGREES:
            for b in BIDEGREES:
                tgt = (a[0] + b[0], a[1] + b[1])
                if tgt in BIDEGREES:
                    shapes[_bideg_key(a, b)] = (sq.dim(tgt), sq.dim(a), sq.dim(b))
                    keys[_bideg_key(a, b)] = (a, b)
        comps = _graded_family(doc.get("mult"), gens, shapes, "mult")
        return pres, kind, TwoCrossed(sq, {g: {keys[k]: f for k, f in c.items()} for g, c in comps.items()})

    dims = _field(doc, "dims", "dg2")
    if not isinstance(dims, list) or len(dims) != 3:
        raise SchemaError("dims must list three dimensions")
    t0, t1, t2 = (_dim(x, "dims") for x in dims)
    cx = TotComplex((t0, t1, t2), matrix_from_json(_field(doc, "d1", "dg2"), t0, t1, "d1"),
                    matrix_from_json(_field(doc, "d2", "dg2"), t1, t2, "d2"))
    shapes = {f"{m}x{n}": (cx.dim(m + n), cx.dim(m), cx.dim(n))
              for m in range(3) for n in range(3) if m + n <= 2}
    comps = _graded_family(doc.get("mult"), gens, shapes, "mult")
    return pres, kind, DgPAlgebra2(cx, {g: {(int(k[0]), int(k[2])): f for k, f in c.items()}
                                        for g, c in comps.items()})


def _component_or_zero(sq: Square11, comps: dict, a, b) -> BilinearMap:
    f = comps.get((a, b))
    if f is None:
        f = BilinearMap.zeros(sq.dim((a[0] + b[0], a[1] + b[1])), sq.dim(a), sq.dim(b))
    return f


def structure_to_document(pres: OperadPresentation, structure) -> dict:
    doc: dict[str, Any] = {"schema": SCHEMA_VERSION}
    if isinstance(structure, PAlgebra):
        doc["kind"] = "algebra"
        doc.update(presentation_to_document(pres))
        doc.update(_algebra_json(structure))
    elif isinstance(structure, DgPAlgebra1):
        doc["kind"] = "dg1"
        doc.update(presentation_to_document(pres))
        doc.update({"dim0": structure.carrier.dim0, "dim1": structure.carrier.dim1,
                    "d": matrix_to_json(structure.d),
                    "mult": {g: {"00": bilinear_to_json(structure.mult00[g]),
                                 "10": bilinear_to_json(structure.mult10[g]),
                                 "01": bilinear_to_json(structure.mult01[g])}
                             for g in structure.mult00}})
    elif isinstance(structure, CrossedModule):
        doc["kind"] = "xmod"
        doc.update(presentation_to_document(pres))
        doc.update({"x": _algebra_json(structure.x), "b": _algebra_json(structure.b),
                    "actLeft": {g: bilinear_to_json(f) for g, f in structure.act_left.items()},
                    "actRight": {g: bilinear_to_json(f) for g, f in structure.act_right.items()},
                    "d": matrix_to_json(structure.d)})
    elif isinstance(structure, Cat1Algebra):
        doc["kind"] = "cat1"
        doc.update(presentation_to_document(pres))
        doc.update({"e": _algebra_json(structure.e), "b": _algebra_json(structure.b),
                    "s": matrix_to_json(structure.s), "t": matrix_to_json(structure.t),
                    "i": matrix_to_json(structure.i)})
    elif isinstance(structure, TwoCrossed):
        sq = structure.square
        doc["kind"] = "xmod2"
        doc.update(presentation_to_document(pres))
        doc.update({"square": {"dims": list(sq.dims), "dh0": matrix_to_json(sq.dh0),
                               "dh1": matrix_to_json(sq.dh1), "dv0": matrix_to_json(sq.dv0),
                               "dv1": matrix_to_json(sq.dv1)},
                    "mult": {g: {_bideg_key(a, b): bilinear_to_json(_component_or_zero(sq, comps, a, b))
                                 for a in BIDEGREES for b in BIDEGREES
                                 if (a[0] + b[0], a[1] + b[1]) in BIDEGREES}
                             for g, comps in structure.mult.items()}})
    elif isinstance(structure, DgPAlgebra2):
        cx = structure.complex
        doc["kind"] = "dg2"
        doc.update(presentation_to_document(pres))
        doc.update({"dims": list(cx.dims), "d1": matrix_to_json(cx.d1), "d2": matrix_to_json(cx.d2),
                    "mult": {g: {f"{m}x{n}": bilinear_to_json(f) for (m, n), f in sorted(comps.items())}
                             for g, comps in structure.mult.items()}})
    else:
        raise TypeError(f"cannot serialize {type(structure).__name__}")
    return doc


def loads(text: str) -> tuple:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return structure_from_document(doc)


_SCALAR_LIST = re.compile(r"\[[^\[\]{}]*\]")


def to_text(doc: dict) -> str:
    """Indented JSON with innermost lists (coordinate vectors) kept on one line."""
    text = json.dumps(doc, indent=2)
    return _SCALAR_LIST.sub(lambda m: json.dumps(json.loads(m.group(0))), text)


def dumps(pres: OperadPresentation, structure) -> str:
    return to_text(structure_to_document(pres, structure))


def load(path) -> tuple:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def max_dimension(structure) -> int:
    if isinstance(structure, PAlgebra):
        return structure.dim
    if isinstance(structure, DgPAlgebra1):
        return max(structure.carrier.dim0, structure.carrier.dim1)
    if isinstance(structure, CrossedModule):
        return max(structure.x.dim, structure.b.dim)
    if isinstance(structure, Cat1Algebra):
        return max(structure.e.dim, structure.b.dim)
    if isinstance(structure, TwoCrossed):
        return max(structure.square.dims)
    if isinstance(structure, DgPAlgebra2):
        return max(structure.complex.dims)
    raise TypeError(type(structure).__name__)
