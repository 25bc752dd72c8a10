"""2-crossed algebras on commuting squares, their totalization, and Der(g).

Bidegrees are pairs (p, q) in {0,1}^2.  The horizontal differential lowers
p, the vertical one lowers q, and swapping factors of bidegrees (p1, q1) and
(p2, q2) costs (-1)^(p1 p2 + q1 q2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .errors import ConsistencyError, ShapeError
from .graded import Square11, TotComplex, tot2
from .linalg import (BilinearMap, Matrix, Subspace, Vector, is_zero, kernel_basis, unit_vector,
                     vec_scale, vec_sub, zero_vector)
from .operads import GradedMult
from .structures import (Check, DgPAlgebra1, PAlgebra, Report, algebra_checks, check_dg1_shape,
                         derivation_check, register_checks, require_valid, run_checks, validate_dg1)

BIDEGREES = ((0, 0), (1, 0), (0, 1), (1, 1))


@dataclass(frozen=True)
class TwoCrossed:
    square: Square11
    mult: Mapping  # generator -> {(bidegree, bidegree): BilinearMap}

    def graded(self) -> GradedMult:
        dims = {b: self.square.dim(b) for b in BIDEGREES}
        maps = {(g, a, b): f for g, comps in self.mult.items() for (a, b), f in comps.items()}
        return GradedMult(dims, maps)


@dataclass(frozen=True)
class DgPAlgebra2:
    complex: TotComplex
    mult: Mapping  # generator -> {(degree, degree): BilinearMap}

    def graded(self) -> GradedMult:
        dims = {(k,): self.complex.dim(k) for k in range(3)}
        maps = {(g, (a,), (b,)): f for g, comps in self.mult.items() for (a, b), f in comps.items()}
        return GradedMult(dims, maps)


def _check_generators(pres, mult: Mapping):
    missing = set(pres.generator_names) - set(mult)
    extra = set(mult) - set(pres.generator_names)
    if missing or extra:
        raise ShapeError(f"multiplication generators {sorted(mult)} do not match {list(pres.generator_names)}")


def _matrix_columns_check(name: str, m: Matrix, space: str) -> Check:
    def cases():
        for j in range(m.cols):
            yield "map", (space,), (j,)

    def evaluate(label, degrees, indices):
        return m.column(indices[0])

    return Check(name, cases, evaluate)


def two_crossed_check_list(pres, t: TwoCrossed) -> list:
    _check_generators(pres, t.mult)
    sq = t.square
    gm = t.graded()
    for g, comps in t.mult.items():
        for (a, b) in comps:
            if gm.target(a, b) not in BIDEGREES:
                raise ShapeError(f"component {g!r} {a}x{b} lands outside the square")
    checks = [_matrix_columns_check("SQUARE", sq.commutator(), "C11")]
    checks += algebra_checks(pres, gm)
    checks.append(derivation_check(pres, gm, 0, {(1, 0): sq.dh0, (1, 1): sq.dh1}, "derivation/h"))
    checks.append(derivation_check(pres, gm, 1, {(0, 1): sq.dv0, (1, 1): sq.dv1}, "derivation/v"))
    return checks


def validate_2crossed(pres, t: TwoCrossed) -> Report:
    return run_checks("xmod2", two_crossed_check_list(pres, t))


def dg2_check_list(pres, a: DgPAlgebra2) -> list:
    _check_generators(pres, a.mult)
    c = a.complex
    gm = a.graded()
    checks = [_matrix_columns_check("DIFFERENTIAL", c.d1 @ c.d2, "Tot2")]
    checks += algebra_checks(pres, gm)
    checks.append(derivation_check(pres, gm, 0, {(1,): c.d1, (2,): c.d2}))
    return checks


def validate_dg2(pres, a: DgPAlgebra2) -> Report:
    return run_checks("dg2", dg2_check_list(pres, a))


register_checks(TwoCrossed, two_crossed_check_list)
register_checks(DgPAlgebra2, dg2_check_list)


# ------------------------------------------------------------- totalization

# Tot1 = C10 (+) C01, matching graded.tot2.
_TOT_BLOCKS = {0: ((0, 0),), 1: ((1, 0), (0, 1)), 2: ((1, 1),)}

TOT_SIGNS = {
    "p1q2": lambda a, b: (-1) ** (a[0] * b[1]),
    "q1p2": lambda a, b: (-1) ** (a[1] * b[0]),
}


def _locate(sq: Square11, total: int, k: int) -> tuple:
    for bideg in _TOT_BLOCKS[total]:
        n = sq.dim(bideg)
        if k < n:
            return bideg, k
        k -= n
    raise IndexError("basis index outside the total degree")


def _offset(sq: Square11, bideg) -> int:
    total = sum(bideg)
    off = 0
    for b in _TOT_BLOCKS[total]:
        if b == tuple(bideg):
            return off
        off += sq.dim(b)
    raise KeyError(bideg)


def tot_algebra(pres, t: TwoCrossed, sign: str = "p1q2", check: bool = True) -> DgPAlgebra2:
    """Totalize with d = (-1)^q d^h + d^v and the product sign ``TOT_SIGNS[sign]``.

    The default sign (-1)^(p1 q2) is the one compatible with this
    differential; "q1p2" is kept selectable so the alternative can be tested.
    """
    if check:
        require_valid(validate_2crossed(pres, t))
    eps = TOT_SIGNS[sign]
    sq = t.square
    gm = t.graded()
    cx = tot2(sq)
    mult = {}
    for g in pres.generator_names:
        comps = {}
        for m, n in product(range(3), repeat=2):
            if m + n > 2:
                continue
            dm, dn, dt = cx.dim(m), cx.dim(n), cx.dim(m + n)

            def f(i, j, m=m, n=n, dt=dt, g=g):
                (a, ia), (b, jb) = _locate(sq, m, i), _locate(sq, n, j)
                out = list(zero_vector(dt))
                val = gm.multiply(g, (a, unit_vector(sq.dim(a), ia)), (b, unit_vector(sq.dim(b), jb)))
                if val is not None:
                    off = _offset(sq, val[0])
                    out[off:off + len(val[1])] = vec_scale(eps(a, b), val[1])
                return out

            comps[(m, n)] = BilinearMap.from_function(dt, dm, dn, f)
        mult[g] = comps
    return DgPAlgebra2(cx, mult)


# ------------------------------------------------------------------ corners

def corner_algebras(pres, t: TwoCrossed, check: bool = True) -> dict:
    """The four derived algebras on the corners of the square.

    g00: mu(x, y); g01: mu(x, dv y); g10: mu(x, dh y); g11: mu(x, dh dv y).
    The equivalent parenthesized forms are recomputed and must agree.
    """
    if check:
        require_valid(validate_2crossed(pres, t))
    sq = t.square
    gm = t.graded()

    def mu(g, a, x, b, y):
        val = gm.multiply(g, (a, x), (b, y))
        target = gm.target(a, b)
        return val[1] if val is not None else zero_vector(gm.dim(target))

    forms = {
        "00": ((0, 0), [lambda g, x, y: mu(g, (0, 0), x, (0, 0), y)]),
        "01": ((0, 1), [lambda g, x, y: mu(g, (0, 1), x, (0, 0), sq.dv0.apply(y)),
                        lambda g, x, y: mu(g, (0, 0), sq.dv0.apply(x), (0, 1), y)]),
        "10": ((1, 0), [lambda g, x, y: mu(g, (1, 0), x, (0, 0), sq.dh0.apply(y)),
                        lambda g, x, y: mu(g, (0, 0), sq.dh0.apply(x), (1, 0), y)]),
        "11": ((1, 1), [lambda g, x, y: mu(g, (1, 1), x, (0, 0), sq.dh0.apply(sq.dv1.apply(y))),
                        lambda g, x, y: mu(g, (0, 1), sq.dh1.apply(x), (1, 0), sq.dv1.apply(y)),
                        lambda g, x, y: mu(g, (1, 0), sq.dv1.apply(x), (0, 1), sq.dh1.apply(y)),
                        lambda g, x, y: mu(g, (0, 0), sq.dv0.apply(sq.dh1.apply(x)), (1, 1), y)]),
    }
    out = {}
    for name, (bideg, fns) in forms.items():
        n = sq.dim(bideg)
        mult = {}
        for g in pres.generator_names:
            for i, j in product(range(n), repeat=2):
                x, y = unit_vector(n, i), unit_vector(n, j)
                values = [fn(g, x, y) for fn in fns]
                for k, v in enumerate(values[1:], start=1):
                    if v != values[0]:
                        raise ConsistencyError(
                            f"corner {name}: form {k} differs from form 0 on ({i}, {j}) by {vec_sub(v, values[0])}")
            mult[g] = BilinearMap.from_function(n, n, n, lambda i, j, g=g, f=fns[0]: f(g, unit_vector(n, i), unit_vector(n, j)))
        out[name] = PAlgebra(n, mult)
    return out


# -------------------------------------------------------------- derivations

def _flat(m: Matrix) -> list:
    return [x for row in m.entries for x in row]


def _unflat(v, rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, tuple(tuple(v[r * cols:(r + 1) * cols]) for r in range(rows)))


def _graded_pairs(gm: GradedMult):
    for da, db in product(gm.degrees(), repeat=2):
        if gm.dim(gm.target(da, db)):
            for i, j in product(range(gm.dim(da)), range(gm.dim(db))):
                yield da, i, db, j


def der0_residual(pres, g: DgPAlgebra1, d0: Matrix, d1: Matrix) -> Vector:
    """Leibniz and chain-map residuals of a degree-0 candidate (D0, D1)."""
    gm = g.graded()
    maps = {(0,): d0, (1,): d1}
    res = []
    for gen in pres.generator_names:
        for da, i, db, j in _graded_pairs(gm):
            a = (da, unit_vector(gm.dim(da), i))
            b = (db, unit_vector(gm.dim(db), j))
            ab = gm.multiply(gen, a, b)
            r = maps[ab[0]].apply(ab[1])
            r = vec_sub(r, gm.multiply(gen, (da, maps[da].apply(a[1])), b)[1])
            r = vec_sub(r, gm.multiply(gen, a, (db, maps[db].apply(b[1])))[1])
            res.extend(r)
    res.extend(_flat(g.d @ d1 - d0 @ g.d))
    return tuple(res)


def der1_residual(pres, g: DgPAlgebra1, e: Matrix) -> Vector:
    """Leibniz residual of a degree-1 candidate E: g0 -> g1 on degree-0 pairs."""
    n0 = g.carrier.dim0
    res = []
    for gen in pres.generator_names:
        for i, j in product(range(n0), repeat=2):
            x, y = unit_vector(n0, i), unit_vector(n0, j)
            r = e.apply(g.mult00[gen](x, y))
            r = vec_sub(r, g.mult10[gen](e.apply(x), y))
            r = vec_sub(r, g.mult01[gen](x, e.apply(y)))
            res.extend(r)
    return tuple(res)


def _solve_linear(n_unknowns: int, residual) -> Subspace:
    columns = [residual(unit_vector(n_unknowns, k)) for k in range(n_unknowns)]
    rows = len(columns[0]) if columns else 0
    return kernel_basis(Matrix.from_columns(columns, rows))


@dataclass(frozen=True)
class DerivationAlgebra:
    g: DgPAlgebra1
    der0: Subspace   # in the coordinates (flat D0, flat D1)
    der1: Subspace   # in the coordinates flat E
    bracket00: BilinearMap
    bracket01: BilinearMap
    bracket10: BilinearMap
    boundary: Matrix  # Der1 -> Der0, E -> (d E, E d)

    @property
    def dims(self) -> tuple:
        return self.der0.dim, self.der1.dim

    def der0_element(self, k: int) -> tuple:
        return _split_der0(self.g, self.der0.basis[k])

    def der1_element(self, k: int) -> Matrix:
        return _unflat(self.der1.basis[k], self.g.carrier.dim1, self.g.carrier.dim0)

    def der0_coordinates(self, d0: Matrix, d1: Matrix):
        return self.der0.coordinates(tuple(_flat(d0) + _flat(d1)))

    def der1_coordinates(self, e: Matrix):
        return self.der1.coordinates(tuple(_flat(e)))


def _split_der0(g: DgPAlgebra1, v) -> tuple:
    n0, n1 = g.carrier.dim0, g.carrier.dim1
    return _unflat(v[:n0 * n0], n0, n0), _unflat(v[n0 * n0:], n1, n1)


def derivations(pres, g: DgPAlgebra1, check: bool = True) -> DerivationAlgebra:
    check_dg1_shape(pres, g)
    if check:
        require_valid(validate_dg1(pres, g))
    n0, n1 = g.carrier.dim0, g.carrier.dim1
    der0 = _solve_linear(n0 * n0 + n1 * n1, lambda v: der0_residual(pres, g, *_split_der0(g, v)))
    der1 = _solve_linear(n1 * n0, lambda v: der1_residual(pres, g, _unflat(v, n1, n0)))
    for v in der0.basis:
        if not is_zero(der0_residual(pres, g, *_split_der0(g, v))):
            raise ConsistencyError("degree-0 derivation basis fails its Leibniz rule")
    for v in der1.basis:
        if not is_zero(der1_residual(pres, g, _unflat(v, n1, n0))):
            raise ConsistencyError("degree-1 derivation basis fails its Leibniz rule")

    def c0(d0, d1):
        out = der0.coordinates(tuple(_flat(d0) + _flat(d1)))
        if out is None:
            raise ConsistencyError("commutator left the degree-0 derivations")
        return out

    def c1(e):
        out = der1.coordinates(tuple(_flat(e)))
        if out is None:
            raise ConsistencyError("commutator left the degree-1 derivations")
        return out

    el0 = [_split_der0(g, v) for v in der0.basis]
    el1 = [_unflat(v, n1, n0) for v in der1.basis]
    a0, a1 = len(el0), len(el1)
    b00 = BilinearMap.from_function(a0, a0, a0, lambda i, j: c0(
        el0[i][0] @ el0[j][0] - el0[j][0] @ el0[i][0], el0[i][1] @ el0[j][1] - el0[j][1] @ el0[i][1]))
    b01 = BilinearMap.from_function(a1, a0, a1, lambda i, j: c1(el0[i][1] @ el1[j] - el1[j] @ el0[i][0]))
    b10 = BilinearMap.from_function(a1, a1, a0, lambda i, j: vec_scale(-1, b01.on_basis(j, i)))
    boundary = Matrix.from_function(a0, a1, lambda j: c0(g.d @ el1[j], el1[j] @ g.d))
    return DerivationAlgebra(g, der0, der1, b00, b01, b10, boundary)


def ad_square(pres, g: DgPAlgebra1, check: bool = True) -> TwoCrossed:
    """Square  Der1 <- g1 ; Der0 <- g0  with ad horizontally and d vertically."""
    if len(pres.generators) != 1 or pres.generators[0].symmetry != "antisymmetric":
        raise ValueError("the ad square is defined for a single antisymmetric bracket")
    gen = pres.generators[0].name
    der = derivations(pres, g, check=check)
    n0, n1 = g.carrier.dim0, g.carrier.dim1
    a0, a1 = der.dims
    br00, br10, br01 = g.mult00[gen], g.mult10[gen], g.mult01[gen]

    def ad0(j):
        x = unit_vector(n0, j)
        d0 = Matrix.from_function(n0, n0, lambda k: br00(x, unit_vector(n0, k)))
        d1 = Matrix.from_function(n1, n1, lambda k: br01(x, unit_vector(n1, k)))
        out = der.der0_coordinates(d0, d1)
        if out is None:
            raise ConsistencyError(f"ad of degree-0 basis vector {j} is not a derivation")
        return out

    def ad1(j):
        v = unit_vector(n1, j)
        e = Matrix.from_function(n1, n0, lambda k: br10(v, unit_vector(n0, k)))
        out = der.der1_coordinates(e)
        if out is None:
            raise ConsistencyError(f"ad of degree-1 basis vector {j} is not a derivation")
        return out

    sq = Square11((a0, n0, a1, n1), Matrix.from_function(a0, n0, ad0),
                  Matrix.from_function(a1, n1, ad1), der.boundary, g.d)
    el0 = [der.der0_element(k) for k in range(a0)]
    el1 = [der.der1_element(k) for k in range(a1)]

    def act(n_out, n_a, n_b, f, sign=1):
        return BilinearMap.from_function(n_out, n_a, n_b, lambda i, j: vec_scale(sign, f(i, j)))

    on_g0 = lambda i, j: el0[i][0].column(j)            # D0 x
    on_g1 = lambda i, j: el0[i][1].column(j)            # D1 v
    eval1 = lambda i, j: el1[i].column(j)               # E x
    c00, c10, c01, c11 = (0, 0), (1, 0), (0, 1), (1, 1)
    comps = {
        (c00, c00): der.bracket00,
        (c00, c01): der.bracket01,
        (c01, c00): der.bracket10,
        (c00, c10): act(n0, a0, n0, on_g0),
        (c10, c00): act(n0, n0, a0, lambda i, j: on_g0(j, i), -1),
        (c00, c11): act(n1, a0, n1, on_g1),
        (c11, c00): act(n1, n1, a0, lambda i, j: on_g1(j, i), -1),
        (c01, c10): act(n1, a1, n0, eval1),
        (c10, c01): act(n1, n0, a1, lambda i, j: eval1(j, i), -1),
    }
    return TwoCrossed(sq, {gen: comps})
