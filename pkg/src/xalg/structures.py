"""Structure types, their validators, and witness-bearing reports.

Every validator is a list of named :class:`Check` objects.  A check knows how
to enumerate its cases (label, degree pattern, basis indices) and how to
evaluate the defect of one case, so any reported witness can be replayed by
feeding its case back to the check of the same name.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping

from .errors import InvalidStructure, ShapeError, StructureIncomplete
from .graded import Complex01, as_degree
from .linalg import (BilinearMap, Matrix, Vector, identity, inverse, is_zero, kernel_basis,
                     unit_vector, vec_add, vec_scale, vec_sub, zero_vector)
from .operads import GradedMult, OperadPresentation, evaluate_term_on_basis, symmetry_defect


# ---------------------------------------------------------------- structures

@dataclass(frozen=True)
class PAlgebra:
    dim: int
    mult: Mapping  # generator name -> BilinearMap (dim, dim -> dim)

    def graded(self) -> GradedMult:
        return GradedMult({(0,): self.dim}, {(g, (0,), (0,)): f for g, f in self.mult.items()})

    def __call__(self, gen: str, u, v) -> Vector:
        return self.mult[gen](u, v)


@dataclass(frozen=True)
class DgPAlgebra1:
    carrier: Complex01
    mult00: Mapping  # V0 x V0 -> V0
    mult10: Mapping  # V1 x V0 -> V1
    mult01: Mapping  # V0 x V1 -> V1

    @property
    def d(self) -> Matrix:
        return self.carrier.d

    def graded(self) -> GradedMult:
        maps = {}
        for comp, (a, b) in (("mult00", (0, 0)), ("mult10", (1, 0)), ("mult01", (0, 1))):
            for g, f in getattr(self, comp).items():
                maps[(g, (a,), (b,))] = f
        return GradedMult({(0,): self.carrier.dim0, (1,): self.carrier.dim1}, maps)

    def degree0(self) -> PAlgebra:
        return PAlgebra(self.carrier.dim0, dict(self.mult00))


@dataclass(frozen=True)
class CrossedModule:
    x: PAlgebra
    b: PAlgebra
    act_left: Mapping   # B x X -> X
    act_right: Mapping  # X x B -> X
    d: Matrix           # X -> B


@dataclass(frozen=True)
class Cat1Algebra:
    e: PAlgebra
    b: PAlgebra
    s: Matrix
    t: Matrix
    i: Matrix


# ------------------------------------------------------------------- reports

@dataclass(frozen=True)
class Witness:
    check: str
    label: str
    degrees: tuple
    indices: tuple
    defect: tuple

    def to_dict(self) -> dict:
        return {"check": self.check, "label": self.label,
                "degrees": [list(d) if isinstance(d, tuple) else d for d in self.degrees],
                "indices": list(self.indices), "defect": [str(x) for x in self.defect]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Witness":
        return cls(data["check"], data["label"],
                   tuple(tuple(d) if isinstance(d, list) else d for d in data["degrees"]),
                   tuple(data["indices"]), tuple(Fraction(x) for x in data["defect"]))


@dataclass(frozen=True)
class Check:
    name: str
    cases: Callable[[], Iterable[tuple]]  # yields (label, degrees, indices)
    evaluate: Callable[[str, tuple, tuple], Vector]

    def run(self) -> "CheckResult":
        witnesses, count = [], 0
        for label, degrees, indices in self.cases():
            count += 1
            defect = self.evaluate(label, degrees, indices)
            if not is_zero(defect):
                witnesses.append(Witness(self.name, label, degrees, indices, tuple(defect)))
        return CheckResult(self.name, tuple(witnesses), count)


@dataclass(frozen=True)
class CheckResult:
    name: str
    witnesses: tuple
    cases: int

    @property
    def passed(self) -> bool:
        return not self.witnesses


@dataclass(frozen=True)
class Report:
    kind: str
    results: tuple

    @property
    def valid(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def witnesses(self) -> list:
        return [w for r in self.results for w in r.witnesses]

    def failed(self) -> list:
        return [r.name for r in self.results if not r.passed]

    def result(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def summary(self) -> str:
        lines = []
        for r in self.results:
            status = "pass" if r.passed else f"FAIL ({len(r.witnesses)} witnesses)"
            lines.append(f"{r.name}: {status} over {r.cases} cases")
        return "\n".join(lines)


def run_checks(kind: str, checks: Iterable[Check]) -> Report:
    return Report(kind, tuple(c.run() for c in checks))


def prefixed(prefix: str, checks: Iterable[Check]) -> list:
    return [Check(f"{prefix}/{c.name}", c.cases, c.evaluate) for c in checks]


# ------------------------------------------------------------ shape checking

def check_mult_family(pres: OperadPresentation, mult: Mapping, dims: tuple, what: str):
    """Every generator present with a map of shape ``dims = (out, a, b)``."""
    for g in pres.generator_names:
        if g not in mult:
            raise StructureIncomplete(f"{what} has no component for generator {g!r}")
        f = mult[g]
        if (f.dim_out, f.dim_a, f.dim_b) != dims:
            raise ShapeError(f"{what} component {g!r} is {f.dim_a}x{f.dim_b}->{f.dim_out}, "
                             f"expected {dims[1]}x{dims[2]}->{dims[0]}")
    extra = set(mult) - set(pres.generator_names)
    if extra:
        raise ShapeError(f"{what} names undeclared generators {sorted(extra)}")


def check_matrix(m: Matrix, rows: int, cols: int, what: str):
    if (m.rows, m.cols) != (rows, cols):
        raise ShapeError(f"{what} must be {rows}x{cols}, got {m.rows}x{m.cols}")


def check_algebra_shape(pres, a: PAlgebra, what="algebra"):
    check_mult_family(pres, a.mult, (a.dim, a.dim, a.dim), what)


def check_dg1_shape(pres, a: DgPAlgebra1):
    n0, n1 = a.carrier.dim0, a.carrier.dim1
    check_mult_family(pres, a.mult00, (n0, n0, n0), "mult00")
    check_mult_family(pres, a.mult10, (n1, n1, n0), "mult10")
    check_mult_family(pres, a.mult01, (n1, n0, n1), "mult01")


def check_xmod_shape(pres, cm: CrossedModule):
    check_algebra_shape(pres, cm.x, "X")
    check_algebra_shape(pres, cm.b, "B")
    nx, nb = cm.x.dim, cm.b.dim
    check_mult_family(pres, cm.act_left, (nx, nb, nx), "actLeft")
    check_mult_family(pres, cm.act_right, (nx, nx, nb), "actRight")
    check_matrix(cm.d, nb, nx, "d")


def check_cat1_shape(pres, c: Cat1Algebra):
    check_algebra_shape(pres, c.e, "E")
    check_algebra_shape(pres, c.b, "B")
    ne, nb = c.e.dim, c.b.dim
    check_matrix(c.s, nb, ne, "s")
    check_matrix(c.t, nb, ne, "t")
    check_matrix(c.i, ne, nb, "i")


# ----------------------------------------------------------- generic checks

def _plain(degrees):
    """Single gradings are reported as bare ints."""
    return tuple(d[0] if len(d) == 1 else d for d in degrees)


def _elements(gm: GradedMult, degrees, indices):
    return [(as_degree(d), unit_vector(gm.dim(d), i)) for d, i in zip(degrees, indices)]


def relation_check(pres: OperadPresentation, gm: GradedMult, name="relations") -> Check:
    degs = gm.degrees()
    rels = {r.name: r for r in pres.relations}

    def cases():
        for rel in pres.relations:
            for triple in product(degs, repeat=3):
                total = tuple(sum(p) for p in zip(*triple))
                if not gm.dim(total):
                    continue
                for idx in product(*(range(gm.dim(d)) for d in triple)):
                    yield rel.name, _plain(triple), idx

    def evaluate(label, degrees, indices):
        degrees = tuple(as_degree(d) for d in degrees)
        total = tuple(sum(p) for p in zip(*degrees))
        acc = zero_vector(gm.dim(total))
        for t in rels[label].terms:
            val = evaluate_term_on_basis(t, gm, degrees, tuple(indices))
            if val is not None:
                acc = vec_add(acc, val)
        return acc

    return Check(name, cases, evaluate)


def symmetry_check(pres: OperadPresentation, gm: GradedMult, name="symmetry") -> Check:
    degs = gm.degrees()
    basis = [(d, i) for d in degs for i in range(gm.dim(d))]

    def cases():
        for g in pres.generators:
            if g.swap_sign == 0:
                continue
            for a, b in product(basis, repeat=2):
                if a <= b and gm.dim(gm.target(a[0], b[0])):
                    yield g.name, _plain((a[0], b[0])), (a[1], b[1])

    def evaluate(label, degrees, indices):
        a, b = _elements(gm, degrees, indices)
        return symmetry_defect(pres.generator(label), gm, a, b)

    return Check(name, cases, evaluate)


def derivation_check(pres: OperadPresentation, gm: GradedMult, axis: int, diff: Mapping,
                     name="derivation") -> Check:
    """``delta mu(a,b) = mu(delta a, b) + (-1)^{A_axis} mu(a, delta b)``.

    ``diff`` maps a degree to the matrix lowering its ``axis`` component by
    one.  Cases are all pairs whose lowered total degree carries a space; the
    left side is zero when ``mu(a, b)`` itself lands outside the carrier.
    """
    degs = gm.degrees()

    def lower(deg):
        return tuple(x - (k == axis) for k, x in enumerate(deg))

    def delta(el):
        m = diff.get(el[0])
        if m is None or not gm.dim(lower(el[0])):
            return None
        return lower(el[0]), m.apply(el[1])

    def cases():
        for g in pres.generator_names:
            for da, db in product(degs, repeat=2):
                if gm.dim(lower(gm.target(da, db))):
                    for idx in product(range(gm.dim(da)), range(gm.dim(db))):
                        yield g, _plain((da, db)), idx

    def evaluate(label, degrees, indices):
        a, b = _elements(gm, degrees, indices)
        out_deg = lower(gm.target(a[0], b[0]))
        acc = zero_vector(gm.dim(out_deg))
        ab = gm.multiply(label, a, b)
        if ab is not None:
            dab = delta(ab)
            if dab is not None:
                acc = vec_add(acc, dab[1])
        t1 = gm.multiply(label, delta(a), b)
        if t1 is not None:
            acc = vec_sub(acc, t1[1])
        t2 = gm.multiply(label, a, delta(b))
        if t2 is not None:
            acc = vec_sub(acc, vec_scale((-1) ** (a[0][axis] % 2), t2[1]))
        return acc

    return Check(name, cases, evaluate)


def algebra_checks(pres, gm: GradedMult) -> list:
    return [relation_check(pres, gm), symmetry_check(pres, gm)]


def morphism_check(pres, f: Matrix, src: PAlgebra, dst: PAlgebra, name="MORPHISM") -> Check:
    def cases():
        for g in pres.generator_names:
            for idx in product(range(src.dim), repeat=2):
                yield g, ("src", "src"), idx

    def evaluate(label, degrees, indices):
        u, v = (unit_vector(src.dim, k) for k in indices)
        lhs = f.apply(src.mult[label](u, v))
        rhs = dst.mult[label](f.apply(u), f.apply(v))
        return vec_sub(lhs, rhs)

    return Check(name, cases, evaluate)


def bilinear_identity_check(name: str, pres, parts: list) -> Check:
    """Bilinear identities ``defect(gen, u, w) = 0`` checked on basis pairs.

    ``parts`` is a list of ``(spaces, dims, defect)``; the ``spaces`` tag
    (for example ``("B", "X")``) is the degree pattern of the witnesses and
    tells the parts apart on replay.
    """
    by_spaces = {spaces: (dims, defect) for spaces, dims, defect in parts}

    def cases():
        for g in pres.generator_names:
            for spaces, dims, _ in parts:
                for idx in product(range(dims[0]), range(dims[1])):
                    yield g, spaces, idx

    def evaluate(label, degrees, indices):
        dims, defect = by_spaces[tuple(degrees)]
        return defect(label, unit_vector(dims[0], indices[0]), unit_vector(dims[1], indices[1]))

    return Check(name, cases, evaluate)


# ---------------------------------------------------------------- validators

def algebra_check_list(pres, a: PAlgebra) -> list:
    check_algebra_shape(pres, a)
    return algebra_checks(pres, a.graded())


def dg1_check_list(pres, a: DgPAlgebra1) -> list:
    check_dg1_shape(pres, a)
    gm = a.graded()
    return algebra_checks(pres, gm) + [derivation_check(pres, gm, 0, {(1,): a.d})]


def action_algebra(cm: CrossedModule) -> PAlgebra:
    """The block algebra on X (+) B (X basis first) encoding the action."""
    nx, nb = cm.x.dim, cm.b.dim
    n = nx + nb
    mult = {}
    for g in cm.x.mult:
        def f(i, j, g=g):
            out = [0] * n
            if i < nx and j < nx:
                part, shift = cm.x.mult[g].on_basis(i, j), 0
            elif i >= nx and j < nx:
                part, shift = cm.act_left[g].on_basis(i - nx, j), 0
            elif i < nx:
                part, shift = cm.act_right[g].on_basis(i, j - nx), 0
            else:
                part, shift = cm.b.mult[g].on_basis(i - nx, j - nx), nx
            out[shift:shift + len(part)] = part
            return out
        mult[g] = BilinearMap.from_function(n, n, n, f)
    return PAlgebra(n, mult)


def xmod_check_list(pres, cm: CrossedModule) -> list:
    check_xmod_shape(pres, cm)
    nx, nb = cm.x.dim, cm.b.dim
    d = cm.d
    checks = prefixed("X", algebra_checks(pres, cm.x.graded()))
    checks += prefixed("B", algebra_checks(pres, cm.b.graded()))
    checks += prefixed("ACTION", algebra_checks(pres, action_algebra(cm).graded()))

    def equiv_left(g, b, x):
        return vec_sub(d.apply(cm.act_left[g](b, x)), cm.b.mult[g](b, d.apply(x)))

    def equiv_right(g, x, b):
        return vec_sub(d.apply(cm.act_right[g](x, b)), cm.b.mult[g](d.apply(x), b))

    checks.append(bilinear_identity_check("EQUIVARIANCE", pres, [
        (("B", "X"), (nb, nx), equiv_left), (("X", "B"), (nx, nb), equiv_right)]))
    checks.append(morphism_check(pres, d, cm.x, cm.b))

    def peiffer_right(g, x, y):
        return vec_sub(cm.x.mult[g](x, y), cm.act_right[g](x, d.apply(y)))

    def peiffer_left(g, x, y):
        return vec_sub(cm.x.mult[g](x, y), cm.act_left[g](d.apply(x), y))

    checks.append(bilinear_identity_check("PEIFFER", pres, [
        (("X", "dX"), (nx, nx), peiffer_right), (("dX", "X"), (nx, nx), peiffer_left)]))
    return checks


def cat1_check_list(pres, c: Cat1Algebra) -> list:
    check_cat1_shape(pres, c)
    nb = c.b.dim
    checks = prefixed("E", algebra_checks(pres, c.e.graded()))
    checks += prefixed("B", algebra_checks(pres, c.b.graded()))
    checks.append(morphism_check(pres, c.s, c.e, c.b, "S/MORPHISM"))
    checks.append(morphism_check(pres, c.t, c.e, c.b, "T/MORPHISM"))
    checks.append(morphism_check(pres, c.i, c.b, c.e, "I/MORPHISM"))
    maps = {"s": c.s, "t": c.t}

    def reflexive_cases():
        for name in ("s", "t"):
            for j in range(nb):
                yield name, ("B",), (j,)

    def reflexive_eval(label, degrees, indices):
        u = unit_vector(nb, indices[0])
        return vec_sub(maps[label].apply(c.i.apply(u)), u)

    checks.append(Check("REFLEXIVE", reflexive_cases, reflexive_eval))
    ks, kt = kernel_basis(c.s).basis, kernel_basis(c.t).basis
    kernels = {"ker s": ks, "ker t": kt}

    def cat1_cases():
        for g in pres.generator_names:
            for a, b in product(range(len(ks)), range(len(kt))):
                yield g, ("ker s", "ker t"), (a, b)
            for b, a in product(range(len(kt)), range(len(ks))):
                yield g, ("ker t", "ker s"), (b, a)

    def cat1_eval(label, degrees, indices):
        u = kernels[degrees[0]][indices[0]]
        w = kernels[degrees[1]][indices[1]]
        return c.e.mult[label](u, w)

    checks.append(Check("CAT1", cat1_cases, cat1_eval))
    return checks


def validate_algebra(pres, a: PAlgebra) -> Report:
    return run_checks("algebra", algebra_check_list(pres, a))


def validate_dg1(pres, a: DgPAlgebra1) -> Report:
    return run_checks("dg1", dg1_check_list(pres, a))


def validate_xmod(pres, cm: CrossedModule) -> Report:
    return run_checks("xmod", xmod_check_list(pres, cm))


def validate_cat1(pres, c: Cat1Algebra) -> Report:
    return run_checks("cat1", cat1_check_list(pres, c))


def is_morphism(pres, f: Matrix, src: PAlgebra, dst: PAlgebra) -> Report:
    check_algebra_shape(pres, src, "source")
    check_algebra_shape(pres, dst, "target")
    check_matrix(f, dst.dim, src.dim, "morphism")
    return run_checks("morphism", [morphism_check(pres, f, src, dst)])


# ------------------------------------------------------------------- replay

_CHECK_BUILDERS: dict = {}


def register_checks(cls: type, builder: Callable) -> None:
    """Make the checks built by ``builder(pres, structure)`` replayable."""
    _CHECK_BUILDERS.setdefault(cls, []).append(builder)


register_checks(PAlgebra, algebra_check_list)
register_checks(DgPAlgebra1, dg1_check_list)
register_checks(CrossedModule, xmod_check_list)
register_checks(Cat1Algebra, cat1_check_list)


def replay_witness(pres, structure, witness: Witness) -> Vector:
    """Recompute the defect of ``witness`` from scratch."""
    for builder in _CHECK_BUILDERS.get(type(structure), []):
        for check in builder(pres, structure):
            if check.name == witness.check:
                return tuple(check.evaluate(witness.label, tuple(witness.degrees), tuple(witness.indices)))
    raise KeyError(f"no check named {witness.check!r} for {type(structure).__name__}")


# ---------------------------------------------------------------- transport

def transport_mult(f: BilinearMap, pa: Matrix, pb: Matrix, out_inv: Matrix) -> BilinearMap:
    return f.precompose(pa, pb).postcompose(out_inv)


def transport_algebra(a: PAlgebra, p: Matrix) -> PAlgebra:
    """Same algebra in the basis given by the columns of invertible ``p``."""
    pinv = inverse(p)
    return PAlgebra(a.dim, {g: transport_mult(f, p, p, pinv) for g, f in a.mult.items()})


def transport_xmod(cm: CrossedModule, p: Matrix, q: Matrix) -> CrossedModule:
    """Change basis of X by ``p`` and of B by ``q``."""
    pinv, qinv = inverse(p), inverse(q)
    return CrossedModule(
        transport_algebra(cm.x, p), transport_algebra(cm.b, q),
        {g: transport_mult(f, q, p, pinv) for g, f in cm.act_left.items()},
        {g: transport_mult(f, p, q, pinv) for g, f in cm.act_right.items()},
        qinv @ cm.d @ p)


def transport_cat1(c: Cat1Algebra, r: Matrix, q: Matrix) -> Cat1Algebra:
    """Change basis of E by ``r`` and of B by ``q``."""
    rinv, qinv = inverse(r), inverse(q)
    return Cat1Algebra(transport_algebra(c.e, r), transport_algebra(c.b, q),
                       qinv @ c.s @ r, qinv @ c.t @ r, rinv @ c.i @ q)


def zero_algebra(pres, dim: int) -> PAlgebra:
    return PAlgebra(dim, {g: BilinearMap.zeros(dim, dim, dim) for g in pres.generator_names})


def identity_cat1(a: PAlgebra) -> Cat1Algebra:
    n = a.dim
    return Cat1Algebra(a, a, identity(n), identity(n), identity(n))


def require_valid(report: Report) -> Report:
    if not report.valid:
        raise InvalidStructure(f"{report.kind} structure fails {', '.join(report.failed())}", report)
    return report
