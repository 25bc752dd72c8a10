"""Equivalences between dg algebras, crossed modules and Cat1-algebras.

Conventions: the semidirect carrier is E = V1 (+) V0 with the V1 basis first;
s = (0 | Id), t = (d | Id), i = (0 ; Id).  A crossed module's cat1 image uses
X (+) B in the same order, so the canonical kernel of s is x -> (x, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

from .errors import ConsistencyError, PathError
from .graded import Complex01, Shuffle, partial_boundary
from .linalg import (BilinearMap, Matrix, hstack, identity, inverse, kernel_basis, rank,
                     unit_vector, vec_add, vec_scale, vec_sub, vstack, zero_vector)
from .operads import RelationTerm, evaluate_term
from .structures import (Cat1Algebra, Check, CrossedModule, DgPAlgebra1, PAlgebra, Report,
                         Witness, action_algebra, check_cat1_shape, check_dg1_shape,
                         check_xmod_shape, register_checks, require_valid, run_checks, validate_algebra,
                         validate_cat1,
                         validate_dg1, validate_xmod)


# --------------------------------------------------------- semidirect product

def _split(n1: int, k: int) -> tuple:
    """Degree and in-degree index of basis vector ``k`` of V1 (+) V0."""
    return (1, k) if k < n1 else (0, k - n1)


def _embed(n1: int, n0: int, degree: int, v) -> tuple:
    out = list(zero_vector(n1 + n0))
    shift = 0 if degree == 1 else n1
    out[shift:shift + len(v)] = v
    return tuple(out)


def boundary_evaluate(a: DgPAlgebra1, term: RelationTerm | None, gen: str | None,
                      indices: Sequence[int]) -> tuple:
    """Operation of V evaluated on a basis tensor of V1 (+) V0 through the boundary.

    ``indices`` are basis indices of E = V1 (+) V0.  The tensor is split into
    its shuffle summand, the boundary ``partial_boundary`` is applied, and the
    binary generator ``gen`` (arity 2) or the composite ``term`` (arity 3) is
    evaluated with Koszul signs in the graded algebra V.  The result is
    embedded back into E.
    """
    n1, n0 = a.carrier.dim1, a.carrier.dim0
    gm = a.graded()
    split = [_split(n1, k) for k in indices]
    degs = tuple(s[0] for s in split)
    shuffle = Shuffle.from_mu(len(indices), [k + 1 for k, deg in enumerate(degs) if deg == 1])
    out = zero_vector(n1 + n0)
    for coeff, bdegs, bidx in partial_boundary(a.carrier, len(indices), shuffle, [s[1] for s in split]):
        elements = [((deg,), unit_vector(gm.dim((deg,)), i)) for deg, i in zip(bdegs, bidx)]
        if term is None:
            val = gm.multiply(gen, elements[0], elements[1])
        else:
            val = evaluate_term(term, gm, elements)
        if val is not None:
            out = vec_add(out, vec_scale(coeff, _embed(n1, n0, val[0][0], val[1])))
    return out


def semidirect_operation(a: DgPAlgebra1, gen: str) -> BilinearMap:
    """Binary product on V1 (+) V0 obtained by precomposing with the boundary."""
    n = a.carrier.dim1 + a.carrier.dim0
    return BilinearMap.from_function(n, n, n, lambda i, j: boundary_evaluate(a, None, gen, (i, j)))


def semidirect_algebra(a: DgPAlgebra1) -> PAlgebra:
    n = a.carrier.dim1 + a.carrier.dim0
    return PAlgebra(n, {g: semidirect_operation(a, g) for g in a.mult00})


def _graph_maps(d: Matrix, n1: int, n0: int) -> tuple:
    s = hstack([Matrix.zeros(n0, n1), identity(n0)], rows=n0)
    t = hstack([d, identity(n0)], rows=n0)
    i = vstack([Matrix.zeros(n1, n0), identity(n0)]) if n1 + n0 else Matrix.zeros(0, n0)
    return s, t, i


# ------------------------------------------------------------------ functors

def dg_to_xmod(pres, a: DgPAlgebra1, check: bool = True) -> CrossedModule:
    """Derived operations: mu_X(x, y) = mult10(x, d y) on V1."""
    check_dg1_shape(pres, a)
    if check:
        require_valid(validate_dg1(pres, a))
    n1 = a.carrier.dim1
    x = PAlgebra(n1, {g: f.precompose(identity(n1), a.d) for g, f in a.mult10.items()})
    return CrossedModule(x, a.degree0(), dict(a.mult01), dict(a.mult10), a.d)


def xmod_to_dg(pres, cm: CrossedModule, check: bool = True) -> DgPAlgebra1:
    check_xmod_shape(pres, cm)
    if check:
        require_valid(validate_xmod(pres, cm))
    carrier = Complex01(cm.x.dim, cm.b.dim, cm.d)
    return DgPAlgebra1(carrier, dict(cm.b.mult), dict(cm.act_right), dict(cm.act_left))


def dg_to_cat1(pres, a: DgPAlgebra1, check: bool = True) -> Cat1Algebra:
    check_dg1_shape(pres, a)
    if check:
        require_valid(validate_dg1(pres, a))
    n1, n0 = a.carrier.dim1, a.carrier.dim0
    s, t, i = _graph_maps(a.d, n1, n0)
    return Cat1Algebra(semidirect_algebra(a), a.degree0(), s, t, i)


def xmod_to_cat1(pres, cm: CrossedModule, check: bool = True) -> Cat1Algebra:
    """Semidirect product X >< B built from the action block algebra.

    On a valid crossed module this agrees with ``dg_to_cat1(xmod_to_dg(cm))``;
    building it from the action keeps the X product visible, so with
    validation bypassed a Peiffer failure shows up as a CAT1 failure.
    """
    check_xmod_shape(pres, cm)
    if check:
        require_valid(validate_xmod(pres, cm))
    s, t, i = _graph_maps(cm.d, cm.x.dim, cm.b.dim)
    return Cat1Algebra(action_algebra(cm), cm.b, s, t, i)


def cat1_to_xmod(pres, c: Cat1Algebra, check: bool = True) -> CrossedModule:
    """X = ker s in its RREF basis, d = t restricted to X."""
    check_cat1_shape(pres, c)
    if check:
        require_valid(validate_cat1(pres, c))
    kernel = kernel_basis(c.s)
    incl = kernel.inclusion()
    nx, nb = kernel.dim, c.b.dim

    def coords(v, what):
        out = kernel.coordinates(v)
        if out is None:
            raise ConsistencyError(f"{what} leaves the kernel of s")
        return out

    def restricted(g, left, right, da, db, what):
        return BilinearMap.from_function(nx, da, db, lambda p, q: coords(
            c.e.mult[g](left.column(p), right.column(q)), what))

    x_mult, act_left, act_right = {}, {}, {}
    for g in c.e.mult:
        x_mult[g] = restricted(g, incl, incl, nx, nx, f"product {g!r} on ker s")
        act_left[g] = restricted(g, c.i, incl, nb, nx, f"left action {g!r}")
        act_right[g] = restricted(g, incl, c.i, nx, nb, f"right action {g!r}")
    return CrossedModule(PAlgebra(nx, x_mult), c.b, act_left, act_right, c.t @ incl)


def xmod_from_cat1_iso(c: Cat1Algebra) -> Matrix:
    """phi(x, b) = K x + i b from X (+) B onto E (K = RREF basis of ker s)."""
    incl = kernel_basis(c.s).inclusion()
    return hstack([incl, c.i], rows=c.e.dim)


# --------------------------------------------------------------- composition

def composition_map(c: Cat1Algebra) -> Matrix:
    """c(g, f) = f + g - i s g on E (+) E (g first)."""
    n = c.e.dim
    return hstack([identity(n) - c.i @ c.s, identity(n)], rows=n)


def pullback(c: Cat1Algebra):
    """Composable pairs {(g, f) : s g = t f} inside E (+) E."""
    return kernel_basis(hstack([c.s, -c.t], rows=c.b.dim))


def compose_check_list(pres, c: Cat1Algebra) -> list:
    check_cat1_shape(pres, c)
    n = c.e.dim
    basis = pullback(c).basis
    comp = composition_map(c)

    def halves(p):
        return p[:n], p[n:]

    def pair_cases(space):
        def cases():
            for g in pres.generator_names:
                for idx in product(range(len(basis)), repeat=2):
                    yield g, (space, space), idx
        return cases

    def closed(label, degrees, indices):
        (g1, f1), (g2, f2) = (halves(basis[k]) for k in indices)
        mu = c.e.mult[label]
        return vec_sub(c.s.apply(mu(g1, g2)), c.t.apply(mu(f1, f2)))

    # vectors of E (+) E are tuples, so ``+`` below concatenates (g, f)
    def morphism(label, degrees, indices):
        p1, p2 = (basis[k] for k in indices)
        (g1, f1), (g2, f2) = halves(p1), halves(p2)
        mu = c.e.mult[label]
        lhs = comp.apply(mu(g1, g2) + mu(f1, f2))
        return vec_sub(lhs, mu(comp.apply(p1), comp.apply(p2)))

    def unit_cases():
        for side in ("left", "right"):
            for j in range(n):
                yield side, ("E",), (j,)

    def units(label, degrees, indices):
        u = unit_vector(n, indices[0])
        if label == "left":
            return vec_sub(comp.apply(u + c.i.apply(c.s.apply(u))), u)
        return vec_sub(comp.apply(c.i.apply(c.t.apply(u)) + u), u)

    return [Check("CLOSED", pair_cases("P"), closed),
            Check("MORPHISM", pair_cases("P"), morphism),
            Check("UNITS", unit_cases, units)]


def cat1_compose(pres, c: Cat1Algebra) -> Report:
    """Internal-category composition checks; accepts invalid input on purpose.

    CLOSED: the pullback P is a subalgebra of E x E.  MORPHISM: the
    composition P -> E is an algebra map.  UNITS: identities compose
    neutrally.  Witness indices refer to the RREF basis of P.
    """
    return run_checks("compose", compose_check_list(pres, c))


register_checks(Cat1Algebra, compose_check_list)


# ---------------------------------------------------------------- round trip

FUNCTORS = {
    "dg_to_xmod": ("dg1", "xmod", dg_to_xmod),
    "xmod_to_dg": ("xmod", "dg1", xmod_to_dg),
    "dg_to_cat1": ("dg1", "cat1", dg_to_cat1),
    "xmod_to_cat1": ("xmod", "cat1", xmod_to_cat1),
    "cat1_to_xmod": ("cat1", "xmod", cat1_to_xmod),
}

KINDS = {DgPAlgebra1: "dg1", CrossedModule: "xmod", Cat1Algebra: "cat1", PAlgebra: "algebra"}

VALIDATORS = {"dg1": validate_dg1, "xmod": validate_xmod, "cat1": validate_cat1,
              "algebra": validate_algebra}


@dataclass(frozen=True)
class RoundTripReport:
    direction: str
    isomorphic: bool
    mismatches: tuple


def kind_of(structure) -> str:
    try:
        return KINDS[type(structure)]
    except KeyError:
        raise PathError(f"{type(structure).__name__} is not a convertible structure") from None


def apply_path(pres, structure, path: Sequence[str], check: bool = True):
    """Apply the named functors in order.

    Only the starting structure is validated (when ``check``); every functor
    sends valid input to valid output, so later steps skip revalidation.
    """
    kind = kind_of(structure)
    if check:
        require_valid(VALIDATORS[kind](pres, structure))
    for name in path:
        if name not in FUNCTORS:
            raise PathError(f"unknown functor {name!r}; expected one of {', '.join(FUNCTORS)}")
        src, dst, fn = FUNCTORS[name]
        if src != kind:
            raise PathError(f"{name} expects a {src} structure but the path holds a {kind}")
        structure, kind = fn(pres, structure, check=False), dst
    return structure


def roundtrip(pres, structure, path: Sequence[str], check: bool = True) -> RoundTripReport:
    path = list(path)
    if not path:
        raise PathError("empty path")
    start = kind_of(structure)
    result = apply_path(pres, structure, path, check)
    if kind_of(result) != start:
        raise PathError(f"path ends at {kind_of(result)}, not at the starting kind {start}")
    if start == "cat1":
        mismatches = compare_cat1(pres, structure, result)
    else:
        mismatches = compare_structures(structure, result)
    return RoundTripReport(",".join(path), not mismatches, tuple(mismatches))


def _mismatch(label, indices, defect):
    return Witness("ROUNDTRIP", label, (), tuple(indices), tuple(defect))


def _compare_matrix(label, a: Matrix, b: Matrix) -> list:
    if (a.rows, a.cols) != (b.rows, b.cols):
        return [_mismatch(f"{label}:shape", (), (a.rows - b.rows, a.cols - b.cols))]
    return [_mismatch(label, (j,), vec_sub(a.column(j), b.column(j)))
            for j in range(a.cols) if a.column(j) != b.column(j)]


def _compare_family(label, fa, fb) -> list:
    out = []
    for g in sorted(set(fa) | set(fb)):
        a, b = fa.get(g), fb.get(g)
        if a is None or b is None or (a.dim_out, a.dim_a, a.dim_b) != (b.dim_out, b.dim_a, b.dim_b):
            out.append(_mismatch(f"{label}[{g}]:shape", (), ()))
            continue
        for i, j in product(range(a.dim_a), range(a.dim_b)):
            if a.on_basis(i, j) != b.on_basis(i, j):
                out.append(_mismatch(f"{label}[{g}]", (i, j), vec_sub(a.on_basis(i, j), b.on_basis(i, j))))
    return out


def compare_structures(a, b) -> list:
    """Structure-constant differences between two structures of one kind."""
    if type(a) is not type(b):
        raise PathError("cannot compare structures of different kinds")
    if isinstance(a, PAlgebra):
        return _compare_family("mult", a.mult, b.mult)
    if isinstance(a, DgPAlgebra1):
        return (_compare_matrix("d", a.d, b.d) + _compare_family("mult00", a.mult00, b.mult00)
                + _compare_family("mult10", a.mult10, b.mult10)
                + _compare_family("mult01", a.mult01, b.mult01))
    if isinstance(a, CrossedModule):
        return (_compare_family("x", a.x.mult, b.x.mult) + _compare_family("b", a.b.mult, b.b.mult)
                + _compare_family("actLeft", a.act_left, b.act_left)
                + _compare_family("actRight", a.act_right, b.act_right)
                + _compare_matrix("d", a.d, b.d))
    if isinstance(a, Cat1Algebra):
        return (_compare_family("e", a.e.mult, b.e.mult) + _compare_family("b", a.b.mult, b.b.mult)
                + _compare_matrix("s", a.s, b.s) + _compare_matrix("t", a.t, b.t)
                + _compare_matrix("i", a.i, b.i))
    raise PathError(f"cannot compare {type(a).__name__}")


def compare_cat1(pres, original: Cat1Algebra, rebuilt: Cat1Algebra) -> list:
    """Compare through phi(x, b) = K x + i b, the canonical map rebuilt -> original."""
    phi = xmod_from_cat1_iso(original)
    if phi.rows != phi.cols or rebuilt.e.dim != phi.cols or rank(phi) != phi.rows:
        return [_mismatch("phi:not-invertible", (), ())]
    out = _compare_family("b", original.b.mult, rebuilt.b.mult)
    out += _compare_matrix("s", original.s @ phi, rebuilt.s)
    out += _compare_matrix("t", original.t @ phi, rebuilt.t)
    out += _compare_matrix("i", original.i, phi @ rebuilt.i)
    pinv = inverse(phi)
    pulled = {g: f.precompose(phi, phi).postcompose(pinv) for g, f in original.e.mult.items()}
    return out + _compare_family("e", pulled, rebuilt.e.mult)


# --------------------------------------------------------------- arity three

def composite_terms(pres) -> list:
    """All composites outer(inner(., .), .) and outer(., inner(., .)) with leaf orders."""
    gens = pres.generator_names
    return [RelationTerm(1, o, i, slot, perm)
            for o in gens for i in gens for slot in (1, 2) for perm in permutations(range(3))]


def _ungraded_term(term: RelationTerm, alg: PAlgebra, inputs) -> tuple:
    c = [inputs[p] for p in term.leaf_perm]
    mo, mi = alg.mult[term.outer], alg.mult[term.inner]
    out = mo(mi(c[0], c[1]), c[2]) if term.slot == 1 else mo(c[0], mi(c[1], c[2]))
    return vec_scale(term.coefficient, out)


def semidirect_functoriality_defects(pres, a: DgPAlgebra1) -> list:
    """Arity-3 probe: the boundary image of each composite equals the composite
    of the boundary images of its binary pieces.  Returns witnesses."""
    e = semidirect_algebra(a)
    n = e.dim
    out = []
    for term in composite_terms(pres):
        for idx in product(range(n), repeat=3):
            lhs = boundary_evaluate(a, term, None, idx)
            rhs = _ungraded_term(term, e, [unit_vector(n, k) for k in idx])
            if lhs != rhs:
                degrees = tuple(_split(a.carrier.dim1, k)[0] for k in idx)
                label = f"{term.outer}o{term.slot}{term.inner}{''.join(map(str, term.leaf_perm))}"
                out.append(Witness("SEMIDIRECT/ARITY3", label, degrees, idx, vec_sub(lhs, rhs)))
    return out


def peiffer_arity3_defects(pres, cm: CrossedModule) -> list:
    """Ternary Peiffer instances: a composite with at least two X inputs gives
    the same value when every X input after the first is replaced by its image
    under d.  Evaluated in the action algebra on X (+) B."""
    block = action_algebra(cm)
    nx, nb = cm.x.dim, cm.b.dim
    n = nx + nb
    d_embed = vstack([Matrix.zeros(nx, nx), cm.d]) if n else Matrix.zeros(0, nx)
    out = []
    for term in composite_terms(pres):
        for pattern in product("XB", repeat=3):
            if pattern.count("X") < 2:
                continue
            ranges = [range(nx) if p == "X" else range(nb) for p in pattern]
            for idx in product(*ranges):
                plain, replaced, seen = [], [], False
                for p, k in zip(pattern, idx):
                    if p == "X":
                        v = unit_vector(n, k)
                        plain.append(v)
                        replaced.append(v if not seen else d_embed.apply(unit_vector(nx, k)))
                        seen = True
                    else:
                        v = unit_vector(n, nx + k)
                        plain.append(v)
                        replaced.append(v)
                defect = vec_sub(_ungraded_term(term, block, plain), _ungraded_term(term, block, replaced))
                if any(defect):
                    label = f"{term.outer}o{term.slot}{term.inner}{''.join(map(str, term.leaf_perm))}"
                    out.append(Witness("PEIFFER/ARITY3", label, tuple(pattern), idx, defect))
    return out
