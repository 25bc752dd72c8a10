"""Named example structures and seeded random crossed modules."""

from __future__ import annotations

import random
from fractions import Fraction

from .graded import Complex01
from .linalg import BilinearMap, Matrix, rank
from .operads import builtin_presentation
from .structures import (Cat1Algebra, CrossedModule, DgPAlgebra1, PAlgebra, transport_cat1,
                         transport_xmod)

T = BilinearMap.from_table


def aff1() -> PAlgebra:
    """Basis (h, e) with [h, e] = e."""
    return PAlgebra(2, {"bracket": T(2, 2, 2, {(0, 1): {1: 1}, (1, 0): {1: -1}})})


def fix_a0() -> DgPAlgebra1:
    """aff(1) placed in degree 0."""
    return DgPAlgebra1(Complex01(0, 2, Matrix.zeros(2, 0)), dict(aff1().mult),
                       {"bracket": BilinearMap.zeros(0, 0, 2)}, {"bracket": BilinearMap.zeros(0, 2, 0)})


def fix_a1() -> DgPAlgebra1:
    """V0 = aff(1), V1 = span{v}, dv = e, [h, v] = v, [e, v] = 0."""
    return DgPAlgebra1(Complex01(1, 2, Matrix.from_rows([[0], [1]])), dict(aff1().mult),
                       {"bracket": T(1, 1, 2, {(0, 0): {0: -1}})},
                       {"bracket": T(1, 2, 1, {(0, 0): {0: 1}})})


def fix_assoc() -> DgPAlgebra1:
    """V0 = span{u} with u u = u, V1 = span{m}, dm = u, m u = u m = m."""
    one = {"product": T(1, 1, 1, {(0, 0): {0: 1}})}
    return DgPAlgebra1(Complex01(1, 1, Matrix.from_rows([[1]])), one, dict(one), dict(one))


def fix_bad() -> CrossedModule:
    """Associative X = span{x} with x x = x over B = 0; zero action, d = 0."""
    return CrossedModule(PAlgebra(1, {"product": T(1, 1, 1, {(0, 0): {0: 1}})}),
                         PAlgebra(0, {"product": BilinearMap.zeros(0, 0, 0)}),
                         {"product": BilinearMap.zeros(1, 0, 1)},
                         {"product": BilinearMap.zeros(1, 1, 0)}, Matrix.zeros(0, 1))


def ideal_xmod(b: PAlgebra, ideal_basis: list, gen: str) -> CrossedModule:
    """Inclusion of an ideal spanned by standard basis vectors, acting by the product."""
    nx, nb = len(ideal_basis), b.dim
    incl = Matrix.from_columns([[1 if r == k else 0 for r in range(nb)] for k in ideal_basis], nb)
    pos = {k: p for p, k in enumerate(ideal_basis)}

    def restrict(v):
        if any(v[r] for r in range(nb) if r not in pos):
            raise ValueError("basis vectors do not span an ideal")
        return [v[k] for k in ideal_basis]

    mu = b.mult[gen]
    x = PAlgebra(nx, {gen: BilinearMap.from_function(
        nx, nx, nx, lambda i, j: restrict(mu.on_basis(ideal_basis[i], ideal_basis[j])))})
    left = BilinearMap.from_function(nx, nb, nx, lambda i, j: restrict(mu.on_basis(i, ideal_basis[j])))
    right = BilinearMap.from_function(nx, nx, nb, lambda i, j: restrict(mu.on_basis(ideal_basis[i], j)))
    return CrossedModule(x, b, {gen: left}, {gen: right}, incl)


def aff1_ideal_xmod() -> CrossedModule:
    """span{e} inside aff(1), acting by the bracket."""
    return ideal_xmod(aff1(), [1], "bracket")


def upper_triangular() -> PAlgebra:
    """2x2 upper-triangular matrices, basis (E11, E12, E22)."""
    return PAlgebra(3, {"product": T(3, 3, 3, {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}})})


def dual_numbers() -> PAlgebra:
    """k[t]/t^2, basis (1, t)."""
    return PAlgebra(2, {"product": T(2, 2, 2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}})})


def s_equals_t_cat1() -> Cat1Algebra:
    """E = aff(1) x aff(1), s = t = second projection, i(b) = (0, b).

    The reflexive-graph axioms hold but ker s is the non-abelian first copy.
    """
    br = aff1().mult["bracket"]

    def f(i, j):
        out = [0] * 4
        if (i < 2) == (j < 2):
            shift = 0 if i < 2 else 2
            out[shift:shift + 2] = br.on_basis(i - shift, j - shift)
        return out

    e = PAlgebra(4, {"bracket": BilinearMap.from_function(4, 4, 4, f)})
    proj = Matrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1]])
    return Cat1Algebra(e, aff1(), proj, proj, proj.transpose())


# --------------------------------------------------------------- randomness

def _base_instances() -> list:
    """Valid crossed modules (theory, structure) with dims at most 3."""
    from .functors import dg_to_xmod
    lie, assoc = builtin_presentation("lie"), builtin_presentation("assoc")
    return [
        ("lie", aff1_ideal_xmod()),
        ("lie", dg_to_xmod(lie, fix_a1())),
        ("leibniz", aff1_ideal_xmod()),
        ("assoc", ideal_xmod(upper_triangular(), [0, 1], "product")),
        ("assoc", ideal_xmod(upper_triangular(), [1], "product")),
        ("assoc", dg_to_xmod(assoc, fix_assoc())),
        ("comm", ideal_xmod(dual_numbers(), [1], "product")),
    ]


def random_invertible(rng: random.Random, n: int, low: int = -2, high: int = 2) -> Matrix:
    while True:
        m = Matrix.from_rows([[rng.randint(low, high) for _ in range(n)] for _ in range(n)], n)
        if rank(m) == n:
            return m


SCALES = (Fraction(0), Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(-3, 2))


def scale_xmod(cm: CrossedModule, c) -> CrossedModule:
    """Replace d by c d and the X product by c times itself; stays a crossed module."""
    return CrossedModule(PAlgebra(cm.x.dim, {g: f.scale(c) for g, f in cm.x.mult.items()}),
                         cm.b, cm.act_left, cm.act_right, cm.d.scale(c))


def random_xmod(rng: random.Random) -> tuple:
    """A valid crossed module: a base instance with scaled d and random bases."""
    theory, cm = rng.choice(_base_instances())
    cm = scale_xmod(cm, rng.choice(SCALES))
    cm = transport_xmod(cm, random_invertible(rng, cm.x.dim), random_invertible(rng, cm.b.dim))
    return builtin_presentation(theory), cm


def random_xmods(count: int = 100, seed: int = 0) -> list:
    rng = random.Random(seed)
    return [random_xmod(rng) for _ in range(count)]


def random_peiffer_violation(rng: random.Random) -> tuple:
    """Zero action and d = 0 with a non-trivial X product: only Peiffer fails."""
    choices = [
        ("lie", aff1(), aff1()),
        ("assoc", PAlgebra(1, {"product": T(1, 1, 1, {(0, 0): {0: 1}})}), upper_triangular()),
        ("assoc", upper_triangular(), PAlgebra(1, {"product": T(1, 1, 1, {(0, 0): {0: 1}})})),
        ("comm", dual_numbers(), dual_numbers()),
    ]
    theory, x, b = rng.choice(choices)
    gen = next(iter(x.mult))
    cm = CrossedModule(x, b, {gen: BilinearMap.zeros(x.dim, b.dim, x.dim)},
                       {gen: BilinearMap.zeros(x.dim, x.dim, b.dim)}, Matrix.zeros(b.dim, x.dim))
    cm = transport_xmod(cm, random_invertible(rng, x.dim), random_invertible(rng, b.dim))
    return builtin_presentation(theory), cm


def random_cat1(rng: random.Random) -> tuple:
    """Semidirect image of a random crossed module, in a random basis of E."""
    from .functors import xmod_to_cat1
    pres, cm = random_xmod(rng)
    c = xmod_to_cat1(pres, cm)
    return pres, transport_cat1(c, random_invertible(rng, c.e.dim), random_invertible(rng, c.b.dim))
