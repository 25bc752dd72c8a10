import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xalg import fixtures as F
from xalg.errors import InvalidStructure
from xalg.functors import xmod_to_dg
from xalg.graded import Complex01, Square11
from xalg.higher import (BIDEGREES, TwoCrossed, ad_square, corner_algebras, derivations, tot_algebra,
                         validate_2crossed, validate_dg2)
from xalg.linalg import BilinearMap, Matrix, unit_vector
from xalg.operads import builtin_presentation
from xalg.structures import DgPAlgebra1, replay_witness

LIE = builtin_presentation("lie")


def zero_two_crossed(dims, gen="bracket"):
    sq = Square11(dims, Matrix.zeros(dims[0], dims[1]), Matrix.zeros(dims[2], dims[3]),
                  Matrix.zeros(dims[0], dims[2]), Matrix.zeros(dims[1], dims[3]))
    comps = {}
    for a, b in product(BIDEGREES, repeat=2):
        t = (a[0] + b[0], a[1] + b[1])
        if t in BIDEGREES:
            comps[(a, b)] = BilinearMap.zeros(sq.dim(t), sq.dim(a), sq.dim(b))
    return TwoCrossed(sq, {gen: comps})


def flip_dh1(t):
    sq = t.square
    return TwoCrossed(Square11(sq.dims, sq.dh0, -sq.dh1, sq.dv0, sq.dv1), t.mult)


def test_zero_square_valid():
    assert validate_2crossed(LIE, zero_two_crossed((1, 2, 1, 1))).valid


def test_ad_square_a0():
    t = ad_square(LIE, F.fix_a0())
    assert validate_2crossed(LIE, t).valid
    assert t.square.dims == (2, 2, 0, 0)
    # h -> (b=0, f=1), e -> (b=-1, f=0) in the basis Dh = b e, De = f e
    assert t.square.dh0.tolist() == [[0, -1], [1, 0]]


def test_flipped_dh1_breaks_square():
    t = ad_square(LIE, F.fix_a1())
    bad = flip_dh1(t)
    r = validate_2crossed(LIE, bad)
    assert "SQUARE" in r.failed()
    for w in r.witnesses:
        assert replay_witness(LIE, bad, w) == w.defect


def brute_derivations_a0():
    """All 2x2 matrices over {-1,0,1} satisfying D[x,y] = [Dx,y] + [x,Dy] on aff(1)."""
    br = F.aff1().mult["bracket"]
    found = []
    for entries in product((-1, 0, 1), repeat=4):
        m = Matrix.from_rows([entries[:2], entries[2:]])
        ok = True
        for i, j in product(range(2), repeat=2):
            x, y = unit_vector(2, i), unit_vector(2, j)
            lhs = m.apply(br(x, y))
            rhs = tuple(a + b for a, b in zip(br(m.apply(x), y), br(x, m.apply(y))))
            ok = ok and lhs == rhs
        if ok:
            found.append(m)
    return found


def test_derivations_a0_against_brute_force():
    der = derivations(LIE, F.fix_a0())
    assert der.dims == (2, 0)
    brute = brute_derivations_a0()
    # Dh = b e, De = f e with b, f in {-1, 0, 1}
    assert len(brute) == 9
    for m in brute:
        assert der.der0_coordinates(m, Matrix.zeros(0, 0)) is not None
    assert der.der0_coordinates(Matrix.from_rows([[1, 0], [0, 0]]), Matrix.zeros(0, 0)) is None


def test_derivations_abelian():
    z = lambda o, a, b: {"bracket": BilinearMap.zeros(o, a, b)}
    g = DgPAlgebra1(Complex01(2, 3, Matrix.zeros(3, 2)), z(3, 3, 3), z(2, 2, 3), z(2, 3, 2))
    assert derivations(LIE, g).dims[0] == 3 * 3 + 2 * 2


def test_derivations_a1():
    der = derivations(LIE, F.fix_a1())
    assert der.dims == (2, 2)


def test_ad_square_a1_valid():
    assert validate_2crossed(LIE, ad_square(LIE, F.fix_a1())).valid


def test_corners():
    t = ad_square(LIE, F.fix_a0())
    c = corner_algebras(LIE, t)
    assert c["11"].dim == 0
    der = derivations(LIE, F.fix_a0())
    assert c["00"].mult["bracket"] == der.bracket00
    c1 = corner_algebras(LIE, ad_square(LIE, F.fix_a1()))
    assert set(c1) == {"00", "01", "10", "11"}


def test_tot_of_zero_square_is_zero():
    a = tot_algebra(LIE, zero_two_crossed((1, 1, 1, 1)))
    assert all(f.is_zero() for f in a.mult["bracket"].values())
    assert validate_dg2(LIE, a).valid


def test_tot_of_degenerate_row_is_dg1():
    g = F.fix_a1()
    n0, n1 = g.carrier.dim0, g.carrier.dim1
    sq = Square11((n0, n1, 0, 0), g.d, Matrix.zeros(0, 0), Matrix.zeros(n0, 0), Matrix.zeros(n1, 0))
    comps = {((0, 0), (0, 0)): g.mult00["bracket"], ((1, 0), (0, 0)): g.mult10["bracket"],
             ((0, 0), (1, 0)): g.mult01["bracket"]}
    t = TwoCrossed(sq, {"bracket": comps})
    a = tot_algebra(LIE, t)
    assert a.complex.dims == (n0, n1, 0)
    assert a.complex.d1 == g.d
    assert a.mult["bracket"][(0, 0)] == g.mult00["bracket"]
    assert a.mult["bracket"][(1, 0)] == g.mult10["bracket"]
    assert a.mult["bracket"][(0, 1)] == g.mult01["bracket"]


def test_tot_of_ad_squares_valid():
    for g in (F.fix_a0(), F.fix_a1()):
        a = tot_algebra(LIE, ad_square(LIE, g))
        assert (a.complex.d1 @ a.complex.d2).is_zero()
        assert validate_dg2(LIE, a).valid


def test_alternative_tot_sign_breaks_derivation_law():
    # (-1)^(q1 p2) is not compatible with d = (-1)^q dh + dv
    a = tot_algebra(LIE, ad_square(LIE, F.fix_a1()), sign="q1p2")
    r = validate_dg2(LIE, a)
    assert r.failed() == ["derivation"]
    for w in r.witnesses:
        assert replay_witness(LIE, a, w) == w.defect


def test_tot_rejects_invalid_square():
    with pytest.raises(InvalidStructure):
        tot_algebra(LIE, flip_dh1(ad_square(LIE, F.fix_a1())))


@settings(max_examples=15)
@given(st.integers(0, 2**31))
def test_ad_square_of_random_lie_dg(seed):
    rng = random.Random(seed)
    while True:
        pres, cm = F.random_xmod(rng)
        if pres.name == "lie":
            break
    g = xmod_to_dg(pres, cm)
    der = derivations(pres, g)
    t = ad_square(pres, g)
    assert t.square.dims == (der.dims[0], g.carrier.dim0, der.dims[1], g.carrier.dim1)
    assert validate_2crossed(pres, t).valid
    corner_algebras(pres, t)
    assert validate_dg2(pres, tot_algebra(pres, t)).valid
