import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xalg import fixtures as F
from xalg.errors import InvalidStructure, ShapeError
from xalg.graded import Complex01
from xalg.linalg import BilinearMap, Matrix, identity, vec
from xalg.operads import builtin_presentation
from xalg.structures import (CrossedModule, DgPAlgebra1, PAlgebra, identity_cat1, is_morphism,
                             replay_witness, require_valid, transport_algebra,
                             transport_xmod, validate_algebra, validate_cat1, validate_dg1,
                             validate_xmod, zero_algebra)

LIE, ASSOC, LEIB = (builtin_presentation(n) for n in ("lie", "assoc", "leibniz"))
T = BilinearMap.from_table


def assert_replayable(pres, structure, report):
    for w in report.witnesses:
        assert replay_witness(pres, structure, w) == w.defect


def test_zero_algebra_valid():
    for n in range(4):
        assert validate_algebra(LIE, zero_algebra(LIE, n)).valid


def test_aff1_valid():
    assert validate_algebra(LIE, F.aff1()).valid


def test_broken_antisymmetry_names_pair():
    a = PAlgebra(2, {"bracket": T(2, 2, 2, {(0, 1): {1: 1}, (1, 0): {1: 1}})})
    r = validate_algebra(LIE, a)
    assert not r.valid
    sym = r.result("symmetry").witnesses
    assert [(w.indices, w.defect) for w in sym] == [((0, 1), vec([0, 2]))]
    assert_replayable(LIE, a, r)


def test_right_leibniz_convention():
    # [y, x] = x on basis (x, y) fails right Leibniz at (y, y, x) with defect -x
    a = PAlgebra(2, {"bracket": T(2, 2, 2, {(1, 0): {0: 1}})})
    r = validate_algebra(LEIB, a)
    assert [(w.indices, w.defect) for w in r.witnesses] == [((1, 1, 0), vec([-1, 0]))]
    assert_replayable(LEIB, a, r)


def test_dg1_trivial_extension_valid():
    a = DgPAlgebra1(Complex01(2, 2, Matrix.zeros(2, 2)), dict(F.aff1().mult),
                    {"bracket": BilinearMap.zeros(2, 2, 2)}, {"bracket": BilinearMap.zeros(2, 2, 2)})
    assert validate_dg1(LIE, a).valid


def test_fixtures_valid():
    assert validate_dg1(LIE, F.fix_a0()).valid
    assert validate_dg1(LIE, F.fix_a1()).valid
    assert validate_dg1(ASSOC, F.fix_assoc()).valid


def test_fix_a1_with_dv_equal_h_fails_derivation():
    a = F.fix_a1()
    bad = DgPAlgebra1(Complex01(1, 2, Matrix.from_rows([[1], [0]])), a.mult00, a.mult10, a.mult01)
    r = validate_dg1(LIE, bad)
    assert r.failed() == ["derivation"]
    # d[h,v] = dv = h while [h,dv] = [h,h] = 0
    hv = [w for w in r.witnesses if w.degrees == (0, 1) and w.indices == (0, 0)]
    assert hv and hv[0].defect == vec([1, 0])
    assert_replayable(LIE, bad, r)


def test_zero_x_crossed_module_valid():
    b = F.aff1()
    cm = CrossedModule(PAlgebra(0, {"bracket": BilinearMap.zeros(0, 0, 0)}), b,
                       {"bracket": BilinearMap.zeros(0, 2, 0)}, {"bracket": BilinearMap.zeros(0, 0, 2)},
                       Matrix.zeros(2, 0))
    assert validate_xmod(LIE, cm).valid


def test_ideal_crossed_module_valid():
    assert validate_xmod(LIE, F.aff1_ideal_xmod()).valid
    assert validate_xmod(ASSOC, F.ideal_xmod(F.upper_triangular(), [0, 1], "product")).valid


def test_fix_bad_fails_only_peiffer():
    cm = F.fix_bad()
    r = validate_xmod(ASSOC, cm)
    assert r.failed() == ["PEIFFER"]
    assert {(w.indices, w.defect) for w in r.witnesses} == {((0, 0), vec([1]))}
    assert_replayable(ASSOC, cm, r)


def test_identity_cat1_valid():
    assert validate_cat1(LIE, identity_cat1(F.aff1())).valid


def test_s_equals_t_fails_cat1():
    c = F.s_equals_t_cat1()
    r = validate_cat1(LIE, c)
    assert r.failed() == ["CAT1"]
    assert_replayable(LIE, c, r)


def test_morphism_examples():
    a = F.aff1()
    assert is_morphism(LIE, identity(2), a, a).valid
    assert is_morphism(LIE, Matrix.zeros(2, 2), a, a).valid
    assert is_morphism(LIE, Matrix.from_rows([[1, 0], [0, 2]]), a, a).valid
    r = is_morphism(LIE, Matrix.from_rows([[2, 0], [0, 1]]), a, a)
    # f[h,e] = e but [2h, e] = 2e
    assert ((0, 1), vec([0, -1])) in {(w.indices, w.defect) for w in r.witnesses}


def test_shape_errors():
    with pytest.raises(ShapeError):
        validate_algebra(LIE, PAlgebra(2, {"bracket": BilinearMap.zeros(2, 3, 2)}))


def test_require_valid_carries_report():
    r = validate_xmod(ASSOC, F.fix_bad())
    with pytest.raises(InvalidStructure) as exc:
        require_valid(r)
    assert exc.value.report is r


@given(st.integers(0, 2**31))
def test_random_xmods_valid_and_transport_invariant(seed):
    rng = random.Random(seed)
    pres, cm = F.random_xmod(rng)
    assert validate_xmod(pres, cm).valid
    p, q = F.random_invertible(rng, cm.x.dim), F.random_invertible(rng, cm.b.dim)
    assert validate_xmod(pres, transport_xmod(cm, p, q)).valid
    assert validate_algebra(pres, transport_algebra(cm.b, q)).valid


@given(st.integers(0, 2**31))
def test_peiffer_violations_fail_only_peiffer(seed):
    rng = random.Random(seed)
    pres, cm = F.random_peiffer_violation(rng)
    r = validate_xmod(pres, cm)
    assert r.failed() == ["PEIFFER"]
    assert_replayable(pres, cm, r)


@given(st.integers(0, 2**31))
def test_random_cat1_valid(seed):
    pres, c = F.random_cat1(random.Random(seed))
    assert validate_cat1(pres, c).valid


@given(st.integers(0, 2**31), st.integers(0, 1), st.integers(0, 1), st.integers(0, 1))
def test_single_entry_mutations_are_replayable(seed, k, i, j):
    rng = random.Random(seed)
    f = F.aff1().mult["bracket"]
    t = [[list(row) for row in plane] for plane in f.tensor]
    t[k][i][j] += rng.choice([-2, -1, 1, 2])
    a = PAlgebra(2, {"bracket": BilinearMap.from_nested(t, 2, 2, 2)})
    r = validate_algebra(LIE, a)
    assert_replayable(LIE, a, r)
