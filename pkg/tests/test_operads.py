import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_fractions
from xalg import fixtures as F
from xalg.errors import StructureIncomplete
from xalg.linalg import BilinearMap, vec
from xalg.operads import (BUILTIN_THEORIES, GradedMult, builtin_presentation, evaluate_term,
                          evaluate_term_on_basis, presentation_from_dict, presentation_to_dict,
                          relation_defect)
from xalg.structures import PAlgebra

LIE, ASSOC, COMM, LEIB = (builtin_presentation(n) for n in ("lie", "assoc", "comm", "leibniz"))


def test_presentation_shapes():
    assert len(ASSOC.generators) == 1 and len(ASSOC.relations) == 1
    assert len(ASSOC.relations[0].terms) == 2
    assert LIE.generators[0].symmetry == "antisymmetric"
    assert len(LIE.relations) == 1 and len(LIE.relations[0].terms) == 3
    assert COMM.generators[0].symmetry == "symmetric"
    with pytest.raises(ValueError):
        builtin_presentation("pre-lie")


@pytest.mark.parametrize("name", BUILTIN_THEORIES)
def test_presentation_dict_roundtrip(name):
    p = builtin_presentation(name)
    assert presentation_from_dict(presentation_to_dict(p)) == p


def ungraded(alg: PAlgebra):
    return alg.graded()


def basis(n, i):
    return vec([1 if k == i else 0 for k in range(n)])


def test_zero_mult_has_zero_defect():
    for p in (LIE, ASSOC, LEIB):
        gen = p.generators[0].name
        gm = PAlgebra(2, {gen: BilinearMap.zeros(2, 2, 2)}).graded()
        for i in range(2):
            assert relation_defect(p, gm, [0, 0, 0], [basis(2, i)] * 3) == [vec([0, 0])]


def test_comm_idempotent():
    gm = PAlgebra(1, {"product": BilinearMap.from_table(1, 1, 1, {(0, 0): {0: 1}})}).graded()
    assert relation_defect(COMM, gm, [0, 0, 0], [vec([1])] * 3) == [vec([0])]


def test_jacobi_on_aff1():
    gm = F.aff1().graded()
    h, e = basis(2, 0), basis(2, 1)
    assert relation_defect(LIE, gm, [0, 0, 0], [h, e, e]) == [vec([0, 0])]


def test_graded_jacobi_on_fix_a1():
    # [h,[e,v]] - [[h,e],v] - [e,[h,v]] with every Koszul sign +1 here
    gm = F.fix_a1().graded()
    h, e, v = basis(2, 0), basis(2, 1), vec([1])
    assert relation_defect(LIE, gm, [0, 0, 1], [h, e, v]) == [vec([0])]


def test_associativity_on_upper_triangular():
    gm = F.upper_triangular().graded()
    for i in range(3):
        for j in range(3):
            for k in range(3):
                assert relation_defect(ASSOC, gm, [0, 0, 0], [basis(3, i), basis(3, j), basis(3, k)]) == [vec([0, 0, 0])]


def test_perturbed_bracket_breaks_jacobi():
    # sl2-like constants with one entry perturbed
    t = {(0, 1): {1: 2}, (1, 0): {1: -2}, (0, 2): {2: -2}, (2, 0): {2: 2}, (1, 2): {0: 1}, (2, 1): {0: -1}}
    gm = PAlgebra(3, {"bracket": BilinearMap.from_table(3, 3, 3, t)}).graded()
    sweep = lambda g: any(any(x for x in relation_defect(LIE, g, [0, 0, 0], [basis(3, i), basis(3, j), basis(3, k)])[0])
                          for i in range(3) for j in range(3) for k in range(3))
    assert not sweep(gm)
    # [h,e] = 3e while [h,f] = -2f: Jacobi on (h,e,f) leaves h
    t[(0, 1)] = {1: 3}
    t[(1, 0)] = {1: -3}
    assert sweep(PAlgebra(3, {"bracket": BilinearMap.from_table(3, 3, 3, t)}).graded())


tensors = st.lists(st.lists(st.lists(small_fractions, min_size=2, max_size=2), min_size=2, max_size=2),
                   min_size=2, max_size=2)
vectors2 = st.lists(small_fractions, min_size=2, max_size=2).map(vec)


@given(tensors, vectors2, vectors2, vectors2)
def test_jacobi_defect_matches_brute_force(t, a, b, c):
    f = BilinearMap.from_nested(t, 2, 2, 2)
    gm = PAlgebra(2, {"bracket": f}).graded()
    brute = tuple(x - y + z for x, y, z in zip(f(f(a, b), c), f(a, f(b, c)), f(b, f(a, c))))
    assert relation_defect(LIE, gm, [0, 0, 0], [a, b, c]) == [brute]
    leib = tuple(x - y - z for x, y, z in zip(f(f(a, b), c), f(f(a, c), b), f(a, f(b, c))))
    assert relation_defect(LEIB, gm, [0, 0, 0], [a, b, c]) == [leib]


@given(tensors, vectors2, vectors2, vectors2, vectors2, small_fractions)
def test_defect_is_trilinear(t, a, a2, b, c, k):
    gm = PAlgebra(2, {"product": BilinearMap.from_nested(t, 2, 2, 2)}).graded()
    mix = tuple(x + k * y for x, y in zip(a, a2))
    lhs = relation_defect(ASSOC, gm, [0, 0, 0], [mix, b, c])[0]
    d1 = relation_defect(ASSOC, gm, [0, 0, 0], [a, b, c])[0]
    d2 = relation_defect(ASSOC, gm, [0, 0, 0], [a2, b, c])[0]
    assert lhs == tuple(x + k * y for x, y in zip(d1, d2))


def test_basis_evaluation_matches_vector_evaluation():
    gm = F.fix_a1().graded()
    dims = {0: 2, 1: 1}
    for degs in [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]:
        for term in LIE.relations[0].terms:
            for i in range(dims[degs[0]]):
                for j in range(dims[degs[1]]):
                    for k in range(dims[degs[2]]):
                        els = [((d,), basis(dims[d], x)) for d, x in zip(degs, (i, j, k))]
                        slow = evaluate_term(term, gm, els)
                        fast = evaluate_term_on_basis(term, gm, tuple((d,) for d in degs), (i, j, k))
                        out = dims[sum(degs)]
                        slow = slow[1] if slow is not None else vec([0] * out)
                        fast = tuple(fast) if fast is not None else vec([0] * out)
                        assert fast == slow


def test_missing_component_is_reported():
    gm = GradedMult({(0,): 1, (1,): 1}, {("bracket", (0,), (0,)): BilinearMap.zeros(1, 1, 1)})
    with pytest.raises(StructureIncomplete):
        gm.component("bracket", (0,), (1,))
