"""Binary-generated operads and a sign-aware relation evaluator.

A presentation lists binary generators (each with a symmetry type) and
quadratic relations.  A relation is a formal sum of terms

    coefficient * outer(inner(c1, c2), c3)      (slot 1)
    coefficient * outer(c1, inner(c2, c3))      (slot 2)

where ``(c1, c2, c3)`` is the input triple rearranged by the term's leaf
permutation, with the Koszul sign of that rearrangement.  Operations of the
operad sit in degree 0, so the only signs come from moving inputs.

Algebras of every kind in the package (plain, dg, bigraded, totalized) are
fed to the evaluator as a :class:`GradedMult`: a dimension per degree and one
bilinear map per (generator, input degree, input degree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ShapeError, StructureIncomplete
from .graded import as_degree, koszul_sign, pairing, permute
from .linalg import BilinearMap, frac, vec, vec_add, vec_scale, zero_vector

SYMMETRIES = ("none", "symmetric", "antisymmetric")
BUILTIN_THEORIES = ("assoc", "comm", "lie", "leibniz")


@dataclass(frozen=True)
class Generator:
    name: str
    symmetry: str = "none"

    def __post_init__(self):
        if self.symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry {self.symmetry!r}")

    @property
    def swap_sign(self) -> int:
        """``mu(a, b) = swap_sign * koszul * mu(b, a)``; 0 when unconstrained."""
        return {"none": 0, "symmetric": 1, "antisymmetric": -1}[self.symmetry]


@dataclass(frozen=True)
class RelationTerm:
    coefficient: Fraction
    outer: str
    inner: str
    slot: int
    leaf_perm: tuple = (0, 1, 2)

    def __post_init__(self):
        if self.slot not in (1, 2):
            raise ValueError("slot must be 1 or 2")
        if sorted(self.leaf_perm) != [0, 1, 2]:
            raise ValueError(f"{self.leaf_perm!r} is not a permutation of three leaves")
        object.__setattr__(self, "coefficient", frac(self.coefficient))
        object.__setattr__(self, "leaf_perm", tuple(self.leaf_perm))


@dataclass(frozen=True)
class Relation:
    name: str
    terms: tuple


@dataclass(frozen=True)
class OperadPresentation:
    name: str
    generators: tuple
    relations: tuple = field(default=())

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for rel in self.relations:
            for t in rel.terms:
                for g in (t.outer, t.inner):
                    if g not in names:
                        raise ValueError(f"relation {rel.name!r} uses undeclared generator {g!r}")

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    @property
    def generator_names(self) -> tuple:
        return tuple(g.name for g in self.generators)


def _term(c, outer, slot, perm=(0, 1, 2), inner=None):
    return RelationTerm(frac(c), outer, inner or outer, slot, perm)


def builtin_presentation(name: str) -> OperadPresentation:
    if name == "assoc":
        m = "product"
        return OperadPresentation("assoc", (Generator(m),), (
            Relation("associativity", (_term(1, m, 1), _term(-1, m, 2))),))
    if name == "comm":
        m = "product"
        return OperadPresentation("comm", (Generator(m, "symmetric"),), (
            Relation("associativity", (_term(1, m, 1), _term(-1, m, 2))),))
    if name == "lie":
        b = "bracket"
        # [[a,b],c] - [a,[b,c]] + (-1)^{|a||b|} [b,[a,c]]
        return OperadPresentation("lie", (Generator(b, "antisymmetric"),), (
            Relation("jacobi", (_term(1, b, 1), _term(-1, b, 2), _term(1, b, 2, (1, 0, 2)))),))
    if name == "leibniz":
        b = "bracket"
        # right Leibniz: [[a,b],c] - [[a,c],b] - [a,[b,c]]
        return OperadPresentation("leibniz", (Generator(b),), (
            Relation("right_leibniz", (_term(1, b, 1), _term(-1, b, 1, (0, 2, 1)), _term(-1, b, 2))),))
    raise ValueError(f"unknown theory {name!r}; expected one of {', '.join(BUILTIN_THEORIES)}")


@dataclass(frozen=True)
class GradedMult:
    """Graded carrier plus per-generator bilinear components.

    ``dims`` maps a degree (tuple) to its dimension; unlisted degrees are
    zero.  ``maps[(gen, deg_a, deg_b)]`` is the component landing in degree
    ``deg_a + deg_b``.  A product whose target degree carries no space is
    zero; a product whose target exists but whose component is missing is an
    error.
    """

    dims: Mapping
    maps: Mapping

    def dim(self, deg) -> int:
        return self.dims.get(as_degree(deg), 0)

    def degrees(self) -> list:
        return sorted(d for d, n in self.dims.items() if n > 0)

    def target(self, deg_a, deg_b) -> tuple:
        return tuple(x + y for x, y in zip(as_degree(deg_a), as_degree(deg_b)))

    def component(self, gen: str, deg_a, deg_b) -> BilinearMap | None:
        key = (gen, deg_a, deg_b)
        cache = self._components
        if key not in cache:
            cache[key] = self._component(gen, as_degree(deg_a), as_degree(deg_b))
        return cache[key]

    @cached_property
    def _components(self) -> dict:
        return {}

    def _component(self, gen: str, deg_a: tuple, deg_b: tuple) -> BilinearMap | None:
        tgt = self.target(deg_a, deg_b)
        if not (self.dim(deg_a) and self.dim(deg_b) and self.dim(tgt)):
            return None
        try:
            f = self.maps[(gen, deg_a, deg_b)]
        except KeyError:
            raise StructureIncomplete(
                f"missing component of {gen!r} for degrees {deg_a} x {deg_b} -> {tgt}") from None
        if (f.dim_a, f.dim_b, f.dim_out) != (self.dim(deg_a), self.dim(deg_b), self.dim(tgt)):
            raise ShapeError(f"component of {gen!r} for {deg_a} x {deg_b} has the wrong shape")
        return f

    def multiply(self, gen: str, a, b):
        """Product of homogeneous elements ``(degree, vector)``; None means zero."""
        if a is None or b is None:
            return None
        f = self.component(gen, a[0], b[0])
        if f is None:
            return None
        return (self.target(a[0], b[0]), f(a[1], b[1]))


def evaluate_term(term: RelationTerm, mult: GradedMult, elements: Sequence):
    """Value of ``coefficient * term`` on homogeneous ``(degree, vector)`` inputs."""
    degs = [as_degree(e[0]) for e in elements]
    sign = koszul_sign(term.leaf_perm, degs)
    c = permute(term.leaf_perm, elements)
    if term.slot == 1:
        out = mult.multiply(term.outer, mult.multiply(term.inner, c[0], c[1]), c[2])
    else:
        out = mult.multiply(term.outer, c[0], mult.multiply(term.inner, c[1], c[2]))
    if out is None:
        return None
    return out[0], vec_scale(term.coefficient * sign, out[1])


@lru_cache(maxsize=None)
def _sign(perm: tuple, degrees: tuple) -> int:
    return koszul_sign(perm, degrees)


def _left_times_basis(f: BilinearMap, w, j: int):
    """``f(w, e_j)`` for a coordinate vector ``w``; None when zero."""
    out = None
    for k, x in enumerate(w):
        if x:
            img = f.images[k][j]
            if img is not None:
                term = img if x == 1 else tuple(x * a for a in img)
                out = term if out is None else tuple(a + b for a, b in zip(out, term))
    return out


def _basis_times_right(f: BilinearMap, i: int, w):
    out = None
    row = f.images[i]
    for k, x in enumerate(w):
        if x:
            img = row[k]
            if img is not None:
                term = img if x == 1 else tuple(x * a for a in img)
                out = term if out is None else tuple(a + b for a, b in zip(out, term))
    return out


def evaluate_term_on_basis(term: RelationTerm, mult: GradedMult, degrees: tuple, indices: tuple):
    """:func:`evaluate_term` for basis inputs, by direct lookup; None means zero."""
    p = term.leaf_perm
    d = [degrees[k] for k in p]
    i = [indices[k] for k in p]
    if term.slot == 1:
        f_in = mult.component(term.inner, d[0], d[1])
        if f_in is None:
            return None
        w = f_in.images[i[0]][i[1]]
        if w is None:
            return None
        f_out = mult.component(term.outer, mult.target(d[0], d[1]), d[2])
        if f_out is None:
            return None
        val = _left_times_basis(f_out, w, i[2])
    else:
        f_in = mult.component(term.inner, d[1], d[2])
        if f_in is None:
            return None
        w = f_in.images[i[1]][i[2]]
        if w is None:
            return None
        f_out = mult.component(term.outer, d[0], mult.target(d[1], d[2]))
        if f_out is None:
            return None
        val = _basis_times_right(f_out, i[0], w)
    if val is None:
        return None
    c = term.coefficient * _sign(p, tuple(degrees))
    return val if c == 1 else tuple(c * a for a in val)


def relation_defect(pres: OperadPresentation, mult: GradedMult, degrees: Sequence,
                    inputs: Sequence) -> list:
    """One defect vector per relation of ``pres`` on a homogeneous input triple.

    ``inputs`` are coordinate vectors of the given degrees.  Each defect lives
    in the degree ``sum(degrees)``; it is the empty vector when nothing lives
    there.
    """
    if len(degrees) != 3 or len(inputs) != 3:
        raise ValueError("relations are evaluated on triples")
    degrees = [as_degree(d) for d in degrees]
    for d, x in zip(degrees, inputs):
        if len(x) != mult.dim(d):
            raise ShapeError(f"input of length {len(x)} in degree {d} of dimension {mult.dim(d)}")
    elements = [(d, vec(x)) for d, x in zip(degrees, inputs)]
    total = tuple(sum(parts) for parts in zip(*degrees))
    defects = []
    for rel in pres.relations:
        acc = zero_vector(mult.dim(total))
        for t in rel.terms:
            val = evaluate_term(t, mult, elements)
            if val is not None:
                acc = vec_add(acc, val[1])
        defects.append(acc)
    return defects


def symmetry_defect(gen: Generator, mult: GradedMult, a, b):
    """``mu(a, b) - swap_sign * (-1)^{|a||b|} mu(b, a)`` or None if unconstrained."""
    if gen.swap_sign == 0:
        return None
    tgt = mult.target(a[0], b[0])
    ab = mult.multiply(gen.name, a, b)
    ba = mult.multiply(gen.name, b, a)
    n = mult.dim(tgt)
    ab = ab[1] if ab else zero_vector(n)
    ba = ba[1] if ba else zero_vector(n)
    sign = gen.swap_sign * (-1) ** (pairing(a[0], b[0]) % 2)
    return vec_add(ab, vec_scale(-sign, ba))


def presentation_from_dict(data: Mapping) -> OperadPresentation:
    gens = tuple(Generator(g["name"], g.get("symmetry", "none")) for g in data["generators"])
    rels = []
    for k, r in enumerate(data.get("relations", [])):
        terms = tuple(
            RelationTerm(frac(t.get("coefficient", 1)), t["outer"], t.get("inner", t["outer"]),
                         int(t["slot"]), tuple(t.get("leafPerm", (0, 1, 2))))
            for t in r["terms"])
        rels.append(Relation(r.get("name", f"relation{k}"), terms))
    return OperadPresentation(data.get("name", "custom"), gens, tuple(rels))


def presentation_to_dict(pres: OperadPresentation) -> dict:
    return {
        "name": pres.name,
        "generators": [{"name": g.name, "symmetry": g.symmetry} for g in pres.generators],
        "relations": [
            {"name": r.name, "terms": [
                {"coefficient": str(t.coefficient), "outer": t.outer, "inner": t.inner,
                 "slot": t.slot, "leafPerm": list(t.leaf_perm)} for t in r.terms]}
            for r in pres.relations],
    }
