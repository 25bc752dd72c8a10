"""Graded bookkeeping: Koszul signs, shuffles, two-term complexes, squares.

Degrees are either ints or tuples of ints (multidegrees of iterated
complexes).  Transposing homogeneous factors of degrees ``a`` and ``b``
costs ``(-1) ** pairing(a, b)`` where the pairing is the componentwise dot
product, so a bidegree swap picks up ``(-1)^(p1 p2 + q1 q2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import ShapeError
from .linalg import Matrix, hstack, vstack


def as_degree(d) -> tuple:
    return (d,) if isinstance(d, int) else tuple(d)


def pairing(a, b) -> int:
    a, b = as_degree(a), as_degree(b)
    if len(a) != len(b):
        raise ValueError(f"degrees {a} and {b} live in different gradings")
    return sum(x * y for x, y in zip(a, b))


def _check_perm(perm: Sequence[int]) -> tuple:
    perm = tuple(perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"{perm!r} is not a permutation of 0..{len(perm) - 1}")
    return perm


def permute(perm: Sequence[int], items: Sequence) -> tuple:
    """Rearranged sequence: position ``k`` receives ``items[perm[k]]``."""
    return tuple(items[p] for p in perm)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple:
    """Permutation acting as ``tau`` first, then ``sigma``."""
    return tuple(tau[s] for s in sigma)


def koszul_sign(perm: Sequence[int], degrees: Sequence) -> int:
    """Sign of rearranging factors of the given degrees into ``permute(perm, .)``.

    Computed by bubble-sorting the arrangement back with adjacent swaps; each
    swap of factors of degrees k, l contributes ``(-1)^(k l)``.
    """
    perm = _check_perm(perm)
    if len(degrees) != len(perm):
        raise ValueError("one degree per factor is required")
    arrangement = list(perm)
    sign = 1
    for end in range(len(arrangement) - 1, 0, -1):
        for i in range(end):
            if arrangement[i] > arrangement[i + 1]:
                if pairing(degrees[arrangement[i]], degrees[arrangement[i + 1]]) % 2:
                    sign = -sign
                arrangement[i], arrangement[i + 1] = arrangement[i + 1], arrangement[i]
    return sign


@dataclass(frozen=True)
class Shuffle:
    """A (p, q)-shuffle; ``mu`` holds the 1-based positions of the V1 factors."""

    p: int
    q: int
    mu: tuple
    nu: tuple

    def __post_init__(self):
        n = self.p + self.q
        if len(self.mu) != self.p or len(self.nu) != self.q:
            raise ValueError("shuffle blocks have the wrong sizes")
        if sorted(self.mu + self.nu) != list(range(1, n + 1)):
            raise ValueError("shuffle blocks must partition 1..p+q")
        if list(self.mu) != sorted(self.mu) or list(self.nu) != sorted(self.nu):
            raise ValueError("shuffle blocks must be increasing")

    @classmethod
    def from_mu(cls, n: int, mu) -> "Shuffle":
        mu = tuple(sorted(mu))
        nu = tuple(i for i in range(1, n + 1) if i not in mu)
        return cls(len(mu), len(nu), mu, nu)

    @property
    def n(self) -> int:
        return self.p + self.q

    def degrees(self) -> tuple:
        """Degree of each factor of the summand, left to right."""
        return tuple(1 if i in self.mu else 0 for i in range(1, self.n + 1))


def enumerate_shuffles(p: int, q: int) -> list[Shuffle]:
    if p < 0 or q < 0:
        raise ValueError("shuffle sizes must be non-negative")
    n = p + q
    return [Shuffle.from_mu(n, mu) for mu in combinations(range(1, n + 1), p)]


@dataclass(frozen=True)
class Complex01:
    """Chain complex ``V1 --d--> V0`` concentrated in degrees 0 and 1."""

    dim1: int
    dim0: int
    d: Matrix

    def __post_init__(self):
        if (self.d.rows, self.d.cols) != (self.dim0, self.dim1):
            raise ShapeError(f"d must be {self.dim0}x{self.dim1}, got {self.d.rows}x{self.d.cols}")

    def dim(self, degree: int) -> int:
        return {0: self.dim0, 1: self.dim1}.get(degree, 0)


def partial_boundary(v: Complex01, n: int, shuffle: Shuffle, index: Sequence[int]) -> list:
    """Image of a basis tensor of the summand ``V^(mu, nu)`` under the boundary.

    ``index[k]`` is the basis index of factor ``k`` (in V1 or V0 according to
    the shuffle).  Returns ``[(coefficient, degrees, indices), ...]`` with
    zero terms dropped.  For p <= 1 the tensor is returned unchanged; for
    p >= 2, d is applied to every V1 factor except the leftmost one.
    """
    if shuffle.n != n or len(index) != n:
        raise ValueError(f"shuffle of arity {shuffle.n} and index of length {len(index)} for arity {n}")
    degs = shuffle.degrees()
    for k, (deg, i) in enumerate(zip(degs, index)):
        if not 0 <= i < v.dim(deg):
            raise ValueError(f"factor {k + 1} has index {i} outside V{deg}")
    if shuffle.p <= 1:
        return [(Fraction(1), degs, tuple(index))]
    keep = shuffle.mu[0] - 1
    terms = [(Fraction(1), ())]
    out_degs = []
    for k, (deg, i) in enumerate(zip(degs, index)):
        if deg == 1 and k != keep:
            col = v.d.column(i)
            terms = [(c * x, idx + (r,)) for c, idx in terms for r, x in enumerate(col) if x]
            out_degs.append(0)
        else:
            terms = [(c, idx + (i,)) for c, idx in terms]
            out_degs.append(deg)
    return [(c, tuple(out_degs), idx) for c, idx in terms if c]


@dataclass(frozen=True)
class Square11:
    """Commuting square of spaces in bidegrees {0,1}^2.

    ``dims = (c00, c10, c01, c11)``; dh0: C10->C00, dh1: C11->C01 lower the
    first degree, dv0: C01->C00, dv1: C11->C10 lower the second.
    """

    dims: tuple
    dh0: Matrix
    dh1: Matrix
    dv0: Matrix
    dv1: Matrix

    def __post_init__(self):
        c00, c10, c01, c11 = self.dims
        expected = {"dh0": (c00, c10), "dh1": (c01, c11), "dv0": (c00, c01), "dv1": (c10, c11)}
        for name, shape in expected.items():
            m = getattr(self, name)
            if (m.rows, m.cols) != shape:
                raise ShapeError(f"{name} must be {shape[0]}x{shape[1]}, got {m.rows}x{m.cols}")

    def dim(self, bidegree) -> int:
        c00, c10, c01, c11 = self.dims
        return {(0, 0): c00, (1, 0): c10, (0, 1): c01, (1, 1): c11}.get(tuple(bidegree), 0)

    def commutator(self) -> Matrix:
        """``dv0 dh1 - dh0 dv1``; zero exactly when the square commutes."""
        return self.dv0 @ self.dh1 - self.dh0 @ self.dv1

    def commutes(self) -> bool:
        return self.commutator().is_zero()


@dataclass(frozen=True)
class TotComplex:
    """Three-term complex ``Tot2 --d2--> Tot1 --d1--> Tot0``."""

    dims: tuple
    d1: Matrix
    d2: Matrix

    def dim(self, degree: int) -> int:
        return self.dims[degree] if 0 <= degree <= 2 else 0


# Tot1 = C10 (+) C01 in that order; every caller relies on this block layout.
def tot2(sq: Square11) -> TotComplex:
    if not sq.commutes():
        raise ValueError("square does not commute; its totalization is not a complex")
    c00, c10, c01, c11 = sq.dims
    d1 = hstack([sq.dh0, sq.dv0], rows=c00)
    d2 = vstack([sq.dv1, -sq.dh1])
    return TotComplex((c00, c10 + c01, c11), d1, d2)
