"""Exact dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` and plain tuples, so
equality tests are literal: there is no tolerance anywhere in the package.

Orientation: ``Matrix.entries[i][j]`` is the coefficient of target basis
vector ``i`` in the image of source basis vector ``j``; composition is the
ordinary matrix product ``a @ b`` (apply ``b`` first).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ShapeError

Vector = tuple  # tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def vec(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


ZERO, ONE = Fraction(0), Fraction(1)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    out = [ZERO] * n
    out[i] = ONE
    return tuple(out)


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence[Fraction]) -> Vector:
    c = frac(c)
    if c == 1:
        return tuple(v)
    return tuple(c * a for a in v)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeError(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [vec(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeError("column count is ambiguous for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [vec(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise ShapeError("column length does not match row count")
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def from_function(cls, rows: int, cols: int, f: Callable[[int], Sequence]) -> "Matrix":
        """Matrix whose column ``j`` is ``f(j)``."""
        return cls.from_columns([f(j) for j in range(cols)], rows)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ShapeError(f"cannot apply a {self.rows}x{self.cols} matrix to a vector of length {len(v)}")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((row[j] * x for j, x in nz), Fraction(0)) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(vec_scale(c, r) for r in self.entries))

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(f"shapes {self.rows}x{self.cols} and {other.rows}x{other.cols} differ")

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def identity(n: int) -> Matrix:
    return Matrix(n, n, tuple(unit_vector(n, i) for i in range(n)))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bcols = [b.column(j) for j in range(b.cols)]
    out = []
    for row in a.entries:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append(tuple(sum((x * col[k] for k, x in nz), Fraction(0)) for col in bcols))
    return Matrix(a.rows, b.cols, tuple(out))


def hstack(blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    """Block row ``(A | B | ...)``."""
    if not blocks:
        raise ShapeError("nothing to stack")
    rows = blocks[0].rows if rows is None else rows
    if any(m.rows != rows for m in blocks):
        raise ShapeError("blocks of a row must share the row count")
    return Matrix(rows, sum(m.cols for m in blocks),
                  tuple(sum((m.entries[i] for m in blocks), ()) for i in range(rows)))


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    """Block column ``(A ; B ; ...)``."""
    if not blocks:
        raise ShapeError("nothing to stack")
    cols = blocks[0].cols
    if any(m.cols != cols for m in blocks):
        raise ShapeError("blocks of a column must share the column count")
    return Matrix(sum(m.rows for m in blocks), cols, sum((m.entries for m in blocks), ()))


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    return vstack([hstack([a, Matrix.zeros(a.rows, b.cols)]),
                   hstack([Matrix.zeros(b.rows, a.cols), b])])


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form; returns the nonzero rows and the pivot columns."""
    m = [list(vec(r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m.entries, m.cols)[1])


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ShapeError("only square matrices have inverses")
    n = m.rows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.entries)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return Matrix(n, n, tuple(tuple(r[n:]) for r in red))


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, stored by its RREF basis."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = [vec(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ShapeError("spanning vector has the wrong length")
        red, _ = rref(vectors, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(next(j for j, x in enumerate(b) if x != 0) for b in self.basis)

    def inclusion(self) -> Matrix:
        """Matrix (ambient x dim) whose columns are the basis vectors."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def coordinates(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of ``v`` in the basis, or None when ``v`` lies outside."""
        if len(v) != self.ambient_dim:
            raise ShapeError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        # RREF: the coefficient of basis row k is read off at its pivot column.
        coeffs = tuple(frac(v[p]) for p in self.pivots)
        rebuilt = zero_vector(self.ambient_dim)
        for c, b in zip(coeffs, self.basis):
            if c:
                rebuilt = vec_add(rebuilt, vec_scale(c, b))
        return coeffs if rebuilt == tuple(frac(x) for x in v) else None


def kernel_basis(m: Matrix) -> Subspace:
    red, pivots = rref(m.entries, m.cols)
    free = [c for c in range(m.cols) if c not in pivots]
    vectors = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, m.cols)


def image_basis(m: Matrix) -> Subspace:
    return Subspace.span([m.column(j) for j in range(m.cols)], m.rows)


def solve(m: Matrix, rhs: Sequence) -> Vector | None:
    """One exact solution of ``m x = rhs``; None when the system is inconsistent."""
    rhs = vec(rhs)
    if len(rhs) != m.rows:
        raise ShapeError(f"right-hand side of length {len(rhs)} for {m.rows} equations")
    aug = [list(r) + [b] for r, b in zip(m.entries, rhs)]
    red, pivots = rref(aug, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for row, p in zip(red, pivots):
        x[p] = row[m.cols]
    return tuple(x)


def subspace_contains(s: Subspace, v: Sequence) -> bool:
    return s.coordinates(vec(v)) is not None


@dataclass(frozen=True)
class BilinearMap:
    """Bilinear map Q^dim_a x Q^dim_b -> Q^dim_out with ``tensor[k][i][j]``."""

    dim_out: int
    dim_a: int
    dim_b: int
    tensor: tuple

    def __post_init__(self):
        t = self.tensor
        if len(t) != self.dim_out or any(
            len(plane) != self.dim_a or any(len(r) != self.dim_b for r in plane) for plane in t
        ):
            raise ShapeError(f"tensor is not {self.dim_out}x{self.dim_a}x{self.dim_b}")

    @classmethod
    def zeros(cls, dim_out: int, dim_a: int, dim_b: int) -> "BilinearMap":
        plane = tuple(zero_vector(dim_b) for _ in range(dim_a))
        return cls(dim_out, dim_a, dim_b, (plane,) * dim_out)

    @classmethod
    def from_nested(cls, t: Sequence, dim_out: int, dim_a: int, dim_b: int) -> "BilinearMap":
        return cls(dim_out, dim_a, dim_b, tuple(tuple(vec(r) for r in plane) for plane in t))

    @classmethod
    def from_function(cls, dim_out: int, dim_a: int, dim_b: int,
                      f: Callable[[int, int], Sequence]) -> "BilinearMap":
        """Build from ``f(i, j)`` = image of the basis pair (i, j)."""
        images = [[vec(f(i, j)) for j in range(dim_b)] for i in range(dim_a)]
        for row in images:
            for v in row:
                if len(v) != dim_out:
                    raise ShapeError("basis image has the wrong length")
        return cls(dim_out, dim_a, dim_b, tuple(
            tuple(tuple(images[i][j][k] for j in range(dim_b)) for i in range(dim_a))
            for k in range(dim_out)))

    @classmethod
    def from_table(cls, dim_out: int, dim_a: int, dim_b: int, table: dict) -> "BilinearMap":
        """Sparse constructor: ``{(i, j): {k: coeff}}``."""
        def f(i, j):
            out = [Fraction(0)] * dim_out
            for k, c in table.get((i, j), {}).items():
                out[k] = frac(c)
            return out
        return cls.from_function(dim_out, dim_a, dim_b, f)

    def __call__(self, u: Sequence, v: Sequence) -> Vector:
        return bilinear_eval(self, u, v)

    def on_basis(self, i: int, j: int) -> Vector:
        return tuple(plane[i][j] for plane in self.tensor)

    @cached_property
    def images(self) -> tuple:
        """``images[i][j]`` is the image of the basis pair, None when zero."""
        return tuple(tuple(self._image(i, j) for j in range(self.dim_b)) for i in range(self.dim_a))

    def _image(self, i, j):
        v = self.on_basis(i, j)
        return None if is_zero(v) else v

    def precompose(self, a: Matrix, b: Matrix) -> "BilinearMap":
        """``(u, v) -> self(a u, b v)``."""
        if a.rows != self.dim_a or b.rows != self.dim_b:
            raise ShapeError("precomposition maps do not land in the source spaces")
        return BilinearMap.from_function(self.dim_out, a.cols, b.cols,
                                         lambda i, j: self(a.column(i), b.column(j)))

    def postcompose(self, m: Matrix) -> "BilinearMap":
        if m.cols != self.dim_out:
            raise ShapeError("postcomposition map does not start at the target space")
        return BilinearMap.from_function(m.rows, self.dim_a, self.dim_b,
                                         lambda i, j: m.apply(self.on_basis(i, j)))

    def swapped(self) -> "BilinearMap":
        """``(u, v) -> self(v, u)``."""
        return BilinearMap.from_function(self.dim_out, self.dim_b, self.dim_a,
                                         lambda i, j: self.on_basis(j, i))

    def __add__(self, other: "BilinearMap") -> "BilinearMap":
        if (self.dim_out, self.dim_a, self.dim_b) != (other.dim_out, other.dim_a, other.dim_b):
            raise ShapeError("bilinear maps of different shapes")
        return BilinearMap.from_function(self.dim_out, self.dim_a, self.dim_b,
                                         lambda i, j: vec_add(self.on_basis(i, j), other.on_basis(i, j)))

    def scale(self, c) -> "BilinearMap":
        return BilinearMap.from_function(self.dim_out, self.dim_a, self.dim_b,
                                         lambda i, j: vec_scale(c, self.on_basis(i, j)))

    def is_zero(self) -> bool:
        return all(is_zero(r) for plane in self.tensor for r in plane)

    def tolist(self) -> list:
        return [[list(r) for r in plane] for plane in self.tensor]


def bilinear_eval(f: BilinearMap, u: Sequence, v: Sequence) -> Vector:
    if len(u) != f.dim_a or len(v) != f.dim_b:
        raise ShapeError(f"inputs of lengths {len(u)}, {len(v)} for a {f.dim_a}x{f.dim_b} bilinear map")
    nu = [(i, x) for i, x in enumerate(u) if x]
    nv = [(j, y) for j, y in enumerate(v) if y]
    images = f.images
    out = None
    for i, x in nu:
        row = images[i]
        for j, y in nv:
            img = row[j]
            if img is None:
                continue
            c = x * y
            term = img if c == 1 else tuple(c * a for a in img)
            out = term if out is None else tuple(a + b for a, b in zip(out, term))
    return zero_vector(f.dim_out) if out is None else out
