"""Exact rational linear algebra.

Every kernel, rank and subspace computation in the package goes through this
module. Elimination is fraction-free (Bareiss) over the integers after each
row is cleared of denominators; only the final normalization to reduced
row-echelon form touches ``Fraction`` arithmetic.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence, Tuple

from app.errors import DimensionMismatchError

Rational = Fraction
Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix, row-major"""
    rows: int
    cols: int
    entries: Tuple[Vector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatchError(
                f"entry count does not match a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int = None) -> "RatMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise DimensionMismatchError("column count is required for an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        zero = Fraction(0)
        return cls(rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows(([int(i == j) for j in range(n)] for i in range(n)), n)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def apply(self, vector: Sequence) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(vector)} for {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(r, vector) if a and b), Fraction(0)) for r in self.entries)

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return RatMatrix(
            self.rows,
            other.cols,
            tuple(
                tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols)
                for r in self.entries
            ),
        )

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def to_lists(self) -> List[List[Fraction]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim, identified by its canonical RREF basis.

    Build instances with :func:`span` or :func:`kernel`; the basis rows are
    assumed to already be in reduced row-echelon form with no zero rows.
    """
    ambient_dim: int
    basis: RatMatrix

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> Tuple[Vector, ...]:
        return self.basis.entries

    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis.entries)


# -- integer elimination ----------------------------------------------------

def _primitive_rows(rows: Iterable[Sequence]) -> List[List[int]]:
    """Clear denominators, divide out the content, fix the sign.

    Zero rows and repeated rows are dropped; none of this changes the row space.
    """
    seen = set()
    result = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            if x.denominator != 1:
                den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
        content = 0
        for x in ints:
            content = gcd(content, x)
        if content == 0:
            continue
        lead = next(x for x in ints if x)
        if lead < 0:
            content = -content
        ints = [x // content for x in ints]
        key = tuple(ints)
        if key in seen:
            continue
        seen.add(key)
        result.append(ints)
    return result


def _bareiss_echelon(rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form; returns the nonzero rows and pivot columns"""
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        pivot_row = a[r]
        piv = pivot_row[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    row[j] = (piv * row[j] - f * pivot_row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (piv * row[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _reduce(echelon: List[List[int]], pivots: List[int], ncols: int) -> List[List[Fraction]]:
    """Normalization pass: pivots to 1, zeros above every pivot"""
    reduced = [[Fraction(x) for x in row] for row in echelon]
    for k in range(len(reduced) - 1, -1, -1):
        row = reduced[k]
        pc = pivots[k]
        piv = row[pc]
        if piv != 1:
            row[:] = [x / piv for x in row]
        for i in range(k):
            f = reduced[i][pc]
            if f:
                upper = reduced[i]
                for j in range(pc, ncols):
                    if row[j]:
                        upper[j] -= f * row[j]
    return reduced


def _echelon_of(m: RatMatrix) -> Tuple[List[List[int]], List[int]]:
    return _bareiss_echelon(_primitive_rows(m.entries), m.cols)


# -- public operations ------------------------------------------------------

def rank(m: RatMatrix) -> int:
    """Exact row rank"""
    return len(_echelon_of(m)[1])


def rref(m: RatMatrix) -> RatMatrix:
    """Canonical reduced row-echelon form, same shape as ``m`` (zero rows last)"""
    echelon, pivots = _echelon_of(m)
    reduced = _reduce(echelon, pivots, m.cols)
    zero = Fraction(0)
    reduced.extend([zero] * m.cols for _ in range(m.rows - len(reduced)))
    return RatMatrix(m.rows, m.cols, tuple(tuple(r) for r in reduced))


def kernel(m: RatMatrix) -> Subspace:
    """Right null space of ``m``; dim(kernel) + rank = cols"""
    echelon, pivots = _echelon_of(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    generators = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for k in range(len(echelon) - 1, -1, -1):
            row = echelon[k]
            pc = pivots[k]
            s = sum((row[j] * x[j] for j in range(pc + 1, m.cols) if row[j] and x[j]), Fraction(0))
            x[pc] = -s / row[pc]
        generators.append(x)
    return span(generators, m.cols)


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = [tuple(v) for v in vectors]
    for v in rows:
        if len(v) != ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    echelon, pivots = _bareiss_echelon(_primitive_rows(rows), ambient_dim)
    reduced = _reduce(echelon, pivots, ambient_dim)
    return Subspace(ambient_dim, RatMatrix(len(reduced), ambient_dim, tuple(tuple(r) for r in reduced)))


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, RatMatrix(0, ambient_dim, ()))


def full_space(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, RatMatrix.identity(ambient_dim))


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"subspaces live in different ambients ({a.ambient_dim} vs {b.ambient_dim})"
        )


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check_ambient(a, b)
    return a.basis.entries == b.basis.entries


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return span(a.vectors() + b.vectors(), a.ambient_dim)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b from the kernel of [A^T | -B^T]"""
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.ambient_dim)
    columns = list(a.vectors()) + [tuple(-x for x in v) for v in b.vectors()]
    stacked = RatMatrix.from_rows(zip(*columns), len(columns))
    null = kernel(stacked)
    vectors = []
    for coeffs in null.vectors():
        vectors.append(tuple(
            sum((c * v[i] for c, v in zip(coeffs[:a.dim], a.vectors()) if c), Fraction(0))
            for i in range(a.ambient_dim)
        ))
    return span(vectors, a.ambient_dim)


def contains(space: Subspace, vector: Sequence) -> bool:
    if len(vector) != space.ambient_dim:
        raise DimensionMismatchError(f"vector of length {len(vector)} in ambient dimension {space.ambient_dim}")
    residue = [Fraction(x) for x in vector]
    for row, pc in zip(space.vectors(), space.pivots()):
        f = residue[pc]
        if f:
            residue = [r - f * x for r, x in zip(residue, row)]
    return not any(residue)


def is_subspace_of(a: Subspace, b: Subspace) -> bool:
    _check_ambient(a, b)
    return all(contains(b, v) for v in a.vectors())


def column_space(m: RatMatrix) -> Subspace:
    return span((m.column(j) for j in range(m.cols)), m.rows)
