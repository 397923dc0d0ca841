"""Exact rational linear algebra: vectors, matrices, solving, subspaces.

All arithmetic is over ``fractions.Fraction`` (plain ``int`` entries are
accepted everywhere and mix safely).  No floating point is used anywhere.
Vectors are immutable tuples, matrices are tuples of row tuples, and
subspaces are kept in a unique reduced-row-echelon canonical form so that
equality of subspaces is structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

Scalar = Fraction | int
Vec = tuple[Scalar, ...]
Mat = tuple[Vec, ...]


def vec(entries: Iterable[Scalar]) -> Vec:
    return tuple(Fraction(x) for x in entries)


def mat(rows: Iterable[Iterable[Scalar]]) -> Mat:
    return tuple(vec(r) for r in rows)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Scalar, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def dot(u: Vec, v: Vec) -> Scalar:
    return sum(a * b for a, b in zip(u, v, strict=True))


def is_zero(v: Vec) -> bool:
    return all(a == 0 for a in v)


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m, strict=True)) if m else ()


def columns(m: Mat) -> list[Vec]:
    return [tuple(row[j] for row in m) for j in range(len(m[0]))] if m else []


def from_columns(cols: Sequence[Vec]) -> Mat:
    return tuple(tuple(c[i] for c in cols) for i in range(len(cols[0])))


def rref(rows: Iterable[Vec]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(map(Fraction, r)) for r in rows]
    if not work:
        return (), []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), pivots


def rank(m: Mat) -> int:
    return len(rref(m)[0])


def solve(a: Mat, b: Vec) -> Optional[Vec]:
    """One exact solution x of a·x = b, or None when the system is inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    if len(a) != len(b):
        raise ValueError("matrix and rhs sizes disagree")
    n = len(a[0]) if a else 0
    aug = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    reduced, pivots = rref(tuple(tuple(r) for r in aug))
    x = [Fraction(0)] * n
    for row, p in zip(reduced, pivots):
        if p == n:
            return None
        x[p] = row[n]
    return tuple(x)


def nullspace(m: Mat) -> list[Vec]:
    """Basis of {x : m·x = 0}, one vector per free column."""
    if not m:
        return []
    n = len(m[0])
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * n
        x[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[free]
        basis.append(tuple(x))
    return basis


def mat_inverse(m: Mat) -> Mat:
    n = len(m)
    aug = tuple(tuple(map(Fraction, row)) + identity(n)[i] for i, row in enumerate(m))
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in reduced)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n in canonical reduced-echelon form.

    Two Subspace values describing the same subspace compare equal, and
    instances are hashable, so subspaces can be deduplicated in sets.
    """

    basis: Mat
    ambient_dim: int

    @staticmethod
    def span(vectors: Iterable[Vec], ambient_dim: int) -> "Subspace":
        rows = [vec(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        reduced, _ = rref(rows)
        return Subspace(reduced, ambient_dim)

    @staticmethod
    def from_matrix_columns(m: Mat) -> "Subspace":
        return Subspace.span(columns(m), len(m))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return is_zero(self.reduce(v))

    def reduce(self, v: Vec) -> Vec:
        """Residue of v after eliminating against the canonical basis."""
        w = list(map(Fraction, v))
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x == 1 and all(row[k] == 0 for k in range(j)))
            if w[p] != 0:
                f = w[p]
                w = [x - f * y for x, y in zip(w, row)]
        return tuple(w)

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return all(self.contains(row) for row in other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Exact intersection, via the common nullspace of both annihilators."""
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        ann = self.annihilator() + other.annihilator()
        if not ann:
            return Subspace.span([], self.ambient_dim) if self.dim == 0 else self
        return Subspace.span(nullspace(tuple(ann)), self.ambient_dim)

    def annihilator(self) -> list[Vec]:
        """Basis of {y : y·v = 0 for all v in the subspace}."""
        if self.dim == 0:
            return list(identity(self.ambient_dim))
        return nullspace(self.basis)


def primitive_integer_vector(v: Vec) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    The positive scaling factor is unique; the first nonzero entry keeps
    its sign.
    """
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive form")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def integer_kernel(m: Mat) -> list[tuple[int, ...]]:
    """Basis of the lattice {x in Z^n : m·x = 0} for a rational matrix m.

    Rows are cleared to integers, then unimodular column operations reduce
    the matrix; the columns of the accumulated transform that hit zero
    columns form a basis.  The kernel of an integer matrix is a saturated
    sublattice, so this basis spans all integer solutions.
    """
    if not m:
        raise ValueError("empty matrix")
    n = len(m[0])
    rows = []
    for row in m:
        den = 1
        for x in row:
            fx = Fraction(x)
            den = den * fx.denominator // gcd(den, fx.denominator)
        rows.append([int(Fraction(x) * den) for x in row])
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    pivot_cols: list[int] = []
    row_i = 0
    for _ in range(len(a)):
        if row_i >= len(a):
            break
        r = row_i
        free = [c for c in range(n) if c not in pivot_cols]
        while True:
            nz = [c for c in free if a[r][c] != 0]
            if not nz:
                break
            if len(nz) == 1:
                break
            c1 = min(nz, key=lambda c: abs(a[r][c]))
            for c2 in nz:
                if c2 == c1:
                    continue
                q = a[r][c2] // a[r][c1]
                if q:
                    for k in range(len(a)):
                        a[k][c2] -= q * a[k][c1]
                    for k in range(n):
                        u[k][c2] -= q * u[k][c1]
        nz = [c for c in free if a[r][c] != 0]
        if nz:
            pivot_cols.append(nz[0])
        row_i += 1
    free = [c for c in range(n) if c not in pivot_cols]
    return [tuple(u[k][c] for k in range(n)) for c in free]
