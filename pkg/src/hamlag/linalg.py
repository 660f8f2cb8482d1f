"""Exact rational and integer linear algebra.

Everything here is arbitrary-precision and deterministic: rational matrices
over ``fractions.Fraction``, reduced row echelon form, nullspace bases
normalised to primitive integer vectors, row-style Hermite and Smith normal
forms with unimodular transforms, and lattice indices.  No floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotASublattice

Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]

#: Sentinel returned by :func:`lattice_index` when the ranks differ.
INFINITE = math.inf


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries: Iterable) -> Vector:
    return tuple(frac(e) for e in entries)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dot of length {len(a)} with {len(b)}")
    return sum((x * y for x, y in zip(a, b)), start=Fraction(0))


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable row-major matrix of reduced fractions.

    ``cols`` is stored explicitly so that matrices with zero rows keep a
    well-defined shape.
    """

    entries: tuple[Vector, ...]
    cols: int

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows in RationalMatrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @staticmethod
    def from_rows(rows: Iterable[Iterable], cols: int | None = None) -> "RationalMatrix":
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(data[0])
        return RationalMatrix(data, cols)

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)), n
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)), cols)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> tuple[Vector, ...]:
        return tuple(self.column(j) for j in range(self.cols))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.columns(), self.rows)

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return RationalMatrix(
            tuple(tuple(dot(r, c) for c in cols) for r in self.entries), other.cols
        )

    def mat_vec(self, v: Sequence[Fraction]) -> Vector:
        return tuple(dot(r, v) for r in self.entries)

    def vec_mat(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.rows:
            raise ValueError("length mismatch in vec_mat")
        return tuple(
            sum((v[i] * self.entries[i][j] for i in range(self.rows)), start=Fraction(0))
            for j in range(self.cols)
        )

    def is_zero(self) -> bool:
        return all(e == 0 for r in self.entries for e in r)


# ---------------------------------------------------------------------------
# Row reduction


def _rref(rows: list[list[Fraction]], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    work = [list(r) for r in m.entries]
    work, pivots = _rref(work, m.cols)
    return RationalMatrix(tuple(tuple(r) for r in work), m.cols), tuple(pivots)


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def primitive_integer(v: Sequence[Fraction]) -> IntVector:
    """Scale a rational vector to a primitive integer vector.

    gcd of the entries is 1 and the first nonzero entry is positive; the zero
    vector maps to itself.
    """
    denoms = [frac(e).denominator for e in v]
    scale = math.lcm(*denoms) if denoms else 1
    ints = [int(frac(e) * scale) for e in v]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def right_nullspace(m: RationalMatrix) -> RationalMatrix:
    """Basis of {x : m x = 0} as rows, scaled to primitive integer vectors."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -reduced.entries[i][f]
        basis.append(vec(primitive_integer(x)))
    return RationalMatrix(tuple(basis), m.cols)


def left_nullspace(m: RationalMatrix) -> RationalMatrix:
    """Basis of {y : y m = 0} as rows, scaled to primitive integer vectors."""
    return right_nullspace(m.transpose())


@dataclass(frozen=True)
class NullspaceData:
    rank: int
    right_nullspace_basis: RationalMatrix   # rows are basis vectors in R^cols
    left_nullspace_basis: RationalMatrix    # rows are basis vectors in R^rows


def rank_and_nullspaces(m: RationalMatrix) -> NullspaceData:
    r = rank(m)
    return NullspaceData(r, right_nullspace(m), left_nullspace(m))


def solve_particular(m: RationalMatrix, rhs: Sequence[Fraction]) -> Vector | None:
    """One solution of ``m x = rhs`` with all free variables set to zero.

    Returns None when the system is inconsistent.  Deterministic: pivots are
    chosen leftmost-first, so the support lies in the pivot columns.
    """
    if len(rhs) != m.rows:
        raise ValueError("rhs length mismatch")
    work = [list(r) + [frac(rhs[i])] for i, r in enumerate(m.entries)]
    work, pivots = _rref(work, m.cols)
    for row in work:
        if all(e == 0 for e in row[: m.cols]) and row[m.cols] != 0:
            return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        if p < m.cols:
            x[p] = work[i][m.cols]
    # a pivot in the rhs column signals inconsistency, caught above
    return tuple(x)


def solve_unique(m: RationalMatrix, rhs: Sequence[Fraction]) -> Vector | None:
    """Unique solution of ``m x = rhs`` or None (inconsistent or underdetermined)."""
    work = [list(r) + [frac(rhs[i])] for i, r in enumerate(m.entries)]
    work, pivots = _rref(work, m.cols)
    if len(pivots) != m.cols:
        return None
    for row in work[m.cols:]:
        if row[m.cols] != 0:
            return None
    return tuple(work[i][m.cols] for i in range(m.cols))


def determinant(m: RationalMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    work = [list(r) for r in m.entries]
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if work[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            det = -det
        det *= work[c][c]
        inv = Fraction(1) / work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] * inv
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return det


# ---------------------------------------------------------------------------
# Integer lattices: Hermite and Smith normal forms


@dataclass(frozen=True)
class HermiteForm:
    """Row-style Hermite normal form ``transform @ input = basis``.

    The basis keeps the input's row count (zero rows collect at the bottom);
    ``transform`` is unimodular, pivots are positive and entries above each
    pivot are reduced into ``[0, pivot)``.
    """

    basis: tuple[IntVector, ...]
    transform: tuple[IntVector, ...]
    rank: int


def _as_int_rows(rows: Iterable[Iterable], width: int | None = None) -> list[list[int]]:
    out = []
    for r in rows:
        row = []
        for e in r:
            f = frac(e)
            if f.denominator != 1:
                raise ValueError(f"integer matrix required, got {e}")
            row.append(int(f))
        out.append(row)
    if out and width is None:
        width = len(out[0])
    for r in out:
        if width is not None and len(r) != width:
            raise ValueError("ragged integer matrix")
    return out


def hermite_normal_form(rows: Iterable[Iterable], width: int | None = None) -> HermiteForm:
    a = _as_int_rows(rows, width)
    m = len(a)
    k = len(a[0]) if a else (width or 0)
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def addmul(dst: int, src: int, q: int):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    r = 0
    for c in range(k):
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            done = True
            for i in range(r + 1, m):
                if a[i][c] != 0:
                    addmul(i, r, a[i][c] // a[r][c])
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and a[r][c] != 0:
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q != 0:
                    addmul(i, r, q)
            r += 1
        if r == m:
            break
    return HermiteForm(
        basis=tuple(tuple(row) for row in a),
        transform=tuple(tuple(row) for row in u),
        rank=r,
    )


def hnf_basis(rows: Iterable[Iterable], width: int | None = None) -> tuple[IntVector, ...]:
    """Nonzero rows of the Hermite normal form: a canonical lattice basis."""
    h = hermite_normal_form(rows, width)
    return h.basis[: h.rank]


@dataclass(frozen=True)
class SmithForm:
    """``left @ input @ right`` is diagonal with d_1 | d_2 | ... >= 0."""

    diagonal: tuple[int, ...]
    left: tuple[IntVector, ...]
    right: tuple[IntVector, ...]


def smith_normal_form(rows: Iterable[Iterable], width: int | None = None) -> SmithForm:
    a = _as_int_rows(rows, width)
    m = len(a)
    k = len(a[0]) if a else (width or 0)
    left = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    right = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def row_addmul(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x - q * y for x, y in zip(left[dst], left[src])]

    def col_addmul(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in right:
            row[dst] -= q * row[src]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    def diagonalise():
        t = 0
        while t < min(m, k):
            # move the entry of least magnitude in the remaining block to (t, t)
            best = None
            for i in range(t, m):
                for j in range(t, k):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i0, j0 = best
            if i0 != t:
                row_swap(t, i0)
            if j0 != t:
                col_swap(t, j0)
            if a[t][t] < 0:
                row_negate(t)
            clean = True
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    row_addmul(i, t, a[i][t] // a[t][t])
                    if a[i][t] != 0:
                        clean = False
            for j in range(t + 1, k):
                if a[t][j] != 0:
                    col_addmul(j, t, a[t][j] // a[t][t])
                    if a[t][j] != 0:
                        clean = False
            if clean:
                t += 1

    def fix_pair(i: int):
        # replace (d_i, d_{i+1}) by (gcd, lcm) touching only rows/cols i, i+1
        col_addmul(i, i + 1, -1)                   # col i += col i+1
        while a[i + 1][i] != 0:
            row_addmul(i, i + 1, a[i][i] // a[i + 1][i])
            row_swap(i, i + 1)
        if a[i][i] < 0:
            row_negate(i)
        if a[i][i + 1] != 0:
            col_addmul(i + 1, i, a[i][i + 1] // a[i][i])
        if a[i + 1][i + 1] < 0:
            row_negate(i + 1)

    diagonalise()
    # enforce the divisibility chain d_1 | d_2 | ...; each fix strictly moves
    # prime factors rightwards, so the loop terminates
    n = min(m, k)
    while True:
        violation = next(
            (i for i in range(n - 1) if a[i][i] != 0 and a[i + 1][i + 1] % a[i][i] != 0),
            None,
        )
        if violation is None:
            break
        fix_pair(violation)
    diag = tuple(a[i][i] for i in range(n))
    return SmithForm(
        diagonal=diag,
        left=tuple(tuple(r) for r in left),
        right=tuple(tuple(r) for r in right),
    )


def invariant_factors(rows: Iterable[Iterable], width: int | None = None) -> tuple[int, ...]:
    """Nontrivial invariant factors (the Smith diagonal without 1s and 0s)."""
    return tuple(d for d in smith_normal_form(rows, width).diagonal if d not in (0, 1))


def hnf_coordinates(basis: Sequence[IntVector], v: Sequence[int]) -> IntVector | None:
    """Integer coordinates of ``v`` in an HNF basis, or None if not in the lattice."""
    work = list(v)
    coords = []
    pivot_cols = []
    for row in basis:
        p = next((j for j, e in enumerate(row) if e != 0), None)
        if p is None:
            raise ValueError("zero row in lattice basis")
        pivot_cols.append(p)
    for row, p in zip(basis, pivot_cols):
        q, rem = divmod(work[p], row[p])
        if rem != 0:
            return None
        coords.append(q)
        work = [x - q * y for x, y in zip(work, row)]
    if any(x != 0 for x in work):
        return None
    return tuple(coords)


def lattice_index(sub_rows: Sequence[Sequence[int]], ambient_rows: Sequence[Sequence[int]]):
    """Index ``[ambient : sub]`` of the lattice generated by ``sub_rows``.

    Returns a positive integer, or :data:`INFINITE` when the sublattice has
    strictly smaller rank.  Raises :class:`NotASublattice` when some
    generator falls outside the ambient lattice.
    """
    sub = _as_int_rows(sub_rows)
    amb = _as_int_rows(ambient_rows)
    if sub and amb and len(sub[0]) != len(amb[0]):
        raise ValueError("ambient and sub generators live in different dimensions")
    width = len(amb[0]) if amb else (len(sub[0]) if sub else 0)
    amb_basis = hnf_basis(amb, width)
    coords = []
    for g in sub:
        c = hnf_coordinates(amb_basis, g)
        if c is None:
            raise NotASublattice(f"generator {tuple(g)} is outside the ambient lattice")
        coords.append(c)
    r_amb = len(amb_basis)
    sub_basis = hnf_basis(coords, r_amb)
    if len(sub_basis) < r_amb:
        return INFINITE
    index = 1
    for row in sub_basis:
        p = next(j for j, e in enumerate(row) if e != 0)
        index *= abs(row[p])
    return index
