"""Systems of real quadrics of the form sum_k gamma_k u_k^2 = c.

A system is stored as the rational coefficient matrix with columns gamma_k
(one column per real coordinate) plus the right-hand side.  This module
validates the nonemptiness/nondegeneracy cone conditions, decides
compactness, produces the canonical bounded form (first equation strictly
positive, remaining right-hand sides zero), and applies linear equivalences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .cones import cone_membership
from .errors import DegenerateSystem, SingularTransform, Unbounded
from .linalg import (
    RationalMatrix,
    Vector,
    determinant,
    dot,
    rank,
    solve_particular,
    vec,
)


@dataclass(frozen=True)
class QuadricSystem:
    """Intersection of ``m - n`` real quadrics in R^m.

    ``gamma`` has one row per quadric and one column per coordinate; ``c`` is
    the right-hand side.  ``n`` is the expected dimension of the real locus.
    """

    gamma: RationalMatrix
    c: Vector

    def __post_init__(self):
        if self.gamma.rows < 1 or self.gamma.cols < 1:
            raise ValueError("a quadric system needs at least one equation and one coordinate")
        if self.gamma.rows > self.gamma.cols:
            raise ValueError("more quadrics than coordinates")
        if len(self.c) != self.gamma.rows:
            raise ValueError("right-hand side length must match the number of quadrics")

    @staticmethod
    def from_rows(rows: Iterable[Iterable], c: Iterable) -> "QuadricSystem":
        return QuadricSystem(RationalMatrix.from_rows(rows), vec(c))

    @property
    def m(self) -> int:
        return self.gamma.cols

    @property
    def n(self) -> int:
        return self.m - self.gamma.rows

    @property
    def quadric_count(self) -> int:
        return self.gamma.rows

    def column(self, k: int) -> Vector:
        return self.gamma.column(k)

    def columns(self) -> tuple[Vector, ...]:
        return self.gamma.columns()

    def restrict_columns(self, keep: Sequence[int]) -> "QuadricSystem":
        """Subsystem on a subset of coordinates (same right-hand side)."""
        rows = tuple(tuple(r[k] for k in keep) for r in self.gamma.entries)
        return QuadricSystem(RationalMatrix.from_rows(rows, len(keep)), self.c)


@dataclass(frozen=True)
class NondegeneracyReport:
    nonempty_nondegenerate: bool
    c_in_full_cone: bool
    violating_subset: frozenset[int] | None
    minimal_candidate: bool


def validate(system: QuadricSystem) -> NondegeneracyReport:
    """Check the two cone conditions for a nonempty smooth intersection.

    Condition one: the right-hand side lies in the cone of all columns.
    Condition two: it avoids every cone spanned by fewer columns than there
    are quadrics.  Subsets are scanned by size then lexicographic order, so
    the reported witness is minimal for that ordering.
    """
    cols = system.columns()
    c = system.c
    c_in_full_cone = cone_membership(cols, c).member
    violating: frozenset[int] | None = None
    for size in range(0, system.quadric_count):
        for subset in combinations(range(system.m), size):
            if cone_membership([cols[i] for i in subset], c).member:
                violating = frozenset(subset)
                break
        if violating is not None:
            break
    zero = tuple(Fraction(0) for _ in range(system.quadric_count))
    column_sum = tuple(
        sum((col[j] for col in cols), start=Fraction(0)) for j in range(system.quadric_count)
    )
    return NondegeneracyReport(
        nonempty_nondegenerate=c_in_full_cone and violating is None,
        c_in_full_cone=c_in_full_cone,
        violating_subset=violating,
        minimal_candidate=column_sum == zero,
    )


def _require_valid(system: QuadricSystem) -> NondegeneracyReport:
    report = validate(system)
    if not report.nonempty_nondegenerate:
        raise DegenerateSystem(
            "system is empty or degenerate"
            + (f" (witness subset {sorted(report.violating_subset)})" if report.violating_subset is not None else "")
        )
    return report


def positive_combination(system: QuadricSystem) -> Vector | None:
    """Coefficients lam with lam^T gamma strictly positive, or None.

    Such a combination exists exactly when the intersection is compact
    (Gordan's alternative: otherwise some nonzero nonnegative vector lies in
    the kernel of gamma).  The certificate comes from the separating
    functional of a cone query on the lifted columns (gamma_k, 1).
    """
    lifted = [tuple(col) + (Fraction(1),) for col in system.columns()]
    target = tuple(Fraction(0) for _ in range(system.quadric_count)) + (Fraction(1),)
    query = cone_membership(lifted, target)
    if query.member:
        return None
    functional = query.functional
    assert functional is not None
    lam = functional[:-1]
    # pairing row: lam . gamma_k >= -functional[-1] > 0 for every k
    return vec(lam)


def is_bounded(system: QuadricSystem) -> bool:
    _require_valid(system)
    return positive_combination(system) is not None


@dataclass(frozen=True)
class CanonicalBoundedForm:
    """Linearly equivalent system with first row positive and c = (c_1, 0, ..., 0)."""

    system: QuadricSystem
    transform: RationalMatrix

    def __post_init__(self):
        first = self.system.gamma.row(0)
        if any(e <= 0 for e in first) or self.system.c[0] <= 0:
            raise ValueError("canonical form requires a strictly positive first equation")
        if any(e != 0 for e in self.system.c[1:]):
            raise ValueError("canonical form requires zero lower right-hand sides")


def _is_canonical(system: QuadricSystem) -> bool:
    return (
        all(e > 0 for e in system.gamma.row(0))
        and system.c[0] > 0
        and all(e == 0 for e in system.c[1:])
    )


def canonicalize_bounded(system: QuadricSystem) -> CanonicalBoundedForm:
    """Deterministic canonical form of a compact system.

    The first row of the transform is a certified strictly positive
    combination; the remaining rows complete it to a basis using standard
    basis vectors (greedy, in index order) and are corrected to annihilate
    the right-hand side.  Already-canonical systems get the identity.
    """
    _require_valid(system)
    if _is_canonical(system):
        return CanonicalBoundedForm(system, RationalMatrix.identity(system.quadric_count))
    lam = positive_combination(system)
    if lam is None:
        raise Unbounded("system has a nonzero nonnegative kernel direction")
    r = system.quadric_count
    c1 = dot(lam, system.c)
    # c is in the full cone and nonzero, so the positive combination pairs > 0
    assert c1 > 0
    rows = [list(lam)]
    for j in range(r):
        if len(rows) == r:
            break
        candidate = [Fraction(1 if i == j else 0) for i in range(r)]
        trial = RationalMatrix.from_rows(rows + [candidate], r)
        if rank(trial) == len(rows) + 1:
            cj = dot(candidate, system.c)
            corrected = [a - (cj / c1) * b for a, b in zip(candidate, lam)]
            rows.append(corrected)
    transform = RationalMatrix.from_rows(rows, r)
    assert determinant(transform) != 0
    new = apply_equivalence(system, transform)
    return CanonicalBoundedForm(new, transform)


def apply_equivalence(system: QuadricSystem, g: RationalMatrix) -> QuadricSystem:
    """Row transform gamma -> g gamma, c -> g c for invertible g."""
    r = system.quadric_count
    if g.shape != (r, r):
        raise SingularTransform(f"transform must be {r}x{r}, got {g.shape}")
    if determinant(g) == 0:
        raise SingularTransform("transform is singular")
    return QuadricSystem(g.matmul(system.gamma), g.mat_vec(system.c))


def same_solution_plane(a: QuadricSystem, b: QuadricSystem) -> bool:
    """Whether two systems cut out the same affine plane {y : gamma y = c}.

    Checked by expressing each row block in terms of the other (mutual row
    space containment) with the right-hand sides transforming consistently.
    """
    if a.m != b.m:
        return False

    def contained(p: QuadricSystem, q: QuadricSystem) -> bool:
        # rows of q.gamma as combinations of rows of p.gamma, matching c
        basis = p.gamma.transpose()
        for i in range(q.quadric_count):
            target = q.gamma.row(i)
            coeffs = solve_particular(basis, target)
            if coeffs is None:
                return False
            if dot(coeffs, p.c) != q.c[i]:
                return False
        return True

    return contained(a, b) and contained(b, a)
