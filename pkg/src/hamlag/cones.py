"""Exact cone membership with certificates.

The single feasibility engine of the package: deciding whether a target
vector lies in the cone spanned by a finite set of generators.  Membership
certificates are nonnegative coefficient vectors; non-membership
certificates are separating functionals.  Both are validated before being
returned.

All the polyhedral feasibility questions elsewhere (boundedness of a quadric
intersection, emptiness and full-dimensionality of a polyhedron) reduce to
cone queries through Farkas/Gordan-style duals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DimensionMismatch
from .linalg import (
    RationalMatrix,
    Vector,
    dot,
    rank,
    right_nullspace,
    solve_unique,
    vec,
)


@dataclass(frozen=True)
class ConeQuery:
    """Outcome of one cone membership test.

    ``member`` carries ``coefficients`` (one per generator, all >= 0,
    combining exactly to the target); otherwise ``functional`` is a vector
    with strictly negative pairing against the target and nonnegative pairing
    against every generator.
    """

    generators: tuple[Vector, ...]
    target: Vector
    member: bool
    coefficients: tuple[Fraction, ...] | None = None
    functional: Vector | None = None

    def verify(self) -> bool:
        if self.member:
            assert self.coefficients is not None
            combo = [Fraction(0)] * len(self.target)
            for lam, g in zip(self.coefficients, self.generators):
                if lam < 0:
                    return False
                combo = [c + lam * x for c, x in zip(combo, g)]
            return tuple(combo) == self.target
        assert self.functional is not None
        if dot(self.functional, self.target) >= 0:
            return False
        return all(dot(self.functional, g) >= 0 for g in self.generators)


def _span_complement_functional(generators, target, d):
    """Separating functional when the target leaves the generators' span.

    The orthogonal complement of the span is the right nullspace of the
    generator-row matrix; any complement basis vector pairing nonzero with
    the target works after a sign flip, while pairing zero with every
    generator.  Returns None when the target lies inside the span.
    """
    complement = right_nullspace(RationalMatrix.from_rows(generators, d))
    for row in complement.entries:
        pairing = dot(row, target)
        if pairing != 0:
            return row if pairing < 0 else tuple(-e for e in row)
    return None


def cone_membership(generators, target) -> ConeQuery:
    """Decide whether ``target`` lies in the cone of ``generators``.

    Member certificates are found by enumerating linearly independent
    generator subsets of size at most the rank (complete by the Caratheodory
    theorem); separating functionals come from the orthogonal complement of
    the span or from facet normals of the cone.
    """
    gens = tuple(vec(g) for g in generators)
    tgt = vec(target)
    d = len(tgt)
    for g in gens:
        if len(g) != d:
            raise DimensionMismatch(
                f"generator of dimension {len(g)} against target of dimension {d}"
            )

    def checked(result: ConeQuery) -> ConeQuery:
        if not result.verify():
            raise AssertionError("cone membership produced an invalid certificate")
        return result

    if all(e == 0 for e in tgt):
        return checked(ConeQuery(gens, tgt, True, coefficients=tuple(Fraction(0) for _ in gens)))

    perp = _span_complement_functional(gens, tgt, d)
    if perp is not None:
        return checked(ConeQuery(gens, tgt, False, functional=perp))

    gen_matrix = RationalMatrix.from_rows(gens, d)
    r = rank(gen_matrix)

    # membership: Caratheodory says a member is a nonnegative combination of
    # some independent subset; subsets are scanned smallest-first
    for size in range(1, r + 1):
        for subset in combinations(range(len(gens)), size):
            cols = RationalMatrix.from_rows([gens[i] for i in subset], d).transpose()
            coeffs = solve_unique(cols, tgt)
            if coeffs is None or any(c < 0 for c in coeffs):
                continue
            full = [Fraction(0)] * len(gens)
            for i, lam in zip(subset, coeffs):
                full[i] = lam
            return checked(ConeQuery(gens, tgt, True, coefficients=tuple(full)))

    # non-member with target inside the span: some facet of the cone
    # separates; facet normals are orthogonal to r-1 independent generators
    # and to the orthogonal complement of the span
    span_perp = right_nullspace(gen_matrix)
    for subset in combinations(range(len(gens)), r - 1):
        rows = [gens[i] for i in subset] + list(span_perp.entries)
        null = right_nullspace(RationalMatrix.from_rows(rows, d))
        if null.rows != 1:
            continue
        for sign in (1, -1):
            y = tuple(sign * e for e in null.entries[0])
            if dot(y, tgt) < 0 and all(dot(y, g) >= 0 for g in gens):
                return checked(ConeQuery(gens, tgt, False, functional=vec(y)))
    raise AssertionError("cone membership fell through: no certificate found")


# ---------------------------------------------------------------------------
# Farkas-style feasibility reductions


def polyhedron_nonempty(a: RationalMatrix, b) -> bool:
    """Whether {x : a x + b >= 0} is nonempty (Farkas dual cone query)."""
    b = vec(b)
    # empty  <=>  exists y >= 0 with y^T a = 0 and y^T b = -1
    gens = [tuple(a.entries[i]) + (b[i],) for i in range(a.rows)]
    target = tuple(Fraction(0) for _ in range(a.cols)) + (Fraction(-1),)
    return not cone_membership(gens, target).member


def polyhedron_full_dimensional(a: RationalMatrix, b) -> bool:
    """Whether {x : a x + b >= 0} has nonempty interior.

    By the Motzkin transposition theorem the strict system ``a x + b > 0`` is
    infeasible exactly when some nonzero y >= 0 has y^T a = 0 and y^T b <= 0;
    the certificate search is normalised onto sum(y) = 1 with a slack for the
    inequality.
    """
    b = vec(b)
    n = a.cols
    gens = [tuple(a.entries[i]) + (b[i], Fraction(1)) for i in range(a.rows)]
    slack = tuple(Fraction(0) for _ in range(n)) + (Fraction(1), Fraction(0))
    gens.append(slack)
    target = tuple(Fraction(0) for _ in range(n)) + (Fraction(0), Fraction(1))
    return not cone_membership(gens, target).member


def mixed_system_feasible(c: RationalMatrix, d, g, h) -> bool:
    """Whether {x : c x + d >= 0 and <g, x> + h > 0} has a solution.

    Homogenised Motzkin transposition: infeasible exactly when multipliers
    y1, y2 >= 0 (not both zero, normalised to sum one) and z >= 0 satisfy
    y1 g + z^T c = 0 and y1 h + y2 + z^T d = 0.
    """
    d = vec(d)
    g = vec(g)
    h = Fraction(h) if not isinstance(h, Fraction) else h
    n = c.cols
    gens = [tuple(g) + (h, Fraction(1))]
    gens.append(tuple(Fraction(0) for _ in range(n)) + (Fraction(1), Fraction(1)))
    for i in range(c.rows):
        gens.append(tuple(c.entries[i]) + (d[i], Fraction(0)))
    target = tuple(Fraction(0) for _ in range(n)) + (Fraction(0), Fraction(1))
    return not cone_membership(gens, target).member
