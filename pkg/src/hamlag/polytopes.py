"""Halfspace presentations: vertices, genericity, and quadric conversions.

A presentation is the data ``<a_i, x> + b_i >= 0`` for i = 1..m in R^n.  All
geometry here is exact.  Vertex enumeration solves every n-subset of tight
hyperplanes; genericity reduces to vertex activity plus feasibility and
dimension checks (complete for pointed polyhedra, where every face contains
a vertex); redundancy classification reuses the same basic-solution pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .cones import mixed_system_feasible, polyhedron_full_dimensional, polyhedron_nonempty
from .errors import DegenerateSystem, NonGenericPresentation
from .linalg import (
    RationalMatrix,
    Vector,
    dot,
    rank,
    rank_and_nullspaces,
    right_nullspace,
    solve_particular,
    solve_unique,
    vec,
)
from .quadrics import QuadricSystem, validate


@dataclass(frozen=True)
class PolytopePresentation:
    """m halfspaces in R^n; rows of ``a`` are the inward normals."""

    a: RationalMatrix
    b: Vector

    def __post_init__(self):
        if len(self.b) != self.a.rows:
            raise ValueError("offset vector length must match the halfspace count")

    @staticmethod
    def from_rows(rows: Iterable[Iterable], b: Iterable) -> "PolytopePresentation":
        return PolytopePresentation(RationalMatrix.from_rows(rows), vec(b))

    @property
    def m(self) -> int:
        return self.a.rows

    @property
    def n(self) -> int:
        return self.a.cols

    def value(self, i: int, point: Vector) -> Fraction:
        return dot(self.a.row(i), point) + self.b[i]

    def values(self, point: Vector) -> Vector:
        return tuple(self.value(i, point) for i in range(self.m))

    def contains(self, point: Vector) -> bool:
        return all(v >= 0 for v in self.values(point))


@dataclass(frozen=True)
class Vertex:
    point: Vector
    active_set: frozenset[int]


@dataclass(frozen=True)
class _BasicCandidate:
    subset: tuple[int, ...]
    point: Vector
    values: Vector           # all m constraint values at the point


@dataclass(frozen=True)
class _RayCandidate:
    subset: tuple[int, ...]
    direction: Vector        # primitive integer direction
    values: Vector           # a @ direction, one entry per constraint


def _basic_candidates(p: PolytopePresentation) -> list[_BasicCandidate]:
    """Solutions of every independent n-subset of tight hyperplanes."""
    out = []
    for subset in combinations(range(p.m), p.n):
        sub = RationalMatrix.from_rows([p.a.row(i) for i in subset], p.n)
        rhs = tuple(-p.b[i] for i in subset)
        point = solve_unique(sub, rhs)
        if point is None:
            continue
        out.append(_BasicCandidate(subset, point, p.values(point)))
    return out


def _ray_candidates(p: PolytopePresentation) -> list[_RayCandidate]:
    """Directions tight on some independent (n-1)-subset of the normals."""
    if p.n == 0:
        return []
    out = []
    for subset in combinations(range(p.m), p.n - 1):
        sub = RationalMatrix.from_rows([p.a.row(i) for i in subset], p.n)
        null = right_nullspace(sub)
        if null.rows != 1:
            continue
        w = null.entries[0]
        out.append(_RayCandidate(subset, w, tuple(dot(p.a.row(i), w) for i in range(p.m))))
    return out


def enumerate_vertices(p: PolytopePresentation) -> tuple[Vertex, ...]:
    """All vertices, deduplicated and sorted lexicographically by coordinates."""
    seen: dict[Vector, frozenset[int]] = {}
    for cand in _basic_candidates(p):
        if any(v < 0 for v in cand.values):
            continue
        if cand.point not in seen:
            seen[cand.point] = frozenset(i for i, v in enumerate(cand.values) if v == 0)
    return tuple(Vertex(pt, seen[pt]) for pt in sorted(seen))


def polyhedron_bounded(p: PolytopePresentation) -> bool:
    """Whether the presented set has a trivial recession cone."""
    if rank(p.a) < p.n:
        return False
    for cand in _ray_candidates(p):
        if all(v >= 0 for v in cand.values) or all(v <= 0 for v in cand.values):
            return False
    return True


@dataclass(frozen=True)
class GenericityReport:
    generic: bool
    feasible: bool
    dimension_full: bool
    has_vertex: bool
    violating_point: Vertex | None
    redundant_strict: frozenset[int]
    redundant_touching: frozenset[int]


def check_generic(p: PolytopePresentation) -> GenericityReport:
    """Genericity plus redundancy classification of a presentation.

    Generic means: nonempty, full-dimensional, at least one vertex, and at
    every point of the polyhedron the active normals are linearly
    independent.  For a pointed polyhedron every face contains a vertex, so
    independence everywhere is equivalent to every vertex having exactly n
    active constraints; presentations without vertices fail genericity
    outright.  Redundant constraints are classified as strict (never tight)
    or touching (tight somewhere yet removable).
    """
    candidates = _basic_candidates(p)
    vertex_map: dict[Vector, frozenset[int]] = {}
    for cand in candidates:
        if all(v >= 0 for v in cand.values):
            if cand.point not in vertex_map:
                vertex_map[cand.point] = frozenset(
                    i for i, v in enumerate(cand.values) if v == 0
                )
    vertices = tuple(Vertex(pt, vertex_map[pt]) for pt in sorted(vertex_map))
    has_vertex = bool(vertices)
    feasible = has_vertex or polyhedron_nonempty(p.a, p.b)

    rays = _ray_candidates(p)
    recession: list[Vector] = []
    if has_vertex:
        for cand in rays:
            for sign in (1, -1):
                if all(sign * v >= 0 for v in cand.values):
                    recession.append(tuple(Fraction(sign) * e for e in cand.direction))

    if has_vertex:
        # interior candidate: strictly positive barycentric mix of all
        # vertices plus every recession direction; a constraint vanishing
        # there is tight on the whole polyhedron
        k = Fraction(1, len(vertices))
        interior = [Fraction(0)] * p.n
        for v in vertices:
            interior = [x + k * y for x, y in zip(interior, v.point)]
        for w in recession:
            interior = [x + y for x, y in zip(interior, w)]
        dimension_full = all(val > 0 for val in p.values(tuple(interior)))
    elif feasible:
        dimension_full = polyhedron_full_dimensional(p.a, p.b)
    else:
        dimension_full = False

    violating = next((v for v in vertices if len(v.active_set) > p.n), None)
    generic = feasible and dimension_full and has_vertex and violating is None

    redundant_strict: set[int] = set()
    redundant_touching: set[int] = set()
    if feasible and not has_vertex:
        # vertex-free polyhedra: decide removability by the exact mixed
        # strict/nonstrict feasibility query instead of the candidate pass
        for i in range(p.m):
            reduced = RationalMatrix(
                tuple(r for j, r in enumerate(p.a.entries) if j != i), p.n
            )
            reduced_b = tuple(e for j, e in enumerate(p.b) if j != i)
            violator = mixed_system_feasible(
                reduced, reduced_b, tuple(-e for e in p.a.row(i)), -p.b[i]
            )
            if violator:
                continue
            flipped = RationalMatrix(p.a.entries + (tuple(-e for e in p.a.row(i)),), p.n)
            if polyhedron_nonempty(flipped, tuple(p.b) + (-p.b[i],)):
                redundant_touching.add(i)
            else:
                redundant_strict.add(i)
    if has_vertex:
        for i in range(p.m):
            reduced = RationalMatrix(
                tuple(r for j, r in enumerate(p.a.entries) if j != i), p.n
            )
            if rank(reduced) < p.n:
                continue  # removal unpoints the polyhedron: never redundant
            # vertices and recession rays of the relaxed polyhedron must all
            # still satisfy constraint i for it to be redundant
            relaxed_ok = True
            for cand in candidates:
                if i in cand.subset:
                    continue
                if all(v >= 0 for j, v in enumerate(cand.values) if j != i):
                    if cand.values[i] < 0:
                        relaxed_ok = False
                        break
            if relaxed_ok:
                for cand in rays:
                    if i in cand.subset:
                        continue
                    for sign in (1, -1):
                        if all(
                            sign * v >= 0 for j, v in enumerate(cand.values) if j != i
                        ) and sign * cand.values[i] < 0:
                            relaxed_ok = False
                            break
                    if not relaxed_ok:
                        break
            if relaxed_ok:
                if any(i in v.active_set for v in vertices):
                    redundant_touching.add(i)
                else:
                    redundant_strict.add(i)

    return GenericityReport(
        generic=generic,
        feasible=feasible,
        dimension_full=dimension_full,
        has_vertex=has_vertex,
        violating_point=violating,
        redundant_strict=frozenset(redundant_strict),
        redundant_touching=frozenset(redundant_touching),
    )


def face_active_sets(p: PolytopePresentation) -> frozenset[frozenset[int]]:
    """Active sets of all faces; the maximal ones are the vertex active sets.

    For a generic presentation the faces through a vertex correspond to the
    subsets of its active set, and every face of a pointed polyhedron
    contains a vertex.
    """
    report = check_generic(p)
    if not report.generic:
        raise NonGenericPresentation("face structure requires a generic presentation")
    sets: set[frozenset[int]] = set()
    for v in enumerate_vertices(p):
        active = sorted(v.active_set)
        for size in range(len(active) + 1):
            for sub in combinations(active, size):
                sets.add(frozenset(sub))
    return frozenset(sets)


# ---------------------------------------------------------------------------
# Conversions between quadric systems and presentations


def to_polytope(system: QuadricSystem) -> PolytopePresentation:
    """Presentation of the nonnegative-solution polyhedron of the system.

    Columns of the normal matrix are the canonical primitive basis of the
    right nullspace of the coefficient matrix; the offset vector is the
    canonical particular solution (free variables zero).  Refused only when
    the coefficient matrix is structurally unusable (rank-deficient), so
    degenerate-but-full-rank systems still convert and their presentations
    test non-generic.
    """
    nd = rank_and_nullspaces(system.gamma)
    if nd.rank < system.quadric_count:
        raise DegenerateSystem("coefficient matrix is rank-deficient")
    b = solve_particular(system.gamma, system.c)
    if b is None:
        raise DegenerateSystem("right-hand side is inconsistent")
    a = nd.right_nullspace_basis.transpose()  # m x n, columns span the kernel
    # exact postcondition: gamma (A x + b) = c identically
    if not system.gamma.matmul(a).is_zero():
        raise AssertionError("kernel basis failed the annihilation identity")
    if system.gamma.mat_vec(b) != system.c:
        raise AssertionError("particular solution failed to reproduce the right-hand side")
    return PolytopePresentation(a, b)


def to_quadrics(p: PolytopePresentation, check: bool = True) -> QuadricSystem:
    """Quadric system whose nonnegative-solution set is the presented one.

    Rows of the coefficient matrix are the primitive left-kernel basis of
    the normal matrix; the right-hand side follows by applying them to the
    offsets.  With ``check`` the output must validate, which by the
    equivalence of nondegeneracy and genericity rejects non-generic input.
    """
    if rank(p.a) < p.n:
        raise NonGenericPresentation("normals do not span, the presentation has no vertex")
    if p.m == p.n:
        raise NonGenericPresentation("presentation admits no quadric model (m = n)")
    gamma_rows = right_nullspace(p.a.transpose())  # left kernel of a as rows
    gamma = RationalMatrix(gamma_rows.entries, p.m)
    if not gamma.matmul(p.a).is_zero():
        raise AssertionError("left kernel basis failed the annihilation identity")
    system = QuadricSystem(gamma, gamma.mat_vec(p.b))
    if check and not validate(system).nonempty_nondegenerate:
        raise NonGenericPresentation("presentation is not generic (its quadric model is degenerate)")
    return system
