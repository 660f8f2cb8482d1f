"""Lattices spanned by the quadric columns and the polytope normals.

Carries the integer side of the theory: the column lattice and its
sublattices indexed by zero sets, isotropy subgroups as invariant factors,
the order-two sign group acting on the real locus, and the two independent
embedding criteria (zero-set sublattices on the quadric side, unimodular
vertex bases on the polytope side) that are cross-checked against each
other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cones import cone_membership
from .errors import DegenerateSystem, NonGenericPresentation, NotFullRank
from .linalg import (
    INFINITE,
    IntVector,
    RationalMatrix,
    Vector,
    hnf_basis,
    hnf_coordinates,
    determinant,
    smith_normal_form,
    solve_unique,
)
from .polytopes import PolytopePresentation, Vertex, enumerate_vertices, to_polytope, to_quadrics
from .quadrics import QuadricSystem, validate


@dataclass(frozen=True)
class LatticeBasis:
    """Canonical (Hermite) basis of a lattice inside Z^ambient_dimension."""

    rank: int
    basis: tuple[IntVector, ...]
    ambient_dimension: int


def _denominator_scale(m: RationalMatrix) -> int:
    denoms = [e.denominator for row in m.entries for e in row]
    return math.lcm(*denoms) if denoms else 1


def _scaled_int_rows(m: RationalMatrix, scale: int) -> list[IntVector]:
    return [tuple(int(e * scale) for e in row) for row in m.entries]


def column_lattice(system: QuadricSystem) -> tuple[LatticeBasis, int]:
    """Lattice generated by the (denominator-cleared) columns, plus the scale."""
    scale = _denominator_scale(system.gamma)
    rows = _scaled_int_rows(system.gamma.transpose(), scale)
    basis = hnf_basis(rows, system.quadric_count)
    return LatticeBasis(len(basis), basis, system.quadric_count), scale


@dataclass(frozen=True)
class SublatticeComparison:
    index_set: frozenset[int]
    sub: LatticeBasis
    equal_to_full: bool
    index: object  # positive int, or INFINITE


def sublattice(system: QuadricSystem, index_set: Iterable[int]) -> SublatticeComparison:
    """Compare the lattice of columns outside ``index_set`` with the full one."""
    index_set = frozenset(index_set)
    full, scale = column_lattice(system)
    keep = [k for k in range(system.m) if k not in index_set]
    rows = _scaled_int_rows(system.gamma.transpose(), scale)
    sub_rows = [rows[k] for k in keep]
    sub_basis = hnf_basis(sub_rows, system.quadric_count)
    sub = LatticeBasis(len(sub_basis), sub_basis, system.quadric_count)
    index = _index_in(full, sub)
    return SublatticeComparison(index_set, sub, index == 1, index)


def _index_in(full: LatticeBasis, sub: LatticeBasis):
    """Index of ``sub`` in ``full`` given that sub generators lie in full."""
    if sub.rank < full.rank:
        return INFINITE
    coords = []
    for g in sub.basis:
        c = hnf_coordinates(full.basis, g)
        if c is None:
            raise AssertionError("sublattice generator escaped the full lattice")
        coords.append(c)
    coord_basis = hnf_basis(coords, full.rank)
    index = 1
    for row in coord_basis:
        pivot = next(e for e in row if e != 0)
        index *= abs(pivot)
    return index


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant factor decomposition; factors equal to one are omitted."""

    invariant_factors: tuple[int, ...]
    order: int

    def __post_init__(self):
        prod = 1
        for d in self.invariant_factors:
            prod *= d
        if prod != self.order:
            raise ValueError("order must equal the product of the invariant factors")

    @property
    def trivial(self) -> bool:
        return not self.invariant_factors

    def describe(self) -> str:
        if self.trivial:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def isotropy_group(system: QuadricSystem, index_set: Iterable[int]) -> FiniteAbelianGroup:
    """Isotropy of a torus orbit with the given zero set, as L / L_I.

    Demands the sublattice have full rank (zero sets realisable on the
    manifold always do); the invariant factors come from the Smith form of
    the coordinate matrix of the sublattice generators in the full basis.
    """
    index_set = frozenset(index_set)
    full, scale = column_lattice(system)
    rows = _scaled_int_rows(system.gamma.transpose(), scale)
    sub_rows = [rows[k] for k in range(system.m) if k not in index_set]
    sub_basis = hnf_basis(sub_rows, system.quadric_count)
    if len(sub_basis) < full.rank:
        raise NotFullRank(
            f"zero set {sorted(index_set)} leaves a rank-{len(sub_basis)} sublattice"
        )
    coords = [hnf_coordinates(full.basis, g) for g in sub_basis]
    if any(c is None for c in coords):
        raise AssertionError("sublattice generator escaped the full lattice")
    factors = tuple(d for d in smith_normal_form(coords, full.rank).diagonal if d > 1)
    order = 1
    for d in factors:
        order *= d
    return FiniteAbelianGroup(factors, order)


# ---------------------------------------------------------------------------
# The sign group D = (1/2)L* / L*


@dataclass(frozen=True)
class SignAction:
    """One group element: a coset representative and its coordinate signs."""

    element: Vector          # representative in (1/2)L*
    signs: tuple[int, ...]   # entries +1 or -1, one per coordinate


@dataclass(frozen=True)
class DGroup:
    group: FiniteAbelianGroup
    elements: tuple[SignAction, ...]   # binary-counter order over the dual basis


def d_group(system: QuadricSystem) -> DGroup:
    """The group of coordinatewise sign changes preserving the real locus.

    Isomorphic to (Z/2)^{quadric count}; element ``phi`` flips coordinate k
    exactly when the pairing of the k-th column with ``phi`` is a
    half-integer.  Elements are enumerated over subsets of the dual basis in
    binary-counter order, so the identity comes first.
    """
    report = validate(system)
    if not report.nonempty_nondegenerate:
        raise DegenerateSystem("sign group requires a valid system")
    full, scale = column_lattice(system)
    r = system.quadric_count
    assert full.rank == r, "validated systems span the quadric space"
    # true lattice basis = HNF basis / scale; dual basis rows solve B d_j = e_j
    b_true = RationalMatrix.from_rows(
        [[Fraction(x, scale) for x in row] for row in full.basis], r
    )
    dual_rows = []
    for j in range(r):
        rhs = [Fraction(1 if i == j else 0) for i in range(r)]
        d = solve_unique(b_true, rhs)
        assert d is not None
        dual_rows.append(d)
    # integer coordinates of each column in the true basis
    col_rows = _scaled_int_rows(system.gamma.transpose(), scale)
    coords = [hnf_coordinates(full.basis, g) for g in col_rows]
    assert all(c is not None for c in coords)
    elements = []
    for mask in range(2 ** r):
        chosen = [j for j in range(r) if mask >> j & 1]
        phi = tuple(
            sum((Fraction(1, 2) * dual_rows[j][i] for j in chosen), start=Fraction(0))
            for i in range(r)
        )
        signs = tuple(
            -1 if sum(coords[k][j] for j in chosen) % 2 else 1 for k in range(system.m)
        )
        elements.append(SignAction(phi, signs))
    group = FiniteAbelianGroup(tuple([2] * r), 2 ** r)
    return DGroup(group, tuple(elements))


def has_fixed_point(system: QuadricSystem, signs: Sequence[int]) -> bool:
    """Whether a sign action fixes some point of the real locus.

    A fixed point must vanish on every flipped coordinate, so one exists
    exactly when the right-hand side lies in the cone of the unflipped
    columns.
    """
    kept = [system.column(k) for k in range(system.m) if signs[k] == 1]
    return cone_membership(kept, system.c).member


# ---------------------------------------------------------------------------
# Embedding criteria


@dataclass(frozen=True)
class EmbeddingWitness:
    index_set: frozenset[int]
    index: object             # sublattice index (int or INFINITE)
    vertex: Vertex | None


@dataclass(frozen=True)
class EmbeddingVerdict:
    embeds: bool
    method: str               # "quadric-side" | "polytope-side" | "both"
    witness: EmbeddingWitness | None


def embedding_criterion_quadrics(system: QuadricSystem) -> EmbeddingVerdict:
    """Embedding test on the quadric side.

    The construction embeds exactly when every realisable zero set leaves
    the column lattice unchanged; by inclusion-monotonicity it is enough to
    check the maximal realisable zero sets, which are the vertex active sets
    of the associated presentation.  The first failing vertex in coordinate
    order is reported.
    """
    report = validate(system)
    if not report.nonempty_nondegenerate:
        raise DegenerateSystem("embedding criterion requires a valid system")
    presentation = to_polytope(system)
    for vertex in enumerate_vertices(presentation):
        comparison = sublattice(system, vertex.active_set)
        if not comparison.equal_to_full:
            return EmbeddingVerdict(
                False,
                "quadric-side",
                EmbeddingWitness(vertex.active_set, comparison.index, vertex),
            )
    return EmbeddingVerdict(True, "quadric-side", None)


def delzant_check(p: PolytopePresentation) -> EmbeddingVerdict:
    """Embedding test on the polytope side.

    The presentation passes when at every vertex the active normals form a
    basis of the lattice generated by all the normals (unimodular coordinate
    determinant).  Verifying vertices suffices because every face of a
    pointed polyhedron contains one.
    """
    vertices = enumerate_vertices(p)
    if not vertices:
        raise NonGenericPresentation("a presentation without vertices cannot be Delzant")
    scale = _denominator_scale(p.a)
    normal_rows = _scaled_int_rows(p.a, scale)
    lam = hnf_basis(normal_rows, p.n)
    if len(lam) < p.n:
        raise NonGenericPresentation("normals do not span the ambient space")
    for vertex in vertices:
        active = sorted(vertex.active_set)
        if len(active) != p.n:
            raise NonGenericPresentation(
                f"vertex {vertex.point} has {len(active)} active normals, expected {p.n}"
            )
        coords = []
        for i in active:
            c = hnf_coordinates(lam, normal_rows[i])
            assert c is not None
            coords.append([Fraction(x) for x in c])
        det = determinant(RationalMatrix.from_rows(coords, p.n)) if p.n else Fraction(1)
        if abs(det) != 1:
            return EmbeddingVerdict(
                False,
                "polytope-side",
                EmbeddingWitness(vertex.active_set, abs(int(det)), vertex),
            )
    return EmbeddingVerdict(True, "polytope-side", None)


def embedding_verdict_both(p: PolytopePresentation) -> EmbeddingVerdict:
    """Run both criteria on a presentation and demand they agree."""
    polytope_side = delzant_check(p)
    quadric_side = embedding_criterion_quadrics(to_quadrics(p))
    if polytope_side.embeds != quadric_side.embeds:
        raise AssertionError(
            "embedding criteria disagree: "
            f"polytope-side {polytope_side.embeds}, quadric-side {quadric_side.embeds}"
        )
    witness = polytope_side.witness or quadric_side.witness
    return EmbeddingVerdict(polytope_side.embeds, "both", witness)
