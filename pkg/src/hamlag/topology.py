"""Topology classification of the real locus and the Lagrangian total space.

Covers the cases with a complete answer: a single quadric (sphere with a
sign involution), two quadrics (the N_k(p,q) family), polygons (surfaces
with the closed genus formula plus an independent Euler-characteristic
cell-counting oracle), the torus case of a zero-dimensional quotient, and
the pentagon's known connected-sum label.  Everything else is reported
honestly as unclassified together with the Gale vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    DegenerateSystem,
    NotAPolygon,
    Unbounded,
    WrongQuadricCount,
)
from .lattices import (
    DGroup,
    d_group,
    embedding_criterion_quadrics,
    has_fixed_point,
)
from .polytopes import (
    PolytopePresentation,
    check_generic,
    enumerate_vertices,
    face_active_sets,
    polyhedron_bounded,
    to_polytope,
)
from .quadrics import QuadricSystem, canonicalize_bounded, is_bounded, validate


@dataclass(frozen=True)
class SpaceForm:
    """A tagged topological description; ``params`` holds structured data."""

    kind: str
    label: str
    params: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class FibrationNote:
    total: str
    fiber: str
    base: str
    kind: str


@dataclass(frozen=True)
class TopologyReport:
    r_topology: SpaceForm
    n_topology: SpaceForm
    z_note: str | None
    fibrations: tuple[FibrationNote, ...]
    embeds: bool
    minimal_candidate: bool
    genus: int | None


@dataclass(frozen=True)
class TwoQuadricForm:
    """Block data of the canonical two-quadric shape.

    ``p`` positive and ``q`` negative second-row entries after reordering by
    ``permutation``; ``k`` and ``case`` are populated only for embeddings,
    where the sign table matches one of the two free-action normal forms.
    """

    p: int
    q: int
    k: int | None
    case: int | None
    permutation: tuple[int, ...]


@dataclass(frozen=True)
class SurfaceGenus:
    m_effective: int
    genus: int
    components: int


def _sphere(dim: int) -> SpaceForm:
    return SpaceForm("sphere", f"S^{dim}", {"dim": dim})


def _sphere_product(dims: tuple[int, ...]) -> SpaceForm:
    # factor order is not intrinsic to the locus, so normalise it
    dims = tuple(sorted(dims))
    label = " x ".join(f"S^{d}" for d in dims)
    return SpaceForm("sphere_product", label, {"dims": dims})


def _unclassified(reason: str, **params) -> SpaceForm:
    return SpaceForm("unclassified", f"unclassified ({reason})", dict(params))


def _circle_factor_name(m: int) -> str:
    """The one-quadric total space: twisted or trivial circle product."""
    return f"S^{m - 1} x S^1" if m % 2 == 0 else f"K^{m}"


def _standard_fibrations(m: int, n: int, r_label: str, embeds: bool) -> tuple[FibrationNote, ...]:
    notes = [
        FibrationNote(
            total="N",
            fiber=f"R ({r_label})",
            base=f"T^{m - n}",
            kind="bundle over torus",
        )
    ]
    if embeds:
        notes.append(
            FibrationNote(
                total="N",
                fiber=f"T^{m - n}",
                base=f"R/D (small cover, dim {n})",
                kind="principal torus bundle over the small cover",
            )
        )
    return tuple(notes)


def _require_compact_valid(system: QuadricSystem):
    report = validate(system)
    if not report.nonempty_nondegenerate:
        raise DegenerateSystem("classification requires a valid system")
    if not is_bounded(system):
        raise Unbounded("classification covers compact intersections only")
    return report


# ---------------------------------------------------------------------------
# One quadric


def classify_one_quadric(system: QuadricSystem) -> TopologyReport:
    """Sphere with a coordinatewise sign involution.

    Embeds exactly when all coefficients agree, in which case the type
    alternates with the parity of the coordinate count.  Otherwise the total
    space is still the mapping torus of the involution, reported with its
    orientation class and flagged as immersed.
    """
    if system.quadric_count != 1:
        raise WrongQuadricCount(f"expected one quadric, got {system.quadric_count}")
    report = _require_compact_valid(system)
    canonical = canonicalize_bounded(system).system
    m = system.m
    verdict = embedding_criterion_quadrics(system)
    gammas = canonical.gamma.row(0)
    all_equal = all(g == gammas[0] for g in gammas)
    assert all_equal == verdict.embeds, "coefficient test must match the lattice criterion"

    r_form = _sphere(m - 1)
    tau = d_group(system).elements[1].signs
    orientation_preserving = 1
    for s in tau:
        orientation_preserving *= s
    preserved = orientation_preserving == 1
    if verdict.embeds:
        n_form = SpaceForm(
            "product_with_circle" if m % 2 == 0 else "klein",
            _circle_factor_name(m),
            {"m": m, "orientation_preserving": preserved},
        )
        assert preserved == (m % 2 == 0)
    else:
        name = f"S^{m - 1} x S^1" if preserved else f"K^{m}"
        n_form = SpaceForm(
            "mapping_torus",
            f"S^{m - 1} x_(Z/2) S^1 ~ {name} (immersed)",
            {
                "m": m,
                "orientation_preserving": preserved,
                "immersion_only": True,
                "involution_signs": tau,
            },
        )
    return TopologyReport(
        r_topology=r_form,
        n_topology=n_form,
        z_note=None,
        fibrations=_standard_fibrations(m, system.n, r_form.label, verdict.embeds),
        embeds=verdict.embeds,
        minimal_candidate=report.minimal_candidate,
        genus=None,
    )


# ---------------------------------------------------------------------------
# Two quadrics


def two_quadric_blocks(system: QuadricSystem) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Coordinate blocks of the canonical form: (positive, negative, permutation)."""
    canonical = canonicalize_bounded(system).system
    second = canonical.gamma.row(1)
    if any(e == 0 for e in second):
        raise AssertionError("nondegenerate two-quadric systems have no zero in the second row")
    pos = tuple(k for k, e in enumerate(second) if e > 0)
    neg = tuple(k for k, e in enumerate(second) if e < 0)
    return pos, neg, pos + neg


def free_action_combinatorial(system: QuadricSystem, dg: DGroup | None = None) -> bool:
    """Freeness of the sign group on the two-quadric real locus.

    An element fixes a point exactly when it keeps a sign +1 in both
    canonical blocks (a two-coordinate solution exists there); freeness is
    the absence of such an element.
    """
    pos, neg, _ = two_quadric_blocks(system)
    if dg is None:
        dg = d_group(system)
    for element in dg.elements[1:]:
        plus_in_pos = any(element.signs[k] == 1 for k in pos)
        plus_in_neg = any(element.signs[k] == 1 for k in neg)
        if plus_in_pos and plus_in_neg:
            return False
    return True


def free_action_brute_force(system: QuadricSystem, dg: DGroup | None = None) -> bool:
    """Freeness by explicit fixed-point solvability for every nonzero element."""
    if dg is None:
        dg = d_group(system)
    return not any(has_fixed_point(system, e.signs) for e in dg.elements[1:])


def classify_two_quadrics(system: QuadricSystem) -> tuple[TopologyReport, TwoQuadricForm]:
    """Products of spheres and their N_k(p,q) quotients.

    The reported triple is normalised so that the sign-split lies in the
    first sphere block with the smaller split size; block-constant sign
    tables (k = 0) sort the block sizes ascending.  Non-embedding systems
    report the sphere product only.
    """
    if system.quadric_count != 2:
        raise WrongQuadricCount(f"expected two quadrics, got {system.quadric_count}")
    report = _require_compact_valid(system)
    pos, neg, permutation = two_quadric_blocks(system)
    p, q = len(pos), len(neg)
    assert 0 < p < system.m
    r_form = _sphere_product((p - 1, q - 1))
    verdict = embedding_criterion_quadrics(system)
    dg = d_group(system)
    free = free_action_combinatorial(system, dg)

    k = None
    case = None
    if verdict.embeds:
        assert free, "an embedding forces a free sign action"
        tables = [tuple(e.signs[i] for i in permutation) for e in dg.elements[1:]]
        marker1 = tuple([-1] * p + [1] * q)
        marker2 = tuple([1] * p + [-1] * q)
        have1 = marker1 in tables
        have2 = marker2 in tables
        if have1 and have2:
            k = 0
            case = 1
            p_report, q_report = sorted((p, q))
        elif have1:
            case = 1
            splitters = [t for t in tables if t != marker1]
            counts = sorted(sum(1 for s in t[:p] if s == 1) for t in splitters)
            assert counts[0] + counts[1] == p
            assert all(all(s == -1 for s in t[p:]) for t in splitters)
            k = counts[0]
            p_report, q_report = p, q
        elif have2:
            case = 2
            splitters = [t for t in tables if t != marker2]
            counts = sorted(sum(1 for s in t[p:] if s == 1) for t in splitters)
            assert counts[0] + counts[1] == q
            assert all(all(s == -1 for s in t[:p]) for t in splitters)
            k = counts[0]
            p_report, q_report = q, p
        else:
            raise AssertionError("free embedding sign table matches neither normal form")
        label = f"N_{k}({p_report},{q_report})"
        params: dict[str, object] = {"k": k, "p": p_report, "q": q_report}
        if k == 0:
            expansion = f"{_circle_factor_name(p_report)} x {_circle_factor_name(q_report)}"
            label += f" = N({p_report}) x N({q_report})"
            params["product_expansion"] = expansion
        n_form = SpaceForm("nkpq", label, params)
    else:
        n_form = _unclassified(
            "immersion only" if not free else "free action without lattice embedding",
            free_action=free,
        )
    form = TwoQuadricForm(p=p, q=q, k=k, case=case, permutation=permutation)
    top = TopologyReport(
        r_topology=r_form,
        n_topology=n_form,
        z_note=None,
        fibrations=_standard_fibrations(system.m, system.n, r_form.label, verdict.embeds),
        embeds=verdict.embeds,
        minimal_candidate=report.minimal_candidate,
        genus=None,
    )
    return top, form


# ---------------------------------------------------------------------------
# Polygons


def polygon_genus(m_effective: int) -> int:
    if m_effective < 3:
        raise NotAPolygon(f"a polygon needs at least 3 facets, got {m_effective}")
    return 1 + 2 ** (m_effective - 3) * (m_effective - 4)


PENTAGON_Z_LABEL = "connected sum of 5 copies of S^3 x S^4"


def classify_polygon(system: QuadricSystem) -> tuple[TopologyReport, SurfaceGenus]:
    """Surfaces over polygons, with strict redundancies split off as circles.

    Each strict redundancy doubles the component count of the real locus and
    contributes a circle factor to the complex one; the remaining polygon
    gives an orientable surface by the closed genus formula.
    """
    if system.n != 2:
        raise NotAPolygon(f"polygon classification needs n = 2, got n = {system.n}")
    report = _require_compact_valid(system)
    presentation = to_polytope(system)
    generic = check_generic(presentation)
    assert generic.generic and not generic.redundant_touching
    j = len(generic.redundant_strict)
    m_eff = system.m - j
    genus = polygon_genus(m_eff)
    copies = 2 ** j
    if j == 0:
        r_form = SpaceForm("surface", f"S_{genus}", {"genus": genus})
    else:
        r_form = SpaceForm(
            "disjoint_surfaces",
            f"{copies} disjoint copies of S_{genus}",
            {"genus": genus, "components": copies},
        )
    verdict = embedding_criterion_quadrics(system)
    if verdict.embeds:
        n_form = SpaceForm(
            "surface_bundle",
            f"S_{genus}-bundle over T^{system.m - 2}",
            {
                "genus": genus,
                "base_torus_rank": system.m - 2,
                "pi1_extension": f"1 -> pi_1(S_{genus}) -> pi_1(N) -> Z^{system.m - 2} -> 1",
            },
        )
    else:
        n_form = _unclassified("immersion only")
    z_parts = []
    if j > 0:
        z_parts.append(f"Z = Z' x (S^1)^{j} with Z' over the {m_eff}-gon")
    if m_eff == 5:
        prefix = "Z'" if j > 0 else "Z"
        z_parts.append(f"{prefix} is a {PENTAGON_Z_LABEL}")
    z_note = "; ".join(z_parts) if z_parts else None
    top = TopologyReport(
        r_topology=r_form,
        n_topology=n_form,
        z_note=z_note,
        fibrations=_standard_fibrations(system.m, 2, r_form.label, verdict.embeds),
        embeds=verdict.embeds,
        minimal_candidate=report.minimal_candidate,
        genus=genus,
    )
    return top, SurfaceGenus(m_eff, genus, copies)


def euler_characteristic_oracle(p: PolytopePresentation) -> int:
    """Euler characteristic of the real locus over a polygon by cell counting.

    Each face of the polygon with a active constraints lifts to 2^(m - a)
    cells of dimension 2 - a; the alternating sum is exact and independent
    of the closed genus formula.
    """
    if p.n != 2:
        raise NotAPolygon(f"cell counting needs n = 2, got n = {p.n}")
    if not polyhedron_bounded(p):
        raise NotAPolygon("cell counting needs a bounded polygon")
    generic = check_generic(p)
    if not generic.generic:
        raise NotAPolygon("cell counting needs a generic presentation")
    if generic.redundant_strict or generic.redundant_touching:
        raise NotAPolygon("cell counting needs an irredundant presentation")
    chi = 0
    for active in face_active_sets(p):
        a = len(active)
        chi += (-1) ** (2 - a) * 2 ** (p.m - a)
    return chi


# ---------------------------------------------------------------------------
# Dispatcher


def classify(system: QuadricSystem) -> TopologyReport:
    """Route a compact valid system to the sharpest available classifier."""
    report = _require_compact_valid(system)
    if system.quadric_count == 1:
        return classify_one_quadric(system)
    if system.n == 0:
        return _classify_torus(system, report)
    if system.quadric_count == 2:
        return classify_two_quadrics(system)[0]
    if system.n == 2:
        return classify_polygon(system)[0]
    return _classify_unmatched(system, report)


def _classify_torus(system: QuadricSystem, report) -> TopologyReport:
    m = system.m
    verdict = embedding_criterion_quadrics(system)
    assert verdict.embeds, "zero-dimensional quotients always embed"
    r_form = SpaceForm("points", f"(S^0)^{m} = {2 ** m} points", {"count": 2 ** m})
    n_form = SpaceForm("torus", f"T^{m}", {"rank": m})
    return TopologyReport(
        r_topology=r_form,
        n_topology=n_form,
        z_note=None,
        fibrations=_standard_fibrations(m, 0, r_form.label, True),
        embeds=True,
        minimal_candidate=report.minimal_candidate,
        genus=None,
    )


def _classify_unmatched(system: QuadricSystem, report) -> TopologyReport:
    verdict = embedding_criterion_quadrics(system)
    presentation = to_polytope(system)
    generic = check_generic(presentation)
    vertices = enumerate_vertices(presentation)
    gale = tuple(tuple(str(e) for e in col) for col in system.columns())
    summary = {
        "m": system.m,
        "n": system.n,
        "quadrics": system.quadric_count,
        "vertices": len(vertices),
        "facets": system.m - len(generic.redundant_strict),
        "gale_vectors": gale,
    }
    r_form = _unclassified("no general classification at this size", **summary)
    n_form = (
        _unclassified("no general classification at this size", **summary)
        if verdict.embeds
        else _unclassified("immersion only", **summary)
    )
    return TopologyReport(
        r_topology=r_form,
        n_topology=n_form,
        z_note=None,
        fibrations=_standard_fibrations(system.m, system.n, "R", verdict.embeds),
        embeds=verdict.embeds,
        minimal_candidate=report.minimal_candidate,
        genus=None,
    )
