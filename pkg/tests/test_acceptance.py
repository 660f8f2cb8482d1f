"""Acceptance criteria, one test per criterion.

Each test prints a single PASS line when its criterion holds; any failure is
a hard assertion.  Exact criteria admit no tolerance; the numeric criterion
pins the documented thresholds.  Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import json
import random
import time

import numpy as np
import pytest

from hamlag import (
    QuadricSystem,
    build,
    check_generic,
    classify_two_quadrics,
    delzant_check,
    delzant_corpus,
    embedding_criterion_quadrics,
    euler_characteristic_oracle,
    is_bounded,
    isotropy_group,
    lagrangian_residual,
    polygon_genus,
    polygon_recipe,
    sample_points,
    same_solution_plane,
    sublattice,
    tangent_frame,
    to_polytope,
    to_quadrics,
    validate,
    verify_lagrangian,
)
from hamlag.cli import PipelineOptions, run_pipeline
from hamlag.corpus import random_system
from hamlag.errors import DegenerateSystem
from hamlag.instances import parse_instance_text
from hamlag.linalg import lattice_index
from hamlag.polytopes import PolytopePresentation
from hamlag.sampling import corrupted_frame, dual_basis_floats
from hamlag.topology import free_action_brute_force, free_action_combinatorial

from conftest import system_16

PENTAGON_JSON = json.dumps(
    {
        "format": "polytope",
        "name": "pentagon",
        "a": [["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"], ["-1", "-1"]],
        "b": ["0", "0", "2", "2", "3"],
    }
)


def _report(criterion: int, message: str):
    print(f"ACCEPTANCE {criterion} PASS: {message}")


def test_criterion_1_pentagon_end_to_end():
    start = time.monotonic()
    instance = parse_instance_text(PENTAGON_JSON)
    stages = ["validate", "generic", "delzant", "embed", "classify", "sample", "lagrangian"]
    options = PipelineOptions(count=100, seed=11)
    document, code = run_pipeline(instance, stages, options)
    elapsed = time.monotonic() - start
    assert code == 0
    by_name = {s["name"]: s for s in document["stages"]}
    assert by_name["generic"]["status"] == "ok"
    assert by_name["delzant"]["status"] == "ok"
    assert by_name["embed"]["status"] == "ok"
    classify_result = by_name["classify"]["result"]
    assert classify_result["genus"] == 5
    assert classify_result["r_topology"]["label"] == "S_5"
    assert classify_result["n_topology"]["label"] == "S_5-bundle over T^3"
    assert "connected sum of 5 copies of S^3 x S^4" in classify_result["z_note"]
    system = to_quadrics(instance.polytope)
    assert system.quadric_count == 3
    # exact stages are bit-exact: a rerun reproduces the document verbatim
    document2, _ = run_pipeline(instance, stages, options)
    assert document2 == document
    assert elapsed < 5.0
    _report(1, f"pentagon pipeline exact and reproducible in {elapsed:.2f}s")


def test_criterion_2_one_quadric_parity_table():
    from hamlag import classify_one_quadric

    start = time.monotonic()
    for m in range(2, 9):
        report = classify_one_quadric(QuadricSystem.from_rows([[1] * m], [1]))
        assert report.embeds
        expected = f"S^{m - 1} x S^1" if m % 2 == 0 else f"K^{m}"
        assert report.n_topology.label == expected
    for gammas in ([1, 1, 2], [1, 2, 3], [2, 2, 2, 1]):
        report = classify_one_quadric(QuadricSystem.from_rows([gammas], [2]))
        assert not report.embeds
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    _report(2, f"parity table m=2..8 plus unequal-coefficient rejections in {elapsed:.2f}s")


def _expected_two_quadric_label(k: int, p: int, q: int) -> str:
    k_norm = min(k, p - k)
    if k_norm == 0:
        low, high = sorted((p, q))
        return f"N_0({low},{high})"
    return f"N_{k_norm}({p},{q})"


def test_criterion_3_two_quadric_realisations():
    start = time.monotonic()
    checked = 0
    for p in range(1, 8):
        for q in range(1, 9 - p):
            for k in range(0, p + 1):
                system = system_16(k, p, q)
                assert validate(system).nonempty_nondegenerate, (k, p, q)
                verdict = embedding_criterion_quadrics(system)
                assert verdict.embeds, (k, p, q)
                report, form = classify_two_quadrics(system)
                label = report.n_topology.label.split(" = ")[0]
                assert label == _expected_two_quadric_label(k, p, q), (k, p, q, label)
                assert free_action_combinatorial(system) == free_action_brute_force(system) == True
                checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    _report(3, f"{checked} realisations classified back to their triples in {elapsed:.2f}s")


def _random_raw_system(rng: random.Random) -> QuadricSystem:
    m = rng.randint(2, 8)
    r = rng.randint(1, m - 1)
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(r)]
        if rng.random() < 0.5:
            weights = [rng.randint(1, 3) for _ in range(m)]
            c = [sum(row[j] * weights[j] for j in range(m)) for row in rows]
        else:
            c = [rng.randint(-4, 4) for _ in range(r)]
        try:
            return QuadricSystem.from_rows(rows, c)
        except ValueError:
            continue


def test_criterion_4_equivalence_theorem():
    start = time.monotonic()
    rng = random.Random(20260808)
    disagreements = 0
    degenerate_seen = 0
    for _ in range(200):
        system = _random_raw_system(rng)
        expected = validate(system).nonempty_nondegenerate
        try:
            generic = check_generic(to_polytope(system)).generic
        except DegenerateSystem:
            generic = False
        if not expected:
            degenerate_seen += 1
        if generic != expected:
            disagreements += 1
    for _, recipe in delzant_corpus():
        presentation = build(recipe)
        system = to_quadrics(presentation)
        if validate(system).nonempty_nondegenerate != check_generic(to_polytope(system)).generic:
            disagreements += 1
    elapsed = time.monotonic() - start
    assert disagreements == 0
    assert degenerate_seen > 20, "the random mix must exercise the degenerate side"
    assert elapsed < 60.0
    _report(
        4,
        f"200 random systems ({degenerate_seen} degenerate) plus recipe corpus, "
        f"zero disagreements in {elapsed:.2f}s",
    )


def _mutants() -> list[PolytopePresentation]:
    out = []
    for index, (_, recipe) in enumerate(delzant_corpus()):
        presentation = build(recipe)
        scale_row = index % presentation.m
        rows = [
            [2 * e for e in row] if i == scale_row else list(row)
            for i, row in enumerate(presentation.a.entries)
        ]
        b = [
            2 * presentation.b[i] if i == scale_row else presentation.b[i]
            for i in range(presentation.m)
        ]
        out.append(PolytopePresentation.from_rows(rows, b))
    # sheared squares on a few lattice slopes for extra coverage
    for slope in (2, 3, 4):
        out.append(
            PolytopePresentation.from_rows(
                [[1, 0], [1, slope], [-1, 0], [0, -1]], [0, 0, 2, 1]
            )
        )
    return out


def test_criterion_5_delzant_cross_check():
    start = time.monotonic()
    disagreements = 0
    non_delzant = 0
    for _, recipe in delzant_corpus():
        presentation = build(recipe)
        a = delzant_check(presentation).embeds
        b = embedding_criterion_quadrics(to_quadrics(presentation)).embeds
        assert a and b, "recipe corpus must be Delzant on both sides"
        if a != b:
            disagreements += 1
    mutants = _mutants()
    assert len(mutants) >= 20
    for mutant in mutants:
        assert check_generic(mutant).generic
        a = delzant_check(mutant).embeds
        b = embedding_criterion_quadrics(to_quadrics(mutant)).embeds
        if a != b:
            disagreements += 1
        if not a:
            non_delzant += 1
    elapsed = time.monotonic() - start
    assert disagreements == 0
    assert non_delzant >= 20
    assert elapsed < 30.0
    _report(
        5,
        f"{len(delzant_corpus())} Delzant polytopes and {non_delzant} non-Delzant "
        f"mutants agree on both sides in {elapsed:.2f}s",
    )


def test_criterion_6_genus_vs_euler_oracle():
    start = time.monotonic()
    for sides in range(3, 10):
        presentation = build(polygon_recipe(sides))
        chi = euler_characteristic_oracle(presentation)
        assert chi == 2 - 2 * polygon_genus(sides), sides
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    _report(6, f"m-gons 3..9 satisfy chi = 2 - 2g in {elapsed:.2f}s")


def test_criterion_7_lattice_known_answers():
    assert lattice_index([[2, 1], [1, 2], [1, -1]], [[1, 0], [0, 1]]) == 3
    system = QuadricSystem.from_rows([[1, 1, 2]], [1])
    group = isotropy_group(system, {0, 1})
    assert group.invariant_factors == (2,)
    comparison = sublattice(system, {0, 1})
    assert group.order == comparison.index == 2
    _report(7, "index-3 sublattice and Z/2 isotropy with order = index")


def _bounded_random_systems(count: int) -> list[QuadricSystem]:
    systems = []
    seed = 0
    while len(systems) < count:
        m = 4 + seed % 3
        n = 1 + seed % (m - 3) if m > 4 else 1
        n = min(n, m - 2)  # keep at least two quadrics for the negative control
        try:
            system = random_system(m, n, seed=seed, coefficient_bound=3).system
        except Exception:
            seed += 1
            continue
        if is_bounded(system):
            systems.append(system)
        seed += 1
    return systems


def test_criterion_8_numeric_lagrangian_property(pentagon):
    start = time.monotonic()
    targets = [to_quadrics(pentagon), system_16(1, 2, 2)]
    targets.extend(_bounded_random_systems(10))
    corrupted_worst = 0.0
    for index, system in enumerate(targets):
        report = verify_lagrangian(system, 100, seed=100 + index)
        assert report.samples >= 100
        assert report.max_quadric_residual <= 1e-12, index
        assert report.max_symplectic_pullback <= 1e-9, index
        assert report.min_frame_singular_value >= 1e-6, index
        dual = dual_basis_floats(system)
        rng = np.random.default_rng(500 + index)
        for point in sample_points(system, 10, seed=200 + index):
            phi = rng.random(system.quadric_count) @ dual
            frame = tangent_frame(system, point, phi)
            bad = corrupted_frame(frame, system.quadric_count)
            corrupted_worst = max(corrupted_worst, lagrangian_residual(bad))
    elapsed = time.monotonic() - start
    assert corrupted_worst > 0.1
    assert elapsed < 60.0
    _report(
        8,
        f"12 systems x 100 samples within tolerances, negative control "
        f"{corrupted_worst:.2f} in {elapsed:.2f}s",
    )


def test_criterion_9_conversion_round_trip(pentagon):
    systems = [
        QuadricSystem.from_rows([[1, 1, 1]], [1]),
        system_16(1, 2, 2),
        system_16(0, 2, 3),
        to_quadrics(pentagon),
    ]
    for _, recipe in delzant_corpus():
        systems.append(to_quadrics(build(recipe)))
    rng = random.Random(99)
    for _ in range(20):
        system = _random_raw_system(rng)
        if validate(system).nonempty_nondegenerate:
            systems.append(system)
    for system in systems:
        back = to_quadrics(to_polytope(system))
        assert same_solution_plane(system, back)
    _report(9, f"{len(systems)} corpus systems round-trip to the same solution plane")
