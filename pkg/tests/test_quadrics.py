from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamlag import (
    QuadricSystem,
    apply_equivalence,
    canonicalize_bounded,
    is_bounded,
    same_solution_plane,
    validate,
)
from hamlag.errors import DegenerateSystem, SingularTransform
from hamlag.linalg import RationalMatrix

from conftest import system_15, system_16


def test_sphere_is_nondegenerate():
    report = validate(QuadricSystem.from_rows([[1, 1, 1]], [1]))
    assert report.nonempty_nondegenerate
    assert report.c_in_full_cone
    assert report.violating_subset is None
    assert not report.minimal_candidate


def test_zero_rhs_is_degenerate_with_empty_witness():
    report = validate(QuadricSystem.from_rows([[1, -1], [1, 1]], [0, 0]))
    assert not report.nonempty_nondegenerate
    assert report.violating_subset == frozenset()


def test_realisation_16_validates():
    report = validate(system_16(1, 2, 2))
    assert report.nonempty_nondegenerate


def test_c_outside_cone_fails_condition_one():
    report = validate(QuadricSystem.from_rows([[1, 1]], [-1]))
    assert not report.c_in_full_cone
    assert not report.nonempty_nondegenerate


def test_small_cone_witness_is_minimal():
    # c is a multiple of the second column alone
    report = validate(QuadricSystem.from_rows([[1, 2, 0], [0, 1, 1]], [2, 1]))
    assert not report.nonempty_nondegenerate
    assert report.violating_subset == frozenset({1})


def test_minimal_candidate_flag():
    report = validate(QuadricSystem.from_rows([[1, -1]], [1]))
    assert report.minimal_candidate
    ok = validate(QuadricSystem.from_rows([[1, 1, 1]], [1]))
    assert not ok.minimal_candidate


def test_boundedness_basic():
    assert is_bounded(QuadricSystem.from_rows([[1, 1, 1]], [1]))
    assert not is_bounded(QuadricSystem.from_rows([[1, -1]], [1]))


def test_boundedness_rejects_degenerate():
    with pytest.raises(DegenerateSystem):
        is_bounded(QuadricSystem.from_rows([[1, 1]], [-1]))


def test_canonicalize_bounded_structure():
    form = canonicalize_bounded(system_16(1, 2, 2))
    system = form.system
    assert all(e > 0 for e in system.gamma.row(0))
    assert system.c[0] > 0
    assert all(e == 0 for e in system.c[1:])
    assert same_solution_plane(system, system_16(1, 2, 2))


def test_canonicalize_of_canonical_is_identity():
    system = QuadricSystem.from_rows([[1, 1]], [2])
    form = canonicalize_bounded(system)
    assert form.transform.entries == RationalMatrix.identity(1).entries
    assert form.system == system


def test_realisation_15_rewrites_to_16():
    """The documented rational transform carries (2,1,...) to the unit form."""
    s15 = system_15(1, 2, 2)
    g = RationalMatrix.from_rows(
        [[Fraction(1, 3), Fraction(1, 3)], [Fraction(2, 3), Fraction(-1, 3)]]
    )
    rewritten = apply_equivalence(s15, g)
    assert rewritten == system_16(1, 2, 2)
    assert same_solution_plane(s15, rewritten)


def test_canonicalize_15_is_equivalent_to_16():
    form = canonicalize_bounded(system_15(1, 2, 2))
    assert same_solution_plane(form.system, system_16(1, 2, 2))


def test_apply_equivalence_identity_and_roundtrip():
    system = system_16(1, 2, 2)
    identity = RationalMatrix.identity(2)
    assert apply_equivalence(system, identity) == system
    g = RationalMatrix.from_rows([[1, 1], [0, 1]])
    g_inv = RationalMatrix.from_rows([[1, -1], [0, 1]])
    assert apply_equivalence(apply_equivalence(system, g), g_inv) == system


def test_apply_equivalence_rejects_singular():
    with pytest.raises(SingularTransform):
        apply_equivalence(system_16(1, 2, 2), RationalMatrix.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(SingularTransform):
        apply_equivalence(system_16(1, 2, 2), RationalMatrix.identity(3))


invertible_2x2 = st.tuples(
    st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)
).filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0)


@given(invertible_2x2)
@settings(max_examples=40)
def test_equivalence_invariance_of_verdicts(entries):
    a, b, c, d = entries
    g = RationalMatrix.from_rows([[a, b], [c, d]])
    for system in (system_16(1, 2, 2), system_15(2, 3, 1),
                   QuadricSystem.from_rows([[1, 0, 1], [0, 1, -1]], [1, 1])):
        moved = apply_equivalence(system, g)
        assert validate(moved).nonempty_nondegenerate == validate(system).nonempty_nondegenerate
        if validate(system).nonempty_nondegenerate:
            assert is_bounded(moved) == is_bounded(system)
        assert validate(moved).minimal_candidate == validate(system).minimal_candidate


@given(st.permutations(list(range(4))))
@settings(max_examples=30)
def test_permutation_equivariance(perm):
    base = QuadricSystem.from_rows([[1, 2, 0, 1], [0, 1, 1, 2]], [2, 1])
    permuted = QuadricSystem.from_rows(
        [[base.gamma.entries[i][perm[k]] for k in range(4)] for i in range(2)], base.c
    )
    r_base, r_perm = validate(base), validate(permuted)
    assert r_base.nonempty_nondegenerate == r_perm.nonempty_nondegenerate
    if r_perm.violating_subset is not None:
        # the pulled-back witness must violate the original system
        pulled = frozenset(perm[i] for i in r_perm.violating_subset)
        from hamlag.cones import cone_membership

        cols = base.columns()
        assert cone_membership([cols[i] for i in pulled], base.c).member


def test_canonical_invariants_on_corpus():
    for system in (
        system_16(0, 2, 3),
        system_16(2, 2, 2),
        system_15(1, 2, 2),
        QuadricSystem.from_rows([[1, 1, 1], [2, 1, -1]], [1, 0]),
    ):
        form = canonicalize_bounded(system)
        assert all(e > 0 for e in form.system.gamma.row(0))
        assert form.system.c[0] > 0 and all(e == 0 for e in form.system.c[1:])
        assert apply_equivalence(system, form.transform) == form.system
