import pytest

from hamlag import PolytopePresentation, QuadricSystem


@pytest.fixture
def pentagon() -> PolytopePresentation:
    return PolytopePresentation.from_rows(
        [[1, 0], [0, 1], [-1, 0], [0, -1], [-1, -1]], [0, 0, 2, 2, 3]
    )


@pytest.fixture
def sphere3() -> QuadricSystem:
    return QuadricSystem.from_rows([[1, 1, 1]], [1])


def system_16(k: int, p: int, q: int) -> QuadricSystem:
    """The standard two-quadric realisation with doubled first block of size k.

    First equation: sum of the first p squares equals 1; second: the first k
    squares plus the last q squares equal 2.
    """
    m = p + q
    row1 = [1] * p + [0] * q
    row2 = [1] * k + [0] * (p - k) + [1] * q
    return QuadricSystem.from_rows([row1, row2], [1, 2])


def system_15(k: int, p: int, q: int) -> QuadricSystem:
    """The index-three presentation of the same family."""
    m = p + q
    row1 = [2] * k + [1] * (p - k) + [1] * q
    row2 = [1] * k + [2] * (p - k) + [-1] * q
    return QuadricSystem.from_rows([row1, row2], [3, 0])
