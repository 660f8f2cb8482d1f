"""Exception types shared across the package."""


class HamlagError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(HamlagError):
    """Vectors or matrices with incompatible dimensions were combined."""


class NotASublattice(HamlagError):
    """A claimed sublattice generator lies outside the ambient lattice."""


class DegenerateSystem(HamlagError):
    """The quadric system fails the nonemptiness/nondegeneracy conditions."""


class Unbounded(HamlagError):
    """The operation requires a compact intersection of quadrics."""


class SingularTransform(HamlagError):
    """A linear equivalence must be invertible."""


class NonGenericPresentation(HamlagError):
    """The halfspace presentation is not generic."""


class NotFullRank(HamlagError):
    """The sublattice has lower rank than the ambient lattice."""


class WrongQuadricCount(HamlagError):
    """A specialised classifier was called with the wrong number of quadrics."""


class NotAPolygon(HamlagError):
    """The operation requires a bounded two-dimensional polytope."""


class ConvergenceFailure(HamlagError):
    """Too few Newton projections converged; the system is near-degenerate."""


class RankDeficient(HamlagError):
    """A tangent frame fell below the immersion rank threshold."""


class CutTooDeep(HamlagError):
    """A vertex cut would slice past the ends of the adjacent edges."""


class MalformedRecipe(HamlagError):
    """A construction recipe is syntactically or semantically invalid."""


class ExhaustedAttempts(HamlagError):
    """Random instance generation hit its rejection limit."""


class ParseError(HamlagError):
    """An instance file could not be read at all."""


class SchemaError(HamlagError):
    """An instance file is readable but violates the schema."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{message} (at {location})" if location else message)
