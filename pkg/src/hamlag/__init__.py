"""Exact decision procedures and topology classification for H-minimal
Lagrangian submanifolds built from intersections of real quadrics."""

__version__ = "0.1.0"

from .quadrics import (
    CanonicalBoundedForm,
    NondegeneracyReport,
    QuadricSystem,
    apply_equivalence,
    canonicalize_bounded,
    is_bounded,
    same_solution_plane,
    validate,
)
from .polytopes import (
    GenericityReport,
    PolytopePresentation,
    Vertex,
    check_generic,
    enumerate_vertices,
    face_active_sets,
    polyhedron_bounded,
    to_polytope,
    to_quadrics,
)
from .lattices import (
    DGroup,
    EmbeddingVerdict,
    FiniteAbelianGroup,
    LatticeBasis,
    SignAction,
    SublatticeComparison,
    d_group,
    delzant_check,
    embedding_criterion_quadrics,
    embedding_verdict_both,
    isotropy_group,
    sublattice,
)
from .topology import (
    SpaceForm,
    SurfaceGenus,
    TopologyReport,
    TwoQuadricForm,
    classify,
    classify_one_quadric,
    classify_polygon,
    classify_two_quadrics,
    euler_characteristic_oracle,
    polygon_genus,
)
from .sampling import (
    ResidualReport,
    SamplePoint,
    TangentFrame,
    lagrangian_residual,
    sample_points,
    tangent_frame,
    verify_lagrangian,
)
from .corpus import (
    Cube,
    Product,
    Simplex,
    VertexCut,
    build,
    delzant_corpus,
    parse_recipe,
    polygon_recipe,
    random_system,
)
