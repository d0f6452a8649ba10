"""Root lattices, Weyl groups and non-abelian H^1 for diagram automorphisms, computed exactly."""

__version__ = "0.1.0"

from .cohomology import (  # noqa: E402
    Cocycle,
    CohomologyClassSet,
    GroupAction,
    build_action,
    enumerate_cocycles,
    h1_classes,
    h1_kernel,
    is_trivial_in_GL,
    twist_character,
)
from .diagrams import (  # noqa: E402
    DiagramCollection,
    DynkinDiagram,
    NodePermutation,
    diagram_automorphisms,
    dynkaut_integrality,
    fold,
    gram_matrix,
    parse_diagram_spec,
    parse_permutation,
    permutation_matrix,
)
from .linalg import IntMatrix, Polynomial, RatMatrix, char_poly, mat_inverse, mat_mul, rational_root_multiplicity  # noqa: E402
from .suites import load_suite, verify_kernel_suite  # noqa: E402
from .weyl import (  # noqa: E402
    WeylGroup,
    contains_minus_identity,
    folding_embed,
    generate_weyl,
    involution_classes,
    reflection,
    verify_folding_iso,
)
