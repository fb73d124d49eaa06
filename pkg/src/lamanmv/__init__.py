"""Exact mixed-volume bounds for planar embeddings of rigid frameworks.

The library decides the Laman property, builds the distance and
substituted polynomial systems of a framework, computes mixed volumes of
their Newton polytopes with exact rational arithmetic and LP-certified
mixed cells, and enumerates real embeddings of degree-2-constructible
frameworks to show when the bounds are attained.
"""

from .embeddings import Embedding, enumerate_h1, tight_lengths, verify_embedding
from .errors import (
    CapabilityError,
    DegenerateInputError,
    InputError,
    InternalError,
    LamanMVError,
    NonGenericLiftingError,
    SequenceError,
)
from .graphs import (
    HENNEBERG_I,
    HENNEBERG_II,
    Framework,
    Graph,
    HennebergDecomposition,
    HennebergSequence,
    Orientation,
    StepI,
    StepII,
    all_laman_graphs,
    check_laman,
    classify,
    desargues_graph,
    henneberg_apply,
    henneberg_decompose,
    is_isomorphic,
    k33_graph,
    laman_oracle,
    orient_two_in,
    random_henneberg_sequence,
    relabel_with_base,
    triangle,
)
from .linprog import LinearProgram, LPOutcome, feasible, solve
from .mixedvol import (
    Lifting,
    MixedCellRecord,
    MVResult,
    certify_general_bound,
    enumerate_mixed_cells,
    full_subdivision_2d,
    is_mixed_cell,
    mixed_volume,
    mv_for_graph,
    mv_inclusion_exclusion,
    random_lifting,
    separation_split,
)
from .polysys import (
    FORM_SOE,
    FORM_SUBSOE,
    Constants,
    GaussianRational,
    Polynomial,
    PolySystem,
    bezout,
    build_soe,
    build_subsoe,
    evaluate,
    face_system,
    newton_polytopes,
    witness_check,
)
from .polytopes import (
    EdgeCell,
    RationalPolytope,
    edge_matrix_det,
    hull_vertices,
    is_edge,
    minkowski_sum,
    volume_exact,
)
from .reporting import Report, borcea_streinu_bound, build_report, parse_graph_file

__version__ = "0.1.0"
