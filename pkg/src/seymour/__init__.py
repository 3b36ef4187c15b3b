"""Desk-scale workbench for the second neighborhood property in digraphs
missing disjoint stars: median orders, sedimentation, dependency digraphs,
and oracle-verified witness procedures."""

from .digraph import Digraph, Weighting, resolve_weights
from .errors import (
    ConsistencyError,
    DigonError,
    ExactBoundExceededError,
    GoodnessViolationError,
    HypothesisFailedError,
    LoopArcError,
    NotDisjointStarsError,
    NotGoodDigraphError,
    ParseError,
    SeymourError,
    UnrealizableError,
    VertexRangeError,
)
from .stars import (
    Edge,
    OrientationPlan,
    Star,
    StarDecomposition,
    canonical_stars,
    center_assignments,
    convenient_orientations,
    decompose,
    edge,
    edge_pair,
    is_convenient,
    orient_toward_centers,
)
from .dependency import (
    ComponentIndex,
    DependencyDigraph,
    GoodnessReport,
    LosingWitness,
    StrongDependencyReport,
    component_index,
    dependency_digraph,
    good_edges,
    goodness,
    is_good_digraph,
    j_of,
    loses_to,
    strong_dependency_check,
    strongly_connected_components,
)
from .orders import (
    FeedbackReport,
    MedianResult,
    OrderAnalysis,
    SedimentationTrace,
    SedOutcome,
    analyze,
    exact_median_order,
    forward_weight,
    good_median_order,
    local_median_order,
    satisfies_feedback,
    sed,
    sediment,
)
from .theorems import (
    GateResult,
    HypothesisCheck,
    OracleVerdict,
    SnpCertificate,
    THEOREM_IDS,
    THEOREMS,
    all_kings,
    check_hypotheses,
    has_snp,
    havet_thomasse_witnesses,
    is_king,
    kings_stars_witness,
    matching_two_witnesses,
    single_star_witness,
    snp_set,
    star_matching_witness,
    three_stars_two_witnesses,
    three_stars_witness,
    two_stars_two_witnesses,
    two_stars_witness,
)
from .forge import (
    FIXTURE_NAMES,
    InstanceSpec,
    SEARCH_PREDICATES,
    SearchResult,
    all_digraphs,
    all_kings_tournament,
    all_tournaments,
    build,
    delete_disjoint_stars,
    filtered_search,
    fixture,
    losing_cycle_gadget,
    random_digraph,
    random_star_deleted,
    random_tournament,
)
from .instfile import emit_instance, parse_instance
from .reporting import InstanceRecord, Report, emit_report

__version__ = "0.1.0"
