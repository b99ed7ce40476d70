"""Exact computations with ranges of finite nonnegative vector measures.

The range of such a measure, the union of ranges of all subsets with a fixed
measure, the intersection of the range with its shift, extreme points,
partition feasibility and purification of generator-constant transition
probabilities are all decided in exact rational arithmetic, with witnesses
that re-verify by substitution.
"""

from .rational import RatVector, Rational, format_rational, parse_rational, vec
from .measure import (
    Generator,
    GeneratorKind,
    MeasureSpec,
    SubsetWitness,
    ValidationReport,
    atom,
    dump_spec,
    is_atomless,
    load_spec,
    measure_of,
    segment,
    spec_from_json,
    spec_to_json,
    total_measure,
    validate,
)
from .linprog import (
    EnumerationLimitError,
    FarkasCertificate,
    FeasibilityProgram,
    FeasibilityResult,
    InfeasibleError,
    OptimizeResult,
    UnboundedError,
    coordinate_range,
    make_program,
    optimize,
    solve_feasibility,
    witness_satisfies,
)
from .geometry import Polygon2D, intersect_convex
from .ranges import (
    ExtremeReport,
    SupportResult,
    enumerate_atomic_range,
    is_extreme_point,
    range_contains,
    support_argmax,
    zonogon_vertices,
)
from .subrange import (
    MaximalSubsetResult,
    QSetResult,
    SubrangeResult,
    ThreeCellWitness,
    enumerate_measure_p_subsets,
    enumerate_qset_atomic,
    enumerate_subrange_atomic,
    maximal_subset_search,
    qset_contains,
    qset_polygon,
    reflect,
    subrange_contains,
)
from .partition import (
    NecessaryConditionReport,
    PartitionWitness,
    PurificationResult,
    TargetFamily,
    TransitionTable,
    check_necessary_condition,
    partition_feasible,
    purify,
)

__version__ = "0.1.0"
