"""Multi-objective facility location and committee selection.

Exact optima for the four sum/max objective combinations (plus centrum and
q-th-closest variants), simultaneous-approximation reports with proven
bounds, generators for the tight lower-bound instances, a derived-space
reduction for triangle-respecting costs, and a sequential-veto election
rule with verified distortion.
"""

from .bounds import (
    EVEN_SPLIT_BOUND,
    ODD_SPLIT_BOUND,
    SUM_OPT_GLOBAL_BOUND,
    TWO_OPT_SELECTOR_BOUND,
    even_split_envelope,
    odd_split_envelope,
    overlap_split_bound,
    pair_bound,
    scan_envelope_max,
)
from .compat import (
    DualityStats,
    OptimaCache,
    RatioReport,
    StitchPlan,
    TheoremCheck,
    best_simultaneous,
    check_theorem,
    duality_stats,
    exhaustive_best_simultaneous,
    ratio_report,
    stitch,
)
from .errors import CapExceeded, MultifacError, ParseError, ValidationError
from .families import Family, FamilySpec, generate
from .metric import (
    MetricCheck,
    MetricSpace,
    MetricViolation,
    metric_closure,
    validate_metric,
)
from .objectives import (
    COST_MAX,
    COST_MIN,
    COST_SUM,
    MAX_MAX,
    MAX_SUM,
    SUM_MAX,
    SUM_SUM,
    Aggregator,
    ClientCost,
    CostKind,
    Instance,
    ObjectiveSpec,
    Solution,
    client_cost,
    cost_q_social,
    objective_value,
    parse_objective,
    set_pair_distance,
)
from .reduction import (
    CommitteeMetric,
    TrianglePropertyResult,
    build_committee_metric,
    check_cost_triangle_property,
)
from .serialize import (
    dump_instance,
    dumps_instance,
    load_instance,
    parse_instance,
)
from .solvers import (
    Method,
    OptResult,
    count_solutions,
    enumerate_solutions,
    max_max_fast,
    optimum,
    sum_sum_fast,
)
from .voting import (
    OrdinalProfile,
    VetoTranscript,
    induced_profile,
    plurality_veto,
    realized_distortion,
    top_committee,
)

__version__ = "0.1.0"
