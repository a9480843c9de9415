"""Imprecise-probability inference with credal sets and likelihood evidence."""

from .credal import (
    CredalSet,
    Envelope,
    conjunction,
    disjunction,
    envelope_from_intervals,
    envelope_of,
    independent_product,
    maximal_family,
)
from .errors import *  # noqa: F401,F403
from .evidential import (
    ConsistencyTable,
    EvidenceSet,
    PossibilityDist,
    canonicalize,
    consistency_table,
    equivalent,
    evid_conjunction,
    evid_disjunction,
    interval_evidence,
    observe_and_frechet,
    observe_and_independent,
    possibility_measure,
    possibility_of,
)
from .frame import Frame, IntervalTable
from .fusion import (
    CombinedSet,
    ConditionalEnsemble,
    EnsembleMeasures,
    choquet_integral,
    combine,
    condition,
    conditional_intervals,
    ensemble_of,
    upper_lower_conditioning,
)
from .geometry import Polytope, contains, convex_hull, intersect

__version__ = "0.1.0"
