"""Critical path analysis for project networks with discrete fuzzy durations.

Two ways of computing the fuzzy set of critical path lengths are provided:
:func:`oracle_cp_set` enumerates every configuration of activity durations
and applies the extension principle to the whole network, while
:func:`fuzzy_forward_recursion` runs the classical forward pass with fuzzy
addition and fuzzy maximum.  :mod:`fuzzycpm.diagnostics` compares the two.
"""

from .diagnostics import (
    CrossConfigurationFinding,
    DiscrepancyReport,
    compare_cp_sets,
    explain_discrepancies,
)
from .errors import *  # noqa: F401,F403
from .forward import (
    FuzzySchedule,
    ProvenancePoint,
    fuzzy_forward_recursion,
    fuzzy_forward_with_provenance,
)
from .fuzzy import (
    DiscreteFuzzyQuantity,
    area,
    fuzzy_add,
    fuzzy_max,
    parse_quantity,
    validate_quantity,
)
from .kernel import BACKEND
from .network import (
    Activity,
    CrispSchedule,
    ProjectNetwork,
    build_network,
    crisp_forward_pass,
    enumerate_paths,
    extreme_lengths,
    load_network,
    topological_order,
)
from .oracle import (
    Configuration,
    configuration_belief,
    enumerate_configurations,
    oracle_cp_set,
    sample_cp_set,
)

__version__ = "0.1.0"
