"""Finite lattice multiverses: downward universes on N^k, their terminal and
selection labelings, regressive regularity over cubes, and witness search."""

from .lattice import (
    Cube,
    DanglingEdge,
    DimensionMismatch,
    DownwardViolation,
    OrderType,
    Universe,
    UniverseError,
    VertexNotInUniverse,
    cube_points,
    enumerate_order_types,
    induced_universe,
    light_cone,
    maximal_theta,
    order_type_of,
    validate_universe,
)
from .regularity import (
    Classification,
    RegularityVerdict,
    check_family_conditions,
    check_regressive_regularity,
    significant_labels,
)
from .search import CubeWitness, ExhaustionReport, SearchBudget, search_cube_witness
from .selection import (
    SelectionRule,
    SelectionRuleSet,
    adjacency,
    builtin_rule_library,
    label_all_selection,
    phi_set,
)
from .terminal import (
    Variant,
    brute_force_terminal_label,
    label_all_terminal,
    terminal_label,
    terminal_set,
)

__version__ = "0.1.0"
