"""Brute-force search for cubes E^k over which a labeling is regressively regular.

Finding nothing within a budget says nothing about the existence claims:
those range over every finite D, which no bounded enumeration covers.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

from .lattice import (
    MAX_EXHAUSTIVE_K,
    Cube,
    Universe,
    Vertex,
    cube_points,
    enumerate_order_types,
    induced_universe,
    maximal_theta,
    no_edges,
)
from .regularity import RegularityVerdict, check_regressive_regularity
from .selection import SelectionRuleSet, label_all_selection
from .terminal import Variant, label_all_terminal

NOT_A_REFUTATION = (
    "exhaustion within a finite budget is not a refutation: the existence "
    "statements quantify over all finite vertex sets D"
)

UniverseBuilder = Callable[[Sequence[Vertex], int], Universe]


class BudgetExceeded(RuntimeError):
    pass


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_axis_value: int
    p: int
    max_domain_size: int = 100_000
    time_limit: float | None = None  # seconds

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if self.max_axis_value < 0 or self.max_domain_size < 1:
            raise ValueError("budget bounds must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


@dataclass(frozen=True)
class CubeWitness:
    universe: Universe
    cube: Cube
    verdict: RegularityVerdict
    variant: str
    labels: Mapping[Vertex, int] = field(repr=False, compare=False)

    @property
    def significant_count(self) -> int:
        return len(self.verdict.significant)


@dataclass(frozen=True)
class CandidateFailure:
    axis: tuple[int, ...]
    reason: str  # "not-in-domain" or "neither"
    order_type: str = ""
    pair: tuple[Vertex, Vertex] | None = None


@dataclass(frozen=True)
class ExhaustionReport:
    budget: SearchBudget
    variant: str
    candidates: int
    failures: tuple[CandidateFailure, ...]
    note: str = NOT_A_REFUTATION


def edgeless_family(vertices: Sequence[Vertex], k: int) -> Universe:
    return induced_universe(vertices, no_edges, k)


def maximal_theta_family(vertices: Sequence[Vertex], k: int) -> Universe:
    return induced_universe(vertices, maximal_theta, k)


def label_universe(universe: Universe, variant: str, rules: SelectionRuleSet | None) -> dict[Vertex, int]:
    """Plain labels of the requested kind: terminal t_D or selection s_D."""
    if variant == "terminal":
        return dict(label_all_terminal(universe, Variant.PLAIN).labels)
    if variant == "selection":
        if rules is None:
            raise ValueError("selection search needs a rule set")
        return dict(label_all_selection(universe, rules, Variant.PLAIN).labels)
    raise ValueError(f"unknown labeling variant {variant!r}")


def _judge(axis: tuple[int, ...], k: int, labels: Mapping[Vertex, int]) -> CandidateFailure | None:
    cube = Cube(axis, k)
    if any(z not in labels for z in cube_points(cube)):
        return CandidateFailure(axis, "not-in-domain")
    verdict = check_regressive_regularity(labels, cube, stop_early=True)
    if verdict.regressively_regular:
        return None
    t, pair = verdict.first_failure()
    return CandidateFailure(axis, "neither", str(t), pair)


def _scan(chunk: list[tuple[int, ...]], k: int, labels: Mapping[Vertex, int]):
    """Judge axes in order and stop at the first success."""
    failures = []
    for axis in chunk:
        failure = _judge(axis, k, labels)
        if failure is None:
            return axis, failures
        failures.append(failure)
    return None, failures


def search_cube_witness(
    family: Union[Universe, UniverseBuilder],
    variant: str,
    budget: SearchBudget,
    rules: SelectionRuleSet | None = None,
    k: int = 2,
    jobs: int = 1,
) -> CubeWitness | ExhaustionReport:
    """Return the lexicographically first axis E with a regular labeling over E^k.

    ``family`` is either a fixed universe (then E^k must lie inside it) or a
    builder called once on the box {0..max_axis_value}^k.  Candidates are
    the p-subsets of {0..max_axis_value} in lexicographic order.
    """
    if isinstance(family, Universe):
        k = family.k
    if not 2 <= k <= MAX_EXHAUSTIVE_K:
        raise UnsupportedDimension(f"k={k} outside the supported range 2..{MAX_EXHAUSTIVE_K}")
    start = time.monotonic()
    if isinstance(family, Universe):
        universe = family
    else:
        size = (budget.max_axis_value + 1) ** k
        if size > budget.max_domain_size:
            raise BudgetExceeded(f"box has {size} vertices, budget allows {budget.max_domain_size}")
        universe = family(list(itertools.product(range(budget.max_axis_value + 1), repeat=k)), k)
    if len(universe) > budget.max_domain_size:
        raise BudgetExceeded(f"universe has {len(universe)} vertices, budget allows {budget.max_domain_size}")
    labels = label_universe(universe, variant, rules)

    axes = list(itertools.combinations(range(budget.max_axis_value + 1), budget.p))
    failures: list[CandidateFailure] = []
    found = None

    def out_of_time() -> bool:
        return budget.time_limit is not None and time.monotonic() - start > budget.time_limit

    if jobs > 1 and len(axes) > 1:
        from concurrent.futures import ProcessPoolExecutor
        from concurrent.futures import TimeoutError as FutureTimeout

        size = math.ceil(len(axes) / (jobs * 4))
        chunks = [axes[i : i + size] for i in range(0, len(axes), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_scan, c, k, labels) for c in chunks]
            # Consume in candidate order so the earliest success wins, not the first to finish.
            for fut in futures:
                remaining = None
                if budget.time_limit is not None:
                    remaining = max(budget.time_limit - (time.monotonic() - start), 0.0)
                try:
                    axis, fails = fut.result(timeout=remaining)
                except FutureTimeout:
                    for f in futures:
                        f.cancel()
                    raise BudgetExceeded(f"time limit {budget.time_limit}s reached") from None
                failures += fails
                if axis is not None:
                    found = axis
                    for f in futures:
                        f.cancel()
                    break
    else:
        for axis in axes:
            if out_of_time():
                raise BudgetExceeded(f"time limit {budget.time_limit}s reached")
            failure = _judge(axis, k, labels)
            if failure is None:
                found = axis
                break
            failures.append(failure)

    if found is None:
        return ExhaustionReport(budget, variant, len(axes), tuple(failures))
    cube = Cube(found, k)
    verdict = check_regressive_regularity(labels, cube)
    return CubeWitness(universe, cube, verdict, variant, labels)


def significant_bound(k: int) -> int:
    """Number of order types of k-tuples, the per-cube cap on significant labels."""
    return len(enumerate_order_types(k))
