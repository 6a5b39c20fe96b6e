"""Terminal paths and the terminal label function, plain and relaxed."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .lattice import Universe, Vertex

ORACLE_CAP = 14


class Variant(str, enum.Enum):
    PLAIN = "plain"
    RELAXED = "relaxed"


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class TerminalLabeling:
    universe: Universe
    labels: Mapping[Vertex, int]
    variant: Variant

    def __getitem__(self, v: Vertex) -> int:
        return self.labels[v]


def terminal_set(universe: Universe, z: Vertex) -> frozenset[Vertex]:
    """Last vertices of the terminal paths starting at z.

    Every walk is a path here, and a path is terminal exactly when it ends at
    a sink, so this is the set of sinks reachable from z (z included when z
    is itself a sink).
    """
    universe.require(z)
    succ = universe.successors
    seen = {z}
    stack = [z]
    sinks = set()
    while stack:
        v = stack.pop()
        if not succ[v]:
            sinks.add(v)
        for y in succ[v]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(sinks)


def terminal_label(universe: Universe, z: Vertex) -> int:
    ends = terminal_set(universe, z)
    return min([min(x) for x in ends] + [min(z)])


def label_all_terminal(universe: Universe, variant: Variant | str = Variant.PLAIN) -> TerminalLabeling:
    """Label every vertex in one pass over the levels, lowest max first."""
    variant = Variant(variant)
    succ = universe.successors
    # lowest min-coordinate over the sinks reachable from each vertex
    reach_min: dict[Vertex, int] = {}
    labels: dict[Vertex, int] = {}
    for v in universe.by_level:
        ys = succ[v]
        if ys:
            reach_min[v] = min(reach_min[y] for y in ys)
            labels[v] = min(reach_min[v], min(v))
        else:
            reach_min[v] = min(v)
            labels[v] = max(v) if variant is Variant.RELAXED else min(v)
    return TerminalLabeling(universe, labels, variant)


def brute_force_terminal_label(universe: Universe, z: Vertex, cap: int = ORACLE_CAP) -> int:
    """Literal reading of the definition: grow every path from z, keep the terminal ones."""
    if len(universe) > cap:
        raise OracleCapExceeded(f"universe has {len(universe)} vertices, oracle cap is {cap}")
    universe.require(z)
    edges = universe.edges
    vertices = universe.vertices
    ends = []
    stack = [(z,)]
    while stack:
        path = stack.pop()
        extensions = [path + (w,) for w in vertices if w not in path and (path[-1], w) in edges]
        if extensions:
            stack.extend(extensions)
        else:
            ends.append(path[-1])
    return min({min(x) for x in ends} | {min(z)})
