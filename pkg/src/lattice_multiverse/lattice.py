"""Vertices, induced universes, cubes and order types on the lattice N^k.

A vertex is a plain tuple of nonnegative ints.  Every edge must strictly
decrease the maximum coordinate, which makes every universe acyclic and
lets "sort by max" serve as a topological order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

Vertex = tuple[int, ...]
EdgePredicate = Callable[[Vertex, Vertex], bool]

# |E|^k and the number of weak orders blow up quickly; exhaustive helpers refuse beyond this.
MAX_EXHAUSTIVE_K = 4


class UniverseError(ValueError):
    """Raised when raw input does not describe a valid induced universe."""


class DimensionMismatch(UniverseError):
    pass


class DownwardViolation(UniverseError):
    pass


class DanglingEdge(UniverseError):
    pass


class InvalidVertex(UniverseError):
    pass


class VertexNotInUniverse(KeyError):
    pass


def vertex_key(v: Vertex) -> tuple[int, Vertex]:
    """Sort key putting lower levels (smaller max) first, lexicographic within a level."""
    return (max(v), v)


@dataclass(frozen=True)
class Universe:
    """A finite vertex set D together with its induced, downward edge set.

    Build instances through :func:`validate_universe` or :func:`induced_universe`;
    the constructor trusts its arguments.
    """

    k: int
    vertices: tuple[Vertex, ...]
    edges: frozenset[tuple[Vertex, Vertex]] = field(default_factory=frozenset)

    @cached_property
    def vertex_set(self) -> frozenset[Vertex]:
        return frozenset(self.vertices)

    @cached_property
    def index(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def successors(self) -> dict[Vertex, tuple[Vertex, ...]]:
        out: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for x, y in self.edges:
            out[x].append(y)
        return {v: tuple(sorted(ys)) for v, ys in out.items()}

    @cached_property
    def by_level(self) -> tuple[Vertex, ...]:
        """Vertices in ascending max(.) order: every edge points to an earlier entry."""
        return tuple(sorted(self.vertices, key=vertex_key))

    def __contains__(self, v: object) -> bool:
        return v in self.vertex_set

    def __len__(self) -> int:
        return len(self.vertices)

    def out_degree(self, v: Vertex) -> int:
        return len(self.successors[v])

    def sorted_edges(self) -> list[tuple[Vertex, Vertex]]:
        return sorted(self.edges)

    def require(self, v: Vertex) -> None:
        if v not in self.vertex_set:
            raise VertexNotInUniverse(v)


def _check_vertex(raw: Iterable[int], k: int) -> Vertex:
    v = tuple(raw)
    if len(v) != k:
        raise DimensionMismatch(f"vertex {v} has {len(v)} coordinates, expected k={k}")
    for c in v:
        if isinstance(c, bool) or not isinstance(c, int):
            raise InvalidVertex(f"vertex {v} has a non-integer coordinate")
        if c < 0:
            raise InvalidVertex(f"vertex {v} has a negative coordinate")
    return v


def validate_universe(
    vertices: Iterable[Sequence[int]],
    edges: Iterable[tuple[Sequence[int], Sequence[int]]] = (),
    k: int = 2,
) -> Universe:
    """Validate raw vertex and edge lists and return a canonical :class:`Universe`.

    Edges whose endpoints are not listed are rejected, never dropped.
    Duplicate edges collapse (the edge set has set semantics).
    """
    if k < 2:
        raise DimensionMismatch(f"ambient dimension must be >= 2, got k={k}")
    vs: list[Vertex] = [_check_vertex(v, k) for v in vertices]
    vset = set(vs)
    if len(vset) != len(vs):
        raise UniverseError("duplicate vertex in vertex list")
    es: set[tuple[Vertex, Vertex]] = set()
    for src, dst in edges:
        x, y = _check_vertex(src, k), _check_vertex(dst, k)
        if x not in vset or y not in vset:
            raise DanglingEdge(f"edge {x}->{y} has an endpoint outside the vertex list")
        if max(x) <= max(y):
            raise DownwardViolation(
                f"edge {x}->{y}: max(source)={max(x)} is not greater than max(target)={max(y)}"
            )
        es.add((x, y))
    return Universe(k, tuple(sorted(vset)), frozenset(es))


def maximal_theta(x: Vertex, y: Vertex) -> bool:
    """The largest downward edge set: every pair that decreases max."""
    return max(x) > max(y)


def no_edges(x: Vertex, y: Vertex) -> bool:
    return False


def induced_universe(vertices: Iterable[Sequence[int]], theta: EdgePredicate, k: int) -> Universe:
    """Restrict the edge predicate ``theta`` of an infinite graph on N^k to ``vertices``.

    Only pairs with max(x) > max(y) are offered to ``theta``; the predicate
    therefore cannot produce a non-downward edge.
    """
    vs = sorted({_check_vertex(v, k) for v in vertices}, key=vertex_key)
    edges = []
    for i, x in enumerate(vs):
        mx = max(x)
        for y in vs[:i]:
            if max(y) < mx and theta(x, y):
                edges.append((x, y))
    return validate_universe(vs, edges, k)


def light_cone(universe: Universe, x: Vertex) -> frozenset[Vertex]:
    """Members of the universe strictly below x in max; x itself need not belong."""
    mx = max(x)
    return frozenset(z for z in universe.vertices if max(z) < mx)


def subuniverse(universe: Universe, keep: Iterable[Vertex]) -> Universe:
    """Vertex-induced subgraph of an existing universe."""
    ks = frozenset(keep)
    edges = frozenset((x, y) for x, y in universe.edges if x in ks and y in ks)
    return Universe(universe.k, tuple(sorted(v for v in universe.vertices if v in ks)), edges)


@dataclass(frozen=True)
class Cube:
    axis: tuple[int, ...]
    k: int

    def __post_init__(self):
        axis = tuple(sorted(set(self.axis)))
        if not axis:
            raise ValueError("cube axis must be nonempty")
        if any(a < 0 for a in axis):
            raise ValueError("cube axis must contain nonnegative integers")
        if self.k < 1:
            raise ValueError("cube dimension must be positive")
        object.__setattr__(self, "axis", axis)

    @property
    def p(self) -> int:
        return len(self.axis)

    @property
    def min(self) -> int:
        return self.axis[0]


def cube_points(cube: Cube) -> list[Vertex]:
    """All |E|^k points of E^k in lexicographic order."""
    return list(itertools.product(cube.axis, repeat=cube.k))


@dataclass(frozen=True, order=True)
class OrderType:
    """Comparison pattern of a k-tuple, stored as its dense rank vector.

    ``(5, 9)`` and ``(2, 6)`` both have ranks ``(0, 1)``; ``(7, 7)`` has ``(0, 0)``.
    Pair sets use 1-based coordinate positions.
    """

    ranks: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.ranks)

    @property
    def strict_pairs(self) -> frozenset[tuple[int, int]]:
        r = self.ranks
        return frozenset(
            (i + 1, j + 1) for i in range(len(r)) for j in range(len(r)) if r[i] < r[j]
        )

    @property
    def equal_pairs(self) -> frozenset[tuple[int, int]]:
        r = self.ranks
        return frozenset(
            (i + 1, j + 1) for i in range(len(r)) for j in range(len(r)) if r[i] == r[j]
        )

    def __str__(self) -> str:
        # (0, 1, 0) -> "x1=x3<x2"
        groups: dict[int, list[str]] = {}
        for i, r in enumerate(self.ranks):
            groups.setdefault(r, []).append(f"x{i + 1}")
        return "<".join("=".join(groups[r]) for r in sorted(groups))


def order_type_of(v: Sequence[int]) -> OrderType:
    distinct = sorted(set(v))
    rank = {c: i for i, c in enumerate(distinct)}
    return OrderType(tuple(rank[c] for c in v))


def _weak_orders(k: int) -> Iterable[tuple[int, ...]]:
    # A rank vector is a weak order iff its values are exactly 0..m-1 for some m.
    for ranks in itertools.product(range(k), repeat=k):
        if set(ranks) == set(range(max(ranks) + 1)):
            yield ranks


def enumerate_order_types(k: int, cap: int = MAX_EXHAUSTIVE_K) -> list[OrderType]:
    """Every realizable order type of k-tuples, sorted by rank vector.

    The counts are the ordered Bell numbers 1, 3, 13, 75, ...
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > cap:
        raise ValueError(f"k={k} exceeds the exhaustive-enumeration cap {cap}")
    return sorted(OrderType(r) for r in _weak_orders(k))

