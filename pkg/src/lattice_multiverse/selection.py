"""Partial selection rules and the selection labeling, plain and relaxed.

A rule never returns a value directly: its selector returns a 1-based
position ``i`` and the rule yields ``n_i``.  Whatever a rule set contains,
every defined output is therefore one of the reported inputs.

Guards and selectors come from a small closed grammar so that rule sets
can be written to and read from text files::

    guard    := "true" | "false" | "distinct" | atom ("&" atom)*
    atom     := term op term          op in < <= > >= == !=
    term     := int | n<i> | y<i>.<j> | x.<j>
    selector := <i> | argmin | argmax | median
"""

from __future__ import annotations

import itertools
import operator
import re
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .lattice import Universe, Vertex, light_cone
from .terminal import Variant

DEFAULT_ARITY_CAP = 3
ORACLE_CAP = 8

_OPS: dict[str, Callable[[int, int], bool]] = {
    "<=": operator.le,
    ">=": operator.ge,
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    ">": operator.gt,
}
_ATOM = re.compile(r"^(.+?)(<=|>=|==|!=|<|>)(.+)$")
_TERM = re.compile(r"^(?:(?P<int>\d+)|n(?P<n>\d+)|y(?P<y>\d+)\.(?P<yc>\d+)|x\.(?P<xc>\d+))$")


class RuleSyntaxError(ValueError):
    pass


class MissingLowerLabel(RuntimeError):
    """A neighbor was visited before it was labeled; the level order was broken."""


@dataclass(frozen=True)
class _Term:
    kind: str  # "int", "n", "y", "x"
    a: int = 0
    b: int = 0

    def value(self, x: Vertex, ys: Sequence[Vertex], ns: Sequence[int]) -> int:
        if self.kind == "int":
            return self.a
        if self.kind == "n":
            return ns[self.a - 1]
        if self.kind == "y":
            return ys[self.a - 1][self.b - 1]
        return x[self.a - 1]


def _parse_term(text: str, arity: int) -> _Term:
    m = _TERM.match(text)
    if not m:
        raise RuleSyntaxError(f"bad term {text!r}")
    if m["int"] is not None:
        return _Term("int", int(m["int"]))
    if m["n"] is not None:
        i = int(m["n"])
        kind, a, b = "n", i, 0
    elif m["y"] is not None:
        i, b = int(m["y"]), int(m["yc"])
        if b < 1:
            raise RuleSyntaxError(f"coordinate positions are 1-based in {text!r}")
        kind, a = "y", i
    else:
        a = int(m["xc"])
        if a < 1:
            raise RuleSyntaxError(f"coordinate positions are 1-based in {text!r}")
        return _Term("x", a)
    if not 1 <= a <= arity:
        raise RuleSyntaxError(f"{text!r} refers to position {a} of a rule with arity {arity}")
    return _Term(kind, a, b)


@dataclass(frozen=True)
class Guard:
    text: str
    atoms: tuple[tuple[_Term, str, _Term], ...] = ()
    constant: bool | None = None
    distinct: bool = False

    @property
    def uses_neighbor_coords(self) -> bool:
        return any(t.kind == "y" for lhs, _, rhs in self.atoms for t in (lhs, rhs))

    def __call__(self, x: Vertex, ys: Sequence[Vertex], ns: Sequence[int]) -> bool:
        if self.constant is not None:
            return self.constant
        if self.distinct:
            return len(set(ns)) == len(ns)
        return all(_OPS[op](lhs.value(x, ys, ns), rhs.value(x, ys, ns)) for lhs, op, rhs in self.atoms)


def parse_guard(text: str, arity: int) -> Guard:
    text = "".join(text.split())
    if text == "true":
        return Guard(text, constant=True)
    if text == "false":
        return Guard(text, constant=False)
    if text == "distinct":
        return Guard(text, distinct=True)
    atoms = []
    for part in text.split("&"):
        m = _ATOM.match(part)
        if not m:
            raise RuleSyntaxError(f"bad guard atom {part!r}")
        atoms.append((_parse_term(m[1], arity), m[2], _parse_term(m[3], arity)))
    return Guard(text, tuple(atoms))


def _select(selector: str, ns: Sequence[int]) -> int:
    """1-based position chosen by ``selector``; ties go to the lowest position."""
    if selector == "argmin":
        return min(range(len(ns)), key=lambda i: (ns[i], i)) + 1
    if selector == "argmax":
        return min(range(len(ns)), key=lambda i: (-ns[i], i)) + 1
    if selector == "median":
        order = sorted(range(len(ns)), key=lambda i: (ns[i], i))
        return order[(len(ns) - 1) // 2] + 1
    return int(selector)


@dataclass(frozen=True)
class SelectionRule:
    arity: int
    guard: Guard
    selector: str

    def __post_init__(self):
        if self.arity < 1:
            raise RuleSyntaxError("rule arity must be >= 1")
        if self.selector not in ("argmin", "argmax", "median"):
            if not self.selector.isdigit() or not 1 <= int(self.selector) <= self.arity:
                raise RuleSyntaxError(
                    f"selector {self.selector!r} is not a position in 1..{self.arity}"
                )

    @classmethod
    def parse(cls, arity: int, guard: str, selector: str) -> "SelectionRule":
        return cls(arity, parse_guard(guard, arity), selector)

    def apply(self, x: Vertex, ys: Sequence[Vertex], ns: Sequence[int]) -> int | None:
        """The selected report, or None where the rule is not defined."""
        if not self.guard(x, ys, ns):
            return None
        return ns[_select(self.selector, ns) - 1]

    def __str__(self) -> str:
        return f"rule {self.arity} {self.guard.text} {self.selector}"


@dataclass(frozen=True)
class SelectionRuleSet:
    """Rules plus the arity cap and the edge source.

    ``theta="file"`` uses the universe's own edges; ``theta="maximal"``
    treats every lower-max vertex of D as a neighbor.
    """

    rules: tuple[SelectionRule, ...] = ()
    arity_cap: int = DEFAULT_ARITY_CAP
    theta: str = "file"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.arity_cap < 1:
            raise RuleSyntaxError("arity cap must be >= 1")
        if self.theta not in ("file", "maximal"):
            raise RuleSyntaxError(f"theta must be 'file' or 'maximal', got {self.theta!r}")
        for rule in self.rules:
            if rule.arity > self.arity_cap:
                raise RuleSyntaxError(f"{rule} exceeds arity cap {self.arity_cap}")

    def with_theta(self, theta: str) -> "SelectionRuleSet":
        return SelectionRuleSet(self.rules, self.arity_cap, theta, self.name)


@dataclass(frozen=True)
class SelectionLabeling:
    universe: Universe
    rules: SelectionRuleSet
    labels: Mapping[Vertex, int]
    defined: Mapping[Vertex, bool]
    variant: Variant

    def __getitem__(self, v: Vertex) -> int:
        return self.labels[v]


def adjacency(universe: Universe, x: Vertex, theta: str = "file") -> frozenset[Vertex]:
    universe.require(x)
    if theta == "maximal":
        return light_cone(universe, x)
    return frozenset(universe.successors[x])


def phi_set(
    universe: Universe,
    x: Vertex,
    rules: SelectionRuleSet,
    lower_labels: Mapping[Vertex, int],
    neighbors: Sequence[Vertex] | None = None,
) -> frozenset[int]:
    """All defined rule outputs over ordered neighbor tuples (repeats allowed)."""
    if neighbors is None:
        neighbors = sorted(adjacency(universe, x, rules.theta))
    if not neighbors or not rules.rules:
        return frozenset()
    try:
        reports = [lower_labels[y] for y in neighbors]
    except KeyError as exc:
        raise MissingLowerLabel(f"neighbor {exc.args[0]} of {x} has no label yet") from None
    out: set[int] = set()
    for rule in rules.rules:
        if rule.guard.constant is False:
            continue
        if rule.guard.uses_neighbor_coords:
            pairs = list(zip(neighbors, reports))
            for combo in itertools.product(pairs, repeat=rule.arity):
                ys = [p[0] for p in combo]
                ns = [p[1] for p in combo]
                val = rule.apply(x, ys, ns)
                if val is not None:
                    out.add(val)
        else:
            # Without neighbor coordinates only the reported values matter, and
            # repeats make every tuple of distinct reports reachable.
            values = sorted(set(reports))
            for ns in itertools.product(values, repeat=rule.arity):
                val = rule.apply(x, (), ns)
                if val is not None:
                    out.add(val)
    return frozenset(out)


def label_all_selection(
    universe: Universe,
    rules: SelectionRuleSet,
    variant: Variant | str = Variant.PLAIN,
) -> SelectionLabeling:
    variant = Variant(variant)
    plain: dict[Vertex, int] = {}
    defined: dict[Vertex, bool] = {}
    # Φ is always built from plain labels; the relaxed variant only rewrites Φ-empty vertices.
    order = universe.by_level
    level_start = 0
    for pos, x in enumerate(order):
        if pos and max(order[pos - 1]) < max(x):
            level_start = pos
        if rules.theta == "maximal":
            neighbors = order[:level_start]
        else:
            neighbors = universe.successors[x]
        phi = phi_set(universe, x, rules, plain, neighbors)
        defined[x] = bool(phi)
        plain[x] = min(phi) if phi else min(x)
    if variant is Variant.RELAXED:
        labels = {x: plain[x] if defined[x] else max(x) for x in plain}
    else:
        labels = plain
    return SelectionLabeling(universe, rules, labels, defined, variant)


def brute_force_selection_labels(
    universe: Universe,
    rules: SelectionRuleSet,
    variant: Variant | str = Variant.PLAIN,
    cap: int = ORACLE_CAP,
) -> dict[Vertex, int]:
    """Recursive reference labeling with literal tuple enumeration at each vertex."""
    variant = Variant(variant)
    if len(universe) > cap:
        raise ValueError(f"universe has {len(universe)} vertices, oracle cap is {cap}")
    memo: dict[Vertex, int] = {}
    defined: dict[Vertex, bool] = {}

    def neighbors(x: Vertex) -> list[Vertex]:
        if rules.theta == "maximal":
            return [y for y in universe.vertices if max(y) < max(x)]
        return [y for y in universe.vertices if (x, y) in universe.edges]

    def label(x: Vertex) -> int:
        if x in memo:
            return memo[x]
        ys_all = neighbors(x)
        phi = set()
        for rule in rules.rules:
            for ys in itertools.product(ys_all, repeat=rule.arity):
                ns = [label(y) for y in ys]
                val = rule.apply(x, ys, ns)
                if val is not None:
                    assert val in ns
                    phi.add(val)
        memo[x] = min(phi) if phi else min(x)
        defined[x] = bool(phi)
        return memo[x]

    plain = {x: label(x) for x in universe.vertices}
    if variant is Variant.RELAXED:
        return {x: plain[x] if defined[x] else max(x) for x in plain}
    return plain


def _uniform(name: str, arities: Sequence[int], guard: str, selector: str, cap: int) -> SelectionRuleSet:
    rules = tuple(SelectionRule.parse(r, guard, selector) for r in arities)
    return SelectionRuleSet(rules, cap, "file", name)


def builtin_rule_library(arity_cap: int = DEFAULT_ARITY_CAP) -> dict[str, SelectionRuleSet]:
    """Named presets.

    ``committee`` has a single rule of arity ``arity_cap``: it fires only when
    every member reports a different value and picks the median report.
    """
    every = range(1, arity_cap + 1)
    return {
        "first": _uniform("first", [1], "true", "1", arity_cap),
        "min-report": _uniform("min-report", every, "true", "argmin", arity_cap),
        "max-report": _uniform("max-report", every, "true", "argmax", arity_cap),
        "committee": _uniform("committee", [arity_cap], "distinct", "median", arity_cap),
        "never": _uniform("never", [1], "false", "1", arity_cap),
    }
