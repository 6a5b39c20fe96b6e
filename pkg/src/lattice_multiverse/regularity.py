"""Significant labels, regressive regularity over cubes, and sampled checks
of the full / reflexive / jump-free conditions for labeling families."""

from __future__ import annotations

import enum
import hashlib
import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .lattice import (
    Cube,
    EdgePredicate,
    OrderType,
    Universe,
    Vertex,
    cube_points,
    enumerate_order_types,
    induced_universe,
    light_cone,
    maximal_theta,
    order_type_of,
    vertex_key,
)
from .selection import SelectionRuleSet, label_all_selection
from .terminal import Variant, label_all_terminal


class ScopeNotInDomain(KeyError):
    pass


class CubeNotInDomain(KeyError):
    pass


class ScenarioGenerationExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class SignificantLabelReport:
    scope: frozenset[Vertex]
    vertices: frozenset[Vertex]
    labels: frozenset[int]


def significant_labels(labels: Mapping[Vertex, int], scope: Iterable[Vertex] | None = None) -> SignificantLabelReport:
    scope = frozenset(labels if scope is None else scope)
    missing = scope - set(labels)
    if missing:
        raise ScopeNotInDomain(f"{len(missing)} scope vertices are unlabeled, e.g. {min(missing)}")
    sig = frozenset(z for z in scope if labels[z] < min(z))
    return SignificantLabelReport(scope, sig, frozenset(labels[z] for z in sig))


class Classification(str, enum.Enum):
    HIGH = "HIGH"
    CONSTANT_LOW = "CONSTANT-LOW"
    NEITHER = "NEITHER"


@dataclass(frozen=True)
class RegularityVerdict:
    cube: Cube
    per_type: dict[OrderType, Classification]
    # For NEITHER types: a point below its own min, paired with a point whose label differs
    # from it (or with itself when the class is constant but not below min(E)).
    witnesses: dict[OrderType, tuple[Vertex, Vertex]]
    significant: frozenset[int]
    complete: bool = True

    @property
    def regressively_regular(self) -> bool:
        return self.complete and all(c is not Classification.NEITHER for c in self.per_type.values())

    def first_failure(self) -> tuple[OrderType, tuple[Vertex, Vertex]] | None:
        for t, c in self.per_type.items():
            if c is Classification.NEITHER:
                return t, self.witnesses[t]
        return None

    def satisfies_bound(self) -> bool:
        """Regular verdicts have at most one significant label per order type."""
        if not self.regressively_regular:
            return True
        return len(self.significant) <= len(enumerate_order_types(self.cube.k))


def _classify(points: Sequence[Vertex], labels: Mapping[Vertex, int], floor: int):
    low = [z for z in points if labels[z] < min(z)]
    if not low:
        return Classification.HIGH, None
    values = {labels[z] for z in points}
    if len(values) == 1 and labels[points[0]] < floor:
        return Classification.CONSTANT_LOW, None
    a = low[0]
    b = next((z for z in points if labels[z] != labels[a]), a)
    return Classification.NEITHER, (a, b)


def check_regressive_regularity(
    labels: Mapping[Vertex, int], cube: Cube, stop_early: bool = False
) -> RegularityVerdict:
    """Classify every order type realized in E^k.

    With ``stop_early`` the scan ends at the first NEITHER type and the
    verdict is marked incomplete (it is never regular in that case).
    """
    points = cube_points(cube)
    missing = [z for z in points if z not in labels]
    if missing:
        raise CubeNotInDomain(f"{len(missing)} cube points are unlabeled, e.g. {missing[0]}")
    classes: dict[OrderType, list[Vertex]] = {}
    for z in points:
        classes.setdefault(order_type_of(z), []).append(z)
    per_type: dict[OrderType, Classification] = {}
    witnesses: dict[OrderType, tuple[Vertex, Vertex]] = {}
    complete = True
    for t in sorted(classes):
        cls, wit = _classify(classes[t], labels, cube.min)
        per_type[t] = cls
        if wit is not None:
            witnesses[t] = wit
            if stop_early:
                complete = len(per_type) == len(classes)
                break
    sig = significant_labels(labels, points).labels
    return RegularityVerdict(cube, per_type, witnesses, sig, complete)


# -- labeling families ---------------------------------------------------------


@dataclass(frozen=True)
class HashedTheta:
    """A fixed random downward edge predicate on all of N^k.

    Membership of (x, y) is a pure function of (seed, x, y), so any two
    universes built from the same instance see the same infinite graph.
    """

    seed: int
    density: float = 0.35

    def __call__(self, x: Vertex, y: Vertex) -> bool:
        if max(x) <= max(y):
            return False
        h = hashlib.blake2b(repr((self.seed, x, y)).encode(), digest_size=8).digest()
        return int.from_bytes(h, "big") / 2**64 < self.density


@dataclass(frozen=True)
class RelaxedTerminalFamily:
    name: str = "terminal-relaxed"
    theta: EdgePredicate | None = None

    def __call__(self, universe: Universe) -> dict[Vertex, int]:
        return dict(label_all_terminal(universe, Variant.RELAXED).labels)


@dataclass(frozen=True)
class PlainTerminalFamily:
    """Plain t_D offered as if it were jump-free; it is not, and serves as a mutation check."""

    name: str = "terminal-plain"
    theta: EdgePredicate | None = None

    def __call__(self, universe: Universe) -> dict[Vertex, int]:
        return dict(label_all_terminal(universe, Variant.PLAIN).labels)


@dataclass(frozen=True)
class SelectionFamily:
    rules: SelectionRuleSet
    variant: Variant = Variant.RELAXED

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))

    @property
    def name(self) -> str:
        return f"selection-{self.variant.value}[{self.rules.name or 'custom'}]"

    @property
    def theta(self) -> EdgePredicate | None:
        return maximal_theta if self.rules.theta == "maximal" else None

    def __call__(self, universe: Universe) -> dict[Vertex, int]:
        return dict(label_all_selection(universe, self.rules, self.variant).labels)


Family = Callable[[Universe], Mapping[Vertex, int]]


@dataclass(frozen=True)
class Scenario:
    a: Universe
    b: Universe
    x: Vertex
    label_a: int
    label_b: int
    cones_equal: bool

    def describe(self) -> dict:
        def pack(u: Universe) -> dict:
            return {"vertices": [list(v) for v in u.vertices], "edges": [[list(s), list(t)] for s, t in u.sorted_edges()]}

        return {"x": list(self.x), "f_A(x)": self.label_a, "f_B(x)": self.label_b, "A": pack(self.a), "B": pack(self.b)}


def _sample_box(rng: random.Random, k: int, box: int, count: int) -> list[Vertex]:
    pool = list(itertools.product(range(box + 1), repeat=k))
    return rng.sample(pool, min(count, len(pool)))


def _descendants(universe: Universe, x: Vertex) -> set[Vertex]:
    seen: set[Vertex] = set()
    stack = [x]
    while stack:
        for y in universe.successors[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def generate_scenario(
    family: Family,
    rng: random.Random,
    theta: EdgePredicate,
    k: int = 2,
    box: int = 5,
    max_vertices: int = 10,
    attempts: int = 50,
) -> tuple[Scenario, dict[Vertex, int], dict[Vertex, int]]:
    """Sample (A, B, x) meeting the jump-free preconditions.

    B comes first.  A's part below x is drawn from B's light cone of x, so
    A_x is contained in B_x by construction; A gets x and possibly a few
    extra vertices at or above x's level.  Samples whose labels disagree
    on A_x are discarded.

    The cone is thinned in one of five ways: kept whole, down-closed from a
    random seed set, one or two vertices dropped, all out-neighbors of one
    descendant of x cut away, or an independent random subset.  The cut
    mode exposes the sink/non-sink mismatch that breaks plain labelings;
    plain rejection sampling almost never produces it.
    """
    for _ in range(attempts):
        b_vertices = _sample_box(rng, k, box, rng.randint(2, max_vertices))
        b = induced_universe(b_vertices, theta, k)
        mode = rng.random()
        if 0.55 <= mode < 0.8:
            # cut every out-edge of one descendant y of x, so a non-sink of B becomes a sink of A
            apexes = [v for v in b.vertices if any(b.successors[y] for y in _descendants(b, v))]
            if not apexes:
                continue
            x = rng.choice(apexes)
            b_cone = sorted(light_cone(b, x))
            y = rng.choice([v for v in sorted(_descendants(b, x)) if b.successors[v]])
            dropped = set(b.successors[y])
            a_cone = [v for v in b_cone if v not in dropped]
        else:
            tops = sorted((v for v in b.vertices if max(v) > 0), key=vertex_key)
            if not tops:
                continue
            # favor high apexes: a bigger light cone leaves more room for A and B to differ
            x = rng.choice(tops[len(tops) // 2 :])
            b_cone = sorted(light_cone(b, x))
            if mode < 0.1:
                a_cone = list(b_cone)
            elif mode < 0.4:
                # close a random seed set downward along B's edges
                keep = {v for v in b_cone if rng.random() < 0.5}
                stack = list(keep)
                while stack:
                    for y in b.successors[stack.pop()]:
                        if y not in keep:
                            keep.add(y)
                            stack.append(y)
                a_cone = sorted(keep)
            elif mode < 0.55:
                dropped = set(rng.sample(b_cone, min(len(b_cone), rng.randint(1, 2))))
                a_cone = [v for v in b_cone if v not in dropped]
            else:
                a_cone = [v for v in b_cone if rng.random() < 0.6]
        mx = max(x)
        extras = []
        for _ in range(rng.randint(0, 2)):
            e = [rng.randint(0, box + 1) for _ in range(k)]
            e[rng.randrange(k)] = rng.randint(mx, box + 1)
            extras.append(tuple(e))
        a = induced_universe(set(a_cone) | {x} | set(extras), theta, k)
        fa, fb = family(a), family(b)
        if all(fa[y] == fb[y] for y in a_cone):
            cones_equal = len(a_cone) == len(b_cone)
            return Scenario(a, b, x, fa[x], fb[x], cones_equal), fa, fb
    raise ScenarioGenerationExhausted(f"no conforming scenario in {attempts} attempts")


@dataclass
class FamilyReport:
    family: str
    trials: int
    seed: int
    full_note: str = "FULL holds by construction: the family labels every finite vertex set"
    scenarios: int = 0
    exhausted: int = 0
    cones_equal: int = 0
    reflexive_violations: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def reflexive(self) -> bool:
        return not self.reflexive_violations

    @property
    def jump_free(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "trials": self.trials,
            "seed": self.seed,
            "full": self.full_note,
            "scenarios": self.scenarios,
            "exhausted": self.exhausted,
            "cones_equal": self.cones_equal,
            "reflexive": self.reflexive,
            "reflexive_violations": self.reflexive_violations,
            "jump_free": self.jump_free,
            "counterexamples": self.counterexamples,
        }


def _run_trial(family: Family, seed: int, trial: int, k: int, box: int, max_vertices: int, density: float):
    rng = random.Random(f"{seed}:{trial}")
    theta = getattr(family, "theta", None) or HashedTheta(rng.getrandbits(32), density)
    try:
        scenario, fa, fb = generate_scenario(family, rng, theta, k, box, max_vertices)
    except ScenarioGenerationExhausted:
        return trial, None, []
    bad = []
    for side, u, lab in (("A", scenario.a, fa), ("B", scenario.b, fb)):
        coords = {c for w in u.vertices for c in w}
        bad += [
            {"trial": trial, "domain": side, "vertex": list(v), "label": lab[v]}
            for v in u.vertices
            if lab[v] not in coords
        ]
    return trial, scenario, bad


def check_family_conditions(
    family: Family,
    trials: int = 200,
    seed: int = 0,
    k: int = 2,
    box: int = 5,
    max_vertices: int = 10,
    density: float = 0.35,
    jobs: int = 1,
) -> FamilyReport:
    """Run ``trials`` seeded jump-free scenarios and the reflexivity check on each domain.

    A family with its own ``theta`` attribute is tested on that edge set;
    otherwise each trial draws a fresh random edge predicate shared by A and B.
    """
    report = FamilyReport(getattr(family, "name", repr(family)), trials, seed)
    args = [(family, seed, t, k, box, max_vertices, density) for t in range(trials)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial, *zip(*args)))
    else:
        results = [_run_trial(*a) for a in args]
    for trial, scenario, bad in sorted(results, key=lambda r: r[0]):
        if scenario is None:
            report.exhausted += 1
            continue
        report.scenarios += 1
        report.cones_equal += scenario.cones_equal
        report.reflexive_violations += bad
        if scenario.label_a < scenario.label_b:
            report.counterexamples.append({"trial": trial, **scenario.describe()})
    return report
