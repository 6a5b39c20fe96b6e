"""Line-oriented text formats for universes, labelings and rule sets.

Universe::

    k=2
    v 5 9
    v 3 8
    e 0 1

Vertices are written in lexicographic order and edges as 0-based index
pairs sorted by (source, target); files written by :func:`dump_universe`
parse back to the same object and re-serialize to the same bytes.
A labeling file is a universe file followed by ``l <index> <label>`` lines.
Rule files hold ``arity_cap <r>``, ``theta maximal|file`` and
``rule <arity> <guard> <selector>`` lines.  ``#`` starts a comment everywhere.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .lattice import Universe, Vertex, validate_universe
from .selection import SelectionRule, SelectionRuleSet


class FormatError(ValueError):
    pass


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def dump_universe(universe: Universe) -> str:
    out = [f"k={universe.k}"]
    out += ["v " + " ".join(map(str, v)) for v in universe.vertices]
    idx = universe.index
    out += [f"e {i} {j}" for i, j in sorted((idx[x], idx[y]) for x, y in universe.edges)]
    return "\n".join(out) + "\n"


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _parse(text: str) -> tuple[Universe, list[Vertex], list[tuple[int, int, int]]]:
    """Universe plus the vertex list in file order and any raw ``l`` records."""
    k = None
    vertices: list[Vertex] = []
    edge_idx: list[tuple[int, int, int]] = []
    label_recs: list[tuple[int, int, int]] = []
    for lineno, toks in _lines(text):
        head = toks[0]
        if head.startswith("k="):
            if k is not None:
                raise FormatError(f"line {lineno}: duplicate k= header")
            k = _int(head[2:], lineno)
        elif head == "v":
            vertices.append(tuple(_int(t, lineno) for t in toks[1:]))
        elif head == "e" and len(toks) == 3:
            edge_idx.append((lineno, _int(toks[1], lineno), _int(toks[2], lineno)))
        elif head == "l" and len(toks) == 3:
            label_recs.append((lineno, _int(toks[1], lineno), _int(toks[2], lineno)))
        else:
            raise FormatError(f"line {lineno}: unrecognized record {' '.join(toks)!r}")
    if k is None:
        raise FormatError("missing k= header")
    edges = []
    for lineno, i, j in edge_idx:
        if not (0 <= i < len(vertices) and 0 <= j < len(vertices)):
            raise FormatError(f"line {lineno}: edge index out of range")
        edges.append((vertices[i], vertices[j]))
    return validate_universe(vertices, edges, k), vertices, label_recs


def load_universe(text: str) -> Universe:
    universe, _, labels = _parse(text)
    if labels:
        raise FormatError("universe file contains label records")
    return universe


def dump_labeling(universe: Universe, labels: Mapping[Vertex, int]) -> str:
    if set(labels) != universe.vertex_set:
        raise FormatError("labeling domain differs from the universe's vertex set")
    body = "".join(f"l {i} {labels[v]}\n" for i, v in enumerate(universe.vertices))
    return dump_universe(universe) + body


def load_labeling(text: str) -> tuple[Universe, dict[Vertex, int]]:
    universe, vertices, recs = _parse(text)
    labels: dict[Vertex, int] = {}
    for lineno, i, value in recs:
        if not 0 <= i < len(vertices):
            raise FormatError(f"line {lineno}: label index out of range")
        if value < 0:
            raise FormatError(f"line {lineno}: labels are nonnegative")
        labels[vertices[i]] = value
    if set(labels) != universe.vertex_set:
        raise FormatError("labeling does not cover every vertex exactly once")
    return universe, labels


def dump_rules(rules: SelectionRuleSet) -> str:
    out = []
    if rules.name:
        out.append(f"# {rules.name}")
    out += [f"arity_cap {rules.arity_cap}", f"theta {rules.theta}"]
    out += [str(r) for r in rules.rules]
    return "\n".join(out) + "\n"


def load_rules(text: str, name: str = "") -> SelectionRuleSet:
    cap = None
    theta = "file"
    rules = []
    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "arity_cap" and len(toks) == 2:
            cap = _int(toks[1], lineno)
        elif head == "theta" and len(toks) == 2:
            theta = toks[1]
        elif head == "rule" and len(toks) >= 4:
            try:
                rules.append(SelectionRule.parse(_int(toks[1], lineno), " ".join(toks[2:-1]), toks[-1]))
            except ValueError as exc:
                raise FormatError(f"line {lineno}: {exc}") from None
        else:
            raise FormatError(f"line {lineno}: unrecognized record {' '.join(toks)!r}")
    if cap is None:
        cap = max((r.arity for r in rules), default=1)
    try:
        return SelectionRuleSet(tuple(rules), cap, theta, name)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
