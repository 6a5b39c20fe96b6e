"""``lmv`` command line: generate, label, report, verify and search.

Exit codes: 0 success or witness found, 1 exhaustion / no witness /
counterexample found, 2 invalid input, 3 internal error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from pathlib import Path

from .formats import FormatError, dump_labeling, dump_rules, dump_universe, load_labeling, load_rules, load_universe
from .lattice import Cube, UniverseError, cube_points, induced_universe, maximal_theta, no_edges
from .regularity import (
    PlainTerminalFamily,
    RegularityVerdict,
    RelaxedTerminalFamily,
    SelectionFamily,
    check_family_conditions,
    check_regressive_regularity,
    significant_labels,
)
from .render import render_dot, render_svg
from .search import (
    BudgetExceeded,
    CubeWitness,
    SearchBudget,
    UnsupportedDimension,
    edgeless_family,
    maximal_theta_family,
    search_cube_witness,
)
from .selection import DEFAULT_ARITY_CAP, RuleSyntaxError, builtin_rule_library, label_all_selection
from .terminal import Variant, label_all_terminal

EXIT_OK, EXIT_NONE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


class InconsistentFiles(ValueError):
    pass


def default_seed() -> int:
    return int(os.environ.get("LMV_SEED", "0"))


def parse_axis(spec: str) -> tuple[int, ...]:
    """``"0,2,5"``, ``"0..3"`` or a mix such as ``"0..2,7"``."""
    values: set[int] = set()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            values.update(range(int(lo), int(hi) + 1))
        else:
            values.add(int(part))
    if not values:
        raise ValueError(f"empty axis spec {spec!r}")
    if min(values) < 0:
        raise ValueError(f"negative axis value in {spec!r}")
    return tuple(sorted(values))


def _fmt_v(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _load_rules_arg(spec: str, arity_cap: int, theta: str | None):
    path = Path(spec)
    if path.exists():
        rules = load_rules(path.read_text(), name=path.stem)
    else:
        library = builtin_rule_library(arity_cap)
        if spec not in library:
            raise FormatError(f"{spec!r} is neither a rule file nor a builtin ({', '.join(library)})")
        rules = library[spec]
    return rules.with_theta(theta) if theta else rules


def _verdict_lines(verdict: RegularityVerdict, prefix: str = "") -> list[str]:
    c = verdict.cube
    out = [
        f"{prefix}cube: {','.join(map(str, c.axis))}",
        f"{prefix}k: {c.k}",
        f"{prefix}regressively_regular: {'yes' if verdict.regressively_regular else 'no'}",
        f"{prefix}significant_labels: {' '.join(map(str, sorted(verdict.significant))) or '-'}",
    ]
    for t, cls in verdict.per_type.items():
        line = f"{prefix}type {t} {cls.value}"
        if t in verdict.witnesses:
            a, b = verdict.witnesses[t]
            line += f" witness {_fmt_v(a)} {_fmt_v(b)}"
        out.append(line)
    return out


def _verdict_json(verdict: RegularityVerdict) -> dict:
    return {
        "cube": list(verdict.cube.axis),
        "k": verdict.cube.k,
        "regressively_regular": verdict.regressively_regular,
        "significant_labels": sorted(verdict.significant),
        "types": {
            str(t): {
                "class": cls.value,
                **({"witness": [list(p) for p in verdict.witnesses[t]]} if t in verdict.witnesses else {}),
            }
            for t, cls in verdict.per_type.items()
        },
    }


def _with_json(lines: list[str], payload: dict | None) -> str:
    text = "\n".join(lines) + "\n"
    if payload is not None:
        text += "json:\n" + json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return text


# -- subcommands -----------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.k < 2:
        raise ValueError("k must be >= 2")
    if not 0.0 <= args.density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    box = list(itertools.product(range(args.box + 1), repeat=args.k))
    if args.style == "edgeless":
        universe = induced_universe(box, no_edges, args.k)
    elif args.style == "maximal-theta":
        universe = induced_universe(box, maximal_theta, args.k)
    elif args.style == "chain":
        diag = [(i,) * args.k for i in range(args.box + 1)]
        universe = induced_universe(diag, lambda x, y: max(x) == max(y) + 1, args.k)
    else:
        rng = random.Random(args.seed)
        # pairs visited in a fixed order so the seed alone fixes the draw
        chosen = {
            (x, y)
            for x in sorted(box)
            for y in sorted(box)
            if max(x) > max(y) and rng.random() < args.density
        }
        universe = induced_universe(box, lambda x, y: (x, y) in chosen, args.k)
    _emit(args, dump_universe(universe))
    return EXIT_OK


def cmd_label(args) -> int:
    universe = load_universe(Path(args.file).read_text())
    lab = label_all_terminal(universe, args.variant)
    _emit(args, dump_labeling(universe, lab.labels))
    return EXIT_OK


def cmd_label_sel(args) -> int:
    universe = load_universe(Path(args.file).read_text())
    rules = _load_rules_arg(args.rules, args.arity_cap, args.theta)
    lab = label_all_selection(universe, rules, args.variant)
    _emit(args, dump_labeling(universe, lab.labels))
    return EXIT_OK


def cmd_rules(args) -> int:
    rules = builtin_rule_library(args.arity_cap)[args.name]
    _emit(args, dump_rules(rules.with_theta(args.theta) if args.theta else rules))
    return EXIT_OK


def cmd_sig(args) -> int:
    universe, labels = load_labeling(Path(args.file).read_text())
    if args.cube:
        scope = cube_points(Cube(parse_axis(args.cube), universe.k))
        scope_desc = f"cube {args.cube}"
    else:
        scope = universe.vertices
        scope_desc = "all"
    rep = significant_labels(labels, scope)
    lines = [
        f"scope: {scope_desc}",
        f"scope_size: {len(rep.scope)}",
        f"significant_vertices: {len(rep.vertices)}",
        f"significant_labels: {' '.join(map(str, sorted(rep.labels))) or '-'}",
    ]
    lines += [f"vertex {_fmt_v(v)} {labels[v]}" for v in sorted(rep.vertices)]
    payload = None
    if args.json:
        payload = {
            "scope": scope_desc,
            "scope_size": len(rep.scope),
            "significant_vertices": [[list(v), labels[v]] for v in sorted(rep.vertices)],
            "significant_labels": sorted(rep.labels),
        }
    _emit(args, _with_json(lines, payload))
    return EXIT_OK


def cmd_check_rr(args) -> int:
    universe, labels = load_labeling(Path(args.file).read_text())
    verdict = check_regressive_regularity(labels, Cube(parse_axis(args.cube), universe.k))
    _emit(args, _with_json(_verdict_lines(verdict), _verdict_json(verdict) if args.json else None))
    return EXIT_OK if verdict.regressively_regular else EXIT_NONE


def cmd_verify_family(args) -> int:
    if args.family == "terminal":
        family = RelaxedTerminalFamily()
    elif args.family == "terminal-plain":
        family = PlainTerminalFamily()
    else:
        if not args.rules:
            raise ValueError("--family selection needs --rules")
        rules = _load_rules_arg(args.rules, args.arity_cap, args.theta)
        family = SelectionFamily(rules, Variant(args.variant))
    rep = check_family_conditions(
        family, trials=args.trials, seed=args.seed, k=args.k, box=args.box,
        max_vertices=args.max_vertices, jobs=args.jobs,
    )
    lines = [
        f"family: {rep.family}",
        f"trials: {rep.trials}",
        f"seed: {rep.seed}",
        f"full: {rep.full_note}",
        f"reflexive: {'yes' if rep.reflexive else 'no'} ({len(rep.reflexive_violations)} violations)",
        f"scenarios: {rep.scenarios}",
        f"scenarios_exhausted: {rep.exhausted}",
        f"scenarios_with_equal_cones: {rep.cones_equal}",
        f"jump_free: {'yes' if rep.jump_free else 'no'} ({len(rep.counterexamples)} counterexamples)",
    ]
    for ce in rep.counterexamples:
        lines.append(f"counterexample trial={ce['trial']} x={_fmt_v(ce['x'])} f_A(x)={ce['f_A(x)']} f_B(x)={ce['f_B(x)']}")
    _emit(args, _with_json(lines, rep.to_dict() if args.json else None))
    return EXIT_OK if rep.jump_free and rep.reflexive else EXIT_NONE


def cmd_search_cube(args) -> int:
    rules = None
    if args.variant == "selection":
        if not args.rules:
            raise ValueError("--variant selection needs --rules")
        rules = _load_rules_arg(args.rules, args.arity_cap, args.theta)
    if args.universe:
        family = load_universe(Path(args.universe).read_text())
    else:
        family = {"edgeless": edgeless_family, "maximal-theta": maximal_theta_family}[args.family]
    budget = SearchBudget(args.max_axis, args.p, args.max_domain, args.time_limit)
    result = search_cube_witness(family, args.variant, budget, rules, k=args.k, jobs=args.jobs)
    if isinstance(result, CubeWitness):
        text = dump_labeling(result.universe, result.labels)
        text += "# witness\n" + "".join(f"# {line}\n" for line in _verdict_lines(result.verdict))
        _emit(args, text)
        return EXIT_OK
    lines = [
        "search: exhausted",
        f"variant: {result.variant}",
        f"p: {budget.p}",
        f"max_axis: {budget.max_axis_value}",
        f"candidates: {result.candidates}",
        f"note: {result.note}",
    ]
    for f in result.failures:
        line = f"fail {','.join(map(str, f.axis))} {f.reason}"
        if f.pair:
            line += f" {f.order_type} {_fmt_v(f.pair[0])} {_fmt_v(f.pair[1])}"
        lines.append(line)
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_NONE


def cmd_render(args) -> int:
    universe, labels = _load_for_render(args.file)
    if args.labels:
        other, labels = load_labeling(Path(args.labels).read_text())
        if other != universe:
            raise InconsistentFiles("labeling file describes a different universe")
    _emit(args, render_dot(universe, labels))
    if args.svg:
        Path(args.svg).write_text(render_svg(universe, labels))
    return EXIT_OK


def _load_for_render(path: str):
    text = Path(path).read_text()
    if any(line.split("#", 1)[0].strip().startswith("l ") for line in text.splitlines()):
        return load_labeling(text)
    return load_universe(text), None


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lmv", description="Finite lattice multiverse toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("-o", "--output", help="write here instead of stdout")

    def rules_opts(sp, required=False):
        sp.add_argument("--rules", required=required, help="rule file or builtin preset name")
        sp.add_argument("--arity-cap", type=int, default=DEFAULT_ARITY_CAP, help="arity cap for builtin presets")
        sp.add_argument("--theta", choices=["file", "maximal"], help="override the rule set's edge source")

    sp = sub.add_parser("gen", help="generate a universe file")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--style", choices=["edgeless", "random-downward", "maximal-theta", "chain"], default="edgeless")
    sp.add_argument("--box", type=int, default=3, help="coordinates range over 0..box")
    sp.add_argument("--density", type=float, default=0.1)
    sp.add_argument("--seed", type=int, default=default_seed())
    out(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("label", help="terminal labeling")
    sp.add_argument("file")
    sp.add_argument("--variant", choices=["plain", "relaxed"], default="plain")
    out(sp)
    sp.set_defaults(func=cmd_label)

    sp = sub.add_parser("label-sel", help="selection labeling")
    sp.add_argument("file")
    rules_opts(sp, required=True)
    sp.add_argument("--variant", choices=["plain", "relaxed"], default="plain")
    out(sp)
    sp.set_defaults(func=cmd_label_sel)

    sp = sub.add_parser("rules", help="print a builtin rule set in file format")
    sp.add_argument("name", choices=sorted(builtin_rule_library()))
    sp.add_argument("--arity-cap", type=int, default=DEFAULT_ARITY_CAP)
    sp.add_argument("--theta", choices=["file", "maximal"])
    out(sp)
    sp.set_defaults(func=cmd_rules)

    sp = sub.add_parser("sig", help="significant labels of a labeling")
    sp.add_argument("file")
    sp.add_argument("--scope", choices=["all", "cube"], default="all")
    sp.add_argument("--cube", help="axis spec for --scope cube, e.g. 0..3 or 1,4,6")
    sp.add_argument("--json", action="store_true")
    out(sp)
    sp.set_defaults(func=cmd_sig)

    sp = sub.add_parser("check-rr", help="regressive regularity over a cube")
    sp.add_argument("file")
    sp.add_argument("--cube", required=True)
    sp.add_argument("--json", action="store_true")
    out(sp)
    sp.set_defaults(func=cmd_check_rr)

    sp = sub.add_parser("verify-family", help="sampled full/reflexive/jump-free check")
    sp.add_argument("--family", choices=["terminal", "selection", "terminal-plain"], required=True)
    rules_opts(sp)
    sp.add_argument("--variant", choices=["plain", "relaxed"], default="relaxed", help="selection variant")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=default_seed())
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--box", type=int, default=5)
    sp.add_argument("--max-vertices", type=int, default=10)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    out(sp)
    sp.set_defaults(func=cmd_verify_family)

    sp = sub.add_parser("search-cube", help="search for a regressively regular cube")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--variant", choices=["terminal", "selection"], default="terminal")
    rules_opts(sp)
    sp.add_argument("--max-axis", type=int, required=True)
    sp.add_argument("--universe", help="fixed universe file; otherwise --family builds the box")
    sp.add_argument("--family", choices=["edgeless", "maximal-theta"], default="edgeless")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--max-domain", type=int, default=100_000)
    sp.add_argument("--time-limit", type=float)
    sp.add_argument("--jobs", type=int, default=1)
    out(sp)
    sp.set_defaults(func=cmd_search_cube)

    sp = sub.add_parser("render", help="DOT (and optional SVG) drawing")
    sp.add_argument("file", help="universe or labeling file")
    sp.add_argument("--labels", help="labeling file for the same universe")
    sp.add_argument("--svg", help="also write an SVG drawing here")
    out(sp)
    sp.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sig" and args.scope == "cube" and not args.cube:
        parser.error("--scope cube needs --cube")
    if args.command == "sig" and args.cube:
        args.scope = "cube"
    try:
        return args.func(args)
    except (FormatError, UniverseError, RuleSyntaxError, InconsistentFiles, UnsupportedDimension,
            ValueError, KeyError, OSError) as exc:
        print(f"lmv: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"lmv: {exc}", file=sys.stderr)
        return EXIT_NONE
    except Exception as exc:  # noqa: BLE001
        print(f"lmv: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
