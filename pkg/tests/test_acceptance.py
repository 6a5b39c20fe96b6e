"""Acceptance criteria, one PASS/FAIL line each in the terminal summary.

Tolerances are pinned here: all comparisons are exact integer equality,
and the wall-clock limits below are upper bounds on a single run.
"""

import itertools
import json
import os
import random
import subprocess
import sys
import time

import conftest
from conftest import five_edge_universe, universe_corpus

from lattice_multiverse.lattice import Cube, enumerate_order_types, induced_universe
from lattice_multiverse.regularity import (
    Classification,
    PlainTerminalFamily,
    RelaxedTerminalFamily,
    SelectionFamily,
    check_family_conditions,
    check_regressive_regularity,
)
from lattice_multiverse.search import SearchBudget, edgeless_family, maximal_theta_family, search_cube_witness
from lattice_multiverse.selection import builtin_rule_library, label_all_selection, phi_set
from lattice_multiverse.terminal import Variant, brute_force_terminal_label, label_all_terminal, terminal_set

FIXTURE_SECONDS = 1.0
ORACLE_SECONDS = 60.0
FAMILY_SECONDS = 120.0
SEARCH_SECONDS = 1.0
CORPUS_SIZE = 500
FAMILY_TRIALS = 200
TRANSFER_SAMPLES = 200

LIB = builtin_rule_library()
CORPUS = universe_corpus(CORPUS_SIZE, seed=2024, ks=(2, 3), max_vertices=12, box=4)


def record(number, title, ok, detail):
    conftest.ACCEPTANCE_LINES.append((number, f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"))
    assert ok, detail


def test_1_five_edge_fixture():
    start = time.perf_counter()
    u = five_edge_universe()
    lab = label_all_terminal(u)
    got = (lab[(5, 9)], lab[(4, 2)], lab[(10, 3)])
    tset = terminal_set(u, (5, 9))
    elapsed = time.perf_counter() - start
    ok = got == (3, 2, 3) and tset == {(3, 4), (5, 3)} and elapsed < FIXTURE_SECONDS
    record(1, "five-edge fixture", ok, f"labels={got} T(5,9)={sorted(tset)} in {elapsed:.3f}s (limit {FIXTURE_SECONDS}s)")


def test_2_oracle_equivalence():
    start = time.perf_counter()
    mismatches = checked = 0
    for u in CORPUS:
        labels = label_all_terminal(u).labels
        for z in u.vertices:
            checked += 1
            mismatches += labels[z] != brute_force_terminal_label(u, z)
    elapsed = time.perf_counter() - start
    ks = sorted({u.k for u in CORPUS})
    ok = mismatches == 0 and len(CORPUS) >= 500 and elapsed < ORACLE_SECONDS
    record(
        2, "oracle equivalence", ok,
        f"{len(CORPUS)} universes k={ks}, {checked} vertices, {mismatches} mismatches in {elapsed:.2f}s (limit {ORACLE_SECONDS}s)",
    )


def test_3_relaxed_bounds():
    rule_sets = [LIB["first"], LIB["min-report"], LIB["committee"], LIB["never"]]
    violations = checks = 0
    for u in CORPUS:
        relaxed = label_all_terminal(u, Variant.RELAXED).labels
        for z in u.vertices:
            checks += 1
            violations += not (relaxed[z] <= max(z) and (relaxed[z] == max(z)) == (u.out_degree(z) == 0))
        for rules in rule_sets:
            plain = label_all_selection(u, rules).labels
            hat = label_all_selection(u, rules, Variant.RELAXED).labels
            for x in u.vertices:
                empty = not phi_set(u, x, rules, plain)
                checks += 1
                violations += not (hat[x] <= max(x) and (hat[x] == max(x)) == empty)
    names = ", ".join(r.name for r in rule_sets)
    record(3, "relaxed bounds", violations == 0, f"{checks} checks over terminal and [{names}], {violations} violations")


def test_4_jump_free_families():
    start = time.perf_counter()
    families = [RelaxedTerminalFamily()] + [SelectionFamily(LIB[n]) for n in ("first", "min-report", "never")]
    parts, ok = [], True
    for family in families:
        rep = check_family_conditions(family, trials=FAMILY_TRIALS, seed=0, k=2)
        ok &= rep.scenarios >= FAMILY_TRIALS and rep.jump_free and rep.reflexive
        parts.append(f"{family.name}: {rep.scenarios} scenarios, {len(rep.counterexamples)} counterexamples")
    broken = check_family_conditions(PlainTerminalFamily(), trials=FAMILY_TRIALS, seed=0, k=2)
    ok &= len(broken.counterexamples) >= 1
    parts.append(f"{PlainTerminalFamily().name} (mutation): {len(broken.counterexamples)} counterexamples")
    elapsed = time.perf_counter() - start
    ok &= elapsed < FAMILY_SECONDS
    record(4, "jump-free families", ok, "; ".join(parts) + f" in {elapsed:.2f}s (limit {FAMILY_SECONDS}s)")


def test_5_regularity_bound():
    # scheduled after every other test; also sweeps every cube of the k=2 corpus members itself
    for u in CORPUS:
        if u.k != 2:
            continue
        labels = label_all_terminal(u).labels
        coords = sorted({c for v in u.vertices for c in v})
        for p in (1, 2):
            for axis in itertools.combinations(coords, p):
                if all(z in labels for z in itertools.product(axis, repeat=2)):
                    check_regressive_regularity(labels, Cube(axis, 2))
    counts = {k: len(enumerate_order_types(k)) for k in (2, 3, 4)}
    counts_ok = counts == {2: 3, 3: 13, 4: 75} and all(c < k**k for k, c in counts.items())
    verdicts = list(conftest.VERDICTS)
    bad = [v for v in verdicts if not v.satisfies_bound()]
    regular = sum(v.regressively_regular for v in verdicts)
    ok = counts_ok and not bad and len(verdicts) > 0
    record(
        5, "regularity bound", ok,
        f"{len(verdicts)} verdicts so far ({regular} regular), {len(bad)} violations; order types {counts} vs k^k",
    )


def test_6_relaxed_to_plain_transfer():
    rng = random.Random(6)
    samples = regular = violations = 0
    box = list(itertools.product(range(5), repeat=2))
    while samples < TRANSFER_SAMPLES:
        density = rng.choice([0.02, 0.05, 0.15, 0.3])
        u = induced_universe(box, lambda x, y: rng.random() < density, 2)
        pairs = [
            (label_all_terminal(u).labels, label_all_terminal(u, Variant.RELAXED).labels),
            (label_all_selection(u, LIB["first"]).labels, label_all_selection(u, LIB["first"], Variant.RELAXED).labels),
        ]
        for plain, relaxed in pairs:
            for axis in itertools.combinations(range(5), rng.choice([2, 3])):
                cube = Cube(axis, 2)
                samples += 1
                if check_regressive_regularity(relaxed, cube).regressively_regular:
                    regular += 1
                    violations += not check_regressive_regularity(plain, cube).regressively_regular
    ok = violations == 0 and samples >= TRANSFER_SAMPLES
    record(6, "relaxed-to-plain transfer", ok, f"{samples} samples, {regular} relaxed-regular, {violations} violations")


def test_7_search_sanity():
    start = time.perf_counter()
    w = search_cube_witness(edgeless_family, "terminal", SearchBudget(5, 3), k=2)
    elapsed = time.perf_counter() - start
    first_ok = w.cube.axis == (0, 1, 2) and w.significant_count == 0 and elapsed < SEARCH_SECONDS
    m = search_cube_witness(maximal_theta_family, "selection", SearchBudget(5, 2), LIB["never"], k=2)
    classes = set(m.verdict.per_type.values())
    ok = first_ok and classes == {Classification.HIGH}
    record(
        7, "search sanity", ok,
        f"edgeless E={w.cube.axis} significant={w.significant_count} in {elapsed:.3f}s (limit {SEARCH_SECONDS}s); "
        f"maximal/never E={m.cube.axis} classes={sorted(c.value for c in classes)}",
    )


def _lmv(args, cwd):
    env = dict(os.environ, LMV_SEED="11")
    proc = subprocess.run(
        [sys.executable, "-m", "lattice_multiverse.cli", *args], cwd=cwd, env=env, capture_output=True
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_8_cli_determinism(tmp_path):
    setup = [
        ["gen", "--style", "random-downward", "--box", "4", "--density", "0.3", "-o", "u.txt"],
        ["label", "u.txt", "-o", "l.txt"],
    ]
    for args in setup:
        assert _lmv(args, tmp_path)[0] == 0
    commands = {
        "gen": ["gen", "--style", "random-downward", "--box", "4", "--density", "0.3"],
        "label": ["label", "u.txt", "--variant", "relaxed"],
        "label-sel": ["label-sel", "u.txt", "--rules", "committee"],
        "rules": ["rules", "min-report"],
        "sig": ["sig", "l.txt", "--json"],
        "check-rr": ["check-rr", "l.txt", "--cube", "0..2", "--json"],
        "verify-family": ["verify-family", "--family", "terminal-plain", "--trials", "100", "--json"],
        "search-cube": ["search-cube", "--p", "2", "--max-axis", "4", "--universe", "u.txt"],
        "render": ["render", "u.txt", "--labels", "l.txt", "--svg", "out.svg"],
    }
    differing = []
    for name, args in commands.items():
        first = _lmv(args, tmp_path)
        svg = (tmp_path / "out.svg").read_bytes() if name == "render" else b""
        second = _lmv(args, tmp_path)
        if name == "render":
            first, second = first + (svg,), second + ((tmp_path / "out.svg").read_bytes(),)
        if first != second or first[0] >= 2:
            differing.append(name)
    json.loads(_lmv(commands["sig"], tmp_path)[1].decode().split("json:\n", 1)[1])
    record(
        8, "CLI determinism", not differing,
        f"{len(commands)} subcommands run twice, byte-identical except: {differing or 'none'}",
    )
