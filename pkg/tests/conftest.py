import itertools
import random

import pytest

import lattice_multiverse
import lattice_multiverse.cli as cli
import lattice_multiverse.regularity as regularity
import lattice_multiverse.search as search
from lattice_multiverse.lattice import induced_universe, validate_universe

FIVE_EDGES = [
    ((5, 9), (3, 8)),
    ((3, 8), (2, 6)),
    ((2, 6), (3, 4)),
    ((3, 8), (5, 3)),
    ((10, 3), (6, 5)),
]

# Every verdict produced anywhere in the session, for the bound check in test_acceptance.
VERDICTS = []
ACCEPTANCE_LINES = []


def _recording(fn):
    def wrapper(*args, **kwargs):
        verdict = fn(*args, **kwargs)
        VERDICTS.append(verdict)
        return verdict

    wrapper.__wrapped__ = fn
    return wrapper


def pytest_configure(config):
    regularity.check_regressive_regularity = _recording(regularity.check_regressive_regularity)
    for module in (search, cli, lattice_multiverse):
        module.check_regressive_regularity = regularity.check_regressive_regularity


def pytest_collection_modifyitems(session, config, items):
    # acceptance runs last, and its bound check last of all, so it sees every verdict in the session
    items.sort(key=lambda item: ("test_acceptance.py" in item.nodeid, "regularity_bound" in item.nodeid))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
    bad = [v for v in VERDICTS if not v.satisfies_bound()]
    terminalreporter.write_line(
        f"regularity bound over {len(VERDICTS)} verdicts computed this session: "
        + ("PASS" if not bad else f"FAIL ({len(bad)} violations)")
    )


def pytest_sessionfinish(session, exitstatus):
    if any(not v.satisfies_bound() for v in VERDICTS):
        session.exitstatus = 1


def five_edge_universe():
    box = list(itertools.product(range(15), repeat=2))
    return validate_universe(box, FIVE_EDGES, k=2)


@pytest.fixture
def five_edge():
    return five_edge_universe()


@pytest.fixture
def fragment():
    """Only the vertices on the quoted paths, small enough for the oracles."""
    vs = sorted({v for e in FIVE_EDGES for v in e} | {(4, 2)})
    return validate_universe(vs, FIVE_EDGES, k=2)


def random_universe(rng, k=2, max_vertices=10, box=5, density=0.35, min_vertices=1):
    pool = list(itertools.product(range(box + 1), repeat=k))
    vs = rng.sample(pool, rng.randint(min_vertices, min(max_vertices, len(pool))))
    return induced_universe(vs, lambda x, y: rng.random() < density, k)


def universe_corpus(n, seed=0, ks=(2, 3), max_vertices=12, box=4):
    rng = random.Random(seed)
    return [
        random_universe(rng, k=ks[i % len(ks)], max_vertices=max_vertices, box=box, density=rng.choice([0.2, 0.4, 0.7]))
        for i in range(n)
    ]
