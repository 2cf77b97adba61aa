import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from hardimec import Admg, InterventionSet, parse_admg
from hardimec.experiments import enumerate_admgs

ACCEPTANCE: dict = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")


D1_TEXT = "X -> Z\nZ -> Y\nZ <-> Y\n"
D2_TEXT = D1_TEXT + "X -> Y\n"
FIG6_TEXT = "X1 -> X2\nX2 -> X3\nX4 -> X3\nX5 -> X4\nX2 <-> X3\nX4 <-> X3\n"


@pytest.fixture
def d1():
    return parse_admg(D1_TEXT)


@pytest.fixture
def d2():
    return parse_admg(D2_TEXT)


@pytest.fixture
def fig6():
    return parse_admg(FIG6_TEXT)


THREE = ("A", "B", "C")


@pytest.fixture(scope="session")
def all3():
    return list(enumerate_admgs(THREE))


def atomic_targets(nodes):
    return [frozenset()] + [frozenset([v]) for v in nodes]


def target_pairs(nodes, ordered=True):
    pick = itertools.permutations if ordered else itertools.combinations
    return [InterventionSet(p) for p in pick(atomic_targets(nodes), 2)]


@st.composite
def admgs(draw, min_nodes=1, max_nodes=5):
    n = draw(st.integers(min_nodes, max_nodes))
    nodes = [f"V{k}" for k in range(n)]
    order = draw(st.permutations(nodes))
    pairs = list(itertools.combinations(range(n), 2))
    directed = [(order[a], order[b]) for a, b in pairs if draw(st.booleans())]
    bidirected = [(nodes[a], nodes[b]) for a, b in pairs if draw(st.booleans())]
    return Admg(nodes, directed, bidirected)


@st.composite
def admg_and_targets(draw, max_nodes=5, k=2, atomic=False):
    g = draw(admgs(1 if not atomic else 1, max_nodes))
    if atomic:
        pool = atomic_targets(g.nodes)
        if len(pool) < k:
            k = len(pool)
        idx = draw(st.lists(st.integers(0, len(pool) - 1), min_size=k, max_size=k, unique=True))
        return g, InterventionSet(pool[i] for i in idx)
    targets = draw(st.lists(st.frozensets(st.sampled_from(g.nodes)), min_size=k, max_size=k, unique=True))
    return g, InterventionSet(targets)


def random_admg(rng, n, p=0.5):
    order = rng.permutation(n)
    nodes = [f"V{k}" for k in range(n)]
    directed = [(nodes[order[a]], nodes[order[b]]) for a, b in itertools.combinations(range(n), 2) if rng.random() < p]
    bidirected = [(nodes[a], nodes[b]) for a, b in itertools.combinations(range(n), 2) if rng.random() < p]
    return Admg(nodes, directed, bidirected)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
