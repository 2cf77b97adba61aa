"""Enumeration and sampling experiments comparing hard and soft I-MEC sizes."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .equivalence import compare_signatures, signature
from .errors import SearchSpaceTooLargeError
from .graph import Admg, InterventionSet

MAX_ENUMERATION_NODES = 4
MODES = ("random", "complete", "uniform")


def default_nodes(n: int) -> tuple:
    return tuple(f"V{k}" for k in range(1, n + 1))


def _node_tuple(n_or_nodes) -> tuple:
    if isinstance(n_or_nodes, int):
        if n_or_nodes < 0:
            raise ValueError("node count must be non-negative")
        return default_nodes(n_or_nodes)
    return tuple(n_or_nodes)


# counting -------------------------------------------------------------------


@lru_cache(maxsize=None)
def dag_count(n: int) -> int:
    """Number of labelled DAGs on ``n`` nodes (Robinson's recurrence)."""
    if n == 0:
        return 1
    return sum((-1) ** (k + 1) * math.comb(n, k) * 2 ** (k * (n - k)) * dag_count(n - k) for k in range(1, n + 1))


def admg_count(n: int) -> int:
    return dag_count(n) * 2 ** math.comb(n, 2)


@lru_cache(maxsize=None)
def _dag_masks(n: int) -> tuple:
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if _acyclic(n, edges):
            out.append(tuple(edges))
    return tuple(out)


def _acyclic(n, edges) -> bool:
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for a, b in edges:
        indeg[b] += 1
        out[a].append(b)
    ready = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == n


def enumerate_admgs(n_or_nodes) -> Iterator[Admg]:
    """Every ADMG on the given nodes exactly once.

    DAGs come in adjacency-bitmask order (acyclic masks only), each crossed
    with all bidirected subsets in binary order.
    """
    nodes = _node_tuple(n_or_nodes)
    n = len(nodes)
    if n > MAX_ENUMERATION_NODES:
        raise SearchSpaceTooLargeError(f"refusing to enumerate ADMGs on {n} > {MAX_ENUMERATION_NODES} nodes")
    pairs = list(combinations(range(n), 2))
    for dag in _dag_masks(n):
        directed = [(nodes[a], nodes[b]) for a, b in dag]
        for mask in range(1 << len(pairs)):
            bidirected = [(nodes[a], nodes[b]) for k, (a, b) in enumerate(pairs) if mask >> k & 1]
            yield Admg(nodes, directed, bidirected, check=False)


@lru_cache(maxsize=8)
def _enumeration(nodes: tuple) -> tuple:
    return tuple(enumerate_admgs(nodes))


def count_admgs(n: int) -> int:
    return sum(1 for _ in enumerate_admgs(n))


# sampling -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _dags_with_sources(n: int, k: int) -> int:
    """Labelled DAGs on ``n`` nodes with exactly ``k`` parentless nodes."""
    if k == n:
        return 1
    return math.comb(n, k) * sum(
        (2 ** k - 1) ** s * 2 ** (k * (n - k - s)) * _dags_with_sources(n - k, s) for s in range(1, n - k + 1)
    )


def _choose(weights: Sequence[int], rng) -> int:
    """Index drawn with probability proportional to exact integer ``weights``."""
    total = sum(weights)
    bits = total.bit_length()
    while True:
        r = 0
        for _ in range(0, bits, 32):
            r = (r << 32) | int(rng.integers(0, 1 << 32))
        r >>= (-bits) % 32
        if r < total:
            break
    for k, w in enumerate(weights):
        if r < w:
            return k
        r -= w
    raise AssertionError("unreachable")


def uniform_dag_edges(n: int, rng) -> list:
    """Edges of a uniformly random labelled DAG on ``range(n)``.

    Layers of parentless nodes are drawn with exact counting weights; each
    node gets a non-empty parent set in the previous layer and independent
    fair-coin edges from earlier layers.
    """
    if n == 0:
        return []
    sizes = [1 + _choose([_dags_with_sources(n, k) for k in range(1, n + 1)], rng)]
    rest = n - sizes[0]
    while rest:
        k = sizes[-1]
        w = [(2 ** k - 1) ** s * 2 ** (k * (rest - s)) * _dags_with_sources(rest, s) for s in range(1, rest + 1)]
        s = 1 + _choose(w, rng)
        sizes.append(s)
        rest -= s
    layers, start = [], 0
    for s in sizes:
        layers.append(list(range(start, start + s)))
        start += s
    edges = []
    for t in range(1, len(layers)):
        prev = layers[t - 1]
        earlier = [v for layer in layers[: t - 1] for v in layer]
        for v in layers[t]:
            while True:
                chosen = [u for u in prev if rng.random() < 0.5]
                if chosen:
                    break
            edges += [(u, v) for u in chosen]
            edges += [(u, v) for u in earlier if rng.random() < 0.5]
    label = rng.permutation(n)
    return [(int(label[a]), int(label[b])) for a, b in edges]


def sample_admg(n_or_nodes, mode: str = "random", density: float = 0.5, rng=None,
                bidirected_count: int | None = None) -> Admg:
    """Draw a random ADMG.

    ``random``: uniform node order, each forward pair directed with probability
    ``density``. ``complete``: uniform node order with every forward pair
    directed. ``uniform``: a uniformly random labelled DAG. In every mode each
    node pair then gets a bidirected edge with probability ``density``, or
    exactly ``bidirected_count`` bidirected edges are placed uniformly.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np.random.default_rng(rng)
    nodes = _node_tuple(n_or_nodes)
    n = len(nodes)
    if mode == "uniform":
        dag = uniform_dag_edges(n, rng)
    elif mode in ("random", "complete"):
        order = rng.permutation(n)
        dag = [
            (int(order[a]), int(order[b]))
            for a, b in combinations(range(n), 2)
            if mode == "complete" or rng.random() < density
        ]
    else:
        raise ValueError(f"mode must be one of {MODES}")
    pairs = list(combinations(range(n), 2))
    if bidirected_count is None:
        bi = [p for p in pairs if rng.random() < density]
    else:
        picked = rng.choice(len(pairs), size=bidirected_count, replace=False) if pairs else []
        bi = [pairs[k] for k in sorted(picked)]
    return Admg(nodes, [(nodes[a], nodes[b]) for a, b in dag], [(nodes[a], nodes[b]) for a, b in bi], check=False)


def _linear_extensions(g: Admg) -> int:
    return sum(
        all(pos[a] < pos[b] for a, b in g.directed)
        for pos in ({v: k for k, v in enumerate(p)} for p in permutations(g.nodes))
    )


def admg_probability(g: Admg, mode: str = "random", density: float = 0.5) -> float:
    """Exact probability that :func:`sample_admg` returns ``g`` (small ``n`` only)."""
    n = len(g.nodes)
    c = math.comb(n, 2)
    nb = len(g.bidirected)
    p_bi = density ** nb * (1 - density) ** (c - nb)
    nd = len(g.directed)
    if mode == "uniform":
        return p_bi / dag_count(n)
    if mode == "complete":
        return p_bi / math.factorial(n) if nd == c else 0.0
    if mode == "random":
        return _linear_extensions(g) / math.factorial(n) * density ** nd * (1 - density) ** (c - nd) * p_bi
    raise ValueError(f"mode must be one of {MODES}")


def sample_targets(nodes: Sequence, rng, k: int = 2) -> InterventionSet:
    """``k`` distinct targets drawn uniformly from the empty set and the singletons."""
    pool = [frozenset()] + [frozenset([v]) for v in nodes]
    picked = rng.choice(len(pool), size=k, replace=False)
    return InterventionSet(pool[int(p)] for p in picked)


# I-MEC size ---------------------------------------------------------------------


class SignatureCache:
    """Memo of equivalence signatures keyed by (graph, targets, regime)."""

    def __init__(self, max_entries: int = 500_000):
        self.max_entries = max_entries
        self._store: dict = {}

    def get(self, g: Admg, iset: InterventionSet, regime: str):
        key = (g, tuple(iset), regime)
        sig = self._store.get(key)
        if sig is None:
            if len(self._store) >= self.max_entries:
                self._store.clear()
            sig = self._store[key] = signature(g, iset, regime)
        return sig

    def clear(self):
        self._store.clear()


_CACHE = SignatureCache()


def _check_regime(regime):
    if regime not in ("hard", "soft"):
        raise ValueError(f"regime must be 'hard' or 'soft', not {regime!r}")


def canonical_iset(iset) -> InterventionSet:
    """Targets sorted by size then labels; equivalence verdicts do not depend on target order."""
    return InterventionSet(sorted((frozenset(t) for t in iset), key=lambda t: (len(t), sorted(map(str, t)))))


def equivalent_mask(truth: Admg, candidates: Iterable[Admg], iset, regime: str = "hard",
                    cache: SignatureCache | None = None) -> list:
    _check_regime(regime)
    cache = _CACHE if cache is None else cache
    iset = canonical_iset(iset)
    ref = cache.get(truth, iset, regime)
    return [bool(compare_signatures(ref, cache.get(c, iset, regime))) for c in candidates]


def mec_size_exhaustive(truth: Admg, iset, regime: str = "hard", cache: SignatureCache | None = None) -> int:
    """Number of ADMGs on ``truth``'s nodes (itself included) I-Markov equivalent to it."""
    nodes = tuple(truth.nodes)
    if len(nodes) > MAX_ENUMERATION_NODES:
        raise SearchSpaceTooLargeError(f"exhaustive I-MEC needs n <= {MAX_ENUMERATION_NODES}")
    return sum(equivalent_mask(truth, _enumeration(nodes), iset, regime, cache))


def hoeffding_samples(epsilon: float, delta: float, literal: bool = False) -> int:
    """Smallest ``M`` with ``exp(-2 M epsilon^2) <= delta``; ``literal`` truncates instead."""
    if not (0 < epsilon < 1 and 0 < delta < 1):
        raise ValueError("epsilon and delta must lie in (0, 1)")
    x = math.log(1 / delta) / (2 * epsilon ** 2)
    if literal:
        return max(1, math.floor(x))
    m = max(1, math.ceil(x - 1e-9))
    while math.exp(-2 * m * epsilon ** 2) > delta:
        m += 1
    return m


@dataclass(frozen=True)
class McResult:
    estimate: float
    samples: int
    epsilon: float
    delta: float
    seed: object = None
    hits: int = 0


def mec_probability_sampled(truth: Admg, iset, regime="hard", epsilon: float = 0.01, delta: float = 0.01,
                            rng=None, mode: str = "complete", density: float = 0.5,
                            samples: int | None = None, literal: bool = False,
                            bidirected_count: int | None = None, cache: SignatureCache | None = None):
    """Fraction of ``M`` sampled ADMGs equivalent to ``truth``.

    ``regime`` may be a tuple such as ``("hard", "soft")``; the regimes then
    share one candidate stream and a dict of results is returned.
    """
    regimes = (regime,) if isinstance(regime, str) else tuple(regime)
    for r in regimes:
        _check_regime(r)
    seed = rng if isinstance(rng, (int, type(None))) else None
    rng = np.random.default_rng(rng)
    m = samples if samples is not None else hoeffding_samples(epsilon, delta, literal)
    cache = _CACHE if cache is None else cache
    iset = canonical_iset(iset)
    refs = {r: cache.get(truth, iset, r) for r in regimes}
    hits = dict.fromkeys(regimes, 0)
    verdicts: dict = {}
    for _ in range(m):
        c = sample_admg(truth.nodes, mode, density, rng, bidirected_count)
        for r in regimes:
            key = (c, r)
            v = verdicts.get(key)
            if v is None:
                v = verdicts[key] = bool(compare_signatures(refs[r], cache.get(c, iset, r)))
            hits[r] += v
    out = {r: McResult(hits[r] / m, m, epsilon, delta, seed, hits[r]) for r in regimes}
    return out[regime] if isinstance(regime, str) else out


def exact_mec_probability(truth: Admg, iset, regime: str = "hard", mode: str = "uniform",
                          density: float = 0.5) -> float:
    """Probability that one :func:`sample_admg` draw is equivalent to ``truth`` (n <= 4)."""
    space = _enumeration(tuple(truth.nodes))
    mask = equivalent_mask(truth, space, iset, regime)
    return sum(admg_probability(g, mode, density) for g, hit in zip(space, mask) if hit)


# tables ---------------------------------------------------------------------------


@dataclass
class TableRow:
    table: int
    n: int
    mode: str
    density: float
    mean_hard: float
    stderr_hard: float
    mean_soft: float
    stderr_soft: float
    ratio: float
    ratio_stderr: float
    trials: int
    seed: int
    samples: int


TABLE_SETTINGS = {
    1: {"ns": (2, 3, 4), "modes": ("random", "complete"), "densities": (0.5,)},
    2: {"ns": (2, 3, 4, 5, 6), "modes": ("complete",), "densities": (0.5,)},
    3: {"ns": (3, 4, 5, 6), "modes": ("complete",), "densities": (0.9,)},
    4: {"ns": (5,), "modes": ("complete",), "densities": (0.1, 0.3, 0.5, 0.7, 0.9)},
}
DEFAULT_TRIALS = {1: 30, 2: 50, 3: 50, 4: 50}


def _stderr(xs) -> float:
    xs = np.asarray(xs, dtype=float)
    return float(xs.std(ddof=1) / math.sqrt(len(xs))) if len(xs) > 1 else 0.0


def _trial(args):
    table, n, mode, density, seed, trial, samples = args
    rng = np.random.default_rng([seed, table, n, MODES.index(mode), round(density * 1000), trial])
    nodes = default_nodes(n)
    count = round(0.45 * n * (n - 1)) if table == 3 else None
    truth = sample_admg(nodes, mode, density, rng, count)
    iset = sample_targets(nodes, rng)
    if table == 1:
        return (mec_size_exhaustive(truth, iset, "hard"), mec_size_exhaustive(truth, iset, "soft"))
    res = mec_probability_sampled(truth, iset, ("hard", "soft"), rng=rng, mode=mode, density=density,
                                  samples=samples, bidirected_count=count)
    return res["hard"].estimate, res["soft"].estimate


def run_table(table: int, trials: int | None = None, seed: int = 0, ns: Sequence[int] | None = None,
              modes: Sequence[str] | None = None, densities: Sequence[float] | None = None,
              samples: int | None = None, workers: int = 1) -> list:
    """Replay one of the four experiments; one :class:`TableRow` per setting.

    Table 1 counts I-MEC sizes exhaustively. Tables 2-4 estimate the
    probability that a sampled ADMG is equivalent to the truth, using
    ``samples`` draws per truth (default: the Hoeffding bound for 0.01/0.01).
    Trial ``t`` of a setting always uses the same random stream, whatever
    ``workers`` is.
    """
    if table not in TABLE_SETTINGS:
        raise ValueError("table must be 1, 2, 3 or 4")
    cfg = TABLE_SETTINGS[table]
    trials = DEFAULT_TRIALS[table] if trials is None else trials
    m = 0 if table == 1 else (samples if samples is not None else hoeffding_samples(0.01, 0.01))
    settings = [(n, mo, de) for n in (ns or cfg["ns"]) for mo in (modes or cfg["modes"])
                for de in (densities or cfg["densities"])]
    jobs = [(table, n, mo, de, seed, t, m) for n, mo, de in settings for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_trial, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_trial(j) for j in jobs]
    rows = []
    for k, (n, mo, de) in enumerate(settings):
        chunk = results[k * trials:(k + 1) * trials]
        hard = [h for h, _ in chunk]
        soft = [s for _, s in chunk]
        ratios = [h / s for h, s in chunk if s > 0]
        mean_soft = float(np.mean(soft))
        rows.append(TableRow(
            table, n, mo, de,
            float(np.mean(hard)), _stderr(hard), mean_soft, _stderr(soft),
            float(np.mean(hard)) / mean_soft if mean_soft else float("nan"),
            _stderr(ratios), trials, seed, m,
        ))
    return rows


def rows_to_csv(rows: Iterable[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f.name for f in fields(TableRow)])
    for r in rows:
        w.writerow([f"{v:.6g}" if isinstance(v, float) else v for v in asdict(r).values()])
    return buf.getvalue()
