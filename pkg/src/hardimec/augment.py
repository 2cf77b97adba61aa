"""Augmented pair graphs, twin and I-augmented MAGs, soft-intervention MAGs
and the brute-force I-essential graph."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .errors import GraphError, SearchSpaceTooLargeError
from .graph import Admg, InterventionPair, InterventionSet, ancestors, mutilate
from .mixed import ARROW, CIRCLE, TAIL, MixedGraph
from .nodes import BaseNode, FNode
from .projection import latent_project
from .separation import inducing_path_in

MAX_ESSENTIAL_CANDIDATES = 50_000


@dataclass(frozen=True, eq=False)
class AugmentedGraph:
    """A graph over domain-copied nodes plus the construction that produced it."""

    graph: Union[Admg, MixedGraph]
    kind: str
    targets: Union[InterventionSet, InterventionPair]
    domains: tuple

    @property
    def universe(self) -> frozenset:
        return frozenset(self.graph.nodes)

    @property
    def fnodes(self) -> list:
        return [v for v in self.graph.nodes if isinstance(v, FNode)]

    def __str__(self):
        return str(self.graph)


def _copy(v, k):
    return BaseNode(v, k)


def create_f_nodes(iset: InterventionSet, i: int) -> list:
    """``F^(i,j)`` for every other domain ``j``, ordered by ``j``."""
    iset.target(i)
    return [FNode(i, j) for j in iset.domains() if j != i]


def augmented_pair_graph(d: Admg, pair: InterventionPair) -> AugmentedGraph:
    """Two mutilated copies of ``d`` and one F-node pointing at ``I Δ J`` in both."""
    InterventionSet([pair.i]).check(d)
    InterventionSet([pair.j]).check(d)
    i, j = pair.i_index, pair.j_index
    if i == j:
        raise GraphError("an augmented pair graph needs two distinct domain indices")
    f = FNode(i, j)
    nodes, directed, bidirected = [], [], []
    for k, target in ((i, pair.i), (j, pair.j)):
        m = mutilate(d, over=target)
        nodes += [_copy(v, k) for v in d.nodes]
        directed += [(_copy(a, k), _copy(b, k)) for a, b in m.directed]
        bidirected += [(_copy(a, k), _copy(b, k)) for a, b in m.bidirected]
    nodes.append(f)
    for k in (i, j):
        directed += [(f, _copy(v, k)) for v in d.nodes if v in pair.k]
    g = Admg(nodes, directed, bidirected, check=False)
    return AugmentedGraph(g, "pair", pair, (i, j))


def twin_augmented_mag(d: Admg, pair: InterventionPair) -> AugmentedGraph:
    """MAG of the augmented pair graph with F adjacencies mirrored across domains."""
    aug = augmented_pair_graph(d, pair)
    m = latent_project(aug.graph)
    i, j = pair.i_index, pair.j_index
    f = FNode(i, j)
    for v in d.nodes:
        vi, vj = _copy(v, i), _copy(v, j)
        if m.is_adjacent(f, vi) or m.is_adjacent(f, vj):
            for w in (vi, vj):
                if not m.is_adjacent(f, w):
                    m.add_edge(f, w, TAIL, ARROW)
    return AugmentedGraph(m, "twin", pair, (i, j))


def _merge(target: MixedGraph, source: MixedGraph) -> None:
    for a, b, ma, mb in source.edges():
        if target.is_adjacent(a, b):
            if (target.mark(b, a), target.mark(a, b)) != (ma, mb):
                raise GraphError(f"inconsistent marks on {a}-{b} while taking a union")
        else:
            target.add_edge(a, b, ma, mb)


def i_augmented_mag(d: Admg, iset: Iterable, i: int, _twins: dict | None = None) -> AugmentedGraph:
    """Union of the twin MAGs' induced subgraphs on ``V^(i) ∪ {F^(i,j)}``.

    With a single target this is the projected mutilated graph and has no F-nodes.
    """
    iset = InterventionSet(iset)
    target = iset.target(i)
    iset.check(d)
    base = [_copy(v, i) for v in d.nodes]
    if len(iset) == 1:
        m = latent_project(mutilate(d, over=target)).relabel(lambda v: _copy(v, i))
        return AugmentedGraph(m, "i-augmented", iset, (i,))
    m = MixedGraph(base + create_f_nodes(iset, i))
    for j in iset.domains():
        if j == i:
            continue
        key = (min(i, j), max(i, j))
        if _twins is not None and key in _twins:
            twin = _twins[key]
        else:
            twin = twin_augmented_mag(d, iset.pair(*key)).graph
            if _twins is not None:
                _twins[key] = twin
        _merge(m, twin.induced(base + [FNode(i, j)]))
    return AugmentedGraph(m, "i-augmented", iset, (i,))


def i_augmented_tuple(d: Admg, iset: Iterable) -> list:
    iset = InterventionSet(iset)
    twins: dict = {}
    return [i_augmented_mag(d, iset, i, twins) for i in iset.domains()]


@lru_cache(maxsize=200_000)
def _cut_mag(d: Admg, target: frozenset) -> MixedGraph:
    return latent_project(mutilate(d, over=target))


@lru_cache(maxsize=200_000)
def _f_reach(d: Admg, target: frozenset, k: frozenset) -> frozenset:
    """Nodes joined to an F-node pointing at ``k`` by an inducing path in the graph cut at ``target``."""
    cut = mutilate(d, over=target)
    f = FNode(1, 2)
    h = Admg(cut.nodes + (f,), list(cut.directed) + [(f, v) for v in d.nodes if v in k], cut.bidirected,
             check=False)
    an = {v: ancestors(h, (v,)) for v in h.nodes}
    view = h.edge_view
    return frozenset(v for v in d.nodes if v in k or inducing_path_in(view, f, v, an[f] | an[v]))


def fast_i_augmented_tuple(d: Admg, iset: InterventionSet) -> list:
    """Same graphs as :func:`i_augmented_tuple` without building the two-copy graphs.

    Copies only meet at the F-node, so each domain's MAG is the projection of
    the cut graph and F adjacencies come from inducing paths inside one copy.
    """
    out = []
    for i in iset.domains():
        ti = iset.target(i)
        fs = create_f_nodes(iset, i)
        m = MixedGraph([_copy(v, i) for v in d.nodes] + fs)
        for a, b, ma, mb in _cut_mag(d, ti).edges():
            m.add_edge(_copy(a, i), _copy(b, i), ma, mb)
        for f in fs:
            tj = iset.target(f.other(i))
            k = ti ^ tj
            for v in d.sorted(_f_reach(d, ti, k) | _f_reach(d, tj, k)):
                m.add_edge(f, _copy(v, i), TAIL, ARROW)
        out.append(m)
    return out


def soft_augmented_mag(d: Admg, iset: Iterable) -> AugmentedGraph:
    """One copy of ``d`` plus an F-node per target pair pointing at its symmetric difference."""
    iset = InterventionSet(iset)
    if not iset:
        raise GraphError("need at least one target")
    iset.check(d)
    fnodes, directed = [], list(d.directed)
    for i in iset.domains():
        for j in iset.domains():
            if i < j:
                f = FNode(i, j)
                fnodes.append(f)
                directed += [(f, v) for v in d.nodes if v in iset.target(i) ^ iset.target(j)]
    g = Admg(list(d.nodes) + fnodes, directed, d.bidirected, check=False)
    return AugmentedGraph(latent_project(g), "soft", iset, tuple(iset.domains()))


def union_graph(graphs: Iterable[MixedGraph]) -> MixedGraph:
    """Endpoint-wise union: a mark shared by every graph is kept, any disagreement becomes a circle."""
    graphs = list(graphs)
    if not graphs:
        raise ValueError("union of no graphs")
    first = graphs[0]
    skel = first.skeleton()
    for g in graphs[1:]:
        if g.skeleton() != skel or set(g.nodes) != set(first.nodes):
            raise GraphError("union graph needs a common skeleton")
    out = MixedGraph(first.nodes)
    for a, b, _, _ in first.edges():
        ma = {g.mark(b, a) for g in graphs}
        mb = {g.mark(a, b) for g in graphs}
        out.add_edge(a, b, ma.pop() if len(ma) == 1 else CIRCLE, mb.pop() if len(mb) == 1 else CIRCLE)
    return out


def i_markov_class(d: Admg, iset: Iterable, search_space: Iterable[Admg] | None = None,
                   regime: str = "hard", max_candidates: int = MAX_ESSENTIAL_CANDIDATES) -> list:
    """All candidates in ``search_space`` (default: every ADMG on ``d``'s nodes) equivalent to ``d``."""
    from .experiments import MAX_ENUMERATION_NODES, enumerate_admgs, equivalent_mask

    iset = InterventionSet(iset)
    if search_space is None:
        if len(d.nodes) > MAX_ENUMERATION_NODES:
            raise SearchSpaceTooLargeError(f"enumerating ADMGs on {len(d.nodes)} nodes is refused")
        search_space = enumerate_admgs(d.nodes)
    candidates = []
    for k, c in enumerate(search_space):
        if k >= max_candidates:
            raise SearchSpaceTooLargeError(f"search space exceeds {max_candidates} candidates")
        candidates.append(c)
    return [c for c, same in zip(candidates, equivalent_mask(d, candidates, iset, regime)) if same]


def i_essential_graph(d: Admg, iset: Iterable, search_space: Iterable[Admg] | None = None,
                      max_candidates: int = MAX_ESSENTIAL_CANDIDATES) -> list:
    """Per domain, the union of the I-augmented MAGs over ``d``'s hard I-Markov class."""
    iset = InterventionSet(iset)
    members = i_markov_class(d, iset, search_space, "hard", max_candidates)
    tuples = [[a.graph for a in i_augmented_tuple(c, iset)] for c in members]
    return [union_graph(t[k] for t in tuples) for k in range(len(iset))]
