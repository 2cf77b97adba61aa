"""Acyclic directed mixed graphs, intervention targets and mutilation."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain
from typing import Hashable, Iterable, Iterator

from .errors import (
    CyclicDirectedPartError,
    IndexOutOfRangeError,
    ParseError,
    SelfLoopError,
    UnknownNodeError,
    UnknownTargetError,
)
from .marks import Mark
from .nodes import parse_label


class Admg:
    """An acyclic directed mixed graph.

    Each bidirected edge stands for one hidden common cause of its endpoints.
    A node pair may carry both a directed and a bidirected edge.

    Parameters
    ----------
    nodes : iterable
        Node labels. Their order is the canonical order used everywhere.
    directed : iterable of (parent, child)
    bidirected : iterable of pairs
    check : bool
        Run :func:`validate_admg` on construction (default).
    """

    def __init__(self, nodes: Iterable[Hashable] = (), directed=(), bidirected=(), check=True):
        nodes = tuple(dict.fromkeys(nodes))
        index = {v: k for k, v in enumerate(nodes)}
        dir_edges = set()
        for a, b in directed:
            for v in (a, b):
                if v not in index:
                    raise UnknownNodeError(v)
            dir_edges.add((a, b))
        bi_edges = set()
        for a, b in bidirected:
            for v in (a, b):
                if v not in index:
                    raise UnknownNodeError(v)
            bi_edges.add((a, b) if index[a] <= index[b] else (b, a))
        self.nodes = nodes
        self.directed = frozenset(dir_edges)
        self.bidirected = frozenset(bi_edges)
        self.index = index
        if check:
            validate_admg(self)

    # value semantics -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Admg):
            return NotImplemented
        return (
            set(self.nodes) == set(other.nodes)
            and self.directed == other.directed
            and {frozenset(e) for e in self.bidirected} == {frozenset(e) for e in other.bidirected}
        )

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = self._hash = hash(
                (frozenset(self.nodes), self.directed, frozenset(frozenset(e) for e in self.bidirected))
            )
        return h

    def __repr__(self):
        return f"Admg({format_admg(self, declare=False)!r})"

    def __setattr__(self, name, value):
        if name in ("nodes", "directed", "bidirected") and name in self.__dict__:
            raise AttributeError("Admg is immutable")
        object.__setattr__(self, name, value)

    # structure ----------------------------------------------------------------

    @cached_property
    def parents(self) -> dict:
        out = {v: set() for v in self.nodes}
        for a, b in self.directed:
            out[b].add(a)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def children(self) -> dict:
        out = {v: set() for v in self.nodes}
        for a, b in self.directed:
            out[a].add(b)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def spouses(self) -> dict:
        out = {v: set() for v in self.nodes}
        for a, b in self.bidirected:
            out[a].add(b)
            out[b].add(a)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def edge_view(self) -> dict:
        """Per node, a tuple of ``(neighbour, mark_here, mark_there)``."""
        out = {v: [] for v in self.nodes}
        for a, b in self.directed:
            out[a].append((b, Mark.TAIL, Mark.ARROW))
            out[b].append((a, Mark.ARROW, Mark.TAIL))
        for a, b in self.bidirected:
            out[a].append((b, Mark.ARROW, Mark.ARROW))
            out[b].append((a, Mark.ARROW, Mark.ARROW))
        return {v: tuple(sorted(e, key=lambda t: self.index[t[0]])) for v, e in out.items()}

    def sorted(self, vs: Iterable) -> list:
        return sorted(vs, key=self.index.__getitem__)

    def check_nodes(self, vs: Iterable) -> frozenset:
        vs = frozenset(vs)
        for v in vs:
            if v not in self.index:
                raise UnknownNodeError(v)
        return vs

    def ancestors(self, s: Iterable) -> frozenset:
        return ancestors(self, s)

    def is_adjacent(self, a, b) -> bool:
        return (a, b) in self.directed or (b, a) in self.directed or b in self.spouses[a]


def validate_admg(g: Admg) -> None:
    """Raise if ``g`` has a self-loop or a directed cycle."""
    for a, b in chain(g.directed, g.bidirected):
        if a == b:
            raise SelfLoopError(a)
    children = {v: [] for v in g.nodes}
    for a, b in g.directed:
        children[a].append(b)
    for v in children:
        children[v].sort(key=g.index.__getitem__)
    state = dict.fromkeys(g.nodes, 0)
    for root in g.nodes:
        if state[root]:
            continue
        stack = [(root, iter(children[root]))]
        path = [root]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if state[w] == 1:
                    raise CyclicDirectedPartError(path[path.index(w):])
                if state[w] == 0:
                    state[w] = 1
                    path.append(w)
                    stack.append((w, iter(children[w])))
                    break
            else:
                state[v] = 2
                path.pop()
                stack.pop()


def ancestors(g, s: Iterable) -> frozenset:
    """Reflexive ancestor closure of ``s`` over directed edges."""
    s = g.check_nodes(s)
    seen = set(s)
    stack = list(s)
    parents = g.parents
    while stack:
        for p in parents[stack.pop()]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(seen)


def mutilate(g: Admg, over: Iterable = (), under: Iterable = ()) -> Admg:
    """Remove edges into ``over`` (bidirected ones included) and directed edges out of ``under``."""
    over = g.check_nodes(over)
    under = g.check_nodes(under)
    directed = [(a, b) for a, b in g.directed if b not in over and a not in under]
    bidirected = [(a, b) for a, b in g.bidirected if a not in over and b not in over]
    return Admg(g.nodes, directed, bidirected, check=False)


def relative_nonancestors(g: Admg, z: Iterable, w: Iterable, x: Iterable) -> frozenset:
    """Nodes of ``z`` that are not ancestors of ``w`` once edges into ``x`` are cut."""
    z = g.check_nodes(z)
    an = ancestors(mutilate(g, over=x), w)
    return frozenset(v for v in z if v not in an)


# intervention targets -------------------------------------------------------


class InterventionSet(tuple):
    """Ordered tuple of distinct intervention targets (frozensets).

    Domain ``k`` (1-based) corresponds to ``iset[k - 1]``.
    """

    def __new__(cls, targets: Iterable[Iterable] = ()):
        ts = tuple(frozenset(t) for t in targets)
        if len(set(ts)) != len(ts):
            raise ValueError("intervention targets must be pairwise distinct")
        return super().__new__(cls, ts)

    def __repr__(self):
        return f"InterventionSet({format_targets(self)!r})"

    def target(self, i: int) -> frozenset:
        if not 1 <= i <= len(self):
            raise IndexOutOfRangeError(f"domain index {i} outside 1..{len(self)}")
        return self[i - 1]

    def domains(self) -> range:
        return range(1, len(self) + 1)

    def pair(self, i: int, j: int) -> "InterventionPair":
        return InterventionPair(self.target(i), self.target(j), i, j)

    def check(self, g) -> None:
        for t in self:
            if not t <= set(g.nodes):
                raise UnknownTargetError(t)

    @property
    def nodes(self) -> frozenset:
        return frozenset().union(*self)


@dataclass(frozen=True)
class InterventionPair:
    """Two targets with their symmetric-difference split."""

    i: frozenset
    j: frozenset
    i_index: int = 1
    j_index: int = 2
    k: frozenset = field(init=False)
    k_i: frozenset = field(init=False)
    k_j: frozenset = field(init=False)

    def __post_init__(self):
        i, j = frozenset(self.i), frozenset(self.j)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "k", i ^ j)
        object.__setattr__(self, "k_i", i - j)
        object.__setattr__(self, "k_j", j - i)


def partition_relative(p: InterventionPair, w: Iterable):
    """Return ``(W_I, W_J, R, R_I, R_J)`` for conditioning set ``w``."""
    w = frozenset(w)
    return p.k_i & w, p.k_j & w, p.k - w, p.k_i - w, p.k_j - w


# text format ----------------------------------------------------------------


def format_admg(g: Admg, declare: bool = True) -> str:
    lines = [f"node {v}" for v in g.nodes] if declare else []
    for a, b in sorted(g.directed, key=lambda e: (g.index[e[0]], g.index[e[1]])):
        lines.append(f"{a} -> {b}")
    for a, b in sorted(g.bidirected, key=lambda e: (g.index[e[0]], g.index[e[1]])):
        lines.append(f"{a} <-> {b}")
    return "\n".join(lines) + ("\n" if lines and declare else "")


def _tokens(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def parse_admg(text: str, check: bool = True) -> Admg:
    """Parse ``node a`` / ``a -> b`` / ``a <-> b`` lines. Undeclared nodes are added in order of appearance."""
    nodes, directed, bidirected = [], [], []
    for no, toks in _tokens(text):
        if toks[0] == "node" and len(toks) == 2:
            nodes.append(parse_label(toks[1]))
            continue
        if len(toks) != 3 or toks[1] not in ("->", "<-", "<->"):
            raise ParseError(f"cannot parse {' '.join(toks)!r}", no)
        a, op, b = parse_label(toks[0]), toks[1], parse_label(toks[2])
        nodes += [a, b]
        if op == "->":
            directed.append((a, b))
        elif op == "<-":
            directed.append((b, a))
        else:
            bidirected.append((a, b))
    return Admg(nodes, directed, bidirected, check=check)


def format_targets(iset: Iterable[Iterable], order=None) -> str:
    def key(v):
        return order.index(v) if order is not None and v in order else str(v)

    return ";".join("{" + ",".join(str(v) for v in sorted(t, key=key)) + "}" for t in iset)


def parse_targets(text: str) -> InterventionSet:
    """Parse ``"{};{Z};{X,Y}"`` into an :class:`InterventionSet`."""
    targets = []
    for part in text.split(";"):
        part = part.strip()
        if not (part.startswith("{") and part.endswith("}")):
            raise ParseError(f"target {part!r} must be written as {{a,b}}")
        inner = part[1:-1].strip()
        targets.append({parse_label(v.strip()) for v in inner.split(",")} if inner else set())
    return InterventionSet(targets)
