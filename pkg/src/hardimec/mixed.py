"""Graphs with per-endpoint marks: MAGs (tail/arrow) and PAGs (tail/arrow/circle)."""
from __future__ import annotations

from typing import Hashable, Iterable

from .errors import GraphError, ParseError, SelfLoopError, UnknownNodeError
from .marks import Mark
from .nodes import parse_label

TAIL, ARROW, CIRCLE = Mark.TAIL, Mark.ARROW, Mark.CIRCLE

_LEFT = {TAIL: "-", CIRCLE: "o", ARROW: "<"}
_RIGHT = {TAIL: "-", CIRCLE: "o", ARROW: ">"}
_LEFT_INV = {v: k for k, v in _LEFT.items()}
_RIGHT_INV = {v: k for k, v in _RIGHT.items()}


class MixedGraph:
    """At most one edge per node pair, each endpoint carrying a :class:`Mark`.

    ``mark(u, v)`` is the mark at ``v`` on the edge between ``u`` and ``v``.
    """

    def __init__(self, nodes: Iterable[Hashable] = (), edges: Iterable[tuple] = ()):
        self.nodes = tuple(dict.fromkeys(nodes))
        self.index = {v: k for k, v in enumerate(self.nodes)}
        self._adj: dict = {v: {} for v in self.nodes}
        for e in edges:
            self.add_edge(*e)

    # construction -------------------------------------------------------------

    def _known(self, v):
        if v not in self._adj:
            raise UnknownNodeError(v)

    def add_edge(self, a, b, mark_a: Mark = TAIL, mark_b: Mark = ARROW) -> None:
        """Add the edge ``a mark_a-mark_b b``; the defaults give ``a → b``."""
        self._known(a)
        self._known(b)
        if a == b:
            raise SelfLoopError(a)
        if b in self._adj[a]:
            raise GraphError(f"{a} and {b} are already adjacent")
        self._adj[a][b] = mark_b
        self._adj[b][a] = mark_a

    def set_edge(self, a, b, mark_a: Mark, mark_b: Mark) -> None:
        self._known(a)
        self._known(b)
        if a == b:
            raise SelfLoopError(a)
        self._adj[a][b] = mark_b
        self._adj[b][a] = mark_a

    def remove_edge(self, a, b) -> None:
        del self._adj[a][b]
        del self._adj[b][a]

    def add_node(self, v) -> None:
        if v not in self._adj:
            self.nodes += (v,)
            self.index[v] = len(self.nodes) - 1
            self._adj[v] = {}

    def copy(self) -> "MixedGraph":
        g = MixedGraph(self.nodes)
        g._adj = {v: dict(nbrs) for v, nbrs in self._adj.items()}
        return g

    def induced(self, vs: Iterable) -> "MixedGraph":
        keep = set(vs)
        g = MixedGraph([v for v in self.nodes if v in keep])
        for a, b, ma, mb in self.edges():
            if a in keep and b in keep:
                g.add_edge(a, b, ma, mb)
        return g

    def relabel(self, mapping) -> "MixedGraph":
        f = mapping.__getitem__ if isinstance(mapping, dict) else mapping
        g = MixedGraph([f(v) for v in self.nodes])
        for a, b, ma, mb in self.edges():
            g.add_edge(f(a), f(b), ma, mb)
        return g

    # queries --------------------------------------------------------------------

    def is_adjacent(self, a, b) -> bool:
        return b in self._adj[a]

    def mark(self, u, v) -> Mark:
        return self._adj[u][v]

    def set_mark(self, u, v, m: Mark) -> None:
        if v not in self._adj[u]:
            raise GraphError(f"{u} and {v} are not adjacent")
        self._adj[u][v] = m

    def neighbors(self, v) -> list:
        return sorted(self._adj[v], key=self.index.__getitem__)

    def is_directed(self, u, v) -> bool:
        """``u → v``."""
        nb = self._adj[u]
        return v in nb and nb[v] is ARROW and self._adj[v][u] is TAIL

    def is_bidirected(self, u, v) -> bool:
        nb = self._adj[u]
        return v in nb and nb[v] is ARROW and self._adj[v][u] is ARROW

    def into(self, u, v) -> bool:
        """``u *→ v``."""
        nb = self._adj[u]
        return v in nb and nb[v] is ARROW

    @property
    def parents(self) -> dict:
        return {v: frozenset(u for u, m in self._adj[v].items() if m is TAIL and self._adj[u][v] is ARROW)
                for v in self.nodes}

    @property
    def edge_view(self) -> dict:
        return {v: tuple((u, self._adj[u][v], m) for u, m in sorted(
            self._adj[v].items(), key=lambda t: self.index[t[0]])) for v in self.nodes}

    def edges(self) -> list:
        """Edges as ``(a, b, mark_at_a, mark_at_b)`` with ``a`` before ``b`` in node order."""
        out = []
        for a in self.nodes:
            ia = self.index[a]
            for b, mb in self._adj[a].items():
                if self.index[b] > ia:
                    out.append((a, b, self._adj[b][a], mb))
        out.sort(key=lambda e: (self.index[e[0]], self.index[e[1]]))
        return out

    def skeleton(self) -> frozenset:
        return frozenset(frozenset((a, b)) for a, b, _, _ in self.edges())

    def marks(self) -> dict:
        return {(u, v): m for u, nb in self._adj.items() for v, m in nb.items()}

    def circles(self) -> int:
        return sum(m is CIRCLE for nb in self._adj.values() for m in nb.values())

    def sorted(self, vs: Iterable) -> list:
        return sorted(vs, key=self.index.__getitem__)

    def check_nodes(self, vs: Iterable) -> frozenset:
        vs = frozenset(vs)
        for v in vs:
            self._known(v)
        return vs

    def ancestors(self, s: Iterable) -> frozenset:
        from .graph import ancestors

        return ancestors(self, s)

    def __eq__(self, other):
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return set(self.nodes) == set(other.nodes) and self.marks() == other.marks()

    __hash__ = None

    def __repr__(self):
        return f"MixedGraph({format_mixed(self, declare=False)!r})"

    def __str__(self):
        return format_mixed(self)


def edge_token(ma: Mark, mb: Mark) -> str:
    return _LEFT[ma] + "-" + _RIGHT[mb]


def _reads_forward(ma: Mark, mb: Mark) -> bool:
    return not ((ma is ARROW and mb is not ARROW) or (ma is CIRCLE and mb is TAIL))


def format_mixed(g: MixedGraph, declare: bool = True) -> str:
    """Edges in canonical pair order, each written so that arrowheads point right."""
    lines = [f"node {v}" for v in g.nodes] if declare else []
    for a, b, ma, mb in g.edges():
        if not _reads_forward(ma, mb):
            a, b, ma, mb = b, a, mb, ma
        lines.append(f"{a} {edge_token(ma, mb)} {b}")
    return "\n".join(lines) + ("\n" if lines and declare else "")


def parse_mixed(text: str) -> MixedGraph:
    """Parse the mark-explicit format (``a --> b``, ``a o-> b``, ``a <-> b`` ...)."""
    nodes, edges = [], []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "node" and len(toks) == 2:
            nodes.append(parse_label(toks[1]))
            continue
        op = toks[1] if len(toks) == 3 else ""
        if len(op) != 3 or op[1] != "-" or op[0] not in _LEFT_INV or op[2] not in _RIGHT_INV:
            raise ParseError(f"cannot parse {line!r}", no)
        a, b = parse_label(toks[0]), parse_label(toks[2])
        nodes += [a, b]
        edges.append((a, b, _LEFT_INV[op[0]], _RIGHT_INV[op[2]]))
    return MixedGraph(nodes, edges)
