"""Oracle-driven structure learning over hard-interventional domains.

Phase I builds complete circle graphs, Phase II removes adjacencies with
separating-set scans, Phase III applies the orientation rules to a fixpoint.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .augment import create_f_nodes
from .equivalence import discriminating_paths
from .errors import MarkConflictError
from .graph import InterventionSet
from .mixed import ARROW, CIRCLE, TAIL, MixedGraph
from .nodes import BaseNode, FNode
from .oracle import SeparationOracle

__all__ = [
    "SepSetTable",
    "create_f_nodes",
    "find_separating_sets",
    "learn",
    "learn_with_sepsets",
    "orient_fixpoint",
]


class SepSetTable:
    """Separating sets keyed by unordered node pairs."""

    def __init__(self, items: Iterable = ()):
        self._table: dict = {}
        for (a, b), s in items:
            self.record(a, b, s)

    def record(self, a, b, s) -> None:
        self._table[frozenset((a, b))] = frozenset(s)

    def get(self, a, b, default=None):
        return self._table.get(frozenset((a, b)), default)

    def update(self, other: "SepSetTable") -> None:
        self._table.update(other._table)

    def __contains__(self, pair):
        return frozenset(pair) in self._table

    def __len__(self):
        return len(self._table)

    def items(self):
        return self._table.items()

    def format(self, order=None) -> str:
        key = (lambda v: order.index(v)) if order else str
        rows = []
        for pair, s in self._table.items():
            a, b = sorted(pair, key=key)
            rows.append((key(a), key(b), f"{a} | {b} : {{{', '.join(str(v) for v in sorted(s, key=key))}}}"))
        return "\n".join(r[-1] for r in sorted(rows, key=lambda r: (r[0], r[1])))


def _subsets(items: list):
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def find_separating_sets(o: SeparationOracle, i: int, j: int):
    """Separating-set scan for one (ordered) domain pair.

    Returns the set of retained adjacencies (unordered pairs of domain nodes)
    and the :class:`SepSetTable` fragment written by the scan.
    """
    iset = o.iset
    target = iset.target(i)
    nodes = list(o.nodes)
    retained, table = set(), SepSetTable()

    def copies(vs, k):
        return {BaseNode(v, k) for v in vs}

    if i == j:
        f_nodes = create_f_nodes(iset, i)
        for x, y in combinations(nodes, 2):
            pool = [v for v in nodes if v not in (x, y) and v not in target]
            plain = x not in target and y not in target
            for w in _subsets(pool):
                found = o.ci_invariance(i, {y}, {x}, w) if plain else o.domain_separated(i, x, y, w)
                if found:
                    sep = copies(w, i) | set(f_nodes) | copies(target - {x, y}, i)
                    table.record(BaseNode(x, i), BaseNode(y, i), sep)
                    break
            else:
                retained.add(frozenset((BaseNode(x, i), BaseNode(y, i))))
        return retained, table

    pair = iset.pair(i, j)
    f = FNode(i, j)
    for y in nodes:
        if y in pair.k:
            retained.add(frozenset((f, BaseNode(y, i))))
            continue
        if y in pair.i:
            # intervened in both domains: never adjacent to F, separated unconditionally
            table.record(f, BaseNode(y, i), ())
            table.record(f, BaseNode(y, j), ())
            continue
        for w in _subsets([v for v in nodes if v != y]):
            if o.do_invariance(i, j, {y}, w):
                table.record(f, BaseNode(y, i), copies(pair.i | set(w), i))
                table.record(f, BaseNode(y, j), copies(pair.j | set(w), j))
                break
        else:
            retained.add(frozenset((f, BaseNode(y, i))))
    return retained, table


def learn_with_sepsets(o: SeparationOracle, zhang_tail_rules: bool = False):
    """Run all three phases; return the graph tuple and the separating-set table."""
    iset = o.iset
    graphs, sepsets = [], SepSetTable()
    for i in iset.domains():
        base = [BaseNode(v, i) for v in o.nodes]
        fs = create_f_nodes(iset, i)
        g = MixedGraph(base + fs)
        for a, b in combinations(base, 2):
            g.add_edge(a, b, CIRCLE, CIRCLE)
        for f in fs:
            for v in base:
                g.add_edge(f, v, CIRCLE, CIRCLE)
        retained = set()
        for j in iset.domains():
            kept, table = find_separating_sets(o, i, j)
            retained |= kept
            sepsets.update(table)
        for a, b, _, _ in g.edges():
            if frozenset((a, b)) not in retained:
                g.remove_edge(a, b)
        graphs.append(g)
    return orient_fixpoint(graphs, sepsets, iset, zhang_tail_rules=zhang_tail_rules), sepsets


def learn(o: SeparationOracle, zhang_tail_rules: bool = False) -> list:
    """The learned graph tuple, ordered by domain index."""
    return learn_with_sepsets(o, zhang_tail_rules)[0]


# orientation rules ------------------------------------------------------------


class _Orienter:
    def __init__(self, graphs, sepsets, iset, trace):
        self.graphs = graphs
        self.sepsets = sepsets
        self.iset = iset
        self.trace = trace

    def set(self, rule, k, u, v, mark) -> bool:
        """Put ``mark`` at ``v`` on the ``u``-``v`` edge of graph ``k``; only circles may change."""
        g = self.graphs[k - 1]
        old = g.mark(u, v)
        if old is mark:
            return False
        if old is not CIRCLE:
            raise MarkConflictError(rule, u, v, old, mark)
        g.set_mark(u, v, mark)
        if self.trace is not None:
            self.trace.append((rule, k, u, v, mark))
        return True

    def sepset(self, a, b):
        return self.sepsets.get(a, b, frozenset())

    def each(self):
        for k, g in enumerate(self.graphs, 1):
            yield k, g

    def rule0(self) -> bool:
        changed = False
        for k, g in self.each():
            triples = [
                (a, b, c)
                for b in g.nodes
                for a, c in combinations(g.neighbors(b), 2)
                if not g.is_adjacent(a, c) and b not in self.sepset(a, c)
            ]
            for a, b, c in triples:
                changed |= self.set("R0", k, a, b, ARROW)
                changed |= self.set("R0", k, c, b, ARROW)
        return changed

    def r1(self) -> bool:
        changed = False
        for k, g in self.each():
            for b in g.nodes:
                for a in g.neighbors(b):
                    if g.mark(a, b) is not ARROW:
                        continue
                    for c in g.neighbors(b):
                        if c != a and not g.is_adjacent(a, c) and g.mark(c, b) is CIRCLE:
                            changed |= self.set("R1", k, c, b, TAIL)
                            changed |= self.set("R1", k, b, c, ARROW)
        return changed

    def r2(self) -> bool:
        changed = False
        for k, g in self.each():
            for a, c, _, _ in g.edges():
                for x, z in ((a, c), (c, a)):
                    if g.mark(x, z) is not CIRCLE:
                        continue
                    for b in g.neighbors(x):
                        if b == z or not g.is_adjacent(b, z):
                            continue
                        if (g.is_directed(x, b) and g.into(b, z)) or (g.into(x, b) and g.is_directed(b, z)):
                            changed |= self.set("R2", k, x, z, ARROW)
                            break
        return changed

    def r3(self) -> bool:
        changed = False
        for k, g in self.each():
            for b in g.nodes:
                into = [a for a in g.neighbors(b) if g.mark(a, b) is ARROW]
                for a, c in combinations(into, 2):
                    if g.is_adjacent(a, c):
                        continue
                    for d in g.neighbors(b):
                        if d in (a, c) or not (g.is_adjacent(d, a) and g.is_adjacent(d, c)):
                            continue
                        if g.mark(a, d) is CIRCLE and g.mark(c, d) is CIRCLE and g.mark(d, b) is CIRCLE:
                            changed |= self.set("R3", k, d, b, ARROW)
        return changed

    def r4(self) -> bool:
        changed = False
        for k, g in self.each():
            for y in g.nodes:
                for path in list(discriminating_paths(g, y)):
                    theta, alpha, beta = path[0], path[-3], path[-2]
                    if g.mark(y, beta) is not CIRCLE:
                        continue
                    if beta in self.sepset(theta, y):
                        changed |= self.set("R4", k, y, beta, TAIL)
                        changed |= self.set("R4", k, beta, y, ARROW)
                    else:
                        changed |= self.set("R4", k, alpha, beta, ARROW)
                        changed |= self.set("R4", k, y, beta, ARROW)
                        changed |= self.set("R4", k, beta, y, ARROW)
        return changed

    def _pd_paths(self, g, start):
        """Uncovered potentially directed paths from ``start``, yielded as node tuples."""

        def ok(u, v):
            return g.mark(v, u) is not ARROW and g.mark(u, v) is not TAIL

        def walk(path):
            u = path[-1]
            for v in g.neighbors(u):
                if v in path or not ok(u, v):
                    continue
                if len(path) >= 2 and g.is_adjacent(path[-2], v):
                    continue
                yield (*path, v)
                yield from walk((*path, v))

        yield from walk((start,))

    def z8(self) -> bool:
        changed = False
        for k, g in self.each():
            for a, c, _, _ in g.edges():
                for x, z in ((a, c), (c, a)):
                    if not (g.mark(z, x) is CIRCLE and g.mark(x, z) is ARROW):
                        continue
                    for b in g.neighbors(x):
                        if b == z or not g.is_directed(b, z):
                            continue
                        if g.is_directed(x, b) or (g.mark(b, x) is TAIL and g.mark(x, b) is CIRCLE):
                            changed |= self.set("Z8", k, z, x, TAIL)
                            break
        return changed

    def z9(self) -> bool:
        changed = False
        for k, g in self.each():
            for a, c, _, _ in g.edges():
                for x, z in ((a, c), (c, a)):
                    if not (g.mark(z, x) is CIRCLE and g.mark(x, z) is ARROW):
                        continue
                    for p in self._pd_paths(g, x):
                        if len(p) >= 4 and p[-1] == z and p[1] != z and not g.is_adjacent(p[1], z):
                            changed |= self.set("Z9", k, z, x, TAIL)
                            break
        return changed

    def z10(self) -> bool:
        changed = False
        for k, g in self.each():
            for a, c, _, _ in g.edges():
                for x, z in ((a, c), (c, a)):
                    if not (g.mark(z, x) is CIRCLE and g.mark(x, z) is ARROW):
                        continue
                    into = [b for b in g.neighbors(z) if b != x and g.is_directed(b, z)]
                    firsts = {}
                    for p in self._pd_paths(g, x):
                        if p[-1] in into and z not in p:
                            firsts.setdefault(p[-1], set()).add(p[1])
                    fired = any(
                        mu != om and not g.is_adjacent(mu, om)
                        for b, t in combinations(into, 2)
                        for mu in firsts.get(b, ())
                        for om in firsts.get(t, ())
                    )
                    if fired:
                        changed |= self.set("Z10", k, z, x, TAIL)
        return changed

    def r8(self) -> bool:
        changed = False
        for k, g in self.each():
            for f in g.nodes:
                if isinstance(f, FNode):
                    for v in g.neighbors(f):
                        changed |= self.set("R8", k, v, f, TAIL)
                        changed |= self.set("R8", k, f, v, ARROW)
        return changed

    def r9(self) -> bool:
        changed = False
        for k, g in self.each():
            for x in g.sorted(BaseNode(v, k) for v in self.iset.target(k)):
                for y in g.neighbors(x):
                    if isinstance(y, BaseNode):
                        changed |= self.set("R9", k, y, x, TAIL)
                        changed |= self.set("R9", k, x, y, ARROW)
        return changed

    def r10(self) -> bool:
        changed = False
        for k, g in self.each():
            for a, b, _, _ in g.edges():
                if not (isinstance(a, BaseNode) and isinstance(b, BaseNode)):
                    continue
                for x, y in ((a, b), (b, a)):
                    if not g.is_directed(x, y):
                        continue
                    for j, h in self.each():
                        xj, yj = BaseNode(x.node, j), BaseNode(y.node, j)
                        if j != k and h.is_adjacent(xj, yj):
                            changed |= self.set("R10", j, xj, yj, ARROW)
        return changed

    def r11(self) -> bool:
        changed = False
        for k, g in self.each():
            small = self.iset.target(k)
            for j in self.iset.domains():
                big = self.iset.target(j)
                extra = big - small
                if j == k or len(extra) != 1 or not small < big:
                    continue
                (x,) = extra
                xk, f = BaseNode(x, k), FNode(k, j)
                for y in g.neighbors(f):
                    if y.node in big or not g.is_adjacent(xk, y):
                        continue
                    changed |= self.set("R11", k, y, xk, TAIL)
                    changed |= self.set("R11", k, xk, y, ARROW)
        return changed


RULES = ("R1", "R2", "R3", "R4", "R8", "R9", "R10", "R11")
TAIL_RULES = ("Z8", "Z9", "Z10")


def orient_fixpoint(graphs: list, sepsets: SepSetTable, iset: Iterable, trace: list | None = None,
                    zhang_tail_rules: bool = False, order: Iterable[str] | None = None) -> list:
    """Rule 0 once, then sweep R1-R4 and Rules 8-11 until no mark changes.

    ``zhang_tail_rules`` also runs the three tail rules of the complete FCI
    rule set (labelled Z8-Z10 here to avoid clashing with Rules 8-11).
    The inputs are copied. If ``trace`` is a list, every mark change is
    appended to it as ``(rule, domain, u, v, new_mark)``. ``order`` replaces
    the sweep order with a permutation of the rule names.
    """
    o = _Orienter([g.copy() for g in graphs], sepsets, InterventionSet(iset), trace)
    o.rule0()
    names = RULES[:4] + (TAIL_RULES if zhang_tail_rules else ()) + RULES[4:]
    if order is not None:
        order = tuple(order)
        if sorted(order) != sorted(names):
            raise ValueError(f"order must be a permutation of {names}")
        names = order
    sweep = [getattr(o, name.lower()) for name in names]
    while True:
        changed = False
        for rule in sweep:
            changed |= rule()
        if not changed:
            return o.graphs
