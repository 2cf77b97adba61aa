"""Graphical answers to the two invariance-query families of the I-Markov property."""
from __future__ import annotations

import threading
from typing import Iterable

from .augment import augmented_pair_graph
from .errors import QueryOverlapError, SymmetricDifferenceError, TargetOverlapError
from .graph import Admg, InterventionSet, mutilate, partition_relative, relative_nonancestors
from .nodes import BaseNode, FNode
from .separation import m_separated


class SeparationOracle:
    """Exact invariance oracle for a ground-truth ADMG under hard interventions.

    Answers are memoised; the memo is guarded by a lock so one oracle can be
    shared between threads.
    """

    def __init__(self, truth: Admg, iset: Iterable):
        self.truth = truth
        self.iset = InterventionSet(iset)
        self.iset.check(truth)
        self._cache: dict = {}
        self._lock = threading.Lock()
        self._mutilated: dict = {}
        self.queries = 0

    def _memo(self, key, compute):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            self._cache.setdefault(key, value)
            self.queries += 1
        return value

    def _cut(self, over=frozenset(), under=frozenset()):
        key = (frozenset(over), frozenset(under))
        g = self._mutilated.get(key)
        if g is None:
            g = self._mutilated[key] = mutilate(self.truth, over, under)
        return g

    @property
    def nodes(self):
        return self.truth.nodes

    def ci_invariance(self, i: int, y: Iterable, z: Iterable, w: Iterable = ()) -> bool:
        """``P_I(y | w, z) = P_I(y | w)``: ``y ⊥ z | w ∪ I`` in the graph cut at ``I``."""
        target = self.iset.target(i)
        y, z, w = (self.truth.check_nodes(s) for s in (y, z, w))
        if y & z or y & w or z & w:
            raise QueryOverlapError("y, z and w must be pairwise disjoint")
        if (y | z | w) & target:
            raise TargetOverlapError("ci_invariance sets must avoid the intervened nodes")
        if not y or not z:
            return True
        key = ("ci", i, frozenset((y, z)), w)
        return self._memo(key, lambda: m_separated(self._cut(target), y, z, w | target))

    def domain_separated(self, i: int, a, b, w: Iterable = ()) -> bool:
        """``a ⊥ b | w ∪ I`` in the graph cut at ``I``; endpoints may be intervened nodes."""
        target = self.iset.target(i)
        w = self.truth.check_nodes(w)
        cond = (w | target) - {a, b}
        key = ("sep", i, frozenset((a, b)), cond)
        return self._memo(key, lambda: m_separated(self._cut(target), {a}, {b}, cond))

    def _check_do(self, i, j, y, w):
        p = self.iset.pair(i, j)
        y, w = self.truth.check_nodes(y), self.truth.check_nodes(w)
        if y & w:
            raise QueryOverlapError("y and w must be disjoint")
        if y & p.k:
            raise SymmetricDifferenceError("y must avoid I Δ J")
        if y & p.i & p.j:
            raise TargetOverlapError("y must avoid nodes intervened in both domains")
        return p, y, w

    def do_invariance(self, i: int, j: int, y: Iterable, w: Iterable = ()) -> bool:
        """``P_I(y | w) = P_J(y | w)`` via the four-conjunct graphical condition."""
        p, y, w = self._check_do(i, j, y, w)
        if i == j or not y:
            return True
        key = ("do", frozenset((i, j)), y, w)
        return self._memo(key, lambda: self._four_conjuncts(p, y, w))

    def _four_conjuncts(self, p, y, w) -> bool:
        w_i, w_j, _, r_i, r_j = partition_relative(p, w)
        g = self.truth
        for mine, r_other, w_other in ((p.i, r_j, w_j), (p.j, r_i, w_i)):
            r_w = relative_nonancestors(g, r_other, w, mine)
            if r_other and not m_separated(self._cut(mine | r_w), y, r_other, w | mine):
                return False
            if w_other and not m_separated(self._cut(mine, w_other), y, w_other, (w - w_other) | mine):
                return False
        return True

    def do_invariance_fnode(self, i: int, j: int, y: Iterable, w: Iterable = ()) -> bool:
        """Second implementation: F-node separations in the augmented pair graph."""
        p, y, w = self._check_do(i, j, y, w)
        if i == j or not y:
            return True
        aug = augmented_pair_graph(self.truth, p).graph
        f = FNode(i, j)
        for k, target in ((i, p.i), (j, p.j)):
            ys = {BaseNode(v, k) for v in y}
            cond = {BaseNode(v, k) for v in target | w}
            if not m_separated(aug, {f}, ys, cond):
                return False
        return True
