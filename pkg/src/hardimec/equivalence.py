"""Markov equivalence of MAGs and hard/soft I-Markov equivalence of ADMGs."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .augment import fast_i_augmented_tuple, soft_augmented_mag, twin_augmented_mag
from .errors import GraphError, UniverseMismatchError
from .graph import Admg, InterventionSet
from .mixed import ARROW, TAIL, MixedGraph

SKELETON = "skeleton"
UNSHIELDED_COLLIDER = "unshielded_collider"
DISCRIMINATING_PATH = "discriminating_path"


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    failed_condition: Optional[str] = None
    witness: object = None
    domain: Optional[object] = None

    def __bool__(self):
        return self.equivalent

    def __str__(self):
        if self.equivalent:
            return "verdict: equivalent"
        lines = ["verdict: not equivalent", f"failed condition: {self.failed_condition}"]
        if self.domain is not None:
            lines.append(f"domain: {self.domain}")
        lines.append(f"witness: {_show(self.witness)}")
        return "\n".join(lines)


EQUIVALENT = EquivalenceReport(True)


def _show(w):
    if isinstance(w, (tuple, list)):
        return "(" + ", ".join(_show(v) for v in w) + ")"
    if isinstance(w, frozenset):
        return "{" + ", ".join(sorted(map(str, w))) + "}"
    return str(w)


def unshielded_colliders(m: MixedGraph) -> set:
    """Triples ``(a, b, c)`` with ``a *→ b ←* c``, ``a`` and ``c`` non-adjacent, ``a`` before ``c``."""
    out = set()
    for b in m.nodes:
        into = [a for a in m.neighbors(b) if m.mark(a, b) is ARROW]
        for a, c in combinations(into, 2):
            if not m.is_adjacent(a, c):
                out.add((a, b, c))
    return out


def _is_parent(m, u, v):
    return m.is_adjacent(u, v) and m.mark(v, u) is TAIL and m.mark(u, v) is ARROW


def discriminating_paths(m: MixedGraph, y) -> Iterator[tuple]:
    """Yield every discriminating path ``(x, w1, ..., wk, z, y)`` ending at ``y``.

    Each ``w`` is a collider on the path and a parent of ``y``; ``x`` is not adjacent to ``y``.
    """

    def grow(chain):
        w = chain[0]
        for u in m.neighbors(w):
            if u == y or u in chain or m.mark(u, w) is not ARROW:
                continue
            if not m.is_adjacent(u, y):
                yield (u, *chain, y)
            elif _is_parent(m, u, y) and m.mark(w, u) is ARROW:
                yield from grow([u, *chain])

    for z in m.neighbors(y):
        for w in m.neighbors(z):
            if w != y and _is_parent(m, w, y) and m.mark(z, w) is ARROW:
                yield from grow([w, z])


def is_discriminating(m: MixedGraph, path: tuple) -> bool:
    """Check the definition clause by clause for an explicit node sequence."""
    if len(path) < 4 or len(set(path)) != len(path):
        return False
    if not all(m.is_adjacent(a, b) for a, b in zip(path, path[1:])):
        return False
    x, y = path[0], path[-1]
    if m.is_adjacent(x, y):
        return False
    for k in range(1, len(path) - 2):
        prev, w, nxt = path[k - 1], path[k], path[k + 1]
        if not (m.mark(prev, w) is ARROW and m.mark(nxt, w) is ARROW and _is_parent(m, w, y)):
            return False
    return True


def collider_on(m: MixedGraph, path: tuple, k: int) -> bool:
    return m.mark(path[k - 1], path[k]) is ARROW and m.mark(path[k + 1], path[k]) is ARROW


def _label_key(v):
    return str(v), type(v).__name__


class MagSignature:
    """Skeleton, unshielded colliders and discriminating-path verdicts of one MAG.

    Nodes are replaced by their positions in label order, so signatures of
    graphs over the same universe line up whatever their node order. The
    skeleton and the collider set are bitmasks so that comparisons are cheap.
    """

    __slots__ = ("order", "skeleton", "colliders", "discriminating")

    def __init__(self, m: MixedGraph):
        self.order = tuple(sorted(m.nodes, key=_label_key))
        index = {v: k for k, v in enumerate(self.order)}
        n = len(self.order)
        adj = [{} for _ in range(n)]
        for u, nbrs in m._adj.items():
            row = adj[index[u]]
            for v, mk in nbrs.items():
                row[index[v]] = mk
        skel = coll = 0
        for b in range(n):
            row = adj[b]
            for a in row:
                if a < b:
                    skel |= 1 << (a * n + b)
            into = sorted(a for a in row if adj[a][b] is ARROW)
            for x, a in enumerate(into):
                for c in into[x + 1:]:
                    if c not in adj[a]:
                        coll |= 1 << ((a * n + b) * n + c)
        self.skeleton = skel
        self.colliders = coll
        self.discriminating = _discriminating_verdicts(adj)

    def _decode(self, pos, width):
        n = len(self.order)
        out = []
        for _ in range(width):
            pos, r = divmod(pos, n)
            out.append(self.order[r])
        return tuple(reversed(out))

    def compare(self, other: "MagSignature") -> EquivalenceReport:
        if other.order != self.order:
            raise UniverseMismatchError("graphs are over different node sets")
        diff = self.skeleton ^ other.skeleton
        if diff:
            return EquivalenceReport(False, SKELETON, self._decode((diff & -diff).bit_length() - 1, 2))
        diff = self.colliders ^ other.colliders
        if diff:
            return EquivalenceReport(False, UNSHIELDED_COLLIDER, self._decode((diff & -diff).bit_length() - 1, 3))
        mine, theirs = self.discriminating, other.discriminating
        if len(theirs) < len(mine):
            mine, theirs = theirs, mine
        bad = [p for p, v in mine.items() if p in theirs and theirs[p] != v]
        if bad:
            p = tuple(self.order[k] for k in min(bad))
            return EquivalenceReport(False, DISCRIMINATING_PATH, (p, p[-2]))
        return EQUIVALENT

    def __eq__(self, other):
        return isinstance(other, MagSignature) and bool(self.compare(other))

    __hash__ = None


def _discriminating_verdicts(adj: list) -> dict:
    """Map each discriminating path (as index tuple) to whether its ``z`` is a collider."""
    out = {}
    for y, row in enumerate(adj):
        parents = {u for u in row if row[u] is TAIL and adj[u][y] is ARROW}
        if not parents:
            continue

        def grow(chain):
            w = chain[0]
            for u in adj[w]:
                if u == y or u in chain or adj[u][w] is not ARROW:
                    continue
                if y not in adj[u]:
                    path = (u, *chain, y)
                    z = chain[-1]
                    out[path] = adj[chain[-2]][z] is ARROW and row[z] is ARROW
                elif u in parents and adj[w][u] is ARROW:
                    grow([u, *chain])

        for z in row:
            for w in adj[z]:
                if w in parents and adj[z][w] is ARROW:
                    grow([w, z])
    return out


def mag_equivalent(m1: MixedGraph, m2: MixedGraph) -> EquivalenceReport:
    if set(m1.nodes) != set(m2.nodes):
        raise UniverseMismatchError("graphs are over different node sets")
    return MagSignature(m1).compare(MagSignature(m2))


def hard_signature(d: Admg, iset: Iterable) -> tuple:
    return tuple(MagSignature(m) for m in fast_i_augmented_tuple(d, InterventionSet(iset)))


def soft_signature(d: Admg, iset: Iterable) -> MagSignature:
    return MagSignature(soft_augmented_mag(d, iset).graph)


def signature(d: Admg, iset: Iterable, regime: str):
    if regime == "hard":
        return hard_signature(d, iset)
    if regime == "soft":
        return soft_signature(d, iset)
    raise ValueError(f"regime must be 'hard' or 'soft', not {regime!r}")


def compare_signatures(s1, s2) -> EquivalenceReport:
    if isinstance(s1, MagSignature):
        return s1.compare(s2)
    for k, (a, b) in enumerate(zip(s1, s2), 1):
        report = a.compare(b)
        if not report:
            return EquivalenceReport(False, report.failed_condition, report.witness, k)
    return EQUIVALENT


def i_markov_equivalent(d1: Admg, d2: Admg, iset: Iterable, regime: str = "hard") -> EquivalenceReport:
    """Hard: compare I-augmented MAGs domain by domain. Soft: compare the soft augmented MAGs."""
    if set(d1.nodes) != set(d2.nodes):
        raise UniverseMismatchError("graphs are over different node sets")
    iset = InterventionSet(iset)
    return compare_signatures(signature(d1, iset, regime), signature(d2, iset, regime))


def twin_equivalent(d1: Admg, d2: Admg, iset: Iterable) -> EquivalenceReport:
    """Compare twin augmented MAGs for every unordered pair of targets."""
    iset = InterventionSet(iset)
    if len(iset) < 2:
        raise GraphError("twin comparison needs at least two targets")
    for i, j in combinations(iset.domains(), 2):
        p = iset.pair(i, j)
        report = mag_equivalent(twin_augmented_mag(d1, p).graph, twin_augmented_mag(d2, p).graph)
        if not report:
            return EquivalenceReport(False, report.failed_condition, report.witness, (i, j))
    return EQUIVALENT
