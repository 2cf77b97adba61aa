"""m-separation, inducing paths and separating-set search.

Functions accept any graph exposing ``nodes``, ``index``, ``parents``,
``edge_view`` and ``check_nodes`` (both :class:`Admg` and :class:`MixedGraph` do).
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .errors import QueryOverlapError
from .graph import Admg, ancestors
from .marks import Mark

ARROW = Mark.ARROW


def m_separated(g, x: Iterable, y: Iterable, z: Iterable = ()) -> bool:
    """True iff every path between ``x`` and ``y`` is blocked by ``z``.

    Ball-passing over states ``(node, entered_with_arrowhead)``; a collider
    passes iff it is an ancestor of ``z``, a non-collider iff it is outside ``z``.
    """
    x, y, z = g.check_nodes(x), g.check_nodes(y), g.check_nodes(z)
    if x & y or x & z or y & z:
        raise QueryOverlapError("x, y and z must be pairwise disjoint")
    if not x or not y:
        return True
    an_z = ancestors(g, z)
    view = g.edge_view
    stack = [(w, there is ARROW) for v in x for w, _, there in view[v]]
    seen = set()
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        v, into = state
        if v in y:
            return False
        for w, here, there in view[v]:
            if into and here is ARROW:
                if v not in an_z:
                    continue
            elif v in z:
                continue
            stack.append((w, there is ARROW))
    return True


def has_inducing_path(g, a, b, z: Iterable = (), expand_bidirected: bool = False) -> bool:
    """True iff some path from ``a`` to ``b`` has every interior node outside ``z``
    a collider, and every interior collider an ancestor of ``a`` or ``b``.

    With ``expand_bidirected`` each ``u <-> v`` of an ADMG is first replaced by
    an explicit latent fork ``u <- L -> v`` and the latents are exempt from the
    collider requirement; the answer is the same, which the tests exploit.
    """
    z = g.check_nodes(z)
    g.check_nodes((a, b))
    if a == b:
        raise ValueError("endpoints must differ")
    if expand_bidirected:
        h, latents = _expand(g)
        return has_inducing_path(h, a, b, z | latents)
    return inducing_path_in(g.edge_view, a, b, ancestors(g, (a, b)), z)


def inducing_path_in(view: dict, a, b, an_ab: frozenset, z: frozenset = frozenset()) -> bool:
    """Depth-first search behind :func:`has_inducing_path` on a precomputed edge view."""
    on_path = {a}

    def extend(v, into):
        for w, here, there in view[v]:
            if v != a:
                if into and here is ARROW:
                    if v not in an_ab:
                        continue
                elif v not in z:
                    continue
            if w == b:
                return True
            if w in on_path:
                continue
            on_path.add(w)
            if extend(w, there is ARROW):
                return True
            on_path.discard(w)
        return False

    return extend(a, False)


def _expand(g: Admg):
    latents = {("L", a, b): (a, b) for a, b in g.bidirected}
    directed = list(g.directed)
    for lat, (a, b) in latents.items():
        directed += [(lat, a), (lat, b)]
    h = Admg(list(g.nodes) + list(latents), directed, check=False)
    return h, frozenset(latents)


def separable(g, a, b) -> bool:
    """True iff some set separates ``a`` and ``b``; tested with An({a,b}) minus the pair."""
    return m_separated(g, {a}, {b}, ancestors(g, (a, b)) - {a, b})


def find_separating_set(g, a, b, pool: Iterable, forced: Iterable = ()):
    """First ``W ⊆ pool`` (by size, then node order) with ``a ⊥ b | W ∪ forced``, else ``None``."""
    pool = g.sorted(g.check_nodes(pool))
    forced = g.check_nodes(forced)
    for size in range(len(pool) + 1):
        for w in combinations(pool, size):
            if m_separated(g, {a}, {b}, forced.union(w)):
                return frozenset(w)
    return None
