"""Latent projection of ADMGs onto maximal ancestral graphs."""
from __future__ import annotations

from itertools import combinations

from .errors import InvalidMarkError, NotAncestralError, NotMaximalError
from .graph import Admg, ancestors, validate_admg
from .mixed import ARROW, CIRCLE, TAIL, MixedGraph
from .separation import has_inducing_path, inducing_path_in


def latent_project(g: Admg) -> MixedGraph:
    """The MAG of ``g``: adjacency by inducing paths, orientation by ancestry."""
    validate_admg(g)
    an = {v: ancestors(g, (v,)) for v in g.nodes}
    view = g.edge_view
    m = MixedGraph(g.nodes)
    for a, b in combinations(g.nodes, 2):
        if not (g.is_adjacent(a, b) or inducing_path_in(view, a, b, an[a] | an[b])):
            continue
        if a in an[b]:
            m.add_edge(a, b, TAIL, ARROW)
        elif b in an[a]:
            m.add_edge(b, a, TAIL, ARROW)
        else:
            m.add_edge(a, b, ARROW, ARROW)
    return m


def as_admg(m: MixedGraph) -> Admg:
    """Read a MAG as an ADMG whose bidirected edges are confounders."""
    directed, bidirected = [], []
    for a, b, ma, mb in m.edges():
        if CIRCLE in (ma, mb) or (ma is TAIL and mb is TAIL):
            raise InvalidMarkError(f"edge {a}-{b} is not directed or bidirected")
        if ma is TAIL:
            directed.append((a, b))
        elif mb is TAIL:
            directed.append((b, a))
        else:
            bidirected.append((a, b))
    return Admg(m.nodes, directed, bidirected, check=False)


def validate_mag(m: MixedGraph) -> None:
    """Raise unless ``m`` is ancestral and maximal."""
    g = as_admg(m)
    an = {v: ancestors(g, (v,)) for v in g.nodes}
    for a, b in sorted(g.directed, key=lambda e: (g.index[e[0]], g.index[e[1]])):
        if b in an[a]:
            raise NotAncestralError((a, b), "directed cycle through")
    for a, b in sorted(g.bidirected, key=lambda e: (g.index[e[0]], g.index[e[1]])):
        if a in an[b] or b in an[a]:
            raise NotAncestralError((a, b), "almost directed cycle at")
    for a, b in combinations(m.nodes, 2):
        if not m.is_adjacent(a, b) and has_inducing_path(g, a, b):
            raise NotMaximalError((a, b))


def is_valid_mag(m: MixedGraph) -> bool:
    try:
        validate_mag(m)
    except (NotAncestralError, NotMaximalError, InvalidMarkError):
        return False
    return True
