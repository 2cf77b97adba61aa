"""Exception hierarchy shared by every module."""


class GraphError(ValueError):
    """Base class for all errors raised by this package."""


class UnknownNodeError(GraphError):
    def __init__(self, node):
        super().__init__(f"unknown node: {node!r}")
        self.node = node


class SelfLoopError(GraphError):
    def __init__(self, node):
        super().__init__(f"self-loop at {node!r}")
        self.node = node


class CyclicDirectedPartError(GraphError):
    """The directed part of a graph contains a cycle.

    ``cycle`` lists the nodes of one witness cycle in traversal order.
    """

    def __init__(self, cycle):
        cycle = tuple(cycle)
        super().__init__("directed cycle: " + " -> ".join(map(str, cycle + cycle[:1])))
        self.cycle = cycle


class QueryOverlapError(GraphError):
    """Sets in a separation query are not pairwise disjoint."""


class NotAncestralError(GraphError):
    def __init__(self, witness, message="graph is not ancestral"):
        super().__init__(f"{message}: {witness!r}")
        self.witness = witness


class NotMaximalError(GraphError):
    def __init__(self, pair):
        super().__init__(f"inducing path between non-adjacent {pair!r}")
        self.pair = pair


class InvalidMarkError(GraphError):
    """A MAG-only operation met a circle mark."""


class UnknownTargetError(GraphError):
    def __init__(self, target):
        super().__init__(f"intervention target not in graph: {sorted(map(str, target))}")
        self.target = target


class IndexOutOfRangeError(GraphError, IndexError):
    pass


class SearchSpaceTooLargeError(GraphError):
    pass


class UniverseMismatchError(GraphError):
    pass


class TargetOverlapError(GraphError):
    """A query set intersects the intervened nodes it must avoid."""


class SymmetricDifferenceError(GraphError):
    """The outcome set of a do-invariance query meets I Δ J."""


class MarkConflictError(GraphError):
    """An orientation rule tried to overwrite a definite mark."""

    def __init__(self, rule, u, v, old, new):
        super().__init__(f"{rule}: mark at {v} on {u}-{v} is {old.name}, cannot set {new.name}")
        self.rule = rule
        self.edge = (u, v)


class ParseError(GraphError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
