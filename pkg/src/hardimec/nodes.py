"""Node types used by domain-copied (augmented) graphs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable


@dataclass(frozen=True)
class BaseNode:
    """Copy of an observed node inside domain ``domain`` (1-based target index)."""

    node: Hashable
    domain: int

    def __str__(self):
        return f"{self.node}@{self.domain}"


@dataclass(frozen=True)
class FNode:
    """Regime indicator contrasting domains ``i`` and ``j`` (stored with i < j)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("an F-node needs two distinct domains")
        if self.i > self.j:
            lo, hi = self.j, self.i
            object.__setattr__(self, "i", lo)
            object.__setattr__(self, "j", hi)

    def __str__(self):
        return f"F@{self.i},{self.j}"

    def other(self, k):
        return self.j if k == self.i else self.i


def is_fnode(v) -> bool:
    return isinstance(v, FNode)


def label(v) -> str:
    return str(v)


def parse_label(text: str):
    """Inverse of ``str`` for node labels: ``x@1`` and ``F@1,2`` become domain nodes."""
    if "@" not in text:
        return text
    name, _, rest = text.rpartition("@")
    if name == "F" and "," in rest:
        i, j = rest.split(",")
        return FNode(int(i), int(j))
    return BaseNode(name, int(rest))
