from enum import Enum


class Mark(Enum):
    """Endpoint mark of an edge."""

    TAIL = "-"
    ARROW = ">"
    CIRCLE = "o"

    def __repr__(self):
        return f"Mark.{self.name}"
