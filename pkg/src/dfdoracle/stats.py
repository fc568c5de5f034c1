"""Per-query counters for structure touches."""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class QueryStats:
    """Mutable tally of the structure pieces a query touched.

    One instance is owned by one caller; the indexes themselves never
    hold counters, so sharing an index across threads stays safe.
    """

    range_nodes: int = 0  # canonical range-tree nodes queried (farthest/nearest)
    canonical: int = 0  # kd-tree nodes returned whole as canonical subsets
    leaves: int = 0  # boundary-crossing kd leaves tested point by point
    visited: int = 0  # every kd node popped during a traversal
    decisions: int = 0  # decision-procedure invocations

    @property
    def touches(self) -> int:
        return self.range_nodes + self.canonical + self.leaves

    def merge(self, other: "QueryStats") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["touches"] = self.touches
        return d
