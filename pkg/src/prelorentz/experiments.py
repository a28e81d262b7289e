"""Exhaustive desk-scale runs of the edge-replacement log-concavity statement."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exceptions import InputError
from .graphs import Graph, replace_w4
from .independence import indep_poly
from .sequences import is_log_concave


def labelled_graphs(n: int):
    """All ``2^C(n,2)`` graphs on vertices ``v1 .. vn``, by edge-subset bitmask."""
    verts = [f"v{i}" for i in range(1, n + 1)]
    pairs = list(combinations(verts, 2))
    for mask in range(1 << len(pairs)):
        yield Graph(verts, [p for b, p in enumerate(pairs) if mask >> b & 1])


@dataclass
class SweepRow:
    n: int
    graphs: int = 0
    log_concave: int = 0
    largest: int = 0
    failures: list = field(default_factory=list)

    @property
    def all_log_concave(self) -> bool:
        return self.graphs == self.log_concave

    def summary(self) -> str:
        verdict = "log-concave" if self.all_log_concave else f"{len(self.failures)} NOT log-concave"
        return f"all {self.graphs} edge-subsets of K{self.n}: {verdict}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "graphs": self.graphs,
            "log_concave": self.log_concave,
            "largest_replaced_vertices": self.largest,
            "failures": self.failures,
            "summary": self.summary(),
        }


def theorem14_sweep(max_vertices: int) -> list[SweepRow]:
    """Replace edges of every labelled graph on 1..max_vertices vertices and
    check the independence sequence of the result for log-concavity."""
    if not isinstance(max_vertices, int) or max_vertices < 1:
        raise InputError("max_vertices must be a positive integer")
    if max_vertices > 6:
        raise InputError("max_vertices above 6 means over 2^21 graphs; refusing")
    rows = []
    for n in range(1, max_vertices + 1):
        row = SweepRow(n)
        for g in labelled_graphs(n):
            h = replace_w4(g)
            seq = indep_poly(h)
            row.graphs += 1
            row.largest = max(row.largest, len(h))
            check = is_log_concave(seq)
            if check:
                row.log_concave += 1
            else:
                row.failures.append({"edges": [list(e) for e in g.edges], "sequence": list(seq), "index": check.index})
        rows.append(row)
    return rows
