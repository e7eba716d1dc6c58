"""Planar link diagrams in PD notation.

A diagram is a list of crossings, each a 4-tuple of edge labels in
counterclockwise planar order, plus an explicit count of crossingless unknot
components (PD codes cannot express those).

Smoothing convention: for a crossing (a, b, c, d) the 0-smoothing joins a-b
and c-d, the 1-smoothing joins a-d and b-c.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from collections import Counter

from .errors import BadIncidence, EmptyDiagram, MalformedSyntax

Crossing = tuple[int, int, int, int]

_TERM_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)|U")


@dataclass(frozen=True)
class PlanarDiagram:
    """A PD-coded link diagram."""

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    name: str = ""

    def __post_init__(self):
        if self.free_loops < 0:
            raise EmptyDiagram("free_loops must be nonnegative")
        if not self.crossings and self.free_loops == 0:
            raise EmptyDiagram("diagram has no crossings and no free loops")
        counts = Counter(lbl for x in self.crossings for lbl in x)
        bad = [lbl for lbl, k in counts.items() if k != 2]
        if bad:
            raise BadIncidence(f"edge labels not appearing exactly twice: {sorted(bad)}")

    @property
    def n(self) -> int:
        return len(self.crossings)

    def with_name(self, name: str) -> "PlanarDiagram":
        return replace(self, name=name)


def normalize_labels(d: PlanarDiagram) -> PlanarDiagram:
    """Relabel edges to 1..2n preserving label order."""
    labels = sorted({lbl for x in d.crossings for lbl in x})
    remap = {old: i + 1 for i, old in enumerate(labels)}
    crossings = tuple(tuple(remap[lbl] for lbl in x) for x in d.crossings)
    return PlanarDiagram(crossings, d.free_loops, d.name)


def parse_pd(text: str, name: str = "") -> PlanarDiagram:
    """Parse whitespace-separated `X(i,j,k,l)` and `U` terms."""
    crossings: list[Crossing] = []
    free_loops = 0
    pos = 0
    for token in text.split():
        m = _TERM_RE.fullmatch(token)
        if m is None:
            raise MalformedSyntax(f"unparseable token {token!r} at position {pos}")
        if token == "U":
            free_loops += 1
        else:
            crossings.append(tuple(int(g) for g in m.groups()))
        pos += 1
    d = PlanarDiagram(tuple(crossings), free_loops, name)
    return normalize_labels(d)


def serialize_pd(d: PlanarDiagram) -> str:
    terms = ["X(%d,%d,%d,%d)" % x for x in d.crossings]
    terms.extend(["U"] * d.free_loops)
    return " ".join(terms)


def pd_to_json(d: PlanarDiagram) -> str:
    return json.dumps(
        {"name": d.name, "crossings": [list(x) for x in d.crossings],
         "free_loops": d.free_loops})


def pd_from_json(text: str) -> PlanarDiagram:
    try:
        obj = json.loads(text)
        crossings = tuple(tuple(int(v) for v in x) for x in obj.get("crossings", []))
        if any(len(x) != 4 for x in crossings):
            raise MalformedSyntax("crossings must be 4-tuples")
        d = PlanarDiagram(crossings, int(obj.get("free_loops", 0)),
                          str(obj.get("name", "")))
    except (ValueError, TypeError, KeyError) as exc:
        raise MalformedSyntax(str(exc)) from exc
    return normalize_labels(d)


def mirror_diagram(d: PlanarDiagram) -> PlanarDiagram:
    """Reverse the cyclic order of every crossing tuple.

    Resolving the mirror at choice c equals the mirror of resolving the
    original at choice 1-c, crossing by crossing.
    """
    crossings = tuple((a, dd, c, b) for (a, b, c, dd) in d.crossings)
    return PlanarDiagram(crossings, d.free_loops, d.name + "*" if d.name else "")


# --- orientation and crossing signs ----------------------------------------

def _edge_ends(d: PlanarDiagram) -> dict[int, list[tuple[int, int]]]:
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(d.crossings):
        for pos, lbl in enumerate(x):
            ends.setdefault(lbl, []).append((ci, pos))
    return ends


def crossing_signs(d: PlanarDiagram) -> list[int]:
    """Signs of all crossings under a traced orientation of each component.

    A crossing is positive exactly when one of its strands flows position
    0 -> 2 while the other flows 3 -> 1 (or both directions reversed).
    The per-component orientation choice is arbitrary but deterministic;
    signs of self-crossings of a component do not depend on it.
    """
    ends = _edge_ends(d)
    # directed flow per strand: flow[(ci, strand)] = +1 if it flows
    # low position -> high position partner (0->2 or 1->3), else -1.
    flow: dict[tuple[int, int], int] = {}
    seen_ends: set[tuple[int, int]] = set()
    for start_lbl in sorted(ends):
        if all(e in seen_ends for e in ends[start_lbl]):
            continue
        # orient this component: enter the first occurrence of start_lbl
        cur = ends[start_lbl][0]
        while cur not in seen_ends:
            ci, pos = cur
            seen_ends.add(cur)
            out_pos = pos ^ 2
            seen_ends.add((ci, out_pos))
            strand = min(pos, out_pos) & 1  # 0 for strand {0,2}, 1 for {1,3}
            flow[(ci, strand)] = 1 if pos < out_pos else -1
            out_lbl = d.crossings[ci][out_pos]
            occ = ends[out_lbl]
            nxt = occ[0] if occ[0] != (ci, out_pos) else occ[1]
            cur = nxt
    signs = []
    for ci in range(d.n):
        s_under = flow[(ci, 0)]
        s_over = flow[(ci, 1)]
        signs.append(1 if s_under * s_over == -1 else -1)
    return signs


def writhe_counts(d: PlanarDiagram) -> tuple[int, int]:
    """(n_plus, n_minus) for the traced orientation."""
    signs = crossing_signs(d)
    return signs.count(1), signs.count(-1)
