"""Fixture configurations and diagrams.

The figure-family diagrams are generated from combinatorial configuration
descriptions via configuration_to_diagram, so each family is parametric and
crossing i corresponds to arc i of the source configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cube import (
    ResolutionConfiguration,
    configuration_to_diagram,
    make_configuration,
)
from .diagram import PlanarDiagram, parse_pd
from .errors import ParamOutOfRange, UnknownFixture

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
# closure of the 3-strand braid (s1 s2^-1)^2
FIGURE_EIGHT_PD = "X(3,4,2,1) X(4,7,8,5) X(5,6,1,2) X(6,8,7,3)"
KINK_PD = "X(1,2,2,1)"

NAMED_KNOTS = ("unknot", "kink", "trefoil", "figure_eight")


@dataclass(frozen=True)
class FixtureSpec:
    family: str
    n: int | None = None
    k: int | None = None
    l: int | None = None
    index: int | None = None
    name: str | None = None


def _slot(arc: int, end: int):
    return ("s", arc, end)


# ---------------------------------------------------------------------------
# small configuration families
# ---------------------------------------------------------------------------

def merge_configuration() -> ResolutionConfiguration:
    """Two circles joined by one arc."""
    p, q = _slot(0, 0), _slot(0, 1)
    return make_configuration([[p], [q]], [(p, q)], {p: "R", q: "R"})


def split_configuration() -> ResolutionConfiguration:
    """One circle with a single chord."""
    p, q = _slot(0, 0), _slot(0, 1)
    return make_configuration([[p, q]], [(p, q)], {p: "L", q: "L"})


def star_tree(n: int) -> ResolutionConfiguration:
    """n-dimensional tree: a central circle with n leaf circles."""
    if n < 1:
        raise ParamOutOfRange("star tree needs n >= 1")
    leaves = [[_slot(i, 0)] for i in range(n)]
    center = [_slot(i, 1) for i in range(n)]
    arcs = [(_slot(i, 0), _slot(i, 1)) for i in range(n)]
    sides = {s: "R" for arc in arcs for s in arc}
    return make_configuration(leaves + [center], arcs, sides)


def path_tree(n: int) -> ResolutionConfiguration:
    """n-dimensional tree: n+1 circles in a row."""
    if n < 1:
        raise ParamOutOfRange("path tree needs n >= 1")
    words = []
    for ci in range(n + 1):
        w = []
        if ci > 0:
            w.append(_slot(ci - 1, 1))
        if ci < n:
            w.append(_slot(ci, 0))
        words.append(w)
    arcs = [(_slot(i, 0), _slot(i, 1)) for i in range(n)]
    sides = {s: "R" for arc in arcs for s in arc}
    return make_configuration(words, arcs, sides)


def rainbow_dual_tree(n: int) -> ResolutionConfiguration:
    """n-dimensional dual tree: one circle with n nested chords on one side."""
    if n < 1:
        raise ParamOutOfRange("rainbow needs n >= 1")
    word = [_slot(i, 0) for i in reversed(range(n))] + \
           [_slot(i, 1) for i in range(n)]
    arcs = [(_slot(i, 0), _slot(i, 1)) for i in range(n)]
    sides = {s: "L" for arc in arcs for s in arc}
    return make_configuration([word], arcs, sides)


# ---------------------------------------------------------------------------
# the dimension-2 catalog
# ---------------------------------------------------------------------------

def catalog2_configuration(index: int) -> ResolutionConfiguration:
    """Connected 2-dimensional configurations 1-8.

    1 two circles joined by two parallel arcs;
    2 unnested tree; 3 nested tree;
    4 dual tree, both chords on one side; 5 dual tree, one chord each side;
    6 circle with a chord plus an outside circle joined on the chordless side;
    7 as 6 but joined on the chord side (nested);
    8 one circle with a chord and an opposite-side arc, interleaved.
    """
    s = _slot
    if index == 1:
        a, b, c, d = s(0, 0), s(0, 1), s(1, 0), s(1, 1)
        return make_configuration([[a, c], [b, d]], [(a, b), (c, d)],
                                  {a: "R", b: "R", c: "R", d: "R"})
    if index == 2:
        return star_tree(2)
    if index == 3:
        e0, e1 = s(0, 0), s(0, 1)  # inner circle to big circle, inside
        f0, f1 = s(1, 0), s(1, 1)  # outer circle to big circle, outside
        return make_configuration([[e1, f1], [e0], [f0]],
                                  [(e0, e1), (f0, f1)],
                                  {e0: "R", e1: "L", f0: "R", f1: "R"})
    if index == 4:
        return rainbow_dual_tree(2)
    if index == 5:
        a, b, c, d = s(0, 0), s(0, 1), s(1, 0), s(1, 1)
        return make_configuration([[a, b, c, d]], [(a, b), (c, d)],
                                  {a: "L", b: "L", c: "R", d: "R"})
    if index == 6:
        g0, g1, e = s(0, 0), s(0, 1), s(1, 0)
        h = s(1, 1)
        return make_configuration([[g0, g1, e], [h]], [(g0, g1), (e, h)],
                                  {g0: "L", g1: "L", e: "R", h: "R"})
    if index == 7:
        g0, g1, e = s(0, 0), s(0, 1), s(1, 0)
        h = s(1, 1)
        return make_configuration([[g0, g1, e], [h]], [(g0, g1), (e, h)],
                                  {g0: "L", g1: "L", e: "L", h: "R"})
    if index == 8:
        a, b, c, d = s(0, 0), s(0, 1), s(1, 0), s(1, 1)
        return make_configuration([[a, c, b, d]], [(a, b), (c, d)],
                                  {a: "L", b: "L", c: "R", d: "R"})
    raise ParamOutOfRange(f"catalog index must be 1..8, got {index}")


# Duality pairing as computed by dual_mirror on the catalog: the two trees
# pair with the two dual trees (2<->4 unnested, 3<->5 nested) and the four
# remaining entries are self-dual.
CATALOG2_PARTNERS = {1: 1, 2: 4, 3: 5, 4: 2, 5: 3, 6: 6, 7: 7, 8: 8}

CATALOG2_KINDS = {1: "neither", 2: "tree", 3: "tree", 4: "dual_tree",
                  5: "dual_tree", 6: "neither", 7: "neither", 8: "neither"}


# ---------------------------------------------------------------------------
# figure families
# ---------------------------------------------------------------------------

def figure4_configuration(n: int) -> ResolutionConfiguration:
    """n circles around a central one; arcs 1..n join them to the center and
    arc n+1 closes the loop between the first and last outer circle."""
    if n < 2:
        raise ParamOutOfRange("figure4 needs n >= 2")
    s = _slot
    words = []
    for i in range(n):
        w = [s(i, 0)]
        if i == 0:
            w.append(s(n, 0))
        if i == n - 1:
            w.append(s(n, 1))
        words.append(w)
    center = [s(i, 1) for i in range(n)]
    words.append(center)
    arcs = [(s(i, 0), s(i, 1)) for i in range(n)] + [(s(n, 0), s(n, 1))]
    sides = {a: "R" for arc in arcs for a in arc}
    return make_configuration(words, arcs, sides)


def figure4(n: int) -> PlanarDiagram:
    return configuration_to_diagram(figure4_configuration(n), name=f"figure4({n})")


def figure5_configuration(k: int, l: int) -> ResolutionConfiguration:
    """Two star trees glued along their centers, plus the splitting chord
    (arc 0) that separates the halves again."""
    if k < 1 or l < 1:
        raise ParamOutOfRange("figure5 needs k, l >= 1")
    s = _slot
    g0, g1 = s(0, 0), s(0, 1)
    center = [g0] + [s(1 + i, 0) for i in range(k)] + [g1] \
        + [s(1 + k + j, 0) for j in range(l)]
    leaves = [[s(1 + i, 1)] for i in range(k)] + [[s(1 + k + j, 1)] for j in range(l)]
    arcs = [(g0, g1)] + [(s(1 + i, 0), s(1 + i, 1)) for i in range(k + l)]
    sides = {g0: "L", g1: "L"}
    for arc in arcs[1:]:
        sides[arc[0]] = "R"
        sides[arc[1]] = "R"
    return make_configuration([center] + leaves, arcs, sides)


def figure5(k: int, l: int) -> PlanarDiagram:
    return configuration_to_diagram(figure5_configuration(k, l),
                                    name=f"figure5({k},{l})")


def figure6_configuration(k: int, l: int) -> ResolutionConfiguration:
    """A k-dimensional star tree joined by arc 0 to a circle carrying an
    l-chord rainbow; arc 1 is the outermost chord, whose clean pocket the
    joining arc attaches to."""
    if k < 1 or l < 1:
        raise ParamOutOfRange("figure6 needs k, l >= 1")
    s = _slot
    xg, zg = s(0, 0), s(0, 1)
    # chords ordered outermost first: arc 1 is the outermost (degree-one) one
    chord_arc = {}
    for depth in range(l):  # depth 0 = outermost
        chord_arc[depth] = 1 + depth
    x_word = [s(l + 1 + i, 0) for i in range(k)] + [xg]
    leaves = [[s(l + 1 + i, 1)] for i in range(k)]
    z_word = [s(chord_arc[depth], 0) for depth in range(l)]          # p_l..p_1
    z_word += [s(chord_arc[depth], 1) for depth in reversed(range(l))]  # q_1..q_l
    z_word += [zg]
    arcs = [(xg, zg)]
    arcs += [(s(chord_arc[d], 0), s(chord_arc[d], 1)) for d in range(l)]
    arcs += [(s(l + 1 + i, 0), s(l + 1 + i, 1)) for i in range(k)]
    arcs = [arcs[0]] + sorted(arcs[1:], key=lambda a: a[0][1])
    sides = {xg: "R", zg: "R"}
    for d in range(l):
        sides[s(chord_arc[d], 0)] = "L"
        sides[s(chord_arc[d], 1)] = "L"
    for i in range(k):
        sides[s(l + 1 + i, 0)] = "R"
        sides[s(l + 1 + i, 1)] = "R"
    return make_configuration([x_word] + leaves + [z_word], arcs, sides)


def figure6(k: int, l: int) -> PlanarDiagram:
    return configuration_to_diagram(figure6_configuration(k, l),
                                    name=f"figure6({k},{l})")


def figure6_with_tree_circles(k: int, l: int):
    """figure6 diagram plus the 0-resolution circle indices of the tree part.

    Circle order in the generated diagram's 0-resolution matches the
    configuration's circle order (edge labels are assigned circle by circle),
    so the tree part is the star circle and its k leaves: indices 0..k.
    """
    d = figure6(k, l)
    return d, list(range(k + 1))


def figure6_expected_output(cube, full_vertex: int, tree_circles) -> int:
    """Monomial carrying x exactly on the ending circle of the tree part."""
    res_0 = cube.resolution(0)
    res_k = cube.resolution(full_vertex)
    edge_to_idx = {}
    for vi, circ in enumerate(res_k.circles):
        for e in circ.edges:
            edge_to_idx[e] = vi
    targets = {edge_to_idx[e] for ci in tree_circles
               for e in res_0.circles[ci].edges}
    if len(targets) != 1:
        raise AssertionError("tree part does not reassemble one ending circle")
    return 1 << targets.pop()


# ---------------------------------------------------------------------------
# named knots and the dispatcher
# ---------------------------------------------------------------------------

def named_knot(name: str) -> PlanarDiagram:
    if name == "unknot":
        return PlanarDiagram((), 1, "unknot")
    if name == "kink":
        return parse_pd(KINK_PD, name="kink")
    if name == "trefoil":
        return parse_pd(TREFOIL_PD, name="trefoil")
    if name == "figure_eight":
        return parse_pd(FIGURE_EIGHT_PD, name="figure_eight")
    raise UnknownFixture(f"unknown knot {name!r}; have {NAMED_KNOTS}")


def fixture(spec: FixtureSpec):
    """Return the documented fixture diagram or configuration."""
    fam = spec.family
    if fam == "figure4":
        if spec.n is None or spec.n < 2:
            raise ParamOutOfRange("figure4 needs n >= 2")
        return figure4(spec.n)
    if fam == "figure5":
        if not spec.k or not spec.l or spec.k < 1 or spec.l < 1:
            raise ParamOutOfRange("figure5 needs k, l >= 1")
        return figure5(spec.k, spec.l)
    if fam == "figure6":
        if not spec.k or not spec.l or spec.k < 1 or spec.l < 1:
            raise ParamOutOfRange("figure6 needs k, l >= 1")
        return figure6(spec.k, spec.l)
    if fam == "catalog2":
        if spec.index is None or not 1 <= spec.index <= 8:
            raise ParamOutOfRange("catalog2 needs index in 1..8")
        return catalog2_configuration(spec.index)
    if fam == "named_knot":
        if not spec.name:
            raise ParamOutOfRange("named_knot needs a name")
        return named_knot(spec.name)
    raise UnknownFixture(f"unknown fixture family {fam!r}")


def identity_fixture_diagrams() -> list[PlanarDiagram]:
    """The standard family used by the differential-identity checks."""
    return [
        named_knot("trefoil"),
        named_knot("figure_eight"),
        figure4(2),
        figure4(3),
        figure4(4),
        figure5(1, 1),
        figure5(2, 1),
        figure6(1, 1),
        figure6(2, 1),
    ]
