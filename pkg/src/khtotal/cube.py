"""Resolution configurations and the cube of resolutions.

Circles are stored as cyclic words of atoms.  An atom is a tuple whose first
entry is a kind tag:

    ('s', c, j)   arc-endpoint slot (j in {0,1} picks the crossing's strand pair)
    ('d', i, j)   dual-arc endpoint created by surgery along arc i
    ('m', key)    segment marker: a point on a maximal circle segment between
                  consecutive arc endpoints (one per passive circle)

Each slot carries a side bit 'L'/'R': the side on which its arc attaches,
relative to the direction in which the circle's word is listed.  Reversing a
word while flipping its side bits describes the same embedded object, so all
comparisons here work modulo that reparametrization.

Surgery along an arc with endpoints p, q (cyclic words C1 = p.A, C2 = q.B):
distinct circles merge to A.B (B reversed with flipped bits when the sides
differ); a single circle p.A.q.B with equal sides splits into A and B.  The
two surgery scars receive the side bit opposite to side(p) and become the
endpoints of the dual arc.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .diagram import PlanarDiagram
from .errors import (
    BadIndex,
    LengthMismatch,
    NonPlanar,
    NotAFace,
    TooLarge,
)

Atom = tuple
EdgeKey = tuple

_FLIP = {"L": "R", "R": "L"}


# ---------------------------------------------------------------------------
# resolutions of a diagram
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    """One traced circle.

    passages[i] = (crossing, enter_pos, exit_pos) sits between edges[i] and
    edges[i+1], cyclically.  Free loops have one synthetic edge and no
    passages.
    """

    edges: tuple[EdgeKey, ...]
    passages: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class Resolution:
    choice: tuple[int, ...]
    circles: tuple[Circle, ...]


def _smoothing_pairs(bit: int) -> dict[int, int]:
    if bit == 0:
        return {0: 1, 1: 0, 2: 3, 3: 2}
    return {0: 3, 3: 0, 1: 2, 2: 1}


def _canonical_circle(edges, passages) -> Circle:
    """Pick the lexicographically least rotation/direction of the traced data.

    Input arrays come from the trace with passages[i] just before edges[i];
    the stored convention puts passages[i] between edges[i] and edges[i+1].
    """
    m = len(edges)
    passages = tuple(passages[(i + 1) % m] for i in range(m))
    best = None
    for start in range(m):
        fwd = (tuple(edges[(start + i) % m] for i in range(m)),
               tuple(passages[(start + i) % m] for i in range(m)))
        if best is None or fwd < best:
            best = fwd
        rev = (tuple(edges[(start - i) % m] for i in range(m)),
               tuple((passages[(start - i - 1) % m][0],
                      passages[(start - i - 1) % m][2],
                      passages[(start - i - 1) % m][1]) for i in range(m)))
        if rev < best:
            best = rev
    return Circle(*best)


def resolve(d: PlanarDiagram, choice) -> Resolution:
    """Trace the circles of the resolution of d at the given bit vector."""
    choice = tuple(int(b) for b in choice)
    if len(choice) != d.n:
        raise LengthMismatch(f"choice length {len(choice)} != crossing count {d.n}")
    ends: dict[EdgeKey, list[tuple[int, int]]] = {}
    for ci, x in enumerate(d.crossings):
        for pos, lbl in enumerate(x):
            ends.setdefault(("e", lbl), []).append((ci, pos))
    pairing = [_smoothing_pairs(b) for b in choice]

    seen: set[tuple[int, int]] = set()
    circles: list[Circle] = []
    for start in sorted(ends):
        for start_end in ends[start]:
            if start_end in seen:
                continue
            edges: list[EdgeKey] = []
            passages: list[tuple[int, int, int]] = []
            cur = start_end
            while cur not in seen:
                ci, pos = cur
                seen.add(cur)
                out_pos = pairing[ci][pos]
                seen.add((ci, out_pos))
                passages.append((ci, pos, out_pos))
                out_lbl = ("e", d.crossings[ci][out_pos])
                edges.append(out_lbl)
                occ = ends[out_lbl]
                cur = occ[0] if occ[0] != (ci, out_pos) else occ[1]
            circles.append(_canonical_circle(tuple(edges), tuple(passages)))
    for i in range(d.free_loops):
        circles.append(Circle((("u", i),), ()))
    circles.sort(key=lambda c: min(c.edges))
    return Resolution(choice, tuple(circles))


# ---------------------------------------------------------------------------
# resolution configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResolutionConfiguration:
    """Disjoint circles with embedded surgery arcs."""

    circles: tuple[tuple[Atom, ...], ...]
    arcs: tuple[tuple[Atom, Atom], ...]
    sides: tuple[tuple[Atom, str], ...]

    @property
    def k(self) -> int:
        return len(self.arcs)

    @property
    def t(self) -> int:
        return len(self.circles)

    def side_map(self) -> dict[Atom, str]:
        return dict(self.sides)

    def slot_circle(self) -> dict[Atom, int]:
        return {a: ci for ci, w in enumerate(self.circles)
                for a in w if a[0] != "m"}

    def marker_circle(self) -> dict[Atom, int]:
        return {a: ci for ci, w in enumerate(self.circles)
                for a in w if a[0] == "m"}

    def slot_words(self) -> tuple[tuple[Atom, ...], ...]:
        return tuple(tuple(a for a in w if a[0] != "m") for w in self.circles)

    def passive_circles(self) -> tuple[int, ...]:
        return tuple(ci for ci, w in enumerate(self.slot_words()) if not w)


def make_configuration(slot_words, arcs, sides, validate: bool = True,
                       planar_check: bool = True) -> ResolutionConfiguration:
    """Build a configuration from slot-only words, inserting segment markers."""
    circles = []
    for ci, w in enumerate(slot_words):
        if not w:
            circles.append((("m", ("p", ci)),))
            continue
        word = []
        for gi, slot in enumerate(w):
            word.append(tuple(slot))
            word.append(("m", ("g", ci, gi)))
        circles.append(tuple(word))
    cfg = ResolutionConfiguration(
        tuple(circles),
        tuple(tuple(sorted((tuple(a), tuple(b)))) for a, b in arcs),
        tuple(sorted((tuple(k), v) for k, v in dict(sides).items())),
    )
    if validate:
        validate_configuration(cfg, planar_check=planar_check)
    return cfg


def validate_configuration(c: ResolutionConfiguration, planar_check: bool = True):
    slots = [a for w in c.circles for a in w if a[0] != "m"]
    if len(slots) != len(set(slots)):
        raise NonPlanar("repeated slot atom")
    arc_ends = [a for arc in c.arcs for a in arc]
    if sorted(arc_ends) != sorted(slots):
        raise NonPlanar("arc endpoints do not match circle slots exactly")
    side = c.side_map()
    if set(side) != set(slots):
        raise NonPlanar("side bits do not match slots")
    if any(v not in ("L", "R") for v in side.values()):
        raise NonPlanar("side bit must be 'L' or 'R'")
    if planar_check:
        check_planar(c)


# --- planarity via ribbon Euler characteristic ------------------------------

def _components(c: ResolutionConfiguration) -> list[tuple[set[int], set[int]]]:
    """Connected components (circle set, arc set) of the incidence graph.

    Only components containing at least one arc are returned; passive
    circles are classified separately.
    """
    slot_circ = c.slot_circle()
    parent = list(range(c.t))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q in c.arcs:
        a, b = find(slot_circ[p]), find(slot_circ[q])
        if a != b:
            parent[a] = b
    comp_arcs: dict[int, set[int]] = {}
    for ai, (p, _q) in enumerate(c.arcs):
        comp_arcs.setdefault(find(slot_circ[p]), set()).add(ai)
    comp_circles: dict[int, set[int]] = {}
    for ci in range(c.t):
        root = find(ci)
        if root in comp_arcs:
            comp_circles.setdefault(root, set()).add(ci)
    comps = [(comp_circles[r], comp_arcs[r]) for r in comp_arcs]
    comps.sort(key=lambda pair: min(pair[0]))
    return comps


def ribbon_euler_defects(c: ResolutionConfiguration) -> list[int]:
    """Per-component genus defect 2 - (V - E + F); all zero means planar."""
    side = c.side_map()
    words = c.slot_words()
    # darts at each slot: 0 incoming circle end, 1 outgoing, 2 arc end
    alpha: dict[tuple, tuple] = {}
    sigma: dict[tuple, tuple] = {}
    for w in words:
        m = len(w)
        for i, p in enumerate(w):
            nxt = w[(i + 1) % m]
            alpha[(p, 1)] = (nxt, 0)
            alpha[(nxt, 0)] = (p, 1)
            if side[p] == "L":
                sigma[(p, 1)] = (p, 2)
                sigma[(p, 2)] = (p, 0)
                sigma[(p, 0)] = (p, 1)
            else:
                sigma[(p, 1)] = (p, 0)
                sigma[(p, 0)] = (p, 2)
                sigma[(p, 2)] = (p, 1)
    for p, q in c.arcs:
        alpha[(p, 2)] = (q, 2)
        alpha[(q, 2)] = (p, 2)

    defects = []
    for circ_set, arc_set in _components(c):
        darts = [(p, j) for ci in circ_set for p in words[ci] for j in range(3)]
        nslots = sum(len(words[ci]) for ci in circ_set)
        V = nslots
        E = nslots + len(arc_set)
        seen: set[tuple] = set()
        F = 0
        for start in darts:
            if start in seen:
                continue
            F += 1
            cur = start
            while cur not in seen:
                seen.add(cur)
                cur = sigma[alpha[cur]]
        defects.append(2 - (V - E + F))
    return defects


def check_planar(c: ResolutionConfiguration):
    defects = ribbon_euler_defects(c)
    if any(dd != 0 for dd in defects):
        raise NonPlanar(f"ribbon genus defects per component: {defects}")


def is_planar(c: ResolutionConfiguration) -> bool:
    return all(dd == 0 for dd in ribbon_euler_defects(c))


# ---------------------------------------------------------------------------
# surgery
# ---------------------------------------------------------------------------

def _locate(words: list[list[Atom]], atom: Atom) -> tuple[int, int]:
    for ci, w in enumerate(words):
        for i, a in enumerate(w):
            if a == atom:
                return ci, i
    raise BadIndex(f"atom {atom} not found")


def _reversed_flipped(seg, sides):
    out = []
    for a in reversed(seg):
        if a in sides:
            sides[a] = _FLIP[sides[a]]
        out.append(a)
    return out


def _surger(words: list[list[Atom]], sides: dict[Atom, str], p: Atom, q: Atom,
            scars: tuple[Atom, Atom] | None):
    """Surger along the arc {p, q} in place.

    When `scars` is given, the two scar atoms are inserted where the band
    edges run; their side bits mark the dual-arc attachment.
    """
    ci, pi = _locate(words, p)
    cj, qj = _locate(words, q)
    sp, sq = sides.pop(p), sides.pop(q)
    s0, s1 = scars if scars else (None, None)
    if ci == cj:
        w = words[ci][pi:] + words[ci][:pi]
        qpos = w.index(q)
        A = w[1:qpos]
        B = w[qpos + 1:]
        if sp == sq:
            comp1 = A + ([s0] if scars else [])
            comp2 = B + ([s1] if scars else [])
            if scars:
                sides[s0] = _FLIP[sp]
                sides[s1] = _FLIP[sp]
            words[ci:ci + 1] = [comp1, comp2]
        else:
            # torus surgery on a non-planar configuration; count unchanged
            new = (A + ([s0] if scars else [])
                   + _reversed_flipped(B, sides) + ([s1] if scars else []))
            if scars:
                sides[s0] = sp
                sides[s1] = sq
            words[ci] = new
    else:
        wp = words[ci][pi:] + words[ci][:pi]
        wq = words[cj][qj:] + words[cj][:qj]
        A = wp[1:]
        B = wq[1:]
        middle = B if sp == sq else _reversed_flipped(B, sides)
        new = A + ([s0] if scars else []) + middle + ([s1] if scars else [])
        if scars:
            sides[s0] = _FLIP[sp]
            sides[s1] = _FLIP[sp]
        lo, hi = min(ci, cj), max(ci, cj)
        words[lo] = new
        del words[hi]


def surgery(c: ResolutionConfiguration, arc_index: int) -> ResolutionConfiguration:
    """Surger along one arc, keeping the remaining arcs."""
    if not 0 <= arc_index < c.k:
        raise BadIndex(f"arc index {arc_index} out of range")
    words = [list(w) for w in c.circles]
    sides = c.side_map()
    p, q = c.arcs[arc_index]
    _surger(words, sides, p, q, None)
    arcs = tuple(a for i, a in enumerate(c.arcs) if i != arc_index)
    return ResolutionConfiguration(
        tuple(tuple(w) for w in words), arcs, tuple(sorted(sides.items())))


@dataclass(frozen=True)
class EndingData:
    """Result of surgering along every arc of a configuration."""

    words: tuple[tuple[Atom, ...], ...]
    marker_to_end: tuple[tuple[Atom, int], ...]
    dual_arcs: tuple[tuple[Atom, Atom], ...]
    scar_sides: tuple[tuple[Atom, str], ...]

    @property
    def count(self) -> int:
        return len(self.words)

    def marker_map(self) -> dict[Atom, int]:
        return dict(self.marker_to_end)


@lru_cache(maxsize=None)
def ending_data(c: ResolutionConfiguration) -> EndingData:
    words = [list(w) for w in c.circles]
    sides = c.side_map()
    dual_arcs = []
    for i, (p, q) in enumerate(c.arcs):
        scars = (("d", i, 0), ("d", i, 1))
        _surger(words, sides, p, q, scars)
        dual_arcs.append(tuple(sorted(scars)))
    marker_to_end = tuple((a, ei) for ei, w in enumerate(words)
                          for a in w if a[0] == "m")
    return EndingData(tuple(tuple(w) for w in words), marker_to_end,
                      tuple(dual_arcs), tuple(sorted(sides.items())))


def ending_circle_count(c: ResolutionConfiguration) -> int:
    return ending_data(c).count


def mirror_configuration(c: ResolutionConfiguration) -> ResolutionConfiguration:
    """Reversal of all cyclic orders (side bits kept)."""
    return ResolutionConfiguration(
        tuple(tuple(reversed(w)) for w in c.circles), c.arcs, c.sides)


def dual_mirror(c: ResolutionConfiguration) -> ResolutionConfiguration:
    """Mirror of the dual configuration.

    Starting circles of the result are the ending circles of c in the same
    order; arc i of the result is the dual of arc i of c.
    """
    data = ending_data(c)
    cfg = ResolutionConfiguration(data.words, data.dual_arcs, data.scar_sides)
    return mirror_configuration(cfg)


def dual_mirror_data(c: ResolutionConfiguration):
    """dual_mirror(c) plus the ending->starting circle correspondence.

    Returns (config, end_to_start): ending circle j of dual_mirror(c)
    reassembles starting circle end_to_start[j] of c.
    """
    dm = dual_mirror(c)
    back = ending_data(dm)
    orig_marker_circle = c.marker_circle()
    end_to_start = []
    for ei in range(back.count):
        starts = {orig_marker_circle[a]
                  for a, e in back.marker_to_end
                  if e == ei and a in orig_marker_circle}
        if len(starts) != 1:
            raise NonPlanar("dual-of-dual circle has no unique starting circle")
        end_to_start.append(starts.pop())
    return dm, tuple(end_to_start)


# ---------------------------------------------------------------------------
# faces of the cube
# ---------------------------------------------------------------------------

def face_configuration(d: PlanarDiagram, u, v) -> ResolutionConfiguration:
    """Configuration of the cube face u -> v (u <= v coordinatewise)."""
    u = tuple(int(b) for b in u)
    v = tuple(int(b) for b in v)
    if len(u) != d.n or len(v) != d.n:
        raise LengthMismatch("choice vectors must have one bit per crossing")
    if any(ub > vb for ub, vb in zip(u, v)):
        raise NotAFace(f"{u} is not below {v}")
    active = {i for i in range(d.n) if u[i] != v[i]}
    res = resolve(d, u)
    words = []
    sides = {}
    for circ in res.circles:
        m = len(circ.passages)
        act_positions = [i for i in range(m) if circ.passages[i][0] in active]
        if not act_positions:
            words.append((("m", min(circ.edges)),))
            continue
        word: list[Atom] = []
        for idx, i in enumerate(act_positions):
            ci, enter, exit_ = circ.passages[i]
            pair = 0 if min(enter, exit_) <= 1 else 1
            slot = ("s", ci, pair)
            sides[slot] = "L" if enter < exit_ else "R"
            word.append(slot)
            nxt = act_positions[(idx + 1) % len(act_positions)]
            j = (i + 1) % m
            seg_edges = [circ.edges[j]]
            while j != nxt:
                j = (j + 1) % m
                seg_edges.append(circ.edges[j])
            word.append(("m", min(seg_edges)))
        words.append(tuple(word))
    arcs = tuple(tuple(sorted((("s", ci, 0), ("s", ci, 1))))
                 for ci in sorted(active))
    return ResolutionConfiguration(tuple(words), arcs, tuple(sorted(sides.items())))


def face_marker_edges(d: PlanarDiagram, u, v) -> dict[Atom, EdgeKey]:
    """Representative diagram edge for every marker of face_configuration."""
    cfg = face_configuration(d, u, v)
    return {a: a[1] for w in cfg.circles for a in w if a[0] == "m"}


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    circles: tuple[int, ...]
    arcs: tuple[int, ...]
    kind: str  # 'tree' | 'dual_tree' | 'neither'


@dataclass(frozen=True)
class Classification:
    components: tuple[Component, ...]
    passive_circles: tuple[int, ...]

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(comp.kind for comp in self.components)

    def is_tree_forest(self) -> bool:
        return all(comp.kind in ("tree", "dual_tree") for comp in self.components)


def classify(c: ResolutionConfiguration) -> Classification:
    marker_end = ending_data(c).marker_map()
    marker_circle = c.marker_circle()
    comps = []
    for circ_set, arc_set in _components(c):
        t_comp = len(circ_set)
        k_comp = len(arc_set)
        ends = {marker_end[m] for m, ci in marker_circle.items() if ci in circ_set}
        s_comp = len(ends)
        if t_comp == k_comp + 1 and s_comp == 1:
            kind = "tree"
        elif t_comp == 1 and s_comp == k_comp + 1:
            kind = "dual_tree"
        else:
            kind = "neither"
        comps.append(Component(tuple(sorted(circ_set)), tuple(sorted(arc_set)), kind))
    return Classification(tuple(comps), c.passive_circles())


# ---------------------------------------------------------------------------
# isomorphism and automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Symmetry:
    """A combinatorial equivalence, recorded as the permutations it induces
    on starting circles, arcs, and ending circles (index i maps to perm[i])."""

    circle_perm: tuple[int, ...]
    arc_perm: tuple[int, ...]
    end_perm: tuple[int, ...]


def _word_alignments(w1, sides1, w2, sides2):
    """Slot bijections of cyclic word w1 onto w2.

    Yields (mapping, character, reversed) triples.  Character +1 preserves
    the local rotation system at every slot (order and bits both kept, or
    both reversed), character -1 reverses it.
    """
    m = len(w1)
    if m != len(w2):
        return
    for r in range(m):
        fwd = {w1[i]: w2[(i + r) % m] for i in range(m)}
        if all(sides1[a] == sides2[b] for a, b in fwd.items()):
            yield fwd, +1, False
        if all(sides1[a] != sides2[b] for a, b in fwd.items()):
            yield fwd, -1, False
        rev = {w1[i]: w2[(r - i) % m] for i in range(m)}
        if all(sides1[a] != sides2[b] for a, b in rev.items()):
            yield rev, +1, True
        if all(sides1[a] == sides2[b] for a, b in rev.items()):
            yield rev, -1, True


def _circle_gaps(word):
    """Markers grouped by the slot they follow (None key: passive circle)."""
    slots = [a for a in word if a[0] != "m"]
    if not slots:
        return {None: list(word)}
    i0 = next(i for i, a in enumerate(word) if a[0] != "m")
    rot = word[i0:] + word[:i0]
    out: dict = {}
    cur = None
    for a in rot:
        if a[0] != "m":
            cur = a
            out[cur] = []
        else:
            out[cur].append(a)
    return out


def _gap_map(word1, word2, slot_map, reversed_dir):
    """Map each marker of word1 to a representative marker of its image gap.

    Gaps survive surgery intact, so a representative suffices to identify
    ending circles.
    """
    g1, g2 = _circle_gaps(word1), _circle_gaps(word2)
    out = {}
    if None in g1:
        rep = g2[None][0]
        for a in g1[None]:
            out[a] = rep
        return out
    slots1 = [a for a in word1 if a[0] != "m"]
    n = len(slots1)
    for i, s in enumerate(slots1):
        if not reversed_dir or n == 1:
            img_gap = g2[slot_map[s]]
        else:
            img_gap = g2[slot_map[slots1[(i + 1) % n]]]
        rep = img_gap[0]
        for a in g1[s]:
            out[a] = rep
    return out


class _EnoughFound(Exception):
    pass


def find_isomorphisms(c1: ResolutionConfiguration, c2: ResolutionConfiguration,
                      max_count: int | None = None,
                      circle_bound: int = 12) -> list[Symmetry]:
    """Combinatorial equivalences of c1 onto c2.

    A valid equivalence either preserves the rotation system at every slot or
    reverses it at every slot (the mirror, which the sphere convention counts
    as well).  Deduplicated at the (circle, arc, ending) permutation level.
    """
    if c1.t > circle_bound or c2.t > circle_bound:
        raise TooLarge(f"circle count exceeds bound {circle_bound}")
    if c1.t != c2.t or c1.k != c2.k:
        return []
    w1, w2 = c1.slot_words(), c2.slot_words()
    sides1, sides2 = c1.side_map(), c2.side_map()
    act1 = [i for i in range(c1.t) if w1[i]]
    act2 = [i for i in range(c2.t) if w2[i]]
    pas1 = [i for i in range(c1.t) if not w1[i]]
    pas2 = [i for i in range(c2.t) if not w2[i]]
    if len(act1) != len(act2):
        return []
    arc_index1 = {arc: i for i, arc in enumerate(c1.arcs)}
    arc_index2 = {arc: i for i, arc in enumerate(c2.arcs)}
    slot_circ1 = c1.slot_circle()
    slot_circ2 = c2.slot_circle()
    end1 = ending_data(c1)
    end2 = ending_data(c2)
    e2map = end2.marker_map()

    found: set[Symmetry] = set()
    order1 = sorted(act1, key=lambda i: (-len(w1[i]), i))

    def emit(slot_map, dirs):
        arc_perm = [None] * c1.k
        for arc, ai in arc_index1.items():
            img = tuple(sorted((slot_map[arc[0]], slot_map[arc[1]])))
            if img not in arc_index2:
                return
            arc_perm[ai] = arc_index2[img]
        if len(set(arc_perm)) != c1.k:
            return
        circle_perm = [None] * c1.t
        for s, s2 in slot_map.items():
            circle_perm[slot_circ1[s]] = slot_circ2[s2]
        marker_map = {}
        for i in order1:
            j = circle_perm[i]
            marker_map.update(
                _gap_map(c1.circles[i], c2.circles[j], slot_map, dirs[i]))
        for sub in itertools.permutations(pas2, len(pas1)):
            cp = list(circle_perm)
            mm = dict(marker_map)
            for a, b in zip(pas1, sub):
                cp[a] = b
                mm[c1.circles[a][0]] = c2.circles[b][0]
            end_perm: list = [None] * end1.count
            ok = True
            for m_at, e in end1.marker_to_end:
                tgt = e2map[mm[m_at]]
                if end_perm[e] is None:
                    end_perm[e] = tgt
                elif end_perm[e] != tgt:
                    ok = False
                    break
            if not ok or None in end_perm or len(set(end_perm)) != end1.count:
                continue
            found.add(Symmetry(tuple(cp), tuple(arc_perm), tuple(end_perm)))
            if max_count is not None and len(found) >= max_count:
                raise _EnoughFound

    def backtrack(idx, used, slot_map, dirs, char):
        if idx == len(order1):
            emit(slot_map, dirs)
            return
        i = order1[idx]
        for j in act2:
            if j in used or len(w2[j]) != len(w1[i]):
                continue
            for mapping, ch, rev in _word_alignments(w1[i], sides1, w2[j], sides2):
                if char is not None and ch != char:
                    continue
                new_map = dict(slot_map)
                new_map.update(mapping)
                ok = True
                for arc in c1.arcs:
                    ia, ib = new_map.get(arc[0]), new_map.get(arc[1])
                    if ia is None or ib is None:
                        continue
                    if tuple(sorted((ia, ib))) not in arc_index2:
                        ok = False
                        break
                if not ok:
                    continue
                new_dirs = dict(dirs)
                new_dirs[i] = rev
                backtrack(idx + 1, used | {j}, new_map, new_dirs,
                          char if char is not None else ch)

    if not order1:
        for sub in itertools.permutations(pas2, len(pas1)):
            found.add(Symmetry(tuple(sub), (), tuple(sub)))
    else:
        try:
            backtrack(0, frozenset(), {}, {}, None)
        except _EnoughFound:
            pass
    return sorted(found, key=lambda s: (s.circle_perm, s.arc_perm, s.end_perm))


def is_isomorphic(c1, c2, circle_bound: int = 12) -> bool:
    return bool(find_isomorphisms(c1, c2, max_count=1, circle_bound=circle_bound))


def automorphisms(c: ResolutionConfiguration, circle_bound: int = 12) -> list[Symmetry]:
    """All symmetries of c; contains the identity, closed under composition."""
    return find_isomorphisms(c, c, circle_bound=circle_bound)


# ---------------------------------------------------------------------------
# configurations to diagrams
# ---------------------------------------------------------------------------

def configuration_to_diagram(c: ResolutionConfiguration,
                             name: str = "") -> PlanarDiagram:
    """Realize a configuration as a diagram.

    Arc i becomes crossing i; the 0-resolution reproduces the starting
    circles and the full face reproduces the configuration up to isomorphism.
    """
    check_planar(c)
    words = c.slot_words()
    side = c.side_map()
    label = 0
    in_edge: dict[Atom, int] = {}
    out_edge: dict[Atom, int] = {}
    free_loops = 0
    for w in words:
        if not w:
            free_loops += 1
            continue
        for i, slot in enumerate(w):
            label += 1
            out_edge[slot] = label
            in_edge[w[(i + 1) % len(w)]] = label
    crossings = []
    for p, q in c.arcs:
        ab = (in_edge[p], out_edge[p]) if side[p] == "L" else (out_edge[p], in_edge[p])
        cd = (in_edge[q], out_edge[q]) if side[q] == "L" else (out_edge[q], in_edge[q])
        crossings.append(ab + cd)
    return PlanarDiagram(tuple(crossings), free_loops, name)


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------

def config_to_json(c: ResolutionConfiguration) -> str:
    words = c.slot_words()
    side = c.side_map()
    next_id = 0
    circles = []
    pos = {}
    for ci, w in enumerate(words):
        row = []
        for i, slot in enumerate(w):
            row.append(next_id)
            next_id += 1
            pos[slot] = (ci, i)
        circles.append(row)
    arcs = [{"ends": [[pos[p][0], pos[p][1], side[p]],
                      [pos[q][0], pos[q][1], side[q]]]}
            for p, q in c.arcs]
    return json.dumps({"circles": circles, "arcs": arcs})


def config_from_json(text: str) -> ResolutionConfiguration:
    obj = json.loads(text)
    slot_words = []
    for ci, w in enumerate(obj["circles"]):
        slot_words.append(tuple(("s", ci, i) for i in range(len(w))))
    arcs = []
    sides = {}
    for arc in obj["arcs"]:
        (c0, p0, s0), (c1, p1, s1) = arc["ends"]
        a0, a1 = ("s", c0, p0), ("s", c1, p1)
        sides[a0] = s0
        sides[a1] = s1
        arcs.append((a0, a1))
    if sum(len(w) for w in slot_words) != 2 * len(arcs):
        raise NonPlanar("slot count must be twice the arc count")
    return make_configuration(slot_words, arcs, sides)
