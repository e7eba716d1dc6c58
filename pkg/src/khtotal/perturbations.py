"""Edge maps and perturbation terms on the cube of resolutions.

Two kinds of edge map live on a resolution configuration:

* the Frobenius differential on 1-dimensional configurations
  (merge: 11->1, 1x->x, x1->x, xx->0; split: 1->1x+x1, x->xx),
* the tree/dual-tree map on k-dimensional configurations
  (tree: product of all starting circles -> ending circle; dual tree:
  1 -> 1x...x1; zero unless every active component is a tree or dual tree),

both extended identically over passive circles.  Summing the latter over all
faces of Hamming distance i yields the degree-(i, 2i) perturbation term h_i;
summing the former over edges yields the differential d_1.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .cube import (
    ResolutionConfiguration,
    classify,
    ending_data,
    face_configuration,
    resolve,
)
from .diagram import PlanarDiagram, writhe_counts
from .errors import FixtureRangeError, TooLarge, WrongDimension
from .f2linalg import (
    BigradedMap,
    Bigrading,
    DirectSumBasis,
    HomologyTable,
    MonomialBasis,
    add,
    basis_of,
    compose,
    homology_ranks,
    popcount,
)


@dataclass(frozen=True)
class CoefficientLabel:
    """Formal coefficient H^h W^w; H has bidegree (0,-2), W has (-1,-2)."""

    h_power: int = 0
    w_power: int = 0

    def total_bidegree(self, internal: Bigrading) -> Bigrading:
        return Bigrading(internal.gr_h - self.w_power,
                         internal.gr_q - 2 * self.h_power - 2 * self.w_power)


def _passive_end_map(c: ResolutionConfiguration) -> dict[int, int]:
    """Ending-circle index of each passive starting circle."""
    marker_end = ending_data(c).marker_map()
    return {ci: marker_end[c.circles[ci][0]] for ci in c.passive_circles()}


def _component_ends(c: ResolutionConfiguration, circles) -> list[int]:
    """Ending-circle indices reassembled from the given starting circles."""
    marker_end = ending_data(c).marker_map()
    marker_circle = c.marker_circle()
    return sorted({marker_end[m] for m, ci in marker_circle.items()
                   if ci in circles})


def _passive_patterns(passive: dict[int, int]):
    items = sorted(passive.items())
    for pset in range(1 << len(items)):
        in_p = 0
        out_p = 0
        for bit, (ci, ei) in enumerate(items):
            if (pset >> bit) & 1:
                in_p |= 1 << ci
                out_p |= 1 << ei
        yield in_p, out_p


def khovanov_d1(c: ResolutionConfiguration) -> BigradedMap:
    """Frobenius edge map of a 1-dimensional configuration, bidegree (1, 0)."""
    if c.k != 1:
        raise WrongDimension(f"configuration has dimension {c.k}, expected 1")
    dom = basis_of(c, "start")
    cod = basis_of(c, "end")
    (comp,) = classify(c).components
    active = list(comp.circles)
    passive = _passive_end_map(c)
    if len(active) == 2:  # merge: 11 -> 1, 1x -> x, x1 -> x, xx -> 0
        i, j = active
        (y,) = _component_ends(c, active)
        patterns = [(0, 0), (1 << i, 1 << y), (1 << j, 1 << y)]
    else:  # split: 1 -> 1x + x1, x -> xx
        (i,) = active
        y1, y2 = _component_ends(c, active)
        patterns = [(0, 1 << y1), (0, 1 << y2),
                    (1 << i, (1 << y1) | (1 << y2))]
    entries = [(a | in_p, b | out_p)
               for in_p, out_p in _passive_patterns(passive)
               for a, b in patterns]
    return BigradedMap.from_pairs(dom, cod, Bigrading(1, 0), entries)


def sss_map(c: ResolutionConfiguration) -> BigradedMap:
    """Tree/dual-tree edge map of a k-dimensional configuration, k >= 1.

    Zero unless every active component is a tree or a dual tree; otherwise
    the tensor of the component maps extended identically over passive
    circles.  Bidegree (k, 2k).
    """
    k = c.k
    dom = basis_of(c, "start")
    cod = basis_of(c, "end")
    bideg = Bigrading(k, 2 * k)
    cls = classify(c)
    if not cls.is_tree_forest():
        return BigradedMap(dom, cod, bideg, frozenset())
    in_active = 0
    out_active = 0
    for comp in cls.components:
        if comp.kind == "tree":
            for ci in comp.circles:
                in_active |= 1 << ci
            (y,) = _component_ends(c, set(comp.circles))
            out_active |= 1 << y
        # dual tree: input factor 1, output the all-1 monomial: no bits
    entries = [(in_active | in_p, out_active | out_p)
               for in_p, out_p in _passive_patterns(_passive_end_map(c))]
    return BigradedMap.from_pairs(dom, cod, bideg, entries)


# ---------------------------------------------------------------------------
# the cube complex
# ---------------------------------------------------------------------------

def _vertex_bits(u: int, n: int) -> tuple[int, ...]:
    return tuple((u >> i) & 1 for i in range(n))


class CubeComplex:
    """Chain groups and assembled perturbation terms of a diagram's cube."""

    def __init__(self, d: PlanarDiagram, max_crossings: int = 12):
        if d.n > max_crossings:
            raise TooLarge(f"{d.n} crossings exceeds bound {max_crossings}")
        self.diagram = d
        self.n = d.n
        self._res = {}
        self._face = {}
        self._levels = {}

    def resolution(self, u: int):
        if u not in self._res:
            self._res[u] = resolve(self.diagram, _vertex_bits(u, self.n))
        return self._res[u]

    def vertices(self, level: int) -> list[int]:
        return [u for u in range(1 << self.n) if popcount(u) == level]

    def level_basis(self, level: int) -> DirectSumBasis:
        if level not in self._levels:
            blocks = []
            for u in self.vertices(level):
                ncirc = len(self.resolution(u).circles)
                blocks.append((u, MonomialBasis(tuple(range(ncirc)),
                                                h_base=level, q_shift=level)))
            self._levels[level] = DirectSumBasis(tuple(blocks))
        return self._levels[level]

    def _end_to_vertex_perm(self, cfg, u: int, v: int) -> list[int]:
        """Match the configuration's ending circles with resolve(v)'s circles."""
        data = ending_data(cfg)
        res_v = self.resolution(v)
        edge_to_idx = {}
        for vi, circ in enumerate(res_v.circles):
            for e in circ.edges:
                edge_to_idx[e] = vi
        perm = []
        for ei, w in enumerate(data.words):
            targets = {edge_to_idx[a[1]] for a in w if a[0] == "m"}
            if len(targets) != 1:
                raise AssertionError("ending circle does not match one v-circle")
            perm.append(targets.pop())
        return perm

    def face_map(self, u: int, v: int, kind: str) -> list[tuple]:
        """Entries of the lifted face map as ((u, bits), (v, bits)) pairs."""
        key = (u, v, kind)
        if key in self._face:
            return self._face[key]
        cfg = face_configuration(self.diagram, _vertex_bits(u, self.n),
                                 _vertex_bits(v, self.n))
        fmap = khovanov_d1(cfg) if kind == "d1" else sss_map(cfg)
        perm = self._end_to_vertex_perm(cfg, u, v)
        out = []
        for a, b in fmap.entries:
            b2 = 0
            for ei, vi in enumerate(perm):
                if (b >> ei) & 1:
                    b2 |= 1 << vi
            out.append(((u, a), (v, b2)))
        self._face[key] = out
        return out

    def assemble_term(self, kind: str, i: int = 1) -> "CubeMapFamily":
        """Sum of edge maps over all faces of Hamming distance i.

        kind 'd1' uses the Frobenius map (i must be 1, label H^0 W^0); kind
        'h' uses the tree/dual-tree map (label H^1 W^(i-1)).
        """
        if kind == "d1":
            if i != 1:
                raise ValueError("d1 is a sum over 1-dimensional faces only")
            label = CoefficientLabel(0, 0)
            internal = Bigrading(1, 0)
        elif kind == "h":
            label = CoefficientLabel(1, i - 1)
            internal = Bigrading(i, 2 * i)
        else:
            raise ValueError(f"unknown term kind {kind!r}")
        maps = {}
        for level in range(0, self.n - i + 1):
            dom = self.level_basis(level)
            cod = self.level_basis(level + i)
            pairs = []
            for u in self.vertices(level):
                free = [b for b in range(self.n) if not (u >> b) & 1]
                for subset in combinations(free, i):
                    v = u
                    for b in subset:
                        v |= 1 << b
                    pairs.extend(self.face_map(u, v, kind))
            maps[level] = BigradedMap.from_pairs(dom, cod, internal, pairs)
        return CubeMapFamily(self, internal, label, maps)


@dataclass(frozen=True)
class CubeMapFamily:
    """A perturbation term: one bigraded map per homological level."""

    cube: CubeComplex
    internal_bidegree: Bigrading
    label: CoefficientLabel
    maps: dict

    def level(self, j: int) -> BigradedMap | None:
        return self.maps.get(j)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def first_entry(self):
        for j in sorted(self.maps):
            e = self.maps[j].first_entry()
            if e is not None:
                return e
        return None

    def apply(self, key) -> frozenset:
        u = key[0]
        j = popcount(u)
        f = self.maps.get(j)
        if f is None:
            return frozenset()
        return f.apply(key)

    def apply_chain(self, keys) -> frozenset:
        out: set = set()
        for k in keys:
            out ^= self.apply(k)
        return frozenset(out)

    def compose_with(self, other: "CubeMapFamily") -> "CubeMapFamily":
        """self after other."""
        shift = other.internal_bidegree.gr_h
        maps = {}
        for j, f in other.maps.items():
            g = self.maps.get(j + shift)
            if g is None:
                continue
            maps[j] = compose(g, f)
        return CubeMapFamily(self.cube, other.internal_bidegree + self.internal_bidegree,
                             CoefficientLabel(self.label.h_power + other.label.h_power,
                                              self.label.w_power + other.label.w_power),
                             maps)

    def plus(self, other: "CubeMapFamily") -> "CubeMapFamily":
        if self.internal_bidegree != other.internal_bidegree:
            raise ValueError("cannot add terms of different internal bidegree")
        maps = {}
        for j in set(self.maps) | set(other.maps):
            a, b = self.maps.get(j), other.maps.get(j)
            maps[j] = a if b is None else b if a is None else add(a, b)
        return CubeMapFamily(self.cube, self.internal_bidegree, self.label, maps)

    def bracket_with(self, other: "CubeMapFamily") -> "CubeMapFamily":
        """Commutator self*other + other*self."""
        return self.compose_with(other).plus(other.compose_with(self))


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

IDENTITIES = ("d1_squared", "h1_squared", "d1h1", "h1h2", "h1h3_h2sq")


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    status: str
    witness: tuple | None
    elapsed_ms: int

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> str:
        w = None
        if self.witness is not None:
            (u, a), (v, b) = self.witness
            w = {"from": [u, a], "to": [v, b]}
        return json.dumps({"identity": self.identity, "status": self.status,
                           "witness": w, "elapsed_ms": self.elapsed_ms})


def check_identity(d: PlanarDiagram, which: str,
                   max_crossings: int = 8) -> IdentityReport:
    """Verify one of the differential identities exactly on the whole cube."""
    if which not in IDENTITIES:
        raise ValueError(f"unknown identity {which!r}")
    start = time.monotonic()
    cube = CubeComplex(d, max_crossings=max_crossings)
    d1 = cube.assemble_term("d1")
    if which == "d1_squared":
        total = d1.compose_with(d1)
    elif which == "h1_squared":
        h1 = cube.assemble_term("h", 1)
        total = h1.compose_with(h1)
    elif which == "d1h1":
        h1 = cube.assemble_term("h", 1)
        total = d1.bracket_with(h1)
    elif which == "h1h2":
        h1 = cube.assemble_term("h", 1)
        h2 = cube.assemble_term("h", 2)
        total = h1.bracket_with(h2)
    else:  # h1h3_h2sq
        h1 = cube.assemble_term("h", 1)
        h2 = cube.assemble_term("h", 2)
        h3 = cube.assemble_term("h", 3)
        total = h1.bracket_with(h3).plus(h2.compose_with(h2))
    witness = total.first_entry()
    elapsed = int((time.monotonic() - start) * 1000)
    status = "pass" if witness is None else "fail"
    return IdentityReport(which, status, witness, elapsed)


# ---------------------------------------------------------------------------
# element-level computations on the figure fixtures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaReport:
    name: str
    params: tuple
    passed: bool
    details: tuple

    def to_json(self) -> str:
        return json.dumps({"lemma": self.name, "params": list(self.params),
                           "status": "pass" if self.passed else "fail",
                           "details": list(self.details)})


def _all_x(cube: CubeComplex, u: int, circles=None):
    res = cube.resolution(u)
    if circles is None:
        bits = (1 << len(res.circles)) - 1
    else:
        bits = 0
        for c in circles:
            bits |= 1 << c
    return (u, bits)


def _contributions(first: CubeMapFamily, second: CubeMapFamily, key):
    """Decompose (second after first)(key) by intermediate vertex."""
    mid = first.apply(key)
    by_vertex: dict[int, set] = {}
    for m in mid:
        by_vertex.setdefault(m[0], set()).add(m)
    out = {}
    for v, keys in sorted(by_vertex.items()):
        img = second.apply_chain(keys)
        out[v] = img
    total: set = set()
    for img in out.values():
        total ^= img
    return frozenset(total), {v: frozenset(img) for v, img in out.items()}


def lemma_check(which: str, **params) -> LemmaReport:
    """Run one of the element computations on its figure fixture."""
    from . import fixtures  # deferred: fixtures builds diagrams, no cycle at import

    if which == "lemma35":
        n = params.get("n")
        if n is None or n < 2:
            raise FixtureRangeError("lemma35 requires n >= 2")
        d = fixtures.figure4(n)
        cube = CubeComplex(d)
        d1 = cube.assemble_term("d1")
        hn = cube.assemble_term("h", n)
        I = 0
        K = (1 << (n + 1)) - 1
        x = _all_x(cube, I)
        hd, _ = _contributions(d1, hn, x)
        dh, _ = _contributions(hn, d1, x)
        expected = {_all_x(cube, K)}
        ok = (hd == frozenset()) and (dh == frozenset(expected))
        details = (f"(h_{n} d1)(x...x) = {sorted(hd)}",
                   f"(d1 h_{n})(x...x) = {sorted(dh)}, expected {sorted(expected)}")
        return LemmaReport("lemma35", (n,), ok, details)

    if which == "lemma36":
        k, l = params.get("k"), params.get("l")
        if not k or not l or k < 1 or l < 1:
            raise FixtureRangeError("lemma36 requires k, l >= 1")
        d = fixtures.figure5(k, l)
        cube = CubeComplex(d)
        d1 = cube.assemble_term("d1")
        h = cube.assemble_term("h", k + l)
        I = 0
        K = (1 << (k + l + 1)) - 1
        x = _all_x(cube, I)
        hd, _ = _contributions(d1, h, x)
        dh, _ = _contributions(h, d1, x)
        expected = frozenset({_all_x(cube, K)})
        ok = hd == expected and dh == expected
        details = (f"(h d1)(x...x) = {sorted(hd)}",
                   f"(d1 h)(x...x) = {sorted(dh)}",
                   f"expected {sorted(expected)}; commutator vanishes: {hd == dh}")
        return LemmaReport("lemma36", (k, l), ok, details)

    if which == "lemma38":
        k, l = params.get("k"), params.get("l")
        if not k or not l or k < 1 or l < 1:
            raise FixtureRangeError("lemma38 requires k, l >= 1")
        d, tree_circles = fixtures.figure6_with_tree_circles(k, l)
        cube = CubeComplex(d)
        d1 = cube.assemble_term("d1")
        h = cube.assemble_term("h", k + l)
        I = 0
        K = (1 << (k + l + 1)) - 1
        x = (I, sum(1 << c for c in tree_circles))
        hd, hd_by = _contributions(d1, h, x)
        dh, dh_by = _contributions(h, d1, x)
        expected_bits = fixtures.figure6_expected_output(cube, K, tree_circles)
        expected = frozenset({(K, expected_bits)})
        J1 = 0b10  # only the degree-one arc resolved
        J2 = ((1 << (k + l + 1)) - 1) ^ 0b1  # everything except the joining arc
        hd_faces = sorted(v for v, img in hd_by.items() if img)
        dh_faces = sorted(v for v, img in dh_by.items() if img)
        ok = (hd == expected and dh == expected
              and hd_faces == [J1] and dh_faces == [J2])
        details = (f"(h d1) = {sorted(hd)} via vertices {hd_faces} (want [{J1}])",
                   f"(d1 h) = {sorted(dh)} via vertices {dh_faces} (want [{J2}])",
                   f"expected {sorted(expected)}")
        return LemmaReport("lemma38", (k, l), ok, details)

    raise FixtureRangeError(f"unknown lemma check {which!r}")


# ---------------------------------------------------------------------------
# Khovanov homology and the bracket oracle
# ---------------------------------------------------------------------------

def khovanov_homology(d: PlanarDiagram, max_crossings: int = 10,
                      normalized: bool = False) -> HomologyTable:
    """Homology of the d1 complex over GF(2), per (gr_h, gr_q)."""
    if d.n > max_crossings:
        raise TooLarge(f"{d.n} crossings exceeds bound {max_crossings}")
    cube = CubeComplex(d, max_crossings=max_crossings)
    d1 = cube.assemble_term("d1")
    diffs = [d1.maps[j] for j in range(d.n)] if d.n else []
    groups = [cube.level_basis(j) for j in range(d.n + 1)]
    table = homology_ranks(diffs, groups=groups)
    if normalized:
        n_plus, n_minus = writhe_counts(d)
        table = table.normalized(n_plus, n_minus)
    return table


def kauffman_bracket(d: PlanarDiagram) -> dict[int, int]:
    """Kauffman bracket as a Laurent polynomial in A (exponent -> coefficient).

    Computed by the recursive skein expansion on diagrams, independently of
    the cube machinery: <X> = A <0-smoothing> + A^-1 <1-smoothing>,
    <L u U> = (-A^2 - A^-2) <L>, <U> = 1.
    """
    def smooth(crossings, idx, which):
        a, b, cc, dd = crossings[idx]
        rest = crossings[:idx] + crossings[idx + 1:]
        pairs = ((a, b), (cc, dd)) if which == 0 else ((a, dd), (b, cc))
        loops = 0
        remap = {}

        def find(x):
            while x in remap:
                x = remap[x]
            return x

        for x, y in pairs:
            rx, ry = find(x), find(y)
            if rx == ry:
                loops += 1
            else:
                remap[rx] = ry
        rest = tuple(tuple(find(lbl) for lbl in x) for x in rest)
        return rest, loops

    def mul_delta(poly):
        out = {}
        for e, coef in poly.items():
            out[e + 2] = out.get(e + 2, 0) - coef
            out[e - 2] = out.get(e - 2, 0) - coef
        return {e: c for e, c in out.items() if c}

    @lru_cache(maxsize=None)
    def go(crossings, loops):
        if not crossings:
            poly = {0: 1}
            for _ in range(loops - 1):
                poly = mul_delta(poly)
            return tuple(sorted(poly.items()))
        r0, l0 = smooth(crossings, 0, 0)
        r1, l1 = smooth(crossings, 0, 1)
        p0 = dict(go(r0, loops + l0))
        p1 = dict(go(r1, loops + l1))
        out = {}
        for e, c in p0.items():
            out[e + 1] = out.get(e + 1, 0) + c
        for e, c in p1.items():
            out[e - 1] = out.get(e - 1, 0) + c
        return tuple(sorted((e, c) for e, c in out.items() if c))

    total_loops = d.free_loops if d.crossings else d.free_loops
    return dict(go(d.crossings, total_loops))


def bracket_matches_euler(d: PlanarDiagram, table: HomologyTable) -> bool:
    """Graded Euler characteristic of the unnormalized table vs the bracket.

    With t = A^-2, the bracket is A^n P(t) and the cube's graded Euler
    characteristic satisfies chi(q) = (q + q^-1) P(-q).
    """
    bracket = kauffman_bracket(d)
    n = d.n
    p = {}
    for e, coef in bracket.items():
        if (n - e) % 2 != 0:
            return False
        p[(n - e) // 2] = coef
    # chi_from_bracket(q) = (q + 1/q) * P(-q)
    chi_b: dict[int, int] = {}
    for j, coef in p.items():
        signed = coef * ((-1) ** (j % 2))
        for dq in (1, -1):
            chi_b[j + dq] = chi_b.get(j + dq, 0) + signed
    chi_b = {q: c for q, c in chi_b.items() if c}
    return chi_b == table.graded_euler()
