"""Bigraded GF(2) vector spaces on monomial bases and sparse maps.

A monomial over a circle set is a bitset: bit set means the factor x on that
circle, clear means the factor 1.  gr_q(1) = +1 and gr_q(x) = -1 per circle,
plus the basis' normalization offset q_shift.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable

from . import _gf2
from .cube import ResolutionConfiguration, ending_circle_count
from .errors import BasisMismatch, CircleCollision, NotAComplex


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Bigrading:
    gr_h: int
    gr_q: int

    def __add__(self, other: "Bigrading") -> "Bigrading":
        return Bigrading(self.gr_h + other.gr_h, self.gr_q + other.gr_q)

    def as_tuple(self) -> tuple[int, int]:
        return (self.gr_h, self.gr_q)


@dataclass(frozen=True)
class MonomialBasis:
    """Tensor product of one rank-2 factor per circle."""

    circles: tuple[Hashable, ...]
    h_base: int = 0
    q_shift: int = 0

    @property
    def dim(self) -> int:
        return 1 << len(self.circles)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.circles)) - 1

    def keys(self):
        return range(self.dim)

    def gr_q(self, bits: int) -> int:
        return len(self.circles) - 2 * popcount(bits) + self.q_shift

    def gr_h(self, bits: int) -> int:
        return self.h_base

    def star(self, bits: int) -> int:
        """Duality on monomials: swap the factors 1 and x on every circle."""
        return self.full_mask ^ bits


def star(basis: MonomialBasis, bits: int) -> int:
    return basis.star(bits)


@dataclass(frozen=True)
class DirectSumBasis:
    """Direct sum of labelled monomial bases (e.g. one block per cube vertex)."""

    blocks: tuple[tuple[Hashable, MonomialBasis], ...]

    def block(self, label) -> MonomialBasis:
        for lab, b in self.blocks:
            if lab == label:
                return b
        raise KeyError(label)

    def keys(self):
        for lab, b in self.blocks:
            for bits in b.keys():
                yield (lab, bits)

    def gr_q(self, key) -> int:
        lab, bits = key
        return self.block(lab).gr_q(bits)

    def gr_h(self, key) -> int:
        lab, bits = key
        return self.block(lab).h_base

    @property
    def dim(self) -> int:
        return sum(b.dim for _, b in self.blocks)


def basis_of(c: ResolutionConfiguration, side: str) -> MonomialBasis:
    """Monomial basis on the starting or ending circles of a configuration.

    The ending side's quantum grading is shifted up by the dimension k, the
    normalization that makes the edge maps sit in bidegree (1, 0).
    """
    if side == "start":
        return MonomialBasis(tuple(range(c.t)), h_base=0, q_shift=0)
    if side == "end":
        s = ending_circle_count(c)
        return MonomialBasis(tuple(range(s)), h_base=c.k, q_shift=c.k)
    raise ValueError(f"side must be 'start' or 'end', got {side!r}")


@dataclass(frozen=True)
class BigradedMap:
    """Sparse GF(2)-linear map between monomial-type bases.

    Entries are (input key, output key) pairs with coefficient 1; inserting a
    pair twice cancels.  Every entry must respect the declared bidegree.
    """

    domain: object
    codomain: object
    bidegree: Bigrading
    entries: frozenset

    def __post_init__(self):
        for a, b in self.entries:
            dh = self.codomain.gr_h(b) - self.domain.gr_h(a)
            dq = self.codomain.gr_q(b) - self.domain.gr_q(a)
            if (dh, dq) != self.bidegree.as_tuple():
                raise BasisMismatch(
                    f"entry {a}->{b} has bidegree ({dh},{dq}), "
                    f"declared {self.bidegree.as_tuple()}")

    @staticmethod
    def from_pairs(domain, codomain, bidegree, pairs) -> "BigradedMap":
        acc: set = set()
        for pair in pairs:
            pair = tuple(pair)
            if pair in acc:
                acc.discard(pair)
            else:
                acc.add(pair)
        return BigradedMap(domain, codomain, bidegree, frozenset(acc))

    def is_zero(self) -> bool:
        return not self.entries

    def apply(self, key) -> frozenset:
        return frozenset(b for a, b in self.entries if a == key)

    def apply_set(self, keys) -> frozenset:
        out: set = set()
        for a, b in self.entries:
            if a in keys:
                out.symmetric_difference_update([b])
        return frozenset(out)

    def first_entry(self):
        return min(self.entries) if self.entries else None

    def to_json(self) -> str:
        return json.dumps({
            "bidegree": list(self.bidegree.as_tuple()),
            "entries": sorted([list(a) if isinstance(a, tuple) else a,
                               list(b) if isinstance(b, tuple) else b]
                              for a, b in self.entries),
        })


def zero_map(domain, codomain, bidegree: Bigrading) -> BigradedMap:
    return BigradedMap(domain, codomain, bidegree, frozenset())


def identity_map(basis: MonomialBasis) -> BigradedMap:
    return BigradedMap(basis, basis, Bigrading(0, 0),
                       frozenset((k, k) for k in basis.keys()))


def add(f: BigradedMap, g: BigradedMap) -> BigradedMap:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise BasisMismatch("add requires identical domain and codomain")
    if f.bidegree != g.bidegree:
        raise BasisMismatch("add requires equal bidegrees")
    return BigradedMap(f.domain, f.codomain, f.bidegree,
                       f.entries ^ g.entries)


def compose(g: BigradedMap, f: BigradedMap) -> BigradedMap:
    """g after f."""
    if f.codomain != g.domain:
        raise BasisMismatch("compose requires codomain(f) == domain(g)")
    by_mid: dict = {}
    for b, c in g.entries:
        by_mid.setdefault(b, []).append(c)
    acc: set = set()
    for a, b in f.entries:
        for c in by_mid.get(b, ()):
            pair = (a, c)
            if pair in acc:
                acc.discard(pair)
            else:
                acc.add(pair)
    return BigradedMap(f.domain, g.codomain, f.bidegree + g.bidegree,
                       frozenset(acc))


def commutator(f: BigradedMap, g: BigradedMap) -> BigradedMap:
    """fg + gf over GF(2)."""
    return add(compose(f, g), compose(g, f))


def tensor(f: BigradedMap, g: BigradedMap) -> BigradedMap:
    """Tensor product of maps on disjoint circle sets."""
    for x, y in ((f.domain, g.domain), (f.codomain, g.codomain)):
        if set(x.circles) & set(y.circles):
            raise CircleCollision("tensor factors share circle identifiers")
    dom = MonomialBasis(f.domain.circles + g.domain.circles,
                        f.domain.h_base + g.domain.h_base,
                        f.domain.q_shift + g.domain.q_shift)
    cod = MonomialBasis(f.codomain.circles + g.codomain.circles,
                        f.codomain.h_base + g.codomain.h_base,
                        f.codomain.q_shift + g.codomain.q_shift)
    nf_in = len(f.domain.circles)
    nf_out = len(f.codomain.circles)
    pairs = []
    for a1, b1 in f.entries:
        for a2, b2 in g.entries:
            pairs.append((a1 | (a2 << nf_in), b1 | (b2 << nf_out)))
    return BigradedMap.from_pairs(dom, cod, f.bidegree + g.bidegree, pairs)


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyTable:
    """Ranks of homology per (gr_h, gr_q)."""

    ranks: tuple[tuple[tuple[int, int], int], ...]

    @staticmethod
    def from_dict(d: dict) -> "HomologyTable":
        return HomologyTable(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.ranks)

    def shifted(self, dh: int, dq: int) -> "HomologyTable":
        return HomologyTable.from_dict(
            {(h + dh, q + dq): r for (h, q), r in self.ranks})

    def normalized(self, n_plus: int, n_minus: int) -> "HomologyTable":
        """Apply the orientation shifts gr_h -= n_minus, gr_q += n_plus - 2 n_minus."""
        return self.shifted(-n_minus, n_plus - 2 * n_minus)

    def total_rank(self) -> int:
        return sum(r for _, r in self.ranks)

    def graded_euler(self) -> dict[int, int]:
        """Coefficientwise graded Euler characteristic: q-degree -> integer."""
        out: dict[int, int] = {}
        for (h, q), r in self.ranks:
            out[q] = out.get(q, 0) + (-1) ** h * r
        return {q: v for q, v in sorted(out.items()) if v}

    def to_json(self) -> str:
        return json.dumps([{"h": h, "q": q, "rank": r}
                           for (h, q), r in self.ranks])


def _block_rank(f: BigradedMap, q: int) -> int:
    in_keys = sorted(k for k in f.domain.keys() if f.domain.gr_q(k) == q)
    out_keys = sorted(k for k in f.codomain.keys()
                      if f.codomain.gr_q(k) == q + f.bidegree.gr_q)
    out_idx = {k: i for i, k in enumerate(out_keys)}
    rows = []
    by_in: dict = {}
    for a, b in f.entries:
        by_in.setdefault(a, []).append(b)
    for a in in_keys:
        row = 0
        for b in by_in.get(a, ()):
            row ^= 1 << out_idx[b]
        rows.append(row)
    return _gf2.rank(rows, len(out_keys))


def homology_ranks(differentials, groups=None) -> HomologyTable:
    """Homology of a complex given as a gr_h-ordered list of (1,0) maps.

    `groups` may supply the chain bases explicitly (needed when the complex
    has a single chain group and no differentials).  Raises NotAComplex with
    a witness entry if consecutive maps do not compose to zero.
    """
    diffs = list(differentials)
    for f, g in zip(diffs, diffs[1:]):
        comp = compose(g, f)
        if not comp.is_zero():
            raise NotAComplex("consecutive differentials do not compose to zero",
                              witness=comp.first_entry())
    if groups is None:
        bases = []
        for f in diffs:
            if bases and bases[-1] != f.domain:
                raise BasisMismatch("differentials are not consecutively typed")
            if not bases:
                bases.append(f.domain)
            bases.append(f.codomain)
    else:
        bases = list(groups)
    if not bases:
        return HomologyTable(())

    dims: dict[tuple[int, int], int] = {}
    for basis in bases:
        for k in basis.keys():
            hq = (basis.gr_h(k), basis.gr_q(k))
            dims[hq] = dims.get(hq, 0) + 1
    rank_out: dict[tuple[int, int], int] = {}
    for f in diffs:
        hs = {f.domain.gr_h(k) for k in f.domain.keys()}
        if not hs:
            continue
        h = hs.pop()
        for q in {f.domain.gr_q(k) for k in f.domain.keys()}:
            rank_out[(h, q)] = _block_rank(f, q)
    table: dict[tuple[int, int], int] = {}
    for (h, q), dim in dims.items():
        r = dim - rank_out.get((h, q), 0) - rank_out.get((h - 1, q), 0)
        if r:
            table[(h, q)] = r
    return HomologyTable.from_dict(table)
