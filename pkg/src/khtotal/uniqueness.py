"""Certify the uniqueness of the edge maps by solving rule-constraint systems.

For every family of configurations (with dual-partner pairing) the selected
rules form a homogeneous GF(2) system on the bidegree-admissible map entries;
its kernel is the space of rule-compliant maps.  Uniqueness holds for a
configuration when that space is exactly the span of its tree/dual-tree edge
map: dimension 1 with the map as basis when the configuration is a disjoint
union of trees and dual trees, dimension 0 otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import _gf2
from .cube import ResolutionConfiguration, dual_mirror
from .errors import ParamOutOfRange, TooLarge
from .f2linalg import BigradedMap, Bigrading, basis_of
from .fixtures import (
    CATALOG2_PARTNERS,
    catalog2_configuration,
    path_tree,
    star_tree,
)
from .perturbations import sss_map
from .rules import ConstraintSystem, entry_vector, rule_constraints

DEFAULT_RULES = ("filtration", "duality", "naturality")


@dataclass(frozen=True)
class ConfigResult:
    config_id: str
    dimension: int
    agrees_with_sss: bool
    basis: tuple[BigradedMap, ...]


@dataclass(frozen=True)
class UniquenessReport:
    description: str
    bidegree: Bigrading
    entries: tuple[ConfigResult, ...]
    passed: bool

    def to_json(self) -> str:
        return json.dumps({
            "description": self.description,
            "bidegree": list(self.bidegree.as_tuple()),
            "entries": [{"config": e.config_id, "dim": e.dimension,
                         "agrees_with_sss": e.agrees_with_sss}
                        for e in self.entries],
            "pass": self.passed,
        })


def catalog2():
    """The eight connected 2-dimensional configurations with their pairing.

    Returns a list of (index, configuration, partner index) triples; the
    pairing is the one computed by dual_mirror: 2<->4, 3<->5, with 1, 6, 7
    and 8 self-paired.
    """
    return [(i, catalog2_configuration(i), CATALOG2_PARTNERS[i])
            for i in range(1, 9)]


def _project_dims(system: ConstraintSystem, kernel: list[int],
                  configs) -> list[tuple[int, list[int]]]:
    """Per-configuration projection of the kernel: (dimension, basis vectors)."""
    out = []
    for ci in range(len(configs)):
        mask = 0
        for vi, (cj, _a, _b) in enumerate(system.variables):
            if cj == ci:
                mask |= 1 << vi
        proj = [v & mask for v in kernel]
        dim = _gf2.span_rank(proj, system.nvars)
        out.append((dim, proj))
    return out


def _vector_to_map(system: ConstraintSystem, ci: int, vec: int,
                   c: ResolutionConfiguration,
                   bidegree: Bigrading) -> BigradedMap:
    entries = [(a, b) for vi, (cj, a, b) in enumerate(system.variables)
               if cj == ci and (vec >> vi) & 1]
    return BigradedMap.from_pairs(basis_of(c, "start"), basis_of(c, "end"),
                                  bidegree, entries)


def solve_rule_space(family, bidegree: Bigrading,
                     rules=DEFAULT_RULES,
                     labels=None,
                     description: str = "",
                     var_bound: int = 1 << 20) -> UniquenessReport:
    """Kernel of the rule system with per-configuration comparison to the
    tree/dual-tree map.

    `family` is a sequence of (configuration, partner index) pairs.
    """
    configs = [c for c, _ in family]
    system = rule_constraints(family, bidegree, rules, var_bound=var_bound)
    kernel = system.kernel()
    projections = _project_dims(system, kernel, configs)
    if labels is None:
        labels = [str(i) for i in range(len(configs))]
    results = []
    all_ok = True
    for ci, (c, _) in enumerate(family):
        dim, proj = projections[ci]
        if bidegree.as_tuple() == (c.k, 2 * c.k):
            reference = sss_map(c)
        else:
            # away from (k, 2k) the edge map contributes nothing: expect {0}
            reference = BigradedMap(basis_of(c, "start"), basis_of(c, "end"),
                                    bidegree, frozenset())
        ref_vec = entry_vector(system, ci, reference)
        ref_span = [ref_vec] if ref_vec else []
        agrees = _gf2.same_span(proj, ref_span, system.nvars)
        basis_maps = []
        if dim:
            seen = []
            for v in proj:
                if v and not _gf2.in_row_span(seen, system.nvars, v):
                    seen.append(v)
                    basis_maps.append(_vector_to_map(system, ci, v, c, bidegree))
        results.append(ConfigResult(labels[ci], dim, agrees, tuple(basis_maps)))
        all_ok = all_ok and agrees
    return UniquenessReport(description or "rule-space solve", bidegree,
                            tuple(results), all_ok)


def verify_uniqueness(scope: str = "dim2", n: int = 4,
                      custom_family=None, rules=DEFAULT_RULES):
    """Aggregate uniqueness certificates.

    scope 'dim2': the dimension-2 catalog at bidegree (2, 4);
    scope 'trees_up_to': star and path trees (with dual partners) for every
    dimension m <= n, solved at (m, 2m) (expect dimension 1, basis the edge
    map) and at (m, 2m+2) (expect dimension 0);
    scope 'custom': a user-supplied family at its own dimension.
    """
    reports = []
    if scope == "dim2":
        cat = catalog2()
        family = [(cfg, partner - 1) for _i, cfg, partner in cat]
        labels = [str(i) for i, _c, _p in cat]
        reports.append(solve_rule_space(family, Bigrading(2, 4), rules,
                                        labels=labels,
                                        description="dimension-2 catalog at (2,4)"))
    elif scope == "trees_up_to":
        if n < 1:
            raise ParamOutOfRange("trees_up_to needs n >= 1")
        for m in range(1, n + 1):
            shapes = [("star", star_tree(m))]
            if m >= 3:
                shapes.append(("path", path_tree(m)))
            for shape_name, tree in shapes:
                dual = dual_mirror(tree)
                family = [(tree, 1), (dual, 0)]
                labels = [f"{shape_name}_tree_{m}", f"{shape_name}_dual_{m}"]
                reports.append(solve_rule_space(
                    family, Bigrading(m, 2 * m), rules, labels=labels,
                    description=f"{shape_name} tree dim {m} at ({m},{2 * m})"))
                reports.append(solve_rule_space(
                    family, Bigrading(m, 2 * m + 2), rules, labels=labels,
                    description=f"{shape_name} tree dim {m} at ({m},{2 * m + 2})"))
    elif scope == "custom":
        if not custom_family:
            raise ParamOutOfRange("custom scope needs a family")
        k = custom_family[0][0].k
        reports.append(solve_rule_space(custom_family, Bigrading(k, 2 * k),
                                        rules, description="custom family"))
    else:
        raise ParamOutOfRange(f"unknown scope {scope!r}")
    return reports


def scope_passed(reports) -> bool:
    return all(r.passed for r in reports)
