"""Rule-space kernels versus the tree/dual-tree edge maps."""

import pytest

from khtotal.cube import (
    dual_mirror,
    ending_circle_count,
    face_configuration,
    is_isomorphic,
)
from khtotal.errors import ParamOutOfRange
from khtotal.f2linalg import Bigrading
from khtotal.fixtures import CATALOG2_PARTNERS, catalog2_configuration
from khtotal import fixtures
from khtotal.perturbations import sss_map
from khtotal.rules import entry_vector, rule_constraints
from khtotal.uniqueness import (
    catalog2,
    scope_passed,
    solve_rule_space,
    verify_uniqueness,
)


def test_catalog_entry_shapes():
    entries = dict((i, cfg) for i, cfg, _p in catalog2())
    assert entries[2].t == 3 and ending_circle_count(entries[2]) == 1
    assert entries[8].t == 1 and ending_circle_count(entries[8]) == 1
    assert entries[4].t == 1 and ending_circle_count(entries[4]) == 3


def test_catalog_pairing_is_dual_mirror():
    for i, cfg, partner in catalog2():
        assert is_isomorphic(dual_mirror(cfg), catalog2_configuration(partner))
        assert CATALOG2_PARTNERS[partner] == i


def test_catalog_entries_pairwise_distinct():
    cfgs = [cfg for _i, cfg, _p in catalog2()]
    for i in range(8):
        for j in range(i + 1, 8):
            assert not is_isomorphic(cfgs[i], cfgs[j])


def test_dim2_solution_dimensions():
    (report,) = verify_uniqueness("dim2")
    assert report.passed
    dims = [e.dimension for e in report.entries]
    assert dims == [0, 1, 1, 1, 1, 0, 0, 0]
    assert all(e.agrees_with_sss for e in report.entries)


def test_dim2_basis_is_the_edge_map():
    (report,) = verify_uniqueness("dim2")
    for e, (i, cfg, _p) in zip(report.entries, catalog2()):
        if e.dimension == 1:
            (basis_map,) = e.basis
            assert basis_map.entries == sss_map(cfg).entries


def test_tree_dichotomy():
    reports = verify_uniqueness("trees_up_to", n=3)
    assert scope_passed(reports)
    for r in reports:
        expected = 1 if r.bidegree.gr_q == 2 * r.bidegree.gr_h else 0
        assert all(e.dimension == expected for e in r.entries)


def test_custom_nontree_face_dimension_zero():
    d = fixtures.figure4(2)
    cfg = face_configuration(d, (0, 0, 0), (1, 1, 1))
    dm = dual_mirror(cfg)
    (report,) = verify_uniqueness("custom", custom_family=[(cfg, 1), (dm, 0)])
    assert report.bidegree == Bigrading(3, 6)
    assert [e.dimension for e in report.entries] == [0, 0]
    assert report.passed


def test_solution_dimension_invariant_under_relabeling():
    c = catalog2_configuration(2)
    rotated = tuple(tuple(reversed(w)) for w in c.circles)
    flip = {"L": "R", "R": "L"}
    sides = tuple((a, flip[s]) for a, s in c.sides)
    c2 = c.__class__(rotated, c.arcs, sides)  # reparametrized, same object
    for cfg in (c, c2):
        report = solve_rule_space([(cfg, 1), (dual_mirror(cfg), 0)],
                                  Bigrading(2, 4))
        assert [e.dimension for e in report.entries] == [1, 1]


def test_zero_map_always_in_solution_space():
    c = catalog2_configuration(6)
    system = rule_constraints([(c, 0)], Bigrading(2, 4),
                              {"filtration", "naturality"})
    assert system.satisfied_by(0)


def test_sss_satisfies_full_system_on_trees():
    for i in (2, 3, 4, 5):
        c = catalog2_configuration(i)
        dm = dual_mirror(c)
        system = rule_constraints(
            [(c, 1), (dm, 0)], Bigrading(2, 4),
            {"filtration", "duality", "naturality", "extension"})
        vec = entry_vector(system, 0, sss_map(c)) | \
            entry_vector(system, 1, sss_map(dm))
        assert system.satisfied_by(vec)


def test_rule_ablation_is_supported():
    # dropping rules can only enlarge the space; with no rules everything is free
    c = catalog2_configuration(2)
    full = solve_rule_space([(c, 1), (dual_mirror(c), 0)], Bigrading(2, 4))
    only_filtration = solve_rule_space([(c, 1), (dual_mirror(c), 0)],
                                       Bigrading(2, 4), rules=("filtration",))
    assert only_filtration.entries[0].dimension >= full.entries[0].dimension


def test_bad_scope():
    with pytest.raises(ParamOutOfRange):
        verify_uniqueness("nope")
