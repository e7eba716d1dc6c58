"""Configuration calculus: resolve, faces, surgery, duals, classification,
automorphisms, planarity."""

import random

import pytest

from khtotal import fixtures
from khtotal.cube import (
    automorphisms,
    classify,
    config_from_json,
    config_to_json,
    configuration_to_diagram,
    dual_mirror,
    dual_mirror_data,
    ending_circle_count,
    ending_data,
    face_configuration,
    find_isomorphisms,
    is_isomorphic,
    is_planar,
    make_configuration,
    resolve,
    surgery,
)
from khtotal.diagram import PlanarDiagram
from khtotal.errors import BadIndex, LengthMismatch, NonPlanar, NotAFace
from khtotal.fixtures import (
    CATALOG2_KINDS,
    CATALOG2_PARTNERS,
    catalog2_configuration,
    merge_configuration,
    split_configuration,
    star_tree,
)


def random_faces(rng, count, min_dim=0):
    diagrams = [
        fixtures.named_knot("trefoil"),
        fixtures.named_knot("figure_eight"),
        fixtures.figure4(3),
        fixtures.figure5(2, 1),
        fixtures.figure6(1, 1),
    ]
    out = []
    while len(out) < count:
        d = rng.choice(diagrams)
        u = [rng.randint(0, 1) for _ in range(d.n)]
        v = [b | rng.randint(0, 1) for b in u]
        if sum(vb - ub for ub, vb in zip(u, v)) < min_dim:
            continue
        out.append((d, tuple(u), tuple(v)))
    return out


# --- resolve ----------------------------------------------------------------

def test_resolve_free_loop():
    d = PlanarDiagram((), 1)
    assert len(resolve(d, ()).circles) == 1


def test_resolve_figure4_counts():
    d = fixtures.figure4(2)
    assert len(resolve(d, (0, 0, 0)).circles) == 3
    assert len(resolve(d, (1, 1, 1)).circles) == 2


def test_resolve_length_mismatch():
    with pytest.raises(LengthMismatch):
        resolve(fixtures.named_knot("kink"), (0, 1))


# --- faces ------------------------------------------------------------------

def test_zero_dimensional_face():
    d = fixtures.named_knot("trefoil")
    cfg = face_configuration(d, (0, 1, 0), (0, 1, 0))
    assert cfg.k == 0
    assert classify(cfg).components == ()
    assert len(classify(cfg).passive_circles) == cfg.t


def test_full_face_of_figure4_2():
    d = fixtures.figure4(2)
    cfg = face_configuration(d, (0, 0, 0), (1, 1, 1))
    assert cfg.t == 3 and cfg.k == 3
    assert ending_circle_count(cfg) == 2
    assert len(classify(cfg).components) == 1


def test_tree_face_of_figure4_2():
    d = fixtures.figure4(2)
    cfg = face_configuration(d, (0, 0, 0), (0, 1, 1))
    assert classify(cfg).kinds == ("tree",)


def test_not_a_face():
    d = fixtures.named_knot("trefoil")
    with pytest.raises(NotAFace):
        face_configuration(d, (1, 0, 0), (0, 1, 1))


def test_face_endings_match_target_resolution():
    rng = random.Random(3)
    for d, u, v in random_faces(rng, 60):
        cfg = face_configuration(d, u, v)
        data = ending_data(cfg)
        res_v = resolve(d, v)
        edge_circle = {e: i for i, circ in enumerate(res_v.circles)
                       for e in circ.edges}
        groups = []
        for w in data.words:
            targets = {edge_circle[a[1]] for a in w if a[0] == "m"}
            assert len(targets) == 1
            groups.append(targets.pop())
        assert sorted(groups) == list(range(len(res_v.circles)))


# --- surgery ----------------------------------------------------------------

def test_surgery_merge():
    c = merge_configuration()
    out = surgery(c, 0)
    assert out.t == 1 and out.k == 0


def test_surgery_split():
    c = split_configuration()
    out = surgery(c, 0)
    assert out.t == 2 and out.k == 0


def test_surgery_on_tree_gives_merge():
    c = catalog2_configuration(2)
    for arc in (0, 1):
        out = surgery(c, arc)
        assert out.t == 2 and out.k == 1
        assert classify(out).kinds == ("tree",)


def test_surgery_bad_index():
    with pytest.raises(BadIndex):
        surgery(merge_configuration(), 5)


def test_surgery_changes_count_by_one():
    rng = random.Random(4)
    for d, u, v in random_faces(rng, 40, min_dim=1):
        cfg = face_configuration(d, u, v)
        arc = rng.randrange(cfg.k)
        out = surgery(cfg, arc)
        assert abs(out.t - cfg.t) == 1


def test_parity_relation():
    rng = random.Random(5)
    for d, u, v in random_faces(rng, 120):
        cfg = face_configuration(d, u, v)
        assert (ending_circle_count(cfg) - cfg.t - cfg.k) % 2 == 0


# --- dual_mirror ------------------------------------------------------------

def test_dual_of_merge_is_split():
    assert is_isomorphic(dual_mirror(merge_configuration()),
                         split_configuration())


def test_catalog_duality_pairing():
    # computed pairing: the trees pair with the dual trees, the rest are
    # self-dual (the four 'neither' entries have no possible partner by
    # circle counts)
    for i in range(1, 9):
        dm = dual_mirror(catalog2_configuration(i))
        matches = [j for j in range(1, 9)
                   if is_isomorphic(dm, catalog2_configuration(j))]
        assert matches == [CATALOG2_PARTNERS[i]]


def test_dual_mirror_involution_on_catalog():
    for i in range(1, 9):
        c = catalog2_configuration(i)
        assert is_isomorphic(dual_mirror(dual_mirror(c)), c)


def test_dual_mirror_involution_on_random_faces():
    rng = random.Random(6)
    for d, u, v in random_faces(rng, 80):
        cfg = face_configuration(d, u, v)
        assert is_isomorphic(dual_mirror(dual_mirror(cfg)), cfg)


def test_passive_circles_correspond():
    rng = random.Random(7)
    for d, u, v in random_faces(rng, 40):
        cfg = face_configuration(d, u, v)
        dm = dual_mirror(cfg)
        assert len(dm.passive_circles()) == len(cfg.passive_circles())


def test_classify_dual_swaps_kinds():
    rng = random.Random(8)
    for d, u, v in random_faces(rng, 60, min_dim=1):
        cfg = face_configuration(d, u, v)
        swap = {"tree": "dual_tree", "dual_tree": "tree", "neither": "neither"}
        kinds = sorted(swap[k] for k in classify(cfg).kinds)
        dual_kinds = sorted(classify(dual_mirror(cfg)).kinds)
        assert kinds == dual_kinds


def test_dual_mirror_data_reassembles_starting_circles():
    for i in range(1, 9):
        c = catalog2_configuration(i)
        _, end_to_start = dual_mirror_data(c)
        assert sorted(end_to_start) == list(range(c.t))


# --- classification ---------------------------------------------------------

def test_catalog_kinds():
    for i in range(1, 9):
        cls = classify(catalog2_configuration(i))
        assert cls.kinds == (CATALOG2_KINDS[i],)


def test_tree_with_passive_circle():
    s = lambda a, e: ("s", a, e)
    c = make_configuration(
        [[s(0, 0)], [s(0, 1), s(1, 0)], [s(1, 1)], []],
        [(s(0, 0), s(0, 1)), (s(1, 0), s(1, 1))],
        {s(0, 0): "R", s(0, 1): "R", s(1, 0): "R", s(1, 1): "R"})
    cls = classify(c)
    assert cls.kinds == ("tree",)
    assert cls.passive_circles == (3,)


# --- planarity --------------------------------------------------------------

def test_crossing_chords_rejected():
    s = lambda a, e: ("s", a, e)
    with pytest.raises(NonPlanar):
        make_configuration(
            [[s(0, 0), s(1, 0), s(0, 1), s(1, 1)]],
            [(s(0, 0), s(0, 1)), (s(1, 0), s(1, 1))],
            {s(0, 0): "L", s(0, 1): "L", s(1, 0): "L", s(1, 1): "L"})


def test_same_circle_opposite_sides_rejected():
    s = lambda a, e: ("s", a, e)
    with pytest.raises(NonPlanar):
        make_configuration(
            [[s(0, 0), s(0, 1)]],
            [(s(0, 0), s(0, 1))],
            {s(0, 0): "L", s(0, 1): "R"})


def test_nested_chords_planar():
    cfg = fixtures.rainbow_dual_tree(3)
    assert is_planar(cfg)


def test_faces_planar():
    rng = random.Random(9)
    for d, u, v in random_faces(rng, 40):
        assert is_planar(face_configuration(d, u, v))


# --- automorphisms and isomorphism -------------------------------------------

def test_merge_automorphisms_order_two():
    syms = automorphisms(merge_configuration())
    assert len(syms) == 2
    perms = sorted(s.circle_perm for s in syms)
    assert perms == [(0, 1), (1, 0)]


def test_split_automorphism_swaps_ending_circles():
    syms = automorphisms(split_configuration())
    end_perms = {s.end_perm for s in syms}
    assert (0, 1) in end_perms and (1, 0) in end_perms


def test_catalog8_contains_identity():
    c = catalog2_configuration(8)
    syms = automorphisms(c)
    ident = tuple(range(c.t))
    assert any(s.circle_perm == ident and s.arc_perm == (0, 1) for s in syms)


def test_disjoint_identical_trees_component_swap():
    s = lambda a, e: ("s", a, e)
    words = [[s(0, 0)], [s(0, 1)], [s(1, 0)], [s(1, 1)]]
    arcs = [(s(0, 0), s(0, 1)), (s(1, 0), s(1, 1))]
    sides = {a: "R" for arc in arcs for a in arc}
    c = make_configuration(words, arcs, sides)
    syms = automorphisms(c)
    assert any(set(zip((0, 1), s.circle_perm[:2])) == {(0, 2), (1, 3)}
               for s in syms)


def test_automorphisms_closed_under_composition():
    for i in (2, 7, 8):
        c = catalog2_configuration(i)
        syms = automorphisms(c)
        table = {(s.circle_perm, s.arc_perm, s.end_perm) for s in syms}
        for s1 in syms:
            for s2 in syms:
                comp = (
                    tuple(s2.circle_perm[j] for j in s1.circle_perm),
                    tuple(s2.arc_perm[j] for j in s1.arc_perm),
                    tuple(s2.end_perm[j] for j in s1.end_perm),
                )
                assert comp in table


def test_isomorphism_ignores_relabeling():
    c = catalog2_configuration(3)
    # rotate a circle word and swap circle order
    rotated = tuple(w[1:] + w[:1] if len(w) > 1 else w for w in c.circles)
    c2 = c.__class__(tuple(reversed(rotated)), c.arcs, c.sides)
    assert is_isomorphic(c, c2)
    assert not is_isomorphic(catalog2_configuration(4),
                             catalog2_configuration(5))


# --- configuration_to_diagram -----------------------------------------------

def test_merge_to_diagram():
    d = configuration_to_diagram(merge_configuration())
    assert d.n == 1
    assert len(resolve(d, (0,)).circles) == 2
    assert len(resolve(d, (1,)).circles) == 1


def test_catalog8_to_diagram():
    d = configuration_to_diagram(catalog2_configuration(8))
    assert d.n == 2
    assert len(resolve(d, (0, 0)).circles) == 1
    assert len(resolve(d, (1, 1)).circles) == 1


def test_figure4_diagram_counts():
    d = fixtures.figure4(2)
    assert d.n == 3
    assert len(resolve(d, (0, 0, 0)).circles) == 3


@pytest.mark.parametrize("cfg", [
    merge_configuration(),
    split_configuration(),
    catalog2_configuration(3),
    catalog2_configuration(8),
    star_tree(3),
    fixtures.figure4_configuration(3),
    fixtures.figure5_configuration(1, 2),
    fixtures.figure6_configuration(2, 1),
])
def test_full_face_reproduces_configuration(cfg):
    d = configuration_to_diagram(cfg)
    full = face_configuration(d, (0,) * d.n, (1,) * d.n)
    assert is_isomorphic(full, cfg)


def test_crossing_arc_correspondence():
    cfg = fixtures.figure4_configuration(2)
    d = configuration_to_diagram(cfg)
    for i in range(d.n):
        u = tuple(0 for _ in range(d.n))
        v = tuple(1 if j == i else 0 for j in range(d.n))
        face = face_configuration(d, u, v)
        expected_merge = classify(cfg.__class__(
            cfg.circles, (cfg.arcs[i],),
            tuple((a, s) for a, s in cfg.sides if a in cfg.arcs[i])))
        assert classify(face).kinds == expected_merge.kinds


# --- JSON -------------------------------------------------------------------

def test_config_json_round_trip():
    for i in range(1, 9):
        c = catalog2_configuration(i)
        c2 = config_from_json(config_to_json(c))
        assert is_isomorphic(c, c2)
