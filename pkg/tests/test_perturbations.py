"""Edge maps, cube assembly, identities, element computations, homology."""

import pytest

from khtotal import fixtures
from khtotal.cube import dual_mirror, face_configuration
from khtotal.errors import TooLarge, WrongDimension
from khtotal.f2linalg import Bigrading
from khtotal.fixtures import (
    catalog2_configuration,
    merge_configuration,
    named_knot,
    split_configuration,
    star_tree,
)
from khtotal.perturbations import (
    IDENTITIES,
    CoefficientLabel,
    CubeComplex,
    bracket_matches_euler,
    check_identity,
    kauffman_bracket,
    khovanov_d1,
    khovanov_homology,
    lemma_check,
    sss_map,
)


# --- khovanov_d1 ---------------------------------------------------------------

def test_d1_merge_formulas():
    f = khovanov_d1(merge_configuration())
    assert f.bidegree == Bigrading(1, 0)
    assert f.entries == frozenset({(0, 0), (1, 1), (2, 1)})  # xx -> 0 absent


def test_d1_split_formulas():
    f = khovanov_d1(split_configuration())
    assert f.entries == frozenset({(0, 1), (0, 2), (1, 3)})


def test_d1_extends_over_passives():
    tree = star_tree(1)
    cfg = tree.__class__(tree.circles + ((("m", ("p", 99)),),),
                         tree.arcs, tree.sides)
    f = khovanov_d1(cfg)
    # passive circle is index 2; (1 (x) x) . w -> x . w
    passive_in = 1 << 2
    out_passive = next(b for a, b in f.entries if a == passive_in) \
        if any(a == passive_in for a, _ in f.entries) else None
    assert out_passive is not None
    assert len(f.entries) == 6


def test_d1_wrong_dimension():
    with pytest.raises(WrongDimension):
        khovanov_d1(catalog2_configuration(2))


# --- sss_map --------------------------------------------------------------------

def test_sss_tree_single_entry():
    f = sss_map(catalog2_configuration(2))
    assert f.entries == frozenset({(0b111, 0b1)})
    assert f.bidegree == Bigrading(2, 4)


def test_sss_dual_tree_single_entry():
    f = sss_map(catalog2_configuration(4))
    assert f.entries == frozenset({(0, 0)})


def test_sss_neither_is_zero():
    for i in (1, 6, 7, 8):
        assert sss_map(catalog2_configuration(i)).is_zero()


def test_sss_extends_over_passives():
    tree = star_tree(2)
    cfg = tree.__class__(tree.circles + ((("m", ("p", 99)),),),
                         tree.arcs, tree.sides)
    f = sss_map(cfg)
    assert len(f.entries) == 2  # one per passive pattern


def test_sss_dim1_matches_bar_natan():
    # in dimension 1 the tree/dual-tree map is the Bar-Natan perturbation
    f = sss_map(merge_configuration())
    assert f.entries == frozenset({(0b11, 0b1)})
    g = sss_map(split_configuration())
    assert g.entries == frozenset({(0, 0)})


# --- assembly --------------------------------------------------------------------

def test_assemble_unknot_empty():
    cube = CubeComplex(named_knot("unknot"))
    fam = cube.assemble_term("d1")
    assert fam.is_zero() and not fam.maps


def test_assemble_labels():
    cube = CubeComplex(named_knot("trefoil"))
    assert cube.assemble_term("d1").label == CoefficientLabel(0, 0)
    h2 = cube.assemble_term("h", 2)
    assert h2.label == CoefficientLabel(1, 1)
    assert h2.label.total_bidegree(h2.internal_bidegree) == Bigrading(1, 0)


def test_h2_on_figure4_2_sums_three_tree_faces():
    d = fixtures.figure4(2)
    cube = CubeComplex(d)
    h2 = cube.assemble_term("h", 2)
    image = h2.apply((0, 0b111))
    # contributions land at the three vertices missing exactly one of the
    # cycle arcs; every image monomial is the single ending circle there
    assert len(image) == 3
    assert {u for u, _ in image} == {0b111 ^ 1, 0b111 ^ 2, 0b111 ^ 4}


def test_cube_too_large():
    with pytest.raises(TooLarge):
        CubeComplex(named_knot("trefoil"), max_crossings=2)


# --- identities -----------------------------------------------------------------

@pytest.mark.parametrize("which", IDENTITIES)
def test_identities_on_unknot_vacuous(which):
    assert check_identity(named_knot("unknot"), which).passed


@pytest.mark.parametrize("which", IDENTITIES)
def test_identities_on_trefoil(which):
    assert check_identity(named_knot("trefoil"), which).passed


def test_identity_h1h2_on_figure4_3():
    assert check_identity(fixtures.figure4(3), "h1h2").passed


def test_identity_report_json():
    r = check_identity(named_knot("kink"), "d1_squared")
    assert '"status": "pass"' in r.to_json()


# --- lemma element computations ---------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_lemma35(n):
    r = lemma_check("lemma35", n=n)
    assert r.passed


@pytest.mark.parametrize("kl", [(1, 1), (2, 1), (1, 2)])
def test_lemma36(kl):
    assert lemma_check("lemma36", k=kl[0], l=kl[1]).passed


@pytest.mark.parametrize("kl", [(1, 1), (2, 1), (1, 2)])
def test_lemma38(kl):
    assert lemma_check("lemma38", k=kl[0], l=kl[1]).passed


def test_lemma_param_errors():
    from khtotal.errors import FixtureRangeError
    with pytest.raises(FixtureRangeError):
        lemma_check("lemma35", n=1)
    with pytest.raises(FixtureRangeError):
        lemma_check("lemma36", k=0, l=1)


# --- homology and the bracket oracle ----------------------------------------------

def test_unknot_homology():
    assert khovanov_homology(named_knot("unknot")).as_dict() == {
        (0, 1): 1, (0, -1): 1}


def test_kink_equals_unknot_after_normalization():
    kink = khovanov_homology(named_knot("kink"), normalized=True)
    unknot = khovanov_homology(named_knot("unknot"), normalized=True)
    assert kink.as_dict() == unknot.as_dict()


def test_left_trefoil_table():
    # mod-2 Khovanov homology of the left trefoil: the integral classes at
    # (0,-1), (0,-3), (-2,-5), (-3,-9) plus the torsion pair (-2,-7), (-3,-7)
    table = khovanov_homology(named_knot("trefoil"), normalized=True)
    assert table.as_dict() == {
        (0, -1): 1, (0, -3): 1, (-2, -5): 1, (-2, -7): 1,
        (-3, -7): 1, (-3, -9): 1}


def test_figure_eight_table_symmetric():
    table = khovanov_homology(named_knot("figure_eight"), normalized=True)
    d = table.as_dict()
    assert d == {(-h, -q): r for (h, q), r in d.items()}


def test_bracket_values():
    assert kauffman_bracket(named_knot("unknot")) == {0: 1}
    assert kauffman_bracket(named_knot("kink")) == {-3: -1}
    assert kauffman_bracket(named_knot("trefoil")) == {7: 1, 3: -1, -5: -1}


@pytest.mark.parametrize("name", ["unknot", "kink", "trefoil", "figure_eight"])
def test_euler_matches_bracket(name):
    d = named_knot(name)
    assert bracket_matches_euler(d, khovanov_homology(d))


def test_euler_matches_bracket_on_figures():
    for d in (fixtures.figure4(2), fixtures.figure5(1, 1), fixtures.figure6(1, 1)):
        assert bracket_matches_euler(d, khovanov_homology(d))


def test_homology_too_large():
    with pytest.raises(TooLarge):
        khovanov_homology(fixtures.figure4(4), max_crossings=3)
