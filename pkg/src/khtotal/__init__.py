"""Exact resolution-configuration calculus for Khovanov-type link homology
over GF(2): surgery, duals, rule predicates, perturbation terms on the cube
of resolutions, and uniqueness certification by kernel computation."""

from .diagram import (
    PlanarDiagram,
    mirror_diagram,
    parse_pd,
    pd_from_json,
    pd_to_json,
    serialize_pd,
    writhe_counts,
)
from .cube import (
    Classification,
    Resolution,
    ResolutionConfiguration,
    automorphisms,
    classify,
    config_from_json,
    config_to_json,
    configuration_to_diagram,
    dual_mirror,
    dual_mirror_data,
    ending_circle_count,
    face_configuration,
    find_isomorphisms,
    is_isomorphic,
    is_planar,
    make_configuration,
    mirror_configuration,
    resolve,
    surgery,
)
from .f2linalg import (
    BigradedMap,
    Bigrading,
    DirectSumBasis,
    HomologyTable,
    MonomialBasis,
    add,
    basis_of,
    commutator,
    compose,
    homology_ranks,
    identity_map,
    star,
    tensor,
    zero_map,
)
from .perturbations import (
    CoefficientLabel,
    CubeComplex,
    check_identity,
    kauffman_bracket,
    bracket_matches_euler,
    khovanov_d1,
    khovanov_homology,
    lemma_check,
    sss_map,
)
from .rules import (
    ConstraintSystem,
    RuleReport,
    check_duality,
    check_filtration,
    check_structural,
    induced_dual_map,
    rule_constraints,
)
from .uniqueness import (
    UniquenessReport,
    catalog2,
    solve_rule_space,
    verify_uniqueness,
)
from .fixtures import FixtureSpec, fixture

__all__ = [name for name in dir() if not name.startswith("_")]
