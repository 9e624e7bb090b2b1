"""Exact computations with hyperelliptic curves and their moduli.

Binary forms and discriminants, PGL2 symmetries of branch configurations,
Picard-type group orders, automorphism strata and quadratic twists, over Q
and finite fields.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .config import (
    ConfigAutGroup,
    PointConfiguration,
    are_pgl2_equivalent,
    automorphism_group,
    extra_involution_type,
    moduli_point_is_singular,
    roots_of_unity_config,
)
from .curves import (
    CurveIsoWitness,
    HyperellipticCurve,
    count_points,
    curve_from_config,
    elliptic_taut_curve,
    global_g12_exists_for_even_genus,
    isomorphic_over_closure,
    isomorphic_over_field,
    reduced_automorphism_group,
    tautological_family_exists,
    twist_classes,
    weierstrass_points,
)
from .errors import HyperellError
from .field import GF, QQ, FieldTag, Scalar, SquareClass, square_class
from .forms import BinaryForm, discriminant, gl2_act, is_smooth, sylvester_resultant
from .moebius import MoebiusMap, ProjectivePoint, apply, element_order, from_three_points, solve_pairing_involution
from .picard import (
    CyclicClass,
    FiberCharacter,
    PicardReport,
    descent_subgroup,
    group_orders,
    hodge_index,
    m_of,
    picard_report,
    pushforward_rank,
    stabilizer_fiber_character,
    tab_exponent,
)
from .strata import (
    FourTuplePair,
    Permutation,
    find_lemma_pairs,
    is_triple_transposition_class,
    max_aut_locus_dimension,
    stratum_dimension,
    verify_lemma_combin,
)
