"""Detection, classification, and construction of abelian subvarieties of
principally polarized abelian varieties through their integer divisor
classes: exact intersection-number tests, norm-matrix certificates, period
matrix checks, and a gluing constructor for non-simple examples.
"""

from ._gaussian import QQi
from .construct import (
    GluingSpec,
    PolarizationType,
    PolarizedFactor,
    RealizabilityResult,
    check_kd_symplectic,
    complementary_type,
    glue,
    identity_spec,
    is_realizable,
    standard_witness,
)
from .errors import NsforgeError
from .exterior import (
    IntersectionProfile,
    PrincipalClass,
    TwoForm,
    check_class,
    check_class_mod_L,
    f_formula,
    intersection_profile,
    is_primitive,
    mixed_intersection,
    natural_class,
    pfaffian,
    q_r,
    theta,
)
from .humbert import (
    SingularDatum,
    elliptic_class,
    eta_from_singular,
    humbert_relation,
    singular_datum,
    singular_from_eta,
)
from .normend import (
    NormMatrix,
    SubvarietyReport,
    analyze,
    class_from_norm,
    complementary_class,
    elliptic_in_divisor,
    norm_from_class,
    polynomial_certificate,
)
from .riemann import (
    PeriodMatrix,
    RelationSet,
    moebius,
    residual_matrix,
    scan_ppav,
    symbolic_relations,
    tangent_and_lattice,
    wedge_vanishes,
)
from .scan import EnumerationSpec, enumerate_classes, orbit_equivalent
from .symplectic import (
    FrobeniusData,
    IntegerLattice,
    SymplecticMatrix,
    act,
    frobenius_basis,
    is_symplectic,
    random_symplectic,
    saturate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
