"""Exact-arithmetic toolkit for multiplicative dependence on rational
curves inside an algebraic torus."""

from .errors import (
    AssumptionViolation,
    DomainError,
    ImproperParametrization,
    InvariantViolation,
    ParseError,
    PreconditionError,
)
from .exactcore import (
    Mobius,
    Poly,
    RatFunc,
    Rational,
    compose_mobius,
    factor_poly,
    is_cyclotomic,
    monomial_product,
    nth_power_in_Q,
)
from .intlattice import (
    IntMatrix,
    LatticeBasis,
    express_in_basis,
    hnf,
    kernel_basis,
    min_content,
    primitive_witness,
)
from .curvegeom import (
    Character,
    CurveData,
    Divisor,
    NormalizedCharacter,
    Place,
    character_restrict,
    check_assumption,
    cyclotomic_realizable,
    divisor_of,
    map_degree,
    normalize_character,
    phi_enumerate,
    phi_oracle,
)
from .multdep import (
    Decomposition,
    FactoredRational,
    decompose,
    dependence_oracle,
    factor_rational,
    is_dependent,
    is_primitively_dependent,
    point_height,
    relation_lattice,
    root_of_unity_order,
    weil_height,
)
from .explorer import (
    AnalysisConfig,
    FiberPoint,
    Report,
    ScanRecord,
    analyze,
    parse_curve,
    scan_dependent,
    torsion_fiber,
)

__version__ = "0.1.0"
