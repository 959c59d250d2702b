"""Exact-arithmetic toolkit for versal deformations of generic-lines
curve singularities: sparse rational polynomials, a deterministic
Groebner engine, curve-germ constructors, the explicit deformation
family with its base space, and a verification suite with CLI access."""

from .poly import (
    NONHOMOGENEOUS,
    ParseError,
    Polynomial,
    Var,
    VarRegistry,
    build_registry,
    parse,
    substitute,
    weighted_degree,
)
from .groebner import (
    DEGREVLEX,
    DEFAULT_BUDGET,
    LEX,
    Budget,
    BudgetExceeded,
    GroebnerBasis,
    Ideal,
    MonomialOrder,
    SyzygyModule,
    block_order,
    buchberger,
    contains,
    eliminate,
    ideal_equal,
    normal_form,
    recheck,
    syzygies,
)
from .hilbert import HilbertData, hilbert_data

__version__ = "0.1.0"

from .curves import (
    AXES,
    CurveSpec,
    F_FORM,
    G_FORM,
    LINES_GENERIC,
    MONOMIAL_ELLIPTIC,
    MONOMIAL_RATIONAL,
    NONRATIONAL_LINES,
    SemigroupData,
    WEDGE,
    elliptic_monomial_table,
    lines_ideal,
    monomial_ideal,
    nonrational_lines_check,
    numeric_invariants,
    rational_monomial_table,
    relations,
    semigroup_invariants,
)
from .versal import (
    AXIS_PARABOLA,
    DIAGONAL,
    DeformationFamily,
    FlatnessReport,
    InductionReport,
    RankDeficiencyError,
    T1Result,
    WedgeDeformation,
    axes_versal_family,
    base_equals_total,
    base_ideal,
    base_quadric,
    elliptic_monomial_family,
    family_generator,
    main_family,
    pfaffian_check,
    phi,
    smoothing_family,
    t1_compute,
    t2_dimension,
    verify_flatness,
    wedge_a2_deformation,
)
from .report import Check, Report, compare_reports
from .verify import run_all, run_suite
