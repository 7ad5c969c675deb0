"""Exact continued fractions of real algebraic numbers, cubic focus.

Everything is integer/rational arithmetic: root isolation by Sturm
counts, floors and signs by exact bisection, tail minimal polynomials by
unimodular coefficient substitutions, and all reported enclosures carry
certified rational endpoints.
"""

from .algnum import (
    AlgebraicNumber,
    approximate,
    floor_of,
    isolate_real_roots,
    make_algebraic,
    map_moebius,
    refine,
    same_root,
    sign_at,
)
from .cf import (
    ApproxStat,
    CFStep,
    Expansion,
    approximation_stats,
    expand,
    lambda_estimate,
    tail_poly_direct,
)
from .conjugates import (
    AsymRecord,
    ComplexBox,
    ConjugatePair,
    LimitRecord,
    PisotRecord,
    ReducednessVerdict,
    VerificationReport,
    asym_sequence,
    beta_constant,
    conjugates,
    disc_product_enclosure,
    is_pisot,
    is_reduced,
    limit_sequence,
    pisot_scan,
    reduced_flags,
    reducedness_onset,
    separation,
    verification_report,
)
from .field import (
    BoundednessProfile,
    FieldElement,
    FracLinearRep,
    TailMatch,
    TransferReport,
    apply_rep,
    as_algebraic,
    boundedness_profile,
    express,
    lambda_transfer_check,
    tails_match,
)
from .poly import (
    IntPoly,
    Unimodular2x2,
    content_primitive,
    discriminant,
    eval_at_rational,
    is_squarefree,
    moebius_transform,
    rational_roots,
    resultant,
    sturm_count,
    unimodular_transform,
)

__version__ = "0.1.0"
