"""Exact certification of finite orbits of rational self-maps of the projective line.

The package works over Q with exact arithmetic throughout: orbits either
close and produce a replayable certificate, or the run reports which budget
was exhausted. Structural properties (ultrametric triangle inequality,
non-expansion at good-reduction primes, tail-valuation monotonicity) are
re-checked on real data, and explicit finiteness bounds are evaluated in
log-space with outward rounding so comparisons are sound.
"""

from .bounds import (
    FORMULAS,
    INCONCLUSIVE,
    SATISFIED,
    VIOLATED,
    BoundFormula,
    BoundValue,
    beukers_schlickewei,
    canci_c,
    compare,
    decimal_str,
    ess,
    evaluate_bound,
    k_run,
    ln_interval,
    morton_silverman,
    narkiewicz_pezda_orbit,
    np_tail,
    pezda_br,
    pgl2_order,
    two_ways_ideals,
    working_precision,
)
from .maps import (
    BitBudgetError,
    MapSyntaxError,
    MoebiusTransform,
    RationalMap,
    bad_primes,
    compose_maps,
    conjugate,
    evaluate,
    good_reduction_at,
    iterate_map,
    make_map,
    make_moebius,
    map_to_expr,
    moebius_order,
    parse_map,
)
from .numtheory import (
    Factorization,
    FactorizationBudgetError,
    PlaceSet,
    factor,
    is_prime,
    s_membership,
    vp,
)
from .orbits import (
    BITS_EXHAUSTED,
    STEPS_EXHAUSTED,
    CertificateCheckError,
    DivisibilityReport,
    NpConditionError,
    NpReport,
    OrbitCertificate,
    TailDivisibilityError,
    UndecidedOrbit,
    certificate_from_json,
    certificate_to_json,
    check_tail_divisibility,
    collapse_to_fixed_point,
    detect_orbit,
    normalize_orbit,
    run_certificate_checks,
    synthesize_map,
    verify_np_conditions,
)
from .projective import (
    INFINITE_DISTANCE,
    ProjectivePoint,
    canonical_point,
    from_pair,
    log_distance,
    parse_point,
    relevant_primes,
)
from .sunit import (
    EnumerationCapError,
    ThreeTermReport,
    TwoWaysReport,
    UnitEquationProblem,
    UnitEquationReport,
    count_three_term,
    solve_unit_equation,
    two_way_representations,
)
from .suites import CORPUS, SuiteReport, corpus_certificates, run_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # numtheory
    "Factorization",
    "FactorizationBudgetError",
    "PlaceSet",
    "factor",
    "is_prime",
    "s_membership",
    "vp",
    # projective
    "INFINITE_DISTANCE",
    "ProjectivePoint",
    "canonical_point",
    "from_pair",
    "log_distance",
    "parse_point",
    "relevant_primes",
    # maps
    "BitBudgetError",
    "MapSyntaxError",
    "MoebiusTransform",
    "RationalMap",
    "bad_primes",
    "compose_maps",
    "conjugate",
    "evaluate",
    "good_reduction_at",
    "iterate_map",
    "make_map",
    "make_moebius",
    "map_to_expr",
    "moebius_order",
    "parse_map",
    # orbits
    "BITS_EXHAUSTED",
    "STEPS_EXHAUSTED",
    "CertificateCheckError",
    "DivisibilityReport",
    "NpConditionError",
    "NpReport",
    "OrbitCertificate",
    "TailDivisibilityError",
    "UndecidedOrbit",
    "certificate_from_json",
    "certificate_to_json",
    "check_tail_divisibility",
    "collapse_to_fixed_point",
    "detect_orbit",
    "normalize_orbit",
    "run_certificate_checks",
    "synthesize_map",
    "verify_np_conditions",
    # bounds
    "INCONCLUSIVE",
    "FORMULAS",
    "SATISFIED",
    "VIOLATED",
    "BoundFormula",
    "BoundValue",
    "beukers_schlickewei",
    "canci_c",
    "compare",
    "decimal_str",
    "ess",
    "evaluate_bound",
    "k_run",
    "ln_interval",
    "morton_silverman",
    "narkiewicz_pezda_orbit",
    "np_tail",
    "pezda_br",
    "pgl2_order",
    "two_ways_ideals",
    "working_precision",
    # sunit
    "EnumerationCapError",
    "ThreeTermReport",
    "TwoWaysReport",
    "UnitEquationProblem",
    "UnitEquationReport",
    "count_three_term",
    "solve_unit_equation",
    "two_way_representations",
    # suites
    "CORPUS",
    "SuiteReport",
    "corpus_certificates",
    "run_suite",
]
