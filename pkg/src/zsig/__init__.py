"""Orbits of rational polynomials at 0: primitive prime divisors, Zsigmondy
sets, and explicit canonical-height index bounds, all in exact arithmetic."""

from .arith import FactorReport, factor, is_prime, v_p
from .bounds import (
    BoundResult,
    SignSets,
    check_condition3,
    compute_sign_sets,
    omega,
    omega_inequality_audit,
    omega_inequality_check,
    prop31_check,
    s_d,
    theorem1_bound,
)
from .config import RunConfig, config_from_env
from .heights import (
    GlobalC,
    HeightInterval,
    canonical_height_interval,
    family_C,
    global_C,
    global_height,
    ingram_lower_bound,
    lemma41_lower_bound,
    local_C_v,
    numeric_D_estimate,
    trinomial_D_lower,
    trinomial_family_lower,
)
from .orbits import (
    DigitBudgetError,
    FiniteOrbitError,
    Orbit,
    OrbitEntry,
    iterate_point,
    orbit,
    wandering_entries,
)
from .polynomials import ParseError, PolyQ, Rational, clear_denominators, parse_poly
from .verifiers import (
    SweepSpec,
    TheoremVerdict,
    run_sweep,
    verify,
    verify_cor12,
    verify_prop51,
    verify_prop52,
    verify_prop53,
    verify_prop54,
    verify_thm13,
)
from .zsigmondy import (
    PrimitiveVerdict,
    ZsigmondyReport,
    check_zsigmondy_divisibility,
    cor23_inequality,
    primitive_verdict,
    verify_rigid_divisibility,
    zsigmondy_set,
)

__version__ = "0.1.0"
