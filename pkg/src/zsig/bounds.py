"""Sign-set machinery, growth inequalities, and the index bound for
Zsigmondy elements.

The index bound needs (a) a positive certified lower bound on the canonical
height of the constant term and (b) a growth certificate guaranteeing every
iterate of the constant term has absolute value >= 1.  The certificate is
either the exact coefficient-domination inequality evaluated at the constant
term, or a family-specific fact for z^d [+ z^e] + c shapes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_DIGIT_BUDGET
from .orbits import iterate_point
from .polynomials import PolyQ

# Directed-rounding slack: bound comparisons must fail safe toward larger n.
_REL_SLACK = 1e-12


@dataclass(frozen=True)
class SignSets:
    P_plus: frozenset[int]
    P_minus: frozenset[int]
    N_plus: frozenset[int]
    N_minus: frozenset[int]
    n_plus: int
    n_minus: int


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def compute_sign_sets(f: PolyQ) -> SignSets:
    """Split indices 0..d by whether the (alternating-)sign of a_i matches the
    leading coefficient; zero coefficients side with the matching set."""
    d = f.degree
    lead_sgn = _sgn(f.leading)
    alt_lead_sgn = _sgn((-1) ** d * f.leading)
    p_plus, p_minus = set(), set()
    for i, a in enumerate(f.coeffs):
        if a == 0 or _sgn(a) == lead_sgn:
            p_plus.add(i)
        if a == 0 or _sgn((-1) ** i * a) == alt_lead_sgn:
            p_minus.add(i)
    all_idx = set(range(d + 1))
    n_plus_set = all_idx - p_plus
    n_minus_set = all_idx - p_minus
    n_plus = max(1, max(n_plus_set)) if n_plus_set else 1
    n_minus = max(1, max(n_minus_set)) if n_minus_set else 1
    return SignSets(
        frozenset(p_plus), frozenset(p_minus),
        frozenset(n_plus_set), frozenset(n_minus_set),
        n_plus, n_minus,
    )


def check_condition3(f: PolyQ, z: Fraction) -> bool:
    """Exact test that |z| dominates the off-sign coefficients on both sides:

        sum_{n< i <= d} |a_i| |z|^(i-n)  >=  sum_{i in N} |a_i| + 1

    for (N, n) = (N+, n+) and (N-, n-).  Requires |z| >= 1.
    """
    az = abs(z)
    if az < 1:
        raise ValueError("inequality is only meaningful for |z| >= 1")
    signs = compute_sign_sets(f)
    for n_set, n_idx in ((signs.N_plus, signs.n_plus), (signs.N_minus, signs.n_minus)):
        lhs = sum(
            abs(f.coeffs[i]) * az ** (i - n_idx)
            for i in range(n_idx + 1, f.degree + 1)
        )
        rhs = sum(abs(f.coeffs[i]) for i in n_set) + 1
        if lhs < rhs:
            return False
    return True


def prop31_check(
    f: PolyQ, z: Fraction, K: int, *, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> bool:
    """Empirically confirm |f^k(z)| >= |z| for k = 1..K with exact rationals.

    Preconditions (|z| >= 1 and the domination inequality) are enforced;
    a False return is a contradiction flag, not an expected outcome.
    """
    az = abs(z)
    if az < 1:
        raise ValueError("requires |z| >= 1")
    if not check_condition3(f, z):
        raise ValueError("coefficient-domination inequality fails at z")
    values = iterate_point(f, z, K, digit_budget=digit_budget)
    return all(abs(v) >= az for v in values[1:])


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            count += 1
            while m % p == 0:
                m //= p
        p += 1
    return count + (1 if m > 1 else 0)


def s_d(d: int, n: int) -> int:
    """sum of d^(n/q) over distinct primes q dividing n (0 for n = 1)."""
    if d < 2 or n < 1:
        raise ValueError("requires d >= 2 and n >= 1")
    total = 0
    m, p = n, 2
    primes = []
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    for q in primes:
        total += d ** (n // q)
    return total


def omega_inequality_audit(d: int, n_max: int) -> tuple[list[int], list[int]]:
    """Exact audit of 2*omega(n) + 1 < d^(n/2) for 2 <= n <= n_max.

    Returns (equality indices, strict violation indices); compared via
    (2w+1)^2 against d^n so no real arithmetic is involved.
    """
    if d < 3:
        raise ValueError("audit applies to d >= 3")
    equalities, violations = [], []
    # smallest-prime-factor sieve for omega over the whole range
    spf = list(range(n_max + 1))
    for p in range(2, int(math.isqrt(n_max)) + 1):
        if spf[p] == p:
            for multiple in range(p * p, n_max + 1, p):
                if spf[multiple] == multiple:
                    spf[multiple] = p
    for n in range(2, n_max + 1):
        if n > 64:
            break  # 2w+1 <= 31 < d^32 from here on
        m, w = n, 0
        while m > 1:
            p = spf[m]
            w += 1
            while m % p == 0:
                m //= p
        lhs_sq = (2 * w + 1) ** 2
        rhs = d**n
        if lhs_sq == rhs:
            equalities.append(n)
        elif lhs_sq > rhs:
            violations.append(n)
    return equalities, violations


def omega_inequality_check(d: int, n_max: int) -> bool:
    """True iff 2*omega(n) + 1 < d^(n/2) strictly for every 2 <= n <= n_max."""
    equalities, violations = omega_inequality_audit(d, n_max)
    return not equalities and not violations


@dataclass(frozen=True)
class BoundResult:
    n_max: float
    n_max_floor: int
    hhat_lower_used: float
    C_used: float
    certified: bool


def growth_certificate(f: PolyQ) -> bool:
    """True when every iterate of the constant term is certified >= 1 in
    absolute value: the domination inequality at a_0, or membership in a
    z^d [+ z^e] + c family with |c| > 2 or c > 1."""
    a0 = f.constant
    if abs(a0) >= 1 and check_condition3(f, a0):
        return True
    form = f.trinomial_form()
    if form is not None:
        _, _, c = form
        if abs(c) > 2 or c > 1:
            return True
    return False


def theorem1_bound(f: PolyQ, hhat_lower: float, C: float) -> BoundResult:
    """Evaluate the index bound (2/log d) log(dC / ((d-1) hhat)) + 2.

    Rounding is conservative: C up, hhat down, and the result up before the
    floor, so float error can only loosen the bound.  ``certified`` is set
    when a growth certificate holds for the constant term.
    """
    if not f.admissible:
        raise ValueError("bound requires a zero linear coefficient")
    if abs(f.constant) < 1:
        raise ValueError("bound requires |a_0| >= 1")
    if hhat_lower <= 0:
        raise ValueError("bound is vacuous without a positive height lower bound")
    d = f.degree
    c_up = C * (1 + _REL_SLACK)
    h_down = hhat_lower * (1 - _REL_SLACK)
    n_max = 2 / math.log(d) * math.log(d * c_up / ((d - 1) * h_down)) + 2
    n_max = n_max * (1 + _REL_SLACK)
    return BoundResult(
        n_max=n_max,
        n_max_floor=math.floor(n_max),
        hhat_lower_used=hhat_lower,
        C_used=C,
        certified=growth_certificate(f),
    )
