"""Integer arithmetic support: primality, p-adic valuation, budgeted factoring.

Numerators of orbit sequences routinely reach thousands of digits, so trial
division works through gcds with precomputed prime-block products, and the
Pollard rho stage is charged against a work budget that scales with operand
size.  Everything here is deterministic for fixed (input, budget, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .config import DEFAULT_PRIMALITY_ROUNDS, DEFAULT_RHO_BUDGET, DEFAULT_TRIAL_BOUND

# Below this, the fixed Miller-Rabin base set is a proven primality test.
DETERMINISTIC_MR_LIMIT = 3_317_044_064_679_887_385_961_981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# Verified base sets for deterministic Miller-Rabin at increasing thresholds.
_MR_STAGES = (
    (341_531, (9345883071009581737,)),
    (1_050_535_501, (336781006125, 9639812373923155)),
    (350_269_456_337, (4230279247111683200, 14694767155120705706, 16641139526367750375)),
    (55_245_642_489_451, (2, 141889084524735, 1199124725622454117, 11096072698276303650)),
    (7_999_252_175_582_851,
     (2, 4130806001517, 149795463772692060, 186635894390467037, 3967304179347715805)),
    (585_226_005_592_931_977,
     (2, 123635709730000, 9233062284813009, 43835965440333360,
      761179012939631437, 1263739024124850375)),
    (18_446_744_073_709_551_616, (2, 325, 9375, 28178, 450775, 9780504, 1795265022)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (DETERMINISTIC_MR_LIMIT, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    """True when a proves n composite."""
    a %= n
    if a <= 1:
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _is_square(n: int) -> bool:
    r = isqrt(n)
    return r * r == n


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameter choice."""
    if _is_square(n):
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -(D + 2) if D > 0 else -(D - 2)
    Q = (1 - D) // 4
    # factor n+1 = d * 2^s
    d = n + 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Lucas sequences U_d, V_d via binary ladder
    U, V, k = 1, 1, (1 << (d.bit_length() - 1))
    Qk = Q % n
    inv2 = pow(2, -1, n)
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (U + V) * inv2 % n, (V + D * U) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(m: int, *, rounds: int = DEFAULT_PRIMALITY_ROUNDS) -> bool:
    """Primality test: deterministic below 3.3e24, Miller-Rabin+Lucas beyond."""
    if m < 1:
        raise ValueError("is_prime expects a positive integer")
    if m == 1:
        return False
    for p in _SMALL_PRIMES:
        if m % p == 0:
            return m == p
    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if m < DETERMINISTIC_MR_LIMIT:
        for limit, bases in _MR_STAGES:
            if m < limit:
                return not any(_mr_witness(a, d, s, m) for a in bases)
    rng = random.Random(m % (1 << 61))
    for _ in range(rounds):
        if _mr_witness(rng.randrange(2, m - 1), d, s, m):
            return False
    return _strong_lucas_prp(m)


def v_p(m: int, p: int) -> int:
    """Largest k with p^k dividing m; m must be nonzero."""
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    m = abs(m)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


@lru_cache(maxsize=4)
def _sieve_primes(bound: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            start = p * p
            sieve[start::p] = b"\x00" * ((bound - start) // p + 1)
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _product(nums: tuple[int, ...]) -> int:
    # balanced product tree; quadratic blowup hurts at 78k primes
    while len(nums) > 1:
        nums = tuple(
            nums[i] * nums[i + 1] if i + 1 < len(nums) else nums[i]
            for i in range(0, len(nums), 2)
        )
    return nums[0] if nums else 1


@lru_cache(maxsize=4)
def _primorial(bound: int) -> int:
    return _product(_sieve_primes(bound))


def trial_division(m: int, bound: int = DEFAULT_TRIAL_BOUND) -> tuple[dict[int, int], int]:
    """Strip all prime factors <= bound from m; return ({p: e}, remaining)."""
    if m < 1:
        raise ValueError("trial_division expects a positive integer")
    found: dict[int, int] = {}
    if m == 1:
        return found, 1
    if m.bit_length() <= 64:
        for p in _sieve_primes(bound):
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                found[p] = e
        if 1 < m <= bound:
            found[m] = found.get(m, 0) + 1
            m = 1
        return found, m
    # one gcd against the primorial finds the squarefree product of all
    # small prime divisors; scanning that small product is then cheap
    g = gcd(m, _primorial(bound))
    if g > 1:
        for p in _sieve_primes(bound):
            if g % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                found[p] = e
                g //= p
                if g == 1:
                    break
    return found, m


# Work units approximate 64-bit word multiplies; a floor of 256 per step
# reflects interpreter overhead so the default budget stays desk-scale.
_RHO_STEP_FLOOR = 256
_PRIME_CHECK_FLOOR_BITS = 2048


def _rho_cost(n: int) -> int:
    words = (n.bit_length() + 63) // 64
    return max(_RHO_STEP_FLOOR, words * words)


def _prime_check_cost(n: int) -> int:
    words = (n.bit_length() + 63) // 64
    return n.bit_length() * words * words


def _budgeted_is_prime(n: int, budget: int) -> tuple[bool | None, int]:
    """is_prime unless a single test would dwarf the remaining budget.

    Returns (verdict or None when skipped, work charged).  Small operands are
    always tested; huge ones are left unresolved rather than stalling.
    """
    cost = _prime_check_cost(n)
    if n.bit_length() > _PRIME_CHECK_FLOOR_BITS and cost > budget:
        return None, 0
    return is_prime(n), cost


def _brent_rho(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Brent-cycle factor hunt; returns (factor or None, work spent)."""
    cost = _rho_cost(n)
    spent = 0
    while spent < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m_batch = 128
        r, q, g = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            spent += r * cost
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m_batch, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                spent += 2 * steps * cost
                g = gcd(q, n)
                k += m_batch
            r <<= 1
            if spent >= budget and g == 1:
                return None, spent
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                spent += 2 * cost
                if spent >= budget:
                    return None, spent
        if g < n:
            return g, spent
        # unlucky cycle: retry with fresh parameters
    return None, spent


@dataclass(frozen=True)
class FactorReport:
    """Partial factorization: input = prod(p^e) * cofactor.

    cofactor_status "composite_unfactored" also covers cofactors whose
    primality was never established because the work budget ran out first.
    """

    input: int
    factored: tuple[tuple[int, int], ...]
    cofactor: int
    cofactor_status: str  # "one" | "probable_prime" | "composite_unfactored"

    def reconstruct(self) -> int:
        acc = self.cofactor
        for p, e in self.factored:
            acc *= p**e
        return acc

    @property
    def complete(self) -> bool:
        return self.cofactor == 1


def factor(
    m: int,
    *,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
    seed: int = 0,
) -> FactorReport:
    """Trial division then budgeted Brent rho; never fails, may leave a cofactor."""
    if m < 1:
        raise ValueError("factor expects a positive integer")
    if m == 1:
        return FactorReport(1, (), 1, "one")
    found, rest = trial_division(m, trial_bound)
    budget = rho_budget
    pending = [rest] if rest > 1 else []
    unresolved: list[tuple[int, bool]] = []  # (value, known probable prime)
    while pending:
        n = pending.pop()
        if n == 1:
            continue
        verdict, spent = _budgeted_is_prime(n, budget)
        budget -= spent
        if verdict is None:
            unresolved.append((n, False))
            continue
        if verdict:
            if n < DETERMINISTIC_MR_LIMIT:
                found[n] = found.get(n, 0) + 1
            else:
                unresolved.append((n, True))
            continue
        if budget <= 0:
            unresolved.append((n, False))
            continue
        rng = random.Random((n % (1 << 61)) ^ seed)
        divisor, spent = _brent_rho(n, budget, rng)
        budget -= spent
        if divisor is None:
            unresolved.append((n, False))
        else:
            pending.append(divisor)
            pending.append(n // divisor)
    cofactor = 1
    for n, _ in unresolved:
        cofactor *= n
    if cofactor == 1:
        status = "one"
    elif len(unresolved) == 1 and unresolved[0][1]:
        status = "probable_prime"
    else:
        status = "composite_unfactored"
    factored = tuple(sorted(found.items()))
    return FactorReport(m, factored, cofactor, status)
