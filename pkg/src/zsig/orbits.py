"""Forward orbit of 0 under a rational polynomial, with exact bookkeeping.

Each iterate f^n(0) = A_n / B_n is kept in lowest terms (B_n > 0).  Orbits
terminate early when an iterate repeats (preperiodic) or returns to 0, and a
digit budget guards against runaway growth (sizes scale like d^n digits).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .config import DEFAULT_DIGIT_BUDGET
from .polynomials import PolyQ

# decimal digits <= floor(bits * log10(2)) + 1
_LOG10_2 = 0.30102999566398120


def decimal_digits(n: int) -> int:
    """Upper estimate of the decimal digit count of |n|, cheap for huge ints."""
    if n == 0:
        return 1
    return int(abs(n).bit_length() * _LOG10_2) + 1


class DigitBudgetError(RuntimeError):
    """An iterate outgrew the digit budget; ``entries`` holds what was computed."""

    def __init__(self, message: str, entries: list["OrbitEntry"]):
        super().__init__(message)
        self.entries = entries


class FiniteOrbitError(ValueError):
    """Raised where a wandering orbit is required but the orbit is finite."""

    def __init__(self, message: str, orbit: "Orbit"):
        super().__init__(message)
        self.orbit = orbit


@dataclass(frozen=True)
class OrbitEntry:
    n: int
    value: Fraction

    @property
    def A(self) -> int:
        return self.value.numerator

    @property
    def B(self) -> int:
        return self.value.denominator

    @property
    def abs_A(self) -> int:
        return abs(self.value.numerator)

    @property
    def is_unit(self) -> bool:
        return abs(self.value.numerator) == 1


WANDERING = "wandering"
PREPERIODIC = "preperiodic"
HIT_ZERO = "hit_zero"


@dataclass
class Orbit:
    """Computed orbit data plus its classification.

    kind is one of "wandering", "preperiodic", "hit_zero".  For preperiodic
    orbits, f^(tail+period)(0) = f^tail(0) with tail >= 1; a return to 0
    itself is reported as hit_zero with ``step`` the first n with f^n(0)=0.
    """

    kind: str
    entries: list[OrbitEntry] = field(default_factory=list)
    tail: int | None = None
    period: int | None = None
    step: int | None = None

    @property
    def wandering(self) -> bool:
        return self.kind == WANDERING

    def describe_cycle(self) -> str:
        if self.kind == HIT_ZERO:
            vals = ["0"] + [str(e.value) for e in self.entries]
            return " -> ".join(vals)
        if self.kind == PREPERIODIC:
            vals = ["0"] + [str(e.value) for e in self.entries]
            vals.append(str(self.entries[self.tail - 1].value))
            return " -> ".join(vals)
        return "wandering"


def _check_budget(x: Fraction, budget: int, entries: list[OrbitEntry], n: int) -> None:
    if decimal_digits(x.numerator) > budget or decimal_digits(x.denominator) > budget:
        raise DigitBudgetError(
            f"iterate {n} exceeds digit budget of {budget} decimal digits", entries
        )


def orbit(f: PolyQ, N: int, *, digit_budget: int = DEFAULT_DIGIT_BUDGET) -> Orbit:
    """Compute f^1(0) .. f^N(0), stopping early on a finite orbit."""
    if N < 1:
        raise ValueError("N must be >= 1")
    entries: list[OrbitEntry] = []
    seen: dict[Fraction, int] = {Fraction(0): 0}
    x = Fraction(0)
    for n in range(1, N + 1):
        x = f.evaluate(x)
        _check_budget(x, digit_budget, entries, n)
        if x == 0:
            entries.append(OrbitEntry(n, x))
            return Orbit(HIT_ZERO, entries, tail=0, period=n, step=n)
        first = seen.get(x)
        if first is not None:
            return Orbit(PREPERIODIC, entries, tail=first, period=n - first)
        seen[x] = n
        entries.append(OrbitEntry(n, x))
    return Orbit(WANDERING, entries)


def iterate_point(
    f: PolyQ, x: Fraction, N: int, *, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> list[Fraction]:
    """Return [x, f(x), ..., f^N(x)] exactly, guarding sizes.

    On budget exhaustion the values computed so far are returned (callers use
    the deepest iterate they got).
    """
    values = [x]
    for _ in range(N):
        x = f.evaluate(x)
        if decimal_digits(x.numerator) > digit_budget or decimal_digits(x.denominator) > digit_budget:
            break
        values.append(x)
    return values


def wandering_entries(
    f: PolyQ, N: int, *, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> list[OrbitEntry]:
    """Orbit entries 1..N for a wandering orbit; FiniteOrbitError otherwise."""
    orb = orbit(f, N, digit_budget=digit_budget)
    if not orb.wandering:
        raise FiniteOrbitError(f"orbit of 0 is finite ({orb.describe_cycle()})", orb)
    return orb.entries
