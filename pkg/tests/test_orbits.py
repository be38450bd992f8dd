from fractions import Fraction
from math import gcd

import pytest

from zsig import (
    DigitBudgetError,
    FiniteOrbitError,
    orbit,
    parse_poly,
    wandering_entries,
)
from zsig.verifiers import trinomial


def test_orbit_z2_plus_1():
    orb = orbit(parse_poly("1,0,1"), 6)
    assert orb.wandering
    assert [e.A for e in orb.entries] == [1, 2, 5, 26, 677, 458330]
    assert all(e.B == 1 for e in orb.entries)


def test_orbit_z3_plus_5_halves():
    orb = orbit(parse_poly("5/2,0,0,1"), 3)
    assert [(e.A, e.B) for e in orb.entries] == [(5, 2), (145, 8), (3049905, 512)]


def test_hit_zero_cycle():
    orb = orbit(parse_poly("-1,0,1"), 5)
    assert orb.kind == "hit_zero"
    assert orb.step == 2
    assert orb.describe_cycle() == "0 -> -1 -> 0"


def test_preperiodic_without_zero():
    # 0 -> -2 -> 2 -> 2 ...
    orb = orbit(parse_poly("-2,0,1"), 6)
    assert orb.kind == "preperiodic"
    assert (orb.tail, orb.period) == (2, 1)
    assert [e.A for e in orb.entries] == [-2, 2]


def test_wandering_entries_raises_on_finite():
    with pytest.raises(FiniteOrbitError):
        wandering_entries(parse_poly("-1,0,1"), 5)


def test_digit_budget():
    f = parse_poly("3,0,1")
    with pytest.raises(DigitBudgetError) as exc:
        orbit(f, 30, digit_budget=50)
    assert exc.value.entries  # partial results preserved
    assert all(len(str(e.abs_A)) <= 50 for e in exc.value.entries)


def test_entries_reduced_and_composable():
    f = parse_poly("z^3-2z^2+3")
    orb = orbit(f, 5)
    prev = Fraction(0)
    for e in orb.entries:
        assert gcd(abs(e.A), e.B) == 1
        assert e.B >= 1
        assert e.value == f.evaluate(prev)
        prev = e.value


def test_wandering_orbit_values_distinct():
    orb = orbit(parse_poly("1,0,1"), 8)
    values = [e.value for e in orb.entries]
    assert len(set(values)) == len(values)


@pytest.mark.parametrize(
    "d,e,c",
    [(3, 2, Fraction(5, 2)), (4, 2, Fraction(-5, 2)), (4, 3, Fraction(3, 2)),
     (5, 2, Fraction(1, 2)), (3, 2, Fraction(-7, 3))],
)
def test_denominator_tower_for_trinomials(d, e, c):
    b = c.denominator
    orb = orbit(trinomial(d, e, c), 5)
    assert orb.wandering
    for entry in orb.entries:
        assert entry.B == b ** (d ** (entry.n - 1))


def test_denominator_tower_for_binomial():
    f = parse_poly("z^3+7/2")
    for entry in orbit(f, 5).entries:
        assert entry.B == 2 ** (3 ** (entry.n - 1))
