from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bdodometer.mixedradix import (
    CantorPoint,
    DigitWord,
    Nat,
    RadixSchedule,
    Tail,
    all_words,
    from_digits,
    max_point,
    n_index,
    to_digits,
    truncate,
    zeros_point,
)
from bdodometer.odometer import (
    DomainError,
    cylinder_measure,
    cylinder_visits,
    format_orbit,
    odometer_inverse,
    odometer_partial,
    odometer_total,
    orbit,
    parse_orbit,
    parse_point,
    prefix_increment,
    step_X,
)

from conftest import cantor_points, schedules


def big_int_successor(gamma, k):
    """Oracle: value of the first k digits plus one, mod n_k, as plain integers."""
    sched = gamma.schedule
    v, place = 0, 1
    for j in range(k):
        v += gamma.digit(j) * place
        place *= sched.q(j)
    return (v + 1) % place


def test_wrap_case(s232):
    assert odometer_total(max_point(s232)) == zeros_point(s232)
    with pytest.raises(DomainError):
        odometer_partial(max_point(s232))


def test_total_examples(s232):
    g = CantorPoint(s232, (1, 2), Tail.ZEROS)
    assert odometer_total(g) == CantorPoint(s232, (0, 0, 1), Tail.ZEROS)
    assert odometer_total(CantorPoint(s232, (0,), Tail.ZEROS)) == CantorPoint(s232, (1,), Tail.ZEROS)


def test_partial_examples(s232):
    g = CantorPoint(s232, (1, 2), Tail.ZEROS)
    assert odometer_partial(g) == odometer_total(g)
    assert odometer_partial(CantorPoint(s232, (0,), Tail.MAX)) == CantorPoint(s232, (1,), Tail.MAX)


def test_inverse_examples(s232):
    assert odometer_inverse(zeros_point(s232)) == max_point(s232)
    assert odometer_inverse(CantorPoint(s232, (0, 0, 1), Tail.ZEROS)) == CantorPoint(s232, (1, 2), Tail.ZEROS)


def test_carry_into_max_tail_stops_inside_prefix(s232):
    # 1,0 | M: position 0 is max, carry lands on position 1
    g = CantorPoint(s232, (1, 0), Tail.MAX)
    assert odometer_total(g) == CantorPoint(s232, (0, 1), Tail.MAX)


@given(cantor_points())
def test_inverse_law(g):
    assert odometer_inverse(odometer_total(g)) == g
    assert odometer_total(odometer_inverse(g)) == g


@given(cantor_points())
def test_partial_agrees_off_max(g):
    if g.is_max:
        with pytest.raises(DomainError):
            odometer_partial(g)
    else:
        assert odometer_partial(g) == odometer_total(g)


@given(cantor_points(), st.integers(0, 10))
def test_big_integer_oracle_random(g, k):
    assert from_digits(truncate(odometer_total(g), k)) == big_int_successor(g, k)


@pytest.mark.parametrize("radices", [(2, 3, 2), (2,), (5, 2)])
def test_big_integer_oracle_exhaustive(radices):
    sched = RadixSchedule(radices)
    k = sched.level_for(10**4)
    nk = n_index(sched, k)
    for v in range(nk):
        g = CantorPoint(sched, to_digits(v, k, sched).digits, Tail.ZEROS)
        assert from_digits(truncate(odometer_total(g), k)) == (v + 1) % nk


def test_step_X():
    s = RadixSchedule((2, 3))
    assert step_X(Nat(7)) == Nat(8)
    assert step_X(Nat(0)) == Nat(1)
    assert step_X(max_point(s)) == zeros_point(s)
    with pytest.raises(TypeError):
        step_X(3)


@given(st.integers(0, 10**6))
def test_step_X_never_hits_zero(n):
    assert step_X(Nat(n)) != Nat(0)


def test_prefix_increment_examples(s23):
    assert prefix_increment(DigitWord((1, 2), s23)).digits == (0, 0)
    assert prefix_increment(DigitWord((0, 0), s23)).digits == (1, 0)


@pytest.mark.parametrize("k", range(5))
def test_prefix_increment_is_one_cycle(s232, k):
    nk = n_index(s232, k)
    for beta in all_words(s232, k):
        w, seen = beta, set()
        for _ in range(nk):
            seen.add(w.digits)
            w = prefix_increment(w)
        assert w == beta
        assert len(seen) == nk


def test_orbit_examples(s23):
    rec = orbit(Nat(0), 3)
    assert [p.n for p in rec.points] == [0, 1, 2, 3]
    rec = orbit(max_point(s23), 1)
    assert rec.points == (max_point(s23), zeros_point(s23))
    k = 2
    rec = orbit(zeros_point(s23), n_index(s23, k))
    assert truncate(rec.points[-1], k).digits == (0, 0)


def test_orbit_rejects_negative():
    with pytest.raises(ValueError):
        orbit(Nat(0), -1)


def test_cylinder_measure(s23):
    assert cylinder_measure(DigitWord((1,), s23)) == Fraction(1, 2)
    assert cylinder_measure(DigitWord((1, 2), s23)) == Fraction(1, 6)
    assert cylinder_measure(DigitWord((), s23)) == 1


@pytest.mark.parametrize("start", ["zeros", "max", "1|Z", "0,1|M"])
def test_visit_order_windows(s232, start):
    k = 3
    nk = n_index(s232, k)
    pts = orbit(parse_point(start, s232), 3 * nk).points
    prefixes = [truncate(p, k).digits for p in pts]
    for i in range(len(prefixes) - nk + 1):
        assert len(set(prefixes[i:i + nk])) == nk


@pytest.mark.parametrize("T", [1, 7, 13, 50])
def test_birkhoff_floor_ceil(s232, T):
    k = 2
    nk = n_index(s232, k)
    counts = cylinder_visits(orbit(max_point(s232), T).points[:T], k, s232)
    for beta in all_words(s232, k):
        assert counts[beta.digits] in (T // nk, -(-T // nk))
        assert abs(Fraction(counts[beta.digits], T) - Fraction(1, nk)) <= Fraction(nk, T)


def test_cylinder_visits_naturals(s23):
    counts = cylinder_visits([Nat(n) for n in range(12)], 2, s23)
    assert all(c == 2 for c in counts.values()) and len(counts) == 6


def test_orbit_text_roundtrip(s232):
    for start in (Nat(4), zeros_point(s232), CantorPoint(s232, (1, 2), Tail.MAX)):
        rec = orbit(start, 10)
        text = format_orbit(rec)
        assert parse_orbit(text, s232) == rec


def test_point_format(s232):
    assert str(CantorPoint(s232, (1, 2), Tail.ZEROS)) == "1,2|Z"
    assert str(max_point(s232)) == "|M"
    assert parse_point("nat:5", s232) == Nat(5)
    assert parse_point("1,0,0|z", s232) == CantorPoint(s232, (1,), Tail.ZEROS)
    for bad in ("1,2|Q", "x", "1,a|Z"):
        with pytest.raises(ValueError):
            parse_point(bad, s232)


@given(st.data())
def test_format_parse_points(data):
    sched = data.draw(schedules)
    g = data.draw(cantor_points(sched))
    assert parse_point(str(g), sched) == g
