"""The odometer on ``K``, its partial version, and the map ``f`` on ``X``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .mixedradix import (
    CantorPoint,
    DigitWord,
    Nat,
    RadixSchedule,
    Tail,
    XPoint,
    from_digits,
    n_index,
    to_digits,
    truncate,
    zeros_point,
    max_point,
)

__all__ = [
    "DomainError",
    "OrbitRecord",
    "odometer_total",
    "odometer_partial",
    "odometer_inverse",
    "step_X",
    "prefix_increment",
    "orbit",
    "cylinder_measure",
    "cylinder_visits",
    "format_point",
    "parse_point",
    "format_orbit",
    "parse_orbit",
]


class DomainError(ValueError):
    """Raised when a partial map is applied outside its domain."""


def odometer_total(gamma: CantorPoint) -> CantorPoint:
    """Add ``(1, 0, 0, ...)`` with carry to the right.

    A carry that runs through the whole prefix into a max tail never stops,
    so the result is the all-zeros point.
    """
    sched = gamma.schedule
    digits = list(gamma.digits)
    for j, d in enumerate(digits):
        if d < sched.q(j) - 1:
            digits[j] = d + 1
            return CantorPoint(sched, tuple(digits), gamma.tail)
        digits[j] = 0
    if gamma.tail is Tail.MAX:
        return zeros_point(sched)
    # a zero tail absorbs the carry at its first position (q_j >= 2)
    digits.append(1)
    return CantorPoint(sched, tuple(digits), Tail.ZEROS)


def odometer_partial(gamma: CantorPoint) -> CantorPoint:
    """The odometer with the all-max point removed from its domain."""
    if gamma.is_max:
        raise DomainError("partial odometer is undefined at (q_0-1, q_1-1, ...)")
    return odometer_total(gamma)


def odometer_inverse(gamma: CantorPoint) -> CantorPoint:
    sched = gamma.schedule
    digits = list(gamma.digits)
    for j, d in enumerate(digits):
        if d > 0:
            digits[j] = d - 1
            return CantorPoint(sched, tuple(digits), gamma.tail)
        digits[j] = sched.q(j) - 1
    if gamma.tail is Tail.ZEROS:
        return max_point(sched)
    digits.append(sched.q(len(digits)) - 2)
    return CantorPoint(sched, tuple(digits), Tail.MAX)


def step_X(x: XPoint) -> XPoint:
    """Translation by one on ``N``, the odometer on ``K``."""
    if isinstance(x, Nat):
        return Nat(x.n + 1)
    if isinstance(x, CantorPoint):
        return odometer_total(x)
    raise TypeError(f"not a point of X: {x!r}")


def prefix_increment(beta: DigitWord) -> DigitWord:
    """``beta + 1`` modulo ``n_k``: the level-k shadow of the odometer."""
    k = len(beta)
    return to_digits((from_digits(beta) + 1) % n_index(beta.schedule, k), k, beta.schedule)


@dataclass(frozen=True)
class OrbitRecord:
    start: XPoint
    steps: int
    points: tuple

    def __post_init__(self):
        if len(self.points) != self.steps + 1 or self.points[0] != self.start:
            raise ValueError("orbit record is inconsistent with its start/steps")


def orbit(x: XPoint, steps: int) -> OrbitRecord:
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    points = [x]
    for _ in range(steps):
        points.append(step_X(points[-1]))
    return OrbitRecord(x, steps, tuple(points))


def cylinder_measure(beta: DigitWord) -> Fraction:
    """Mass of the cylinder of ``beta`` under the uniform product measure."""
    return Fraction(1, n_index(beta.schedule, len(beta)))


def cylinder_visits(points, k: int, schedule: RadixSchedule) -> Counter:
    """Count visits of each level-k cylinder, keyed by digit tuple.

    A natural number ``n`` is binned by the digits of ``n mod n_k``.
    """
    nk = n_index(schedule, k)
    counts = Counter()
    for p in points:
        if isinstance(p, Nat):
            counts[to_digits(p.n % nk, k, schedule).digits] += 1
        else:
            counts[truncate(p, k).digits] += 1
    return counts


def format_point(x: XPoint) -> str:
    return str(x)


def parse_point(text: str, schedule: RadixSchedule) -> XPoint:
    """Inverse of :func:`format_point`.

    Besides the serialized forms this accepts ``zeros``, ``max`` and
    ``nat:<n>``.
    """
    s = text.strip()
    if s == "zeros":
        return zeros_point(schedule)
    if s == "max":
        return max_point(schedule)
    if s.startswith("nat:"):
        s = s[4:]
    if "|" not in s:
        try:
            return Nat(int(s))
        except ValueError:
            raise ValueError(f"malformed point {text!r}") from None
    body, _, tag = s.partition("|")
    tag = tag.strip().upper()
    if tag not in ("Z", "M"):
        raise ValueError(f"tail tag must be Z or M in {text!r}")
    try:
        digits = tuple(int(t) for t in body.split(",")) if body.strip() else ()
    except ValueError:
        raise ValueError(f"malformed digits in {text!r}") from None
    return CantorPoint(schedule, digits, Tail(tag))


def format_orbit(record: OrbitRecord) -> str:
    return "".join(format_point(p) + "\n" for p in record.points)


def parse_orbit(text: str, schedule: RadixSchedule) -> OrbitRecord:
    points = tuple(parse_point(line, schedule) for line in text.splitlines() if line.strip())
    if not points:
        raise ValueError("empty orbit")
    return OrbitRecord(points[0], len(points) - 1, points)
