"""Exact arithmetic in a varying-base positional system.

A radix schedule ``q_0, q_1, ...`` fixes place values ``n_0 = 1`` and
``n_{k+1} = n_k * q_k``.  Every ``0 <= n < n_k`` has a unique digit word
``(b_0, ..., b_{k-1})`` with ``0 <= b_j < q_j`` and ``n = sum(b_j * n_j)``.
Digits are always stored least significant first.

Points of the Cantor set ``K = prod_j {0, ..., q_j - 1}`` are represented
exactly only when their digits are eventually 0 or eventually ``q_j - 1``;
that class is closed under the odometer and its inverse.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

__all__ = [
    "Extension",
    "RadixSchedule",
    "parse_schedule",
    "DigitWord",
    "Tail",
    "CantorPoint",
    "Nat",
    "XPoint",
    "n_index",
    "to_digits",
    "from_digits",
    "truncate",
    "all_words",
    "words_extending",
    "zeros_point",
    "max_point",
]


class Extension(str, enum.Enum):
    REPEAT_LAST = "repeat-last"
    CYCLE = "cycle"


@dataclass(frozen=True)
class RadixSchedule:
    """Radices ``q_0..q_{m-1}`` plus a rule for ``q_j`` with ``j >= m``."""

    radices: tuple[int, ...]
    extension: Extension = Extension.REPEAT_LAST

    def __post_init__(self):
        radices = tuple(int(q) for q in self.radices)
        if not radices:
            raise ValueError("a radix schedule needs at least one radix")
        bad = [q for q in radices if q < 2]
        if bad:
            raise ValueError(f"every radix must be >= 2, got {bad}")
        object.__setattr__(self, "radices", radices)
        object.__setattr__(self, "extension", Extension(self.extension))

    def q(self, j: int) -> int:
        if j < 0:
            raise IndexError(f"radix index must be nonnegative, got {j}")
        m = len(self.radices)
        if j < m:
            return self.radices[j]
        if self.extension is Extension.CYCLE:
            return self.radices[j % m]
        return self.radices[-1]

    def n(self, k: int) -> int:
        return n_index(self, k)

    def level_for(self, bound: int) -> int:
        """Largest ``k`` with ``n_k <= bound``."""
        k = 0
        while self.n(k + 1) <= bound:
            k += 1
        return k

    def __str__(self) -> str:
        body = ",".join(str(q) for q in self.radices)
        return body + ("*" if self.extension is Extension.CYCLE else "")


def parse_schedule(text: str) -> RadixSchedule:
    """Parse ``"q0,q1,...,qm"`` (repeat-last) or ``"q0,...,qm*"`` (cycle)."""
    s = text.strip()
    extension = Extension.REPEAT_LAST
    if s.endswith("*"):
        extension = Extension.CYCLE
        s = s[:-1]
    try:
        radices = tuple(int(tok) for tok in s.split(","))
    except ValueError:
        raise ValueError(f"malformed radix schedule {text!r}") from None
    return RadixSchedule(radices, extension)


@lru_cache(maxsize=4096)
def _place_values(schedule: RadixSchedule, k: int) -> tuple[int, ...]:
    values = [1]
    for j in range(k):
        values.append(values[-1] * schedule.q(j))
    return tuple(values)


def n_index(schedule: RadixSchedule, k: int) -> int:
    """Return ``n_k = q_0 * ... * q_{k-1}``; ``n_0 = 1``.

    Python integers are unbounded, so the product is always exact.
    """
    if k < 0:
        raise ValueError(f"level must be nonnegative, got {k}")
    return _place_values(schedule, k)[k]


@dataclass(frozen=True)
class DigitWord:
    """A word ``beta`` in ``K_k``, least significant digit first."""

    digits: tuple[int, ...]
    schedule: RadixSchedule

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        for j, d in enumerate(digits):
            q = self.schedule.q(j)
            if not 0 <= d < q:
                raise ValueError(f"digit {d} at position {j} outside 0..{q - 1}")
        object.__setattr__(self, "digits", digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, j):
        return self.digits[j]

    @property
    def k(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        return from_digits(self)

    @property
    def modulus(self) -> int:
        return n_index(self.schedule, len(self.digits))

    def is_prefix_of(self, other: DigitWord) -> bool:
        return other.digits[: len(self.digits)] == self.digits

    def __str__(self) -> str:
        return ",".join(map(str, self.digits))


def to_digits(n: int, k: int, schedule: RadixSchedule) -> DigitWord:
    """Digits of ``n`` in ``K_k``; requires ``0 <= n < n_k``."""
    nk = n_index(schedule, k)
    if not 0 <= n < nk:
        raise ValueError(f"{n} is outside 0..{nk - 1} (n_{k} = {nk})")
    digits = []
    for j in range(k):
        n, d = divmod(n, schedule.q(j))
        digits.append(d)
    return DigitWord(tuple(digits), schedule)


def from_digits(beta: DigitWord) -> int:
    places = _place_values(beta.schedule, len(beta.digits))
    return sum(d * p for d, p in zip(beta.digits, places))


def all_words(schedule: RadixSchedule, k: int) -> Iterator[DigitWord]:
    """Every word of ``K_k`` in increasing order of value."""
    for n in range(n_index(schedule, k)):
        yield to_digits(n, k, schedule)


class Tail(str, enum.Enum):
    ZEROS = "Z"
    MAX = "M"

    def digit(self, schedule: RadixSchedule, j: int) -> int:
        return 0 if self is Tail.ZEROS else schedule.q(j) - 1


@dataclass(frozen=True)
class CantorPoint:
    """A point of ``K``: a finite prefix followed by an all-0 or all-max tail.

    The prefix is canonicalized on construction so that it never ends in a
    digit equal to the tail's digit at that position; equality of canonical
    forms is then equality of points.
    """

    schedule: RadixSchedule
    digits: tuple[int, ...] = ()
    tail: Tail = Tail.ZEROS

    def __post_init__(self):
        tail = Tail(self.tail)
        digits = list(DigitWord(tuple(self.digits), self.schedule).digits)
        while digits and digits[-1] == tail.digit(self.schedule, len(digits) - 1):
            digits.pop()
        object.__setattr__(self, "digits", tuple(digits))
        object.__setattr__(self, "tail", tail)

    @classmethod
    def from_word(cls, beta: DigitWord, tail: Tail = Tail.ZEROS) -> CantorPoint:
        return cls(beta.schedule, beta.digits, tail)

    @property
    def prefix(self) -> DigitWord:
        return DigitWord(self.digits, self.schedule)

    def digit(self, j: int) -> int:
        if j < len(self.digits):
            return self.digits[j]
        return self.tail.digit(self.schedule, j)

    def canonical(self) -> CantorPoint:
        # construction already canonicalizes
        return CantorPoint(self.schedule, self.digits, self.tail)

    @property
    def is_zeros(self) -> bool:
        return not self.digits and self.tail is Tail.ZEROS

    @property
    def is_max(self) -> bool:
        return not self.digits and self.tail is Tail.MAX

    def __str__(self) -> str:
        return f"{','.join(map(str, self.digits))}|{self.tail.value}"


def zeros_point(schedule: RadixSchedule) -> CantorPoint:
    return CantorPoint(schedule, (), Tail.ZEROS)


def max_point(schedule: RadixSchedule) -> CantorPoint:
    return CantorPoint(schedule, (), Tail.MAX)


def truncate(gamma: CantorPoint, k: int) -> DigitWord:
    """The word ``(gamma_0, ..., gamma_{k-1})``."""
    return DigitWord(tuple(gamma.digit(j) for j in range(k)), gamma.schedule)


@dataclass(frozen=True)
class Nat:
    """A natural number viewed as a point of ``X = N u K``."""

    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise ValueError(f"Nat requires a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    def __str__(self) -> str:
        return str(self.n)


XPoint = Union[Nat, CantorPoint]


def words_extending(beta: DigitWord, k: int) -> Iterable[DigitWord]:
    """All words of length ``k`` having ``beta`` as a prefix."""
    base = beta.value
    step = beta.modulus
    count = n_index(beta.schedule, k) // step
    for i in range(count):
        yield to_digits(base + i * step, k, beta.schedule)
