"""Level-k model of ``D = C(K)`` and the automorphism induced by the odometer.

A function on ``K`` that depends only on the first ``k`` digits is an
``n_k``-periodic sequence, stored as its ``n_k`` values.  Modding out by
compact operators is modelled by ignoring differences supported in a fixed
finite set of indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .mixedradix import DigitWord, RadixSchedule, n_index
from .odometer import prefix_increment
from .operator_model import DEFAULT_EPS, e_beta_diag, theta

__all__ = [
    "LevelFunction",
    "indicator",
    "refine",
    "induced_automorphism",
    "compatibility_defect",
    "quotient_compatibility",
]


@dataclass(frozen=True, eq=False)
class LevelFunction:
    schedule: RadixSchedule
    level: int
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        expected = n_index(self.schedule, self.level)
        if values.shape != (expected,):
            raise ValueError(f"level {self.level} needs {expected} values, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __eq__(self, other):
        if not isinstance(other, LevelFunction):
            return NotImplemented
        return (
            self.schedule == other.schedule
            and self.level == other.level
            and np.array_equal(self.values, other.values)
        )

    def __mul__(self, other: LevelFunction) -> LevelFunction:
        other = _match(self, other)
        return LevelFunction(self.schedule, self.level, self.values * other.values)

    def __add__(self, other: LevelFunction) -> LevelFunction:
        other = _match(self, other)
        return LevelFunction(self.schedule, self.level, self.values + other.values)

    def conj(self) -> LevelFunction:
        return LevelFunction(self.schedule, self.level, self.values.conj())

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def to_json(self) -> str:
        return json.dumps(
            {"level": self.level, "values": [[v.real, v.imag] for v in self.values.tolist()]}
        )

    @classmethod
    def from_json(cls, text: str, schedule: RadixSchedule) -> LevelFunction:
        doc = json.loads(text)
        values = [complex(re, im) for re, im in doc["values"]]
        return cls(schedule, int(doc["level"]), np.array(values))


def _match(f: LevelFunction, g: LevelFunction) -> LevelFunction:
    if f.schedule != g.schedule or f.level != g.level:
        raise ValueError("level functions live on different levels")
    return g


def indicator(beta: DigitWord) -> LevelFunction:
    k = len(beta)
    values = np.zeros(n_index(beta.schedule, k), dtype=complex)
    values[beta.value] = 1
    return LevelFunction(beta.schedule, k, values)


def refine(f: LevelFunction, to_level: int) -> LevelFunction:
    """View ``f`` as a function of the first ``to_level`` digits."""
    if to_level < f.level:
        raise ValueError(f"cannot refine level {f.level} down to {to_level}")
    nk = n_index(f.schedule, f.level)
    m = np.arange(n_index(f.schedule, to_level))
    return LevelFunction(f.schedule, to_level, f.values[m % nk])


def induced_automorphism(f: LevelFunction) -> LevelFunction:
    """``f -> f o (m -> m - 1)``: moves mass from residue ``m`` to ``m + 1``."""
    return LevelFunction(f.schedule, f.level, np.roll(f.values, 1))


def compatibility_defect(beta: DigitWord, N: int, eps: float = DEFAULT_EPS) -> set[int]:
    """Indices where ``theta(e_beta)`` and ``e_{beta + 1}`` differ at truncation ``N``."""
    diff = theta(e_beta_diag(beta, N)) - e_beta_diag(prefix_increment(beta), N)
    rows, cols = np.nonzero(np.abs(diff) > eps)
    return set(rows.tolist()) | set(cols.tolist())


def quotient_compatibility(beta: DigitWord, N: int, eps: float = DEFAULT_EPS) -> bool:
    """True iff ``theta(e_beta) = e_{beta + 1}`` modulo sequences supported on ``{0}``."""
    nk = n_index(beta.schedule, len(beta))
    if N < 2 * nk:
        raise ValueError(f"need N >= 2 n_k = {2 * nk}, got {N}")
    return compatibility_defect(beta, N, eps) <= {0}
