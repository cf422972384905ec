"""Topology of ``X = N u K``.

The basic open sets of ``X`` are supports of two kinds of 0/1 sequences:
finitely supported ones, and residue-class indicators ``e_beta`` altered in
finitely many coordinates.  A point ``gamma`` of ``K`` has neighborhoods

    V_k(gamma) = {zeta in K : zeta|k = gamma|k}
               u {n in N : n >= k and digits_k(n mod n_k) = gamma|k}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

from .mixedradix import (
    CantorPoint,
    DigitWord,
    Nat,
    RadixSchedule,
    XPoint,
    n_index,
    truncate,
)

__all__ = [
    "FiniteSet",
    "ModifiedCylinder",
    "BasicIdempotent",
    "Cylinder",
    "Neighborhood",
    "e_beta",
    "cofinite_tail",
    "support_in_X",
    "multiply",
    "v_k_neighborhood",
    "membership",
    "converges_to",
    "idempotent_to_json",
    "idempotent_from_json",
]


@dataclass(frozen=True)
class Cylinder:
    """The clopen set of Cantor points whose first ``k`` digits are ``word``."""

    word: DigitWord

    def __contains__(self, gamma: CantorPoint) -> bool:
        return truncate(gamma, len(self.word)) == self.word


@dataclass(frozen=True)
class FiniteSet:
    points: frozenset = frozenset()

    def __post_init__(self):
        pts = frozenset(int(n) for n in self.points)
        if any(n < 0 for n in pts):
            raise ValueError("finite supports contain naturals only")
        object.__setattr__(self, "points", pts)

    def contains(self, n: int) -> bool:
        return n in self.points


@dataclass(frozen=True)
class ModifiedCylinder:
    """``e_beta`` with the naturals in ``add`` switched on and ``remove`` off.

    Construction canonicalizes: ``add`` ends up disjoint from the residue
    class of ``beta`` and ``remove`` inside it, so equal sequences have equal
    representations.
    """

    beta: DigitWord
    add: frozenset = frozenset()
    remove: frozenset = frozenset()

    def __post_init__(self):
        add = frozenset(int(n) for n in self.add)
        remove = frozenset(int(n) for n in self.remove)
        if any(n < 0 for n in add | remove):
            raise ValueError("modifications must be naturals")
        in_class = self.in_class
        object.__setattr__(self, "add", frozenset(n for n in add - remove if not in_class(n)))
        object.__setattr__(self, "remove", frozenset(n for n in remove if in_class(n)))

    @property
    def modulus(self) -> int:
        return n_index(self.beta.schedule, len(self.beta))

    def in_class(self, n: int) -> bool:
        return n % self.modulus == self.beta.value

    def contains(self, n: int) -> bool:
        if n in self.add:
            return True
        return self.in_class(n) and n not in self.remove


BasicIdempotent = Union[FiniteSet, ModifiedCylinder]


def e_beta(beta: DigitWord) -> ModifiedCylinder:
    """Indicator of ``{n : n = value(beta) mod n_k}``."""
    return ModifiedCylinder(beta)


def cofinite_tail(k: int, schedule: RadixSchedule) -> ModifiedCylinder:
    """``1 - f_k``: the constant sequence 1 with coordinates ``0..k-1`` cleared."""
    return ModifiedCylinder(DigitWord((), schedule), remove=frozenset(range(k)))


def support_in_X(p: BasicIdempotent, bound: int) -> tuple[frozenset, Optional[Cylinder]]:
    """Support of ``p`` in ``X``: naturals below ``bound`` and the Cantor part.

    The Cantor part is returned as a cylinder description (``None`` when
    empty); only the natural part is enumerated.
    """
    if isinstance(p, FiniteSet):
        return frozenset(n for n in p.points if n < bound), None
    naturals = {n for n in range(p.beta.value, bound, p.modulus)} - p.remove
    naturals |= {n for n in p.add if n < bound}
    return frozenset(naturals), Cylinder(p.beta)


def multiply(p: BasicIdempotent, q: BasicIdempotent) -> BasicIdempotent:
    """Pointwise product of two basic idempotents.

    Two residue classes from the same schedule are either nested (one word
    is a prefix of the other) or disjoint, so the product is always basic.
    """
    if isinstance(p, FiniteSet):
        return FiniteSet(frozenset(n for n in p.points if q.contains(n)))
    if isinstance(q, FiniteSet):
        return FiniteSet(frozenset(n for n in q.points if p.contains(n)))
    if p.beta.schedule != q.beta.schedule:
        raise ValueError("idempotents come from different radix schedules")
    if len(p.beta) > len(q.beta):
        p, q = q, p
    if not p.beta.is_prefix_of(q.beta):
        both = frozenset(n for n in p.add | q.add if p.contains(n) and q.contains(n))
        return FiniteSet(both)
    # q's class sits inside p's class
    add = frozenset(n for n in q.add if p.contains(n))
    remove = q.remove | frozenset(n for n in p.remove if q.in_class(n))
    return ModifiedCylinder(q.beta, add, remove)


@dataclass(frozen=True)
class Neighborhood:
    center: CantorPoint
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError(f"neighborhood level must be nonnegative, got {self.level}")

    @cached_property
    def word(self) -> DigitWord:
        return truncate(self.center, self.level)

    @cached_property
    def residue(self) -> tuple[int, int]:
        """``(value, n_k)``: naturals in the neighborhood are ``value mod n_k``."""
        return self.word.value, self.word.modulus

    def __contains__(self, x: XPoint) -> bool:
        return membership(x, self)

    def naturals(self, bound: int) -> list[int]:
        """Naturals ``n < bound`` lying in the neighborhood."""
        w = self.word
        return [n for n in range(w.value, bound, w.modulus) if n >= self.level]


def v_k_neighborhood(gamma: CantorPoint, k: int) -> Neighborhood:
    return Neighborhood(gamma, k)


def membership(x: XPoint, V: Neighborhood) -> bool:
    if isinstance(x, Nat):
        if x.n < V.level:
            return False
        # digits of n mod n_k equal the word iff the residues agree
        value, modulus = V.residue
        return x.n % modulus == value
    if isinstance(x, CantorPoint):
        return truncate(x, V.level) == V.word
    raise TypeError(f"not a point of X: {x!r}")


def converges_to(seq: Sequence[int], gamma: CantorPoint, k_max: int) -> bool:
    """Desk-scale convergence of a finite sequence of naturals to ``gamma``.

    For each ``k <= k_max`` some nonempty tail of ``seq`` must lie in
    ``V_k(gamma)``.  For a finite sequence that is the same as asking the
    last entry to lie in every ``V_k``, so resolution is limited by how far
    the caller runs the sequence.
    """
    if not seq:
        return False
    points = [Nat(n) for n in seq]
    for k in range(k_max + 1):
        V = Neighborhood(gamma, k)
        if not membership(points[-1], V):
            return False
    return True


def idempotent_to_json(p: BasicIdempotent) -> str:
    if isinstance(p, FiniteSet):
        doc = {"type": "finite", "set": sorted(p.points)}
    else:
        doc = {
            "type": "cylinder",
            "beta": list(p.beta.digits),
            "add": sorted(p.add),
            "remove": sorted(p.remove),
        }
    return json.dumps(doc)


def idempotent_from_json(text: str, schedule: RadixSchedule) -> BasicIdempotent:
    doc = json.loads(text)
    kind = doc.get("type")
    if kind == "finite":
        return FiniteSet(frozenset(doc["set"]))
    if kind == "cylinder":
        return ModifiedCylinder(
            DigitWord(tuple(doc["beta"]), schedule),
            frozenset(doc.get("add", ())),
            frozenset(doc.get("remove", ())),
        )
    raise ValueError(f"unknown idempotent type {kind!r}")
