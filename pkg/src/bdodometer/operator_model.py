"""Finite truncations of operators on ``l2(N)``.

Every operator is a dense complex ``N x N`` numpy array: the compression to
``span{e_0, ..., e_{N-1}}``.  The shift sends ``e_{N-1}`` to zero.  Band
``d`` of a matrix is the set of entries ``(m, n)`` with ``m - n = d``; the
circle action ``x -> U_z x U_z^*`` scales band ``d`` by ``z**d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .mixedradix import DigitWord, n_index, to_digits
from .odometer import prefix_increment

__all__ = [
    "DEFAULT_EPS",
    "ToleranceConfig",
    "PeriodicWeights",
    "InternalConsistencyError",
    "weighted_shift",
    "unweighted_shift",
    "diagonal_unitary",
    "circle_conjugate",
    "spectral_component",
    "band",
    "e_beta_diag",
    "f_k_diag",
    "delta_diag",
    "theta",
    "lambda_map",
    "RegularityReport",
    "regularity_check",
    "support_transport",
    "max_abs",
    "is_diagonal",
    "format_grid",
]

DEFAULT_EPS = 1e-12


class InternalConsistencyError(RuntimeError):
    """A computed matrix does not have the structure the model guarantees."""


@dataclass(frozen=True)
class ToleranceConfig:
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not self.eps >= 0:
            raise ValueError(f"eps must be nonnegative, got {self.eps}")


@dataclass(frozen=True)
class PeriodicWeights:
    """Weights ``a_1, ..., a_p`` extended by ``a_n = a_{n+p}``."""

    weights: tuple[complex, ...]

    def __post_init__(self):
        w = tuple(complex(a) for a in self.weights)
        if not w:
            raise ValueError("period must be at least 1")
        if not all(np.isfinite(a) for a in w):
            raise ValueError("weights must be finite")
        object.__setattr__(self, "weights", w)

    @property
    def period(self) -> int:
        return len(self.weights)

    def a(self, n: int) -> complex:
        """The weight ``a_n`` (``n >= 1``)."""
        if n < 1:
            raise IndexError("weights are indexed from 1")
        return self.weights[(n - 1) % self.period]

    @classmethod
    def ones(cls) -> PeriodicWeights:
        return cls((1.0,))

    @classmethod
    def random(cls, rng: np.random.Generator, period: int) -> PeriodicWeights:
        w = rng.standard_normal(period) + 1j * rng.standard_normal(period)
        return cls(tuple(w))


def _square(x: np.ndarray, name: str = "operator") -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] < 1:
        raise ValueError(f"{name} must be a nonempty square matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} has non-finite entries")
    return x


def _same_dim(*mats: np.ndarray) -> int:
    dims = {m.shape[0] for m in mats}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def max_abs(x: np.ndarray) -> float:
    return float(np.max(np.abs(x))) if x.size else 0.0


def is_diagonal(x: np.ndarray, eps: float = DEFAULT_EPS) -> bool:
    return max_abs(x - np.diag(np.diag(x))) <= eps


def weighted_shift(w: PeriodicWeights, N: int) -> np.ndarray:
    """Matrix of ``S_a e_n = a_{n+1} e_{n+1}`` truncated to ``N``."""
    if N < 1:
        raise ValueError(f"dimension must be >= 1, got {N}")
    S = np.zeros((N, N), dtype=complex)
    for n in range(N - 1):
        S[n + 1, n] = w.a(n + 1)
    return S


def unweighted_shift(N: int) -> np.ndarray:
    return weighted_shift(PeriodicWeights.ones(), N)


def diagonal_unitary(z: complex, N: int, eps: float = DEFAULT_EPS) -> np.ndarray:
    """``U_z = diag(1, z, ..., z**(N-1))``."""
    z = complex(z)
    if abs(abs(z) - 1.0) > eps:
        raise ValueError(f"|z| must be 1, got |z| = {abs(z)!r}")
    return np.diag(z ** np.arange(N))


def circle_conjugate(z: complex, x: np.ndarray, eps: float = DEFAULT_EPS) -> np.ndarray:
    """``U_z x U_z^{-1}``: entry ``(m, n)`` picks up ``z**m * conj(z)**n``."""
    x = _square(x)
    u = np.diag(diagonal_unitary(z, x.shape[0], eps))
    # U_z^{-1} = U_z^* for unimodular z; diagonal products done elementwise
    return u[:, None] * x * u.conj()[None, :]


def band(x: np.ndarray, d: int) -> np.ndarray:
    """Keep only the entries with ``row - col == d``."""
    x = _square(x)
    N = x.shape[0]
    rows, cols = np.indices((N, N))
    return np.where(rows - cols == d, x, 0)


def spectral_component(x: np.ndarray, d: int, samples: Optional[int] = None) -> np.ndarray:
    """Fourier coefficient ``d`` of ``z -> U_z x U_z^*`` over the circle.

    The average of ``z**-d * alpha_z(x)`` over ``M`` roots of unity is exact
    for ``M >= 2N - 1`` because the entries are polynomials in ``z`` of
    degree at most ``N - 1`` in absolute value.
    """
    x = _square(x)
    N = x.shape[0]
    M = 2 * N - 1 if samples is None else samples
    if M < 2 * N - 1:
        raise ValueError(f"need at least 2N-1 = {2 * N - 1} samples, got {M}")
    acc = np.zeros((N, N), dtype=complex)
    for j in range(M):
        z = np.exp(2j * np.pi * j / M)
        # reduce j*d mod M to keep the phase argument small
        zd = np.exp(-2j * np.pi * ((j * d) % M) / M)
        acc += zd * circle_conjugate(z, x)
    return acc / M


def _diag01(mask: np.ndarray) -> np.ndarray:
    return np.diag(mask.astype(complex))


def e_beta_diag(beta: DigitWord, N: int) -> np.ndarray:
    """Projection onto ``{e_n : n = value(beta) mod n_k}``."""
    if N < 1:
        raise ValueError(f"dimension must be >= 1, got {N}")
    nk = n_index(beta.schedule, len(beta))
    return _diag01(np.arange(N) % nk == beta.value)


def f_k_diag(k: int, N: int) -> np.ndarray:
    """``f_k = (1, ..., 1, 0, ...)`` with the last 1 at position ``k - 1``."""
    if N < 1 or k < 0:
        raise ValueError(f"bad f_k request k={k}, N={N}")
    return _diag01(np.arange(N) < k)


def delta_diag(n: int, N: int) -> np.ndarray:
    if not 0 <= n < N:
        raise ValueError(f"index {n} outside 0..{N - 1}")
    return _diag01(np.arange(N) == n)


def theta(a: np.ndarray) -> np.ndarray:
    """``a -> S a S^*`` with the unweighted truncated shift."""
    a = _square(a)
    S = unweighted_shift(a.shape[0])
    return S @ a @ S.conj().T


def lambda_map(xstar: np.ndarray) -> np.ndarray:
    """``x^* -> S x^*``."""
    xstar = _square(xstar)
    return unweighted_shift(xstar.shape[0]) @ xstar


@dataclass(frozen=True)
class RegularityReport:
    residuals: dict
    b_in_range_ideal: bool
    dim: int

    @property
    def worst(self) -> float:
        return max(self.residuals.values())

    def passed(self, eps: float = DEFAULT_EPS) -> bool:
        return self.worst <= eps


def regularity_check(
    a: np.ndarray,
    b: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    eps: float = DEFAULT_EPS,
) -> RegularityReport:
    """Residuals of the four regularity identities for ``theta``/``lambda``.

    (i)   lambda(x* b)        = lambda(x*) b
    (ii)  lambda(a x*)        = theta(a) lambda(x*)
    (iii) lambda(x*)* lambda(y*) = x y*
    (iv)  lambda(x*) lambda(y*)* = theta(x* y)

    ``a`` and ``b`` must be diagonal and ``x``, ``y`` must lie in band 1.
    Residuals are max-entry norms on the leading ``(N-1) x (N-1)`` block.
    """
    a, b, x, y = (_square(m, name) for m, name in zip((a, b, x, y), "abxy"))
    N = _same_dim(a, b, x, y)
    for m, name in ((a, "a"), (b, "b")):
        if not is_diagonal(m, eps):
            raise ValueError(f"{name} must be diagonal")
    for m, name in ((x, "x"), (y, "y")):
        if max_abs(m - band(m, 1)) > eps:
            raise ValueError(f"{name} must lie in the first spectral subspace")
    xs, ys = x.conj().T, y.conj().T
    lam_x, lam_y = lambda_map(xs), lambda_map(ys)
    pairs = {
        "i": (lambda_map(xs @ b), lam_x @ b),
        "ii": (lambda_map(a @ xs), theta(a) @ lam_x),
        "iii": (lam_x.conj().T @ lam_y, x @ ys),
        "iv": (lam_x @ lam_y.conj().T, theta(xs @ y)),
    }
    k = N - 1
    residuals = {name: max_abs((lhs - rhs)[:k, :k]) for name, (lhs, rhs) in pairs.items()}
    return RegularityReport(residuals, abs(b[0, 0]) <= eps, N)


def support_transport(beta: DigitWord, N: int, eps: float = DEFAULT_EPS) -> set[int]:
    """Support of ``S (1 - f_k) e_beta S^*`` for ``beta`` in ``K_k``.

    Every index ``j`` in the result satisfies ``j - 1 >= k`` and
    ``j - 1 = value(beta) mod n_k``, so the level-k digits of ``j`` are
    ``prefix_increment(beta)``.  Both facts are checked.
    """
    k = len(beta)
    P = (np.eye(N) - f_k_diag(k, N)) @ e_beta_diag(beta, N)
    T = theta(P)
    diag = np.diag(T)
    if not is_diagonal(T, eps) or max_abs(diag * (diag - 1)) > eps:
        raise InternalConsistencyError("transported idempotent is not a diagonal projection")
    support = {int(j) for j in np.flatnonzero(np.abs(diag - 1) <= eps)}
    sched = beta.schedule
    nk = n_index(sched, k)
    expected = {j for j in range(1, N) if j - 1 >= k and (j - 1) % nk == beta.value}
    if support != expected:
        raise InternalConsistencyError(f"support {sorted(support)} != {sorted(expected)}")
    target = prefix_increment(beta)
    for j in support:
        if to_digits(j % nk, k, sched) != target:
            raise InternalConsistencyError(f"index {j} does not carry digits {target}")
    return support


def format_grid(x: np.ndarray, precision: int = 3) -> str:
    """Plain-text grid of a matrix; purely real matrices print without ``j``."""
    x = np.asarray(x)
    if np.all(x.imag == 0):
        cells = [[f"{v.real:.{precision}g}" for v in row] for row in x]
    else:
        cells = [[f"{v.real:.{precision}g}{v.imag:+.{precision}g}j" for v in row] for row in x]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
