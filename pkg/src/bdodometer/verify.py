"""Desk-scale verification suite behind ``bdodometer verify``.

Each check returns a :class:`Check` with a numeric residual.  Counting
checks report the number of failures, so a passing residual is 0; matrix
checks report a max-entry residual compared against ``eps``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .compactification import (
    Neighborhood,
    cofinite_tail,
    converges_to,
    e_beta,
    membership,
    multiply,
    support_in_X,
)
from .mixedradix import (
    CantorPoint,
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
from .odometer import (
    DomainError,
    cylinder_measure,
    cylinder_visits,
    odometer_inverse,
    odometer_partial,
    odometer_total,
    orbit,
    prefix_increment,
)
from .operator_model import (
    DEFAULT_EPS,
    PeriodicWeights,
    band,
    circle_conjugate,
    delta_diag,
    max_abs,
    regularity_check,
    spectral_component,
    support_transport,
    theta,
    weighted_shift,
)
from .quotient_model import (
    compatibility_defect,
    indicator,
    induced_automorphism,
    refine,
)

DEFAULT_SEED = 20240229
MAX_ORACLE_MODULUS = 10**4

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schedule", "checks", "pass"],
    "properties": {
        "schedule": {"type": "string"},
        "pass": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "params", "residual", "pass"],
                "properties": {
                    "name": {"type": "string"},
                    "params": {"type": "object"},
                    "residual": {"type": "number"},
                    "pass": {"type": "boolean"},
                },
            },
        },
    },
}


@dataclass
class Check:
    name: str
    params: dict
    residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "params": self.params, "residual": self.residual, "pass": self.passed}


@dataclass
class VerifyConfig:
    schedule: RadixSchedule
    dim: int = 64
    eps: float = DEFAULT_EPS
    seed: int = DEFAULT_SEED
    max_level: int = 3
    trials: int = 200

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


def _count(name: str, params: dict, failures: int) -> Check:
    return Check(name, params, float(failures), failures == 0)


def _tol(name: str, params: dict, residual: float, eps: float) -> Check:
    return Check(name, params, float(residual), residual <= eps)


def _oracle_levels(sched: RadixSchedule, cap: int = MAX_ORACLE_MODULUS) -> int:
    return sched.level_for(cap)


def check_digit_roundtrip(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    top = min(_oracle_levels(sched), 6)
    bad = 0
    for k in range(top + 1):
        for n in range(n_index(sched, k)):
            if from_digits(to_digits(n, k, sched)) != n:
                bad += 1
    return _count("digit_roundtrip", {"max_level": top}, bad)


def check_odometer_oracle(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    top = _oracle_levels(sched)
    bad = 0
    for k in range(top + 1):
        nk = n_index(sched, k)
        for v in range(nk):
            gamma = CantorPoint(sched, to_digits(v, k, sched).digits, Tail.ZEROS)
            if from_digits(truncate(odometer_total(gamma), k)) != (v + 1) % nk:
                bad += 1
    return _count("odometer_oracle", {"max_level": top}, bad)


def check_wrap_case(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    bad = int(odometer_total(max_point(sched)) != zeros_point(sched))
    bad += int(odometer_inverse(zeros_point(sched)) != max_point(sched))
    try:
        odometer_partial(max_point(sched))
        bad += 1
    except DomainError:
        pass
    return _count("wrap_case", {}, bad)


def check_inverse_law(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    rng = cfg.rng(1)
    bad = 0
    for _ in range(cfg.trials):
        length = int(rng.integers(0, 8))
        digits = tuple(int(rng.integers(0, sched.q(j))) for j in range(length))
        tail = Tail.MAX if rng.random() < 0.5 else Tail.ZEROS
        g = CantorPoint(sched, digits, tail)
        bad += int(odometer_inverse(odometer_total(g)) != g)
        bad += int(odometer_total(odometer_inverse(g)) != g)
    return _count("inverse_law", {"trials": cfg.trials}, bad)


def check_visit_order(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    top = min(_oracle_levels(sched), 6)
    bad = 0
    for k in range(top + 1):
        nk = n_index(sched, k)
        start = to_digits(0, k, sched)
        beta, seen = start, set()
        for _ in range(nk):
            seen.add(beta.digits)
            beta = prefix_increment(beta)
        bad += int(beta != start or len(seen) != nk)
    return _count("visit_order", {"max_level": top}, bad)


def _starts(sched: RadixSchedule) -> list:
    return [
        zeros_point(sched),
        max_point(sched),
        CantorPoint(sched, (1,), Tail.ZEROS),
        CantorPoint(sched, (0, 1), Tail.MAX),
        Nat(7),
    ]


def check_birkhoff(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    worst = Fraction(0)
    ok = True
    for k in range(cfg.max_level + 1):
        nk = n_index(sched, k)
        T = 10 * nk
        for start in _starts(sched):
            counts = cylinder_visits(orbit(start, T).points[:T], k, sched)
            for beta in all_words(sched, k):
                dev = abs(Fraction(counts[beta.digits], T) - cylinder_measure(beta))
                worst = max(worst, dev)
                ok &= dev <= Fraction(nk, T)
    return Check("birkhoff", {"max_level": cfg.max_level, "starts": 5}, float(worst), ok)


def check_measure_total(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    bad = 0
    for k in range(cfg.max_level + 1):
        bad += int(sum(cylinder_measure(b) for b in all_words(sched, k)) != 1)
    return _count("measure_total", {"max_level": cfg.max_level}, bad)


def _random_weights(cfg: VerifyConfig, rng: np.random.Generator) -> PeriodicWeights:
    period = n_index(cfg.schedule, int(rng.integers(0, cfg.max_level + 1)))
    return PeriodicWeights.random(rng, period)


def check_circle_covariance(cfg: VerifyConfig) -> Check:
    rng = cfg.rng(2)
    N = cfg.dim
    worst = 0.0
    for _ in range(10):
        S = weighted_shift(_random_weights(cfg, rng), N)
        for z in np.exp(2j * np.pi * rng.random(20)):
            worst = max(worst, max_abs(circle_conjugate(z, S) - z * S))
    return _tol("circle_covariance", {"dim": N, "weights": 10, "z": 20}, worst, cfg.eps)


def check_fourier_exactness(cfg: VerifyConfig) -> Check:
    rng = cfg.rng(3)
    N = cfg.dim
    x = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    worst = 0.0
    total = np.zeros_like(x)
    for d in range(-(N - 1), N):
        comp = spectral_component(x, d)
        worst = max(worst, max_abs(comp - band(x, d)))
        total += comp
    worst = max(worst, max_abs(total - x))
    return _tol("fourier_exactness", {"dim": N, "samples": 2 * N - 1}, worst, cfg.eps)


def random_word(cfg: VerifyConfig, rng: np.random.Generator, max_len: int = 6) -> np.ndarray:
    N = cfg.dim
    w = np.eye(N, dtype=complex)
    for _ in range(int(rng.integers(1, max_len + 1))):
        S = weighted_shift(_random_weights(cfg, rng), N)
        w = w @ (S if rng.random() < 0.5 else S.conj().T)
    return w


def check_fixed_point_diagonal(cfg: VerifyConfig) -> Check:
    rng = cfg.rng(4)
    worst = 0.0
    for _ in range(cfg.trials):
        c = spectral_component(random_word(cfg, rng), 0)
        worst = max(worst, max_abs(c - np.diag(np.diag(c))))
    return _tol("fixed_point_diagonal", {"dim": cfg.dim, "words": cfg.trials}, worst, cfg.eps)


def check_regularity(cfg: VerifyConfig) -> Check:
    rng = cfg.rng(5)
    N = cfg.dim
    draws = max(1, cfg.trials // 2)
    worst = 0.0

    def diag():
        return np.diag(rng.standard_normal(N) + 1j * rng.standard_normal(N))

    for _ in range(draws):
        x = weighted_shift(_random_weights(cfg, rng), N) @ diag()
        y = diag() @ weighted_shift(_random_weights(cfg, rng), N)
        rep = regularity_check(diag(), diag(), band(x, 1), band(y, 1), cfg.eps)
        worst = max(worst, rep.worst)
    return _tol("regularity", {"dim": N, "draws": draws}, worst, cfg.eps)


def check_theta_delta(cfg: VerifyConfig) -> Check:
    N = cfg.dim
    worst = max(max_abs(theta(delta_diag(n, N)) - delta_diag(n + 1, N)) for n in range(N - 1))
    return _tol("theta_delta", {"dim": N}, worst, cfg.eps)


def check_theta_range(cfg: VerifyConfig) -> Check:
    rng = cfg.rng(6)
    N = cfg.dim
    worst = 0.0
    for _ in range(20):
        a = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        t = theta(a)
        worst = max(worst, abs(t[0, 0]))
    return _tol("theta_range", {"dim": N}, worst, cfg.eps)


def check_support_transport(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    N = 4 * n_index(sched, cfg.max_level)
    bad = 0
    for k in range(cfg.max_level + 1):
        nk = n_index(sched, k)
        for beta in all_words(sched, k):
            expected = {j for j in range(k + 1, N) if j % nk == (beta.value + 1) % nk}
            try:
                bad += int(support_transport(beta, N, cfg.eps) != expected)
            except Exception:
                bad += 1
    return _count("support_transport", {"dim": N, "max_level": cfg.max_level}, bad)


def check_quotient(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    bad = 0
    for k in range(cfg.max_level + 1):
        nk = n_index(sched, k)
        for beta in all_words(sched, k):
            for N in (2 * nk, max(cfg.dim, 2 * nk)):
                bad += int(not compatibility_defect(beta, N, cfg.eps) <= {0})
    return _count("quotient_compatibility", {"dim": cfg.dim, "max_level": cfg.max_level}, bad)


def check_level_automorphism(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    bad = 0
    for k in range(cfg.max_level + 1):
        for beta in all_words(sched, k):
            f = indicator(beta)
            bad += int(induced_automorphism(f) != indicator(prefix_increment(beta)))
            for k2 in range(k, cfg.max_level + 2):
                lhs = refine(induced_automorphism(f), k2)
                rhs = induced_automorphism(refine(f, k2))
                bad += int(lhs != rhs)
    return _count("level_automorphism", {"max_level": cfg.max_level}, bad)


def _cantor_samples(sched: RadixSchedule, k: int) -> list:
    pts = []
    for beta in all_words(sched, k):
        pts.append(CantorPoint(sched, beta.digits, Tail.ZEROS))
        pts.append(CantorPoint(sched, beta.digits, Tail.MAX))
    return pts


def check_topology(cfg: VerifyConfig) -> Check:
    sched = cfg.schedule
    top = min(cfg.max_level + 1, 4)
    bound = 4 * n_index(sched, top) + top
    bad = 0
    for k in range(top + 1):
        centers = _cantor_samples(sched, k)
        probes = _cantor_samples(sched, min(k + 1, top))
        for gamma in centers:
            V, V1 = Neighborhood(gamma, k), Neighborhood(gamma, k + 1)
            idem = multiply(cofinite_tail(k, sched), e_beta(truncate(gamma, k)))
            naturals, cyl = support_in_X(idem, bound)
            for n in range(bound):
                x = Nat(n)
                bad += int(membership(x, V1) and not membership(x, V))
                bad += int((n in naturals) != membership(x, V))
            for zeta in probes:
                bad += int(membership(zeta, V1) and not membership(zeta, V))
                bad += int((zeta in cyl) != membership(zeta, V))
        seq = [n_index(sched, j) - 1 for j in range(1, top + 2)]
        bad += int(not converges_to(seq, max_point(sched), top))
    return _count("topology", {"max_level": top, "bound": bound}, bad)


ALL_CHECKS: list[Callable[[VerifyConfig], Check]] = [
    check_digit_roundtrip,
    check_odometer_oracle,
    check_wrap_case,
    check_inverse_law,
    check_visit_order,
    check_birkhoff,
    check_measure_total,
    check_circle_covariance,
    check_fourier_exactness,
    check_fixed_point_diagonal,
    check_regularity,
    check_theta_delta,
    check_theta_range,
    check_support_transport,
    check_quotient,
    check_level_automorphism,
    check_topology,
]


def run_all(cfg: VerifyConfig) -> dict:
    checks = [fn(cfg) for fn in ALL_CHECKS]
    return {
        "schedule": str(cfg.schedule),
        "checks": [c.to_dict() for c in checks],
        "pass": all(c.passed for c in checks),
    }
