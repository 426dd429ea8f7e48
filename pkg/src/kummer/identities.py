"""Seeded residual suites for the theta identities, shared by tests and CLI.

Each suite draws its own inputs from a ``numpy`` generator and returns the
largest relative residual seen.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable

import numpy as np

from .equations import equation_residuals, phi, veronese
from .symplectic import GENERATORS, NearThetaDivisor, theta_transform_check
from .theta_core import (
    DEFAULT_POLICY,
    NUMBERING,
    ODD_CHARACTERISTICS,
    PeriodMatrix,
    TruncationPolicy,
    even_theta_vector,
    genus1_theta,
    level24_coords,
    quasi_periodicity_factor,
    random_period_matrix,
    random_point,
    riemann_relation_sides,
    theta,
)


def _rel(a, b) -> float:
    s = max(abs(a), abs(b))
    return float(abs(a - b) / s) if s > 0 else 0.0


def _random_tau(rng) -> complex:
    return complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))


def odd_constants(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    w = random_period_matrix(rng)
    scale = np.max(np.abs(even_theta_vector(w, policy)))
    return float(max(abs(theta(c, np.zeros(2), w, policy)) for c in ODD_CHARACTERISTICS) / scale)


def jacobi_quartic(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    tau = _random_tau(rng)
    t00, t01, t10 = (genus1_theta(k, 0, tau, policy) for k in ("00", "01", "10"))
    return _rel(t00**4, t01**4 + t10**4)


def duplication(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    tau = _random_tau(rng)
    th = {k: genus1_theta(k, 0, tau, policy) for k in ("00", "01", "10")}
    d00, d10 = genus1_theta("00", 0, 2 * tau, policy), genus1_theta("10", 0, 2 * tau, policy)
    return max(
        _rel(th["00"] ** 2, d00**2 + d10**2),
        _rel(th["10"] ** 2, 2 * d00 * d10),
        _rel(th["01"] ** 2, d00**2 - d10**2),
    )


def veronese_relations(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    w = random_period_matrix(rng)
    asq = even_theta_vector(w, policy) ** 2
    ver = np.array(veronese(level24_coords(w, policy)))
    return float(np.max(np.abs(asq - ver)) / np.max(np.abs(asq)))


def diagonal_factorization(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    t1, t2 = _random_tau(rng), _random_tau(rng)
    z1, z2 = random_point(rng, 1)[0], random_point(rng, 1)[0]
    w = PeriodMatrix.diagonal(t1, t2)
    worst = 0.0
    for c in NUMBERING.values():
        k1 = f"{c.top[0]}{c.bottom[0]}"
        k2 = f"{c.top[1]}{c.bottom[1]}"
        rhs = genus1_theta(k1, z1, t1, policy) * genus1_theta(k2, z2, t2, policy)
        lhs = theta(c, [z1, z2], w, policy)
        scale = abs(genus1_theta("00", 0, t1, policy) * genus1_theta("00", 0, t2, policy))
        worst = max(worst, float(abs(lhs - rhs) / scale))
    return worst


def quasi_periodicity(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    w = random_period_matrix(rng)
    z = random_point(rng)
    c = NUMBERING[int(rng.integers(1, 17))]
    base = theta(c, z, w, policy)
    worst = 0.0
    for m in itertools.product((-1, 0, 1), repeat=2):
        for n in itertools.product((-1, 0, 1), repeat=2):
            shifted = z + w.matrix @ np.array(m) + np.array(n)
            lhs = theta(c, shifted, w, policy)
            rhs = quasi_periodicity_factor(c, z, w, m, n) * base
            worst = max(worst, _rel(lhs, rhs))
    return worst


def riemann_relation(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    w = random_period_matrix(rng)
    chars = [rng.integers(0, 2, 2) / 2 for _ in range(8)]
    points = [random_point(rng, scale=0.2) for _ in range(4)]
    lhs, rhs = riemann_relation_sides(chars, points, w, policy)
    scale = max(abs(lhs), abs(rhs), abs(theta(NUMBERING[1], np.zeros(2), w, policy)) ** 4 * 1e-6)
    return float(abs(lhs - rhs) / scale)


def transformation(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    w = random_period_matrix(rng)
    worst = 0.0
    for g in GENERATORS.values():
        for _ in range(5):
            try:
                worst = max(worst, theta_transform_check(g, random_point(rng, scale=0.2), w, policy))
                break
            except NearThetaDivisor:
                continue
    return worst


def equations_at_phi(rng, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    w = random_period_matrix(rng)
    z = random_point(rng)
    a = even_theta_vector(w, policy)
    return max(equation_residuals(phi(z, w, policy), a**2).values())


SUITES: dict[str, Callable] = {
    "odd-constants": odd_constants,
    "jacobi": jacobi_quartic,
    "duplication": duplication,
    "veronese": veronese_relations,
    "factorization": diagonal_factorization,
    "quasi-periodicity": quasi_periodicity,
    "riemann": riemann_relation,
    "transform": transformation,
    "equations": equations_at_phi,
}


def run_suite(name: str, trials: int = 20, seed: int = 0, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Largest residual of suite ``name`` over ``trials`` seeded draws."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    rng = np.random.default_rng(seed)
    return max(SUITES[name](rng, policy) for _ in range(trials))


def run_all(trials: int = 20, seed: int = 0, names=None, policy: TruncationPolicy = DEFAULT_POLICY) -> dict[str, float]:
    names = list(SUITES) if names is None else list(names)
    return {n: run_suite(n, trials, seed, policy) for n in names}

