"""The nine generators of Sp_4(Z) used throughout, and their actions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .theta_core import (
    DEFAULT_POLICY,
    NUMBERING,
    Characteristic,
    PeriodMatrix,
    TruncationPolicy,
    as_period_matrix,
    theta_series,
)


class NearThetaDivisor(ZeroDivisionError):
    """theta[c](z, omega) is too small to divide by; pick another z."""


@dataclass(frozen=True)
class SymplecticGenerator:
    name: str
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=int)
        if m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("symplectic matrix must be 2g x 2g")
        if not is_symplectic(m):
            raise ValueError(f"{self.name} is not symplectic")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=int)

    @property
    def blocks(self):
        m = self.array
        g = m.shape[0] // 2
        return m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:]

    def inverse(self) -> "SymplecticGenerator":
        inv = np.rint(np.linalg.inv(self.array)).astype(int)
        return SymplecticGenerator(self.name + "^-1", _tup(inv))


def _tup(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(m))


def standard_j(g: int) -> np.ndarray:
    z = np.zeros((g, g), dtype=int)
    i = np.eye(g, dtype=int)
    return np.block([[z, -i], [i, z]])


def is_symplectic(m) -> bool:
    m = np.asarray(m, dtype=int)
    j = standard_j(m.shape[0] // 2)
    return bool(np.array_equal(m.T @ j @ m, j))


def _unimodular(alpha) -> tuple[tuple[int, ...], ...]:
    a = np.asarray(alpha, dtype=int)
    d = np.rint(np.linalg.inv(a).T).astype(int)
    z = np.zeros((2, 2), dtype=int)
    return _tup(np.block([[a, z], [z, d]]))


def _translation(beta) -> tuple[tuple[int, ...], ...]:
    i = np.eye(2, dtype=int)
    z = np.zeros((2, 2), dtype=int)
    return _tup(np.block([[i, np.asarray(beta, dtype=int)], [z, i]]))


GENERATORS: dict[str, SymplecticGenerator] = {
    "g1": SymplecticGenerator("g1", _unimodular([[0, 1], [1, 0]])),
    "g2": SymplecticGenerator("g2", _unimodular([[1, 0], [1, 1]])),
    "g3": SymplecticGenerator("g3", _unimodular([[1, 1], [0, 1]])),
    "g4": SymplecticGenerator("g4", _unimodular([[1, 1], [1, 0]])),
    "g5": SymplecticGenerator("g5", _unimodular([[0, 1], [1, 1]])),
    "h1": SymplecticGenerator("h1", _translation([[1, 0], [0, 0]])),
    "h2": SymplecticGenerator("h2", _translation([[0, 1], [1, 0]])),
    "h3": SymplecticGenerator("h3", _translation([[0, 0], [0, 1]])),
    "J": SymplecticGenerator("J", _tup(standard_j(2))),
}
IDENTITY = SymplecticGenerator("id", _tup(np.eye(4, dtype=int)))


def generator(name) -> SymplecticGenerator:
    if isinstance(name, SymplecticGenerator):
        return name
    if name in ("id", "1", "identity"):
        return IDENTITY
    return GENERATORS[name]


def act_on_point(gamma: SymplecticGenerator, z, omega) -> tuple[np.ndarray, PeriodMatrix]:
    """``gamma . (z, W) = ((CW + D)^{-T} z, (AW + B)(CW + D)^{-1})``."""
    a, b, c, d = gamma.blocks
    w = as_period_matrix(omega).matrix
    m = c @ w + d
    minv = np.linalg.inv(m)
    w2 = (a @ w + b) @ minv
    w2 = (w2 + w2.T) / 2
    return minv.T @ np.asarray(z, dtype=complex), PeriodMatrix(w2)


def characteristic_action_exact(gamma: SymplecticGenerator, a, b):
    """Unreduced image ``(Da - Cb + diag(C D^T)/2, -Ba + Ab + diag(A B^T)/2)``."""
    am, bm, cm, dm = gamma.blocks
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    g = len(a)

    def mat_vec(m, v):
        return [sum(int(m[i][j]) * v[j] for j in range(g)) for i in range(g)]

    cdt = np.diag(cm @ dm.T)
    abt = np.diag(am @ bm.T)
    da, cb, ba, ab = mat_vec(dm, a), mat_vec(cm, b), mat_vec(bm, a), mat_vec(am, b)
    a2 = [da[i] - cb[i] + Fraction(int(cdt[i]), 2) for i in range(g)]
    b2 = [-ba[i] + ab[i] + Fraction(int(abt[i]), 2) for i in range(g)]
    return a2, b2


def characteristic_action(gamma: SymplecticGenerator, c: Characteristic) -> Characteristic:
    if 2 * c.genus != gamma.array.shape[0]:
        raise ValueError("genus mismatch")
    a2, b2 = characteristic_action_exact(gamma, [Fraction(x, 2) for x in c.top], [Fraction(x, 2) for x in c.bottom])
    return Characteristic(tuple(int(2 * x) % 2 for x in a2), tuple(int(2 * x) % 2 for x in b2))


def label_permutation(gamma: SymplecticGenerator) -> dict[int, int]:
    """Map label of ``c`` to label of ``gamma . c`` over all 16 characteristics."""
    return {k: characteristic_action(gamma, c).label for k, c in NUMBERING.items()}


def transform_factor(a, b, gamma: SymplecticGenerator, omega, z) -> complex:
    """The explicit factor ``F(a, b, gamma, W, z)`` of the transformation formula.

    ``(A B^T)_0`` is read as the diagonal of ``A B^T``.
    """
    am, bm, cm, dm = gamma.blocks
    w = as_period_matrix(omega).matrix
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    z = np.asarray(z, dtype=complex)
    m = cm @ w + dm
    expo = (dm @ a - cm @ b) @ (-bm @ a + am @ b + np.diag(am @ bm.T)) - a @ b + z @ np.linalg.inv(m) @ cm @ z
    return complex(np.exp(1j * math.pi * expo))


def theta_transform_ratio(gamma, c: Characteristic, z, omega, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``theta[c#](z#, W#) / (det(CW+D)^{1/2} F theta[c](z, W))``; an 8th root of unity."""
    gamma = generator(gamma)
    omega = as_period_matrix(omega)
    a2, b2 = characteristic_action_exact(gamma, [Fraction(x, 2) for x in c.top], [Fraction(x, 2) for x in c.bottom])
    z2, w2 = act_on_point(gamma, z, omega)
    _, _, cm, dm = gamma.blocks
    base = theta_series(c.a, c.b, z, omega, policy)
    if abs(base) < policy.tol * 1e3:
        raise NearThetaDivisor(f"|theta[{c}](z)| = {abs(base):.3g} is too small")
    lhs = theta_series(np.array(a2, dtype=float), np.array(b2, dtype=float), z2, w2, policy)
    root = np.sqrt(complex(np.linalg.det(cm @ omega.matrix + dm)))  # principal branch
    return lhs / (root * transform_factor(c.a, c.b, gamma, omega, z) * base)


def theta_transform_check(gamma, z, omega, policy: TruncationPolicy = DEFAULT_POLICY, chars=None) -> float:
    """Largest ``|r^8 - 1|`` of :func:`theta_transform_ratio` over ``chars``.

    Raising to the 8th power removes the unknown root of unity and the square
    root branch. Defaults to all 16 characteristics.
    """
    chars = list(NUMBERING.values()) if chars is None else list(chars)
    return max(abs(theta_transform_ratio(gamma, c, z, omega, policy) ** 8 - 1) for c in chars)
