"""Riemann theta functions with characteristics for genus 1 and 2.

Characteristics are half-integer pairs stored as bit vectors; the series
itself accepts arbitrary real characteristics so that the unreduced
characteristics appearing in Riemann's relation can be evaluated directly.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np


class ThetaRadiusError(ValueError):
    """The truncation radius needed for the requested tolerance exceeds the cap."""


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True, order=True)
class Characteristic:
    """A half-integer characteristic ``[a; b]`` with ``a = top/2, b = bottom/2``."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        if len(self.top) != len(self.bottom) or len(self.top) not in (1, 2):
            raise ValueError("characteristic must have genus 1 or 2")
        object.__setattr__(self, "top", tuple(int(x) % 2 for x in self.top))
        object.__setattr__(self, "bottom", tuple(int(x) % 2 for x in self.bottom))

    @classmethod
    def parse(cls, text: str) -> "Characteristic":
        """Parse ``"01,11"`` (top, bottom) or ``"01/11"``."""
        sep = "," if "," in text else "/"
        top, bottom = (s.strip() for s in text.split(sep))
        return cls(tuple(int(ch) for ch in top), tuple(int(ch) for ch in bottom))

    @classmethod
    def from_label(cls, label: int) -> "Characteristic":
        return NUMBERING[label]

    @property
    def genus(self) -> int:
        return len(self.top)

    @property
    def a(self) -> np.ndarray:
        return np.asarray(self.top, dtype=float) / 2

    @property
    def b(self) -> np.ndarray:
        return np.asarray(self.bottom, dtype=float) / 2

    @property
    def label(self) -> int:
        return LABELS[self]

    def parity(self) -> Parity:
        return Parity.ODD if sum(x * y for x, y in zip(self.top, self.bottom)) % 2 else Parity.EVEN

    @property
    def is_odd(self) -> bool:
        return self.parity() is Parity.ODD

    def __add__(self, other: "Characteristic") -> "Characteristic":
        return Characteristic(
            tuple(x + y for x, y in zip(self.top, other.top)),
            tuple(x + y for x, y in zip(self.bottom, other.bottom)),
        )

    def __str__(self):
        return "".join(map(str, self.top)) + "/" + "".join(map(str, self.bottom))


def parity(c: Characteristic) -> Parity:
    return c.parity()


def _ch(s: str) -> Characteristic:
    return Characteristic.parse(s)


# labels 1..16; 1..10 are the even constants A_1..A_10 and 11..16 the odd
# functions X_1..X_6
NUMBERING: dict[int, Characteristic] = {
    i + 1: _ch(s)
    for i, s in enumerate(
        "00/00 00/01 00/10 00/11 01/00 10/00 11/00 01/10 10/01 11/11 "
        "01/01 01/11 11/01 10/10 10/11 11/10".split()
    )
}
LABELS: dict[Characteristic, int] = {c: k for k, c in NUMBERING.items()}
EVEN_CHARACTERISTICS = tuple(NUMBERING[k] for k in range(1, 11))
ODD_CHARACTERISTICS = tuple(NUMBERING[k] for k in range(11, 17))
GENUS1_KINDS = {"00": (0, 0), "01": (0, 1), "10": (1, 0), "11": (1, 1)}


class PeriodMatrix:
    """A point of the Siegel upper half space (or the upper half plane)."""

    def __init__(self, matrix):
        m = np.atleast_2d(np.asarray(matrix, dtype=complex))
        if m.shape not in ((1, 1), (2, 2)):
            raise ValueError("period matrix must be 1x1 or 2x2")
        if not np.allclose(m, m.T, atol=1e-13):
            raise ValueError("period matrix must be symmetric")
        y = m.imag
        if y[0, 0] <= 0 or np.linalg.det(y) <= 0:
            raise ValueError("imaginary part must be positive definite")
        self.matrix = m
        self.matrix.flags.writeable = False

    @classmethod
    def from_entries(cls, w11, w12, w22) -> "PeriodMatrix":
        return cls([[w11, w12], [w12, w22]])

    @classmethod
    def diagonal(cls, tau1, tau2) -> "PeriodMatrix":
        return cls([[tau1, 0], [0, tau2]])

    @property
    def g(self) -> int:
        return self.matrix.shape[0]

    @property
    def entries(self) -> tuple[complex, ...]:
        m = self.matrix
        if self.g == 1:
            return (complex(m[0, 0]),)
        return complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 1])

    def scaled(self, k) -> "PeriodMatrix":
        return PeriodMatrix(self.matrix * k)

    def __repr__(self):
        return f"PeriodMatrix({self.entries})"


def as_period_matrix(omega) -> PeriodMatrix:
    if isinstance(omega, PeriodMatrix):
        return omega
    if np.isscalar(omega):
        return PeriodMatrix([[omega]])
    return PeriodMatrix(omega)


@dataclass(frozen=True)
class TruncationPolicy:
    tol: float = 1e-14
    max_radius: int = 60

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_radius < 1:
            raise ValueError("max_radius must be >= 1")


DEFAULT_POLICY = TruncationPolicy()


@functools.lru_cache(maxsize=128)
def _box(g: int, n: int) -> np.ndarray:
    pts = np.array(list(itertools.product(range(-n, n + 1), repeat=g)), dtype=float)
    pts.flags.writeable = False
    return pts


def truncation_radius(omega: PeriodMatrix, imz, amax: float, policy: TruncationPolicy) -> int:
    """Box half-width ``N`` so that dropped terms sum to less than ``policy.tol``.

    Terms with ``|n + a|_inf >= k`` are bounded by ``exp(-pi*lam*k^2 + 2*pi*k*s)``
    with ``lam`` the least eigenvalue of ``Im(omega)`` and ``s = |Im z|``; a shell
    of sup-radius ``k`` holds at most ``2g(2k+1)^(g-1)`` points.
    """
    g = omega.g
    lam = float(np.linalg.eigvalsh(omega.matrix.imag)[0])
    s = float(np.linalg.norm(np.asarray(imz, dtype=float)))
    log_tol = math.log(policy.tol)
    k0 = max(1, math.ceil(s / lam) + 1)

    def log_tail(k_start):
        logs = [
            math.log(2 * g * (2 * k + 1) ** (g - 1)) - math.pi * lam * k * k + 2 * math.pi * k * s
            for k in range(k_start, k_start + 400)
        ]
        top = max(logs)
        return top + math.log(sum(math.exp(x - top) for x in logs))

    k = k0
    while log_tail(k) > log_tol:
        k += 1
        if k > policy.max_radius:
            raise ThetaRadiusError(
                f"truncation radius exceeds {policy.max_radius}; period matrix too close to the boundary"
            )
    n = k + math.ceil(amax) + 2  # +2 safety shells
    if n > policy.max_radius:
        raise ThetaRadiusError(
            f"truncation radius {n} exceeds {policy.max_radius}; period matrix too close to the boundary"
        )
    return n


def theta_series(a, b, z, omega, policy: TruncationPolicy = DEFAULT_POLICY, gradient: bool = False):
    """Sum ``exp(pi i (n+a)^T W (n+a) + 2 pi i (n+a)^T (z+b))`` over a box.

    ``a`` and ``b`` may be any real vectors. With ``gradient=True`` returns
    ``(value, d value / d z)``.
    """
    omega = as_period_matrix(omega)
    w = omega.matrix
    g = omega.g
    a = np.broadcast_to(np.asarray(a, dtype=float), (g,))
    b = np.broadcast_to(np.asarray(b, dtype=float), (g,))
    z = np.broadcast_to(np.asarray(z, dtype=complex), (g,))
    n = truncation_radius(omega, z.imag, float(np.max(np.abs(a))), policy)
    v = _box(g, n) + a
    expo = 1j * math.pi * np.einsum("ki,ij,kj->k", v, w, v) + 2j * math.pi * (v @ (z + b))
    terms = np.exp(expo)
    value = complex(terms.sum())
    if not gradient:
        return value
    grad = 2j * math.pi * (terms @ v)
    return value, np.asarray(grad, dtype=complex)


def theta(c: Characteristic, z, omega, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    omega = as_period_matrix(omega)
    if c.genus != omega.g:
        raise ValueError("characteristic genus does not match the period matrix")
    return theta_series(c.a, c.b, z, omega, policy)


def genus1_theta(kind: str, z, tau, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Jacobi theta ``theta_{kind}(z, tau)`` with kind in 00, 01, 10, 11."""
    top, bottom = GENUS1_KINDS[kind]
    return theta(Characteristic((top,), (bottom,)), [z], tau, policy)


def even_theta_vector(omega, policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """The ten even theta constants ``A_1..A_10`` in the fixed numbering."""
    omega = as_period_matrix(omega)
    zero = np.zeros(2)
    return np.array([theta(c, zero, omega, policy) for c in EVEN_CHARACTERISTICS])


def level24_coords(omega, policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """``[B_0:B_1:B_2:B_3]``, second order constants ``theta[t; 0](0, 2 omega)``.

    The index runs over the top characteristic ``t`` in the order 00, 01, 10, 11.
    """
    omega = as_period_matrix(omega)
    doubled = omega.scaled(2)
    zero = np.zeros(2)
    return np.array(
        [theta_series(np.array(t) / 2, zero, zero, doubled, policy) for t in ((0, 0), (0, 1), (1, 0), (1, 1))]
    )


def two_torsion_point(t: Characteristic, omega) -> np.ndarray:
    """The point ``1/2 omega m + 1/2 n`` labelled by ``t = [m; n]``."""
    omega = as_period_matrix(omega)
    return omega.matrix @ (np.asarray(t.top) / 2) + np.asarray(t.bottom) / 2


def quasi_periodicity_factor(c: Characteristic, z, omega, m, n) -> complex:
    """``theta[c](z + omega m + n) / theta[c](z)``."""
    w = as_period_matrix(omega).matrix
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    z = np.asarray(z, dtype=complex)
    expo = -1j * math.pi * (m @ w @ m) - 2j * math.pi * (m @ z) + 2j * math.pi * (c.a @ n - c.b @ m)
    return complex(np.exp(expo))


HALF_VECTORS_G2 = [np.array(v, dtype=float) / 2 for v in itertools.product((0, 1), repeat=2)]


def riemann_relation_sides(chars, points, omega, policy: TruncationPolicy = DEFAULT_POLICY):
    """Both sides of Riemann's quartic theta relation.

    ``chars`` is ``(a, b, c, d, e, f, g, h)`` (real vectors, usually half
    integers) and ``points`` is ``(x, y, u, v)``.
    """
    omega = as_period_matrix(omega)
    a, b, c, d, e, f, g, h = (np.asarray(v, dtype=float) for v in chars)
    x, y, u, v = (np.asarray(p, dtype=complex) for p in points)
    th = functools.partial(theta_series, omega=omega, policy=policy)
    lhs = (
        th((a + b + c + d) / 2, (e + f + g + h) / 2, (x + y + u + v) / 2)
        * th((a + b - c - d) / 2, (e + f - g - h) / 2, (x + y - u - v) / 2)
        * th((a - b + c - d) / 2, (e - f + g - h) / 2, (x - y + u - v) / 2)
        * th((a - b - c + d) / 2, (e - f - g + h) / 2, (x - y - u + v) / 2)
    )
    halves = [np.array(v, dtype=float) / 2 for v in itertools.product((0, 1), repeat=omega.g)]
    rhs = 0j
    total = a + b + c + d
    for al in halves:
        for be in halves:
            rhs += (
                np.exp(-2j * math.pi * (be @ total))
                * th(a + al, e + be, x)
                * th(b + al, f + be, y)
                * th(c + al, g + be, u)
                * th(d + al, h + be, v)
            )
    return complex(lhs), complex(rhs / 2**omega.g)


def riemann_relation_residual(chars, points, omega, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    lhs, rhs = riemann_relation_sides(chars, points, omega, policy)
    return abs(lhs - rhs)


def random_period_matrix(rng: np.random.Generator, genus: int = 2) -> PeriodMatrix:
    """Diagonal-dominant sample: imaginary diagonal in [0.8, 2]."""
    if genus == 1:
        return PeriodMatrix([[complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))]])
    y11, y22 = rng.uniform(0.8, 2.0, size=2)
    y12 = rng.uniform(-0.25, 0.25)
    x11, x12, x22 = rng.uniform(-0.5, 0.5, size=3)
    return PeriodMatrix.from_entries(complex(x11, y11), complex(x12, y12), complex(x22, y22))


def random_point(rng: np.random.Generator, genus: int = 2, scale: float = 0.4) -> np.ndarray:
    return rng.uniform(-scale, scale, genus) + 1j * rng.uniform(-scale / 2, scale / 2, genus)
