"""The fifteen diagonal quadrics cutting out the Kummer surface in P^5.

All coefficients are the squared even theta constants ``A_1^2..A_10^2`` and
nothing here divides, so the same code serves generic, boundary and
finite-field inputs. Entries may be complex numbers, ``Fraction``, ``Fp`` or
sympy expressions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .fields import ComplexField
from .theta_core import (
    DEFAULT_POLICY,
    ODD_CHARACTERISTICS,
    Characteristic,
    TruncationPolicy,
    as_period_matrix,
    theta,
)


class BasePointError(ValueError):
    """All six odd theta functions vanish at the point (a 2-torsion point)."""


class NotInNet(ValueError):
    pass


class DecomposableLocus(ZeroDivisionError):
    """An even constant in a denominator vanishes: the surface is not a Jacobian."""


# (A index, X index, sign) per equation, indices 1-based
EQUATION_TERMS: dict[str, tuple[tuple[int, int, int], ...]] = {
    "E1": ((10, 1, 1), (1, 4, 1), (2, 5, -1), (5, 6, -1)),
    "E2": ((10, 2, 1), (3, 4, 1), (4, 5, -1), (8, 6, -1)),
    "E3": ((10, 3, 1), (6, 4, 1), (9, 5, -1), (7, 6, -1)),
    "E4": ((1, 1, 1), (3, 2, -1), (6, 3, -1), (10, 4, 1)),
    "E5": ((2, 1, 1), (4, 2, -1), (9, 3, -1), (10, 5, 1)),
    "E6": ((5, 1, 1), (8, 2, -1), (7, 3, -1), (10, 6, 1)),
    "E7": ((8, 1, 1), (5, 2, -1), (9, 4, -1), (6, 5, 1)),
    "E8": ((3, 1, 1), (1, 2, -1), (7, 5, 1), (9, 6, -1)),
    "E9": ((4, 1, 1), (2, 2, -1), (7, 4, 1), (6, 6, -1)),
    "E10": ((7, 1, 1), (5, 3, -1), (4, 4, 1), (3, 5, -1)),
    "E11": ((9, 1, 1), (2, 3, -1), (8, 4, -1), (3, 6, 1)),
    "E12": ((6, 1, 1), (1, 3, -1), (8, 5, -1), (4, 6, 1)),
    "E13": ((7, 2, 1), (8, 3, -1), (2, 4, 1), (1, 5, -1)),
    "E14": ((9, 2, 1), (4, 3, -1), (5, 4, -1), (1, 6, 1)),
    "E15": ((6, 2, 1), (3, 3, -1), (5, 5, -1), (2, 6, 1)),
}
EQUATION_NAMES = tuple(EQUATION_TERMS)

# Remark 3.4 table: sign of X_1..X_6 under translation by a 2-torsion point
PRINTED_SIGN_ROWS: dict[str, tuple[int, ...]] = {
    "Omega[1;0]/2": (1, -1, 1, -1, -1, -1),
    "Omega[0;1]/2": (-1, -1, -1, 1, -1, 1),
    "[1;0]/2": (1, 1, -1, -1, -1, -1),
    "[0;1]/2": (-1, -1, -1, 1, 1, -1),
}
SIGN_ROW_TORSION = {
    "Omega[1;0]/2": Characteristic((1, 0), (0, 0)),
    "Omega[0;1]/2": Characteristic((0, 1), (0, 0)),
    "[1;0]/2": Characteristic((0, 0), (1, 0)),
    "[0;1]/2": Characteristic((0, 0), (0, 1)),
}


@dataclass(frozen=True)
class DiagonalQuadric:
    """``sum coeffs[i] * X_{i+1}^2``."""

    name: str
    coeffs: tuple

    def __call__(self, x):
        return sum(c * xi * xi for c, xi in zip(self.coeffs, x))

    def bilinear(self, x, y):
        return sum(c * xi * yi for c, xi, yi in zip(self.coeffs, x, y))

    def scale(self, x):
        """Largest monomial magnitude at ``x`` (complex inputs)."""
        return max(abs(c * xi * xi) for c, xi in zip(self.coeffs, x))

    def __add__(self, other):
        return DiagonalQuadric(f"({self.name}+{other.name})", tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k):
        return DiagonalQuadric(self.name, tuple(k * c for c in self.coeffs))

    def __neg__(self):
        return DiagonalQuadric(self.name, tuple(-c for c in self.coeffs))


def veronese(b):
    """The ten squared even constants as quadratic forms in ``B_0..B_3``."""
    b0, b1, b2, b3 = b
    return [
        b0 * b0 + b1 * b1 + b2 * b2 + b3 * b3,
        b0 * b0 - b1 * b1 + b2 * b2 - b3 * b3,
        b0 * b0 + b1 * b1 - b2 * b2 - b3 * b3,
        b0 * b0 - b1 * b1 - b2 * b2 + b3 * b3,
        2 * (b0 * b1 + b2 * b3),
        2 * (b0 * b2 + b1 * b3),
        2 * (b0 * b3 + b1 * b2),
        2 * (b0 * b1 - b2 * b3),
        2 * (b0 * b2 - b1 * b3),
        2 * (b0 * b3 - b1 * b2),
    ]


def veronese_gradient(b):
    """``d A_k^2 / d B_j`` as a 10 x 4 nested list (linear in B)."""
    b0, b1, b2, b3 = b
    return [
        [2 * b0, 2 * b1, 2 * b2, 2 * b3],
        [2 * b0, -2 * b1, 2 * b2, -2 * b3],
        [2 * b0, 2 * b1, -2 * b2, -2 * b3],
        [2 * b0, -2 * b1, -2 * b2, 2 * b3],
        [2 * b1, 2 * b0, 2 * b3, 2 * b2],
        [2 * b2, 2 * b3, 2 * b0, 2 * b1],
        [2 * b3, 2 * b2, 2 * b1, 2 * b0],
        [2 * b1, 2 * b0, -2 * b3, -2 * b2],
        [2 * b2, -2 * b3, 2 * b0, -2 * b1],
        [2 * b3, -2 * b2, -2 * b1, 2 * b0],
    ]


def build_equation(name: str, asq) -> DiagonalQuadric:
    zero = asq[0] * 0
    coeffs = [zero] * 6
    for a, x, sign in EQUATION_TERMS[name]:
        coeffs[x - 1] = asq[a - 1] if sign > 0 else -asq[a - 1]
    return DiagonalQuadric(name, tuple(coeffs))


def build_equations(asq) -> list[DiagonalQuadric]:
    if len(asq) != 10:
        raise ValueError("need the ten squared constants A_1^2..A_10^2")
    return [build_equation(name, asq) for name in EQUATION_NAMES]


def phi(z, omega, policy: TruncationPolicy = DEFAULT_POLICY, base_tol: float = 1e-12) -> np.ndarray:
    """``[X_1:...:X_6]``, the six odd theta functions at ``(2z, omega)``."""
    omega = as_period_matrix(omega)
    z2 = 2 * np.asarray(z, dtype=complex)
    x = np.array([theta(c, z2, omega, policy) for c in ODD_CHARACTERISTICS])
    if np.max(np.abs(x)) < base_tol:
        raise BasePointError("z is (numerically) a 2-torsion point")
    return x


def torsion_signs(t: Characteristic) -> tuple[int, ...]:
    """Signs on ``X_1..X_6`` from translating by the 2-torsion point ``t = [m; n]``.

    ``X_i(2(z + W m/2 + n/2)) = common factor * (-1)^(top_i . n + bottom_i . m) X_i(2z)``.
    """
    m, n = t.top, t.bottom
    out = []
    for c in ODD_CHARACTERISTICS:
        e = sum(x * y for x, y in zip(c.top, n)) + sum(x * y for x, y in zip(c.bottom, m))
        out.append(-1 if e % 2 else 1)
    return tuple(out)


def two_torsion_translate(x, t) -> list:
    """Apply the sign change of a 2-torsion translation to a point of P^5.

    ``t`` is a torsion :class:`Characteristic`, a printed row name, or a sign
    tuple.
    """
    if isinstance(t, str):
        signs = PRINTED_SIGN_ROWS[t]
    elif isinstance(t, Characteristic):
        signs = torsion_signs(t)
    else:
        signs = tuple(t)
    return [xi if s > 0 else -xi for xi, s in zip(x, signs)]


def normalize_projective(x, field=None):
    """Scale so the first nonzero (exact) or largest (complex) entry is 1."""
    field = field or ComplexField()
    if field.exact:
        k = next((i for i, v in enumerate(x) if not field.is_zero(v)), None)
    else:
        mags = [abs(v) for v in x]
        k = int(np.argmax(mags)) if max(mags) > 0 else None
    if k is None:
        raise ValueError("the zero vector is not a projective point")
    pivot = x[k]
    return [v / pivot for v in x]


def projectively_equal(x, y, field=None, rtol: float = 1e-9) -> bool:
    field = field or ComplexField()
    u = normalize_projective(list(x), field)
    try:
        v = normalize_projective(list(y), field)
    except ValueError:
        return False
    if field.exact:
        return all(field.eq(a, b) for a, b in zip(u, v))
    return max(abs(a - b) for a, b in zip(u, v)) <= rtol


def quadric_rank(q: DiagonalQuadric, field=None) -> int:
    field = field or ComplexField()
    return sum(1 for c in q.coeffs if not field.is_zero(c))


def support(q: DiagonalQuadric, field=None) -> tuple[int, ...]:
    field = field or ComplexField()
    return tuple(i + 1 for i, c in enumerate(q.coeffs) if not field.is_zero(c))


def net_coefficients(target: DiagonalQuadric, basis, field=None, rtol: float = 1e-9):
    """``(c_1, c_2, c_3)`` with ``target = sum c_j basis_j``; raises NotInNet."""
    field = field or ComplexField()
    sol = linalg.solve([q.coeffs for q in basis], list(target.coeffs), field, rtol)
    if sol is None:
        raise NotInNet(f"{target.name} is not in the span of {[q.name for q in basis]}")
    return tuple(sol)


def structure_matrix(asq):
    """``M`` in ``(E1,E2,E3) = A_10^2 (X_1^2,X_2^2,X_3^2) + M (X_4^2,X_5^2,X_6^2)``."""
    a = asq
    return [[a[0], -a[1], -a[4]], [a[2], -a[3], -a[7]], [a[5], -a[8], -a[6]]]


def detM_check(asq, field=None):
    """``det M - A_10^6``; zero on the Veronese image.

    Returns the field element for exact fields and its modulus otherwise.
    """
    field = field or ComplexField()
    asq = [field(v) for v in asq]
    d = linalg.det(structure_matrix(asq), field) - asq[9] ** 3
    return d if field.exact else abs(d)


def e578_change_matrix(asq, field=None):
    """``A_10^2`` times the net coefficients of (E5, E7, E8) over (E1, E2, E3)."""
    field = field or ComplexField()
    asq = [field(v) for v in asq]
    eqs = {q.name: q for q in build_equations(asq)}
    basis = [eqs["E1"], eqs["E2"], eqs["E3"]]
    return [[asq[9] * c for c in net_coefficients(eqs[n], basis, field)] for n in ("E5", "E7", "E8")]


def printed_e578_matrix(asq):
    a = asq
    zero = a[0] * 0
    return [[a[1], -a[3], -a[8]], [a[7], -a[4], zero], [a[2], -a[0], zero]]


def e578_determinant(asq, field=None):
    field = field or ComplexField()
    return linalg.det(e578_change_matrix(asq, field), field)


def rosenhain_form(asq, field=None):
    """``(lambda_1, lambda_2, lambda_3)`` of ``y^2 = x(x-1)(x-l1)(x-l2)(x-l3)``."""
    field = field or ComplexField()
    a = [field(v) for v in asq]
    for k in (0, 1, 4):
        if field.is_zero(a[k]):
            raise DecomposableLocus(f"A_{k + 1}^2 vanishes")
    lam1 = a[6] * a[5] / (a[4] * a[0])
    lam2 = a[8] * a[6] / (a[1] * a[4])
    lam3 = a[8] * a[5] / (a[1] * a[0])
    return lam1, lam2, lam3


def equation_residuals(x, asq) -> dict[str, float]:
    """Relative residuals ``|E_i(x)| / max monomial`` at a complex point."""
    out = {}
    for q in build_equations(list(asq)):
        scale = q.scale(x)
        out[q.name] = abs(q(x)) / scale if scale > 0 else 0.0
    return out
