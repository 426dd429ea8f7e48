"""Monomial actions of the nine generators on ``A_1..A_10`` and ``X_1..X_6``.

A table row for ``gamma`` lists, in slot ``i``, the coordinate (times a power
of ``zeta = exp(2 pi i / 8)``) that replaces coordinate ``i``. Numerically the
rows describe ``A(gamma^{-1} W)`` and ``Phi(gamma^{-1} (z, W))`` in terms of
``A(W)`` and ``Phi(z, W)``, up to one global scalar.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import sympy as sp

from .equations import EQUATION_TERMS, DiagonalQuadric, phi
from .fields import ComplexField
from .symplectic import act_on_point, generator
from .theta_core import DEFAULT_POLICY, TruncationPolicy, even_theta_vector


@dataclass(frozen=True)
class MonomialAction:
    """``v -> (zeta^phase[i] * v[perm[i]])_i``; phases are exponents mod 8."""

    perm: tuple[int, ...]
    phase: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm must be a bijection")
        if len(self.phase) != len(self.perm):
            raise ValueError("phase and perm lengths differ")
        object.__setattr__(self, "phase", tuple(e % 8 for e in self.phase))

    @classmethod
    def identity(cls, size: int) -> "MonomialAction":
        return cls(tuple(range(size)), (0,) * size)

    @property
    def size(self) -> int:
        return len(self.perm)

    def then(self, other: "MonomialAction") -> "MonomialAction":
        """Apply ``self`` first, then ``other``."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.size))
        phase = tuple(other.phase[i] + self.phase[other.perm[i]] for i in range(self.size))
        return MonomialAction(perm, phase)

    def squared_phases(self) -> tuple[int, ...]:
        """Phases seen by squared coordinates."""
        return tuple(2 * e % 8 for e in self.phase)


def _parse_row(row: str) -> MonomialAction:
    perm, phase = [], []
    for tok in row.split():
        e = 0
        for prefix, exp in (("-i*", 6), ("i*", 2), ("z7*", 7), ("-", 4)):
            if tok.startswith(prefix):
                e, tok = exp, tok[len(prefix):]
                break
        perm.append(int(tok) - 1)
        phase.append(e)
    return MonomialAction(tuple(perm), tuple(phase))


A_TABLE_ROWS = {
    "g1": "1 3 2 4 6 5 7 9 8 10",
    "g2": "1 2 4 3 7 6 5 10 9 -8",
    "g3": "1 4 3 2 5 7 6 8 10 -9",
    "g4": "1 3 4 2 7 5 6 10 8 -9",
    "g5": "1 4 2 3 6 7 5 9 10 -8",
    "h1": "3 4 1 2 8 z7*6 z7*7 5 z7*9 z7*10",
    "h2": "1 2 3 4 8 9 i*10 5 6 i*7",
    "h3": "2 1 4 3 z7*5 9 z7*7 z7*8 6 z7*10",
    "J": "1 5 6 7 2 3 4 9 8 -10",
}
X_TABLE_ROWS = {
    "g1": "4 5 6 1 2 3",
    "g2": "3 -6 1 5 4 2",
    "g3": "2 1 5 6 -3 4",
    "g4": "6 -3 4 2 1 5",
    "g5": "5 4 2 3 -6 1",
    "h1": "2 1 z7*3 z7*4 z7*5 z7*6",
    "h2": "2 1 -i*6 5 4 -i*3",
    "h3": "z7*1 z7*2 z7*3 5 4 z7*6",
    "J": "i*1 i*3 i*2 i*4 i*6 i*5",
}
A_TABLE = {k: _parse_row(v) for k, v in A_TABLE_ROWS.items()}
X_TABLE = {k: _parse_row(v) for k, v in X_TABLE_ROWS.items()}

# (result, generator, source) for every non-basic equation
DERIVATION_CHAIN = (
    ("E2", "h1", "E1"),
    ("E3", "J", "E2"),
    ("E4", "g1", "E1"),
    ("E5", "g1", "E2"),
    ("E6", "g1", "E3"),
    ("E7", "g4", "E3"),
    ("E8", "g4", "E1"),
    ("E9", "h3", "E8"),
    ("E10", "J", "E9"),
    ("E11", "g5", "E2"),
    ("E12", "g5", "E1"),
    ("E13", "g2", "E1"),
    ("E14", "g3", "E1"),
    ("E15", "h3", "E14"),
)


def _word(word) -> list[str]:
    if isinstance(word, str):
        parts = [w for w in word.replace(" ", "").split("*") if w]
    else:
        parts = list(word)
    return [p for p in parts if p not in ("id", "1", "identity")]


def _compose(table, size, word) -> MonomialAction:
    act = MonomialAction.identity(size)
    for name in _word(word):
        act = act.then(table[getattr(name, "name", name)])
    return act


def action_on_A(word) -> MonomialAction:
    """Action on the even constants; ``"g1*h2"`` means g1's row, then h2's."""
    return _compose(A_TABLE, 10, word)


def action_on_X(word) -> MonomialAction:
    return _compose(X_TABLE, 6, word)


def apply(action: MonomialAction, vector, field=None) -> list:
    field = field or ComplexField()
    if len(vector) != action.size:
        raise ValueError("vector length does not match the action")
    return [field.zeta8(e) * vector[p] for p, e in zip(action.perm, action.phase)]


A_SQUARED_SYMBOLS = sp.symbols("a1:11")  # stand for A_1^2 .. A_10^2


def symbolic_equation(name: str) -> DiagonalQuadric:
    coeffs = [sp.Integer(0)] * 6
    for a, x, sign in EQUATION_TERMS[name]:
        coeffs[x - 1] = sign * A_SQUARED_SYMBOLS[a - 1]
    return DiagonalQuadric(name, tuple(coeffs))


def _unit(e: int):
    """``zeta^e`` for even ``e``: a 4th root of unity."""
    return sp.I ** ((e % 8) // 2)


def transform_equation(word, q: DiagonalQuadric) -> DiagonalQuadric:
    """Substitute the squared actions into a symbolic quadric.

    ``A_k^2 -> zeta^(2 e_k) A_{perm(k)}^2`` and likewise for ``X_j^2``; the
    squared phases are 4th roots of unity, so the result stays exact.
    """
    act_a, act_x = action_on_A(word), action_on_X(word)
    subs = {
        A_SQUARED_SYMBOLS[k]: _unit(2 * act_a.phase[k]) * A_SQUARED_SYMBOLS[act_a.perm[k]] for k in range(10)
    }
    new = [sp.Integer(0)] * 6
    for j, c in enumerate(q.coeffs):
        if c == 0:
            continue
        new[act_x.perm[j]] += sp.expand(sp.sympify(c).xreplace(subs) * _unit(2 * act_x.phase[j]))
    return DiagonalQuadric(f"{word}({q.name})", tuple(sp.expand(v) for v in new))


def symbolic_scalar_ratio(p: DiagonalQuadric, q: DiagonalQuadric):
    """The nonzero constant ``s`` with ``p = s q``, or ``None``."""
    ratio = None
    for a, b in zip(p.coeffs, q.coeffs):
        a, b = sp.expand(a), sp.expand(b)
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            return None
        r = sp.simplify(a / b)
        if not r.is_number:
            return None
        if ratio is None:
            ratio = r
        elif sp.simplify(r - ratio) != 0:
            return None
    return ratio


def verify_derivation_chain() -> list[dict]:
    """Check every tabulated derivation symbolically."""
    out = []
    for result, gen, source in DERIVATION_CHAIN:
        image = transform_equation(gen, symbolic_equation(source))
        s = symbolic_scalar_ratio(image, symbolic_equation(result))
        out.append({"result": result, "generator": gen, "source": source, "scalar": None if s is None else str(s), "ok": s is not None})
    return out


def _spread(lhs, rhs) -> float:
    """How far ``lhs`` is from a single scalar multiple of ``rhs``."""
    lhs, rhs = np.asarray(lhs, dtype=complex), np.asarray(rhs, dtype=complex)
    k = int(np.argmax(np.abs(rhs)))
    c = lhs[k] / rhs[k]
    return float(np.max(np.abs(lhs - c * rhs)) / np.max(np.abs(lhs)))


def table_row_residual(name: str, z, omega, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Numeric check of one table row against theta values at ``gamma^{-1}``."""
    g = generator(name).inverse()
    z2, w2 = act_on_point(g, z, omega)
    zeta = np.exp(2j * np.pi / 8)
    a_old, a_new = even_theta_vector(omega, policy), even_theta_vector(w2, policy)
    x_old, x_new = phi(z, omega, policy), phi(z2, w2, policy)
    res = 0.0
    for act, old, new in ((A_TABLE[name], a_old, a_new), (X_TABLE[name], x_old, x_new)):
        image = [zeta ** act.phase[i] * old[act.perm[i]] for i in range(act.size)]
        res = max(res, _spread(new, image))
    return res
