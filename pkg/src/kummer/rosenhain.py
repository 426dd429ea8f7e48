"""Rosenhain hyperplanes, the 16 + 16 lines and the product identity ``F(z)``.

Characteristics are handled as doubled integer vectors so the expansion of
Riemann's relation at ``x = 2z, y = u = v = 0`` is exact: every phase that
appears is a sign.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter, defaultdict
from dataclasses import dataclass

import numpy as np

from . import linalg
from .equations import build_equations, phi, torsion_signs
from .fields import ComplexField
from .theta_core import (
    DEFAULT_POLICY,
    LABELS,
    NUMBERING,
    ODD_CHARACTERISTICS,
    Characteristic,
    TruncationPolicy,
    as_period_matrix,
    even_theta_vector,
    theta,
    theta_series,
    two_torsion_point,
)


class RankDeficient(ValueError):
    """The stacked hyperplanes do not have full rank."""


class NewtonDiverged(RuntimeError):
    pass


class DegenerateHyperplane(ValueError):
    pass


Triple = tuple[int, int, int]


@dataclass(frozen=True)
class RosenhainHyperplane:
    """``sum_k signs[k] * A_{triples[k]} * X_{support[k]} = 0``."""

    id: str
    orbit_index: int
    support: tuple[int, int, int]
    triples: tuple[Triple, Triple, Triple]
    signs: tuple[int, int, int]

    def coefficients(self, a) -> list:
        """Six coefficients of ``X_1..X_6`` given the (unsquared) ``A_1..A_10``."""
        zero = a[0] * 0
        out = [zero] * 6
        for x, (i, j, k), s in zip(self.support, self.triples, self.signs):
            out[x - 1] = a[i - 1] * a[j - 1] * a[k - 1] * s
        return out

    def __call__(self, a, x):
        return sum(c * xi for c, xi in zip(self.coefficients(a), x))

    def translate(self, t: Characteristic, orbit_index: int | None = None) -> "RosenhainHyperplane":
        sg = torsion_signs(t)
        signs = tuple(s * sg[x - 1] for x, s in zip(self.support, self.signs))
        idx = self.orbit_index if orbit_index is None else orbit_index
        return RosenhainHyperplane(self.id, idx, self.support, self.triples, signs)

    def normalized(self) -> "RosenhainHyperplane":
        """Flip all signs so the first is +1 (same projective hyperplane)."""
        if self.signs[0] > 0:
            return self
        return RosenhainHyperplane(self.id, self.orbit_index, self.support, self.triples, tuple(-s for s in self.signs))

    @property
    def key(self):
        n = self.normalized()
        return n.support, tuple(tuple(sorted(t)) for t in n.triples), n.signs

    def __str__(self):
        parts = []
        for x, t, s in zip(self.support, self.triples, self.signs):
            parts.append(("+ " if s > 0 else "- ") + "A" + ",".join(map(str, t)) + f" X{x}")
        return " ".join(parts).lstrip("+ ")


@dataclass(frozen=True)
class IncidenceRecord:
    hyperplane: str
    tropes: tuple[int, int, int, int]
    exceptionals: tuple[int, int, int, int]

    def __str__(self):
        return "D_{%s} + E_{%s}" % (",".join(map(str, self.tropes)), ",".join(map(str, self.exceptionals)))


@dataclass(frozen=True)
class LineP5:
    basis: tuple[tuple, tuple]

    def point(self, s, t) -> list:
        u, v = self.basis
        return [s * a + t * b for a, b in zip(u, v)]


# printed representatives and incidences of the twenty orbits
_PRINTED = """
H1  +1,3,6:4 +2,4,9:5 +5,7,8:6 | 1,3,6,14 | 10,11,12,13
H2  +1,10,3:3 +5,8,9:5 -2,4,7:6 | 1,3,10,13 | 6,11,12,14
H3  +2,4,10:3 -5,6,8:4 -1,3,7:6 | 1,3,7,16 | 9,11,12,15
H4  +5,8,10:3 +2,4,6:4 +1,3,9:5 | 1,3,9,15 | 7,11,12,16
H5  +1,6,10:2 +4,5,7:5 -2,8,9:6 | 1,6,10,12 | 3,11,13,14
H6  +2,9,10:2 -3,5,7:4 -1,6,8:6 | 1,6,8,16 | 4,11,13,15
H7  +5,7,10:2 +2,3,9:4 +1,4,6:5 | 1,4,6,15 | 8,11,13,16
H8  +6,8,9:2 -3,4,7:3 +1,2,10:6 | 1,2,10,16 | 5,11,14,15
H9  +4,6,7:2 -3,8,9:3 +1,5,10:5 | 1,5,10,15 | 2,11,14,16
H10 +3,7,9:2 -4,6,8:3 +2,5,10:4 | 2,5,10,14 | 2,5,10,14
H11 +3,6,10:1 +2,7,8:5 -4,5,9:6 | 3,6,10,11 | 3,6,10,11
H12 +4,9,10:1 -1,7,8:4 -3,5,6:6 | 3,5,6,16 | 4,9,10,11
H13 +7,8,10:1 +1,4,9:4 +2,3,6:5 | 2,3,6,15 | 7,8,10,11
H14 +5,6,9:1 +1,2,7:3 -3,4,10:6 | 1,2,7,13 | 8,12,14,15
H15 +2,6,7:1 +1,5,9:3 -3,8,10:5 | 1,5,9,13 | 4,12,14,16
H16 +1,7,9:1 +2,5,6:3 -4,8,10:4 | 2,5,6,13 | 4,8,10,14
H17 +3,4,5:1 +1,2,8:2 +6,9,10:6 | 1,2,8,12 | 7,13,14,15
H18 +2,3,8:1 +1,4,5:2 +6,7,10:5 | 1,4,5,12 | 9,13,14,16
H19 +1,4,8:1 +2,3,5:2 +7,9,10:4 | 2,3,5,12 | 7,9,10,14
H20 +1,2,5:1 +3,4,8:2 +6,7,9:3 | 1,2,5,11 | 10,14,15,16
"""


def _parse_printed():
    planes, records = {}, {}
    for line in _PRINTED.strip().splitlines():
        head, d, e = line.split("|")
        name, *terms = head.split()
        support, triples, signs = [], [], []
        for term in terms:
            m = re.fullmatch(r"([+-])([\d,]+):(\d)", term)
            signs.append(1 if m[1] == "+" else -1)
            triples.append(tuple(int(v) for v in m[2].split(",")))
            support.append(int(m[3]))
        planes[name] = RosenhainHyperplane(name, 0, tuple(support), tuple(triples), tuple(signs))
        records[name] = IncidenceRecord(
            name, tuple(int(v) for v in d.split(",")), tuple(int(v) for v in e.split(","))
        )
    return planes, records


PRINTED_HYPERPLANES, PRINTED_INCIDENCE = _parse_printed()

# hyperplane systems cutting out the lines D_1 and E_11
D1_SYSTEM = ("H1", "H2", "H5", "H14")
E11_SYSTEM = ("H1", "H2", "H5", "H11")

F_QUADRUPLE = (1, 2, 5, 11)

# printed vanishing pattern of f_1..f_4 at the 16 two-torsion points, by label
PRINTED_VANISHING = {
    1: {11, 12, 13, 14, 15, 16},
    2: {5, 7, 8, 10, 14, 15},
    5: {2, 4, 9, 10, 14, 16},
    11: {1, 3, 6, 10, 15, 16},
}


# ---------------------------------------------------------------- quadruples


def _doubled(label: int) -> tuple[np.ndarray, np.ndarray]:
    c = NUMBERING[label]
    return np.array(c.top), np.array(c.bottom)


def is_rosenhain_quadruple(labels) -> bool:
    tops = sum(_doubled(k)[0] for k in labels)
    bottoms = sum(_doubled(k)[1] for k in labels)
    integral = not (tops % 2).any() and not (bottoms % 2).any()
    odd = sum(NUMBERING[k].is_odd for k in labels) % 2 == 1
    return bool(integral and odd)


def enumerate_quadruples(distinct: bool = True) -> list[tuple[int, ...]]:
    """All 4-multisets (or 4-sets) of labels meeting both conditions.

    The two conditions are integrality of the summed characteristics and an
    odd total parity ``2 sum(a'.a'') not in Z``.
    """
    pool = itertools.combinations if distinct else itertools.combinations_with_replacement
    return [q for q in pool(range(1, 17), 4) if is_rosenhain_quadruple(q)]


def quadruple_counts() -> dict[str, int]:
    return {"distinct": len(enumerate_quadruples(True)), "multiset": len(enumerate_quadruples(False))}


def shift_quadruple(quad, t: Characteristic) -> tuple[int, ...]:
    return tuple(sorted((NUMBERING[k] + t).label for k in quad))


def quadruple_orbits() -> list[list[tuple[int, ...]]]:
    """Orbits of the 80 quadruples under the 16 translations."""
    seen, orbits = set(), []
    for q in enumerate_quadruples():
        if q in seen:
            continue
        orbit = sorted({shift_quadruple(q, NUMBERING[k]) for k in range(1, 17)})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


# -------------------------------------------------------- Riemann expansion


def _reduce(top: np.ndarray, bottom: np.ndarray) -> tuple[int, int]:
    """Reduce a doubled characteristic; returns ``(label, sign)``.

    ``theta[r + m; s + n] = exp(2 pi i r.n) theta[r; s]`` for integral ``m, n``.
    """
    t0, s0 = top % 2, bottom % 2
    n = (bottom - s0) // 2
    sign = -1 if int(t0 @ n) % 2 else 1
    return LABELS[Characteristic(tuple(t0), tuple(s0))], sign


def _rch_terms(quad):
    """Terms ``(label at 2z, (three constant labels), sign)`` of the right side.

    The left side is ``prod_k theta[p_k](z)``; an overall factor 1/4 is left
    to the caller.
    """
    (t1, b1), (t2, b2), (t3, b3), (t4, b4) = (_doubled(k) for k in quad)
    # doubled a, b, c, d (tops) and e, f, g, h (bottoms)
    tops = [(t1 + t2 + t3 + t4) // 2, (t1 + t2 - t3 - t4) // 2, (t1 - t2 + t3 - t4) // 2, (t1 - t2 - t3 + t4) // 2]
    bots = [(b1 + b2 + b3 + b4) // 2, (b1 + b2 - b3 - b4) // 2, (b1 - b2 + b3 - b4) // 2, (b1 - b2 - b3 + b4) // 2]
    # (t1+...+t4) is even; the others differ from it by even vectors
    for al in itertools.product((0, 1), repeat=2):
        for be in itertools.product((0, 1), repeat=2):
            al_v, be_v = np.array(al), np.array(be)
            # exp(-2 pi i beta.(a+b+c+d)), a+b+c+d = t1 (undoubled)
            sign = -1 if int(be_v @ t1) % 2 else 1
            labels = []
            for tp, bt in zip(tops, bots):
                lab, s = _reduce(tp + al_v, bt + be_v)
                labels.append(lab)
                sign *= s
            yield labels[0], tuple(labels[1:]), sign


def symbolic_hyperplane(quad) -> dict[int, Counter]:
    """Exact right side: ``{X index: Counter({sorted triple: 4 * coefficient})}``.

    Terms with an odd constant vanish; terms whose function at ``2z`` is even
    must cancel and are dropped after checking that they do.
    """
    out: dict[int, Counter] = defaultdict(Counter)
    even_part: dict[int, Counter] = defaultdict(Counter)
    for lab, consts, sign in _rch_terms(quad):
        if any(k > 10 for k in consts):
            continue
        triple = tuple(sorted(consts))
        (out[lab - 10] if lab > 10 else even_part[lab])[triple] += sign
    if any(v for c in even_part.values() for v in c.values()):
        raise DegenerateHyperplane(f"{quad}: even part does not cancel")
    return {x: Counter({t: v for t, v in c.items() if v}) for x, c in out.items() if any(c.values())}


def hyperplane_from_symbolic(quad, name: str = "") -> RosenhainHyperplane:
    sym = symbolic_hyperplane(quad)
    if len(sym) != 3 or any(len(c) != 1 for c in sym.values()):
        raise DegenerateHyperplane(f"{quad}: not a 3-term form: {sym}")
    support = tuple(sorted(sym))
    triples, signs = [], []
    for x in support:
        (t, v), = sym[x].items()
        if abs(v) != 1:
            raise DegenerateHyperplane(f"{quad}: coefficient {v}/4")
        triples.append(t)
        signs.append(v)
    return RosenhainHyperplane(name or "Q" + ",".join(map(str, quad)), 0, support, tuple(triples), tuple(signs))


def hyperplane_from_quadruple(quad, omega, policy: TruncationPolicy = DEFAULT_POLICY, tol: float = 1e-10) -> np.ndarray:
    """Numeric ``X_1..X_6`` coefficients of the quadruple's product, from the relation.

    The theta constants are evaluated numerically, including the odd ones,
    so nothing about which terms survive is assumed.
    """
    omega = as_period_matrix(omega)
    zero = np.zeros(2)
    consts = {k: theta(NUMBERING[k], zero, omega, policy) for k in range(1, 17)}
    coeffs = np.zeros(16, dtype=complex)
    for lab, cs, sign in _rch_terms(quad):
        coeffs[lab - 1] += sign * consts[cs[0]] * consts[cs[1]] * consts[cs[2]] / 4
    scale = np.max(np.abs(coeffs))
    if scale < tol:
        raise DegenerateHyperplane(f"{quad}: all coefficients vanish")
    if np.max(np.abs(coeffs[:10])) > 1e-8 * scale:
        raise DegenerateHyperplane(f"{quad}: even functions survive")
    return coeffs[10:]


def product_residual(quad, z, omega, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``|prod theta[p_k](z) - sum c_i X_i(2z)|`` relative to the larger side."""
    lhs = np.prod([theta(NUMBERING[k], z, omega, policy) for k in quad])
    rhs = hyperplane_from_quadruple(quad, omega, policy) @ phi(z, omega, policy)
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))


def incidence(quad, name: str = "") -> IncidenceRecord:
    """Tropes are the quadruple itself; exceptionals are the 2-torsion points
    where exactly three of the four factors vanish."""
    ex = []
    for t_label, t in NUMBERING.items():
        n_odd = sum((NUMBERING[k] + t).is_odd for k in quad)
        if n_odd == 3:
            ex.append(t_label)
    return IncidenceRecord(name, tuple(sorted(quad)), tuple(ex))


# -------------------------------------------------------------- the table


def _match_printed():
    """Map each printed H to the quadruple whose exact form equals it."""
    by_key = {}
    for q in enumerate_quadruples():
        by_key.setdefault(hyperplane_from_symbolic(q).key, []).append(q)
    out = {}
    for name, h in PRINTED_HYPERPLANES.items():
        out[name] = by_key.get(h.key, [])
    return out


def printed_quadruples() -> dict[str, list[tuple[int, ...]]]:
    return _match_printed()


def orbit_members(h: RosenhainHyperplane) -> list[tuple[RosenhainHyperplane, Characteristic]]:
    """The 4 translates of ``h`` with the first translation (by label) giving each.

    Orbit index 0 is ``h`` itself.
    """
    members = [(h, NUMBERING[1])]
    keys = {h.key}
    for k in range(2, 17):
        g = h.translate(NUMBERING[k], len(members))
        if g.key not in keys:
            keys.add(g.key)
            members.append((g, NUMBERING[k]))
    return members


def hyperplane_table() -> list[RosenhainHyperplane]:
    """All 80 hyperplanes: each printed representative and its translates."""
    return [g for h in PRINTED_HYPERPLANES.values() for g, _ in orbit_members(h)]


def hyperplane_table_with_incidence() -> list[tuple[RosenhainHyperplane, IncidenceRecord]]:
    quads = _match_printed()
    out = []
    for name, h in PRINTED_HYPERPLANES.items():
        for g, t in orbit_members(h):
            out.append((g, incidence(shift_quadruple(quads[name][0], t), f"{name}.{g.orbit_index}")))
    return out


def computed_incidence() -> dict[str, list[IncidenceRecord]]:
    return {name: [incidence(q, name) for q in qs] for name, qs in _match_printed().items()}


# ----------------------------------------------------------------- F and lines


def F_identity_residual(z, omega, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``|f1 f2 f3 f4 (z) + 1/4 (A1A2A5 X1 + A3A4A8 X2 + A6A7A9 X3)(2z)|``, relative."""
    omega = as_period_matrix(omega)
    lhs = np.prod([theta(NUMBERING[k], z, omega, policy) for k in F_QUADRUPLE])
    a = even_theta_vector(omega, policy)
    x = phi_unchecked(z, omega, policy)
    rhs = -(a[0] * a[1] * a[4] * x[0] + a[2] * a[3] * a[7] * x[1] + a[5] * a[6] * a[8] * x[2]) / 4
    scale = max(abs(lhs), abs(rhs), np.prod(np.abs(a[[0, 1, 4]])) * np.max(np.abs(x)) / 4)
    return float(abs(lhs - rhs) / scale) if scale > 0 else 0.0


def F_identity_ratio(z, omega, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``f1 f2 f3 f4 (z) / (1/4 (A1A2A5 X1 + A3A4A8 X2 + A6A7A9 X3)(2z))``.

    Measures the sign directly; it comes out +1 with the series convention used here.
    """
    omega = as_period_matrix(omega)
    lhs = np.prod([theta(NUMBERING[k], z, omega, policy) for k in F_QUADRUPLE])
    a = even_theta_vector(omega, policy)
    x = phi_unchecked(z, omega, policy)
    return complex(lhs / ((a[0] * a[1] * a[4] * x[0] + a[2] * a[3] * a[7] * x[1] + a[5] * a[6] * a[8] * x[2]) / 4))


def phi_unchecked(z, omega, policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    z2 = 2 * np.asarray(z, dtype=complex)
    return np.array([theta(c, z2, omega, policy) for c in ODD_CHARACTERISTICS])


def vanishing_table(omega, policy: TruncationPolicy = DEFAULT_POLICY, tol: float = 1e-8) -> dict[int, set[int]]:
    """Labels of the 2-torsion points where each ``f_k`` vanishes numerically."""
    omega = as_period_matrix(omega)
    out = {}
    for k in F_QUADRUPLE:
        vals = {t: theta(NUMBERING[k], two_torsion_point(NUMBERING[t], omega), omega, policy) for t in range(1, 17)}
        scale = max(abs(v) for v in vals.values())
        out[k] = {t for t, v in vals.items() if abs(v) < tol * scale}
    return out


def vanishing_table_check(omega, policy: TruncationPolicy = DEFAULT_POLICY, tol: float = 1e-8) -> np.ndarray:
    """4 x 16 boolean matrix (rows f_1..f_4, columns labels 1..16)."""
    table = vanishing_table(omega, policy, tol)
    return np.array([[t in table[k] for t in range(1, 17)] for k in F_QUADRUPLE])


def printed_vanishing_matrix() -> np.ndarray:
    return np.array([[t in PRINTED_VANISHING[k] for t in range(1, 17)] for k in F_QUADRUPLE])


def line_from_hyperplanes(forms, field=None, rtol: float = 1e-9) -> LineP5:
    """Kernel of four stacked linear forms on P^5."""
    field = field or ComplexField()
    rows = [list(f) for f in forms]
    r = linalg.rank(rows, field, rtol)
    if r != 4:
        raise RankDeficient(f"hyperplane system has rank {r}, expected 4")
    ker = linalg.nullspace(rows, field, rtol)
    return LineP5((tuple(ker[0]), tuple(ker[1])))


def line_on_surface(line: LineP5, quadrics, field=None, rtol: float = 1e-9) -> bool:
    """``Q(u) = Q(v) = Q(u + v) = 0`` for every quadric, i.e. ``Q(su + tv) == 0``."""
    field = field or ComplexField()
    u, v = line.basis
    w = [a + b for a, b in zip(u, v)]
    for q in quadrics:
        for p in (u, v, w):
            val = q(p)
            if field.exact:
                if not field.is_zero(val):
                    return False
            else:
                scale = max(q.scale(p), 1e-300)
                if abs(val) > rtol * scale:
                    return False
    return True


def system_forms(names, a, translation: Characteristic | None = None) -> list[list]:
    hs = [PRINTED_HYPERPLANES[n] for n in names]
    if translation is not None:
        hs = [h.translate(translation) for h in hs]
    return [h.coefficients(a) for h in hs]


def thirty_two_lines(a, field=None, rtol: float = 1e-9) -> dict[str, LineP5]:
    """Tropes ``D1..D16`` and exceptional curves ``E1..E16`` from translated systems.

    ``a`` holds ``A_1..A_10`` (unsquared). Translating by the point labelled
    ``t`` moves ``D_1`` to ``D_{1+t}`` and ``E_11`` to ``E_{11+t}``.
    """
    out = {}
    for t_label, t in NUMBERING.items():
        d = (NUMBERING[1] + t).label
        e = (NUMBERING[11] + t).label
        out[f"D{d}"] = line_from_hyperplanes(system_forms(D1_SYSTEM, a, t), field, rtol)
        out[f"E{e}"] = line_from_hyperplanes(system_forms(E11_SYSTEM, a, t), field, rtol)
    return dict(sorted(out.items(), key=lambda kv: (kv[0][0], int(kv[0][1:]))))


def lines_meet(l1: LineP5, l2: LineP5, field=None, rtol: float = 1e-9) -> bool:
    """Two lines in P^5 meet iff their four basis vectors have rank < 4."""
    field = field or ComplexField()
    return linalg.rank(list(l1.basis) + list(l2.basis), field, rtol) < 4


def hyperplane_contains_line(form, line: LineP5, field=None, rtol: float = 1e-9) -> bool:
    field = field or ComplexField()
    for p in line.basis:
        val = sum(c * x for c, x in zip(form, p))
        if field.exact:
            if not field.is_zero(val):
                return False
        elif abs(val) > rtol * max(np.abs(form).max() * np.abs(p).max(), 1e-300):
            return False
    return True


def trope_membership_check(
    omega, policy: TruncationPolicy = DEFAULT_POLICY, rng: np.random.Generator | None = None, max_iter: int = 50
) -> dict:
    """Sample the theta divisor by Newton and test the ``D_1`` hyperplanes there.

    One equation in two unknowns, so each step is the least-norm correction
    ``-f conj(grad) / |grad|^2``; the step halves while the residual grows.
    """
    omega = as_period_matrix(omega)
    rng = rng or np.random.default_rng(0)
    zero_char = NUMBERING[1]
    z = rng.uniform(-0.3, 0.3, 2) + 1j * rng.uniform(-0.1, 0.1, 2)
    f, g = theta_series(zero_char.a, zero_char.b, z, omega, policy, gradient=True)
    scale = abs(theta_series(zero_char.a, zero_char.b, np.zeros(2), omega, policy))
    for it in range(max_iter):
        if abs(f) < 1e-13 * scale:
            break
        step = -f * np.conj(g) / np.vdot(g, g).real
        lam = 1.0
        while True:
            z_new = z + lam * step
            f_new, g_new = theta_series(zero_char.a, zero_char.b, z_new, omega, policy, gradient=True)
            if abs(f_new) < abs(f) or lam < 1e-6:
                break
            lam *= 0.5
        z, f, g = z_new, f_new, g_new
    else:
        if abs(f) >= 1e-10 * scale:
            raise NewtonDiverged(f"|theta| = {abs(f):.3g} after {max_iter} steps")
    a = even_theta_vector(omega, policy)
    x = phi(z, omega, policy)
    forms = system_forms(D1_SYSTEM, a)
    xs = np.max(np.abs(x))
    hres = max(abs(np.dot(fm, x)) / (np.max(np.abs(fm)) * xs) for fm in forms)
    eres = 0.0
    for q in build_equations(list(a**2))[:3]:
        eres = max(eres, abs(q(x)) / q.scale(x))
    return {"z": z, "theta_residual": abs(f) / scale, "hyperplane_residual": float(hres), "surface_residual": float(eres), "point": x}
