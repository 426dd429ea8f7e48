"""Fibers of the projection to ``P^3`` over the boundary, and the genus-1 model.

Only the ``Q_10`` chart gets explicit boundary coordinates (Segre coordinates
``s, t``); the other nine quadrics are reached through the permutation action
on ``A_1..A_10``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .equations import (
    EQUATION_NAMES,
    EQUATION_TERMS,
    DiagonalQuadric,
    build_equations,
    projectively_equal,
    veronese,
    veronese_gradient,
)
from .fields import ComplexField, FieldError, RationalField
from .modular_action import A_TABLE
from .rosenhain import LineP5, line_on_surface
from .theta_core import DEFAULT_POLICY, TruncationPolicy, genus1_theta, level24_coords


class UnknownStratum(ValueError):
    pass


class OnBoundary(ValueError):
    """A product of the S/T quantities vanishes."""


class OnCorner(ValueError):
    """``t`` is one of the six corner values 0, inf, +-1, +-i."""


class NoRoot(FieldError):
    pass


class Stratum(enum.Enum):
    SMOOTH_JACOBIAN = "SmoothJacobian"
    PRODUCT_ABELIAN = "ProductAbelian"
    CONE_PAIR = "ConePair"
    EIGHT_PLANES = "EightPlanes"


@dataclass(frozen=True)
class StratumClass:
    tag: Stratum
    vanishing: frozenset[int]


def _orbit(pattern: frozenset[int]) -> set[frozenset[int]]:
    perms = [act.perm for act in A_TABLE.values()]
    seen = {pattern}
    todo = [pattern]
    while todo:
        cur = todo.pop()
        for p in perms:
            img = frozenset(p[i - 1] + 1 for i in cur)
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return seen


# calibrated on the Q_10 chart, spread by the permutation action
_SEEDS = {
    Stratum.PRODUCT_ABELIAN: frozenset({10}),
    Stratum.CONE_PAIR: frozenset({6, 7, 9, 10}),
    Stratum.EIGHT_PLANES: frozenset({5, 6, 7, 8, 9, 10}),
}
STRATUM_PATTERNS: dict[Stratum, set[frozenset[int]]] = {tag: _orbit(seed) for tag, seed in _SEEDS.items()}


def classify(b, field=None) -> StratumClass:
    field = field or ComplexField()
    b = [field(x) for x in b]
    if all(field.is_zero(x) for x in b):
        raise ValueError("B = 0 is not a point of P^3")
    van = frozenset(i + 1 for i, a in enumerate(veronese(b)) if field.is_zero(a))
    if not van:
        return StratumClass(Stratum.SMOOTH_JACOBIAN, van)
    for tag, patterns in STRATUM_PATTERNS.items():
        if van in patterns:
            return StratumClass(tag, van)
    raise UnknownStratum(f"vanishing pattern {sorted(van)} matches no calibrated stratum")


# ------------------------------------------------------------ Segre chart


def segre(s, t) -> list:
    (s0, s1), (t0, t1) = s, t
    return [s0 * t0, s0 * t1, s1 * t0, s1 * t1]


def product_period_to_segre(tau1, tau2, policy: TruncationPolicy = DEFAULT_POLICY):
    """``([theta00(2 tau1) : theta10(2 tau1)], [theta00(2 tau2) : theta10(2 tau2)])`` at ``z = 0``."""
    out = []
    for tau in (tau1, tau2):
        out.append((genus1_theta("00", 0, 2 * tau, policy), genus1_theta("10", 0, 2 * tau, policy)))
    return tuple(out)


def segre_diagram_residual(tau1, tau2, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Distance between the two paths of the commutative square, normalized."""
    s, t = product_period_to_segre(tau1, tau2, policy)
    b1 = np.array(segre(s, t))
    b2 = level24_coords(np.diag([tau1, tau2]), policy)
    b1 = b1 / b1[np.argmax(np.abs(b1))]
    b2 = b2 / b2[np.argmax(np.abs(b2))]
    return float(np.max(np.abs(b1 - b2)))


@dataclass(frozen=True)
class ProductFiberData:
    S00: object
    S10: object
    S01: object
    T00: object
    T10: object
    T01: object

    @classmethod
    def from_segre(cls, s, t) -> "ProductFiberData":
        (s0, s1), (t0, t1) = s, t
        return cls(s0 * s0 + s1 * s1, 2 * s0 * s1, s0 * s0 - s1 * s1, t0 * t0 + t1 * t1, 2 * t0 * t1, t0 * t0 - t1 * t1)

    def pythagorean(self):
        """``(S00^2 - S01^2 - S10^2, T00^2 - T01^2 - T10^2)``; both are 0."""
        return (
            self.S00 * self.S00 - self.S01 * self.S01 - self.S10 * self.S10,
            self.T00 * self.T00 - self.T01 * self.T01 - self.T10 * self.T10,
        )


def product_fiber_equations(d: ProductFiberData) -> list[DiagonalQuadric]:
    z = d.S00 * 0
    return [
        DiagonalQuadric("E1", (z, z, z, d.T00, -d.T01, -d.T10)),
        DiagonalQuadric("E4", (d.S00, -d.S01, -d.S10, z, z, z)),
        DiagonalQuadric(
            "E7",
            (d.T10 * d.S01, -d.T10 * d.S00, z, -d.S10 * d.T01, d.S10 * d.T00, z),
        ),
    ]


@dataclass
class ProductFiber:
    data: ProductFiberData
    b: list
    equations: list[DiagonalQuadric]
    nodes: list[list]
    lines: list[LineP5]
    equations_match_build: bool
    nodes_on_fiber: bool
    lines_on_fiber: list[bool]

    @property
    def ok(self) -> bool:
        return self.equations_match_build and self.nodes_on_fiber and all(self.lines_on_fiber) and len(self.lines) == 16


def _sqrt(field, x):
    r = field.sqrt(x)
    if r is None:
        raise NoRoot(f"{x} has no square root in {field}")
    return r


def product_fiber(s, t, field=None) -> ProductFiber:
    """Equations, the 8 nodes and the 16 lines of a fiber over ``Q_10``.

    Every claim is checked against the full system of fifteen equations
    built from ``veronese(segre(s, t))``.
    """
    field = field or ComplexField()
    s = [field(x) for x in s]
    t = [field(x) for x in t]
    d = ProductFiberData.from_segre(s, t)
    prod = d.S00 * d.S10 * d.S01 * d.T00 * d.T10 * d.T01
    if field.is_zero(prod):
        raise OnBoundary("(s, t) lies on one of the 12 boundary lines")
    b = segre(s, t)
    eqs = product_fiber_equations(d)
    full = build_equations(veronese(b))
    by_name = {q.name: q for q in full}
    match = all(projectively_equal(q.coeffs, by_name[q.name].coeffs, field) for q in eqs)

    r_s00 = _sqrt(field, d.S00 / d.S10)
    r_s01 = _sqrt(field, d.S01 / d.S10)
    r_t00 = _sqrt(field, d.T00 / d.T10)
    r_t01 = _sqrt(field, d.T01 / d.T10)
    one, zero = field.one, field.zero
    nodes = []
    for e1, e2 in itertools.product((1, -1), repeat=2):
        nodes.append([e1 * r_s00, e2 * r_s01, one, zero, zero, zero])
    for e1, e2 in itertools.product((1, -1), repeat=2):
        nodes.append([zero, zero, zero, e1 * r_t00, e2 * r_t01, one])
    lines = [LineP5((tuple(u), tuple(v))) for u in nodes[:4] for v in nodes[4:]]
    nodes_ok = all(_vanishes(q, n, field) for q in full for n in nodes)
    on = [line_on_surface(line, full, field) for line in lines]
    return ProductFiber(d, b, eqs, nodes, lines, match, nodes_ok, on)


def _vanishes(q: DiagonalQuadric, x, field, rtol: float = 1e-9) -> bool:
    v = q(x)
    if field.exact:
        return field.is_zero(v)
    return abs(v) <= rtol * max(q.scale(x), 1e-300)


# ---------------------------------------------------------- cone pairs


def cone_pair_displayed(t0, t1) -> dict[str, DiagonalQuadric]:
    """The reduced forms printed for the fiber over ``[t0 : t1 : 0 : 0]``."""
    T00, T10, T01 = t0 * t0 + t1 * t1, 2 * t0 * t1, t0 * t0 - t1 * t1
    z = T00 * 0
    one = z + 1
    return {
        "E4": DiagonalQuadric("E4", (one, -one, z, z, z, z)),
        "E1": DiagonalQuadric("E1", (z, z, z, T00, -T01, -T10)),
        "E10": DiagonalQuadric("E10", (z, z, T10, -T01, T00, z)),
        "E11": DiagonalQuadric("E11", (z, z, T01, T10, z, -T00)),
        "E12": DiagonalQuadric("E12", (z, z, T00, z, T10, -T01)),
    }


@dataclass
class ConePairFiber:
    t: tuple
    y_plus: tuple
    y_minus: tuple
    singular_points: list[list]
    relation_residuals: dict[str, list]
    relations_hold: bool
    identically_zero: list[str]
    displayed_match: dict[str, int]
    vertex_jacobian_rank: dict[str, int]


_CORNER_T = ("0", "inf", "1", "-1", "i", "-i")


def cone_pair_fiber(t, field=None) -> ConePairFiber:
    """Fiber over ``[t0 : t1 : 0 : 0]``: two cones over one elliptic curve.

    ``displayed_match`` maps each printed reduced form to the sign ``c`` with
    ``printed = c * built`` (built from the fifteen equations), or 0 when the
    two are not proportional by +-1.
    """
    field = field or RationalField()
    t0, t1 = (field(x) for x in t)
    T00, T10, T01 = t0 * t0 + t1 * t1, 2 * t0 * t1, t0 * t0 - t1 * t1
    if field.is_zero(T00 * T10 * T01):
        raise OnCorner("t is one of 0, inf, +-1, +-i")
    disp = cone_pair_displayed(t0, t1)
    built = {q.name: q for q in build_equations(veronese([t0, t1, field.zero, field.zero]))}
    zero_eqs = [n for n, q in built.items() if all(field.is_zero(c) for c in q.coeffs)]

    def combo(a, qa, b, qb):
        return [a * x + b * y for x, y in zip(qa.coeffs, qb.coeffs)]

    r10 = [x - y for x, y in zip(disp["E10"].coeffs, combo(-T01 / T00, disp["E1"], T10 / T00, disp["E12"]))]
    r11 = [x - y for x, y in zip(disp["E11"].coeffs, combo(T10 / T00, disp["E1"], T01 / T00, disp["E12"]))]
    holds = all(field.is_zero(v) for v in r10 + r11)

    match = {}
    for name, q in disp.items():
        match[name] = 0
        for c in (1, -1):
            if all(field.eq(x, c * y) for x, y in zip(q.coeffs, built[name].coeffs)):
                match[name] = c
                break
        if match[name] == 0 and projectively_equal(q.coeffs, built[name].coeffs, field):
            match[name] = 2  # proportional, but not by a sign
    one, zero = field.one, field.zero
    plus = ([one, -one, zero, zero, zero, zero], disp["E1"], disp["E12"])
    minus = ([one, one, zero, zero, zero, zero], disp["E1"], disp["E12"])
    sing = [[one, one, zero, zero, zero, zero], [one, -one, zero, zero, zero, zero]]
    ranks = {}
    for label, (lin, q1, q2), v in (("+", plus, sing[0]), ("-", minus, sing[1])):
        grad = [lin, [2 * c * x for c, x in zip(q1.coeffs, v)], [2 * c * x for c, x in zip(q2.coeffs, v)]]
        ranks[label] = linalg.rank(grad, field)
    return ConePairFiber(
        (t0, t1), plus, minus, sing, {"E10": r10, "E11": r11}, holds, zero_eqs, match, ranks
    )


def sample_cone_point(t, rng: np.random.Generator, branch: int = 1, x1_zero: bool = False) -> np.ndarray:
    """A complex point of ``Y_+`` (branch 1) or ``Y_-`` (branch -1)."""
    t0, t1 = (complex(x) for x in t)
    T00, T10, T01 = t0 * t0 + t1 * t1, 2 * t0 * t1, t0 * t0 - t1 * t1
    x3, x4 = rng.normal(size=2) + 1j * rng.normal(size=2)
    # E1: T00 x4^2 = T01 x5^2 + T10 x6^2 ; E12: T10 x5^2 - T01 x6^2 = -T00 x3^2
    m = np.array([[T01, T10], [T10, -T01]])
    x5sq, x6sq = np.linalg.solve(m, [T00 * x4 * x4, -T00 * x3 * x3])
    x1 = 0j if x1_zero else complex(rng.normal() + 1j * rng.normal())
    return np.array([x1, branch * x1, x3, x4, np.sqrt(x5sq), np.sqrt(x6sq)])


# -------------------------------------------------------------- corner


@dataclass
class CornerFiber:
    planes: dict[str, list[list]]
    edges: list[tuple[str, str]]
    faces: list[tuple[str, ...]]
    identically_zero: list[str]
    planes_on_fiber: bool
    edge_dims: dict[tuple[str, str], int]
    face_points: dict[tuple[str, ...], list]

    @property
    def face_vector(self) -> tuple[int, int, int]:
        return len(self.planes), len(self.edges), len(self.faces)


def _sign_name(signs) -> str:
    return "P" + "".join("+" if s > 0 else "-" for s in signs)


def _plane_equations(signs) -> list[list[int]]:
    e1, e2, e3 = signs
    return [
        [1, -e1, 0, 0, 0, 0],  # X1 = e1 X2
        [0, 0, 1, 0, 0, -e2],  # X3 = e2 X6
        [0, 0, 0, 1, -e3, 0],  # X4 = e3 X5
    ]


def _intersection_dim(rows, field) -> int:
    """Projective dimension of the common zero set (-1 when empty)."""
    return 6 - linalg.rank(rows, field) - 1


def corner_fiber(field=None) -> CornerFiber:
    """The eight planes over ``[1:0:0:0]`` and their cube."""
    field = field or RationalField()
    b = [field.one, field.zero, field.zero, field.zero]
    eqs = build_equations(veronese(b))
    zero_eqs = [q.name for q in eqs if all(field.is_zero(c) for c in q.coeffs)]
    live = [q for q in eqs if q.name not in zero_eqs]
    planes = {}
    on = True
    for signs in itertools.product((1, -1), repeat=3):
        name = _sign_name(signs)
        basis = linalg.nullspace(_plane_equations(signs), field)
        planes[name] = basis
        for q in live:
            for u in basis:
                on &= field.is_zero(q(u))
            for u, v in itertools.combinations(basis, 2):
                on &= field.is_zero(q.bilinear(u, v))
    names = list(planes)
    signs_of = {_sign_name(s): s for s in itertools.product((1, -1), repeat=3)}
    edges, dims = [], {}
    for a, c in itertools.combinations(names, 2):
        d = _intersection_dim(_plane_equations(signs_of[a]) + _plane_equations(signs_of[c]), field)
        dims[(a, c)] = d
        if d == 1:
            edges.append((a, c))
    faces, points = [], {}
    for k in range(3):
        for s in (1, -1):
            group = tuple(n for n in names if signs_of[n][k] == s)
            rows = [r for n in group for r in _plane_equations(signs_of[n])]
            if _intersection_dim(rows, field) == 0:
                faces.append(group)
                points[group] = linalg.nullspace(rows, field)[0]
    return CornerFiber(planes, edges, faces, zero_eqs, bool(on), dims, points)


# ------------------------------------------------------------- Jacobian


def jacobian(b, x) -> list[list]:
    """15 x 10 matrix of ``d E_i / d (B_0..B_3, X_1..X_6)``."""
    asq = veronese(b)
    grad_v = veronese_gradient(b)
    rows = []
    for name in EQUATION_NAMES:
        row_b = [x[0] * 0] * 4
        row_x = [x[0] * 0] * 6
        for a, xi, sign in EQUATION_TERMS[name]:
            xx = x[xi - 1] * x[xi - 1]
            for j in range(4):
                row_b[j] = row_b[j] + sign * grad_v[a - 1][j] * xx
            row_x[xi - 1] = row_x[xi - 1] + 2 * sign * asq[a - 1] * x[xi - 1]
        rows.append(row_b + row_x)
    return rows


_VARIABLES = {"B0": 0, "B1": 1, "B2": 2, "B3": 3, **{f"X{i}": 3 + i for i in range(1, 7)}}


def minor(b, x, equations=("E1", "E4", "E11"), variables=("B2", "B3", "X1"), field=None):
    field = field or ComplexField()
    j = jacobian(b, x)
    rows = [EQUATION_NAMES.index(e) for e in equations]
    cols = [_VARIABLES[v] for v in variables]
    return linalg.det([[j[r][c] for c in cols] for r in rows], field)


def _closed_forms(b, x):
    """The printed closed forms, keyed by stratum and variable triple."""
    t0, t1 = b[0], b[1]
    T00, T01 = t0 * t0 + t1 * t1, t0 * t0 - t1 * t1
    X1, X3, X4, X6 = x[0], x[2], x[3], x[5]
    return {
        ("L", ("B2", "B3", "X1")): 8 * T00 * T01 * X1**5,
        ("L", ("B0", "B2", "X4")): 8 * t1 * T01 * X4**3 * (t0 * X3 * X3 + t1 * X4 * X4),
        ("L", ("B1", "B3", "X6")): -8 * t0 * T01 * X6**3 * (t0 * X4 * X4 - t1 * X3 * X3),
        ("P0", ("B2", "B3", "X1")): 8 * X1**5,
        ("P0", ("B1", "B2", "X3")): -8 * X3**5,
        ("P0", ("B1", "B3", "X4")): 8 * X4**5,
    }


def sample_stratum_point(stratum: str, rng: np.random.Generator, x1_zero: bool = False):
    """A random ``(b, x)`` on a boundary fiber: line ``L`` or the point ``P0``."""
    if stratum == "P0":
        x1, x3, x4 = rng.normal(size=3) + 1j * rng.normal(size=3)
        e = rng.choice([-1, 1], size=3)
        return [1.0, 0.0, 0.0, 0.0], np.array([x1, e[0] * x1, x3, x4, e[1] * x4, e[2] * x3])
    t = tuple(rng.normal(size=2))
    x = sample_cone_point(t, rng, branch=int(rng.choice([-1, 1])), x1_zero=x1_zero)
    return [t[0], t[1], 0.0, 0.0], x


def smoothness_minors(b, x, stratum: str, field=None) -> dict[str, dict]:
    """Evaluate the minors of ``d(E1, E4, E11)`` with their printed closed forms.

    ``stratum`` is ``"L"`` (``B = [t0:t1:0:0]``) or ``"P0"`` (``B = [1:0:0:0]``).
    """
    field = field or ComplexField()
    out = {}
    for (st, variables), expected in _closed_forms(b, x).items():
        if st != stratum:
            continue
        got = minor(b, x, ("E1", "E4", "E11"), variables, field)
        if field.exact:
            ok = field.eq(got, expected)
            err = 0.0 if ok else None
        else:
            err = abs(got - expected) / max(abs(expected), abs(got), 1e-300)
            ok = err < 1e-7 or (abs(expected) < 1e-12 and abs(got) < 1e-12)
        out["d(E1,E4,E11)/d(" + ",".join(variables) + ")"] = {"value": got, "closed_form": expected, "ok": bool(ok), "rel_err": err}
    return out


# ------------------------------------------------------------- genus one


def genus1_model_check(tau, z, policy: TruncationPolicy = DEFAULT_POLICY) -> dict[str, float]:
    """Relative residuals of the two genus-1 quadric pairs at ``x_ij = theta_ij(2z)``."""
    x = {k: genus1_theta(k, 2 * z, tau, policy) for k in ("00", "01", "10", "11")}
    a0, a1, a2 = (genus1_theta(k, 0, tau, policy) ** 2 for k in ("00", "01", "10"))
    pairs = {
        "*1a": (a0 * x["00"] ** 2, a1 * x["01"] ** 2 + a2 * x["10"] ** 2),
        "*1b": (a0 * x["11"] ** 2, a2 * x["01"] ** 2 - a1 * x["10"] ** 2),
        "*2a": (a1 * x["00"] ** 2 + a2 * x["11"] ** 2, a0 * x["01"] ** 2),
        "*2b": (a2 * x["00"] ** 2 - a1 * x["11"] ** 2, a0 * x["10"] ** 2),
    }
    scale = max(abs(v) for v in x.values()) ** 2 * max(abs(a0), abs(a1), abs(a2))
    return {k: float(abs(l - r) / scale) for k, (l, r) in pairs.items()}
