"""Kummer surfaces with 32 lines over prime fields.

Pipeline: ``B in P^3(F_p)`` -> ``veronese`` -> ``A_i^2`` -> square-root lift ->
hyperplanes -> lines. Everything is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .equations import (
    build_equations,
    detM_check,
    net_coefficients,
    projectively_equal,
    quadric_rank,
    rosenhain_form,
    veronese,
)
from .fields import PrimeField, legendre
from .rosenhain import (
    D1_SYSTEM,
    E11_SYSTEM,
    LineP5,
    RankDeficient,
    line_from_hyperplanes,
    line_on_surface,
    lines_meet,
    system_forms,
    thirty_two_lines as _lines_from_lift,
)
from .theta_core import NUMBERING


class NotLiftable(ValueError):
    """No tried scaling makes all ten entries quadratic residues."""


class CalibrationFailed(ValueError):
    pass


PREDICATES = ("liftable", "nonzero")
DEFAULT_PREDICATE = "liftable"

EXAMPLE_P = 19
EXAMPLE_B = (1, 3, 3, 3)
EXAMPLE_VERONESE = (9, 11, 11, 11, 5, 5, 5, 7, 7, 7)
EXAMPLE_LIFT = (2, 8, 8, 8, 6, 6, 6, 1, 1, 1)
EXAMPLE_QUADRICS = {
    "E1": (1, 0, 0, 4, -7, 2),
    "E2": (0, 1, 0, 7, -7, -1),
    "E3": (0, 0, 1, -2, -1, 2),
}
EXAMPLE_D1 = (
    (0, 0, 0, 1, 7, -2),
    (0, 0, 3, 0, -6, 4),
    (0, 7, 0, 0, -3, 8),
    (2, 0, -1, 0, 0, 7),
)
# fourth equation of the printed E_11 system
EXAMPLE_E11_FOURTH = (1, 0, 1, 0, 0, -1)
EXAMPLE_ROOTS = (0, 1, 4, 9, 11)


@dataclass(frozen=True)
class LiftResult:
    """``roots[i]^2 == scaling * asq[i]`` for all i."""

    scaling: object
    roots: tuple

    def check(self, asq) -> bool:
        return all(r * r == self.scaling * a for r, a in zip(self.roots, asq))


def lift_squares(asq, field: PrimeField, scalings=None) -> LiftResult:
    """Lift ``A_i^2`` to ``A_i`` after a common rescaling.

    ``scalings`` defaults to ``(1, smallest non-residue)``: any all-nonzero
    input whose entries share one residue class lifts under one of them.
    Roots are the representatives in ``[0, p/2]``.
    """
    asq = [field(a) for a in asq]
    if any(field.is_zero(a) for a in asq):
        raise NotLiftable("an entry vanishes")
    if scalings is None:
        scalings = (1, field.smallest_nonresidue())
    for c in scalings:
        c = field(c)
        roots = [field.sqrt(c * a) for a in asq]
        if all(r is not None for r in roots):
            return LiftResult(c, tuple(roots))
    raise NotLiftable(f"no scaling among {[int(field(c)) for c in scalings]} lifts {[int(a) for a in asq]}")


def anchored_scaling(asq, field: PrimeField, index: int = 9):
    """The scaling making ``A_{index+1}^2`` equal 1."""
    return field.one / field(asq[index])


def projective_points(p: int):
    """Representatives of ``P^3(F_p)`` with first nonzero coordinate 1, lexicographic."""
    for k in range(4):
        for rest in itertools.product(range(p), repeat=3 - k):
            yield (0,) * k + (1,) + rest


@dataclass(frozen=True)
class AdmissiblePoint:
    b: tuple[int, ...]
    asq: tuple[int, ...]
    liftable: bool


def _veronese_mod(b, p: int) -> tuple[int, ...]:
    return tuple(v % p for v in veronese(b))


def _classify(b, p: int) -> AdmissiblePoint | None:
    v = _veronese_mod(b, p)
    if 0 in v:
        return None
    symbols = {legendre(x, p) for x in v}
    return AdmissiblePoint(tuple(b), v, len(symbols) == 1)


def search_admissible(p: int, predicate: str = DEFAULT_PREDICATE, points=None) -> list[AdmissiblePoint]:
    """Exhaustive scan of ``P^3(F_p)``.

    ``"nonzero"`` keeps every ``B`` with all ten ``A_i^2 != 0``; ``"liftable"``
    additionally needs a common square-root lift. Output is sorted by ``b``,
    whatever order ``points`` comes in.
    """
    if predicate not in PREDICATES:
        raise ValueError(f"predicate must be one of {PREDICATES}")
    PrimeField(p)  # validates p
    out = []
    for b in points if points is not None else projective_points(p):
        pt = _classify(b, p)
        if pt is None or (predicate == "liftable" and not pt.liftable):
            continue
        out.append(pt)
    return sorted(out, key=lambda q: q.b)


def emptiness_report(primes=(3, 5, 7, 11, 13, 17)) -> dict[int, dict[str, int]]:
    return {p: {pred: len(search_admissible(p, pred)) for pred in PREDICATES} for p in primes}


# ----------------------------------------------------------- signs and lines


def _kernels_on_surface(roots, field, quadrics) -> bool:
    try:
        lines = [line_from_hyperplanes(system_forms(s, roots), field) for s in (D1_SYSTEM, E11_SYSTEM)]
    except RankDeficient:
        return False
    return all(line_on_surface(line, quadrics, field) for line in lines)


def sign_calibrations(roots, field: PrimeField) -> list[tuple[int, ...]]:
    """All sign vectors (first entry +1) for which the ``D_1`` and ``E_11``
    kernels lie on the surface."""
    quadrics = build_equations([r * r for r in roots])[:3]
    valid = []
    for tail in itertools.product((1, -1), repeat=9):
        signs = (1,) + tail
        signed = [r if s > 0 else -r for r, s in zip(roots, signs)]
        if _kernels_on_surface(signed, field, quadrics):
            valid.append(signs)
    return valid


@dataclass
class LineReport:
    lines: dict[str, LineP5]
    on_surface: dict[str, bool]
    meets: dict[str, list[str]] = dc_field(default_factory=dict)
    trope_pairs_rank6: bool = False
    exceptional_pairs_rank6: bool = False

    @property
    def incidence_counts(self) -> dict[str, int]:
        return {k: len(v) for k, v in self.meets.items()}

    @property
    def ok(self) -> bool:
        return (
            len(self.lines) == 32
            and all(self.on_surface.values())
            and all(n == 6 for n in self.incidence_counts.values())
            and self.trope_pairs_rank6
            and self.exceptional_pairs_rank6
        )


def _stacked_rank(forms_a, forms_b, field) -> int:
    return linalg.rank(list(forms_a) + list(forms_b), field)


def thirty_two_lines(b, roots, field: PrimeField) -> LineReport:
    """The 16 tropes and 16 exceptional curves with exact checks.

    Disjointness within a family is certified by the rank of the two stacked
    four-hyperplane systems being 6.
    """
    roots = [field(r) for r in roots]
    quadrics = build_equations([r * r for r in roots])[:3]
    lines = _lines_from_lift(roots, field)
    report = LineReport(lines, {k: line_on_surface(v, quadrics, field) for k, v in lines.items()})
    forms = {}
    for t in NUMBERING.values():
        forms[f"D{(NUMBERING[1] + t).label}"] = system_forms(D1_SYSTEM, roots, t)
        forms[f"E{(NUMBERING[11] + t).label}"] = system_forms(E11_SYSTEM, roots, t)
    tropes = [k for k in lines if k[0] == "D"]
    excs = [k for k in lines if k[0] == "E"]
    for d in tropes:
        report.meets[d] = [e for e in excs if lines_meet(lines[d], lines[e], field)]
    report.trope_pairs_rank6 = all(
        _stacked_rank(forms[x], forms[y], field) == 6 for x, y in itertools.combinations(tropes, 2)
    )
    report.exceptional_pairs_rank6 = all(
        _stacked_rank(forms[x], forms[y], field) == 6 for x, y in itertools.combinations(excs, 2)
    )
    return report


def e11_resolution(field: PrimeField | None = None, roots=EXAMPLE_LIFT) -> dict:
    """Which fourth equation of the ``E_11`` system gives a line on the surface.

    Candidates: the tabulated hyperplane H11 evaluated at the lift, and the
    form ``X1 + X3 - X6`` printed with the worked example.
    """
    field = field or PrimeField(EXAMPLE_P)
    roots = [field(r) for r in roots]
    quadrics = build_equations([r * r for r in roots])[:3]
    base = system_forms(E11_SYSTEM[:3], roots)
    h11 = system_forms(("H11",), roots)[0]
    out = {}
    for name, fourth in (("H11", h11), ("printed X1+X3-X6", [field(v) for v in EXAMPLE_E11_FOURTH])):
        entry = {"form": [int(v) for v in _normalized(fourth, field)]}
        try:
            line = line_from_hyperplanes(base + [fourth], field)
            entry["rank"] = 4
            entry["on_surface"] = line_on_surface(line, quadrics, field)
        except RankDeficient:
            entry["rank"] = linalg.rank(base + [fourth], field)
            entry["on_surface"] = False
        out[name] = entry
    winners = [k for k, v in out.items() if v["on_surface"]]
    out["verdict"] = winners[0] if len(winners) == 1 else ("both" if winners else "neither")
    return out


def _normalized(v, field):
    k = next(i for i, x in enumerate(v) if not field.is_zero(x))
    inv = field.one / field(v[k])
    return [field(x) * inv for x in v]


# --------------------------------------------------------------- the example


def reproduce_example_19() -> dict:
    """Recompute the worked example over F_19 and compare item by item."""
    F = PrimeField(EXAMPLE_P)
    items: list[tuple[str, bool, object]] = []

    asq = [F(v) for v in veronese([F(x) for x in EXAMPLE_B])]
    items.append(("veronese", [int(a) for a in asq] == list(EXAMPLE_VERONESE), [int(a) for a in asq]))

    lift = lift_squares(asq, F, scalings=(anchored_scaling(asq, F),))
    items.append(("lift", [int(r) for r in lift.roots] == list(EXAMPLE_LIFT) and lift.check(asq), [int(r) for r in lift.roots]))
    default_lift = lift_squares(asq, F)
    items.append(("default_lift_consistent", default_lift.check(asq), [int(r) for r in default_lift.roots]))

    scaled = [lift.scaling * a for a in asq]
    eqs = build_equations(scaled)
    for q in eqs[:3]:
        want = [F(v) for v in EXAMPLE_QUADRICS[q.name]]
        items.append((q.name, list(q.coeffs) == want, [c.signed() for c in q.coeffs]))

    roots = list(lift.roots)
    computed = system_forms(D1_SYSTEM, roots)
    for i, (got, want) in enumerate(zip(computed, EXAMPLE_D1)):
        ok = projectively_equal(got, [F(v) for v in want], F)
        items.append((f"D1[{i}] {D1_SYSTEM[i]}", ok, [c.signed() for c in _normalized(got, F)]))

    lam = rosenhain_form(scaled, F)
    roots_found = sorted({0, 1, *(int(v) for v in lam)})
    items.append(("rosenhain_roots", tuple(roots_found) == EXAMPLE_ROOTS, roots_found))

    items.append(("all_rank_4", all(quadric_rank(q, F) == 4 for q in eqs), None))
    items.append(("detM_zero", F.is_zero(detM_check(scaled, F)), None))
    try:
        for q in eqs[3:]:
            net_coefficients(q, eqs[:3], F)
        in_net = True
    except Exception:
        in_net = False
    items.append(("net_membership", in_net, None))

    calib = sign_calibrations(roots, F)
    items.append(("printed_lift_calibrated", (1,) * 10 in calib, len(calib)))

    first_bad = next((name for name, ok, _ in items if not ok), None)
    return {
        "p": EXAMPLE_P,
        "b": list(EXAMPLE_B),
        "scaling": int(lift.scaling),
        "items": {name: {"ok": ok, "value": val} for name, ok, val in items},
        "first_mismatch": first_bad,
        "ok": first_bad is None,
        "valid_sign_calibrations": len(calib),
    }
