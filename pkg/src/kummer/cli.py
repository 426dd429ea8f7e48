"""``kummer`` command line: every construction and check, as a JSON report."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any

import numpy as np

from . import equations as eqs
from . import fibers, finite_field, identities, rosenhain
from .fields import ComplexField, Fp, PrimeField, RationalField
from .modular_action import verify_derivation_chain
from .theta_core import Characteristic, PeriodMatrix, genus1_theta, theta


class UsageError(ValueError):
    pass


# ------------------------------------------------------------- parsing


def parse_complex(tok: str) -> complex:
    t = tok.strip().replace(" ", "").replace("I", "i")
    if not t:
        raise UsageError("empty complex token")
    if t.endswith("i"):
        body = t[:-1]
        if body in ("", "+", "-"):
            body += "1"
        elif body[-1] in "+-":
            body += "1"
        t = body + "j"
    try:
        return complex(t)
    except ValueError as exc:
        raise UsageError(f"cannot parse complex number {tok!r}") from exc


def parse_omega(tokens: list[str]) -> PeriodMatrix:
    parts = [p for tok in tokens for p in tok.split(",") if p]
    if len(parts) != 3:
        raise UsageError("omega needs three entries w11, w12, w22")
    try:
        return PeriodMatrix.from_entries(*(parse_complex(p) for p in parts))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_point(text: str, field) -> list:
    parts = text.split(":")
    if field.exact:
        try:
            return [field(Fraction(p)) for p in parts]
        except ValueError as exc:
            raise UsageError(f"cannot parse point {text!r}") from exc
    return [parse_complex(p) for p in parts]


def _field(p: int | None, exact_default: bool = False):
    if p is None:
        return RationalField() if exact_default else ComplexField()
    try:
        return PrimeField(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def default_seed() -> int:
    try:
        return int(os.environ.get("KUMMER_SEED", "0"))
    except ValueError:
        return 0


# ------------------------------------------------------------- reports


def to_json(x: Any) -> Any:
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, Fp):
        return x.signed()
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, np.ndarray):
        return [to_json(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [to_json(v) for v in items]
    if hasattr(x, "value") and hasattr(x, "name"):  # enums
        return x.value
    return str(x)


class Report:
    def __init__(self, command: str, inputs: dict, tolerances: dict | None = None):
        self.command = command
        self.inputs = inputs
        self.tolerances = tolerances or {}
        self.results: list[dict] = []
        self.error: str | None = None

    def value(self, name: str, value) -> None:
        self.results.append({"name": name, "value": value})

    def check(self, name: str, ok: bool, value=None) -> None:
        self.results.append({"name": name, "value": value, "ok": bool(ok)})

    @property
    def status(self) -> str:
        if self.error is not None:
            return "partial" if self.results else "fail"
        checks = [r["ok"] for r in self.results if "ok" in r]
        return "pass" if all(checks) else "fail"

    def document(self) -> dict:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "status": self.status,
            "tolerances": self.tolerances,
        }
        if self.error is not None:
            doc["error"] = self.error
        return to_json(doc)

    def dumps(self) -> str:
        return json.dumps(self.document(), sort_keys=True, indent=2)


# ------------------------------------------------------------- commands


def cmd_theta_eval(args, rep: Report):
    if args.tau is not None:
        tau = parse_complex(args.tau)
        z = parse_complex(args.z or "0")
        rep.value("theta", genus1_theta(args.char.replace(",", "").replace("/", ""), z, tau))
        return
    if not args.omega:
        raise UsageError("theta-eval needs --omega (genus 2) or --tau (genus 1)")
    omega = parse_omega(args.omega)
    c = Characteristic.parse(args.char)
    z = [parse_complex(p) for p in (args.z or "0,0").split(",")]
    rep.value("theta", theta(c, z, omega))
    rep.value("parity", c.parity())
    rep.value("label", c.label if c.genus == 2 else None)


def cmd_identities(args, rep: Report):
    names = None if args.suite == "all" else args.suite.split(",")
    for name, res in identities.run_all(args.trials, args.seed, names).items():
        rep.check(f"{name} max residual", res < args.tol, res)
    if args.suite == "all":
        for item in verify_derivation_chain():
            rep.check(f"{item['result']} = {item['generator']}({item['source']})", item["ok"], item["scalar"])


def cmd_build_surface(args, rep: Report):
    if args.omega:
        omega = parse_omega(args.omega)
        from .theta_core import even_theta_vector

        asq = list(even_theta_vector(omega) ** 2)
        field = ComplexField()
    elif args.b:
        field = _field(args.p, exact_default=True)
        b = parse_point(args.b, field)
        asq = eqs.veronese(b)
    else:
        raise UsageError("build-surface needs --omega or --b")
    rep.value("A_squared", asq)
    qs = eqs.build_equations(asq)
    for q in qs:
        rep.value(q.name, list(q.coeffs))
    rank4 = all(eqs.quadric_rank(q, field) == 4 for q in qs)
    rep.check("all ranks 4", rank4, [eqs.quadric_rank(q, field) for q in qs])
    det = eqs.detM_check(asq, field)
    rep.check("detM - A10^6 vanishes", field.is_zero(det), det)
    try:
        for q in qs[3:]:
            eqs.net_coefficients(q, qs[:3], field)
        rep.check("E4..E15 in the net of E1..E3", True)
    except eqs.NotInNet as exc:
        rep.check("E4..E15 in the net of E1..E3", False, str(exc))
    try:
        rep.value("rosenhain_lambdas", list(eqs.rosenhain_form(asq, field)))
    except eqs.DecomposableLocus as exc:
        rep.value("rosenhain_lambdas", str(exc))


def cmd_rosenhain(args, rep: Report):
    counts = rosenhain.quadruple_counts()
    rep.check("quadruple count is 80", counts["distinct"] == 80, counts)
    orbits = rosenhain.quadruple_orbits()
    rep.check("20 orbits of size 4", len(orbits) == 20 and all(len(o) == 4 for o in orbits), len(orbits))
    matched = rosenhain.printed_quadruples()
    rep.check("printed forms match exact expansion", all(len(v) == 1 for v in matched.values()))
    inc = rosenhain.computed_incidence()
    rep.check(
        "printed incidence matches",
        all(str(inc[k][0]) == str(rosenhain.PRINTED_INCIDENCE[k]) for k in inc),
    )
    table = rosenhain.hyperplane_table_with_incidence()
    rep.check("80 distinct hyperplanes", len({h.key for h, _ in table}) == 80)
    if args.table:
        rep.value("table", [{"hyperplane": str(h), "id": f"{h.id}.{h.orbit_index}", "incidence": str(r)} for h, r in table])
    rng = np.random.default_rng(args.seed)
    from .theta_core import random_period_matrix, random_point

    f_res, f_ratio, van_ok = 0.0, [], True
    for _ in range(args.trials):
        w = random_period_matrix(rng)
        z = random_point(rng)
        f_res = max(f_res, rosenhain.F_identity_residual(z, w))
        f_ratio.append(rosenhain.F_identity_ratio(z, w))
        van_ok &= bool((rosenhain.vanishing_table_check(w) == rosenhain.printed_vanishing_matrix()).all())
    rep.check("F identity with printed sign -1/4", f_res < args.tol, f_res)
    rep.value("F / (1/4 sum) measured", f_ratio[0] if f_ratio else None)
    rep.check("vanishing table matches", van_ok)


def cmd_ff_search(args, rep: Report):
    pts = finite_field.search_admissible(args.p, args.predicate)
    rep.value("count", len(pts))
    rep.value("points", [{"b": list(q.b), "asq": list(q.asq), "liftable": q.liftable} for q in pts[: args.limit]])
    if args.expect_empty:
        rep.check("empty", not pts, len(pts))


def cmd_ff_example(args, rep: Report):
    if args.p != finite_field.EXAMPLE_P:
        raise UsageError("the worked example is over p = 19")
    out = finite_field.reproduce_example_19()
    for name, item in out["items"].items():
        rep.check(name, item["ok"], item["value"])
    F = PrimeField(args.p)
    lines = finite_field.thirty_two_lines(finite_field.EXAMPLE_B, finite_field.EXAMPLE_LIFT, F)
    rep.check("32 lines on the surface", len(lines.lines) == 32 and all(lines.on_surface.values()), len(lines.lines))
    rep.check("each trope meets 6 exceptional curves", set(lines.incidence_counts.values()) == {6}, lines.incidence_counts)
    rep.check("tropes pairwise disjoint (rank 6)", lines.trope_pairs_rank6)
    rep.check("exceptional curves pairwise disjoint (rank 6)", lines.exceptional_pairs_rank6)
    rep.value("valid_sign_calibrations", out["valid_sign_calibrations"])
    e11 = finite_field.e11_resolution(F)
    rep.value("e11_resolution", e11)


def cmd_classify(args, rep: Report):
    field = _field(args.p, exact_default=True)
    b = parse_point(args.b, field)
    try:
        cls = fibers.classify(b, field)
        rep.value("stratum", cls.tag)
        rep.value("vanishing", cls.vanishing)
    except fibers.UnknownStratum as exc:
        rep.check("known stratum", False, str(exc))


def cmd_fiber(args, rep: Report):
    field = _field(args.p, exact_default=args.kind != "product")
    if args.kind == "product":
        s = parse_point(args.s or "2:1", field)
        t = parse_point(args.t or "2:1", field)
        pf = fibers.product_fiber(s, t, field)
        rep.value("equations", {q.name: list(q.coeffs) for q in pf.equations})
        rep.check("equations match the built system", pf.equations_match_build)
        rep.check("nodes on fiber", pf.nodes_on_fiber, pf.nodes)
        rep.check("16 lines on fiber", all(pf.lines_on_fiber) and len(pf.lines) == 16, sum(pf.lines_on_fiber))
        rep.check("pythagorean identities", all(field.is_zero(v) for v in pf.data.pythagorean()))
    elif args.kind == "cone":
        t = parse_point(args.t or "2:3", field)
        cp = fibers.cone_pair_fiber(t, field)
        rep.check("linear relations exact", cp.relations_hold, cp.relation_residuals)
        rep.value("identically_zero", cp.identically_zero)
        rep.value("printed_vs_built_sign", cp.displayed_match)
        rep.check("vertices singular", all(r < 3 for r in cp.vertex_jacobian_rank.values()), cp.vertex_jacobian_rank)
    else:
        cf = fibers.corner_fiber(field)
        rep.check("face vector 8/12/6", cf.face_vector == (8, 12, 6), cf.face_vector)
        rep.check("planes lie on fiber", cf.planes_on_fiber)
        rep.check("E3, E6, E7 vanish", cf.identically_zero == ["E3", "E6", "E7"], cf.identically_zero)
        rep.value("edges", cf.edges)


def cmd_minors(args, rep: Report):
    rng = np.random.default_rng(args.seed)
    for i in range(args.trials):
        b, x = fibers.sample_stratum_point(args.stratum, rng, x1_zero=bool(i % 2))
        for name, item in fibers.smoothness_minors(b, x, args.stratum).items():
            rep.check(f"{name} #{i}", item["ok"], item["rel_err"])


def cmd_genus1(args, rep: Report):
    rng = np.random.default_rng(args.seed)
    worst = {}
    for _ in range(args.trials):
        tau = parse_complex(args.tau) if args.tau else complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))
        z = parse_complex(args.z) if args.z else complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.2, 0.2))
        for k, v in fibers.genus1_model_check(tau, z).items():
            worst[k] = max(worst.get(k, 0.0), v)
    for k, v in worst.items():
        rep.check(k, v < args.tol, v)


COMMANDS = {
    "theta-eval": cmd_theta_eval,
    "identities": cmd_identities,
    "build-surface": cmd_build_surface,
    "rosenhain": cmd_rosenhain,
    "ff-search": cmd_ff_search,
    "ff-example": cmd_ff_example,
    "classify-fiber": cmd_classify,
    "fiber": cmd_fiber,
    "minors": cmd_minors,
    "genus1": cmd_genus1,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="print only the status")
    parser = argparse.ArgumentParser(prog="kummer", description="Kummer surfaces from theta functions.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    seed = default_seed()
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("theta-eval", help="evaluate one theta value")
    p.add_argument("--omega", nargs="+")
    p.add_argument("--tau")
    p.add_argument("--char", required=True, help="top,bottom e.g. 01,11")
    p.add_argument("--z")

    p = sub.add_parser("identities", help="run the identity suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--seed", type=int, default=seed)

    p = sub.add_parser("build-surface", help="the fifteen quadrics from omega or B")
    p.add_argument("--omega", nargs="+")
    p.add_argument("--b")
    p.add_argument("--p", type=int)

    p = sub.add_parser("rosenhain", help="quadruples, hyperplanes, F identity, vanishing table")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--table", action="store_true")

    p = sub.add_parser("ff-search", help="admissible points of P^3(F_p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--predicate", choices=finite_field.PREDICATES, default=finite_field.DEFAULT_PREDICATE)
    p.add_argument("--limit", type=int, default=50)
    p.add_argument("--expect-empty", action="store_true")

    p = sub.add_parser("ff-example", help="the worked example over F_19")
    p.add_argument("--p", type=int, default=19)

    p = sub.add_parser("classify-fiber", help="boundary stratum of B")
    p.add_argument("--b", required=True)
    p.add_argument("--p", type=int)

    p = sub.add_parser("fiber", help="degenerate fibers over the boundary")
    p.add_argument("--kind", choices=("product", "cone", "corner"), required=True)
    p.add_argument("--s")
    p.add_argument("--t")
    p.add_argument("--p", type=int)

    p = sub.add_parser("minors", help="Jacobian minors on boundary fibers")
    p.add_argument("--stratum", choices=("L", "P0"), default="L")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=seed)

    p = sub.add_parser("genus1", help="the genus-1 quadric model")
    p.add_argument("--tau")
    p.add_argument("--z")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=seed)
    return parser


def run(argv=None) -> tuple[Report, int, bool]:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    args.quiet = getattr(args, "quiet", False)
    inputs = {k: v for k, v in vars(args).items() if k not in ("quiet",)}
    tol = {k: inputs[k] for k in ("tol",) if k in inputs}
    rep = Report(args.command, inputs, tol)
    try:
        COMMANDS[args.command](args, rep)
    except UsageError:
        raise
    except Exception as exc:  # computation failure: keep what we have
        rep.error = f"{type(exc).__name__}: {exc}"
    return rep, 0 if rep.status == "pass" else 1, args.quiet


def main(argv=None) -> int:
    try:
        rep, code, quiet = run(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    if rep.error:
        print(rep.error, file=sys.stderr)
    print(rep.status if quiet else rep.dumps())
    return code
