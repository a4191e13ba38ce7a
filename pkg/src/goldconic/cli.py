"""``goldconic`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 geometric degeneracy while running a script.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import conics, script, svg
from . import exactnum as en
from . import verify as verify_mod
from .poly import RationalPolynomial, isolate_real_roots

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GEOMETRY = 0, 1, 2, 3

BUNDLED_SCRIPTS = Path(__file__).with_name("scripts")


def _phi_half_power_name(k: int) -> str:
    whole, half = divmod(abs(k), 2)
    parts = []
    if whole == 1:
        parts.append("phi")
    elif whole > 1:
        parts.append(f"phi^{whole}")
    if half:
        parts.append("sqrt(phi)")
    body = "*".join(parts) or "1"
    if k >= 0:
        return body
    return f"1/({body})" if len(parts) > 1 else f"1/{body}"


def exact_form(x) -> str:
    """Name ``x`` as ``phi**(k/2)`` for small ``k`` if it is one, else its DAG."""
    root = en.sqrt_phi()
    power = en.const_rational(1)
    for k in range(0, 9):
        if en.equals(x, power):
            return _phi_half_power_name(k)
        if en.equals(x * power, 1):
            return _phi_half_power_name(-k)
        power = power * root
    return x.to_expr()


_SOLVE_FIELDS = [
    ("a", "a", "a"),
    ("e1", "e1", "e1"),
    ("e2", "e2", "e2"),
    ("on_oq", "ON/OQ", "ratio_ON_OQ"),
    ("oq_hq", "OQ/HQ", "ratio_OQ_HQ"),
    ("oq", "OQ", "OQ"),
    ("hq", "HQ", "HQ"),
    ("qn", "QN", "QN"),
]


def cmd_solve(args) -> int:
    sol = conics.solve_problem()
    rows = [(key, label, getattr(sol, attr)) for key, label, attr in _SOLVE_FIELDS]
    if args.json:
        out = {key: {"exact": exact_form(v), "decimal": en.to_decimal(v, args.digits)} for key, _, v in rows}
        out["q_midpoint_hn"] = sol.q_is_midpoint_of_HN
        print(json.dumps(out, indent=2))
        return EXIT_OK
    print("PN || KF2 with c = OF2 = 1")
    print(f"parallel polynomial: {sol.polynomial.format('a')}")
    for r in sol.rejected_roots:
        print(f"  root {r.value}: {r.reason}")
    width = max(len(exact_form(v)) for _, _, v in rows)
    for _, label, v in rows:
        print(f"{label:<6} = {exact_form(v):<{width}}  ~ {en.to_decimal(v, args.digits)}")
    print(f"Q midpoint of HN: {'yes' if sol.q_is_midpoint_of_HN else 'no'}")
    checks = [
        ("e1*e2 == 1", en.equals(sol.e1 * sol.e2, 1)),
        ("ON/OQ == phi", en.equals(sol.ratio_ON_OQ, en.phi())),
        ("OQ/HQ == phi", en.equals(sol.ratio_OQ_HQ, en.phi())),
        ("HQ == QN", en.equals(sol.HQ, sol.QN)),
    ]
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.run_verification(verify_mod.CLAIMS, bits=args.bits)
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'}  {r.name}"
        print(line + (f"  ({r.detail})" if r.detail else ""))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} identities hold")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def _describe_object(obj, digits: int) -> str | None:
    from .euclid import Point, Triangle

    dec = lambda v: en.to_decimal(v, digits)  # noqa: E731
    if isinstance(obj, Point):
        return f"({dec(obj.x)}, {dec(obj.y)})"
    if isinstance(obj, Triangle):
        names = obj.names
        sides = obj.side_lengths()
        pairs = [(names[0], names[1]), (names[1], names[2]), (names[2], names[0])]
        return ", ".join(f"|{p}{q}| = {dec(s)}" for (p, q), s in zip(pairs, sides))
    if isinstance(obj, en.ConstructibleReal):
        return dec(obj)
    return None


def cmd_construct(args) -> int:
    path = Path(args.file)
    try:
        source = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{path}: cannot read: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        program = script.parse(source)
    except script.GcsSyntaxError as exc:
        print(f"{path}: syntax error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    diags = script.check(program)
    if diags:
        for d in diags:
            print(f"{path}: {d}", file=sys.stderr)
        return EXIT_USAGE
    try:
        scene = script.execute(program)
    except script.ExecutionError as exc:
        print(f"{path}: geometry error at {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    for name, obj in scene.objects.items():
        text = _describe_object(obj, args.digits)
        if text is not None:
            print(f"{scene.kinds[name]} {name}: {text}")
    for a in scene.assertions:
        print(f"{'PASS' if a.passed else 'FAIL'}  {a.name}: {a.relation}")
    if args.svg:
        try:
            Path(args.svg).write_text(svg.scene_figure(scene), encoding="utf-8", newline="\n")
        except OSError as exc:
            print(f"{args.svg}: cannot write: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK if scene.all_passed else EXIT_FAIL


def cmd_roots(args, parser) -> int:
    try:
        coeffs = [Fraction(c) for c in args.coefficients]
    except (ValueError, ZeroDivisionError):
        parser.error(f"malformed coefficient list: {' '.join(args.coefficients)}")
    if coeffs[0] == 0:
        parser.error("the leading coefficient must be nonzero")
    p = RationalPolynomial.from_highest_first(coeffs)
    iso = isolate_real_roots(p)
    print(f"p(x) = {p}")
    print(f"{len(iso)} distinct real root(s)")
    for (lo, hi), approx in zip(iso.intervals, iso.approximations(args.digits)):
        print(f"  ({lo}, {hi})  ~ {approx}")
    return EXIT_OK


def cmd_figure1(args) -> int:
    text = svg.figure1(conics.solve_problem(), args.samples)
    try:
        Path(args.svg).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        print(f"{args.svg}: cannot write: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def _exact_scalar(text: str):
    """Evaluate a scalar in script syntax (``1.2360679775``, ``2/phi``) exactly."""
    program = script.load(f"scalar r = {text}\n")
    return script.execute(program).objects["r"]


def cmd_min_perimeter(args, parser) -> int:
    try:
        r = _exact_scalar(args.radius)
        tol = Fraction(args.tol)
    except (script.GcsSyntaxError, script.CheckFailed, script.ExecutionError, ValueError):
        parser.error(f"malformed number: {args.radius} / {args.tol}")
    if en.sign(r) <= 0:
        parser.error("radius must be positive")
    if tol <= 0:
        parser.error("tol must be positive")
    with mpmath.workdps(60):
        r_mp = mpmath.mpf(en.to_decimal(r, 60))
        tol_mp = mpmath.mpf(tol.numerator) / tol.denominator
        try:
            res = conics.min_perimeter_isosceles_circumscribing_semicircle(r_mp, tol_mp)
        except conics.NoConvergence as exc:
            print(f"no convergence: {exc}", file=sys.stderr)
            return EXIT_FAIL
    print(f"radius    = {mpmath.nstr(r_mp, 15)}")
    print(f"h         = {res.half_base:.10f}")
    print(f"d         = {res.height:.10f}")
    print(f"perimeter = {res.perimeter:.10f}")
    two_over_phi = 2 / en.phi()
    if en.sign(abs(r - two_over_phi) - Fraction(1, 10**12)) <= 0:
        exact = [
            ("h", "2/sqrt(phi)", 2 / en.sqrt_phi(), res.half_base),
            ("d", "2", en.const_rational(2), res.height),
            ("perimeter", "4*phi*sqrt(phi)", 4 * en.phi_sqrt_phi(), res.perimeter),
        ]
        print("triangle AF2C of the latus rectum rectangle:")
        for name, form, value, got in exact:
            ref = float(value)
            print(f"  {name:<9} exact {form} = {en.to_decimal(value, 10)}  |diff| = {abs(got - ref):.2e}")
    return EXIT_OK


def _bounded_int(lo: int, hi: int | None = None):
    def convert(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < lo or (hi is not None and v > hi):
            rng = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
            raise argparse.ArgumentTypeError(f"must be {rng}, got {v}")
        return v

    return convert


_NEGATIVE_RATIONAL = re.compile(r"^-(\d+(/\d+)?|\d*\.\d+)$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goldconic",
        description="Exact checks of a golden-ratio conic problem and two T2 constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve PN || KF2 and print the derived quantities")
    p.add_argument("--digits", type=_bounded_int(1, 1000), default=12)
    p.add_argument("--json", action="store_true", help="emit a JSON object")

    p = sub.add_parser("verify", help="run the exact identity suite")
    p.add_argument("--bits", type=_bounded_int(1), default=128, help="starting precision of sign tests")

    p = sub.add_parser("construct", help="run a .gcs construction script")
    p.add_argument("file")
    p.add_argument("--svg", help="write the construction as SVG")
    p.add_argument("--digits", type=_bounded_int(1, 1000), default=12)

    p = sub.add_parser("roots", help="isolate the real roots of a rational polynomial")
    # let "-1/3" through as a coefficient rather than an unknown option
    p._negative_number_matcher = _NEGATIVE_RATIONAL
    p.add_argument("coefficients", nargs="+", help="highest degree first, e.g. 1 0 -5 0 3 0 1")
    p.add_argument("--digits", type=_bounded_int(1, 1000), default=12)

    p = sub.add_parser("figure1", help="render the solved conic scene as SVG")
    p.add_argument("--svg", required=True)
    p.add_argument("--samples", type=_bounded_int(16), default=512)

    p = sub.add_parser("min-perimeter", help="numerically minimise the circumscribing triangle")
    p.add_argument("--radius", required=True, help="decimal, fraction or script scalar such as 2/phi")
    p.add_argument("--tol", default="1e-10")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    sub = parser._subparsers._group_actions[0].choices[args.command]  # type: ignore[union-attr]
    try:
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "construct":
            return cmd_construct(args)
        if args.command == "roots":
            return cmd_roots(args, sub)
        if args.command == "figure1":
            return cmd_figure1(args)
        return cmd_min_perimeter(args, sub)
    except SystemExit as exc:
        return int(exc.code or 0)
