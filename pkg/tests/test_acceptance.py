"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``)
to see the lines as they happen; they are also repeated in pytest's terminal
summary.
"""

import dataclasses
import math
import subprocess
import sys
import time
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from pathlib import Path

import mpmath
import numpy as np
import pytest
import sympy as sp

sys.path.insert(0, str(Path(__file__).parent))

from goldconic import cli, conics, euclid, script  # noqa: E402
from goldconic import exactnum as en  # noqa: E402
from goldconic import verify as verify_mod  # noqa: E402
from goldconic.poly import isolate_real_roots  # noqa: E402
from oracles import DagGenerator, oracle_sign, round_half_even  # noqa: E402

HERE = Path(__file__).parent
SCRIPTS = Path(script.__file__).with_name("scripts")
MALFORMED = sorted((HERE / "corpus" / "malformed").glob("*.gcs"))

RESULTS: list[str] = []


def report(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


# -- 1 -----------------------------------------------------------------------------------

def test_criterion_1_solution_identities_exact():
    needed = ["e1 == 1/(phi*sqrt(phi))", "e2 == phi*sqrt(phi)", "e1*e2 == 1", "ON/OQ == phi",
              "OQ/HQ == phi", "HQ == QN == 1/sqrt(phi)", "Q is the midpoint of HN", "OQ == sqrt(phi)"]
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "goldconic", "verify"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    passed = {line[6:].strip() for line in proc.stdout.splitlines() if line.startswith("PASS  ")}
    missing = [n for n in needed if n not in passed]
    ok = proc.returncode == 0 and not missing and elapsed < 1.0
    report(1, "verify proves the solution identities exactly", ok,
           f"{len(needed) - len(missing)}/{len(needed)} identities, whole process {elapsed:.2f} s < 1 s")


# -- 2 -----------------------------------------------------------------------------------

def test_criterion_2_elimination_polynomial():
    t0 = time.perf_counter()
    p = conics.parallel_condition_polynomial()
    coeffs_ok = list(p.coefficients) == [1, 0, 3, 0, -5, 0, 1]
    # independent expansion of the factored form
    a = sp.symbols("a")
    expanded = sp.Poly(sp.expand((a**2 - 1) * (a**4 - 4 * a**2 - 1)), a).all_coeffs()
    sympy_ok = [int(c) for c in reversed(expanded)] == [int(c) for c in p.coefficients]
    above = [iv for iv in isolate_real_roots(p).intervals if iv[0] >= 1]
    target = en.phi_sqrt_phi()
    root_ok = (
        len(above) == 1
        and en.less_than(above[0][0], target)
        and en.less_than(target, above[0][1])
        and en.equals(p.eval(target), 0)
    )
    cond_ok = (
        conics.verify_parallel_condition(target)
        and not conics.verify_parallel_condition(en.sqrt(2))
        and not conics.verify_parallel_condition(2)
    )
    elapsed = time.perf_counter() - t0
    ok = coeffs_ok and sympy_ok and root_ok and cond_ok and elapsed < 1.0
    report(2, "parallel condition polynomial and its root", ok,
           f"coefficients {coeffs_ok}, sympy {sympy_ok}, unique root > 1 is phi*sqrt(phi) {root_ok}, "
           f"condition holds/refuted {cond_ok}, {elapsed:.3f} s")


# -- 3 -----------------------------------------------------------------------------------

def test_criterion_3_latus_rectum_decomposition():
    rect = conics.latus_rectum_rectangle(conics.solve_problem())
    ratio_ok = en.equals(euclid.distance(rect.F1, rect.F2) / euclid.distance(rect.A, rect.F1), en.sqrt_phi())
    tris = conics.decomposition_triangles(rect)
    total = en.const_rational(0)
    for t in tris:
        total = total + t.area()
    area_ok = en.equals(total, rect.area)
    cong_ok = all(euclid.congruent(tris[i], tris[j]) for i in range(4) for j in range(i + 1, 4))
    s = 2 / en.sqrt_phi()
    shape_ok = all(
        all(en.equals(u, v) for u, v in zip(t.sorted_sides(), [s, s * en.sqrt_phi(), s * en.phi()]))
        for t in tris
    )
    ok = ratio_ok and area_ok and cong_ok and shape_ok and conics.kepler_decomposition_check(rect)
    report(3, "latus rectum rectangle splits into four Kepler triangles", ok,
           f"F1F2/AF1 = sqrt(phi) {ratio_ok}, area {area_ok}, pairwise congruent {cong_ok}, 1:sqrt(phi):phi {shape_ok}")


# -- 4 -----------------------------------------------------------------------------------

def test_criterion_4_constructions():
    want = [en.const_rational(1), en.sqrt(2 * en.phi()), en.phi() * en.sqrt_phi()]
    t1, _ = euclid.construct_T2_via_kepler()
    t2, _ = euclid.construct_T2_via_thales()
    lay = conics.solve_problem().layout
    kof2 = euclid.Triangle(lay.K, lay.O, lay.F2)

    def sides_ok(t):
        return all(en.equals(u, v) for u, v in zip(t.sorted_sides(), want))

    ok_sides = sides_ok(t1) and sides_ok(t2) and sides_ok(kof2)
    ok_right = euclid.is_right_triangle(t1) and euclid.is_right_triangle(t2)
    ok_cong = euclid.congruent(t1, t2) and euclid.congruent(t1, kof2) and euclid.congruent(t2, kof2)
    report(4, "both T2 constructions", ok_sides and ok_right and ok_cong,
           f"sides {{1, sqrt(2phi), phi*sqrt(phi)}} {ok_sides}, right {ok_right}, congruent incl. KOF2 {ok_cong}")


# -- 5 -----------------------------------------------------------------------------------

def grid_oracle(r: float):
    """Minimise over the base angle t: h = r/sin t, d = r/cos t.

    A uniform 10^6-point grid on (0, pi/2) followed by zoomed 1001-point
    grids in 40-digit mpmath.
    """
    t = np.linspace(0, math.pi / 2, 1_000_002)[1:-1]
    per = 2 * r / np.sin(t) + 2 * r / (np.sin(t) * np.cos(t))
    k = int(np.argmin(per))
    lo, hi = t[max(k - 1, 0)], t[min(k + 1, len(t) - 1)]
    with mpmath.workdps(40):
        r_m = mpmath.mpf(r)
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)

        def f(x):
            return 2 * r_m / mpmath.sin(x) + 2 * r_m / (mpmath.sin(x) * mpmath.cos(x))

        for _ in range(6):
            xs = [lo + (hi - lo) * i / 1000 for i in range(1001)]
            j = min(range(1001), key=lambda i: f(xs[i]))
            lo, hi = xs[max(j - 1, 0)], xs[min(j + 1, 1000)]
        best = (lo + hi) / 2
        return float(r_m / mpmath.sin(best)), float(r_m / mpmath.cos(best)), float(f(best))


def test_criterion_5_min_perimeter():
    with mpmath.workdps(40):
        r = 2 / ((1 + mpmath.sqrt(5)) / 2)
        exact_h = float(2 / mpmath.sqrt((1 + mpmath.sqrt(5)) / 2))
        exact_p = float(4 * ((1 + mpmath.sqrt(5)) / 2) * mpmath.sqrt((1 + mpmath.sqrt(5)) / 2))
    t0 = time.perf_counter()
    h, d, per = conics.min_perimeter_isosceles_circumscribing_semicircle(r, 1e-10)
    t_opt = time.perf_counter() - t0
    t0 = time.perf_counter()
    gh, gd, gp = grid_oracle(float(r))
    t_grid = time.perf_counter() - t0
    err_exact = max(abs(h - exact_h), abs(d - 2), abs(per - exact_p))
    err_oracle = max(abs(h - gh), abs(d - gd), abs(per - gp))
    ok = err_exact < 1e-9 and err_oracle < 1e-9 and t_opt < 5
    report(5, "minimal circumscribing perimeter at r = 2/phi", ok,
           f"|optimizer - exact| {err_exact:.1e}, |optimizer - grid oracle| {err_oracle:.1e}, "
           f"optimizer {t_opt:.3f} s, oracle {t_grid:.2f} s")


# -- 6 -----------------------------------------------------------------------------------

def _exact_rounding(s, digits: int) -> str:
    """Rounding for the rare value sitting on a boundary: use the sympy twin."""
    try:
        return round_half_even(s.node, digits, bits=4096)
    except ValueError:
        q = sp.nsimplify(s.expr)
        if not q.is_Rational:
            raise
        with localcontext() as ctx:
            ctx.prec = digits + 100
            v = (Decimal(int(q.p)) / Decimal(int(q.q))).quantize(Decimal(1).scaleb(-digits), ROUND_HALF_EVEN)
        text = format(v, "f")
        return text.lstrip("-") if Decimal(text) == 0 else text


def test_criterion_6_kernel_properties():
    gen = DagGenerator(20240601)
    t0 = time.perf_counter()
    sign_bad = sq_bad = dec_bad = zeros = 0
    for _ in range(500):
        s = gen.gen(8)
        got = en.sign(s.node)
        want = oracle_sign(s, bits=256)
        zeros += want == 0
        sign_bad += got != want
        x = gen.nonneg(s)
        root = en.sqrt(x.node)
        sq_bad += not en.equals(en.mul(root, root), x.node)
        try:
            ref = round_half_even(s.node, 50)
        except ValueError:
            ref = _exact_rounding(s, 50)
        dec_bad += en.to_decimal(s.node, 50) != ref
    elapsed = time.perf_counter() - t0
    ok = sign_bad == 0 and sq_bad == 0 and dec_bad == 0 and elapsed < 30
    report(6, "kernel properties on 500 random DAGs", ok,
           f"sign mismatches {sign_bad} ({zeros} exact zeros), (sqrt x)^2 != x {sq_bad}, "
           f"50-digit rounding mismatches {dec_bad}, {elapsed:.1f} s")


# -- 7 -----------------------------------------------------------------------------------

def test_criterion_7_parser_corpus():
    import re

    bundled_ok = True
    round_trip_ok = True
    for name in ("fig2.gcs", "fig3.gcs"):
        prog = script.parse((SCRIPTS / name).read_text(encoding="utf-8"))
        bundled_ok &= script.check(prog) == [] and script.execute(prog).all_passed
        round_trip_ok &= script.parse(script.format_program(prog)) == prog
    positions_ok = 0
    for path in MALFORMED:
        src = path.read_text(encoding="utf-8")
        line, col = map(int, re.match(r"# expect: (\d+):(\d+)", src).groups())
        try:
            script.parse(src)
        except SyntaxError as exc:
            positions_ok += (exc.span.line, exc.span.column) == (line, col)
        # the statements before the error must round-trip too
        prefix = script.parse("\n".join(src.splitlines()[: line - 1]) + "\n")
        round_trip_ok &= script.parse(script.format_program(prefix)) == prefix
    ok = bundled_ok and positions_ok == len(MALFORMED) == 20 and round_trip_ok
    report(7, "parser corpus", ok,
           f"bundled scripts pass {bundled_ok}, malformed line:col {positions_ok}/{len(MALFORMED)}, "
           f"round trip {round_trip_ok}")


# -- 8 -----------------------------------------------------------------------------------

def test_criterion_8_svg_determinism(tmp_path, capsys):
    outputs = {}
    for run in (1, 2):
        fig1 = tmp_path / f"figure1-{run}.svg"
        cli.main(["figure1", "--svg", str(fig1)])
        outputs.setdefault("figure1", []).append(fig1.read_bytes())
        for name in ("fig2", "fig3"):
            out = tmp_path / f"{name}-{run}.svg"
            cli.main(["construct", str(SCRIPTS / f"{name}.gcs"), "--svg", str(out)])
            outputs.setdefault(name, []).append(out.read_bytes())
    capsys.readouterr()
    same = {k: len(v[0]) > 0 and v[0] == v[1] for k, v in outputs.items()}
    report(8, "SVG output is byte-identical across runs", all(same.values()),
           ", ".join(f"{k} {v}" for k, v in same.items()))


# -- 9 -----------------------------------------------------------------------------------

MUTATIONS = {
    "quartic": (-1, 0, -3, 0, 1),  # 4a^2 -> 3a^2
    "phi_radicand": 6,
    "discarded_factor": (-2, 0, 1),
    "c": 3,
    "f1f2": 1,
    "af1_numerator": 1,
    "a_phi_half_exponent": 4,
    "t2_side_squares": ((1, 0), (1, 2), (1, 2)),
}


def test_criterion_9_mutation_sentinel(monkeypatch, capsys):
    caught = []
    for field, value in MUTATIONS.items():
        monkeypatch.setattr(verify_mod, "CLAIMS", dataclasses.replace(verify_mod.GoldenClaims(), **{field: value}))
        caught.append(cli.main(["verify"]) == 1)
    monkeypatch.setattr(verify_mod, "CLAIMS", verify_mod.GoldenClaims())
    clean = cli.main(["verify"]) == 0
    capsys.readouterr()
    all_fields = set(MUTATIONS) == {f.name for f in dataclasses.fields(verify_mod.GoldenClaims)}
    ok = all(caught) and clean and all_fields
    report(9, "every single-constant mutation makes verify exit 1", ok,
           f"{sum(caught)}/{len(caught)} mutations caught, unmutated run exits 0 {clean}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
