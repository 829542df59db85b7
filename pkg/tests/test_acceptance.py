"""Acceptance criteria, one recorded PASS/FAIL line each."""

import math
import time
from fractions import Fraction as F

import numpy as np
import pytest

from conftest import EXAMPLE_ONE, EXAMPLE_TWO, record
from hyperzero.classifier import Case, Omega, auxiliary_polys, classify, disc_h, \
    singular_points, v_coordinate
from hyperzero.netcurve import BivariateS, detect_enclosure, extract_curve, im_b, s_eval
from hyperzero.polycore import RealPoly, find_roots, pattern_from_roots, quartic_character, \
    quartic_discriminant
from hyperzero.recurrence import SymbolParams, generate_pn
from hyperzero.toeplitz import build_tn, char_poly, limiting_set
from hyperzero.verify import Region, on_boundary, sample_params, verify_params

# wall-clock spent per fixture of the first criterion
_C1_TIMES: dict = {}

# this triple has a negative critical discriminant (-17624/3125) and P_n
# with non-real zeros, so the first criterion cannot hold for it
C1_DEFECT = (F(-26, 10), F(1), F(-1, 10))


def _label(abg):
    return "(" + ", ".join(str(x) for x in abg) + ")"


@pytest.mark.parametrize("abg", [
    pytest.param(t, marks=pytest.mark.xfail(strict=True, reason="fixture is not hyperbolic"))
    if t == C1_DEFECT else t for t in EXAMPLE_ONE], ids=_label)
def test_c1_example_one(abg):
    t0 = time.perf_counter()
    p = SymbolParams(*abg)
    c = classify(p)
    rs = find_roots(generate_pn(p, 150))
    worst = rs.max_imag / float(np.max(np.abs(rs.roots)))
    _C1_TIMES[abg] = time.perf_counter() - t0
    case_a = c.case in (Case.CaseA_distinct, Case.CaseA_degenerate)
    ok = c.verdict and case_a and worst <= 1e-6
    record(f"C1 Example-1 fixture {_label(abg)}", ok,
           f"case={c.case.value}, max|Im|/max|root| at n=150 = {worst:.2e}")
    assert c.verdict and case_a
    assert worst <= 1e-6


def test_c1_runtime():
    total = sum(_C1_TIMES.values())
    ok = len(_C1_TIMES) == len(EXAMPLE_ONE) and total <= 60
    record("C1 runtime", ok, f"{total:.1f} s for {len(_C1_TIMES)} fixtures (limit 60 s)")
    assert ok


def test_c2_example_two():
    t0 = time.perf_counter()
    box = (-4.0, 4.0, -4.0, 4.0)
    res = {}
    for name, abg in EXAMPLE_TWO.items():
        p = SymbolParams(*abg)
        res[name] = (classify(p), detect_enclosure(p, box, 512))
    c1, e1 = res["omega1"]
    c2, e2 = res["omega2"]
    c3, e3 = res["omega3"]
    p2 = SymbolParams(*EXAMPLE_TWO["omega2"])
    nonreal_n = next((n for n in range(5, 71)
                      if find_roots(generate_pn(p2, n)).max_imag > 1e-3), None)
    elapsed = time.perf_counter() - t0
    checks = {
        "omega1 true/Omega1/encloses": c1.verdict and c1.omega_region is Omega.Omega1
        and e1.encloses and not e1.inconclusive,
        "omega2 false/Omega2/no curve": not c2.verdict and c2.omega_region is Omega.Omega2
        and not e2.encloses and not e2.inconclusive,
        "omega2 non-real root n<=70": nonreal_n is not None,
        "omega3 false/Omega3/no curve": not c3.verdict and c3.omega_region is Omega.Omega3
        and not e3.encloses and not e3.inconclusive,
        "runtime <= 30 s": elapsed <= 30,
    }
    ok = all(checks.values())
    record("C2 Example-2 fixtures", ok,
           ", ".join(f"{k}: {'ok' if v else 'NO'}" for k, v in checks.items())
           + f" (first non-real n={nonreal_n}, {elapsed:.1f} s)")
    assert ok


def test_c3_char_poly_identity():
    bad = []
    for abg in EXAMPLE_ONE:
        p = SymbolParams(*abg)
        for n in range(1, 15):
            if char_poly(build_tn(p, n)).coeffs != generate_pn(p, n).coeffs:
                bad.append((abg, n))
    record("C3 det(zI - T_n) = P_n exactly, n <= 14", not bad,
           f"{6 * 14 - len(bad)}/{6 * 14} exact matches")
    assert not bad


def test_c4_three_way_consistency():
    t0 = time.perf_counter()
    region = Region(alpha=(-8.0, 2.0), beta=(-3.0, 3.0), gamma=(-3.0, 3.0))
    agree = genuine = skipped = open_false = 0
    for p in sample_params(region, 100, seed=0):
        if on_boundary(p):
            skipped += 1
            continue
        rep = verify_params(p, n_max=40, tol=1e-6, limset=False)
        flags = [rep.check(k).agree for k in ("spectrum", "curve")]
        if any(f is False for f in flags):
            genuine += 1
        elif all(flags):
            agree += 1
        else:
            open_false += 1
    elapsed = time.perf_counter() - t0
    ok = genuine == 0 and agree >= 95 and elapsed <= 300
    record("C4 three-way consistency (100-point sweep, n=40)", ok,
           f"agree={agree}, genuine disagreements={genuine}, inconclusive={open_false}, "
           f"boundary skipped={skipped}, {elapsed:.0f} s")
    assert ok


def test_c5_quartic_character_oracle():
    rng = np.random.default_rng(2024)
    n = hits = 0
    misses = []
    while n < 1000:
        q, r, s = rng.uniform(-4, 4, 3)
        if abs(quartic_discriminant(q, r, s)) < 1e-3:
            continue
        n += 1
        tag = quartic_character(q, r, s)
        got = pattern_from_roots(find_roots(RealPoly([s, r, q, 0.0, 1.0])).roots)
        if tag == got:
            hits += 1
        else:
            misses.append((q, r, s, tag, got))
    record("C5 quartic character vs root clusters", hits == n, f"{hits}/{n} agree")
    assert hits == n, misses[:3]


def test_c6_singular_points():
    p1 = SymbolParams(-2, 0, F(1, 3))
    p2 = SymbolParams(-1, 0, F(-1, 4))
    r1, r2 = singular_points(p1), singular_points(p2)
    r2t = math.sqrt(2)
    sets_ok = (sorted(r1.coords()) == [(-1.0, 0.0), (1.0, 0.0)]
               and sorted(r2.coords()) == [(0.0, -r2t), (0.0, r2t)])
    resid = max(r1.max_residual, r2.max_residual)
    dist = []
    for p, rep in ((p1, r1), (p2, r2)):
        c = extract_curve(p, resolution=512)
        dist += [c.distance_to(x, y) / c.cell_diameter for x, y in rep.coords()]
    ok = sets_ok and resid <= 1e-9 and max(dist) <= 1
    record("C6 singular-point fixtures", ok,
           f"exact sets: {sets_ok}, max residual {resid:.1e}, "
           f"max distance to curve {max(dist):.2f} cells")
    assert ok


def test_c7_identity_suite():
    rng = np.random.default_rng(7)
    p = SymbolParams(F(-13, 4), 1, F(-1, 5))
    worst = 0.0
    for x, y in rng.uniform(-4, 4, (10_000, 2)):
        # the pole term contributes y / |z|^2, so the identity carries |z|^2
        lhs = (x * x + y * y) * im_b(p, complex(x, y))
        rhs = y * s_eval(p, x, y)
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    im_ok = worst <= 1e-10

    g_ok = dh_ok = True
    for abg in EXAMPLE_ONE + list(EXAMPLE_TWO.values()):
        q = SymbolParams(*abg)
        g_ok &= BivariateS.from_params(q).restrict_real_axis().coeffs == \
            auxiliary_polys(q).G.coeffs
        v = v_coordinate(q)
        dh_ok &= disc_h(q) == 16 * (4 * q.gamma ** 3 + v * v)

    samples = sample_params(Region(), 50, seed=11)
    scale_ok = all(classify(s).verdict == classify(s.scale(t)).verdict
                   for s in samples for t in (F(1, 3), F(1, 2), F(2), F(3)))
    ok = im_ok and g_ok and dh_ok and scale_ok
    record("C7 identity suite", ok,
           f"|z|^2 Im b = y S max rel err {worst:.1e}; S(x,0)=G: {g_ok}; "
           f"disc_h=16(4g^3+v^2): {dh_ok}; scaling invariance: {scale_ok}")
    assert ok


def test_c8_limiting_set_realness():
    t0 = time.perf_counter()
    p = SymbolParams(*EXAMPLE_ONE[0])
    ls = limiting_set(p, (-4.0, 4.0, -4.0, 4.0), 400, 1e-2)
    elapsed = time.perf_counter() - t0
    ok = ls.count > 0 and ls.max_abs_imag <= 2 * ls.step and elapsed <= 60
    record("C8 limiting set real", ok,
           f"{ls.count} points, max|Im| {ls.max_abs_imag:.4f} <= {2 * ls.step:.4f}, "
           f"{elapsed:.1f} s")
    assert ok
