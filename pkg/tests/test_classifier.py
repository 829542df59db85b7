import math
from fractions import Fraction as F

import numpy as np
import pytest

from hyperzero.classifier import (
    Case,
    Omega,
    auxiliary_polys,
    classify,
    critical_points,
    disc_g,
    disc_g_inner,
    disc_g_sylvester,
    disc_h,
    disc_w,
    omega_region,
    s_poly_eval,
    singular_points,
    v_coordinate,
)
from hyperzero.polycore import RootPattern, quartic_character
from hyperzero.recurrence import GammaZero, SymbolParams

OMEGA1 = SymbolParams(F(-13, 4), 1, F(-1, 5))
OMEGA2 = SymbolParams(F(-9, 20), 1, F(-1, 3))
OMEGA3 = SymbolParams(F(3, 4), 1, F(-1, 5))


def test_auxiliary_examples():
    aux = auxiliary_polys(SymbolParams(-2, 0, F(1, 3)))
    assert aux.G.coeffs == (1, 0, -2, 0, 1)
    assert auxiliary_polys(OMEGA1).W.coeffs == (F(-3, 5), 1, F(-13, 4))
    assert aux.h_float_only


def test_j_is_reversed_g():
    for p in (OMEGA1, OMEGA2, SymbolParams(F(-27, 4), F(-7, 8), F(5, 2))):
        aux = auxiliary_polys(p)
        assert aux.J.coeffs == tuple(reversed(aux.G.coeffs))
        assert aux.G.coeffs[0] == 1 and aux.J.coeffs[0] == 3 * p.gamma


def test_h_coefficients():
    h = auxiliary_polys(OMEGA1).H
    assert h.coeffs[2] == 0 and h.coeffs[3] == 1
    assert h.coeffs[1] == pytest.approx(2 ** (4 / 3) * -0.2)
    assert h.coeffs[0] == pytest.approx((4 * -3.25 * -0.2 - 1) / (3 * math.sqrt(3)))


def test_disc_examples():
    assert disc_g(SymbolParams(-2, 0, F(1, 3))) == 0
    assert disc_g(OMEGA1) < 0
    assert disc_g(SymbolParams(-5, 0, F(4, 3))) == 5184
    assert disc_w(OMEGA1) == F(-34, 5)
    assert disc_w(OMEGA3) == F(14, 5)
    assert disc_w(SymbolParams(-2, 0, -3)) < 0
    assert disc_h(OMEGA1) == F(256, 125)
    assert disc_h(OMEGA2) == F(-1492, 675)
    assert disc_h(SymbolParams(5, -3, F(1, 7))) > 0


def test_disc_g_three_way_agreement():
    rng = np.random.default_rng(7)
    for _ in range(60):
        a, b, g = (F(int(v), 8) for v in rng.integers(-40, 41, 3))
        if g == 0:
            continue
        p = SymbolParams(a, b, g)
        assert disc_g(p) == disc_g_sylvester(p) == 16 * disc_g_inner(p)


def test_disc_h_identity():
    rng = np.random.default_rng(11)
    for _ in range(60):
        a, b, g = (F(int(v), 6) for v in rng.integers(-30, 31, 3))
        if g == 0:
            continue
        p = SymbolParams(a, b, g)
        v = v_coordinate(p)
        assert disc_h(p) == 16 * (4 * g**3 + v * v)


@pytest.mark.parametrize("abg, verdict, case, omega", [
    ((F(-27, 4), F(-7, 8), F(5, 2)), True, Case.CaseA_distinct, None),
    ((F(-13, 4), 1, F(-1, 5)), True, Case.CaseB_interior, Omega.Omega1),
    ((F(-9, 20), 1, F(-1, 3)), False, Case.Fails, Omega.Omega2),
    ((F(3, 4), 1, F(-1, 5)), False, Case.Fails, Omega.Omega3),
    ((1, 1, 1), False, Case.Fails, None),
    ((-2, 0, F(1, 3)), True, Case.CaseA_degenerate, None),
    ((-6, -4, -1), True, Case.CaseA_degenerate, None),
])
def test_classify_examples(abg, verdict, case, omega):
    c = classify(SymbolParams(*abg))
    assert c.verdict is verdict
    assert c.case is case
    assert c.omega_region is omega
    assert (c.case is not Case.Fails) == c.verdict


def test_classify_float_input():
    c = classify(SymbolParams(0.75, 1, -0.2))
    assert not c.verdict and c.omega_region is Omega.Omega3
    assert "warning" in c.diagnostics
    assert isinstance(c.disc_w, float)


def test_failure_diagnostics():
    assert classify(OMEGA3).diagnostics["failed"] == "disc_w <= 0"
    assert classify(OMEGA2).diagnostics["failed"] == "disc_h >= 0"
    assert classify(SymbolParams(1, 1, 1)).diagnostics["failed"] == "alpha < 0"
    assert classify(SymbolParams(-2, 0, 1)).diagnostics["failed"] == "gamma <= alpha^2/12"


def test_gamma_zero():
    with pytest.raises(GammaZero):
        classify(SymbolParams(1, 1, 0.0))


def test_critical_pattern_tags():
    assert classify(SymbolParams(-2, 0, F(1, 3))).critical_pattern is RootPattern.TWO_DOUBLE_REAL
    assert classify(SymbolParams(-6, -4, -1)).critical_pattern is \
        RootPattern.TRIPLE_REAL_PLUS_SIMPLE


def test_to_dict_is_serialisable():
    import json
    d = classify(OMEGA1).to_dict()
    json.dumps(d)
    assert d["disc_h"] == "256/125" and d["omega_region"] == "Omega1"


def test_case_a_matches_hyperbolic_j():
    """On a rational grid with alpha < 0 the Case A test is the
    hyperbolicity of ``J``."""
    rng = np.random.default_rng(3)
    n = 0
    while n < 200:
        a = -F(int(rng.integers(1, 80)), 8)
        b = F(int(rng.integers(-40, 41)), 8)
        g = F(int(rng.integers(-60, 61)), 16)
        if g == 0:
            continue
        n += 1
        c = classify(SymbolParams(a, b, g))
        hyper = quartic_character(a, -2 * b, 3 * g).all_real
        assert (c.case in (Case.CaseA_distinct, Case.CaseA_degenerate)) == hyper


def test_region_map_points():
    assert omega_region(F(-1, 5), F(2, 5), 1) is Omega.Omega1
    assert omega_region(F(-1, 3), F(-1, 10), 1) is Omega.Omega2
    assert omega_region(F(1, 5), 0, 1) is None


@pytest.mark.parametrize("t", [F(1, 3), F(1, 2), F(2), F(3)])
def test_verdict_scaling_invariant(t):
    rng = np.random.default_rng(int(t * 6))
    for _ in range(30):
        a, b, g = (F(int(v), 4) for v in rng.integers(-24, 25, 3))
        if g == 0:
            continue
        p = SymbolParams(a, b, g)
        c1, c2 = classify(p), classify(p.scale(t))
        assert c1.verdict == c2.verdict and c1.case == c2.case
        assert c1.omega_region == c2.omega_region


def test_exact_and_float_signs_agree():
    rng = np.random.default_rng(5)
    for _ in range(100):
        a, b, g = (float(v) for v in np.round(rng.uniform(-6, 6, 3), 2))
        if g == 0:
            continue
        ex = classify(SymbolParams(*(F(str(v)) for v in (a, b, g))))
        fl = classify(SymbolParams(a, b, g))
        margins = [ex.disc_g, ex.disc_w, ex.disc_h, ex.diagnostics["L"],
                   g + F(str(a)) ** 2 / 36, F(str(a)) ** 2 / 12 - g]
        if all(abs(m) > 1e-6 for m in margins):
            assert ex.verdict == fl.verdict


def test_critical_points_examples():
    r = critical_points(SymbolParams(-2, 0, F(1, 3))).roots
    assert np.allclose(np.sort(r.real), [-1, -1, 1, 1], atol=1e-7)
    r = critical_points(SymbolParams(-6, -4, -1)).roots
    assert np.allclose(np.sort(r.real), [-1 / 3, 1, 1, 1], atol=1e-5)
    r = critical_points(SymbolParams(F(-27, 4), F(-7, 8), F(5, 2))).roots
    assert (r.real < 0).any() and (r.real > 0).any()


def test_lemma_sign_law():
    """With a negative critical discriminant the two real zeros of ``G``
    straddle the origin exactly when ``gamma < 0``."""
    rng = np.random.default_rng(9)
    seen = 0
    while seen < 80:
        a, b, g = (F(int(v), 4) for v in rng.integers(-24, 25, 3))
        if g == 0:
            continue
        p = SymbolParams(a, b, g)
        if disc_g(p) >= 0:
            continue
        seen += 1
        rs = critical_points(p)
        real = rs.roots[np.abs(rs.roots.imag) <= 1e-8 * rs.scale].real
        assert len(real) == 2
        assert (real[0] * real[1] < 0) == (g < 0)


def test_singular_point_examples():
    rep = singular_points(SymbolParams(-2, 0, F(1, 3)))
    assert sorted(rep.coords()) == [(-1.0, 0.0), (1.0, 0.0)]
    assert {p.branch for p in rep.points} == {"real-axis-branch"}
    rep = singular_points(SymbolParams(-1, 0, F(-1, 4)))
    assert sorted(rep.coords()) == [(0.0, -math.sqrt(2)), (0.0, math.sqrt(2))]
    assert rep.max_residual <= 1e-9
    assert singular_points(SymbolParams(F(-27, 4), F(-7, 8), F(5, 2))).points == ()


def test_singular_points_are_critical_for_s():
    for p in (SymbolParams(-2, 0, F(1, 3)), SymbolParams(-1, 0, F(-1, 4)),
              SymbolParams(-6, -4, -1)):
        for x, y in singular_points(p).coords():
            assert np.allclose(s_poly_eval(p, x, y), 0, atol=1e-9)
