import cmath
import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperzero.polycore import (
    ComplexPoly,
    NoConvergence,
    RealPoly,
    RootPattern,
    ZeroPolynomial,
    derivative,
    discriminant,
    eval_poly,
    find_roots,
    is_real_rooted,
    pattern_from_roots,
    quartic_character,
    quartic_discriminant,
    resultant,
)
from hyperzero.recurrence import SymbolParams, generate_pn


def test_normalisation_strips_leading_zeros():
    p = RealPoly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    z = RealPoly([0, 0])
    assert z.is_zero and z.coeffs == (0,)


def test_eval_examples():
    assert eval_poly(RealPoly([-4, 0, 1]), 2) == 0
    assert eval_poly(RealPoly([1]), 3 + 4j) == 1
    p4 = RealPoly([F(3), F(2), F(-6), 0, 1])  # z^4 + 3az^2 + 2bz + a^2 + g at (-2, 1, -1)
    assert eval_poly(p4, 0) == 3


def test_eval_complex_poly():
    p = ComplexPoly([1j, 0, 1])
    assert abs(eval_poly(p, cmath.sqrt(-1j))) < 1e-15


def test_derivative_examples():
    assert derivative(RealPoly([-4, 0, 1])).coeffs == (0, 2)
    assert derivative(RealPoly([5])).is_zero
    g = RealPoly([1, 0, 1, -2, 3])
    assert derivative(g).coeffs == (0, 2, -6, 12)


def test_resultant_examples():
    assert resultant(RealPoly([-1, 1]), RealPoly([1, 1])) == 2
    assert resultant(RealPoly([-1, 0, 1]), RealPoly([-1, 0, 1])) == 0
    assert resultant(RealPoly([1, 0, 1]), RealPoly([0, 1])) == 1


def test_resultant_rejects_zero():
    with pytest.raises(ZeroPolynomial):
        resultant(RealPoly([0]), RealPoly([1, 1]))


def test_discriminant_examples():
    assert discriminant(RealPoly([-4, 0, 1])) == 16
    assert discriminant(RealPoly([4, 0, -5, 0, 1])) == 5184
    assert discriminant(RealPoly([0, 0, 0, 0, 1])) == 0
    assert quartic_discriminant(-5, 0, 4) == 5184


def test_discriminant_is_exact_for_rationals():
    d = discriminant(RealPoly([F(1, 3), F(-2, 7), F(5, 2)]))
    assert isinstance(d, F)
    assert d == F(-2, 7) ** 2 - 4 * F(5, 2) * F(1, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=5, max_size=5).filter(lambda c: c[-1] != 0))
def test_quartic_closed_form_matches_sylvester(c):
    a0, a1, a2, a3, a4 = c
    if a3 != 0 or a4 != 1:
        c = [a0, a1, a2, 0, 1]
    q, r, s = c[2], c[1], c[0]
    assert discriminant(RealPoly(c)) == quartic_discriminant(q, r, s)


def _root_product_discriminant(p: RealPoly) -> float:
    rs = find_roots(p)
    n = p.degree
    lead = float(p.leading)
    prod = 1.0 + 0j
    for i, j in itertools.combinations(range(n), 2):
        prod *= (rs.roots[i] - rs.roots[j]) ** 2
    return (lead ** (2 * n - 2) * prod).real


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=9).filter(lambda c: c[-1] != 0))
def test_discriminant_matches_root_product(c):
    p = RealPoly(c)
    exact = float(discriminant(p))
    approx = _root_product_discriminant(p)
    assert approx == pytest.approx(exact, rel=1e-6, abs=1e-6)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=8)
       .filter(lambda c: c[-1] != 0 and c[0] != 0))
def test_reversal_preserves_discriminant_sign(c):
    p = RealPoly(c)
    d1, d2 = discriminant(p), discriminant(p.reverse())
    assert (d1 > 0) == (d2 > 0) and (d1 == 0) == (d2 == 0)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=2, max_size=8),
       st.floats(-2, 2), st.floats(-2, 2))
def test_derivative_matches_finite_difference(c, x, y):
    p = RealPoly(c)
    z = complex(x, y)
    if abs(z) > 2:
        z = 2 * z / abs(z)
    h = 1e-5
    fd = (eval_poly(p, z + h) - eval_poly(p, z - h)) / (2 * h)
    dv = eval_poly(derivative(p), z)
    scale = sum(abs(v) * k * 2 ** k for k, v in enumerate(c)) + 1
    assert abs(fd - dv) <= 1e-6 * scale


def test_find_roots_examples():
    assert np.allclose(sorted(find_roots(RealPoly([-4, 0, 1])).roots.real), [-2, 2])
    r = find_roots(RealPoly([1, 0, 1])).roots
    assert np.allclose(sorted(r.imag), [-1, 1]) and np.allclose(r.real, 0)
    g = find_roots(RealPoly([1, 0, -2, 0, 1]))
    assert np.allclose(g.roots, [-1, -1, 1, 1])
    assert tuple(g.multiplicities) == (2, 2, 2, 2)


def test_find_roots_triple():
    rs = find_roots(RealPoly([1, 0, -6, 8, -3]))  # -(z - 1)^3 (3z + 1)
    assert np.allclose(rs.roots, [-1 / 3, 1, 1, 1], atol=1e-6)
    assert np.max(np.abs(rs.roots.imag)) < 1e-12


def test_find_roots_count_and_residuals():
    p = generate_pn(SymbolParams(F(-27, 4), F(-7, 8), F(5, 2)), 60)
    rs = find_roots(p)
    assert len(rs.roots) == 60
    assert np.all(np.isfinite(rs.residuals))
    assert rs.max_imag == pytest.approx(np.max(np.abs(rs.roots.imag)))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=10).filter(lambda c: c[-1] != 0))
def test_conjugate_symmetry(c):
    rs = find_roots(RealPoly(c))
    z = np.sort_complex(rs.roots)
    zc = np.sort_complex(np.conj(rs.roots))
    assert np.max(np.abs(z - zc)) <= 1e-9 * rs.scale


def test_no_convergence_carries_partial():
    with pytest.raises(NoConvergence) as info:
        find_roots(RealPoly(list(range(1, 40))), max_iter=1)
    assert info.value.partial is not None


def test_is_real_rooted_examples():
    ok, mi = is_real_rooted(RealPoly([-4, 0, 1]), 1e-8)
    assert ok and mi < 1e-12
    ok, mi = is_real_rooted(RealPoly([1, 0, 1]), 1e-8)
    assert not ok and mi == pytest.approx(1.0)


def test_p150_real_rooted():
    p = generate_pn(SymbolParams(F(-27, 4), F(-7, 8), F(5, 2)), 150)
    ok, _ = is_real_rooted(p, 1e-6)
    assert ok


@pytest.mark.parametrize("qrs, tag", [
    ((-5, 0, 4), RootPattern.FOUR_DISTINCT_REAL),
    ((0, 0, 1), RootPattern.ALL_COMPLEX_DISTINCT),
    ((0, 0, 0), RootPattern.QUADRUPLE_REAL),
    ((-2, 0, 1), RootPattern.TWO_DOUBLE_REAL),               # (u^2 - 1)^2
    ((2, 0, 1), RootPattern.TWO_DOUBLE_COMPLEX_PAIRS),        # (u^2 + 1)^2
    ((-6, 8, -3), RootPattern.TRIPLE_REAL_PLUS_SIMPLE),       # (u - 1)^3 (u + 3)
    ((-3, 2, 0), RootPattern.ONE_DOUBLE_TWO_REAL_SIMPLE),      # u (u - 1)^2 (u + 2)
    ((0, 0, -1), RootPattern.TWO_REAL_PAIR_COMPLEX),
    ((1, 0, 0), RootPattern.DOUBLE_REAL_PLUS_COMPLEX_PAIR),    # u^2 (u^2 + 1)
    ((-1, 0, 0), RootPattern.ONE_DOUBLE_TWO_REAL_SIMPLE),      # u^2 (u^2 - 1)
])
def test_quartic_character_cases(qrs, tag):
    assert quartic_character(*qrs) == tag
    q, r, s = qrs
    rs = find_roots(RealPoly([s, r, q, 0, 1]))
    assert pattern_from_roots(rs.roots) == tag


def test_quartic_character_exact_arguments():
    assert quartic_character(F(-5), F(0), F(4)) == RootPattern.FOUR_DISTINCT_REAL
