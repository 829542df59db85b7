"""Discriminant casework deciding whether every ``P_n`` is real-rooted.

All sign tests run in exact rational arithmetic.  Float parameters are
converted with ``Fraction(float)``, which is exact, so a verdict never
depends on rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .polycore import (
    RealPoly,
    RootPattern,
    RootSet,
    discriminant,
    find_roots,
    quartic_character,
    quartic_discriminant,
)
from .recurrence import GammaZero, SymbolParams


class Case(str, Enum):
    CaseA_distinct = "CaseA_distinct"
    CaseA_degenerate = "CaseA_degenerate"
    CaseB_interior = "CaseB_interior"
    CaseB_boundary = "CaseB_boundary"
    Fails = "Fails"


class Omega(str, Enum):
    Omega1 = "Omega1"
    Omega2 = "Omega2"
    Omega3 = "Omega3"
    Omega4 = "Omega4"


def _exact(params: SymbolParams) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(Fraction(x) for x in params.as_tuple())


def _out(x: Fraction, params: SymbolParams):
    return x if params.exact else float(x)


# --------------------------------------------------------------------------
# auxiliary polynomials


@dataclass(frozen=True)
class AuxiliaryPolys:
    """``G``, ``J``, ``W`` and ``H``.

    ``H`` has irrational coefficients and is always float; the other three
    are exact whenever the parameters are.
    """

    G: RealPoly
    J: RealPoly
    W: RealPoly
    H: RealPoly
    h_float_only: bool = True


def auxiliary_polys(params: SymbolParams) -> AuxiliaryPolys:
    a, b, g = params.as_tuple()
    one = Fraction(1) if params.exact else 1.0
    zero = one * 0
    G = RealPoly([one, zero, a, -2 * b, 3 * g])
    J = RealPoly([3 * g, -2 * b, a, zero, one])
    W = RealPoly([3 * g, b, a])
    af, bf, gf = params.as_floats()
    lam = 2 ** (4 / 3) * gf
    mu = (4 * af * gf - bf * bf) / (3 * math.sqrt(3))
    H = RealPoly([mu, lam, 0.0, 1.0])
    return AuxiliaryPolys(G, J, W, H)


# --------------------------------------------------------------------------
# discriminants


def _disc_g_exact(a, b, g) -> Fraction:
    return quartic_discriminant(a, -2 * b, 3 * g)


def disc_g_inner(params: SymbolParams):
    """``3a^4 g - a^3 b^2 - 72 a^2 g^2 + 108 a b^2 g - 27 b^4 + 432 g^3``.

    Sixteen times this equals :func:`disc_g`.
    """
    a, b, g = _exact(params)
    val = (3 * a**4 * g - a**3 * b**2 - 72 * a**2 * g**2 + 108 * a * b**2 * g
           - 27 * b**4 + 432 * g**3)
    return _out(val, params)


def disc_g(params: SymbolParams):
    """Discriminant of the critical-point quartic.

    Computed from the closed form for ``u^4 + q u^2 + r u + s`` with
    ``(q, r, s) = (alpha, -2 beta, 3 gamma)``; reversing coefficients maps
    ``J`` to ``G`` and leaves the discriminant unchanged.
    """
    return _out(_disc_g_exact(*_exact(params)), params)


def disc_g_sylvester(params: SymbolParams):
    """Same quantity through the Sylvester resultant of ``G`` and ``G'``."""
    a, b, g = _exact(params)
    return _out(discriminant(RealPoly([Fraction(1), 0, a, -2 * b, 3 * g])), params)


def disc_w(params: SymbolParams):
    a, b, g = _exact(params)
    return _out(b * b - 12 * a * g, params)


def disc_h(params: SymbolParams):
    """``64 g^3 + (4 a g - b^2)^2``."""
    a, b, g = _exact(params)
    return _out(64 * g**3 + (4 * a * g - b * b) ** 2, params)


def v_coordinate(params: SymbolParams):
    """``v = a g - b^2 / 4``."""
    a, b, g = _exact(params)
    return _out(a * g - b * b / 4, params)


def omega_region(gamma, v, beta) -> Omega | None:
    """Region of the ``(gamma, v)`` plane at fixed ``beta``.

    Outside ``gamma < 0`` returns None; on a boundary curve returns None.
    ``Omega4`` is the part of ``gamma < 0`` where the critical quartic has a
    positive discriminant.
    """
    g, v, b = Fraction(gamma), Fraction(v), Fraction(beta)
    if g >= 0:
        return None
    a = (v + b * b / 4) / g
    dg = _disc_g_exact(a, b, g)
    if dg > 0:
        return Omega.Omega4
    if dg == 0:
        return None
    dh = 4 * g**3 + v * v
    if dh < 0:
        return Omega.Omega2
    if dh == 0:
        return None
    line = v + b * b / 24
    if line > 0:
        return Omega.Omega1
    if line < 0:
        return Omega.Omega3
    return None


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    verdict: bool
    case: Case
    disc_g: object
    disc_w: object
    disc_h: object
    critical_pattern: RootPattern
    omega_region: Omega | None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def num(x):
            return str(x) if isinstance(x, Fraction) else x

        return {
            "verdict": self.verdict,
            "case": self.case.value,
            "disc_g": num(self.disc_g),
            "disc_w": num(self.disc_w),
            "disc_h": num(self.disc_h),
            "critical_pattern": self.critical_pattern.value,
            "omega_region": self.omega_region.value if self.omega_region else None,
            "diagnostics": {k: num(v) for k, v in self.diagnostics.items()},
        }


def classify(params: SymbolParams) -> Classification:
    """Decide real-rootedness of the whole family.

    Case A: ``alpha < 0``, ``-alpha^2/36 <= gamma <= alpha^2/12`` and
    ``disc_g >= 0`` (the critical quartic is hyperbolic).
    Case B: ``gamma < 0``, ``disc_g < 0``, ``disc_w <= 0``, ``disc_h >= 0``
    and ``v >= -beta^2/24``.  The last inequality separates the two
    components of ``disc_h > 0``; without it the test admits parameters
    whose polynomials have non-real zeros.
    """
    if params.gamma == 0:
        raise GammaZero("gamma must be nonzero")
    a, b, g = _exact(params)
    dg = _disc_g_exact(a, b, g)
    dw = b * b - 12 * a * g
    dh = 64 * g**3 + (4 * a * g - b * b) ** 2
    v = a * g - b * b / 4
    line = v + b * b / 24
    pattern = quartic_character(a, -2 * b, 3 * g)

    diag: dict = {"v": _out(v, params), "L": _out(line, params)}
    if not params.exact:
        diag["warning"] = "float input: signs evaluated on the exact binary values"

    lo, hi = -a * a / 36, a * a / 12
    case_a = a < 0 and lo <= g <= hi and dg >= 0
    printed_b = g < 0 and dg < 0 and dw <= 0 and dh >= 0
    case_b = printed_b and line >= 0
    diag["case_b_without_L"] = printed_b

    if case_a:
        tight = g == lo or g == hi or dg == 0
        case = Case.CaseA_degenerate if tight else Case.CaseA_distinct
    elif case_b:
        tight = dw == 0 or dh == 0 or line == 0
        case = Case.CaseB_boundary if tight else Case.CaseB_interior
    else:
        case = Case.Fails
        diag["failed"] = _first_failure(a, g, dg, dw, dh, line, lo, hi)

    omega = None
    if g < 0 and dg < 0:
        omega = omega_region(g, v, b)
    return Classification(case is not Case.Fails, case, _out(dg, params),
                          _out(dw, params), _out(dh, params), pattern, omega, diag)


def _first_failure(a, g, dg, dw, dh, line, lo, hi) -> str:
    if dg >= 0:
        if a >= 0:
            return "alpha < 0"
        if g < lo:
            return "gamma >= -alpha^2/36"
        if g > hi:
            return "gamma <= alpha^2/12"
        return "disc_g >= 0"
    if g > 0:
        return "gamma < 0"
    if dw > 0:
        return "disc_w <= 0"
    if dh < 0:
        return "disc_h >= 0"
    return "v >= -beta^2/24"


# --------------------------------------------------------------------------
# critical and singular points


def critical_points(params: SymbolParams) -> RootSet:
    """The four zeros of ``G``, i.e. the critical points of ``b``."""
    return find_roots(auxiliary_polys(params).G)


def s_poly_eval(params: SymbolParams, x, y):
    """``S(x, y)`` and its two partial derivatives."""
    a, b, g = params.as_floats()
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = (1 + a * x**2 - 2 * b * x**3 + 3 * g * x**4 + a * y**2
         - 2 * b * x * y**2 + 2 * g * x**2 * y**2 - g * y**4)
    sx = 2 * a * x - 6 * b * x**2 + 12 * g * x**3 - 2 * b * y**2 + 4 * g * x * y**2
    sy = 2 * a * y - 4 * b * x * y + 4 * g * x**2 * y - 4 * g * y**3
    return s, sx, sy


@dataclass(frozen=True)
class SingularPoint:
    x: float
    y: float
    branch: str
    residual: float


@dataclass(frozen=True)
class SingularPointReport:
    points: tuple[SingularPoint, ...]
    conditions: dict

    def coords(self) -> list[tuple[float, float]]:
        return [(p.x, p.y) for p in self.points]

    @property
    def max_residual(self) -> float:
        return max((p.residual for p in self.points), default=0.0)


def singular_points(params: SymbolParams, tol: float = 1e-9) -> SingularPointReport:
    """Singular points of ``S = 0``.

    Candidates come from the complex-pair branch (active when
    ``3b^2 - 8ag <= 0`` and ``disc_h = 0``) and the real-axis branch
    (``3b^2 - 8ag >= 0`` and ``disc_g = 0``).  A candidate is kept only if
    ``S`` and its gradient vanish there to ``tol`` times the local scale.
    """
    a, b, g = _exact(params)
    k = 3 * b * b - 8 * a * g
    dh = 64 * g**3 + (4 * a * g - b * b) ** 2
    dg = _disc_g_exact(a, b, g)
    cands = []
    af, bf, gf = (float(t) for t in (a, b, g))
    if k <= 0 and dh == 0:
        x = bf / (4 * gf)
        y = math.sqrt(float(-k)) / (4 * abs(gf))
        cands += [(x, y, "complex-pair-branch"), (x, -y, "complex-pair-branch")]
    if k >= 0 and dg == 0:
        r = math.sqrt(3 * float(k))
        for sgn in (1, -1):
            cands.append(((3 * bf + sgn * r) / (12 * gf), 0.0, "real-axis-branch"))
    pts: list[SingularPoint] = []
    for x, y, br in cands:
        s, sx, sy = s_poly_eval(params, x, y)
        rho = max(1.0, abs(x), abs(y))
        scale = 1 + (abs(af) + abs(bf) + abs(gf)) * rho**4
        res = float(max(abs(s), abs(sx), abs(sy)) / scale)
        if res > tol:
            continue
        if any(abs(p.x - x) + abs(p.y - y) <= 1e-12 * rho for p in pts):
            continue
        pts.append(SingularPoint(float(x) + 0.0, float(y) + 0.0, br, res))
    pts.sort(key=lambda p: (p.x, p.y))
    cond = {"3b^2-8ag": _out(k, params), "disc_h": _out(dh, params),
            "disc_g": _out(dg, params)}
    return SingularPointReport(tuple(pts), cond)
