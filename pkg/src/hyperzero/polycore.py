"""Dense univariate polynomials, resultants, and a simultaneous root finder.

Coefficients are stored in ascending order of degree.  Integer and
:class:`fractions.Fraction` coefficients stay exact through every algebraic
operation here (derivative, resultant, discriminant); only the root finder
drops to floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Sequence

import numpy as np

EPS = np.finfo(float).eps


class ZeroPolynomial(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


class NoConvergence(RuntimeError):
    """Raised by :func:`find_roots` when the iteration budget runs out.

    The partial :class:`RootSet` is kept on ``partial`` so callers can still
    inspect what was found.
    """

    def __init__(self, message: str, partial: "RootSet | None" = None):
        super().__init__(message)
        self.partial = partial


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


class Poly:
    """Dense polynomial with ascending coefficients.

    Trailing zeros are stripped on construction.  The zero polynomial is kept
    as a single ``0`` coefficient and reports ``is_zero``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Number]):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        self.coeffs = tuple(self._coerce(c) for c in cs)

    @staticmethod
    def _coerce(c):
        return c

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def leading(self):
        return self.coeffs[-1]

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def __call__(self, z):
        return eval_poly(self, z)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def _new(self, coeffs):
        return type(self)(coeffs) if type(self) in (RealPoly, ComplexPoly) else RealPoly(coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return _result_poly(self, other, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return _result_poly(self, other, out)

    __rmul__ = __mul__

    def reverse(self) -> "Poly":
        """Coefficient reversal, ``z**deg * p(1/z)``."""
        return self._new(self.coeffs[::-1])

    def to_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def root_bound(self) -> float:
        """Cauchy bound: every root has modulus at most this value."""
        lead = abs(complex(self.leading))
        if self.degree < 1:
            return 0.0
        return 1.0 + max(abs(complex(c)) for c in self.coeffs[:-1]) / lead

    # Root-finder hooks.  Subclasses with a better-conditioned evaluation
    # scheme (e.g. a recurrence) override these two.
    def newton_ratio(self, z: np.ndarray) -> np.ndarray:
        """Return ``p(z) / p'(z)`` elementwise, overflow-safe."""
        return _horner_newton_ratio(self.to_complex(), z)

    def relative_residual(self, z: np.ndarray) -> np.ndarray:
        """Return ``|p(z)| / sum_k |c_k| |z|^k`` elementwise."""
        return _horner_relative_residual(self.to_complex(), z)

    def at_noise_floor(self, z: np.ndarray) -> np.ndarray:
        """True where ``p(z)`` is indistinguishable from zero in float."""
        return self.relative_residual(z) <= 4 * max(self.degree, 1) * EPS


class RealPoly(Poly):
    """Polynomial with real (float, int or Fraction) coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, complex):
            if c.imag != 0:
                raise TypeError(f"RealPoly coefficient has imaginary part: {c!r}")
            return c.real
        if isinstance(c, np.generic):
            return c.item()
        return c


class ComplexPoly(Poly):
    """Polynomial with complex coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, np.generic):
            c = c.item()
        return c


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, complex):
        return ComplexPoly([x])
    return RealPoly([x])


def _result_poly(a: Poly, b: Poly, coeffs) -> Poly:
    if isinstance(a, ComplexPoly) or isinstance(b, ComplexPoly):
        return ComplexPoly(coeffs)
    return RealPoly(coeffs)


def eval_poly(p: Poly, z):
    """Horner evaluation of ``p`` at ``z`` (scalar or numpy array)."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def derivative(p: Poly) -> Poly:
    """Formal derivative."""
    if p.degree == 0:
        return p._new([0])
    return p._new([k * c for k, c in enumerate(p.coeffs) if k > 0])


# --------------------------------------------------------------------------
# resultants and discriminants


def _det(rows: list[list]) -> object:
    """Determinant by Gaussian elimination.

    Exact for Fraction/int entries; partial pivoting for floats.
    """
    m = [list(r) for r in rows]
    n = len(m)
    exact = all(_is_exact(x) for r in m for x in r)
    if exact:
        m = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1) if exact else 1.0
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        else:
            piv = max(range(col, n), key=lambda r: abs(m[r][col]))
            if m[piv][col] == 0:
                piv = None
        if piv is None:
            return Fraction(0) if exact else 0.0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = m[r][col] / pv
            if f == 0:
                continue
            row_r, row_c = m[r], m[col]
            for k in range(col, n):
                row_r[k] -= f * row_c[k]
    return det


def sylvester_matrix(p: Poly, q: Poly) -> list[list]:
    """Sylvester matrix of ``p`` and ``q`` (descending-coefficient rows)."""
    m, n = p.degree, q.degree
    pd = list(p.coeffs[::-1])
    qd = list(q.coeffs[::-1])
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qd + [0] * (size - n - 1 - i))
    return rows


def resultant(p: Poly, q: Poly):
    """Resultant of ``p`` and ``q`` as the Sylvester determinant."""
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("resultant of the zero polynomial is undefined")
    if p.degree == 0 and q.degree == 0:
        return Fraction(1) if p.is_exact and q.is_exact else 1.0
    if p.degree == 0:
        return p.leading ** q.degree
    if q.degree == 0:
        return q.leading ** p.degree
    return _det(sylvester_matrix(p, q))


def discriminant(p: Poly):
    """``(-1)^(n(n-1)/2) * Res(p, p') / a_n``.

    Equals ``a_n^(2n-2) * prod_{i<j} (x_i - x_j)^2``.
    """
    if p.is_zero:
        raise ZeroPolynomial("discriminant of the zero polynomial")
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1) if p.is_exact else 1.0
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    res = resultant(p, derivative(p))
    lead = p.leading
    if p.is_exact:
        return sign * Fraction(res) / Fraction(lead)
    return sign * res / lead


def quartic_discriminant(q, r, s):
    """Discriminant of the depressed quartic ``u^4 + q u^2 + r u + s``."""
    return (-4 * q**3 * r**2 - 27 * r**4 + 16 * q**4 * s + 144 * q * r**2 * s
            - 128 * q**2 * s**2 + 256 * s**3)


# --------------------------------------------------------------------------
# root finding


def _horner_newton_ratio(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    n = len(c) - 1
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) <= 1
    if small.any():
        zs = z[small]
        p = np.full_like(zs, c[-1])
        dp = np.zeros_like(zs)
        for k in range(n - 1, -1, -1):
            dp = dp * zs + p
            p = p * zs + c[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[small] = p / dp
    big = ~small
    if big.any():
        # p(z) = z^n r(w) with w = 1/z and r the reversed polynomial
        zb = z[big]
        w = 1 / zb
        rc = c[::-1]
        r = np.full_like(w, rc[-1])
        dr = np.zeros_like(w)
        for k in range(n - 1, -1, -1):
            dr = dr * w + r
            r = r * w + rc[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[big] = zb * r / (n * r - w * dr)
    return out


def _horner_relative_residual(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    az = np.abs(z)
    ac = np.abs(c)
    out = np.empty(z.shape, dtype=float)
    small = az <= 1
    for mask, zz, cc, aa in (
        (small, z, c, ac),
        (~small, None, c[::-1], ac[::-1]),
    ):
        if not mask.any():
            continue
        if zz is None:
            zz = 1 / z[mask]
        else:
            zz = zz[mask]
        azz = np.abs(zz)
        p = np.full_like(zz, cc[-1])
        pa = np.full(zz.shape, aa[-1])
        for k in range(len(cc) - 2, -1, -1):
            p = p * zz + cc[k]
            pa = pa * azz + aa[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[mask] = np.where(pa > 0, np.abs(p) / pa, 0.0)
    return out


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial with multiplicity estimates and residuals.

    ``residuals`` are relative: ``|p(z)| / sum_k |c_k| |z|^k``.
    """

    roots: np.ndarray
    multiplicities: tuple[int, ...]
    residuals: np.ndarray
    iterations: int = 0
    converged: bool = True

    @property
    def max_imag(self) -> float:
        if len(self.roots) == 0:
            return 0.0
        return float(np.max(np.abs(self.roots.imag)))

    @property
    def scale(self) -> float:
        if len(self.roots) == 0:
            return 1.0
        return max(1.0, float(np.max(np.abs(self.roots))))

    def __len__(self):
        return len(self.roots)


def _initial_guesses(n: int, radius: float) -> np.ndarray:
    k = np.arange(n)
    # irrational angular offset and a mild radial wobble break symmetry
    theta = 2 * np.pi * k / n + 0.4
    rad = radius * (1 + 0.01 * np.cos(3.7 * k))
    return rad * np.exp(1j * theta)


def aberth(p: Poly, *, max_iter: int = 200, step_tol: float = 1e-14,
           radius: float | None = None) -> tuple[np.ndarray, int, bool]:
    """Aberth-Ehrlich simultaneous iteration.

    Returns ``(roots, iterations, converged)``.  A root is frozen once its
    correction drops below ``step_tol * radius``, once the polynomial value
    there is at rounding level, or once small corrections stop shrinking
    (the usual fate of multiple roots).
    """
    n = p.degree
    if radius is None:
        radius = p.root_bound()
    radius = max(float(radius), 1e-300)
    z = _initial_guesses(n, radius)
    active = np.ones(n, dtype=bool)
    prev = np.full(n, np.inf)
    it = 0
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        za = z[idx]
        ratio = p.newton_ratio(za)
        diff = za[:, None] - z[None, :]
        diff[np.arange(len(idx)), idx] = 1.0
        s = (1.0 / diff).sum(axis=1) - 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        z[idx] = za - w
        aw = np.abs(w)
        done = aw < step_tol * radius
        done |= (aw < 1e-7 * radius) & (aw > 0.9 * prev[idx])
        prev[idx] = aw
        if not done.all():
            rest = ~done
            done[rest] = p.at_noise_floor(z[idx[rest]])
        active[idx[done]] = False
        if not active.any():
            return z, it, True
    return z, it, False


def _symmetrize(z: np.ndarray, pair_tol: float) -> np.ndarray:
    """Pair each upper-half-plane root with its nearest lower-half mate."""
    z = z.copy()
    upper = [i for i in range(len(z)) if z[i].imag > 0]
    lower = set(i for i in range(len(z)) if z[i].imag < 0)
    upper.sort(key=lambda i: -z[i].imag)
    for i in upper:
        if not lower:
            break
        j = min(lower, key=lambda k: abs(z[i] - np.conj(z[k])))
        if abs(z[i] - np.conj(z[j])) <= pair_tol:
            m = 0.5 * (z[i] + np.conj(z[j]))
            z[i], z[j] = m, np.conj(m)
            lower.discard(j)
    return z


def _clusters(z: np.ndarray, radius: float) -> list[list[int]]:
    """Single-linkage clusters of points closer than ``radius``."""
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    order = np.argsort(z.real, kind="stable")
    for a in range(n):
        i = order[a]
        for b in range(a + 1, n):
            j = order[b]
            if z[j].real - z[i].real > radius:
                break
            if abs(z[i] - z[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def cluster_multiplicities(z: np.ndarray, radius: float) -> tuple[int, ...]:
    """Every root gets the size of its single-linkage cluster."""
    mult = [1] * len(z)
    for g in _clusters(np.asarray(z, dtype=complex), radius):
        for i in g:
            mult[i] = len(g)
    return tuple(mult)


def _multiplicity_radius(m: int, base: float) -> float:
    # an m-fold root computed in double precision spreads over ~eps^(1/m)
    return max(base, 10 * EPS ** (1.0 / min(m, 4)))


def merge_multiple_roots(z: np.ndarray, scale: float, cluster_tol: float = 1e-7,
                         real_input: bool = False) -> tuple[np.ndarray, tuple[int, ...]]:
    """Detect numerically multiple roots and replace them by their centroid.

    A loose cluster of size ``m`` is accepted when its diameter is within
    the spread an ``m``-fold root shows in double precision and it sits
    well apart from every other root; otherwise it is re-split at
    ``cluster_tol``.  For real input a cluster that overlaps its own mirror
    image is centred on the real axis.
    """
    z = np.asarray(z, dtype=complex).copy()
    mult = [1] * len(z)
    loose = _multiplicity_radius(4, cluster_tol) * scale
    for g in _clusters(z, loose):
        if len(g) == 1:
            continue
        pts = z[g]
        diam = max(abs(a - b) for a in pts for b in pts)
        others = np.delete(z, g)
        gap = (np.min(np.abs(pts[:, None] - others[None, :]))
               if len(others) else np.inf)
        rad = _multiplicity_radius(len(g), cluster_tol) * scale
        if diam <= rad and gap > 100 * diam:
            subgroups = [(g, rad)]
        else:
            subgroups = [([g[k] for k in sg], cluster_tol * scale)
                         for sg in _clusters(pts, cluster_tol * scale)]
        for sg, rad in subgroups:
            if len(sg) > 1:
                c = z[sg].mean()
                if real_input and abs(c.imag) <= rad:
                    c = complex(c.real, 0.0)
                z[sg] = c
            for i in sg:
                mult[i] = len(sg)
    return z, tuple(mult)


def find_roots(p: Poly, *, max_iter: int = 200, pair_tol: float = 1e-9,
               cluster_tol: float = 1e-7) -> RootSet:
    """All complex roots of ``p`` by Aberth iteration.

    Numerically multiple roots are merged to their centroid, and real input
    gets conjugate-symmetric output.  Raises :class:`NoConvergence` (with
    the partial result attached) if the sweep budget is exhausted.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot find roots of the zero polynomial")
    n = p.degree
    if n < 1:
        raise ValueError("find_roots needs degree >= 1")
    if n == 1:
        c0, c1 = (complex(c) for c in p.coeffs)
        z = np.array([-c0 / c1])
        if not isinstance(p, ComplexPoly):
            z = z.real.astype(complex)
        return RootSet(z, (1,), p.relative_residual(z), 0, True)
    z, it, ok = aberth(p, max_iter=max_iter)
    scale = max(1.0, float(np.max(np.abs(z))))
    z, mult = merge_multiple_roots(z, scale, cluster_tol,
                                   real_input=not isinstance(p, ComplexPoly))
    if not isinstance(p, ComplexPoly):
        z = _symmetrize(z, pair_tol * scale)
    order = np.lexsort((z.imag, z.real))
    z = z[order]
    mult = tuple(mult[i] for i in order)
    rs = RootSet(z, mult, p.relative_residual(z), it, ok)
    if not ok:
        raise NoConvergence(f"Aberth iteration did not converge in {max_iter} sweeps "
                            f"(degree {n})", partial=rs)
    return rs


def is_real_rooted(p: Poly, tol: float = 1e-8, **kw) -> tuple[bool, float]:
    """Numerical real-rootedness test.

    True iff every root has ``|Im| <= tol * max(1, max|root|)``.  Returns the
    largest ``|Im|`` too.
    """
    rs = find_roots(p, **kw)
    mi = rs.max_imag
    return mi <= tol * rs.scale, mi


# --------------------------------------------------------------------------
# quartic root patterns


class RootPattern(str, enum.Enum):
    """Root configuration of a real quartic ``u^4 + q u^2 + r u + s``."""

    TWO_REAL_PAIR_COMPLEX = "TwoRealPairComplex"
    FOUR_DISTINCT_REAL = "FourDistinctReal"
    ALL_COMPLEX_DISTINCT = "AllComplexDistinct"
    DOUBLE_REAL_PLUS_COMPLEX_PAIR = "DoubleRealPlusComplexPair"
    ONE_DOUBLE_TWO_REAL_SIMPLE = "OneDoubleTwoRealSimple"
    TWO_DOUBLE_REAL = "TwoDoubleReal"
    TRIPLE_REAL_PLUS_SIMPLE = "TripleRealPlusSimple"
    TWO_DOUBLE_COMPLEX_PAIRS = "TwoDoubleComplexPairs"
    QUADRUPLE_REAL = "QuadrupleReal"

    @property
    def all_real(self) -> bool:
        return self in _REAL_PATTERNS

    @property
    def has_repeated(self) -> bool:
        return self not in (RootPattern.TWO_REAL_PAIR_COMPLEX,
                            RootPattern.FOUR_DISTINCT_REAL,
                            RootPattern.ALL_COMPLEX_DISTINCT)


_REAL_PATTERNS = frozenset({
    RootPattern.FOUR_DISTINCT_REAL,
    RootPattern.ONE_DOUBLE_TWO_REAL_SIMPLE,
    RootPattern.TWO_DOUBLE_REAL,
    RootPattern.TRIPLE_REAL_PLUS_SIMPLE,
    RootPattern.QUADRUPLE_REAL,
})


def _div(x, k):
    return Fraction(x) / k if _is_exact(x) else x / k


def quartic_character(q, r, s) -> RootPattern:
    """Root pattern of ``u^4 + q u^2 + r u + s`` from the discriminant sign
    and the sub-conditions on ``q``, ``s`` and ``r``.

    Comparisons are exact when the inputs are rationals.
    """
    d = quartic_discriminant(q, r, s)
    quarter = _div(q * q, 4)
    twelfth = _div(q * q, 12)
    if d < 0:
        return RootPattern.TWO_REAL_PAIR_COMPLEX
    if d > 0:
        if q < 0 and s < quarter:
            return RootPattern.FOUR_DISTINCT_REAL
        return RootPattern.ALL_COMPLEX_DISTINCT
    # d == 0: at least one repeated root
    if q < 0:
        if s > quarter:
            return RootPattern.DOUBLE_REAL_PLUS_COMPLEX_PAIR
        if s == quarter:
            return RootPattern.TWO_DOUBLE_REAL
        if s == -twelfth:
            return RootPattern.TRIPLE_REAL_PLUS_SIMPLE
        return RootPattern.ONE_DOUBLE_TWO_REAL_SIMPLE
    if q > 0:
        if r == 0 and s == quarter:
            return RootPattern.TWO_DOUBLE_COMPLEX_PAIRS
        return RootPattern.DOUBLE_REAL_PLUS_COMPLEX_PAIR
    if s == 0:
        return RootPattern.QUADRUPLE_REAL
    return RootPattern.DOUBLE_REAL_PLUS_COMPLEX_PAIR


def pattern_from_roots(roots: Sequence[complex], *, imag_tol: float = 1e-8,
                       cluster_tol: float = 1e-6) -> RootPattern:
    """Classify four numerical roots into a :class:`RootPattern`.

    Independent of the discriminant casework; used as its oracle.
    """
    z = np.asarray(roots, dtype=complex)
    if len(z) != 4:
        raise ValueError("pattern_from_roots expects exactly four roots")
    scale = max(1.0, float(np.max(np.abs(z))))
    real = np.abs(z.imag) <= imag_tol * scale
    mult = cluster_multiplicities(z, cluster_tol * scale)
    nreal = int(real.sum())
    msorted = sorted(mult, reverse=True)
    if nreal == 4:
        if msorted[0] == 4:
            return RootPattern.QUADRUPLE_REAL
        if msorted[0] == 3:
            return RootPattern.TRIPLE_REAL_PLUS_SIMPLE
        if msorted == [2, 2, 2, 2]:
            return RootPattern.TWO_DOUBLE_REAL
        if msorted[0] == 2:
            return RootPattern.ONE_DOUBLE_TWO_REAL_SIMPLE
        return RootPattern.FOUR_DISTINCT_REAL
    if nreal == 2:
        rm = [m for m, re in zip(mult, real) if re]
        if max(rm) == 2:
            return RootPattern.DOUBLE_REAL_PLUS_COMPLEX_PAIR
        return RootPattern.TWO_REAL_PAIR_COMPLEX
    if max(mult) >= 2:
        return RootPattern.TWO_DOUBLE_COMPLEX_PAIRS
    return RootPattern.ALL_COMPLEX_DISTINCT
