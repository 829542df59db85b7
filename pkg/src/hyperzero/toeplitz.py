"""Banded Toeplitz sections T_n(b) for b(z) = -1/z + a z - b z^2 + g z^3.

Entry (i, j) of ``T_n`` is ``a_{i-j}`` with ``a_{-1} = -1``, ``a_1 = alpha``,
``a_2 = -beta``, ``a_3 = gamma``; every other diagonal is zero.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .polycore import RealPoly, RootSet, find_roots
from .recurrence import SymbolParams, spectral_bound


@dataclass(frozen=True)
class BandedToeplitz:
    """An ``n x n`` section with finitely many nonzero diagonals.

    ``bands`` maps the offset ``k = i - j`` to the diagonal value.
    """

    n: int
    bands: Mapping[int, object]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("section size must be >= 1")

    def entry(self, i: int, j: int):
        return self.bands.get(i - j, 0)

    @property
    def upper_width(self) -> int:
        return max(0, -min(self.bands))

    @property
    def lower_width(self) -> int:
        return max(0, max(self.bands))

    def symbol_coefficients(self) -> dict[int, object]:
        """Laurent coefficients of the symbol, ``{power: coefficient}``."""
        return {k: v for k, v in sorted(self.bands.items()) if v != 0}

    def symbol(self, z):
        return sum(v * z**k for k, v in self.bands.items())

    def to_dense(self, rho: float = 1.0) -> np.ndarray:
        """Float matrix of ``D T D^-1`` with ``D = diag(rho^i)``.

        ``rho = 1`` gives ``T`` itself; the spectrum is the same for every
        positive ``rho``.
        """
        m = np.zeros((self.n, self.n))
        for k, v in self.bands.items():
            val = float(v) * rho**k
            if k >= 0:
                idx = np.arange(k, self.n)
                m[idx, idx - k] = val
            else:
                idx = np.arange(0, self.n + k)
                m[idx, idx - k] = val
        return m


def build_tn(params: SymbolParams, n: int) -> BandedToeplitz:
    """Section ``T_n(b)`` for the symbol of ``params``."""
    a, b, g = params.as_tuple()
    return BandedToeplitz(n, {-1: Fraction(-1) if params.exact else -1.0,
                              1: a, 2: -b, 3: g})


# --------------------------------------------------------------------------
# characteristic polynomial by expansion along the last row


def _hessenberg_terms(t: BandedToeplitz):
    """Coefficients of the last-row expansion of ``det(zI - T_k)``.

    For a matrix with a single superdiagonal,
    ``D_k = sum_j (-1)^(k+j) m_kj prod_{l=j}^{k-1} m_{l,l+1} D_{j-1}``
    with ``M = zI - T``.  Returns, per lag ``d = k - j >= 1``, the constant
    ``(-1)^d * (-a_d) * (-a_{-1})^d``; the lag-0 term is ``z``.
    """
    if t.upper_width > 1:
        raise ValueError("expansion requires at most one superdiagonal")
    sup = -t.bands.get(-1, 0)  # m_{l,l+1}
    terms = {}
    for d in range(1, t.lower_width + 1):
        ad = t.bands.get(d, 0)
        if ad == 0:
            continue
        terms[d] = (-1) ** d * (-ad) * sup**d
    return terms, -t.bands.get(0, 0)


class CharPoly(RealPoly):
    """``det(zI - T_n)``: exact coefficients plus pointwise evaluation by
    the same last-row expansion, run in floating point."""

    __slots__ = ("terms", "shift", "n", "_bound")

    def __init__(self, coeffs, terms, shift, n, bound):
        super().__init__(coeffs)
        self.terms = {d: float(c) for d, c in terms.items()}
        self.shift = float(shift)
        self.n = n
        self._bound = bound

    def __eq__(self, other):
        if isinstance(other, RealPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = RealPoly.__hash__

    def root_bound(self) -> float:
        return self._bound

    def _run(self, z):
        z = np.asarray(z, dtype=complex)
        w = max(self.terms, default=0)
        hist = [np.ones_like(z)] + [np.zeros_like(z)] * w
        dhist = [np.zeros_like(z)] * (w + 1)
        for _ in range(self.n):
            dk = (z + self.shift) * hist[0]
            ddk = hist[0] + (z + self.shift) * dhist[0]
            for d, c in self.terms.items():
                dk = dk + c * hist[d]
                ddk = ddk + c * dhist[d]
            s = np.maximum(np.abs(dk), 1.0)
            hist = [x / s for x in [dk] + hist[:-1]]
            dhist = [x / s for x in [ddk] + dhist[:-1]]
        return hist[0], dhist[0]

    def newton_ratio(self, z):
        p, d = self._run(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            return p / d

    def at_noise_floor(self, z):
        return np.zeros(np.shape(z), dtype=bool)

    def relative_residual(self, z):
        # float Horner on the exact coefficients would be meaningless at high
        # degree; report |D_n(z)| / |D_n'(z)|, the Newton step length.
        return np.abs(self.newton_ratio(z))


def char_poly(t: BandedToeplitz) -> CharPoly:
    """``det(zI - T_n)`` computed from the matrix entries.

    Exact (Fraction) coefficients when the bands are exact.
    """
    terms, shift = _hessenberg_terms(t)
    exact = all(isinstance(v, (int, Fraction)) for v in t.bands.values())
    one = Fraction(1) if exact else 1.0
    zpoly = RealPoly([shift, one])
    hist = [RealPoly([one])]
    for _ in range(t.n):
        dk = zpoly * hist[0]
        for d, c in terms.items():
            if d < len(hist):
                dk = dk + c * hist[d]
        hist = [dk] + hist
    coeffs = hist[0].coeffs
    bound = _section_bound(t)
    return CharPoly(coeffs, terms, shift, t.n, bound)


def _section_bound(t: BandedToeplitz) -> float:
    b = t.bands
    if set(b) <= {-1, 0, 1, 2, 3} and float(b.get(-1, 0)) == -1.0 and b.get(0, 0) == 0:
        return spectral_bound(SymbolParams(b.get(1, 0), -b.get(2, 0), b.get(3, 0)))[0] \
            if b.get(3, 0) != 0 else _row_sum_bound(t)
    return _row_sum_bound(t)


def _row_sum_bound(t: BandedToeplitz) -> float:
    return float(sum(abs(float(v)) for v in t.bands.values())) or 1.0


# --------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    method: str

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.eigenvalues.imag))) if len(self.eigenvalues) else 0.0

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if len(self.eigenvalues) else 0.0

    def __len__(self):
        return len(self.eigenvalues)


def eigenvalues(t: BandedToeplitz, method: str = "char-poly-roots") -> SpectrumResult:
    """Spectrum of ``T_n``.

    ``"char-poly-roots"`` runs Aberth on :func:`char_poly`; ``"dense-eigen"``
    runs LAPACK's Hessenberg QR on a diagonally balanced copy of the
    matrix, an independent cross-check.
    """
    if method == "char-poly-roots":
        if t.n == 1:
            return SpectrumResult(np.array([complex(t.entry(0, 0))]), method)
        rs: RootSet = find_roots(char_poly(t))
        return SpectrumResult(rs.roots, method)
    if method == "dense-eigen":
        rho = _balancing_rho(t)
        ev = np.linalg.eigvals(t.to_dense(rho)).astype(complex)
        order = np.lexsort((ev.imag, ev.real))
        return SpectrumResult(ev[order], method)
    raise ValueError(f"unknown method {method!r}")


def _balancing_rho(t: BandedToeplitz) -> float:
    b = t.bands
    if b.get(3, 0) != 0 and float(b.get(-1, 0)) == -1.0:
        return spectral_bound(SymbolParams(b.get(1, 0), -b.get(2, 0), b[3]))[1]
    return 1.0


# --------------------------------------------------------------------------
# limiting set


@dataclass(frozen=True)
class LimitingSetSample:
    """Grid points ``lambda`` where the two smallest root moduli of
    ``z (b(z) - lambda)`` agree to within relative tolerance ``eps``."""

    box: tuple[float, float, float, float]
    resolution: int
    eps: float
    points: np.ndarray
    gaps: np.ndarray
    skipped: int

    @property
    def step(self) -> float:
        x0, x1, y0, y1 = self.box
        return max((x1 - x0), (y1 - y0)) / (self.resolution - 1)

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def max_abs_imag(self) -> float:
        return float(np.max(np.abs(self.points.imag))) if len(self.points) else 0.0


def modulus_gap(params: SymbolParams, lam: np.ndarray) -> np.ndarray:
    """Relative gap between the two smallest root moduli of
    ``g z^4 - b z^3 + a z^2 - lam z - 1``, as ``log(|z_(2)| / |z_(1)|)``.

    With one negative power in the symbol the limiting set is where the
    smallest and second smallest moduli coincide.  NaN where the root solve
    failed.
    """
    a, b, g = params.as_floats()
    lam = np.asarray(lam, dtype=complex).ravel()
    m = len(lam)
    comp = np.zeros((m, 4, 4), dtype=complex)
    # companion matrix of the monic quartic
    comp[:, 0, 0] = b / g
    comp[:, 0, 1] = -a / g
    comp[:, 0, 2] = lam / g
    comp[:, 0, 3] = 1.0 / g
    comp[:, 1, 0] = comp[:, 2, 1] = comp[:, 3, 2] = 1.0
    mods = np.sort(np.abs(np.linalg.eigvals(comp)), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        gap = np.log(mods[:, 1] / mods[:, 0])
    gap[~np.isfinite(gap)] = np.nan
    return gap


def limiting_set(params: SymbolParams, box=(-4.0, 4.0, -4.0, 4.0),
                 resolution: int = 400, eps: float = 1e-2,
                 workers: int = 1) -> LimitingSetSample:
    """Scan a ``resolution x resolution`` grid of ``lambda`` values.

    Rows are processed independently (in parallel when ``workers > 1``)
    and merged in row-major order.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if not eps >= 0:
        raise ValueError("eps must be nonnegative")
    x0, x1, y0, y1 = (float(v) for v in box)
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)

    def row(y):
        lam = xs + 1j * y
        return lam, modulus_gap(params, lam)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(row, ys))
    else:
        rows = [row(y) for y in ys]
    lam = np.concatenate([r[0] for r in rows])
    gap = np.concatenate([r[1] for r in rows])
    bad = np.isnan(gap)
    keep = ~bad & (gap <= eps)
    return LimitingSetSample((x0, x1, y0, y1), resolution, float(eps),
                             lam[keep], gap[keep], int(bad.sum()))
