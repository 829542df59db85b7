"""The five-term polynomial family and its parameter triple.

``P_n(z) = z P_{n-1} + alpha P_{n-2} + beta P_{n-3} + gamma P_{n-4}`` with
``P_0 = 1`` and ``P_{-1} = P_{-2} = P_{-3} = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .polycore import RealPoly, _is_exact


class GammaZero(ValueError):
    """gamma must be nonzero."""


def parse_number(text: str) -> Fraction | float:
    """Parse ``"p/q"`` or an integer as a Fraction, anything else as float."""
    t = text.strip()
    if "/" in t:
        num, den = t.split("/", 1)
        return Fraction(int(num), int(den))
    try:
        return Fraction(int(t))
    except ValueError:
        return float(t)


def _normalize(x):
    if isinstance(x, bool):
        raise TypeError("boolean is not a parameter value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_number(x)
    if isinstance(x, Real):
        return float(x)
    raise TypeError(f"unsupported parameter type {type(x).__name__}")


@dataclass(frozen=True)
class SymbolParams:
    """The triple (alpha, beta, gamma).

    Integers and strings like ``"-27/4"`` become Fractions; floats stay
    floats.  ``exact`` is true when all three are rational.
    """

    alpha: Fraction | float
    beta: Fraction | float
    gamma: Fraction | float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, _normalize(getattr(self, name)))
        if self.gamma == 0:
            raise GammaZero("gamma must be nonzero")

    @property
    def exact(self) -> bool:
        return all(_is_exact(x) for x in self.as_tuple())

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)

    def as_floats(self) -> tuple[float, float, float]:
        return tuple(float(x) for x in self.as_tuple())

    def scale(self, t) -> "SymbolParams":
        """Weighted scaling ``(a t^2, b t^3, g t^4)``."""
        if not t > 0:
            raise ValueError("scale factor must be positive")
        if not self.exact or not _is_exact(t):
            a, b, g = self.as_floats()
            t = float(t)
            return SymbolParams(a * t**2, b * t**3, g * t**4)
        t = Fraction(t)
        return SymbolParams(self.alpha * t**2, self.beta * t**3, self.gamma * t**4)

    def to_float(self) -> "SymbolParams":
        return SymbolParams(*self.as_floats())

    def __str__(self):
        return f"({self.alpha}, {self.beta}, {self.gamma})"


def spectral_bound(params: SymbolParams) -> tuple[float, float]:
    """Row-sum bound on the spectrum of every section ``T_n``.

    ``T_n`` is similar to ``D T_n D^-1`` with ``D = diag(rho^k)``, whose
    rows sum (in modulus) to at most
    ``1/rho + |a| rho + |b| rho^2 + |g| rho^3``.  Returns the minimum over
    ``rho`` together with the minimizing ``rho``.
    """
    a, b, g = (abs(x) for x in params.as_floats())

    def f(lr):
        r = np.exp(lr)
        return 1 / r + a * r + b * r * r + g * r**3

    grid = np.linspace(-12.0, 12.0, 481)
    lr = grid[np.argmin(f(grid))]
    lo, hi = lr - 0.05, lr + 0.05
    for _ in range(60):  # golden-section refinement; f is convex in log rho
        m1 = hi - 0.618 * (hi - lo)
        m2 = lo + 0.618 * (hi - lo)
        if f(m1) < f(m2):
            hi = m2
        else:
            lo = m1
    lr = 0.5 * (lo + hi)
    return float(f(lr)), float(np.exp(lr))


class RecurrencePoly(RealPoly):
    """``P_n`` with its coefficients plus recurrence-based evaluation.

    Monomial coefficients of ``P_n`` are badly conditioned for root finding
    at large ``n``; running the recurrence directly at each point is not.
    """

    __slots__ = ("params", "n")

    def __init__(self, coeffs, params: SymbolParams, n: int):
        super().__init__(coeffs)
        self.params = params
        self.n = n

    def __eq__(self, other):
        if isinstance(other, RealPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = RealPoly.__hash__

    def __reduce__(self):
        return (RecurrencePoly, (self.coeffs, self.params, self.n))

    def root_bound(self) -> float:
        return spectral_bound(self.params)[0]

    def _run(self, z: np.ndarray, with_abs: bool):
        a, b, g = self.params.as_floats()
        z = np.asarray(z, dtype=complex)
        one = np.ones_like(z)
        zero = np.zeros_like(z)
        p = [one, zero, zero, zero]  # P_{m-1}, P_{m-2}, P_{m-3}, P_{m-4}
        d = [zero, zero, zero, zero]
        if with_abs:
            az = np.abs(z)
            aa, ab, ag = abs(a), abs(b), abs(g)
            q = [np.ones(z.shape), np.zeros(z.shape), np.zeros(z.shape), np.zeros(z.shape)]
        for _ in range(self.n):
            pn = z * p[0] + a * p[1] + b * p[2] + g * p[3]
            dn = p[0] + z * d[0] + a * d[1] + b * d[2] + g * d[3]
            p = [pn, p[0], p[1], p[2]]
            d = [dn, d[0], d[1], d[2]]
            if with_abs:
                qn = az * q[0] + aa * q[1] + ab * q[2] + ag * q[3]
                q = [qn, q[0], q[1], q[2]]
                s = np.maximum(qn, 1.0)
                q = [x / s for x in q]
            else:
                s = np.maximum(np.abs(pn), 1.0)
            # common rescaling keeps ratios and avoids overflow
            p = [x / s for x in p]
            d = [x / s for x in d]
        if with_abs:
            return p[0], d[0], q[0]
        return p[0], d[0], None

    def newton_ratio(self, z):
        p, d, _ = self._run(z, False)
        with np.errstate(divide="ignore", invalid="ignore"):
            return p / d

    def at_noise_floor(self, z):
        # the absolute-value recurrence bound is far too loose off the real
        # axis to serve as a stopping test
        return np.zeros(np.shape(z), dtype=bool)

    def relative_residual(self, z):
        p, _, q = self._run(z, True)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(q > 0, np.abs(p) / q, 0.0)

    def evaluate(self, z):
        """Evaluate ``P_n(z)`` by running the recurrence (no rescaling)."""
        a, b, g = self.params.as_floats()
        z = np.asarray(z, dtype=complex)
        p = [np.ones_like(z), 0 * z, 0 * z, 0 * z]
        for _ in range(self.n):
            p = [z * p[0] + a * p[1] + b * p[2] + g * p[3], p[0], p[1], p[2]]
        return p[0]


def _coefficient_sequence(params: SymbolParams, n_max: int) -> list[list]:
    a, b, g = params.as_tuple() if params.exact else params.as_floats()
    zero = Fraction(0) if params.exact else 0.0
    one = Fraction(1) if params.exact else 1.0
    seq = [[one]]
    for m in range(1, n_max + 1):
        c = [zero] * (m + 1)
        for i, v in enumerate(seq[m - 1]):
            c[i + 1] += v
        for k, w in ((2, a), (3, b), (4, g)):
            if m - k >= 0 and w != 0:
                for i, v in enumerate(seq[m - k]):
                    c[i] += w * v
        seq.append(c)
    return seq


def generate_sequence(params: SymbolParams, n_max: int) -> list[RecurrencePoly]:
    """``P_0, ..., P_{n_max}``; exact coefficients when ``params.exact``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    seq = _coefficient_sequence(params, n_max)
    return [RecurrencePoly(c, params, m) for m, c in enumerate(seq)]


def generate_pn(params: SymbolParams, n: int) -> RecurrencePoly:
    """The monic degree-``n`` polynomial ``P_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return RecurrencePoly(_coefficient_sequence(params, n)[n], params, n)
