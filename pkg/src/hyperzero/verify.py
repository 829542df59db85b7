"""Cross-checks of the classifier against numerical oracles."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .classifier import Classification, classify
from .netcurve import detect_enclosure
from .polycore import NoConvergence, find_roots
from .recurrence import SymbolParams, generate_pn, spectral_bound
from .toeplitz import build_tn, eigenvalues, limiting_set

SCHEMA = "hyperzero/1"


def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


@dataclass(frozen=True)
class CheckRecord:
    """One oracle comparison.

    ``agree`` is None when the oracle could not decide (a finite scan that
    found no non-real point for a false verdict).
    """

    name: str
    setting: dict
    predicate: bool
    oracle: bool | None
    value: float | None
    agree: bool | None
    boundary_exempt: bool = False

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "setting": {k: _num(v) for k, v in self.setting.items()},
            "predicate": self.predicate,
            "oracle": self.oracle,
            "value": _num(self.value),
            "agree": self.agree,
            "boundary_exempt": self.boundary_exempt,
        }


@dataclass(frozen=True)
class VerificationReport:
    params: SymbolParams
    classification: Classification
    checks: tuple[CheckRecord, ...]
    boundary: bool
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> bool:
        return all(c.agree is not False for c in self.checks if not c.boundary_exempt)

    @property
    def inconclusive(self) -> bool:
        return any(c.agree is None for c in self.checks)

    def check(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "params": {k: _num(v) for k, v in zip(("alpha", "beta", "gamma"),
                                                  self.params.as_tuple())},
            "classification": self.classification.to_dict(),
            "boundary": self.boundary,
            "notes": list(self.notes),
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def on_boundary(params: SymbolParams) -> list[str]:
    """Names of the defining expressions that vanish exactly."""
    a, b, g = (Fraction(x) for x in params.as_tuple())
    c = classify(params)
    hits = []
    for name, val in (("disc_g", c.disc_g), ("disc_w", c.disc_w),
                      ("disc_h", c.disc_h), ("L", c.diagnostics["L"])):
        if Fraction(val) == 0:
            hits.append(name)
    if g == -a * a / 36 or g == a * a / 12:
        hits.append("gamma-band")
    return hits


def _indices(n_max: int) -> list[int]:
    ns = list(range(10, n_max + 1, 10))
    if not ns or ns[-1] != n_max:
        ns.append(n_max)
    return ns


def verify_params(params: SymbolParams, n_max: int = 60, tol: float = 1e-6,
                  resolution: int = 512, limset_resolution: int = 200,
                  limset_eps: float = 1e-2, curve: bool = True,
                  limset: bool = True) -> VerificationReport:
    """Run every oracle against :func:`classify`.

    For a true verdict each oracle must see real data.  For a false one the
    polynomial check agrees only when some scanned ``P_n`` has a root with
    ``|Im| > 10 tol`` (relative); finding none is inconclusive.
    """
    if n_max < 4:
        raise ValueError("n_max must be >= 4")
    cls = classify(params)
    verdict = cls.verdict
    hits = on_boundary(params)
    boundary = bool(hits)
    notes = [f"on boundary: {', '.join(hits)}"] if boundary else []
    rtol = tol * 1e3 if boundary else tol
    checks: list[CheckRecord] = []

    # polynomial roots across n
    worst, worst_n = 0.0, None
    for n in _indices(n_max):
        try:
            rs = find_roots(generate_pn(params, n))
        except NoConvergence as exc:
            raise NoConvergence(f"roots of P_{n}: {exc}", getattr(exc, "partial", None)) from exc
        rel = rs.max_imag / rs.scale
        if rel > worst:
            worst, worst_n = rel, n
        if not verdict and rel > 10 * rtol:
            break
    if verdict:
        oracle, agree = worst <= rtol, worst <= rtol
    else:
        oracle = False if worst > 10 * rtol else None
        agree = True if oracle is False else None
    checks.append(CheckRecord("roots", {"n_max": n_max, "worst_n": worst_n, "tol": rtol},
                              verdict, oracle, worst, agree))

    # Toeplitz section spectrum through its own determinant expansion; the
    # dense QR value is kept as a diagnostic since rounding in a strongly
    # non-normal section pushes its eigenvalues off the axis
    t = build_tn(params, n_max)
    try:
        spec = eigenvalues(t)
    except NoConvergence as exc:
        raise NoConvergence(f"eigenvalues of T_{n_max}: {exc}", exc.partial) from exc
    dense = eigenvalues(t, "dense-eigen")
    rel = spec.max_imag / max(1.0, spec.spectral_radius)
    if verdict:
        oracle = rel <= rtol
        agree = oracle
    else:
        oracle = False if rel > 10 * rtol else None
        agree = True if oracle is False else None
    checks.append(CheckRecord(
        "spectrum", {"n": n_max, "tol": rtol,
                     "dense_max_imag": dense.max_imag / max(1.0, dense.spectral_radius)},
        verdict, oracle, rel, agree))

    if curve:
        enc = detect_enclosure(params, resolution=resolution)
        if enc.inconclusive:
            oracle, agree = None, (None if not verdict else False)
        else:
            oracle = enc.encloses
            agree = oracle == verdict
        checks.append(CheckRecord(
            "curve", {"resolution": resolution, "box": list(enc.box),
                      "simple": enc.simple},
            verdict, oracle, None, agree, boundary_exempt=boundary))

    if limset:
        r = spectral_bound(params)[0]
        box = (-r, r, -r, r)
        ls = limiting_set(params, box, limset_resolution, limset_eps)
        lim = 2 * ls.step
        real = ls.max_abs_imag <= lim
        if verdict:
            oracle, agree = real, real
        else:
            oracle = False if not real else None
            agree = True if oracle is False else None
        checks.append(CheckRecord(
            "limiting_set", {"resolution": limset_resolution, "eps": limset_eps,
                             "half_width": r, "count": ls.count, "skipped": ls.skipped},
            verdict, oracle, ls.max_abs_imag, agree, boundary_exempt=boundary))

    return VerificationReport(params, cls, tuple(checks), boundary, tuple(notes))


# --------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class Region:
    """Sampling box.  ``kind="abg"`` samples (alpha, beta, gamma) directly;
    ``kind="gv"`` samples (gamma, v) at fixed beta with
    ``alpha = (v + beta^2/4) / gamma``."""

    kind: str = "abg"
    alpha: tuple[float, float] = (-8.0, 2.0)
    beta: tuple[float, float] = (-3.0, 3.0)
    gamma: tuple[float, float] = (-3.0, 3.0)
    v: tuple[float, float] = (-0.3, 0.6)
    beta_fixed: float = 1.0

    def __post_init__(self):
        if self.kind not in ("abg", "gv"):
            raise ValueError("kind must be 'abg' or 'gv'")


def _grid_value(rng, lo, hi, den=1000) -> Fraction:
    return Fraction(int(round(rng.uniform(lo, hi) * den)), den)


def sample_params(region: Region, samples: int, seed: int = 0) -> list[SymbolParams]:
    """Deterministic parameter points with 3-decimal rational coordinates."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < samples:
        if region.kind == "abg":
            a = _grid_value(rng, *region.alpha)
            b = _grid_value(rng, *region.beta)
            g = _grid_value(rng, *region.gamma)
        else:
            b = Fraction(region.beta_fixed).limit_denominator(10**6)
            g = _grid_value(rng, *region.gamma)
            v = _grid_value(rng, *region.v)
            if g == 0:
                continue
            a = (v + b * b / 4) / g
        if g == 0:
            continue
        out.append(SymbolParams(a, b, g))
    return out


def sweep(region: Region, samples: int, n_check: int = 40, seed: int = 0,
          tol: float = 1e-6, workers: int = 1, **kw) -> list[VerificationReport]:
    """Verify ``samples`` seeded points; output ordered by sample index."""
    pts = sample_params(region, samples, seed)

    def one(p):
        return verify_params(p, n_check, tol, **kw)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, pts))
    return [one(p) for p in pts]


def reports_to_json(reports) -> str:
    return json.dumps({"schema": SCHEMA, "reports": [r.to_dict() for r in reports],
                       "overall": all(r.overall for r in reports)},
                      indent=2, sort_keys=True)
