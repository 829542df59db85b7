"""Command-line front end.

Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or input
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
from fractions import Fraction

import numpy as np

from . import __version__
from .classifier import Omega, classify, critical_points, omega_region, singular_points
from .netcurve import Inconclusive, detect_enclosure
from .polycore import NoConvergence, find_roots
from .recurrence import GammaZero, SymbolParams, generate_pn, parse_number, spectral_bound
from .svg import Canvas, contour_segments
from .toeplitz import limiting_set
from .verify import SCHEMA, Region, reports_to_json, sweep, verify_params

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_VALUE_OPTS = {"-a", "--alpha", "-b", "--beta", "-g", "--gamma", "--box",
               "--v-range", "--gamma-range", "--alpha-range", "--beta-range"}
_NEG = re.compile(r"^-[\d.]")


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# helpers


def _fix_negative_values(argv: list[str]) -> list[str]:
    """Glue ``-a -27/4`` into ``-a=-27/4``; argparse would read the value as
    an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and _NEG.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _number(text: str):
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}") from exc


def _numbers(text: str) -> list:
    return [_number(t) for t in text.split(",") if t.strip()]


def _params(args) -> SymbolParams:
    if args.alpha is None or args.beta is None or args.gamma is None:
        raise UsageError("-a, -b and -g are required")
    try:
        return SymbolParams(_number(args.alpha), _number(args.beta), _number(args.gamma))
    except GammaZero as exc:
        raise UsageError(str(exc)) from exc


def _box(text: str | None):
    if text is None:
        return None
    vals = [float(_number(t)) for t in text.split(",")]
    if len(vals) != 4:
        raise UsageError("--box takes x0,x1,y0,y1")
    x0, x1, y0, y1 = vals
    if not (x1 > x0 and y1 > y0):
        raise UsageError("--box must have positive area")
    return (x0, x1, y0, y1)


def _fmt(x: float, prec: int) -> str:
    return f"{float(x):.{prec}g}"


def _jnum(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


def _params_json(p: SymbolParams) -> dict:
    return {k: _jnum(v) for k, v in zip(("alpha", "beta", "gamma"), p.as_tuple())}


def _doc(payload: dict, params: SymbolParams | None = None) -> str:
    doc = {"schema": SCHEMA}
    if params is not None:
        doc["params"] = _params_json(params)
        if not params.exact:
            doc["warning"] = "decimal input: float mode"
    doc.update(payload)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_output(text: str, path: str | None) -> None:
    """Write to stdout, or atomically to ``path`` (temp file + rename)."""
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        mask = os.umask(0)
        os.umask(mask)
        os.chmod(tmp, 0o666 & ~mask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _formats(args, allowed, default):
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"--format {fmt} not available here (choose from {', '.join(allowed)})")
    return fmt


# --------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    p = _params(args)
    _formats(args, ("json",), "json")
    c = classify(p)
    write_output(_doc(c.to_dict(), p), args.output)
    return EXIT_OK if c.verdict else EXIT_FALSE


def cmd_roots(args) -> int:
    p = _params(args)
    if args.n is None or args.n < 1:
        raise UsageError("-n must be >= 1")
    fmt = _formats(args, ("csv", "json"), "csv")
    try:
        rs = find_roots(generate_pn(p, args.n))
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    prec = args.precision
    if fmt == "csv":
        rows = [(_fmt(z.real, prec), _fmt(z.imag, prec), _fmt(r, 3))
                for z, r in zip(rs.roots, rs.residuals)]
        write_output(_csv(("re", "im", "residual"), rows), args.output)
    else:
        payload = {"n": args.n, "max_imag": rs.max_imag, "scale": rs.scale,
                   "roots": [[z.real, z.imag] for z in rs.roots],
                   "residuals": [float(r) for r in rs.residuals],
                   "multiplicities": [int(m) for m in rs.multiplicities]}
        write_output(_doc(payload, p), args.output)
    return EXIT_OK


def cmd_curve(args) -> int:
    p = _params(args)
    if args.res < 16:
        raise UsageError("--res must be >= 16")
    fmt = _formats(args, ("svg", "csv", "json"), "svg")
    box = _box(args.box)
    enc = detect_enclosure(p, box=box, resolution=args.res, enlarge=0 if box else 3)
    curve = enc.curve
    sing = singular_points(p)
    summary = {
        "encloses_origin": enc.encloses,
        "inconclusive": enc.inconclusive,
        "simple": enc.simple,
        "component": enc.component,
        "box": list(curve.box),
        "resolution": curve.resolution,
        "components": [{"closed": c.closed, "winding": c.winding,
                        "touches_boundary": c.touches_boundary,
                        "self_intersections": c.self_intersections,
                        "points": len(c.points)} for c in curve.components],
        "singular_points": [[x, y] for x, y in sing.coords()],
    }
    if fmt == "json":
        write_output(_doc(summary, p), args.output)
    elif fmt == "csv":
        prec = args.precision
        rows = [(i, _fmt(x, prec), _fmt(y, prec))
                for i, c in enumerate(curve.components) for x, y in c.points]
        write_output(_csv(("component", "x", "y"), rows), args.output)
    else:
        write_output(_curve_svg(p, enc, sing, args.roots_n), args.output)
        if args.output and args.output != "-":
            write_output(_doc(summary, p), args.output + ".json")
        else:
            sys.stderr.write(_doc(summary, p))
    if enc.inconclusive:
        print("error: enclosure inconclusive; enlarge the box", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _curve_svg(p, enc, sing, roots_n) -> str:
    curve = enc.curve
    cv = Canvas(curve.box, width=640)
    cv.axes()
    for i, comp in enumerate(curve.components):
        hot = i == enc.component
        cv.polyline(comp.points, stroke="#c0392b" if hot else "#1f4e9c",
                    width=2.0 if hot else 1.2)
    try:
        for z in critical_points(p).roots:
            if abs(z.imag) <= 1e-8 * max(1.0, abs(z)):
                cv.circle(z.real, 0.0, r=3.5, fill="#27ae60")
    except NoConvergence:
        pass
    for x, y in sing.coords():
        cv.circle(x, y, r=4.5, fill="none", stroke="#8e44ad", stroke_width=1.5)
    if roots_n:
        for z in find_roots(generate_pn(p, roots_n)).roots:
            cv.circle(z.real, z.imag, r=1.6, fill="#333")
    cv.circle(0.0, 0.0, r=3.0, fill="black")
    label = "encloses origin" if enc.encloses else (
        "inconclusive" if enc.inconclusive else "no enclosing curve")
    cv.frame_text(cv.margin, 16, f"S(x,y)=0 for {p}: {label}")
    return cv.to_string(title=f"net of b for {p}")


def cmd_limset(args) -> int:
    p = _params(args)
    if args.res < 2:
        raise UsageError("--res must be >= 2")
    if args.eps < 0:
        raise UsageError("--eps must be >= 0")
    fmt = _formats(args, ("csv", "json", "svg"), "csv")
    box = _box(args.box)
    if box is None:
        r = spectral_bound(p)[0]
        box = (-r, r, -r, r)
    ls = limiting_set(p, box, args.res, args.eps)
    summary = {"count": ls.count, "max_abs_imag": ls.max_abs_imag, "skipped": ls.skipped,
               "grid_step": ls.step, "box": list(ls.box), "resolution": ls.resolution,
               "eps": ls.eps}
    prec = args.precision
    if fmt == "csv":
        rows = [(_fmt(z.real, prec), _fmt(z.imag, prec), _fmt(g, prec))
                for z, g in zip(ls.points, ls.gaps)]
        write_output(_csv(("re", "im", "gap"), rows), args.output)
        sys.stderr.write(_doc(summary, p))
    elif fmt == "json":
        write_output(_doc(summary, p), args.output)
    else:
        cv = Canvas(ls.box, width=560)
        cv.axes()
        for z in ls.points:
            cv.circle(z.real, z.imag, r=1.2, fill="#1f4e9c")
        cv.frame_text(cv.margin, 16, f"limiting set sample for {p}: {ls.count} points")
        write_output(cv.to_string(title="limiting set"), args.output)
    return EXIT_OK


_OMEGA_COLOURS = {Omega.Omega1: "#8fd18f", Omega.Omega2: "#f2b179",
                  Omega.Omega3: "#9fc5e8", Omega.Omega4: "#e6e6e6", None: "#ffffff"}


def cmd_region_map(args) -> int:
    beta = _number(args.beta) if args.beta is not None else Fraction(1)
    if beta == 0:
        raise UsageError("beta must be nonzero")
    box = _box(args.box) if args.box else (-0.6, 0.0, -0.3, 0.6)
    g0, g1, v0, v1 = box
    g1 = min(g1, 0.0)
    if not g1 > g0:
        raise UsageError("--box must overlap gamma < 0")
    fmt = _formats(args, ("svg", "json"), "svg")
    res = max(8, args.res)
    gs = np.linspace(g0, g1, res + 1)
    vs = np.linspace(v0, v1, res + 1)
    gc = 0.5 * (gs[:-1] + gs[1:])
    vc = 0.5 * (vs[:-1] + vs[1:])
    tags = [[omega_region(g, v, beta) if g < 0 else None for g in gc] for v in vc]
    counts = {o.value: sum(row.count(o) for row in tags) for o in Omega}
    if fmt == "json":
        write_output(_doc({"beta": _jnum(beta), "box": list(box), "resolution": res,
                           "counts": counts,
                           "grid": [[t.value if t else None for t in row] for row in tags]}),
                     args.output)
        return EXIT_OK
    cv = Canvas((g0, g1, v0, v1), width=560)
    for j, row in enumerate(tags):
        i = 0
        while i < len(row):  # run-length rows of equal tag
            k = i
            while k + 1 < len(row) and row[k + 1] is row[i]:
                k += 1
            cv.rect(gs[i], vs[j], gs[k + 1], vs[j + 1], fill=_OMEGA_COLOURS[row[i]],
                    shape_rendering="crispEdges")
            i = k + 1
    b = float(beta)
    G, V = np.meshgrid(np.linspace(g0, g1, 2 * res + 1), np.linspace(v0, v1, 2 * res + 1))
    A = np.where(G != 0, (V + b * b / 4) / np.where(G != 0, G, 1), 0.0)
    dg = (3 * A**4 * G - A**3 * b**2 - 72 * A**2 * G**2 + 108 * A * b**2 * G
          - 27 * b**4 + 432 * G**3)
    cv.segments(contour_segments(dg, G[0], V[:, 0]), stroke="#333", width=1.2)
    dh = 4 * G**3 + V**2
    cv.segments(contour_segments(dh, G[0], V[:, 0]), stroke="#b03a2e", width=1.2)
    cv.line((g0, -b * b / 24), (g1, -b * b / 24), stroke="#555", width=0.8,
            stroke_dasharray="4 3")
    legend = ", ".join(f"{o.value} {c}" for o, c in
                       zip(Omega, (_OMEGA_COLOURS[o] for o in Omega)))
    cv.frame_text(cv.margin, 16, f"beta={beta}: {legend}", size=10)
    write_output(cv.to_string(title=f"Omega regions in the (gamma, v) plane, beta={beta}"),
                 args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    _formats(args, ("json",), "json")
    n_max = args.n if args.n is not None else 60
    if n_max < 4:
        raise UsageError("-n must be >= 4")
    try:
        if args.samples:
            region = Region(
                alpha=_range(args.alpha_range, (-8.0, 2.0)),
                beta=_range(args.beta_range, (-3.0, 3.0)),
                gamma=_range(args.gamma_range, (-3.0, 3.0)))
            reports = sweep(region, args.samples, n_max, seed=args.seed, tol=args.tol)
        else:
            if args.alpha is None or args.beta is None or args.gamma is None:
                raise UsageError("-a, -b and -g are required without --samples")
            triples = [(a, b, g) for a in _numbers(args.alpha) for b in _numbers(args.beta)
                       for g in _numbers(args.gamma)]
            reports = []
            for a, b, g in triples:
                try:
                    p = SymbolParams(a, b, g)
                except GammaZero as exc:
                    raise UsageError(str(exc)) from exc
                reports.append(verify_params(p, n_max, args.tol))
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if len(reports) == 1 and not args.samples:
        text = reports[0].to_json() + "\n"
    else:
        text = reports_to_json(reports) + "\n"
    write_output(text, args.output)
    return EXIT_OK if all(r.overall for r in reports) else EXIT_FALSE


def _range(text, default):
    if text is None:
        return default
    vals = [float(_number(t)) for t in text.split(",")]
    if len(vals) != 2 or not vals[1] > vals[0]:
        raise UsageError("ranges take lo,hi with lo < hi")
    return tuple(vals)


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperzero",
                                 description="Real-rootedness of a five-term recurrence.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, params=True):
        if params:
            sp.add_argument("-a", "--alpha", help="alpha (p/q or decimal)")
            sp.add_argument("-b", "--beta", help="beta (p/q or decimal)")
            sp.add_argument("-g", "--gamma", help="gamma (p/q or decimal), nonzero")
        sp.add_argument("-o", "--output", help="output path (default stdout)")
        sp.add_argument("--format", choices=("json", "csv", "svg"))
        sp.add_argument("--precision", type=int, default=12, help="significant digits")

    sp = sub.add_parser("classify", help="decide real-rootedness")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("roots", help="roots of P_n")
    common(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("curve", help="the net S(x, y) = 0")
    common(sp)
    sp.add_argument("--box", help="x0,x1,y0,y1")
    sp.add_argument("--res", type=int, default=512)
    sp.add_argument("-n", dest="roots_n", type=int, help="overlay the roots of P_n")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("limset", help="limiting-set scan")
    common(sp)
    sp.add_argument("--box", help="x0,x1,y0,y1 (default: spectral bound square)")
    sp.add_argument("--res", type=int, default=400)
    sp.add_argument("--eps", type=float, default=1e-2)
    sp.set_defaults(func=cmd_limset)

    sp = sub.add_parser("region-map", help="Omega regions in the (gamma, v) plane")
    common(sp, params=False)
    sp.add_argument("-b", "--beta", help="beta (nonzero, default 1)")
    sp.add_argument("--box", help="gamma0,gamma1,v0,v1")
    sp.add_argument("--res", type=int, default=200)
    sp.set_defaults(func=cmd_region_map)

    sp = sub.add_parser("verify", help="cross-check against numerical oracles")
    common(sp)
    sp.add_argument("-n", type=int, help="largest index checked (default 60)")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--samples", type=int, help="seeded sweep instead of one point")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--alpha-range")
    sp.add_argument("--beta-range")
    sp.add_argument("--gamma-range")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_fix_negative_values(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return EXIT_USAGE if code not in (0,) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Inconclusive,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
