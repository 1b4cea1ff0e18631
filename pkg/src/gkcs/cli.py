"""Command-line front end.

Subcommands::

    gkcs spectrum      levels table (n, E_n, excitation, rho)
    gkcs cs            one coherent state: coefficients and observables
    gkcs stats-scan    x-grid scan of <N>, Q, F, g2 and the metric W
    gkcs geometry-scan x-grid scan of the metric and its two components
    gkcs quantize      operator matrix export for a chosen symbol
    gkcs validate      full identity suite; exit 0 iff everything passes

Common flags: --nu --beta --s --L --gamma --z-re --z-im --nmax --tol
--format {json,csv,svg} --out FILE.  Output is fully deterministic
(byte-identical across runs) with numbers serialized to 17 significant
digits; CSV is comma-delimited with a header row and LF line endings.
The environment variable GKCS_EVAL_BUDGET overrides the quadrature
evaluation budget.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical budget or truncation failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import coherent, geometry, quantize, spectrum, statistics
from .quadrature import BudgetExceededError
from .coherent import TruncationError
from .spectrum import ModelParams
from .suite import run_full_suite
from .verification import all_passed, format_table

_FORMATS = ("json", "csv", "svg")


def _fmt(value: float) -> str:
    """17-significant-digit decimal form, the frozen number format."""
    value = float(value)
    if value != value:
        return "NaN"
    if value == float("inf"):
        return "Infinity"
    if value == float("-inf"):
        return "-Infinity"
    return format(value, ".17g")


def _json_dump(obj, indent: int = 0) -> str:
    """Tiny JSON emitter so floats go out through :func:`_fmt`."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_json_dump(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {_json_dump(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if obj is None:
        return "null"
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _csv_text(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, (float, np.floating)) else str(v)
                              for v in row))
    return "\n".join(lines) + "\n"


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _svg_line_chart(title: str, xlabel: str, series: list[tuple[str, list, list]]) -> str:
    """Minimal deterministic SVG line chart (no plotting dependency)."""
    width, height, margin = 800, 500, 70
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    span_x, span_y = x_hi - x_lo, y_hi - y_lo
    y_lo -= 0.05 * span_y
    y_hi += 0.05 * span_y
    span_y = y_hi - y_lo

    def sx(x):
        return margin + (x - x_lo) / span_x * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y_lo) / span_y * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="28" text-anchor="middle" font-size="18">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
        f'<text x="{width // 2}" y="{height - 18}" text-anchor="middle" font-size="13">{xlabel}</text>',
    ]
    for k in range(6):
        xv = x_lo + span_x * k / 5.0
        yv = y_lo + span_y * k / 5.0
        parts.append(f'<text x="{sx(xv):.1f}" y="{height - margin + 18}" text-anchor="middle" '
                     f'font-size="11">{xv:.4g}</text>')
        parts.append(f'<text x="{margin - 8}" y="{sy(yv):.1f}" text-anchor="end" '
                     f'font-size="11">{yv:.4g}</text>')
    for i, (name, xs, ys) in enumerate(series):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{width - margin + 4}" y="{margin + 16 * i + 10}" font-size="12" '
                     f'fill="{color}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _svg_bar_chart(title: str, labels: list[int], values: list[float]) -> str:
    width, height, margin = 800, 500, 70
    v_hi = max(values) if values else 1.0
    if v_hi <= 0.0:
        v_hi = 1.0
    bar_w = (width - 2 * margin) / max(len(values), 1)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="28" text-anchor="middle" font-size="18">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
    ]
    for i, (lab, val) in enumerate(zip(labels, values)):
        h = (height - 2 * margin) * val / (1.05 * v_hi)
        x0 = margin + i * bar_w
        parts.append(f'<rect x="{x0 + 1:.2f}" y="{height - margin - h:.2f}" '
                     f'width="{bar_w - 2:.2f}" height="{h:.2f}" fill="#1f77b4"/>')
        if len(labels) <= 40 or i % 5 == 0:
            parts.append(f'<text x="{x0 + bar_w / 2:.1f}" y="{height - margin + 16}" '
                         f'text-anchor="middle" font-size="10">{lab}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _params_dict(p: ModelParams) -> dict:
    return {"nu": p.nu, "beta": p.beta, "s": p.scale_s, "L": p.box_L}


def _parse_grid(spec: str) -> list[float]:
    try:
        start, stop, step = (float(v) for v in spec.split(":"))
    except ValueError:
        raise ValueError(f"grid must be start:stop:step, got {spec!r}") from None
    if step <= 0.0 or stop < start:
        raise ValueError("grid requires step > 0 and stop >= start")
    count = int((stop - start) / step + 1e-9) + 1
    return [start + k * step for k in range(count)]


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(sub: argparse.ArgumentParser, formats=_FORMATS, default_format="json"):
    sub.add_argument("--nu", type=float, required=True, help="barrier strength parameter (>= 0)")
    sub.add_argument("--beta", type=float, default=0.0, help="tilt parameter (>= 0)")
    sub.add_argument("--s", type=float, default=1.0, help="energy scale 2 M eps0 = (pi hbar/L)^2")
    sub.add_argument("--L", type=float, default=1.0, help="box length")
    sub.add_argument("--format", choices=formats, default=default_format)
    sub.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkcs",
        description="Poschl-Teller spectra, Gazeau-Klauder coherent states, and quantization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="levels table")
    _add_common(sp, formats=("json", "csv"))
    sp.add_argument("--levels", type=int, default=8)

    cs = sub.add_parser("cs", help="one coherent state")
    _add_common(cs)
    cs.add_argument("--z-re", type=float, default=1.0)
    cs.add_argument("--z-im", type=float, default=0.0)
    cs.add_argument("--gamma", type=float, default=0.0)
    cs.add_argument("--tol", type=float, default=1e-12, help="truncation tail tolerance")

    for name in ("stats-scan", "geometry-scan"):
        sc = sub.add_parser(name, help=f"{name.split('-')[0]} scan over x = |z|^2")
        _add_common(sc)
        sc.add_argument("--x", default="0:5:0.1", help="grid start:stop:step")
        sc.add_argument("--gamma", type=float, default=0.0)

    qz = sub.add_parser("quantize", help="operator matrix export")
    _add_common(qz, formats=("json", "csv"))
    qz.add_argument("--symbol", choices=("z", "zbar", "monomial", "boson-a", "boson-adag"),
                    default="z")
    qz.add_argument("--alpha", type=int, default=1, help="z power for --symbol monomial")
    qz.add_argument("--sigma", type=int, default=0, help="zbar power for --symbol monomial")
    qz.add_argument("--gamma", type=float, default=0.0)
    qz.add_argument("--nmax", type=int, default=quantize.DEFAULT_N_MAX)

    va = sub.add_parser("validate", help="run the full identity suite")
    _add_common(va, formats=("table", "json"), default_format="table")
    va.add_argument("--z-re", type=float, default=1.3)
    va.add_argument("--z-im", type=float, default=0.4)
    va.add_argument("--gamma", type=float, default=0.4)
    va.add_argument("--nmax", type=int, default=32, help="radial-identity matrix size")
    return parser


def _cmd_spectrum(args, p: ModelParams) -> int:
    if args.levels < 1:
        raise ValueError("--levels must be >= 1")
    points = [spectrum.spectral_point(p, n) for n in range(args.levels)]
    if args.format == "csv":
        rows = [[pt.n, pt.energy, pt.excitation, pt.rho] for pt in points]
        _emit(_csv_text(["n", "E_n", "excitation", "rho"], rows), args.out)
    else:
        payload = {
            "command": "spectrum",
            "params": _params_dict(p),
            "levels": [
                {"n": pt.n, "E_n": pt.energy, "excitation": pt.excitation, "rho": pt.rho}
                for pt in points
            ],
        }
        _emit(_json_dump(payload) + "\n", args.out)
    return 0


def _cmd_cs(args, p: ModelParams) -> int:
    z = complex(args.z_re, args.z_im)
    state = coherent.make_state(p, z, args.gamma, tail_tol=args.tol)
    probs = np.abs(state.coeffs) ** 2
    if args.format == "csv":
        rows = [[n, state.coeffs[n].real, state.coeffs[n].imag, probs[n]]
                for n in range(state.n_max + 1)]
        _emit(_csv_text(["n", "coeff_re", "coeff_im", "probability"], rows), args.out)
    elif args.format == "json":
        sigma_x, sigma_p = statistics.quadrature_variances(state)
        payload = {
            "command": "cs",
            "params": _params_dict(p),
            "z_re": z.real,
            "z_im": z.imag,
            "gamma": state.gamma,
            "n_max": state.n_max,
            "tail_tol": state.tail_bound,
            "norm_weight": float(np.sum(probs)),
            "action": coherent.action_identity(state),
            "mean_N": statistics.mean_N(p, state.x),
            "mandel_Q": statistics.mandel_Q(p, state.x),
            "fano": statistics.fano(p, state.x),
            "g2": statistics.g2(p, state.x),
            "sigma_X": sigma_x,
            "sigma_P": sigma_p,
            "delta_H": statistics.delta_H(state),
            "coefficients": [
                {"n": n, "re": state.coeffs[n].real, "im": state.coeffs[n].imag,
                 "probability": float(probs[n])}
                for n in range(state.n_max + 1)
            ],
        }
        _emit(_json_dump(payload) + "\n", args.out)
    else:
        _emit(_svg_bar_chart(
            f"quantum distribution at |z|^2 = {state.x:.6g}",
            list(range(state.n_max + 1)), [float(v) for v in probs]), args.out)
    return 0


_STATS_COLUMNS = ["x", "mean_N", "mandel_Q", "fano", "g2", "fubini_W"]
_GEOMETRY_COLUMNS = ["x", "fubini_W", "bundle_term", "projection_term"]


def _cmd_stats_scan(args, p: ModelParams) -> int:
    grid = _parse_grid(args.x)
    rows = []
    for x in grid:
        rows.append([
            x,
            statistics.mean_N(p, x),
            statistics.mandel_Q(p, x),
            statistics.fano(p, x),
            statistics.g2(p, x),
            geometry.fubini_metric(p, x),
        ])
    if args.format == "csv":
        _emit(_csv_text(_STATS_COLUMNS, rows), args.out)
    elif args.format == "json":
        payload = {
            "command": "stats-scan",
            "params": _params_dict(p),
            "columns": _STATS_COLUMNS,
            "rows": [[v for v in row] for row in rows],
        }
        _emit(_json_dump(payload) + "\n", args.out)
    else:
        xs = [r[0] for r in rows]
        series = [(name, xs, [r[i] for r in rows])
                  for i, name in enumerate(_STATS_COLUMNS) if i > 0]
        _emit(_svg_line_chart("number statistics scan", "x = |z|^2", series), args.out)
    return 0


def _cmd_geometry_scan(args, p: ModelParams) -> int:
    grid = _parse_grid(args.x)
    rows = []
    for x in grid:
        bundle, projection = geometry.metric_components(p, x)
        rows.append([x, geometry.fubini_metric(p, x), bundle, projection])
    if args.format == "csv":
        _emit(_csv_text(_GEOMETRY_COLUMNS, rows), args.out)
    elif args.format == "json":
        payload = {
            "command": "geometry-scan",
            "params": _params_dict(p),
            "columns": _GEOMETRY_COLUMNS,
            "rows": [[v for v in row] for row in rows],
        }
        _emit(_json_dump(payload) + "\n", args.out)
    else:
        xs = [r[0] for r in rows]
        series = [(name, xs, [r[i] for r in rows])
                  for i, name in enumerate(_GEOMETRY_COLUMNS) if i > 0]
        _emit(_svg_line_chart("coherent-state metric scan", "x = |z|^2", series), args.out)
    return 0


def _cmd_quantize(args, p: ModelParams) -> int:
    if args.nmax < 1:
        raise ValueError("--nmax must be >= 1")
    if args.symbol == "z":
        op = quantize.op_z(p, args.gamma, args.nmax)
    elif args.symbol == "zbar":
        op = quantize.op_zbar(p, args.gamma, args.nmax)
    elif args.symbol == "monomial":
        op = quantize.op_monomial(p, args.alpha, args.sigma, args.gamma, args.nmax)
    elif args.symbol == "boson-a":
        op = quantize.rescaled_boson(p, args.gamma, args.nmax)[0]
    else:
        op = quantize.rescaled_boson(p, args.gamma, args.nmax)[1]
    if args.format == "json":
        payload = {
            "command": "quantize",
            "params": _params_dict(p),
            "symbol": op.symbol,
            "gamma": op.gamma,
            "dim": op.dim,
            "entries": [
                [[op.entries[i, j].real, op.entries[i, j].imag] for j in range(op.dim)]
                for i in range(op.dim)
            ],
        }
        _emit(_json_dump(payload) + "\n", args.out)
    elif args.format == "csv":
        rows = []
        for i in range(op.dim):
            for j in range(op.dim):
                v = op.entries[i, j]
                if v != 0:
                    rows.append([i, j, v.real, v.imag])
        _emit(_csv_text(["row", "col", "re", "im"], rows), args.out)
    return 0


def _cmd_validate(args, p: ModelParams) -> int:
    reports = run_full_suite(p, complex(args.z_re, args.z_im), args.gamma,
                             n_max_radial=args.nmax)
    if args.format == "json":
        payload = {
            "command": "validate",
            "params": _params_dict(p),
            "all_passed": all_passed(reports),
            "reports": [
                {"identity": r.identity, "residual": r.residual,
                 "tolerance": r.tolerance, "passed": r.passed, "detail": r.detail}
                for r in reports
            ],
        }
        _emit(_json_dump(payload) + "\n", args.out)
    else:
        summary = "ALL IDENTITIES VERIFIED" if all_passed(reports) else "VERIFICATION FAILURES"
        _emit(format_table(reports) + "\n" + summary + "\n", args.out)
    return 0 if all_passed(reports) else 1


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "cs": _cmd_cs,
    "stats-scan": _cmd_stats_scan,
    "geometry-scan": _cmd_geometry_scan,
    "quantize": _cmd_quantize,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        p = ModelParams(nu=args.nu, beta=args.beta, scale_s=args.s, box_L=args.L)
        return _DISPATCH[args.command](args, p)
    except (BudgetExceededError, TruncationError) as exc:
        print(f"gkcs: numerical budget failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"gkcs: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
