"""Command-line tool: compute root tables, localization reports, mode shapes,
and growth plots as CSV/SVG artifacts.

Commands: roots, verify, modes, growth.  Configuration comes from built-in
defaults (the experimentally measured aluminium-beam set), overridden by an
optional flat key=value config file with unit suffixes, overridden by CLI
flags.  Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 no roots
in the window, 4 localization precondition violated, 5 degenerate mode,
6 localization verdict false.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import BeamParameters, ValidationError, to_spectral_point, validate_parameters
from .freqeq import phi
from .modes import DegenerateModeError, evaluate_mode, normalize_L2, solve_mode
from .roots import (
    ConfigurationError,
    LocalizationPreconditionError,
    Target,
    closed_form_roots_half,
    pair_mutual_nearest,
    scan_roots,
    verify_localization,
)

__all__ = ["RunConfig", "load_config", "main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_NO_ROOTS = 3
EXIT_LOCALIZATION_PRECONDITION = 4
EXIT_DEGENERATE_MODE = 5
EXIT_VERDICT_FALSE = 6

_DEFAULT_RAW_PARAMS = {
    "l": "1.905 m",
    "l0": "1.4 m",
    "rho0": "2700 kg/m^3",
    "section_area": "2.25e-4 m^2",
    "E": "6.9e10 Pa",
    "I": "1.6875e-10 m^4",
    "m": "0.1 kg",
    "kappa": "7 N/mm",
}

_PARAM_KEYS = set(_DEFAULT_RAW_PARAMS) | {"rho"}
_SCALAR_KEYS = {
    "mu_min": float,
    "mu_max": float,
    "step": float,
    "epsilon": float,
    "threshold_M": float,
    "n_roots": int,
    "mode_samples": int,
    "out": str,
}


@dataclass
class RunConfig:
    params: BeamParameters
    mu_min: float = 0.1
    mu_max: float = 38.5
    step: Optional[float] = None
    epsilon: float = 0.35
    threshold_M: float = 10.0
    n_roots: Optional[int] = None
    mode_samples: int = 401
    out: str = "out"
    quiet: bool = False

    def __post_init__(self):
        if not (0.0 < self.mu_min < self.mu_max):
            raise ConfigurationError(
                f"window must satisfy 0 < mu_min < mu_max, got ({self.mu_min}, {self.mu_max})"
            )
        if self.n_roots is not None and self.n_roots < 1:
            raise ConfigurationError(f"n_roots must be >= 1, got {self.n_roots}")
        if self.mode_samples < 2:
            raise ConfigurationError(f"mode_samples must be >= 2, got {self.mode_samples}")

    @property
    def scan_step(self) -> float:
        return self.step if self.step is not None else math.pi / (80.0 * self.params.length)


def _parse_config_file(path: str) -> dict:
    entries: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ConfigurationError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, value = (part.strip() for part in text.split("=", 1))
            if key in entries:
                raise ConfigurationError(f"{path}:{lineno}: duplicate key {key!r}")
            entries[key] = value
    return entries


def load_config(
    config_path: Optional[str] = None, overrides: Optional[dict] = None, quiet: bool = False
) -> RunConfig:
    """Resolve built-in defaults, an optional config file, and flag overrides."""
    raw_params = dict(_DEFAULT_RAW_PARAMS)
    scalars: dict = {}
    if config_path is not None:
        file_entries = _parse_config_file(config_path)
        if "rho" in file_entries:
            raw_params.pop("rho0", None)
            raw_params.pop("section_area", None)
        for key, value in file_entries.items():
            if key in _PARAM_KEYS:
                raw_params[key] = value
            elif key in _SCALAR_KEYS:
                try:
                    scalars[key] = _SCALAR_KEYS[key](value)
                except ValueError:
                    raise ConfigurationError(f"config key {key!r}: bad value {value!r}") from None
            else:
                raise ConfigurationError(f"unknown config key {key!r}")
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in _PARAM_KEYS:
            raw_params[key] = value
        else:
            scalars[key] = value
    if "rho" in raw_params:
        raw_params.pop("rho0", None)
        raw_params.pop("section_area", None)
    params = validate_parameters(raw_params)
    return RunConfig(params=params, quiet=quiet, **scalars)


def fmt9(value) -> str:
    """9-significant-digit decimal formatting used by every artifact."""
    return f"{float(value):.9g}"


def _round9(value: Optional[float]):
    return None if value is None else float(fmt9(value))


class SvgPlot:
    """Minimal deterministic SVG writer: axes, polylines, markers, legend."""

    def __init__(self, title: str, xlabel: str, ylabel: str, width=720, height=480):
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel
        self.width, self.height = width, height
        self.margin = 60
        self.series: list = []

    def add_line(self, xs, ys, label: str, color: str):
        self.series.append(("line", np.asarray(xs, float), np.asarray(ys, float), label, color))

    def add_points(self, xs, ys, label: str, color: str):
        self.series.append(("points", np.asarray(xs, float), np.asarray(ys, float), label, color))

    def _ranges(self):
        xs = np.concatenate([s[1] for s in self.series if s[1].size])
        ys = np.concatenate([s[2] for s in self.series if s[2].size])
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ys.min()), float(ys.max())
        if x1 - x0 < 1e-12:
            x0, x1 = x0 - 0.5, x1 + 0.5
        if y1 - y0 < 1e-12:
            y0, y1 = y0 - 0.5, y1 + 0.5
        pad_x, pad_y = 0.04 * (x1 - x0), 0.06 * (y1 - y0)
        return x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y

    def render(self) -> str:
        m, w, h = self.margin, self.width, self.height
        x0, x1, y0, y1 = self._ranges()

        def px(x):
            return m + (x - x0) / (x1 - x0) * (w - 2 * m)

        def py(y):
            return h - m - (y - y0) / (y1 - y0) * (h - 2 * m)

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">',
            f'<rect width="{w}" height="{h}" fill="white"/>',
            f'<text x="{w / 2:.1f}" y="24" text-anchor="middle" font-size="16">{self.title}</text>',
            f'<text x="{w / 2:.1f}" y="{h - 12}" text-anchor="middle" font-size="13">{self.xlabel}</text>',
            f'<text x="16" y="{h / 2:.1f}" text-anchor="middle" font-size="13" '
            f'transform="rotate(-90 16 {h / 2:.1f})">{self.ylabel}</text>',
            f'<rect x="{m}" y="{m}" width="{w - 2 * m}" height="{h - 2 * m}" '
            f'fill="none" stroke="black" stroke-width="1"/>',
        ]
        for i in range(5):
            tx = x0 + (x1 - x0) * i / 4
            ty = y0 + (y1 - y0) * i / 4
            parts.append(
                f'<line x1="{px(tx):.2f}" y1="{h - m}" x2="{px(tx):.2f}" y2="{h - m + 5}" stroke="black"/>'
                f'<text x="{px(tx):.2f}" y="{h - m + 18}" text-anchor="middle" font-size="11">{tx:.4g}</text>'
            )
            parts.append(
                f'<line x1="{m - 5}" y1="{py(ty):.2f}" x2="{m}" y2="{py(ty):.2f}" stroke="black"/>'
                f'<text x="{m - 8}" y="{py(ty):.2f}" text-anchor="end" dominant-baseline="middle" '
                f'font-size="11">{ty:.4g}</text>'
            )
        for kind, xs, ys, label, color in self.series:
            if kind == "line":
                pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
                parts.append(
                    f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
                )
            else:
                for x, y in zip(xs, ys):
                    parts.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="{color}"/>')
        for i, (_, _, _, label, color) in enumerate(self.series):
            ly = m + 16 + 16 * i
            parts.append(
                f'<rect x="{w - m - 130}" y="{ly - 9}" width="12" height="12" fill="{color}"/>'
                f'<text x="{w - m - 112}" y="{ly}" font-size="12" dominant-baseline="middle">{label}</text>'
            )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def _write_text(out_dir, name: str, text: str) -> None:
    import os

    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _csv(rows, header) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if v is None else (v if isinstance(v, str) else fmt9(v)) for v in row))
    return "\n".join(lines) + "\n"


def _resolve_window(config: RunConfig):
    """Return (mu_min, mu_max, exact_roots) honoring an n_roots request."""
    if config.n_roots is None:
        exact = scan_roots(Target.Phi, config.params, config.mu_min, config.mu_max, config.scan_step)
        return config.mu_min, config.mu_max, exact
    gap = math.pi / config.params.length
    hi = config.mu_min + 1.1 * gap * (config.n_roots + 1)
    for _ in range(12):
        exact = scan_roots(Target.Phi, config.params, config.mu_min, hi, config.scan_step)
        if len(exact) >= config.n_roots:
            kept = exact[: config.n_roots]
            if len(exact) > config.n_roots:
                hi = 0.5 * (kept[-1].mu + exact[config.n_roots].mu)
            else:
                hi = kept[-1].mu + 0.5 * gap
            return config.mu_min, hi, kept
        hi *= 1.5
    raise ConfigurationError(
        f"could not find {config.n_roots} roots above mu_min = {config.mu_min}"
    )


def cmd_roots(config: RunConfig) -> int:
    lo, hi, exact = _resolve_window(config)
    truncated = scan_roots(Target.Phi0, config.params, lo, hi, config.scan_step)
    if not exact and not truncated:
        print("no roots found in the requested window", file=sys.stderr)
        return EXIT_NO_ROOTS
    rows = []
    j = 0
    for mu_e, mu_t, status in pair_mutual_nearest(
        [r.mu for r in exact], [r.mu for r in truncated]
    ):
        nu_e = to_spectral_point(mu_e, config.params).nu if mu_e is not None else None
        nu_t = to_spectral_point(mu_t, config.params).nu if mu_t is not None else None
        gap = abs(mu_e - mu_t) if (mu_e is not None and mu_t is not None) else None
        if mu_e is not None:
            j += 1
            rows.append((str(j), mu_t, mu_e, nu_t, nu_e, status, gap))
        else:
            rows.append(("", mu_t, None, nu_t, None, status, None))
    _write_text(
        config.out,
        "roots.csv",
        _csv(rows, ("j", "mu_bar", "mu", "nu_bar_hz", "nu_hz", "pairing_status", "abs_gap")),
    )
    if not config.quiet:
        print(f"wrote {config.out}/roots.csv: {len(exact)} exact, {len(truncated)} truncated roots")
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    report = verify_localization(
        config.params, config.epsilon, config.threshold_M, config.mu_max, config.scan_step
    )
    payload = {
        "verdict": report.verdict,
        "epsilon": _round9(report.epsilon),
        "threshold_M": _round9(report.threshold_M),
        "mu_max": _round9(config.mu_max),
        "warning": report.warning,
        "rational_attachment_ratio": (
            None
            if report.rational_ratio is None
            else {"p": report.rational_ratio[0], "q": report.rational_ratio[1]}
        ),
        "margins": {
            "min_abs_phi0_complement": _round9(report.min_abs_phi0_complement),
            "min_abs_phi0_prime_at_anchors": _round9(report.min_abs_phi0_prime_neighborhoods),
        },
        "pairings": [
            {
                "truncated_root": _round9(p.truncated_root),
                "exact_root": _round9(p.exact_root),
                "distance": _round9(p.distance),
                "status": p.status.value,
            }
            for p in report.pairings
        ],
        "stray_exact_roots": [_round9(s) for s in report.stray_roots],
    }
    _write_text(config.out, "localization.json", json.dumps(payload, indent=2, sort_keys=True) + "\n")
    if report.warning and not config.quiet:
        print(f"warning: {report.warning}", file=sys.stderr)
    if not config.quiet:
        print(f"wrote {config.out}/localization.json: verdict {report.verdict}")
    return EXIT_OK if report.verdict else EXIT_VERDICT_FALSE


def cmd_modes(config: RunConfig, indices) -> int:
    lo, hi, exact = _resolve_window(config)
    if not exact:
        print("no roots found in the requested window", file=sys.stderr)
        return EXIT_NO_ROOTS
    bad = [j for j in indices if not (1 <= j <= len(exact))]
    if bad:
        raise ConfigurationError(
            f"mode index(es) {bad} outside the computed root list (1..{len(exact)})"
        )
    plot = SvgPlot("Normalized eigenmodes", "x [m]", "u(x)")
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    xs = np.linspace(0.0, config.params.length, config.mode_samples)
    for k, j in enumerate(indices):
        mode = normalize_L2(solve_mode(exact[j - 1], config.params))
        u = evaluate_mode(mode, xs)
        _write_text(config.out, f"mode_{j}.csv", _csv(zip(xs, u), ("x", "u")))
        plot.add_line(xs, u, f"mode {j} (mu={mode.mu:.4f})", colors[k % len(colors)])
    _write_text(config.out, "modes.svg", plot.render())
    if not config.quiet:
        print(f"wrote {config.out}/modes.svg and {len(indices)} mode CSVs")
    return EXIT_OK


def cmd_growth(config: RunConfig) -> int:
    lo, hi, exact = _resolve_window(config)
    truncated = scan_roots(Target.Phi0, config.params, lo, hi, config.scan_step)
    if not exact and not truncated:
        print("no roots found in the requested window", file=sys.stderr)
        return EXIT_NO_ROOTS
    n = max(len(exact), len(truncated))
    rows = []
    for i in range(n):
        mu_e = exact[i].mu if i < len(exact) else None
        mu_t = truncated[i].mu if i < len(truncated) else None
        rows.append((str(i + 1), mu_e, mu_t))
    _write_text(config.out, "growth.csv", _csv(rows, ("j", "mu", "mu_bar")))
    plot = SvgPlot("Spectral parameter growth", "j", "mu [1/m]")
    if exact:
        plot.add_points(range(1, len(exact) + 1), [r.mu for r in exact], "exact", "#1f77b4")
    if truncated:
        plot.add_points(
            range(1, len(truncated) + 1), [r.mu for r in truncated], "truncated", "#d62728"
        )
    l, l0 = config.params.length, config.params.attachment_point
    if truncated and abs(l - 2.0 * l0) <= 1e-12 * l:
        closed = closed_form_roots_half(l, len(truncated))
        plot.add_line(range(1, len(closed) + 1), closed, "closed form (midspan)", "#2ca02c")
    _write_text(config.out, "growth.svg", plot.render())
    if not config.quiet:
        print(f"wrote {config.out}/growth.csv and growth.svg ({n} indices)")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shakerbeam",
        description="Eigenfrequencies and eigenmodes of a hinged beam with a mass-spring attachment",
    )
    parser.add_argument("--config", help="flat key=value config file with unit suffixes")
    parser.add_argument("--out", help="output directory (default: out)")
    parser.add_argument("--quiet", action="store_true", help="suppress progress messages")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        # accept the global flags after the command name too; SUPPRESS keeps
        # a pre-command value from being clobbered by the subparser default
        p.add_argument("--config", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        p.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        p.add_argument(
            "--quiet", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS
        )
        p.add_argument("--l0", type=float, help="attachment point override [m]")
        p.add_argument("--n-roots", type=int, dest="n_roots", help="target exact-root count")
        p.add_argument("--mu-min", type=float, dest="mu_min", help="window lower edge [1/m]")
        p.add_argument("--mu-max", type=float, dest="mu_max", help="window upper edge [1/m]")
        p.add_argument("--step", type=float, help="scan step override [1/m]")
        p.add_argument("--epsilon", type=float, help="localization neighborhood radius [1/m]")
        p.add_argument("--threshold", type=float, dest="threshold_M", help="localization threshold M [1/m]")

    for name, text in (
        ("roots", "scan both characteristic equations and write the paired root table"),
        ("verify", "check the asymptotic root-localization structure"),
        ("modes", "reconstruct, normalize, sample, and plot eigenmodes"),
        ("growth", "plot spectral parameter growth vs index"),
    ):
        p = sub.add_parser(name, help=text)
        add_common(p)
        if name == "modes":
            p.add_argument(
                "indices",
                type=int,
                nargs="*",
                default=[1, 2, 3, 4],
                help="1-based mode indices (default: 1 2 3 4)",
            )
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        overrides = {
            key: getattr(args, key, None)
            for key in ("l0", "n_roots", "mu_min", "mu_max", "step", "epsilon", "threshold_M")
        }
        if args.out is not None:
            overrides["out"] = args.out
        config = load_config(args.config, overrides, quiet=args.quiet)
        if args.command == "roots":
            return cmd_roots(config)
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "modes":
            return cmd_modes(config, args.indices)
        return cmd_growth(config)
    except (ValidationError, ConfigurationError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LocalizationPreconditionError as exc:
        print(f"localization precondition: {exc}", file=sys.stderr)
        return EXIT_LOCALIZATION_PRECONDITION
    except DegenerateModeError as exc:
        print(f"degenerate mode: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE_MODE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
