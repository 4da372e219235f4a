"""Command-line interface: energies | wavefunction | thermo | validate.

Every emitted table begins with comment lines embedding the artifact
version and a hash of the canonical configuration, so identical configs
produce byte-identical files.  Floats are rendered with repr(), the
shortest round-trip representation.

The report path can additionally render the corresponding figures to PNG
files next to the delimited output (``--plot``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .config import RunConfig, config_hash, dump_config, parse_config
from .errors import KpgmError, ParseError, ValidationError
from .model import QuantumNumbers, map_dimensionless
from .spectrum import (
    energy,
    energy_simplified,
    nu_condition_residual,
    thermo_coefficients,
)
from .thermo import sweep_thermo, sweep_thermo_lam
from .validation import build_report
from .wavefunction import default_radial_grid, sample_states

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpgm",
        description="Kratzer plus generalized Morse model: energies, "
        "wavefunctions, vibrational thermodynamics, validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("energies", "bound-state energy table (both closed forms + residual)"),
        ("wavefunction", "radial wavefunction and probability-density samples"),
        ("thermo", "partition function and thermodynamic sweeps"),
        ("validate", "run the oracle suite and write a structured report"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the run configuration")
        p.add_argument("--out", help="output file (default: config 'output' or stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="override output format")
        p.add_argument(
            "--dry-run",
            action="store_true",
            help="echo the parsed configuration and exit",
        )
        p.add_argument(
            "--plot",
            action="store_true",
            help="render figures (PNG) next to the output file",
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        cfg = parse_config(text)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.dry_run:
        sys.stdout.write(dump_config(cfg))
        return EXIT_OK

    out = args.out or cfg.output
    fmt = args.format or cfg.format
    if args.plot and out is None:
        print("error: --plot needs --out (or config 'output')", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "energies":
            return _cmd_energies(cfg, out, fmt, args.plot)
        if args.command == "wavefunction":
            return _cmd_wavefunction(cfg, out, fmt, args.plot)
        if args.command == "thermo":
            return _cmd_thermo(cfg, out, fmt, args.plot)
        return _cmd_validate(cfg, out)
    except KpgmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OverflowError as exc:
        print(f"error: overflow: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


# ---------------------------------------------------------------------------
# table plumbing


def _meta_lines(cfg: RunConfig, extra: str = "") -> list[str]:
    lines = [f"# kpgm {__version__} config={config_hash(cfg)}"]
    if extra:
        lines.append(f"# {extra}")
    return lines


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(
    out: str | None,
    fmt: str,
    meta: list[str],
    header: list[str],
    rows: list[list],
) -> None:
    if fmt == "csv":
        body = "\n".join(
            meta + [",".join(header)] + [",".join(_fmt(v) for v in row) for row in rows]
        ) + "\n"
    else:
        payload = {
            "meta": [m.lstrip("# ") for m in meta],
            "columns": header,
            "rows": rows,
        }
        body = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(body)
    else:
        Path(out).write_text(body, encoding="utf-8")


# ---------------------------------------------------------------------------
# commands


def _cmd_energies(cfg: RunConfig, out: str | None, fmt: str, plot: bool) -> int:
    spec = cfg.molecule
    dm = map_dimensionless(spec, cfg.ell)
    coeffs = thermo_coefficients(spec, cfg.ell)
    rows = []
    for n in cfg.states:
        nq = QuantumNumbers(n, cfg.ell)
        e13 = energy(nq, spec)
        e23 = energy_simplified(n, coeffs)
        residual = nu_condition_residual(min(e13, 0.0), n, dm)
        rows.append([n, cfg.ell, e13, e23, residual])
    meta = _meta_lines(cfg, f"molecule={spec.name} ell={cfg.ell} n_max={coeffs.n_max!r}")
    _emit(out, fmt, meta, ["n", "ell", "E_eq13", "E_eq23", "nu_residual"], rows)
    if plot:
        from .figures import plot_energies

        plot_energies(rows, _plot_stem(out))
    return EXIT_OK


def _cmd_wavefunction(cfg: RunConfig, out: str | None, fmt: str, plot: bool) -> int:
    spec = cfg.molecule
    grid = default_radial_grid(spec.alpha)
    states = [QuantumNumbers(n, cfg.ell) for n in cfg.states]
    samples = sample_states(grid, states, spec, norm=cfg.norm)
    rows = [[s.n, s.ell, s.r, s.psi, s.rho] for s in samples]
    meta = _meta_lines(cfg, f"molecule={spec.name} ell={cfg.ell} norm={cfg.norm}")
    _emit(out, fmt, meta, ["n", "ell", "r", "psi", "rho"], rows)
    if plot:
        from .figures import plot_wavefunction

        plot_wavefunction(samples, _plot_stem(out))
    return EXIT_OK


def _cmd_thermo(cfg: RunConfig, out: str | None, fmt: str, plot: bool) -> int:
    spec = cfg.molecule
    coeffs = thermo_coefficients(spec, cfg.ell)
    lam = cfg.lam_min if cfg.lam_min is not None else None
    points = sweep_thermo(spec, cfg.ell, cfg.beta_values(), cfg.path, lam)
    if cfg.lam_steps > 1:
        points += sweep_thermo_lam(
            spec, cfg.ell, cfg.lam_values(), beta=cfg.beta_min, path="closed"
        )
    rows = [
        [p.beta, p.lam, p.path, p.z_re, p.z_im, p.u, p.c, p.s, p.f] for p in points
    ]
    meta = _meta_lines(
        cfg,
        f"molecule={spec.name} ell={cfg.ell} path={cfg.path} "
        f"lam={(lam if lam is not None else coeffs.n_max)!r} n_max={coeffs.n_max!r}",
    )
    _emit(out, fmt, meta, ["beta", "lam", "path", "Z_re", "Z_im", "U", "C", "S", "F"], rows)
    if plot:
        from .figures import plot_thermo

        plot_thermo(points, _plot_stem(out))
    return EXIT_OK


def _cmd_validate(cfg: RunConfig, out: str | None) -> int:
    report = build_report(cfg.molecule, cfg.ell, list(cfg.states))
    report["config"] = config_hash(cfg)
    body = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(body)
    else:
        Path(out).write_text(body, encoding="utf-8")
    if not report["ok"]:
        names = ", ".join(report["hard_failures"])
        print(f"validate: hard checks failed: {names}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


def _plot_stem(out: str | None) -> Path:
    assert out is not None
    path = Path(out)
    return path.with_suffix("")


if __name__ == "__main__":
    raise SystemExit(main())
