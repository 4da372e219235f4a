"""Figure rendering for the CLI report path.

Renders the standard panels (wavefunction/density vs r, thermodynamic
functions vs beta or lam, level diagram) as PNG files next to the
delimited output.  CSV remains the data boundary; these are convenience
views of the same rows.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .thermo import ThermoPoint
from .wavefunction import RadialSample

_RC = {
    "figure.figsize": (6.0, 4.2),
    "figure.dpi": 130,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
    "legend.fontsize": 9,
}


def _save(fig, stem: Path, suffix: str) -> Path:
    target = stem.parent / f"{stem.name}_{suffix}.png"
    fig.savefig(target, bbox_inches="tight")
    plt.close(fig)
    return target


def plot_energies(rows: list[list], stem: Path) -> list[Path]:
    """Level diagram: both closed-form energies per n."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ns = [row[0] for row in rows]
        ax.plot(ns, [row[2] for row in rows], "o-", label="primary form")
        ax.plot(ns, [row[3] for row in rows], "s--", label="simplified form")
        ax.set_xlabel("n")
        ax.set_ylabel("E")
        ax.legend()
        return [_save(fig, stem, "levels")]


def plot_wavefunction(samples: list[RadialSample], stem: Path) -> list[Path]:
    """psi(r) and psi(r)^2 panels, one curve per state."""
    by_state: dict[tuple[int, int], list[RadialSample]] = {}
    for s in samples:
        by_state.setdefault((s.n, s.ell), []).append(s)
    out = []
    with plt.rc_context(_RC):
        for attr, suffix, label in (("psi", "psi", r"$\psi(r)$"), ("rho", "density", r"$|\psi(r)|^2$")):
            fig, ax = plt.subplots()
            for (n, ell), rows in sorted(by_state.items()):
                ax.plot(
                    [s.r for s in rows],
                    [getattr(s, attr) for s in rows],
                    label=f"n={n}, ell={ell}",
                )
            ax.set_xlabel("r")
            ax.set_ylabel(label)
            ax.legend()
            out.append(_save(fig, stem, suffix))
    return out


def plot_thermo(points: list[ThermoPoint], stem: Path) -> list[Path]:
    """Z, U, C, S, F against the swept variable (beta or lam)."""
    beta_rows = [p for p in points if p.path != "closed" or len({q.lam for q in points}) == 1]
    lam_rows = [p for p in points if p not in beta_rows]
    out = []
    with plt.rc_context(_RC):
        for rows, xattr in ((beta_rows, "beta"), (lam_rows, "lam")):
            if len(rows) < 2:
                continue
            fig, axes = plt.subplots(2, 3, figsize=(11, 6))
            panels = (
                ("z_re", "Z"),
                ("u", "U"),
                ("c", "C"),
                ("s", "S"),
                ("f", "F"),
            )
            xs = [getattr(p, xattr) for p in rows]
            for ax, (attr, label) in zip(axes.flat, panels):
                ax.plot(xs, [getattr(p, attr) for p in rows])
                ax.set_xlabel(xattr)
                ax.set_ylabel(label)
            axes.flat[-1].axis("off")
            fig.tight_layout()
            out.append(_save(fig, stem, f"thermo_{xattr}"))
    return out
