"""Figures for simulation reports, rendered to files with the Agg backend."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .dynamics import Diagnostics, SimState  # noqa: E402


def _drift(values: np.ndarray) -> np.ndarray:
    ref = values[0]
    scale = abs(ref) if ref != 0 else 1.0
    return np.abs(values - ref) / scale


def plot_drift(rows: Sequence[Diagnostics], path: str | Path) -> Path:
    """Relative drift of every conserved quantity against time (log scale)."""
    t = np.array([r.time for r in rows])
    series = {
        "area": [r.area for r in rows],
        "H (points)": [r.hamiltonian for r in rows],
        "P_x": [r.impulse[0] for r in rows],
        "P_y": [r.impulse[1] for r in rows],
        "L": [r.angular_impulse for r in rows],
    }
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for name, vals in series.items():
        v = np.asarray(vals, dtype=float)
        if not np.isfinite(v).all():
            continue
        d = _drift(v)
        # floor at machine precision so exact conservation still shows up
        ax.semilogy(t, np.maximum(d, 1e-17), label=name)
    ax.set_xlabel("t")
    ax.set_ylabel("relative drift")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _draw(ax, state: SimState, style: str, label: str):
    loop = state.loop_part
    if loop is not None:
        p = loop.curve.points
        closed = np.vstack([p, p[:1]])
        ax.plot(closed[:, 0], closed[:, 1], style, lw=1.2, label=f"loop ({label})")
        if state.mark_nodes.size:
            m = p[state.mark_nodes]
            ax.plot(m[:, 0], m[:, 1], "o", ms=5, mfc="none", color=ax.lines[-1].get_color())
    if state.config is not None:
        x = state.config.points
        ax.scatter(x[:, 0], x[:, 1], s=18, marker="x", label=f"points ({label})")


def plot_states(initial: SimState, final: SimState, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    _draw(ax, initial, "-", f"t={initial.time:g}")
    _draw(ax, final, "--", f"t={final.time:g}")
    ax.set_aspect("equal")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("vortex elements")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def figure_paths(csv_path: str | Path) -> tuple[Path, Path]:
    p = Path(csv_path)
    stem = p.with_suffix("")
    return Path(f"{stem}_drift.png"), Path(f"{stem}_state.png")


__all__ = ["plot_drift", "plot_states", "figure_paths"]
