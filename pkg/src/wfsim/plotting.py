"""Figure rendering for evaporation sweep tables.

Every function takes the rows produced by `blackhole.run_sweep` and writes
PNG files next to the CSV they belong to, so a report directory carries the
pictures and the numbers side by side. The Agg backend is forced because
these renderings run headless.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .blackhole import SweepRow, sweep_means

__all__ = ["sweep_figure_paths", "render_sweep_figures"]

FIGURE_SUFFIXES = ("fidelity", "decoupling", "entropies")


def sweep_figure_paths(csv_path: str) -> dict[str, str]:
    """PNG paths derived from the CSV path, one per figure kind."""
    stem, _ = os.path.splitext(csv_path)
    return {kind: f"{stem}_{kind}.png" for kind in FIGURE_SUFFIXES}


def _grouped(rows: Sequence[SweepRow], column: str) -> dict[int, np.ndarray]:
    by_m: dict[int, list[float]] = {}
    for row in rows:
        by_m.setdefault(row.m, []).append(getattr(row, column))
    return {m: np.asarray(by_m[m]) for m in sorted(by_m)}


def _render_fidelity(rows: Sequence[SweepRow], path: str) -> None:
    means = sweep_means(rows)
    ms = sorted(means)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for m, values in _grouped(rows, "fidelity").items():
        ax.plot([m] * len(values), values, ".", color="tab:blue", alpha=0.3)
    ax.plot(
        ms,
        [means[m]["fidelity"] for m in ms],
        "o-",
        color="tab:blue",
        label="mean fidelity",
    )
    ax.plot(
        ms,
        [1.0 - means[m]["trace_distance"] for m in ms],
        "s--",
        color="tab:orange",
        label="1 - trace distance (floor)",
    )
    ax.set_xlabel("late radiation qubits m")
    ax.set_ylabel("reconstruction fidelity")
    ax.set_xticks(ms)
    ax.set_ylim(-0.6, 1.05)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _render_decoupling(rows: Sequence[SweepRow], path: str) -> None:
    means = sweep_means(rows)
    ms = sorted(means)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(
        ms,
        [means[m]["trace_distance"] for m in ms],
        "o-",
        color="tab:red",
        label="trace distance from product",
    )
    ax.plot(
        ms,
        [means[m]["mutual_information_bits"] for m in ms],
        "s-",
        color="tab:green",
        label="mutual information (bits)",
    )
    ax.set_xlabel("late radiation qubits m")
    ax.set_ylabel("mean over seeds")
    ax.set_xticks(ms)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _render_entropies(rows: Sequence[SweepRow], path: str) -> None:
    means = sweep_means(rows)
    ms = sorted(means)
    hz = [means[m]["h_z_given_ra"] for m in ms]
    hx = [means[m]["h_x_given_rb"] for m in ms]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ms, hz, "o-", color="tab:purple", label="H(Z | R_A)")
    ax.plot(ms, hx, "s-", color="tab:cyan", label="H(X | R_B)")
    ax.plot(
        ms,
        [a + b for a, b in zip(hz, hx)],
        "d--",
        color="tab:gray",
        label="sum",
    )
    ax.axhline(1.0, color="black", linewidth=0.8, linestyle=":", label="one-bit floor")
    ax.set_xlabel("late radiation qubits m")
    ax.set_ylabel("conditional entropy (bits)")
    ax.set_xticks(ms)
    ax.set_ylim(-0.05, 2.1)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="center right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_sweep_figures(rows: Sequence[SweepRow], csv_path: str) -> list[str]:
    """Render the three standard figures next to `csv_path`.

    Returns the written paths in a fixed order: fidelity, decoupling,
    entropies.
    """
    if not rows:
        raise ValueError("no sweep rows to render")
    paths = sweep_figure_paths(csv_path)
    _render_fidelity(rows, paths["fidelity"])
    _render_decoupling(rows, paths["decoupling"])
    _render_entropies(rows, paths["entropies"])
    return [paths[kind] for kind in FIGURE_SUFFIXES]
