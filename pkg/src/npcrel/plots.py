"""Figure rendering for reports.

Uses the non-interactive backend with fixed sizes and resolutions so that
repeated runs of the same evaluation produce byte-identical image files.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .config import RunConfig  # noqa: E402
from .losses import DeviceRole  # noqa: E402
from .pipeline import ReliabilityReport, loss_surface  # noqa: E402

_DPI = 150


def _save(fig, path: str) -> str:
    fig.savefig(path, dpi=_DPI, metadata={"Software": None})
    plt.close(fig)
    return path


def save_loss_bars(report: ReliabilityReport, path: str) -> str:
    """Grouped bars of per-position total losses, one group per position."""
    roles = [role.value for role in DeviceRole]
    n = len(report.strategies)
    width = 0.8 / n
    fig, ax = plt.subplots(figsize=(9.0, 4.5))
    x = np.arange(len(roles))
    for k, s in enumerate(report.strategies):
        totals = [s.devices[role].loss.total for role in DeviceRole]
        ax.bar(x + (k - (n - 1) / 2.0) * width, totals, width,
               label=s.strategy.value.upper())
    ax.set_xticks(x)
    ax.set_xticklabels(roles)
    ax.set_ylabel("average loss (W)")
    ax.set_title("per-position losses")
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def save_share_bars(report: ReliabilityReport, path: str) -> str:
    """Stacked bars of part-class contributions to the total failure rate."""
    classes = sorted({cls for s in report.strategies for cls in s.shares_pct})
    labels = [s.strategy.value.upper() for s in report.strategies]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    bottoms = np.zeros(len(labels))
    for cls in classes:
        values = np.array([s.shares_pct.get(cls, 0.0) for s in report.strategies])
        ax.bar(labels, values, bottom=bottoms, label=cls.replace("_", " "))
        bottoms += values
    ax.set_ylabel("failure-rate share (%)")
    ax.set_title("part-class contributions")
    ax.legend(fontsize="small")
    fig.tight_layout()
    return _save(fig, path)


def save_loss_surface(cfg: RunConfig, strategy, path: str) -> str:
    """Heat map of the outer-switch total loss over index and lag angle."""
    ms, phis_deg, grid = loss_surface(cfg, strategy)
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    mesh = ax.pcolormesh(phis_deg, ms, grid, shading="auto")
    fig.colorbar(mesh, ax=ax, label="S1 total loss (W)")
    ax.set_xlabel("lag angle (deg)")
    ax.set_ylabel("commanded index")
    name = strategy.value.upper() if hasattr(strategy, "value") else str(strategy).upper()
    ax.set_title(f"{name} outer-switch loss")
    fig.tight_layout()
    return _save(fig, path)


def save_mttf_bars(report: ReliabilityReport, path: str) -> str:
    """Bar chart of MTTF per strategy."""
    labels = [row.strategy.value.upper() for row in report.comparison]
    values = [row.mttf_h for row in report.comparison]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.bar(labels, values)
    for i, (value, row) in enumerate(zip(values, report.comparison)):
        ax.annotate(f"+{row.mttf_gain_pct:.2f}%", (i, value),
                    ha="center", va="bottom", fontsize="small")
    ax.set_ylabel("MTTF (h)")
    ax.set_title("mean time to failure")
    fig.tight_layout()
    return _save(fig, path)


def render_figures(report: ReliabilityReport, cfg: RunConfig, out_dir: str,
                   surfaces: bool = False) -> list:
    """Render the report figures into out_dir and return the paths written.

    Surface heat maps re-evaluate the loss grid per strategy, so they are
    rendered only when asked for.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = [
        save_loss_bars(report, os.path.join(out_dir, "losses.png")),
        save_share_bars(report, os.path.join(out_dir, "class_shares.png")),
        save_mttf_bars(report, os.path.join(out_dir, "mttf.png")),
    ]
    if surfaces:
        for s in report.strategies:
            paths.append(save_loss_surface(
                cfg, s.strategy,
                os.path.join(out_dir, f"loss_surface_{s.strategy.value}.png"),
            ))
    return paths
