"""Histogram figures of minimised orbit counts."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_histograms"]


def plot_histograms(hist: Sequence[tuple[str, int, int, int]], path) -> list[Path]:
    """One bar chart per model; returns the files written.

    ``hist`` holds (model, low, high, count) rows. With several models each
    gets its own file named ``<stem>_<model><suffix>``.
    """
    path = Path(path)
    models = list(dict.fromkeys(m for m, *_ in hist))
    written = []
    for model in models:
        rows = [(lo, hi, c) for m, lo, hi, c in hist if m == model]
        fig, ax = plt.subplots(figsize=(5, 3.2))
        ax.bar([lo for lo, _, _ in rows], [c for _, _, c in rows],
               width=[hi - lo for lo, hi, _ in rows], align="edge",
               color="0.55", edgecolor="black", linewidth=0.6)
        ax.set_xlabel("orbits after minimisation")
        ax.set_ylabel("automata")
        ax.set_title(model)
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
        fig.tight_layout()
        target = path if len(models) == 1 else path.with_name(
            f"{path.stem}_{model}{path.suffix}")
        fig.savefig(target, dpi=120)
        plt.close(fig)
        written.append(target)
    return written
