"""Static evaluation report: per-class coverage bars and the f-value profile.

This renders rule *quality* diagnostics to an image file next to the tabular
output; the interactive 3D scene itself is never rasterized here (that is the
viewer's job).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dataset import Dataset
from .linear_model import LinearModel, evaluate
from .rules import RuleStats


def render_eval_figure(stats: RuleStats, dataset: Dataset, out_path,
                       model: LinearModel | None = None) -> None:
    """Write a PNG summarizing coverage counts and, with a model, f values."""
    with_f = model is not None
    fig, axes = plt.subplots(1, 2 if with_f else 1,
                             figsize=(10 if with_f else 5, 4))
    ax_bar = axes[0] if with_f else axes

    labels = [label for label, _ in stats.class_counts]
    counts = [count for _, count in stats.class_counts]
    ax_bar.bar(labels, counts, color="#4363d8")
    ax_bar.set_ylabel("covered cases")
    title = f"covered {stats.covered}, purity {stats.purity:.3f}"
    if stats.accuracy is not None:
        title += f", accuracy {stats.accuracy:.3f}"
    ax_bar.set_title(title)
    ax_bar.tick_params(axis="x", rotation=20)

    if with_f:
        ax_hist = axes[1]
        for label in dataset.class_labels:
            values = [evaluate(model, c) for c in dataset.cases
                      if c.class_label == label]
            ax_hist.hist(values, bins=20, alpha=0.6, label=label)
        if model.threshold is not None:
            ax_hist.axvline(model.threshold, color="#b8a200", linestyle="--",
                            label="threshold")
        ax_hist.set_xlabel("f(x)")
        ax_hist.set_ylabel("cases")
        ax_hist.legend(fontsize=8)

    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
