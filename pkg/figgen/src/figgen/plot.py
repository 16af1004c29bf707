"""Box-plot rendering for benchmark records.

One panel per sample size, one box per method.  Quartiles use linear
interpolation (numpy's default), the same rule as the harness summary
tables, so the displayed boxes and the tables agree.  Whiskers follow the
usual 1.5 IQR convention.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from figgen.records import METRICS, SchemaError

METHOD_ORDER = ("NLm", "NLM", "GL")
METHOD_LABELS = {"NLm": "N-L-m", "NLM": "N-L-M", "GL": "G-L"}
Y_LABELS = {"accuracy": "Accuracy", "err": "Err"}


def box_stats(values) -> dict:
    """bxp-style statistics: linear-interpolation quartiles, 1.5 IQR whiskers."""
    vals = np.asarray(values, dtype=float)
    q1, med, q3 = np.quantile(vals, [0.25, 0.5, 0.75], method="linear")
    iqr = q3 - q1
    lo, hi = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = vals[(vals >= lo) & (vals <= hi)]
    return {
        "med": float(med),
        "q1": float(q1),
        "q3": float(q3),
        "whislo": float(inside.min()),
        "whishi": float(inside.max()),
        "fliers": vals[(vals < lo) | (vals > hi)],
        "mean": float(vals.mean()),
    }


def build_figure(records: list[dict], metric: str):
    """Figure with one panel per n and one box per method.

    Returns (figure, stats) where stats maps (method, n) to the box
    statistics actually drawn.
    """
    if metric not in METRICS:
        raise SchemaError(f"metric must be one of {METRICS}, got {metric!r}")
    ns = sorted({r["n"] for r in records})
    methods = [m for m in METHOD_ORDER if any(r["method"] == m for r in records)]
    extra = sorted({r["method"] for r in records} - set(METHOD_ORDER))
    methods += extra
    if not methods:
        raise SchemaError("no method rows in input")

    fig, axes = plt.subplots(
        1, len(ns), figsize=(3.2 * len(ns), 3.6), sharey=True, squeeze=False
    )
    stats = {}
    for ax, n in zip(axes[0], ns):
        boxes = []
        for method in methods:
            vals = [r[metric] for r in records if r["method"] == method and r["n"] == n]
            if not vals:
                raise SchemaError(f"no rows for method {method!r} at n={n}")
            st = box_stats(vals)
            stats[(method, n)] = st
            boxes.append(
                {
                    "med": st["med"],
                    "q1": st["q1"],
                    "q3": st["q3"],
                    "whislo": st["whislo"],
                    "whishi": st["whishi"],
                    "fliers": st["fliers"],
                    "label": METHOD_LABELS.get(method, method),
                }
            )
        ax.bxp(boxes, showfliers=True)
        ax.set_title(f"n = {n}")
        ax.grid(True, axis="y", alpha=0.3)
    axes[0][0].set_ylabel(Y_LABELS[metric])
    fig.tight_layout()
    return fig, stats


def render_boxplots(records: list[dict], metric: str, out_path: str) -> dict:
    """Build and save the figure; returns the drawn box statistics.

    The PNG is written without the software metadata chunk so identical
    inputs produce byte-identical files.
    """
    fig, stats = build_figure(records, metric)
    try:
        fig.savefig(out_path, dpi=150, metadata={"Software": None})
    finally:
        plt.close(fig)
    return stats
