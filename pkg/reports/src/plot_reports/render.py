"""Convergence figures: dual and primal curves per trace, one horizontal
line per baseline, deterministic bytes for identical inputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .traces import ReportError, read_trace

FORMATS = ("png", "svg")

# fixed ids and no embedded dates so that equal inputs give equal bytes
matplotlib.rcParams["svg.hashsalt"] = "plot-reports"

_COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple")


def build_figure(frames, baselines=()):
    """Figure with two curves (dual, primal) per frame and one dashed
    horizontal line per (label, value) baseline, all on shared axes."""
    if not frames:
        raise ReportError("need at least one trace to plot")
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for t, fr in enumerate(frames):
        color = _COLORS[t % len(_COLORS)]
        it = fr.columns["iter"]
        ax.plot(it, fr.columns["dual_bound"], color=color, lw=1.8,
                label=f"{fr.name} dual bound")
        ax.plot(it, fr.columns["best_primal"], color=color, lw=1.8,
                ls="--", label=f"{fr.name} best primal")
    for b, (label, value) in enumerate(baselines):
        ax.axhline(value, color="gray", lw=1.2,
                   ls=(0, (1, 1)) if b % 2 else (0, (4, 2)),
                   label=f"{label} = {value:g}")
    ax.set_xlabel("outer iteration")
    ax.set_ylabel("objective value")
    ax.legend(loc="best", fontsize=9)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def render_convergence(trace_paths, baselines, out_path, fmt=None):
    """Read traces, draw the figure, write ``out_path``, print final gaps.

    ``fmt`` defaults to the output suffix; png and svg are supported.
    Returns the list of parsed frames (handy for callers that want the
    gap values).
    """
    if fmt is None:
        fmt = str(out_path).rsplit(".", 1)[-1].lower()
    if fmt not in FORMATS:
        raise ReportError(f"unsupported format {fmt!r}; know {FORMATS}")
    frames = [read_trace(p) for p in trace_paths]
    fig = build_figure(frames, baselines)
    try:
        # Agg writes no timestamps; SVG needs its date metadata dropped
        metadata = {"Date": None} if fmt == "svg" else None
        fig.savefig(out_path, format=fmt, dpi=120, metadata=metadata)
    finally:
        plt.close(fig)
    for fr in frames:
        print(f"{fr.name}: final gap {fr.final_gap!r}")
    return frames
