from .traces import ReportError, TraceFrame, parse_baseline, read_trace
from .render import build_figure, render_convergence

__version__ = "0.1.0"

__all__ = [
    "ReportError",
    "TraceFrame",
    "build_figure",
    "parse_baseline",
    "read_trace",
    "render_convergence",
]
