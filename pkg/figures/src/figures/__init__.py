"""Publication figures rendered from echowave CSV output.

This package never calls the simulator: every figure is regenerated from the
CSV files a run directory already contains, so rendering is read-only and
reproducible given identical inputs.
"""

from .spec import FIGURE_COUNT, FigureError, FigureSpec, RenderResult, render
from .discover import build_specs

__version__ = "0.1.0"

__all__ = [
    "FIGURE_COUNT",
    "FigureError",
    "FigureSpec",
    "RenderResult",
    "render",
    "build_specs",
    "__version__",
]
