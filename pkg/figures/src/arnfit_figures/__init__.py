"""Figure rendering for arnfit experiment CSVs (presentation only)."""

from .render import EXPERIMENTS, FigureSpec, RenderError, render

__all__ = ["EXPERIMENTS", "FigureSpec", "RenderError", "render"]
__version__ = "0.1.0"
