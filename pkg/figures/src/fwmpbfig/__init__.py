from .render import DPI, FigureSpec, RenderError, build_figure, load_series, render

__all__ = ["DPI", "FigureSpec", "RenderError", "build_figure", "load_series",
           "render"]
__version__ = "0.1.0"
