from .fitting import fit_line, fit_slope

__all__ = [
    "fit_line",
    "fit_slope",
]
