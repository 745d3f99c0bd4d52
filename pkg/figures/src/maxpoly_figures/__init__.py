"""Figure rendering for maxpoly CSV/JSON exports.

A pure view layer: it reads exported data files, validates their headers
against the documented schemas, and draws plots.  It never recomputes any
numerics and does not depend on the maxpoly package.
"""

from .render import FIGURES, render

__all__ = ["FIGURES", "render"]
__version__ = "0.1.0"
