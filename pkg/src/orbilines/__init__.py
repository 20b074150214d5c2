"""Orbifold lines, vector-valued modular forms and their Hilbert series."""

from .exactalg import Cyclotomic, FGAbelianGroup, smith_normal_form
from .orbiline import PicElement, canonicalize, degree, h0, h1, omega
from .qseries import QSeries

__all__ = [
    "Cyclotomic",
    "FGAbelianGroup",
    "smith_normal_form",
    "PicElement",
    "canonicalize",
    "degree",
    "h0",
    "h1",
    "omega",
    "QSeries",
]
__version__ = "0.1.0"
