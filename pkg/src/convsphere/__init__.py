"""Unit-ball volumes from convolved densities of squared uniform variables."""

from .exact import (
    HalfInt,
    MonomialPdf,
    PiScaled,
    beta_half,
    p2_second_part,
    p_hyper,
    pdf_first_part,
    surface_area_unit,
    unit_volume_closed,
    unit_volume_exact,
    unit_volume_gamma,
    volume,
)
from .grid import GridDensity, convolve, grid_p1, mass_below_one, p2_tail_residual, pdf_numeric
from .montecarlo import CoverageEstimate, McEstimate, estimate_coverage, estimate_p_hyper
from .paradox import ParadoxReport, analyze

__version__ = "0.1.0"
