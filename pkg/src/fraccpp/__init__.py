"""Compound Poisson, time-fractional compound Poisson processes and their special functions.

Submodules: ``specfun`` (Mittag-Leffler, Wright and subordinator densities),
``bell`` (Bell polynomials), ``dist`` (pmfs and generating functions),
``process`` (samplers and Monte-Carlo), ``moments``, ``fcalc`` (fractional
derivatives), ``risk`` and ``cli``.
"""

from __future__ import annotations

from . import bell, dist, fcalc, moments, process, risk, specfun
from .dist import PmfTable, RateSequence, jump_law
from .process import RngStream

__version__ = "0.1.0"

__all__ = ["bell", "dist", "fcalc", "moments", "process", "risk", "specfun",
           "PmfTable", "RateSequence", "RngStream", "jump_law", "__version__"]
