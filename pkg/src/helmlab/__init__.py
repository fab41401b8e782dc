"""helmlab: a numerical laboratory for sound-soft obstacle scattering.

Forward far-field solver (combined-field Nystrom), closed-form and
finite-difference wavenumber-uniqueness thresholds, positive-supersolution
verification, and far-field separation experiments, exposed as a library,
an HTTP service and a CLI.
"""

from . import eigencalc, forward, geometry, harness, specfun, supersolution
from .errors import HelmlabError

__version__ = "0.1.0"

__all__ = [
    "specfun",
    "geometry",
    "forward",
    "eigencalc",
    "supersolution",
    "harness",
    "HelmlabError",
    "__version__",
]
