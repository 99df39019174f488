"""Young-function calculus, Orlicz norms, g-Laplacian eigenvalues and bounds."""

__version__ = "0.1.0"

from . import bounds, eigen, space, young  # noqa: E402,F401
