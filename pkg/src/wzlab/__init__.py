"""wzlab: exact and high-precision verification of WZ pairs and
Ramanujan-type hypergeometric identities."""

from .errors import WZLabError

__version__ = "0.1.0"

__all__ = ["WZLabError", "__version__"]
