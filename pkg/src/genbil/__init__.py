"""Exact computations with general bilinear forms and anti-endomorphisms."""
from .scalars import Field, Status

__version__ = "0.1.0"
__all__ = ["Field", "Status", "__version__"]
