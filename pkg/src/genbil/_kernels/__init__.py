"""Hot kernels for exact linear algebra over F_p.

The compiled extension is used when it was built; otherwise the numpy
fallback is selected. Set ``GENBIL_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _fallback

BACKEND = "python"

if os.environ.get("GENBIL_PURE_PYTHON", "") in ("", "0"):
    try:
        from ._modp import rank_modp, rref_modp

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._fallback import rank_modp, rref_modp
else:
    from ._fallback import rank_modp, rref_modp

__all__ = ["BACKEND", "rref_modp", "rank_modp", "_fallback"]
