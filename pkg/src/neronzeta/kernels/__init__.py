"""Dense integer polynomial kernels with an optional compiled fast path.

The compiled module ``_ckernels`` is used when it was built and
``NERONZETA_PURE_PYTHON`` is unset.  It works in signed 64-bit arithmetic and
raises OverflowError when exactness would be lost; the dispatchers below then
recompute with the arbitrary-precision Python kernels, so results are always
exact.
"""

import os

from . import _pykernels

try:
    if os.environ.get("NERONZETA_PURE_PYTHON"):
        raise ImportError("pure Python kernels requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def _dispatch(name):
    py = getattr(_pykernels, name)
    if _ckernels is None:
        return py
    fast = getattr(_ckernels, name)

    def kernel(*args):
        try:
            return fast(*args)
        except OverflowError:
            return py(*args)

    kernel.__name__ = name
    kernel.__doc__ = py.__doc__
    return kernel


convolve = _dispatch("convolve")
convolve_trunc = _dispatch("convolve_trunc")
inverse_series = _dispatch("inverse_series")
divmod_monic = _dispatch("divmod_monic")

__all__ = ["BACKEND", "convolve", "convolve_trunc", "inverse_series", "divmod_monic"]
