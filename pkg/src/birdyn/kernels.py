"""Backend selection for the mod-p polynomial kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is. Set ``BIRDYN_PURE_PYTHON=1`` to force the fallback.
"""
import os

from birdyn import _kernels_py

if os.environ.get("BIRDYN_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from birdyn import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
mul = _impl.mul
add = _impl.add
scale = _impl.scale
divmod_ = _impl.divmod_
rem = _impl.rem
exact_div = _impl.exact_div
monic = _impl.monic
gcd = _impl.gcd
powmod = _impl.powmod
roots = _impl.roots


def backends():
    """Every importable backend module, keyed by name."""
    out = {"python": _kernels_py}
    try:
        from birdyn import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
