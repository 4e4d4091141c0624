"""Kernel backend selection.

The hot loops (complex erfi and the two-photon amplitude assembly) exist
twice: a Cython extension (`chirpedqpm.kernels._core`) and a pure-numpy
fallback (`chirpedqpm.kernels._fallback`) implementing the identical
algorithm.  The compiled lane is used when the extension built; set
CHIRPEDQPM_FORCE_FALLBACK=1 to force the numpy lane.  `BACKEND` names the
active lane; `available_backends()` returns every importable lane (the
benchmark compares them).
"""

import os
from importlib.resources import files

import numpy as np

from . import _fallback

with (files("chirpedqpm.kernels") / "wtable.npz").open("rb") as _fh:
    _npz = np.load(_fh)
    _TABLE = np.ascontiguousarray(_npz["table"], dtype=complex)
    _H = float(_npz["h"])

_fallback.set_table(_TABLE, _H)

_impl = _fallback
BACKEND = "fallback"

if not os.environ.get("CHIRPEDQPM_FORCE_FALLBACK"):
    try:
        from . import _core

        _core.set_table(_TABLE, _H)
        _impl = _core
        BACKEND = "compiled"
    except ImportError:
        pass


def available_backends():
    """Importable kernel lanes, name -> module."""
    lanes = {"fallback": _fallback}
    try:
        from . import _core

        _core.set_table(_TABLE, _H)
        lanes["compiled"] = _core
    except ImportError:
        pass
    return lanes


erfi = _impl.erfi
faddeeva_w = _impl.faddeeva_w
psi_bracket = _impl.psi_bracket
spectral_amplitude_kernel = _impl.spectral_amplitude_kernel

SERIES_RADIUS = _fallback.SERIES_RADIUS
TAYLOR_RADIUS = _fallback.TAYLOR_RADIUS
