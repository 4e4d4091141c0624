"""Threshold-crossing metrics shared by spectra and correlation traces."""

import numpy as np

from .errors import DomainError


def outermost_crossings(x, y, level):
    """Outermost x positions where y crosses ``level``, linearly interpolated.

    x must be increasing.  Raises DomainError if the curve never reaches the
    level or if the above-level region touches a grid boundary (the crossing
    would then lie outside the sampled window).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    above = np.flatnonzero(y >= level)
    if above.size == 0:
        raise DomainError("curve never reaches the requested threshold")
    i0, i1 = above[0], above[-1]
    if i0 == 0 or i1 == y.size - 1:
        raise DomainError("threshold region touches the grid boundary")

    def interp(ia, ib):
        # crossing between samples ia (below) and ib (above)
        y0, y1 = y[ia], y[ib]
        if y1 == y0:
            return x[ib]
        return x[ia] + (level - y0) * (x[ib] - x[ia]) / (y1 - y0)

    return interp(i0 - 1, i0), interp(i1 + 1, i1)


def central_crossings(x, y, level):
    """Half-level crossings of the contiguous lobe containing the global peak."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ipk = int(np.argmax(y))
    if ipk == 0 or ipk == y.size - 1:
        raise DomainError("peak at grid boundary")
    j = ipk
    while j > 0 and y[j - 1] >= level:
        j -= 1
    k = ipk
    while k < y.size - 1 and y[k + 1] >= level:
        k += 1
    if j == 0 or k == y.size - 1:
        raise DomainError("threshold region touches the grid boundary")
    lo = x[j - 1] + (level - y[j - 1]) * (x[j] - x[j - 1]) / (y[j] - y[j - 1])
    hi = x[k] + (level - y[k]) * (x[k + 1] - x[k]) / (y[k + 1] - y[k])
    return lo, hi
