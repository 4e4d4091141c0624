# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel lane: scalar-fused twins of chirpedqpm.kernels._fallback.

Same three-regime erfi (Maclaurin series / anchored Taylor step / continued
fraction) and the same two-photon amplitude assembly; see the fallback
module for the numerical rationale.  The anchor table is installed from
kernels.__init__ via set_table().
"""

import numpy as np

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)
    double complex conj(double complex)

from libc.math cimport sqrt, fabs, llround, isnan, M_PI

cdef double _SQRT_PI = 1.7724538509055160273
cdef double _TWO_OVER_SQRT_PI = 2.0 / 1.7724538509055160273

SERIES_RADIUS = 2.5
TAYLOR_RADIUS = 6.5
cdef double _SERIES_R = 2.5
cdef double _TAYLOR_R = 6.5
cdef double _OVERFLOW_RE_Z2 = 709.0
cdef int _SERIES_TERMS = 48
cdef int _TAYLOR_TERMS = 24
cdef int _CF_DEPTH = 26

cdef double complex[:, ::1] _TABLE = None
cdef double _H = 0.25
cdef bint _HAVE_TABLE = False


def set_table(table, h):
    global _TABLE, _H, _HAVE_TABLE
    _TABLE = np.ascontiguousarray(table, dtype=complex)
    _H = float(h)
    _HAVE_TABLE = True


cdef double complex _series(double complex z) noexcept:
    cdef double complex zz = z * z
    cdef double complex term = z
    cdef double complex total = z
    cdef int n
    for n in range(1, _SERIES_TERMS):
        term = term * zz / n
        total = total + term / (2 * n + 1)
        if cabs(term) <= 1e-18 * cabs(total):
            break
    return _TWO_OVER_SQRT_PI * total


cdef double complex _wtaylor(double complex z) noexcept:
    cdef Py_ssize_t ix = llround(creal(z) / _H)
    cdef Py_ssize_t iy = llround(cimag(z) / _H)
    cdef double complex z0 = ix * _H + 1j * (iy * _H)
    cdef double complex dz = z - z0
    cdef double complex d_prev = _TABLE[ix, iy]
    cdef double complex d_cur = -2.0 * z0 * d_prev + _TWO_OVER_SQRT_PI * 1j
    cdef double complex total = d_prev + d_cur * dz
    cdef double complex term = dz
    cdef double complex d_next
    cdef int kk
    for kk in range(1, _TAYLOR_TERMS):
        d_next = -2.0 * z0 * d_cur - 2.0 * kk * d_prev
        term = term * dz / (kk + 1)
        total = total + d_next * term
        d_prev = d_cur
        d_cur = d_next
    return total


cdef double complex _wcf(double complex z) noexcept:
    # Backward recurrence with manual complex division (real numerator):
    # (a)/t = a conj(t) / |t|^2.  Depth shrinks with |z| (convergence is
    # faster far out; 10 levels already give ~1e-14 at |z| >= 12).
    cdef double zr = creal(z), zi = cimag(z)
    cdef double r2 = zr * zr + zi * zi
    cdef int depth = 26
    if r2 > 144.0:
        depth = 10
    elif r2 > 64.0:
        depth = 14
    cdef double tr = zr, ti = zi, den, hk
    cdef int kk
    for kk in range(depth, 0, -1):
        hk = 0.5 * kk
        den = tr * tr + ti * ti
        tr = zr - hk * tr / den
        ti = zi + hk * ti / den
    den = tr * tr + ti * ti
    # (i / sqrt(pi)) / t = i conj(t) / (sqrt(pi) |t|^2)
    return (ti + 1j * tr) / (_SQRT_PI * den)


cdef int _erfi_quadrant(double complex z, double complex *out) except -1:
    """erfi on the closed first quadrant; returns via pointer, raises on overflow."""
    cdef double r = cabs(z)
    cdef double complex w
    if r <= _SERIES_R:
        out[0] = _series(z)
        return 0
    if r <= _TAYLOR_R:
        w = _wtaylor(z)
    else:
        w = _wcf(z)
    if creal(z) * creal(z) - cimag(z) * cimag(z) > _OVERFLOW_RE_Z2:
        raise OverflowError(
            "erfi overflow guard: Re(z^2) > 709; use faddeeva_w and factor "
            "exp(z^2) analytically (scaled path)")
    out[0] = 1j * (1.0 - cexp(z * z) * w)
    return 0


cdef int _erfi_scalar(double complex z, double complex *out) except -1:
    cdef double x = creal(z)
    cdef double y = cimag(z)
    cdef double sx
    cdef double complex e
    if isnan(x) or isnan(y):
        out[0] = float("nan") + 1j * float("nan")
        return 0
    sx = -1.0 if x < 0 else 1.0
    _erfi_quadrant(fabs(x) + 1j * fabs(y), &e)
    if y * sx < 0:
        e = conj(e)
    out[0] = sx * e
    return 0


cdef int _w_scalar(double complex z, double complex *out) except -1:
    """Faddeeva w(z) for any z; lower half-plane via reflection."""
    cdef double complex zu = z
    cdef bint lower = cimag(z) < 0
    cdef bint flip
    cdef double complex w, zq
    cdef double r
    if lower:
        zu = -z
    flip = creal(zu) < 0
    zq = -conj(zu) if flip else zu
    r = cabs(zq)
    if r <= _SERIES_R:
        w = cexp(-zq * zq) * (1.0 + 1j * _series(zq))
    elif r <= _TAYLOR_R:
        w = _wtaylor(zq)
    else:
        w = _wcf(zq)
    if flip:
        w = conj(w)
    if lower:
        if cimag(z) * cimag(z) - creal(z) * creal(z) > _OVERFLOW_RE_Z2:
            raise OverflowError("faddeeva_w overflow in the lower half-plane")
        w = 2.0 * cexp(-z * z) - w
    out[0] = w
    return 0


def erfi(z):
    """Imaginary error function of complex argument, elementwise."""
    cdef double complex val
    if np.isscalar(z) or np.ndim(z) == 0:
        _erfi_scalar(complex(z), &val)
        return complex(val)
    z_arr = np.ascontiguousarray(np.asarray(z, dtype=complex))
    out = np.empty(z_arr.shape, dtype=complex)
    cdef double complex[::1] zv = z_arr.ravel()
    cdef double complex[::1] ov = out.ravel()
    cdef Py_ssize_t i, n = zv.shape[0]
    for i in range(n):
        _erfi_scalar(zv[i], &val)
        ov[i] = val
    return out


def faddeeva_w(z):
    """Faddeeva function w(z) = exp(-z^2) erfc(-iz), elementwise."""
    cdef double complex val
    if np.isscalar(z) or np.ndim(z) == 0:
        _w_scalar(complex(z), &val)
        return complex(val)
    z_arr = np.ascontiguousarray(np.asarray(z, dtype=complex))
    out = np.empty(z_arr.shape, dtype=complex)
    cdef double complex[::1] zv = z_arr.ravel()
    cdef double complex[::1] ov = out.ravel()
    cdef Py_ssize_t i, n = zv.shape[0]
    for i in range(n):
        _w_scalar(zv[i], &val)
        ov[i] = val
    return out


def psi_bracket(dk0, eta, length_um):
    """erfi bracket of the two-photon amplitude (diagonal arguments)."""
    cdef double complex u = (1.0 + 1j) * (0.5 / sqrt(eta))
    cdef double eta_c = eta
    cdef double L = length_um
    cdef double complex e1, e2
    if np.isscalar(dk0) or np.ndim(dk0) == 0:
        _erfi_scalar(u * float(dk0), &e1)
        _erfi_scalar(u * (float(dk0) + eta_c * L), &e2)
        return complex(e1 - e2)
    d_arr = np.ascontiguousarray(np.asarray(dk0, dtype=float))
    out = np.empty(d_arr.shape, dtype=complex)
    cdef double[::1] dv = d_arr.ravel()
    cdef double complex[::1] ov = out.ravel()
    cdef Py_ssize_t i, n = dv.shape[0]
    for i in range(n):
        _erfi_scalar(u * dv[i], &e1)
        _erfi_scalar(u * (dv[i] + eta_c * L), &e2)
        ov[i] = e1 - e2
    return out


def spectral_amplitude_kernel(dk0, ksum, eta, length_um, kappa=1.0):
    """Assemble psi(omega, L; phi) from mismatch and wavevector-sum arrays."""
    cdef double eta_c = eta
    cdef double L = length_um
    cdef double complex u = (1.0 + 1j) * (0.5 / sqrt(eta_c))
    cdef double complex pref = -sqrt(M_PI * kappa * kappa / (2.0 * eta_c)) * cexp(0.25j * M_PI)
    cdef double complex e1, e2, ph
    cdef double d
    if np.isscalar(dk0) or np.ndim(dk0) == 0:
        d = float(dk0)
        _erfi_scalar(u * d, &e1)
        _erfi_scalar(u * (d + eta_c * L), &e2)
        ph = cexp(1j * (float(ksum) * L - d * d / (2.0 * eta_c)))
        return complex(pref * ph * (e1 - e2))
    d_arr = np.ascontiguousarray(np.asarray(dk0, dtype=float))
    k_arr = np.ascontiguousarray(np.asarray(ksum, dtype=float))
    if d_arr.shape != k_arr.shape:
        raise ValueError("dk0 and ksum must have the same shape")
    out = np.empty(d_arr.shape, dtype=complex)
    cdef double[::1] dv = d_arr.ravel()
    cdef double[::1] kv = k_arr.ravel()
    cdef double complex[::1] ov = out.ravel()
    cdef Py_ssize_t i, n = dv.shape[0]
    for i in range(n):
        d = dv[i]
        _erfi_scalar(u * d, &e1)
        _erfi_scalar(u * (d + eta_c * L), &e2)
        ph = cexp(1j * (kv[i] * L - d * d / (2.0 * eta_c)))
        ov[i] = pref * ph * (e1 - e2)
    return out
