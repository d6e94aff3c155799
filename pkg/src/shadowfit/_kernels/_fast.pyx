# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the numeric kernels.

Mirrors the reference backend function for function, with the same
expression order, so the two agree to a few ulps; see ``_ref.py`` for the
formula notes.  Wrappers coerce inputs to contiguous double arrays and
reshape outputs to the input batch shape.
"""

import numpy as np

from libc.math cimport INFINITY, acos, asin, cos, fabs, sin, sqrt

BACKEND = "compiled"

cdef double _TINY = 1e-14


cdef inline double _clip01(double x) noexcept nogil:
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


def cone_section_radial(double theta, u):
    arr = np.asarray(u, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = np.empty(flat.shape[0])
    cdef double[::1] uv = flat
    cdef double[::1] ov = out
    cdef double st = sin(theta)
    cdef double ct2 = cos(theta) ** 2
    cdef double cu, su2
    cdef Py_ssize_t i
    for i in range(uv.shape[0]):
        cu = fabs(cos(uv[i]))
        su2 = sin(uv[i]) ** 2
        ov[i] = 1.0 / (st * cu + sqrt(su2 + ct2 * cu * cu))
    if scalar:
        return np.float64(out[0])
    return out.reshape(arr.shape)


def cylinder_section_radial(double r, double theta, u):
    arr = np.asarray(u, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = np.empty(flat.shape[0])
    cdef double[::1] uv = flat
    cdef double[::1] ov = out
    cdef double st = sin(theta)
    cdef double ct2 = cos(theta) ** 2
    cdef double flat_gap = st * st - ct2
    cdef double cu2, su2, ell, den
    cdef Py_ssize_t i
    for i in range(uv.shape[0]):
        cu2 = cos(uv[i]) ** 2
        su2 = sin(uv[i]) ** 2
        ell = r / sqrt(su2 + ct2 * cu2)
        if flat_gap > 0.0 and su2 <= flat_gap * cu2:
            den = st * sqrt(cu2)
            if den < _TINY:
                den = _TINY
            ov[i] = r / den
        else:
            ov[i] = ell
    if scalar:
        return np.float64(out[0])
    return out.reshape(arr.shape)


cdef _coerce_dirs(dirs):
    arr = np.asarray(dirs, dtype=np.float64)
    single = arr.ndim == 1
    flat = np.ascontiguousarray(arr.reshape(-1, arr.shape[arr.ndim - 1]))
    return arr, single, flat


def cylinder_radial(double r, double hh, dirs):
    arr, single, flat = _coerce_dirs(dirs)
    out = np.empty(flat.shape[0])
    cdef double[:, ::1] dv = flat
    cdef double[::1] ov = out
    cdef double s, az, side, cap
    cdef Py_ssize_t i
    for i in range(dv.shape[0]):
        s = sqrt(dv[i, 0] * dv[i, 0] + dv[i, 1] * dv[i, 1])
        az = fabs(dv[i, 2])
        side = r / s if s > _TINY else INFINITY
        cap = hh / az if az > _TINY else INFINITY
        ov[i] = side if side < cap else cap
    if single:
        return np.float64(out[0])
    return out.reshape(arr.shape[:-1])


def double_cone_radial(double a, double c, dirs):
    arr, single, flat = _coerce_dirs(dirs)
    out = np.empty(flat.shape[0])
    cdef double[:, ::1] dv = flat
    cdef double[::1] ov = out
    cdef double s, az
    cdef Py_ssize_t i
    for i in range(dv.shape[0]):
        s = sqrt(dv[i, 0] * dv[i, 0] + dv[i, 1] * dv[i, 1])
        az = fabs(dv[i, 2])
        ov[i] = 1.0 / (s / a + az / c)
    if single:
        return np.float64(out[0])
    return out.reshape(arr.shape[:-1])


def cylinder_support(double r, double hh, dirs):
    arr, single, flat = _coerce_dirs(dirs)
    out = np.empty(flat.shape[0])
    cdef double[:, ::1] dv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(dv.shape[0]):
        ov[i] = r * sqrt(dv[i, 0] * dv[i, 0] + dv[i, 1] * dv[i, 1]) + hh * fabs(dv[i, 2])
    if single:
        return np.float64(out[0])
    return out.reshape(arr.shape[:-1])


def double_cone_support(double a, double c, dirs):
    arr, single, flat = _coerce_dirs(dirs)
    out = np.empty(flat.shape[0])
    cdef double[:, ::1] dv = flat
    cdef double[::1] ov = out
    cdef double side, cap
    cdef Py_ssize_t i
    for i in range(dv.shape[0]):
        side = a * sqrt(dv[i, 0] * dv[i, 0] + dv[i, 1] * dv[i, 1])
        cap = c * fabs(dv[i, 2])
        ov[i] = side if side > cap else cap
    if single:
        return np.float64(out[0])
    return out.reshape(arr.shape[:-1])


def cap_profile(x):
    arr = np.asarray(x, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = np.empty(flat.shape[0])
    cdef double[::1] xv = flat
    cdef double[::1] ov = out
    cdef double t
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        t = _clip01(xv[i])
        ov[i] = (1.0 - t * t) ** 3
    if scalar:
        return np.float64(out[0])
    return out.reshape(arr.shape)


def bump_sum(dirs, centers, radii, heights):
    arr = np.asarray(dirs, dtype=np.float64)
    flat = np.ascontiguousarray(arr.reshape(-1, arr.shape[arr.ndim - 1]))
    cen = np.ascontiguousarray(np.asarray(centers, dtype=np.float64))
    rad = np.ascontiguousarray(np.asarray(radii, dtype=np.float64))
    hei = np.ascontiguousarray(np.asarray(heights, dtype=np.float64))
    out = np.zeros(flat.shape[0])
    cdef double[:, ::1] dv = flat
    cdef double[:, ::1] cv = cen
    cdef double[::1] rv = rad
    cdef double[::1] hv = hei
    cdef double[::1] ov = out
    cdef Py_ssize_t n = dv.shape[1]
    cdef double dot, cos_r, d, t
    cdef Py_ssize_t b, i, j
    for b in range(cv.shape[0]):
        cos_r = cos(rv[b])
        for i in range(dv.shape[0]):
            dot = 0.0
            for j in range(n):
                dot += dv[i, j] * cv[b, j]
            if dot > cos_r:
                if dot > 1.0:
                    dot = 1.0
                elif dot < -1.0:
                    dot = -1.0
                d = acos(dot)
                t = _clip01(d / rv[b])
                ov[i] += hv[b] * (1.0 - t * t) ** 3
    return out.reshape(arr.shape[:-1])


def ring_sum(dirs, double height, double halfwidth):
    arr = np.asarray(dirs, dtype=np.float64)
    flat = np.ascontiguousarray(arr.reshape(-1, arr.shape[arr.ndim - 1]))
    if height == 0.0:
        return np.zeros(flat.shape[0]).reshape(arr.shape[:-1])
    out = np.empty(flat.shape[0])
    cdef double[:, ::1] dv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t n = dv.shape[1]
    cdef double lat, t
    cdef Py_ssize_t i
    for i in range(dv.shape[0]):
        lat = asin(_clip01(fabs(dv[i, n - 1])))
        t = _clip01(lat / halfwidth)
        ov[i] = height * (1.0 - t * t) ** 3
    return out.reshape(arr.shape[:-1])
