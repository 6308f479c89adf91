# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels. Mirrors causaltrust._kernels.pyfallback."""

from libc.math cimport log

import numpy as np


cdef double _mass(const double[::1] v) nogil:
    cdef Py_ssize_t i, m = v.shape[0]
    cdef double s = 0.0
    for i in range(m):
        s += v[i]
    return s / m


def normalize(const double[::1] values):
    cdef Py_ssize_t i, m = values.shape[0]
    cdef double mass = _mass(values)
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(m):
        out[i] = values[i] / mass
    return out_arr


def smooth(const double[::1] values, double eps):
    cdef Py_ssize_t i, m = values.shape[0]
    cdef double s = 0.0
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(m):
        out[i] = values[i] if values[i] > eps else eps
        s += out[i]
    s /= m
    for i in range(m):
        out[i] /= s
    return out_arr


def entropy(const double[::1] values):
    cdef Py_ssize_t i, m = values.shape[0]
    cdef double acc = 0.0
    for i in range(m):
        if values[i] > 0.0:
            acc += values[i] * log(values[i])
    return -acc / m


def kl(const double[::1] p, const double[::1] q, double eps):
    cdef Py_ssize_t i, m = p.shape[0]
    cdef double qmass = 0.0, acc = 0.0, qi
    for i in range(m):
        qmass += q[i] if q[i] > eps else eps
    qmass /= m
    for i in range(m):
        if p[i] > 0.0:
            qi = (q[i] if q[i] > eps else eps) / qmass
            # log(p) - log(q): p[i]/qi can underflow to 0 for denormal p[i]
            acc += p[i] * (log(p[i]) - log(qi))
    return acc / m


def fuse(const double[::1] p, const double[::1] q, double eps):
    cdef Py_ssize_t i, m = p.shape[0]
    cdef double mass = 0.0, s = 0.0, v
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(m):
        out[i] = p[i] * q[i]
        mass += out[i]
    mass /= m
    if mass > 0.0:
        for i in range(m):
            out[i] /= mass
    for i in range(m):
        if out[i] < eps:
            out[i] = eps
        s += out[i]
    s /= m
    for i in range(m):
        out[i] /= s
    return out_arr
