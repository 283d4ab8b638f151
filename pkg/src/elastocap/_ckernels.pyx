# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops of the cavity solver.

Mirrors :mod:`elastocap._pykernels` function for function.  Everything is
nondimensional: lengths in units of the reference cavity radius and stresses
in units of the shell shear modulus.
"""

from libc.math cimport cbrt, exp, fabs, NAN

import numpy as np


cdef inline double _residual(double x, double alpha, double xi, double eta, double eta_f,
                             double omega_s, double omega_l, double p_hat_o, int wet) nogil:
    cdef double x2, x3, a3, v, es2, res
    if not x > 0.0:
        return NAN
    x2 = x * x
    x3 = x2 * x
    a3 = alpha * alpha * alpha
    v = x3 - 1.0 + a3
    if not v > 0.0:
        return NAN
    es2 = exp(2.0 * omega_s)
    res = 1.0 / (x2 * x2) + 4.0 / x + alpha * (4.0 - 4.0 * x3 - 5.0 * a3) / (v * cbrt(v))
    res -= (4.0 / x) * (es2 * x2 - 1.0) * (xi / x2 + eta * es2)
    if wet:
        res += 2.0 * exp(-7.0 * omega_l) * (exp(3.0 * omega_l) - x3) * eta_f
    return res - 2.0 * p_hat_o


def residual(double x, double alpha, double xi, double eta, double eta_f,
             double omega_s, double omega_l, double p_hat_o, bint wet):
    return _residual(x, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet)


def scan(double lo, double hi, Py_ssize_t n, double alpha, double xi, double eta,
         double eta_f, double omega_s, double omega_l, double p_hat_o, bint wet):
    xs = np.linspace(lo, hi, n)
    gs = np.empty(n)
    cdef double[::1] xv = xs
    cdef double[::1] gv = gs
    cdef Py_ssize_t i
    cdef int w = wet
    with nogil:
        for i in range(n):
            gv[i] = _residual(xv[i], alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, w)
    return xs, gs


cdef double _bisect(double lo, double hi, double glo, double ghi, double alpha, double xi,
                    double eta, double eta_f, double omega_s, double omega_l,
                    double p_hat_o, int wet, double xtol, double ftol) nogil:
    cdef double mid, gm
    cdef int it
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    for it in range(400):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        gm = _residual(mid, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet)
        if gm == 0.0:
            return mid
        if (gm < 0.0) == (glo < 0.0):
            lo = mid
            glo = gm
        else:
            hi = mid
            ghi = gm
        if hi - lo <= xtol and (fabs(glo) <= ftol or fabs(ghi) <= ftol):
            break
    if fabs(glo) <= fabs(ghi):
        return lo
    return hi


def bisect(double lo, double hi, double alpha, double xi, double eta, double eta_f,
           double omega_s, double omega_l, double p_hat_o, bint wet,
           double xtol, double ftol):
    cdef double glo = _residual(lo, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet)
    cdef double ghi = _residual(hi, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet)
    if glo * ghi > 0.0:
        raise ValueError("bisect: residual has the same sign at both ends")
    return _bisect(lo, hi, glo, ghi, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o,
                   wet, xtol, ftol)


def find_roots(double lo, double hi, Py_ssize_t n, double alpha, double xi, double eta,
               double eta_f, double omega_s, double omega_l, double p_hat_o, bint wet,
               double xtol, double ftol):
    """Pre-scan ``[lo, hi]`` on ``n`` points, then bisect every sign change."""
    xs, gs = scan(lo, hi, n, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet)
    cdef double[::1] xv = xs
    cdef double[::1] gv = gs
    cdef Py_ssize_t i
    roots = []
    for i in range(n):
        if gv[i] == 0.0:
            roots.append(xv[i])
        elif i + 1 < n and gv[i] * gv[i + 1] < 0.0:
            roots.append(_bisect(xv[i], xv[i + 1], gv[i], gv[i + 1], alpha, xi, eta, eta_f,
                                 omega_s, omega_l, p_hat_o, wet, xtol, ftol))
    return roots, xs, gs


cdef inline double _f(double R, double x, double w1, double w2) nogil:
    # 4 (r^6 - R^6) / r^5 [w1 / r^2 + w2 / R^2], with r^3 - R^3 = x^3 - 1 exactly
    cdef double R3 = R * R * R
    cdef double d3 = x * x * x - 1.0
    cdef double r3 = R3 + d3
    cdef double r = cbrt(r3)
    cdef double r2 = r * r
    return 4.0 * d3 * (r3 + R3) / (r2 * r3) * (w1 / r2 + w2 / (R * R))


def integrand(double R, double x, double w1, double w2):
    return _f(R, x, w1, w2)


cdef double _simpson(double a, double b, double fa, double fm, double fb, double whole,
                     double x, double w1, double w2, double tol, int depth) nogil:
    cdef double m = 0.5 * (a + b)
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = _f(lm, x, w1, w2)
    cdef double frm = _f(rm, x, w1, w2)
    cdef double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    cdef double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    cdef double delta = left + right - whole
    if depth <= 0 or fabs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (_simpson(a, m, fa, flm, fm, left, x, w1, w2, 0.5 * tol, depth - 1)
            + _simpson(m, b, fm, frm, fb, right, x, w1, w2, 0.5 * tol, depth - 1))


cdef double _integrate(double a, double b, double x, double w1, double w2, double tol,
                       int depth) nogil:
    cdef double fa, fm, fb, m
    if a == b:
        return 0.0
    m = 0.5 * (a + b)
    fa = _f(a, x, w1, w2)
    fm = _f(m, x, w1, w2)
    fb = _f(b, x, w1, w2)
    return _simpson(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), x, w1, w2,
                    tol, depth)


def integrate_f(double a, double b, double x, double w1, double w2, double tol, int depth):
    """Adaptive Simpson integral of the radial-stress integrand over ``[a, b]``."""
    return _integrate(a, b, x, w1, w2, tol, depth)


def sigma_rr_quadrature(R, double x, double alpha, double p_hat_o, double w1, double w2,
                        double tol, int depth):
    """``-p_hat_o - int_R^alpha f`` at every entry of ``R`` (cumulative from the outer wall)."""
    Rs = np.ascontiguousarray(R, dtype=float)
    order = np.argsort(-Rs, kind="stable")
    out = np.empty_like(Rs)
    cdef double[::1] rv = Rs
    cdef double[::1] ov = out
    cdef long[::1] idx = order.astype(np.int_)
    cdef Py_ssize_t k, i
    cdef double upper = alpha
    cdef double acc = 0.0
    with nogil:
        for k in range(rv.shape[0]):
            i = idx[k]
            acc += _integrate(rv[i], upper, x, w1, w2, tol, depth)
            upper = rv[i]
            ov[i] = -p_hat_o - acc
    return out


def sigma_rr_closed(R, double x, double alpha, double p_hat_o):
    """Closed-form neo-Hookean radial stress (units of the shear modulus)."""
    Rs = np.ascontiguousarray(R, dtype=float)
    out = np.empty_like(Rs)
    cdef double[::1] rv = Rs
    cdef double[::1] ov = out
    cdef double d3 = x * x * x - 1.0
    cdef double a3 = alpha * alpha * alpha
    cdef double vo = a3 + d3
    cdef double outer = alpha * (-4.0 * d3 - 5.0 * a3) / (2.0 * vo * cbrt(vo))
    cdef double Rv, R3, v
    cdef Py_ssize_t i
    with nogil:
        for i in range(rv.shape[0]):
            Rv = rv[i]
            R3 = Rv * Rv * Rv
            v = R3 + d3
            # inner and outer terms cancel exactly at R = alpha
            ov[i] = -p_hat_o + (Rv * (5.0 * R3 + 4.0 * d3) / (2.0 * v * cbrt(v)) + outer)
    return out
