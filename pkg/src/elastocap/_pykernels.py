"""Pure-Python/numpy implementation of the solver inner loops.

Used when the compiled ``_ckernels`` extension is unavailable or when
``ELASTOCAP_PURE=1`` is set.  Same functions, same arguments, same algorithms.
"""

from math import exp

import numpy as np

_nan = float("nan")


def _cbrt(v):
    return float(np.cbrt(v))


def residual(x, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet):
    if not x > 0.0:
        return _nan
    x2 = x * x
    x3 = x2 * x
    a3 = alpha * alpha * alpha
    v = x3 - 1.0 + a3
    if not v > 0.0:
        return _nan
    es2 = exp(2.0 * omega_s)
    res = 1.0 / (x2 * x2) + 4.0 / x + alpha * (4.0 - 4.0 * x3 - 5.0 * a3) / (v * _cbrt(v))
    res -= (4.0 / x) * (es2 * x2 - 1.0) * (xi / x2 + eta * es2)
    if wet:
        res += 2.0 * exp(-7.0 * omega_l) * (exp(3.0 * omega_l) - x3) * eta_f
    return res - 2.0 * p_hat_o


def _residual_array(x, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet):
    x2 = x * x
    x3 = x2 * x
    a3 = alpha * alpha * alpha
    v = x3 - 1.0 + a3
    es2 = exp(2.0 * omega_s)
    with np.errstate(divide="ignore", invalid="ignore"):
        res = 1.0 / (x2 * x2) + 4.0 / x + alpha * (4.0 - 4.0 * x3 - 5.0 * a3) / (v * np.cbrt(v))
        res = res - (4.0 / x) * (es2 * x2 - 1.0) * (xi / x2 + eta * es2)
        if wet:
            res = res + 2.0 * exp(-7.0 * omega_l) * (exp(3.0 * omega_l) - x3) * eta_f
        res = res - 2.0 * p_hat_o
    res[(x <= 0.0) | ~(v > 0.0)] = _nan
    return res


def scan(lo, hi, n, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet):
    xs = np.linspace(lo, hi, n)
    return xs, _residual_array(xs, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet)


def _bisect(lo, hi, glo, ghi, args, xtol, ftol):
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        gm = residual(mid, *args)
        if gm == 0.0:
            return mid
        if (gm < 0.0) == (glo < 0.0):
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
        if hi - lo <= xtol and (abs(glo) <= ftol or abs(ghi) <= ftol):
            break
    return lo if abs(glo) <= abs(ghi) else hi


def bisect(lo, hi, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet, xtol, ftol):
    args = (alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet)
    glo, ghi = residual(lo, *args), residual(hi, *args)
    if glo * ghi > 0.0:
        raise ValueError("bisect: residual has the same sign at both ends")
    return _bisect(lo, hi, glo, ghi, args, xtol, ftol)


def find_roots(lo, hi, n, alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet, xtol, ftol):
    args = (alpha, xi, eta, eta_f, omega_s, omega_l, p_hat_o, wet)
    xs, gs = scan(lo, hi, n, *args)
    roots = []
    for i in range(n):
        if gs[i] == 0.0:
            roots.append(float(xs[i]))
        elif i + 1 < n and gs[i] * gs[i + 1] < 0.0:
            roots.append(_bisect(float(xs[i]), float(xs[i + 1]), float(gs[i]),
                                 float(gs[i + 1]), args, xtol, ftol))
    return roots, xs, gs


def integrand(R, x, w1, w2):
    R3 = R * R * R
    d3 = x * x * x - 1.0
    r3 = R3 + d3
    r = _cbrt(r3)
    r2 = r * r
    return 4.0 * d3 * (r3 + R3) / (r2 * r3) * (w1 / r2 + w2 / (R * R))


def _simpson(a, b, fa, fm, fb, whole, x, w1, w2, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = integrand(lm, x, w1, w2)
    frm = integrand(rm, x, w1, w2)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (_simpson(a, m, fa, flm, fm, left, x, w1, w2, 0.5 * tol, depth - 1)
            + _simpson(m, b, fm, frm, fb, right, x, w1, w2, 0.5 * tol, depth - 1))


def integrate_f(a, b, x, w1, w2, tol, depth):
    if a == b:
        return 0.0
    m = 0.5 * (a + b)
    fa, fm, fb = integrand(a, x, w1, w2), integrand(m, x, w1, w2), integrand(b, x, w1, w2)
    return _simpson(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), x, w1, w2,
                    tol, depth)


def sigma_rr_quadrature(R, x, alpha, p_hat_o, w1, w2, tol, depth):
    Rs = np.asarray(R, dtype=float)
    out = np.empty_like(Rs)
    upper = alpha
    acc = 0.0
    for i in np.argsort(-Rs, kind="stable"):
        acc += integrate_f(float(Rs[i]), upper, x, w1, w2, tol, depth)
        upper = float(Rs[i])
        out[i] = -p_hat_o - acc
    return out


def sigma_rr_closed(R, x, alpha, p_hat_o):
    Rs = np.asarray(R, dtype=float)
    d3 = x * x * x - 1.0
    a3 = alpha * alpha * alpha
    vo = a3 + d3
    outer = alpha * (-4.0 * d3 - 5.0 * a3) / (2.0 * vo * np.cbrt(vo))
    R3 = Rs * Rs * Rs
    v = R3 + d3
    return -p_hat_o + (Rs * (5.0 * R3 + 4.0 * d3) / (2.0 * v * np.cbrt(v)) + outer)
