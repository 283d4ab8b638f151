"""Fixed-size 2x2 / 3x3 tensor algebra with explicit metrics.

Components are plain ``numpy`` arrays.  Index placement is a property of how
an array is used, not of the array: ``C_flat`` is a (0,2) tensor, ``b_sharp``
is (2,0) and a mixed (1,1) tensor is stored as ``T[A, B] = T^A_B``.  Every
metric is wrapped in :class:`Metric`, which validates positive definiteness
once and caches the inverse and determinant.
"""

from math import acos, cos, pi, sqrt

import numpy as np

from .errors import DefinitenessError, DomainError

SPD_RTOL = 1e-14


def det2(a):
    return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]


def det3(a):
    return (
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def det(a):
    a = np.asarray(a, dtype=float)
    if a.shape == (2, 2):
        return det2(a)
    if a.shape == (3, 3):
        return det3(a)
    raise ValueError(f"expected a 2x2 or 3x3 matrix, got shape {a.shape}")


def adjugate(a):
    """Transposed cofactor matrix, so that ``a @ adjugate(a) = det(a) I``."""
    a = np.asarray(a, dtype=float)
    if a.shape == (2, 2):
        return np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])
    if a.shape != (3, 3):
        raise ValueError(f"expected a 2x2 or 3x3 matrix, got shape {a.shape}")
    c = np.empty((3, 3))
    c[0, 0] = a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
    c[0, 1] = a[0, 2] * a[2, 1] - a[0, 1] * a[2, 2]
    c[0, 2] = a[0, 1] * a[1, 2] - a[0, 2] * a[1, 1]
    c[1, 0] = a[1, 2] * a[2, 0] - a[1, 0] * a[2, 2]
    c[1, 1] = a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
    c[1, 2] = a[0, 2] * a[1, 0] - a[0, 0] * a[1, 2]
    c[2, 0] = a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]
    c[2, 1] = a[0, 1] * a[2, 0] - a[0, 0] * a[2, 1]
    c[2, 2] = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    return c


def inv(a):
    """Closed-form inverse of a 2x2 or 3x3 matrix."""
    d = det(a)
    if d == 0.0:
        raise DomainError("singular matrix")
    return adjugate(a) / d


def leading_minors(a):
    a = np.asarray(a, dtype=float)
    return [det(a[:k, :k]) if k > 1 else a[0, 0] for k in range(1, a.shape[0] + 1)]


def check_spd(a, name="tensor"):
    """Raise :class:`DefinitenessError` unless ``a`` is symmetric positive definite.

    Leading minors must exceed ``1e-14 * scale**k`` where ``scale`` is the
    largest diagonal magnitude.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (2, 3):
        raise DefinitenessError(f"{name}: expected a square 2x2 or 3x3 array, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DefinitenessError(f"{name}: non-finite components")
    scale = float(np.max(np.abs(np.diag(a))))
    if not np.allclose(a, a.T, rtol=1e-12, atol=1e-14 * max(scale, 1e-300)):
        raise DefinitenessError(f"{name}: not symmetric")
    for k, m in enumerate(leading_minors(a), start=1):
        if not m > SPD_RTOL * scale**k:
            raise DefinitenessError(f"{name}: leading minor {k} = {m:.3e} is not positive")
    return a


class Metric:
    """A symmetric positive-definite (0,2) metric with cached inverse and determinant."""

    __slots__ = ("matrix", "inverse", "det", "dim")

    def __init__(self, matrix, name="metric"):
        m = check_spd(np.array(matrix, dtype=float), name)
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        self.matrix = m
        self.dim = m.shape[0]
        self.det = det(m)
        inverse = adjugate(m) / self.det
        inverse = 0.5 * (inverse + inverse.T)
        inverse.setflags(write=False)
        self.inverse = inverse

    @classmethod
    def identity(cls, dim=3):
        return cls(np.eye(dim))

    @classmethod
    def diag(cls, *entries):
        return cls(np.diag(np.asarray(entries, dtype=float)))

    def scaled(self, factor):
        return Metric(factor * self.matrix)

    def inner(self, u, v):
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))

    def norm(self, u):
        return sqrt(self.inner(u, u))

    def flat(self, u):
        return self.matrix @ np.asarray(u, dtype=float)

    def sharp(self, w):
        return self.inverse @ np.asarray(w, dtype=float)

    def __repr__(self):
        return f"Metric({self.matrix.tolist()!r})"


def as_metric(m):
    return m if isinstance(m, Metric) else Metric(m)


def raise_index(t, metric, times=1):
    """Raise indices of a (0,2) tensor.

    ``times=1`` returns the mixed tensor ``T^A_B = G^{AM} T_{MB}``;
    ``times=2`` returns the (2,0) tensor ``G^{AM} T_{MN} G^{NB}``.
    """
    g = as_metric(metric)
    t = np.asarray(t, dtype=float)
    if times == 1:
        return g.inverse @ t
    if times == 2:
        return g.inverse @ t @ g.inverse
    raise ValueError("times must be 1 or 2")


def lower_index(t, metric, times=1):
    """Inverse of :func:`raise_index`.

    ``times=1`` takes a mixed tensor to (0,2); ``times=2`` takes (2,0) to (0,2).
    """
    g = as_metric(metric)
    t = np.asarray(t, dtype=float)
    if times == 1:
        return g.matrix @ t
    if times == 2:
        return g.matrix @ t @ g.matrix
    raise ValueError("times must be 1 or 2")


def metric_trace(t, metric):
    """Trace of a (0,2) tensor with respect to ``metric``: ``T_AB G^AB``."""
    g = as_metric(metric)
    return float(np.sum(np.asarray(t) * g.inverse))


def principal_invariants(C_flat, G):
    """Principal invariants of ``C_flat`` measured with the material metric ``G``.

    Returns ``(I1, I2, I3)`` with ``I1 = C_AB G^AB``,
    ``I2 = (I1^2 - C_MB C_NA G^AM G^BN) / 2`` and ``I3 = det C / det G``.
    """
    G = as_metric(G)
    C = check_spd(C_flat, "C")
    mixed = G.inverse @ C
    I1 = float(np.trace(mixed))
    I2 = 0.5 * (I1 * I1 - float(np.sum(mixed * mixed.T)))
    I3 = det(C) / G.det
    return I1, I2, I3


def surface_invariants(Cbar_flat, Gbar):
    """Return ``(Ibar1, Ibar2)`` of a surface strain; ``Ibar2`` is the squared area ratio."""
    Gbar = as_metric(Gbar)
    C = check_spd(Cbar_flat, "Cbar")
    if C.shape != (2, 2) or Gbar.dim != 2:
        raise ValueError("surface invariants need 2x2 tensors")
    return float(np.sum(C * Gbar.inverse)), det2(C) / Gbar.det


def _cubic_roots(I1, I2, I3):
    """Real roots of ``l^3 - I1 l^2 + I2 l - I3``, descending (trigonometric form)."""
    a = -I1
    q = (a * a - 3.0 * I2) / 9.0
    r = (2.0 * a**3 - 9.0 * a * I2 - 27.0 * I3) / 54.0
    shift = -a / 3.0
    scale = max(abs(I1), 1e-300)
    if q <= 1e-15 * scale * scale:
        return [shift, shift, shift]
    sq = sqrt(q)
    ratio = max(-1.0, min(1.0, r / (sq * sq * sq)))
    theta = acos(ratio)
    roots = [
        -2.0 * sq * cos((theta + 2.0 * pi * k) / 3.0) + shift for k in range(3)
    ]
    return sorted(roots, reverse=True)


def mixed_eigenvalues(T):
    """Eigenvalues of a mixed tensor known to have a real spectrum, descending."""
    T = np.asarray(T, dtype=float)
    if T.shape == (2, 2):
        tr = T[0, 0] + T[1, 1]
        d = det2(T)
        disc = max(0.0, 0.25 * tr * tr - d)
        s = sqrt(disc)
        # avoid cancellation in the smaller root
        big = 0.5 * tr + (s if tr >= 0 else -s)
        small = d / big if big != 0.0 else 0.5 * tr - s
        return sorted([big, small], reverse=True)
    I1 = float(np.trace(T))
    I2 = 0.5 * (I1 * I1 - float(np.sum(T * T.T)))
    return _cubic_roots(I1, I2, det3(T))


def spd_sqrt(C_mixed):
    """Square root ``U`` of a mixed tensor with positive real eigenvalues.

    Uses the eigenvalues of the characteristic polynomial and the
    Cayley-Hamilton form of the root, so no iterative eigensolver is needed:
    ``U = (C + sqrt(det C) I) / sqrt(tr C + 2 sqrt(det C))`` in 2D and
    ``U = (-C^2 + (i1^2 - i2) C + i1 i3 I) / (i1 i2 - i3)`` in 3D, where
    ``i_k`` are the invariants of ``U``.
    """
    C = np.asarray(C_mixed, dtype=float)
    lam = mixed_eigenvalues(C)
    if min(lam) <= 0.0:
        raise DomainError(f"spd_sqrt: non-positive eigenvalue {min(lam):.3e}")
    n = C.shape[0]
    eye = np.eye(n)
    if n == 2:
        rdet = sqrt(lam[0] * lam[1])
        return (C + rdet * eye) / sqrt(lam[0] + lam[1] + 2.0 * rdet)
    s = [sqrt(v) for v in lam]
    i1 = s[0] + s[1] + s[2]
    i2 = s[0] * s[1] + s[1] * s[2] + s[0] * s[2]
    i3 = s[0] * s[1] * s[2]
    return (-(C @ C) + (i1 * i1 - i2) * C + i1 * i3 * eye) / (i1 * i2 - i3)
