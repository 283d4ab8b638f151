"""Finite-difference differential geometry of metric fields in foliation charts.

A :class:`MetricField` is a callable returning the metric components at a
chart point.  Surfaces are level sets of one chart coordinate (the *normal
axis*); on the surface that coordinate direction must be a unit normal, i.e.
``G[n, n] = 1`` and ``G[n, t] = 0``.  With this convention the second
fundamental form is ``K_AB = +1/2 dG_AB/dX^n`` (a sphere of radius ``r`` in
spherical coordinates has ``K = g_bar / r``).

Curvature is built from central differences of the metric.  Riemann
components use the convention

    R^A_BCD = d_C Gamma^A_DB - d_D Gamma^A_CB
              + Gamma^A_CE Gamma^E_DB - Gamma^A_DE Gamma^E_CB,

for which the round sphere has ``R_1212 = det(G) / r^2 > 0``.
"""

from dataclasses import dataclass
from math import sin, sqrt
from typing import Callable, Optional

import numpy as np

from .errors import ChartError, DomainError, NormalizationError
from .tensor import Metric, as_metric, det, inv

NORMAL_RTOL = 1e-12


@dataclass(frozen=True)
class MetricField:
    """Metric components as a function of chart coordinates.

    ``normal_axis`` names the coordinate that is normal to the surfaces of
    the foliation; ``None`` means the chart is not a foliation chart.
    """

    func: Callable[[np.ndarray], np.ndarray]
    dim: int = 3
    label: str = "chart"
    normal_axis: Optional[int] = 2
    scale: float = 1.0

    @property
    def foliation(self):
        return self.normal_axis is not None

    def metric(self, point):
        point = np.asarray(point, dtype=float)
        return Metric(self.func(point), name=f"{self.label} metric at {point.tolist()}")

    def tangential_axes(self):
        return [k for k in range(self.dim) if k != self.normal_axis]

    def induced(self, surface_point):
        """Induced 2D field on the slice through ``surface_point``."""
        self._require_foliation()
        base = np.asarray(surface_point, dtype=float)
        axes = self.tangential_axes()
        n = self.normal_axis
        func = self.func

        def induced_func(u):
            x = base.copy()
            x[axes] = u
            x[n] = base[n]
            return np.asarray(func(x))[np.ix_(axes, axes)]

        return MetricField(induced_func, dim=2, label=f"{self.label}|slice", normal_axis=None,
                           scale=self.scale)

    def check_foliation(self, surface_point, atol=1e-12):
        """True when the normal coordinate is a unit normal at ``surface_point``."""
        self._require_foliation()
        G = np.asarray(self.func(np.asarray(surface_point, dtype=float)))
        n = self.normal_axis
        off = [abs(G[n, t]) for t in self.tangential_axes()]
        return max(off) <= atol and abs(G[n, n] - 1.0) <= atol

    def _require_foliation(self):
        if self.normal_axis is None or self.dim != 3:
            raise ChartError(f"{self.label}: operation needs a 3D foliation chart")

    def default_step(self, point):
        return 1e-5 * max(self.scale, float(np.max(np.abs(point))) if len(point) else 1.0)


def _metric_derivatives(field, point, h):
    """``dG[k] = dG/dX^k`` by central differences; every stencil point is SPD-checked."""
    point = np.asarray(point, dtype=float)
    dG = np.empty((field.dim, field.dim, field.dim))
    for k in range(field.dim):
        e = np.zeros(field.dim)
        e[k] = h
        plus = field.metric(point + e).matrix
        minus = field.metric(point - e).matrix
        dG[k] = (plus - minus) / (2.0 * h)
    return dG


def christoffel(field, point, fd_step=None):
    """Levi-Civita symbols ``Gamma[C, A, B] = Gamma^C_AB`` at ``point``.

    ``Gamma^C_AB = 1/2 G^CK (G_KA,B + G_KB,A - G_AB,K)``.
    """
    point = np.asarray(point, dtype=float)
    h = field.default_step(point) if fd_step is None else fd_step
    G = field.metric(point)
    dG = _metric_derivatives(field, point, h)
    # lowered[K, A, B] = G_KA,B + G_KB,A - G_AB,K
    lowered = np.einsum("bka->kab", dG) + np.einsum("akb->kab", dG) - dG
    gamma = 0.5 * np.einsum("ck,kab->cab", G.inverse, lowered)
    return 0.5 * (gamma + np.swapaxes(gamma, 1, 2))


def riemann_lowered(field, point, index, fd_step=None):
    """One covariant Riemann component ``R_ABCD`` with ``index = (A, B, C, D)``."""
    point = np.asarray(point, dtype=float)
    h = field.default_step(point) if fd_step is None else fd_step
    A, B, C, D = index
    gam = christoffel(field, point, h)

    def dgamma(k):
        e = np.zeros(field.dim)
        e[k] = h
        return (christoffel(field, point + e, h) - christoffel(field, point - e, h)) / (2.0 * h)

    dC = dgamma(C)
    dD = dgamma(D) if D != C else dC
    upper = dC[:, D, B] - dD[:, C, B] + gam[:, C, :] @ gam[:, D, B] - gam[:, D, :] @ gam[:, C, B]
    G = field.metric(point).matrix
    return float(G[A] @ upper)


def second_fundamental_form(field, surface_point, fd_step=None):
    """Second fundamental form ``K_AB = 1/2 dG_AB/dX^n`` on the slice (2x2)."""
    if not field.foliation:
        raise ChartError(f"{field.label}: second fundamental form needs a foliation chart")
    field._require_foliation()
    point = np.asarray(surface_point, dtype=float)
    h = field.default_step(point) if fd_step is None else fd_step
    n = field.normal_axis
    axes = field.tangential_axes()
    e = np.zeros(3)
    e[n] = h
    dG = (field.metric(point + e).matrix - field.metric(point - e).matrix) / (2.0 * h)
    K = 0.5 * dG[np.ix_(axes, axes)]
    return 0.5 * (K + K.T)


def _sff_derivative(field, point, axis, h):
    e = np.zeros(3)
    e[axis] = h
    return (second_fundamental_form(field, point + e, h)
            - second_fundamental_form(field, point - e, h)) / (2.0 * h)


def gauss_residual(field, surface_point, fd_step=None):
    """``R_1212 - (Rbar_1212 + K_12^2 - K_11 K_22)`` at a surface point."""
    field._require_foliation()
    point = np.asarray(surface_point, dtype=float)
    h = field.default_step(point) if fd_step is None else fd_step
    t1, t2 = field.tangential_axes()
    ambient = riemann_lowered(field, point, (t1, t2, t1, t2), h)
    surface = field.induced(point)
    intrinsic = riemann_lowered(surface, point[[t1, t2]], (0, 1, 0, 1), h)
    K = second_fundamental_form(field, point, h)
    return ambient - (intrinsic + K[0, 1] ** 2 - K[0, 0] * K[1, 1])


def codazzi_residual(field, surface_point, fd_step=None):
    """Residuals of ``R_1213 = K_11|2 - K_12|1`` and ``R_2123 = K_22|1 - K_12|2``."""
    field._require_foliation()
    point = np.asarray(surface_point, dtype=float)
    h = field.default_step(point) if fd_step is None else fd_step
    t1, t2 = field.tangential_axes()
    n = field.normal_axis
    K = second_fundamental_form(field, point, h)
    gam = christoffel(field.induced(point), point[[t1, t2]], h)
    dK = [_sff_derivative(field, point, t1, h), _sff_derivative(field, point, t2, h)]

    def cov(a, b, c):
        # K_ab|c = K_ab,c - Gamma^k_ac K_kb - Gamma^k_bc K_ak
        return dK[c][a, b] - gam[:, a, c] @ K[:, b] - gam[:, b, c] @ K[a, :]

    first = riemann_lowered(field, point, (t1, t2, t1, n), h) - (cov(0, 0, 1) - cov(0, 1, 0))
    second = riemann_lowered(field, point, (t2, t1, t2, n), h) - (cov(1, 1, 0) - cov(0, 1, 1))
    return first, second


def _require_unit(N, G, name="N"):
    norm2 = G.inner(N, N)
    if abs(norm2 - 1.0) > NORMAL_RTOL:
        raise NormalizationError(f"{name} is not unit length: <{name},{name}> = {norm2!r}")


def projector(N, G):
    """Projection onto the G-orthogonal complement of the unit vector ``N``.

    Returned as a mixed tensor ``pi^A_B = delta^A_B - N^A N_B``.
    """
    G = as_metric(G)
    N = np.asarray(N, dtype=float)
    _require_unit(N, G)
    return np.eye(G.dim) - np.outer(N, G.flat(N))


def projected_metric(G, N):
    """``G_par = G - N_flat (x) N_flat``; vanishes on ``N`` and equals ``G`` on its complement."""
    G = as_metric(G)
    N = np.asarray(N, dtype=float)
    _require_unit(N, G)
    Nf = G.flat(N)
    return G.matrix - np.outer(Nf, Nf)


def jacobian(F, G, g):
    """Volume ratio ``J = sqrt(det g / det G) det F``."""
    G, g = as_metric(G), as_metric(g)
    return sqrt(g.det / G.det) * det(np.asarray(F, dtype=float))


def _inverse_transpose_normal(F, N, G, g):
    # F^{-T} N = g^{-1} F^{-*} G N
    F = np.asarray(F, dtype=float)
    d = det(F)
    if not d > 0.0:
        raise DomainError(f"deformation gradient must have det F > 0, got {d:.3e}")
    return g.inverse @ (inv(F).T @ (G.matrix @ np.asarray(N, dtype=float)))


def surface_jacobian(F, N, G, g):
    """Area ratio ``Jbar = J ||F^{-T} N||_g`` of the surface with unit normal ``N``."""
    G, g = as_metric(G), as_metric(g)
    N = np.asarray(N, dtype=float)
    _require_unit(N, G)
    v = _inverse_transpose_normal(F, N, G, g)
    return jacobian(F, G, g) * g.norm(v)


def surface_jacobian_material(F, N, G, g):
    """Same area ratio through the material form ``Jbar = J sqrt(<N, C^{-1} N>_G)``."""
    G, g = as_metric(G), as_metric(g)
    F = np.asarray(F, dtype=float)
    N = np.asarray(N, dtype=float)
    _require_unit(N, G)
    if not det(F) > 0.0:
        raise DomainError("deformation gradient must have det F > 0")
    C_mixed = G.inverse @ F.T @ g.matrix @ F
    return jacobian(F, G, g) * sqrt(G.inner(N, inv(C_mixed) @ N))


def deformed_normal(F, N, G, g):
    """Unit spatial normal ``n = J F^{-T} N / Jbar`` (Nanson image of ``N``)."""
    G, g = as_metric(G), as_metric(g)
    v = _inverse_transpose_normal(F, N, G, g)
    return v / g.norm(v)


def normal_stretch(F, N, n, g):
    """``lambda_n = <F N, n>_g``."""
    g = as_metric(g)
    return g.inner(np.asarray(F, dtype=float) @ np.asarray(N, dtype=float), n)


def nanson_residual(F, N, G, g, n=None):
    """``|| Jbar n - J F^{-T} N ||_g``; ``n`` defaults to the Nanson image of ``N``."""
    G, g = as_metric(G), as_metric(g)
    if n is None:
        n = deformed_normal(F, N, G, g)
    jbar = surface_jacobian(F, N, G, g)
    v = jacobian(F, G, g) * _inverse_transpose_normal(F, N, G, g)
    return g.norm(jbar * np.asarray(n, dtype=float) - v)


def parallel_gradient(F, N, G, n, g):
    """``F_par = pi_s F pi_S``: the part of ``F`` mapping tangent planes to tangent planes."""
    return projector(n, g) @ np.asarray(F, dtype=float) @ projector(N, G)


def surface_gradient(F, N, G, n, g, ref_axes, cur_axes):
    """Surface deformation gradient in foliation charts of both configurations.

    ``ref_axes``/``cur_axes`` list the tangential coordinates of the reference
    and current charts.
    """
    Fp = parallel_gradient(F, N, G, n, g)
    return Fp[np.ix_(cur_axes, ref_axes)]


# Fixtures used by tests and the geometry-check command.


def _spherical(x):
    s = sin(x[1])
    if abs(s) < 1e-8:
        raise ChartError(f"spherical chart is singular at theta = {x[1]!r}")
    r = x[0]
    return np.diag([1.0, r * r, r * r * s * s])


def spherical_field():
    """Euclidean metric in (r, theta, phi); spheres r = const, normal along r."""
    return MetricField(_spherical, dim=3, label="spherical", normal_axis=0)


def cylindrical_field():
    """Euclidean metric in (rho, phi, z); cylinders rho = const, normal along rho."""
    return MetricField(lambda x: np.diag([1.0, x[0] ** 2, 1.0]), dim=3,
                       label="cylindrical", normal_axis=0)


def cartesian_field(dim=3):
    """Euclidean metric in Cartesian coordinates; planes z = const."""
    return MetricField(lambda x: np.eye(dim), dim=dim, label="cartesian",
                       normal_axis=dim - 1 if dim == 3 else None)


def round_three_sphere_field():
    """Unit 3-sphere in (rho, theta, phi): a curved ambient space for Gauss checks."""

    def func(x):
        s = sin(x[0]) ** 2
        t = sin(x[1])
        if abs(t) < 1e-8:
            raise ChartError("chart is singular at theta = 0 or pi")
        return np.diag([1.0, s, s * t * t])

    return MetricField(func, dim=3, label="three-sphere", normal_axis=0)


# Diagnostics table shared by the CLI and the test-suite.

GEOMETRY_POINTS = {
    "sphere": ((1.0, 0.7, 0.3), spherical_field),
    "cylinder": ((1.3, 0.4, 0.2), cylindrical_field),
}


def geometry_diagnostics(fd_step=1e-4):
    """Gauss, Codazzi and Nanson residuals for the sphere and cylinder fixtures.

    Returns a list of ``(fixture, check, residual)`` rows in a fixed order.
    The Nanson row pushes the unit radial normal through a fixed deformation
    gradient with ``det F > 0``.
    """
    F = np.array([[1.2, 0.0, 0.0], [0.1, 0.9, 0.0], [0.0, 0.05, 1.1]])
    rows = []
    for name, (point, make) in GEOMETRY_POINTS.items():
        field = make()
        point = np.asarray(point)
        rows.append((name, "gauss", float(abs(gauss_residual(field, point, fd_step)))))
        c1, c2 = codazzi_residual(field, point, fd_step)
        rows.append((name, "codazzi_1", float(abs(c1))))
        rows.append((name, "codazzi_2", float(abs(c2))))
        G = field.metric(point)
        moved = point.copy()
        moved[field.normal_axis] *= 1.2
        g = field.metric(moved)
        N = np.zeros(3)
        N[field.normal_axis] = 1.0
        rows.append((name, "nanson", float(nanson_residual(F, N, G, g))))
    r, theta = GEOMETRY_POINTS["sphere"][0][:2]
    K = second_fundamental_form(spherical_field(), np.asarray(GEOMETRY_POINTS["sphere"][0]), fd_step)
    expected = np.diag([r, r * sin(theta) ** 2])
    rows.append(("sphere", "second_fundamental_form", float(np.max(np.abs(K - expected)))))
    return rows
