"""Pressurized spherical cavity with surface and fluid eigenstrain.

A neo-Hookean incompressible shell ``R_i <= R <= R_o`` surrounds a cavity
that is either empty (dry) or filled with a compressible hyperelastic fluid
(wet).  The cavity wall carries an elastic surface whose stress-free state is
set by the surface eigenstrain ``omega_s``; the fluid has a volumetric
eigenstrain ``omega_l``.  Everything radial reduces to one scalar unknown,
the interface stretch ``x = r_i / R_i``.

Units
-----
Unless a function says otherwise, lengths are in units of ``R_i`` and stresses
in units of the shell shear modulus ``mu``.  Surface tension is reported as
``gamma0 / (mu R_i)``, which equals ``2 e_c``.  :class:`SphereProblem` holds the
dimensional inputs and converts them with :meth:`SphereProblem.nondimensional`.
"""

import logging
import math
import warnings
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .constitutive import BulkMaterial, SurfaceMaterial, INCOMPRESSIBLE_ISOTROPIC
from .errors import BracketingError, DomainError, UnsupportedModelError
from .quadrature import adaptive_simpson

log = logging.getLogger(__name__)

#: Thinnest shell accepted (``alpha = R_o / R_i``).
ALPHA_MIN = 1.0 + 1e-6
#: Below this ``alpha`` a cancellation warning is issued.
ALPHA_WARN = 1.01


# ---------------------------------------------------------------------------
# Problem definitions


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _nonneg(name, value):
    value = _finite(name, value)
    if value < 0.0:
        raise DomainError(f"{name} must be non-negative, got {value!r}")
    return value


@dataclass(frozen=True)
class NondimensionalProblem:
    """Dimensionless parameter set that fully determines the cavity state.

    ``alpha = R_o/R_i``, ``xi = mu_s/(R_i mu)``, ``eta = kappa_s/(R_i mu)``,
    ``eta_f = kappa_f/mu`` and ``p_hat_o = p_o/mu``.  When ``wet`` is false the
    fluid is absent and ``eta_f`` and ``omega_l`` are ignored.
    """

    alpha: float
    xi: float = 0.0
    eta: float = 0.0
    eta_f: float = 0.0
    p_hat_o: float = 0.0
    omega_s: float = 0.0
    omega_l: float = 0.0
    wet: bool = False

    def __post_init__(self):
        alpha = _finite("alpha", self.alpha)
        if not alpha > 1.0:
            raise DomainError(f"alpha = R_o/R_i must exceed 1, got {alpha!r}")
        if alpha < ALPHA_MIN:
            raise DomainError(f"alpha = {alpha!r} is below the supported minimum {ALPHA_MIN!r}")
        if alpha < ALPHA_WARN:
            warnings.warn(f"alpha = {alpha!r} describes a very thin shell; the outer-wall "
                          "terms lose digits to cancellation", RuntimeWarning, stacklevel=3)
        for name in ("xi", "eta", "eta_f", "omega_s", "omega_l"):
            object.__setattr__(self, name, _nonneg(name, getattr(self, name)))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "p_hat_o", _finite("p_hat_o", self.p_hat_o))
        object.__setattr__(self, "wet", bool(self.wet))

    @property
    def fluid_modulus(self):
        """``eta_f`` as seen by the equilibrium equation (zero for a dry cavity)."""
        return self.eta_f if self.wet else 0.0

    def with_pressure(self, p_hat_o):
        return replace(self, p_hat_o=p_hat_o)

    def kernel_args(self, p_hat_o=None):
        p = self.p_hat_o if p_hat_o is None else p_hat_o
        return (self.alpha, self.xi, self.eta, self.fluid_modulus, self.omega_s,
                self.omega_l, float(p), self.wet)

    def as_dict(self):
        return {"alpha": self.alpha, "xi": self.xi, "eta": self.eta, "eta_f": self.eta_f,
                "p_hat_o": self.p_hat_o, "omega_s": self.omega_s, "omega_l": self.omega_l,
                "wet": self.wet}


@dataclass(frozen=True)
class SphereProblem:
    """Dimensional cavity problem (any consistent unit system).

    ``mu``, ``kappa_f`` and ``p_o`` are stresses; ``mu_s`` and ``kappa_s`` are
    stress times length (force per length).
    """

    R_i: float
    R_o: float
    mu: float
    mu_s: float = 0.0
    kappa_s: float = 0.0
    kappa_f: float = 0.0
    omega_s: float = 0.0
    omega_l: float = 0.0
    p_o: float = 0.0
    wet: bool = False

    def __post_init__(self):
        R_i, R_o = _finite("R_i", self.R_i), _finite("R_o", self.R_o)
        if not (R_o > R_i > 0.0):
            raise DomainError(f"need R_o > R_i > 0, got R_i={R_i!r}, R_o={R_o!r}")
        if not _finite("mu", self.mu) > 0.0:
            raise DomainError("mu must be positive")
        for name in ("mu_s", "kappa_s", "kappa_f", "omega_s", "omega_l"):
            _nonneg(name, getattr(self, name))
        _finite("p_o", self.p_o)

    def nondimensional(self):
        return NondimensionalProblem(
            alpha=self.R_o / self.R_i,
            xi=self.mu_s / (self.R_i * self.mu),
            eta=self.kappa_s / (self.R_i * self.mu),
            eta_f=self.kappa_f / self.mu if self.wet else 0.0,
            p_hat_o=self.p_o / self.mu,
            omega_s=self.omega_s,
            omega_l=self.omega_l,
            wet=self.wet,
        )


@dataclass(frozen=True)
class SolverOptions:
    """Root search and quadrature settings.

    The residual is pre-scanned on ``scan`` uniform points of ``bracket`` and
    every sign change is bisected down to ``xtol`` (and ``|g| <= ftol``).
    """

    bracket: tuple = (0.2, 5.0)
    scan: int = 4000
    xtol: float = 1e-12
    ftol: float = 1e-14
    quad_tol: float = 1e-12
    quad_depth: int = 40

    def __post_init__(self):
        lo, hi = (float(v) for v in self.bracket)
        if not (0.0 < lo < hi and math.isfinite(hi)):
            raise DomainError(f"bracket must satisfy 0 < lo < hi, got {self.bracket!r}")
        object.__setattr__(self, "bracket", (lo, hi))
        if int(self.scan) < 2:
            raise DomainError("scan needs at least 2 points")
        object.__setattr__(self, "scan", int(self.scan))
        for name in ("xtol", "ftol", "quad_tol"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive")


DEFAULT_OPTIONS = SolverOptions()


@dataclass(frozen=True)
class CavitySolution:
    """Equilibrium state at one applied pressure.

    ``gamma0`` is ``gamma0 / (mu R_i)``; ``sigma_i`` and ``p_f`` are in units
    of ``mu``.  ``p_f`` and ``J0`` are ``None`` for a dry cavity.  ``roots``
    lists every root found in the bracket; ``x`` is the one closest to 1.
    """

    x: float
    lambda_o: float
    residual: float
    gamma0: float
    sigma_i: float
    e_c: float
    e_c_hat: float
    p_f: Optional[float]
    J0: Optional[float]
    roots: tuple
    problem: NondimensionalProblem

    @property
    def p_hat_o(self):
        return self.problem.p_hat_o

    def dimensional(self, problem: SphereProblem):
        """Rescale to the units of ``problem`` (which must nondimensionalize to ``self.problem``)."""
        mu, R_i = problem.mu, problem.R_i
        return {
            "r_i": self.x * R_i,
            "r_o": self.lambda_o * problem.R_o,
            "gamma0": self.gamma0 * mu * R_i,
            "sigma_i": self.sigma_i * mu,
            "p_f": None if self.p_f is None else self.p_f * mu,
            "J0": self.J0,
        }


@dataclass(frozen=True)
class StressProfile:
    """Samples of ``(R, sigma_rr, sigma_hoop, pressure)`` from the cavity wall outward."""

    R: np.ndarray
    sigma_rr: np.ndarray
    sigma_hoop: np.ndarray
    pressure: np.ndarray
    x: float
    p_hat_o: float

    def rows(self):
        return list(zip(self.R.tolist(), self.sigma_rr.tolist(),
                        self.sigma_hoop.tolist(), self.pressure.tolist()))


@dataclass(frozen=True)
class SweepRow:
    p_hat_o: float
    x: float
    lambda_o: float
    strain: float
    gamma0: float
    e_c: float
    p_f: Optional[float]
    residual: float


# ---------------------------------------------------------------------------
# Kinematics


def shell_map(R, r_i, R_i=1.0):
    """Current radius of the shell material point at reference radius ``R``.

    Incompressibility fixes ``r^3 - R^3 = r_i^3 - R_i^3``.  Works on arrays.
    """
    arg = np.asarray(R, dtype=float) ** 3 + (r_i ** 3 - R_i ** 3)
    if np.any(arg <= 0.0):
        raise DomainError("shell map argument R^3 + r_i^3 - R_i^3 must be positive")
    r = np.cbrt(arg)
    return float(r) if r.ndim == 0 else r


def shell_map_derivative(R, r_i, R_i=1.0):
    """``dr/dR = R^2 / r^2``."""
    R = np.asarray(R, dtype=float)
    r = shell_map(R, r_i, R_i)
    out = R * R / (r * r)
    return float(out) if np.ndim(out) == 0 else out


def fluid_map(R, x, R_i=None):
    """Homogeneous fluid motion ``r = x R``; pass ``R_i`` to enforce ``0 <= R <= R_i``."""
    R = np.asarray(R, dtype=float)
    if R_i is not None and (np.any(R < 0.0) or np.any(R > R_i)):
        raise DomainError("fluid map is defined for 0 <= R <= R_i")
    out = x * R
    return float(out) if out.ndim == 0 else out


def fluid_state(x, omega_l, kappa_f):
    """Fluid volume ratio ``J0 = x^3 e^{-3 omega_l}`` and pressure ``kappa_f (J0 - 1)``."""
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    J0 = x ** 3 * math.exp(-3.0 * omega_l)
    return J0, kappa_f * (J0 - 1.0)


def outer_stretch(x, alpha):
    """``lambda_o = r_o / R_o = (alpha^3 + x^3 - 1)^{1/3} / alpha``."""
    v = alpha * alpha * alpha + x * x * x - 1.0
    if not v > 0.0:
        raise DomainError("outer radius would be non-positive")
    return float(np.cbrt(v)) / alpha


def shell_invariants(R, r):
    """``(I1, I2)`` of the radial deformation (radial stretch ``R^2/r^2``, hoop ``r/R``)."""
    lr2 = (R * R / (r * r)) ** 2
    lt2 = (r / R) ** 2
    return lr2 + 2.0 * lt2, lt2 * lt2 + 2.0 * lr2 * lt2


# ---------------------------------------------------------------------------
# Radial stress


def _check_neo_hookean(shell):
    if shell is None:
        return
    if not isinstance(shell, BulkMaterial) or shell.tag != INCOMPRESSIBLE_ISOTROPIC \
            or shell.params.get("model") != "neo-hookean":
        raise UnsupportedModelError(
            "the closed-form radial stress needs an incompressible neo-Hookean shell; "
            "use radial_stress_quadrature for other models")


def _energy_derivatives(W1, W2, shell):
    """Normalize the shell description to ``(W1, W2)``: numbers or callables of ``(I1, I2)``."""
    if shell is None:
        return W1, W2
    if not isinstance(shell, BulkMaterial) or not shell.incompressible:
        raise UnsupportedModelError("the shell must be an incompressible bulk material")
    if shell.tag != INCOMPRESSIBLE_ISOTROPIC:
        raise UnsupportedModelError("only isotropic shells admit the radial reduction")
    mu = shell.params.get("mu")
    scale = 1.0 / mu if mu else 1.0

    def w1(I1, I2):
        return scale * shell.derivatives((I1, I2, 1.0))[0]

    def w2(I1, I2):
        return scale * shell.derivatives((I1, I2, 1.0))[1]

    return w1, w2


def integrand_f(R, x, W1=0.5, W2=0.0):
    """Radial-stress integrand ``4 (r^6 - R^6)/r^5 (W1/r^2 + W2/R^2)``.

    ``W1`` and ``W2`` are numbers or callables of ``(I1, I2)``, in units of ``mu``.
    """
    if not callable(W1) and not callable(W2):
        return kernels.integrand(float(R), float(x), float(W1), float(W2))
    r = shell_map(R, x)
    I1, I2 = shell_invariants(R, r)
    w1 = W1(I1, I2) if callable(W1) else W1
    w2 = W2(I1, I2) if callable(W2) else W2
    d3 = x ** 3 - 1.0
    r3 = R ** 3 + d3
    return 4.0 * d3 * (r3 + R ** 3) / (r * r * r3) * (w1 / (r * r) + w2 / (R * R))


def radial_stress_closed_form(R, x, nd: NondimensionalProblem, shell=None):
    """Neo-Hookean ``sigma_rr / mu`` at reference radii ``R`` (units of ``R_i``).

    ``sigma_rr(alpha) = -p_hat_o`` holds exactly in floating point.  Passing a
    non-neo-Hookean ``shell`` raises :class:`UnsupportedModelError`.
    """
    _check_neo_hookean(shell)
    Rs = np.asarray(R, dtype=float)
    out = kernels.sigma_rr_closed(np.atleast_1d(Rs), float(x), nd.alpha, nd.p_hat_o)
    return float(out[0]) if Rs.ndim == 0 else out.reshape(Rs.shape)


def radial_stress_quadrature(R, x, nd: NondimensionalProblem, W1=0.5, W2=0.0, shell=None,
                             options: SolverOptions = DEFAULT_OPTIONS):
    """``sigma_rr / mu = -p_hat_o - int_R^alpha f`` by adaptive Simpson.

    Constant ``W1``/``W2`` run in the compiled kernel.  Callables of
    ``(I1, I2)`` or an incompressible isotropic ``shell`` use the Python path.
    """
    W1, W2 = _energy_derivatives(W1, W2, shell)
    Rs = np.asarray(R, dtype=float)
    flat = np.atleast_1d(Rs).ravel()
    if np.any(flat < 1.0) or np.any(flat > nd.alpha):
        raise DomainError("radial stress is defined for 1 <= R <= alpha")
    if not callable(W1) and not callable(W2):
        out = kernels.sigma_rr_quadrature(flat, float(x), nd.alpha, nd.p_hat_o, float(W1),
                                          float(W2), options.quad_tol, options.quad_depth)
    else:
        out = np.empty_like(flat)
        upper, acc = nd.alpha, 0.0
        for i in np.argsort(-flat, kind="stable"):
            acc += adaptive_simpson(lambda s: integrand_f(s, x, W1, W2), float(flat[i]),
                                    upper, options.quad_tol, options.quad_depth)
            upper = float(flat[i])
            out[i] = -nd.p_hat_o - acc
    return float(out[0]) if Rs.ndim == 0 else out.reshape(Rs.shape)


def _wvals(W, I1, I2):
    return W(I1, I2) if callable(W) else W


def hoop_stress(R, x, sigma_rr, W1=0.5, W2=0.0):
    """Physical hoop stress from the radial stress at the same radius.

    The Lagrange multiplier is eliminated:
    ``sigma_hoop = sigma_rr + 2 W1 (r^2/R^2 - R^4/r^4) + 2 W2 (r^4/R^4 - R^2/r^2)``.
    """
    R = np.asarray(R, dtype=float)
    r = shell_map(R, x)
    q = r * r / (R * R)
    I1, I2 = shell_invariants(R, r)
    w1, w2 = _wvals(W1, I1, I2), _wvals(W2, I1, I2)
    return sigma_rr + 2.0 * w1 * (q - 1.0 / (q * q)) + 2.0 * w2 * (q * q - 1.0 / q)


def pressure_field(R, x, sigma_rr, W1=0.5, W2=0.0):
    """Lagrange multiplier ``p = -sigma_rr + 2 W1 R^4/r^4 - 2 W2 r^4/R^4``."""
    R = np.asarray(R, dtype=float)
    r = shell_map(R, x)
    q = r * r / (R * R)
    I1, I2 = shell_invariants(R, r)
    return -sigma_rr + 2.0 * _wvals(W1, I1, I2) / (q * q) - 2.0 * _wvals(W2, I1, I2) * q * q


def hoop_stress_component(R, x, p, W1=0.5, W2=0.0):
    """Contravariant hoop component ``-p/r^2 + 2 W1/R^2 - 2 W2 R^2/r^4`` (spherical chart)."""
    R = np.asarray(R, dtype=float)
    r = shell_map(R, x)
    I1, I2 = shell_invariants(R, r)
    return -p / (r * r) + 2.0 * _wvals(W1, I1, I2) / (R * R) \
        - 2.0 * _wvals(W2, I1, I2) * R * R / r ** 4


def radial_equilibrium_residual(R, x, nd: NondimensionalProblem, h=1e-5):
    """Central-difference residual of ``d sigma_rr/dR + (2 r'/r)(sigma_rr - sigma_hoop)``.

    Evaluated on the neo-Hookean closed form at every radius in ``R``; near
    the walls the stencil is shifted inward so it stays inside the shell.
    """
    Rs = np.atleast_1d(np.asarray(R, dtype=float))
    c = np.clip(Rs, 1.0 + h, nd.alpha - h)
    ds = (radial_stress_closed_form(c + h, x, nd) - radial_stress_closed_form(c - h, x, nd)) / (2 * h)
    # the stencil centre may differ from R; evaluate the balance at the centre
    srr = radial_stress_closed_form(c, x, nd)
    r = shell_map(c, x)
    rp = c * c / (r * r)
    return ds + 2.0 * rp / r * (srr - hoop_stress(c, x, srr))


# ---------------------------------------------------------------------------
# Surface quantities


def surface_tension(x, omega_s, mu_s, kappa_s):
    """Neo-Hookean surface tension ``(Jb - 1) kappa_s + (1 - 1/Jb) mu_s`` with ``Jb = x^2 e^{2 omega_s}``.

    Units follow ``mu_s`` and ``kappa_s``; pass ``xi`` and ``eta`` to get
    ``gamma0 / (mu R_i)``.
    """
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    Jb = math.exp(2.0 * omega_s) * x * x
    return (Jb - 1.0) * kappa_s + (1.0 - 1.0 / Jb) * mu_s


def surface_tension_general(x, omega_s, surface: SurfaceMaterial):
    """``2 (W1 + Jb W2)`` at the equibiaxial state ``I1 = 2 Jb``, ``I2 = Jb^2``."""
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    Jb = math.exp(2.0 * omega_s) * x * x
    w1, w2 = surface.derivatives((2.0 * Jb, Jb * Jb))
    return 2.0 * (w1 + Jb * w2)


def elasto_capillary(x, omega_s, xi, eta):
    """``e_c = gamma0 / (2 mu R_i)``."""
    return 0.5 * surface_tension(x, omega_s, xi, eta)


def initial_elasto_capillary(omega_s, xi, eta):
    """``e_c`` at ``x = 1``: the surface tension left by the eigenstrain alone."""
    return elasto_capillary(1.0, omega_s, xi, eta)


def tangential_divergence(gamma0, r_i, theta):
    """Components ``(theta, phi)`` of the surface divergence of ``gamma0 g^{ab}`` on a sphere.

    Written out with the sphere's Christoffel symbols
    ``Gamma^theta_{phi phi} = -sin cos`` and ``Gamma^phi_{theta phi} = cot``;
    the two surviving terms of the theta component cancel.
    """
    s, c = math.sin(theta), math.cos(theta)
    if abs(s) < 1e-8:
        raise DomainError("theta too close to a pole of the spherical chart")
    s_tt = gamma0 / (r_i * r_i)
    s_pp = gamma0 / (r_i * r_i * s * s)
    theta_comp = (-s * c) * s_pp + (c / s) * s_tt
    phi_comp = 0.0
    return theta_comp, phi_comp


# ---------------------------------------------------------------------------
# Equilibrium


def _check_x(x, alpha):
    if not (x > 0.0 and x ** 3 > 1.0 - alpha ** 3):
        raise DomainError(f"x = {x!r} is outside the admissible range of the shell map")


def equilibrium_residual(x, nd: NondimensionalProblem, p_hat_o=None):
    """Dimensionless equilibrium residual ``g(x)``; zero at equilibrium.

    ``g`` is twice the interface balance returned by :func:`laplace_residual`.
    """
    _check_x(x, nd.alpha)
    return kernels.residual(float(x), *nd.kernel_args(p_hat_o))


def laplace_residual(x, nd: NondimensionalProblem, p_hat_o=None):
    """Interface balance ``sigma_i - e^{-4 omega_l} p_f - e^{2 omega_s} 2 gamma0 / r_i`` (units of ``mu``).

    Each term is rebuilt separately (closed-form stress, fluid law, surface
    law) rather than taken from ``g``.
    """
    _check_x(x, nd.alpha)
    nd = nd if p_hat_o is None else nd.with_pressure(p_hat_o)
    sigma_i = radial_stress_closed_form(1.0, x, nd)
    pf = 0.0
    if nd.wet:
        pf = fluid_state(x, nd.omega_l, nd.eta_f)[1]
    gamma0 = surface_tension(x, nd.omega_s, nd.xi, nd.eta)
    return sigma_i - math.exp(-4.0 * nd.omega_l) * pf - math.exp(2.0 * nd.omega_s) * 2.0 * gamma0 / x


def laplace_classical_check(p_in, p_out, gamma, r_i):
    """Classical Laplace residual ``p_in - p_out - 2 gamma / r_i``."""
    if not r_i > 0.0:
        raise DomainError("r_i must be positive")
    return p_in - p_out - 2.0 * gamma / r_i


def _build_solution(x, roots, nd):
    x = float(x)
    gamma0 = surface_tension(x, nd.omega_s, nd.xi, nd.eta)
    J0 = pf = None
    if nd.wet:
        J0, pf = fluid_state(x, nd.omega_l, nd.eta_f)
    return CavitySolution(
        x=x,
        lambda_o=outer_stretch(x, nd.alpha),
        residual=kernels.residual(x, *nd.kernel_args()),
        gamma0=gamma0,
        sigma_i=radial_stress_closed_form(1.0, x, nd),
        e_c=0.5 * gamma0,
        e_c_hat=initial_elasto_capillary(nd.omega_s, nd.xi, nd.eta),
        p_f=pf,
        J0=J0,
        roots=tuple(float(r) for r in roots),
        problem=nd,
    )


def _pick_root(roots):
    return min(roots, key=lambda r: (abs(r - 1.0), r))


def solve_stretch(nd: NondimensionalProblem, p_hat_o=None,
                  options: SolverOptions = DEFAULT_OPTIONS):
    """Solve ``g(x) = 0`` for the interface stretch at pressure ``p_hat_o``.

    Parameters
    ----------
    nd : NondimensionalProblem
    p_hat_o : float, optional
        Overrides ``nd.p_hat_o``.
    options : SolverOptions

    Returns
    -------
    CavitySolution
        ``x`` is the root closest to 1; all roots in the bracket are in ``roots``.

    Raises
    ------
    BracketingError
        If the scan finds no sign change.  The scan is attached.
    """
    if p_hat_o is not None:
        nd = nd.with_pressure(_finite("p_hat_o", p_hat_o))
    lo, hi = options.bracket
    # keep the scan inside the shell map's domain
    lo = max(lo, float(np.cbrt(max(1.0 - nd.alpha ** 3, 0.0))) * (1.0 + 1e-12))
    roots, xs, gs = kernels.find_roots(lo, hi, options.scan, *nd.kernel_args(),
                                       options.xtol, options.ftol)
    if not roots:
        raise BracketingError(
            f"no sign change of the equilibrium residual on [{lo:g}, {hi:g}] "
            f"with {options.scan} scan points", scan_x=xs, scan_g=gs)
    if len(roots) > 1:
        log.info("equilibrium residual has %d roots in the bracket: %s", len(roots), roots)
    return _build_solution(_pick_root(roots), roots, nd)


def relax(nd: NondimensionalProblem, options: SolverOptions = DEFAULT_OPTIONS):
    """Relaxed state: :func:`solve_stretch` with no applied pressure."""
    return solve_stretch(nd, 0.0, options)


def pressure_sweep(nd: NondimensionalProblem, grid: Sequence[float],
                   options: SolverOptions = DEFAULT_OPTIONS):
    """Solve independently at every pressure of ``grid``.

    ``strain`` is ``lambda_o - lambda_o*`` with ``lambda_o*`` from a fresh
    :func:`relax` of the same parameter set.  Rows follow the grid order.
    """
    star = relax(nd, options)
    rows = []
    for p in grid:
        sol = solve_stretch(nd, float(p), options)
        rows.append(SweepRow(
            p_hat_o=float(p), x=sol.x, lambda_o=sol.lambda_o,
            strain=sol.lambda_o - star.lambda_o, gamma0=sol.gamma0, e_c=sol.e_c,
            p_f=sol.p_f, residual=sol.residual))
    return rows


def stress_profile(nd: NondimensionalProblem, p_hat_o=None, n_samples=101,
                   options: SolverOptions = DEFAULT_OPTIONS, solution: CavitySolution = None):
    """Stress profile across the shell for the solved state at ``p_hat_o``.

    The last sample sits exactly at ``R = alpha`` where ``sigma_rr = -p_hat_o``.
    """
    if int(n_samples) < 2:
        raise DomainError("a stress profile needs at least 2 samples")
    if solution is None:
        solution = solve_stretch(nd, p_hat_o, options)
    nd = solution.problem
    R = np.linspace(1.0, nd.alpha, int(n_samples))
    R[-1] = nd.alpha
    srr = radial_stress_closed_form(R, solution.x, nd)
    return StressProfile(R=R, sigma_rr=srr, sigma_hoop=hoop_stress(R, solution.x, srr),
                         pressure=pressure_field(R, solution.x, srr), x=solution.x,
                         p_hat_o=nd.p_hat_o)


# ---------------------------------------------------------------------------
# General surface / shell materials


def general_residual(x, nd: NondimensionalProblem, surface: SurfaceMaterial,
                     shell: Optional[BulkMaterial] = None,
                     options: SolverOptions = DEFAULT_OPTIONS):
    """Interface balance (units of ``mu``) for an arbitrary surface model.

    ``surface`` must be expressed in units of ``mu R_i``.  The shell defaults
    to neo-Hookean (closed form); any other incompressible isotropic ``shell``
    goes through quadrature.  ``nd.xi`` and ``nd.eta`` are ignored.
    """
    _check_x(x, nd.alpha)
    if shell is None or shell.params.get("model") == "neo-hookean":
        sigma_i = radial_stress_closed_form(1.0, x, nd)
    else:
        sigma_i = radial_stress_quadrature(1.0, x, nd, shell=shell, options=options)
    pf = fluid_state(x, nd.omega_l, nd.eta_f)[1] if nd.wet else 0.0
    gamma0 = surface_tension_general(x, nd.omega_s, surface)
    return sigma_i - math.exp(-4.0 * nd.omega_l) * pf - math.exp(2.0 * nd.omega_s) * 2.0 * gamma0 / x


def solve_general(nd: NondimensionalProblem, surface: SurfaceMaterial,
                  shell: Optional[BulkMaterial] = None,
                  options: SolverOptions = DEFAULT_OPTIONS):
    """Scan-and-bisect solve of :func:`general_residual`; returns ``(x, roots)``.

    Runs in Python, so a coarser ``options.scan`` is advisable with a
    quadrature shell.
    """
    lo, hi = options.bracket
    lo = max(lo, float(np.cbrt(max(1.0 - nd.alpha ** 3, 0.0))) * (1.0 + 1e-12))

    def g(x):
        return general_residual(x, nd, surface, shell, options)

    xs = np.linspace(lo, hi, options.scan)
    gs = np.array([g(float(v)) for v in xs])
    roots = []
    for i in range(len(xs)):
        if gs[i] == 0.0:
            roots.append(float(xs[i]))
        elif i + 1 < len(xs) and gs[i] * gs[i + 1] < 0.0:
            a, b, ga = float(xs[i]), float(xs[i + 1]), gs[i]
            while True:
                m = 0.5 * (a + b)
                if m <= a or m >= b:
                    break
                gm = g(m)
                if gm == 0.0:
                    a = b = m
                    break
                if (gm < 0.0) == (ga < 0.0):
                    a, ga = m, gm
                else:
                    b = m
                if b - a <= options.xtol and abs(gm) <= options.ftol:
                    break
            roots.append(a if abs(g(a)) <= abs(g(b)) else b)
    if not roots:
        raise BracketingError("no sign change of the general interface balance",
                              scan_x=xs, scan_g=gs)
    return _pick_root(roots), tuple(roots)
