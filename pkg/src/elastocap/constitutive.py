"""Hyperelastic bulk, fluid and surface models and their Cauchy stresses.

Materials carry *energy-derivative* callables: a bulk isotropic model maps
``(I1, I2, I3)`` to ``(W1, W2, W3)``, a transversely isotropic model maps
``(I1, ..., I5)`` to ``(W1, ..., W5)``, a surface model maps
``(Ibar1, Ibar2)`` to ``(Wbar1, Wbar2)``.  The optional ``energy`` callable
takes the same arguments and is only used by :func:`energy_fd_check`.

Eigenstrain never appears here explicitly: it lives in the material metric
``G`` (or ``Gbar``) handed to :func:`bulk_kinematics` /
:func:`surface_kinematics`, and every invariant is measured with it.

Incompressible models take the Lagrange multiplier as input.  Comparing them
against a finite-difference energy stress requires ``p = -2 I2 W2`` (bulk) and
``pbar = 0`` (surface with ``Wbar2 = 0``); see :func:`energy_fd_check`.
"""

from dataclasses import dataclass, field
from math import log, sqrt
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, IncompressibilityError, UnsupportedModelError
from .geometry import jacobian
from .tensor import as_metric, det, inv, principal_invariants, surface_invariants

INCOMPRESSIBILITY_TOL = 1e-10

INCOMPRESSIBLE_ISOTROPIC = "incompressible-isotropic"
COMPRESSIBLE_ISOTROPIC = "compressible-isotropic"
TI_COMPRESSIBLE = "transversely-isotropic-compressible"
TI_INCOMPRESSIBLE = "transversely-isotropic-incompressible"
HYPERELASTIC_FLUID = "hyperelastic-fluid"

SURFACE_COMPRESSIBLE = "compressible-isotropic"
SURFACE_INCOMPRESSIBLE = "incompressible-isotropic"


@dataclass(frozen=True)
class BulkMaterial:
    tag: str
    derivatives: Optional[Callable] = None
    energy: Optional[Callable] = None
    fiber: Optional[np.ndarray] = None
    # hyperelastic fluids: W'(J) and W''(J)
    d_energy: Optional[Callable] = None
    d2_energy: Optional[Callable] = None
    params: dict = field(default_factory=dict)

    @property
    def incompressible(self):
        return self.tag in (INCOMPRESSIBLE_ISOTROPIC, TI_INCOMPRESSIBLE)


@dataclass(frozen=True)
class SurfaceMaterial:
    tag: str
    derivatives: Callable
    energy: Optional[Callable] = None
    mu_s: float = 0.0
    kappa_s: float = 0.0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mu_s < 0 or self.kappa_s < 0:
            raise DomainError("surface moduli must be non-negative")


@dataclass(frozen=True)
class StressState:
    """Cauchy stress (2,0) with the Lagrange multiplier or pressure that produced it."""

    sigma: np.ndarray
    pressure: Optional[float] = None


@dataclass(frozen=True)
class BulkKinematics:
    F: np.ndarray
    G: object
    g: object
    C_flat: np.ndarray
    b_sharp: np.ndarray
    c_sharp: np.ndarray
    J: float
    invariants: tuple


@dataclass(frozen=True)
class SurfaceKinematics:
    F: np.ndarray
    G: object
    g: object
    C_flat: np.ndarray
    b_sharp: np.ndarray
    J: float
    invariants: tuple


def bulk_kinematics(F, G, g):
    """Strain measures of ``F`` relative to the material metric ``G``.

    ``C_flat = F* g F``, ``b_sharp = F G^-1 F*``,
    ``c_sharp = g^-1 (F^-* G F^-1) g^-1`` and ``J = sqrt(det g / det G) det F``.
    """
    G, g = as_metric(G), as_metric(g)
    F = np.asarray(F, dtype=float)
    if not det(F) > 0.0:
        raise DomainError("deformation gradient must have det F > 0")
    Finv = inv(F)
    C_flat = F.T @ g.matrix @ F
    C_flat = 0.5 * (C_flat + C_flat.T)
    b_sharp = F @ G.inverse @ F.T
    c_flat = Finv.T @ G.matrix @ Finv
    c_sharp = g.inverse @ c_flat @ g.inverse
    return BulkKinematics(F, G, g, C_flat, 0.5 * (b_sharp + b_sharp.T),
                          0.5 * (c_sharp + c_sharp.T), jacobian(F, G, g),
                          principal_invariants(C_flat, G))


def surface_kinematics(Fbar, Gbar, gbar):
    """Surface counterpart of :func:`bulk_kinematics` (no ``c_sharp`` is needed)."""
    Gbar, gbar = as_metric(Gbar), as_metric(gbar)
    F = np.asarray(Fbar, dtype=float)
    if F.shape != (2, 2):
        raise ValueError("surface deformation gradient must be 2x2")
    C_flat = F.T @ gbar.matrix @ F
    C_flat = 0.5 * (C_flat + C_flat.T)
    b_sharp = F @ Gbar.inverse @ F.T
    Jbar = sqrt(gbar.det / Gbar.det) * det(F)
    if not Jbar > 0.0:
        raise DomainError("surface deformation gradient must preserve orientation")
    return SurfaceKinematics(F, Gbar, gbar, C_flat, 0.5 * (b_sharp + b_sharp.T), Jbar,
                             surface_invariants(C_flat, Gbar))


def transverse_invariants(C_flat, G, N):
    """``(I1, I2, I3, I4, I5)`` with ``I4 = N.C.N`` and ``I5 = N.C^2.N``."""
    G = as_metric(G)
    N = np.asarray(N, dtype=float)
    I1, I2, I3 = principal_invariants(C_flat, G)
    CN = C_flat @ N
    return I1, I2, I3, float(N @ CN), float(CN @ G.inverse @ CN)


def _check_incompressible(J, tol=INCOMPRESSIBILITY_TOL, what="J"):
    if abs(J - 1.0) > tol:
        raise IncompressibilityError(f"|{what} - 1| = {abs(J - 1.0):.3e} exceeds {tol:.0e}")


# ---------------------------------------------------------------------------
# Material factories


def neo_hookean(mu, incompressible=True, lam=None):
    """Neo-Hookean solid, ``W = mu/2 (I1 - 3)`` plus a log volumetric term when compressible."""
    if incompressible:
        return BulkMaterial(
            INCOMPRESSIBLE_ISOTROPIC,
            derivatives=lambda I: (0.5 * mu, 0.0, 0.0),
            energy=lambda I: 0.5 * mu * (I[0] - 3.0),
            params={"model": "neo-hookean", "mu": mu},
        )
    lam = mu if lam is None else lam

    def derivatives(I):
        I3 = I[2]
        return 0.5 * mu, 0.0, (-0.5 * mu + 0.25 * lam * log(I3)) / I3

    def energy(I):
        lnI3 = log(I[2])
        return 0.5 * mu * (I[0] - 3.0) - 0.5 * mu * lnI3 + 0.125 * lam * lnI3 * lnI3

    return BulkMaterial(COMPRESSIBLE_ISOTROPIC, derivatives, energy,
                        params={"model": "neo-hookean", "mu": mu, "lambda": lam})


def mooney_rivlin(c1, c2, incompressible=True, kappa=None):
    """``W = c1 (I1 - 3) + c2 (I2 - 3)``; compressible variant adds a stress-free volumetric part."""
    if incompressible:
        return BulkMaterial(
            INCOMPRESSIBLE_ISOTROPIC,
            derivatives=lambda I: (c1, c2, 0.0),
            energy=lambda I: c1 * (I[0] - 3.0) + c2 * (I[1] - 3.0),
            params={"model": "mooney-rivlin", "c1": c1, "c2": c2},
        )
    kappa = 2.0 * (c1 + c2) if kappa is None else kappa
    a = c1 + 2.0 * c2

    def derivatives(I):
        I3 = I[2]
        return c1, c2, (-a + 0.25 * kappa * log(I3)) / I3

    def energy(I):
        lnI3 = log(I[2])
        return c1 * (I[0] - 3.0) + c2 * (I[1] - 3.0) - a * lnI3 + 0.125 * kappa * lnI3 * lnI3

    return BulkMaterial(COMPRESSIBLE_ISOTROPIC, derivatives, energy,
                        params={"model": "mooney-rivlin", "c1": c1, "c2": c2, "kappa": kappa})


def transversely_isotropic(base, fiber, a4=0.0, a5=0.0, k4=0.0):
    """Add fiber terms ``a4 (I4 - 1) + a5 (I5 - 1) + k4/2 (I4 - 1)^2`` to an isotropic ``base``."""
    if base.tag not in (INCOMPRESSIBLE_ISOTROPIC, COMPRESSIBLE_ISOTROPIC):
        raise UnsupportedModelError("base model must be isotropic")
    tag = TI_INCOMPRESSIBLE if base.incompressible else TI_COMPRESSIBLE
    fiber = np.asarray(fiber, dtype=float)

    def derivatives(I):
        W1, W2, W3 = base.derivatives(I[:3])
        return W1, W2, W3, a4 + k4 * (I[3] - 1.0), a5

    energy = None
    if base.energy is not None:
        def energy(I):
            e4 = I[3] - 1.0
            return base.energy(I[:3]) + a4 * e4 + a5 * (I[4] - 1.0) + 0.5 * k4 * e4 * e4

    return BulkMaterial(tag, derivatives, energy, fiber=fiber,
                        params={**base.params, "model": "transversely-isotropic",
                                "a4": a4, "a5": a5, "k4": k4})


def hyperelastic_fluid(kappa_f):
    """Fluid with ``W(J) = kappa_f/2 (J - 1)^2``, so that ``W'(J) = kappa_f (J - 1)``."""
    if kappa_f < 0:
        raise DomainError("fluid bulk modulus must be non-negative")
    return BulkMaterial(
        HYPERELASTIC_FLUID,
        energy=lambda J: 0.5 * kappa_f * (J - 1.0) ** 2,
        d_energy=lambda J: kappa_f * (J - 1.0),
        d2_energy=lambda J: kappa_f,
        params={"model": "fluid", "kappa_f": kappa_f},
    )


def surface_neo_hookean(mu_s, kappa_s):
    """Compressible membrane ``mu_s/2 (I1 - 2 - ln I2) + kappa_s/2 (sqrt(I2) - 1)^2``."""

    def derivatives(I):
        rJ = sqrt(I[1])
        return 0.5 * mu_s, -0.5 * mu_s / I[1] + 0.5 * kappa_s * (rJ - 1.0) / rJ

    def energy(I):
        return 0.5 * mu_s * (I[0] - 2.0 - log(I[1])) + 0.5 * kappa_s * (sqrt(I[1]) - 1.0) ** 2

    return SurfaceMaterial(SURFACE_COMPRESSIBLE, derivatives, energy, mu_s=mu_s, kappa_s=kappa_s,
                           params={"model": "neo-hookean"})


def surface_neo_hookean_incompressible(mu_s):
    """Area-preserving membrane ``mu_s/2 (I1 - 2)``."""
    return SurfaceMaterial(SURFACE_INCOMPRESSIBLE, lambda I: (0.5 * mu_s, 0.0),
                           lambda I: 0.5 * mu_s * (I[0] - 2.0), mu_s=mu_s,
                           params={"model": "neo-hookean"})


def constant_tension_surface(gamma):
    """Liquid-like surface ``W = gamma sqrt(I2)``: isotropic tension ``gamma`` at any strain."""
    return SurfaceMaterial(SURFACE_COMPRESSIBLE, lambda I: (0.0, 0.5 * gamma / sqrt(I[1])),
                           lambda I: gamma * sqrt(I[1]),
                           params={"model": "constant-tension", "gamma": gamma})


# ---------------------------------------------------------------------------
# Cauchy stresses


def _isotropic_part(W, I, kin):
    W1, W2, W3 = W[:3]
    I1, I2, I3 = I[:3]
    if not I3 > 0.0:
        raise DomainError(f"I3 must be positive, got {I3!r}")
    return (2.0 / sqrt(I3)) * ((I2 * W2 + I3 * W3) * kin.g.inverse
                               + W1 * kin.b_sharp - I3 * W2 * kin.c_sharp)


def cauchy_incompressible_isotropic(mat, kin, p):
    """``sigma = -p g# + 2 W1 b# - 2 W2 c#`` for ``J = 1``."""
    _check_incompressible(kin.J)
    W1, W2 = mat.derivatives(kin.invariants)[:2]
    sigma = -p * kin.g.inverse + 2.0 * W1 * kin.b_sharp - 2.0 * W2 * kin.c_sharp
    return StressState(sigma, p)


def cauchy_compressible_isotropic(mat, kin):
    """``sigma = 2/sqrt(I3) [(I2 W2 + I3 W3) g# + W1 b# - I3 W2 c#]``."""
    I = kin.invariants
    if not I[2] > 0.0:
        raise DomainError(f"I3 must be positive, got {I[2]!r}")
    return StressState(_isotropic_part(mat.derivatives(I), I, kin))


def fiber_vectors(mat, kin):
    """Spatial fiber ``n = F N`` and ``l^ab = n^a b^bc n_c + n^b b^ac n_c``."""
    n = kin.F @ mat.fiber
    bn = kin.b_sharp @ (kin.g.matrix @ n)
    return n, np.outer(n, bn) + np.outer(bn, n)


def cauchy_transversely_isotropic(mat, kin, p=None):
    """Transversely isotropic Cauchy stress; ``p`` is required for the incompressible tag.

    The isotropic part is computed by exactly the same arithmetic as the
    isotropic operations, so zero fiber moduli reproduce them bit for bit.
    """
    if mat.fiber is None:
        raise UnsupportedModelError("transversely isotropic model needs a fiber direction")
    if abs(kin.G.inner(mat.fiber, mat.fiber) - 1.0) > 1e-12:
        raise DomainError("fiber direction must be unit length in the material metric")
    I = transverse_invariants(kin.C_flat, kin.G, mat.fiber)
    W = mat.derivatives(I)
    n, ell = fiber_vectors(mat, kin)
    if mat.tag == TI_INCOMPRESSIBLE:
        if p is None:
            raise ValueError("incompressible model needs the Lagrange multiplier p")
        _check_incompressible(kin.J)
        sigma = -p * kin.g.inverse + 2.0 * W[0] * kin.b_sharp - 2.0 * W[1] * kin.c_sharp
        sigma = sigma + 2.0 * W[3] * np.outer(n, n) + 2.0 * W[4] * ell
        return StressState(sigma, p)
    if mat.tag != TI_COMPRESSIBLE:
        raise UnsupportedModelError(f"not a transversely isotropic model: {mat.tag}")
    sigma = _isotropic_part(W, I, kin)
    sigma = sigma + (2.0 / sqrt(I[2])) * (W[3] * np.outer(n, n) + W[4] * ell)
    return StressState(sigma)


def fluid_stress(mat, J, g=None):
    """Hydrostatic ``sigma = W'(J) g#``; the pressure field holds ``W'(J)``."""
    if mat.tag != HYPERELASTIC_FLUID:
        raise UnsupportedModelError("fluid_stress needs a hyperelastic fluid")
    if not J > 0.0:
        raise DomainError(f"J must be positive, got {J!r}")
    pf = mat.d_energy(J)
    ginv = np.eye(3) if g is None else as_metric(g).inverse
    return StressState(pf * ginv, pf)


def surface_cauchy_isotropic(smat, skin):
    """``sigma_bar = 2/sqrt(I2) [I2 Wbar2 gbar# + Wbar1 bbar#]``."""
    I1, I2 = skin.invariants
    if not I2 > 0.0:
        raise DomainError(f"Ibar2 must be positive, got {I2!r}")
    W1, W2 = smat.derivatives(skin.invariants)
    return StressState((2.0 / sqrt(I2)) * (I2 * W2 * skin.g.inverse + W1 * skin.b_sharp))


def surface_cauchy_incompressible(smat, skin, pbar):
    """``sigma_bar = -pbar gbar# + 2 Wbar1 bbar#`` for ``Jbar = 1``."""
    _check_incompressible(skin.J, what="Jbar")
    W1 = smat.derivatives(skin.invariants)[0]
    return StressState(-pbar * skin.g.inverse + 2.0 * W1 * skin.b_sharp, pbar)


def first_pk_from_cauchy(sigma, F, G, g):
    """``P^{aA} = J sigma^{ab} F^{-A}_b``."""
    F = np.asarray(F, dtype=float)
    return jacobian(F, G, g) * np.asarray(sigma) @ inv(F).T


def second_pk_from_cauchy(sigma, F, G, g):
    """``S = F^-1 P``."""
    return inv(np.asarray(F, dtype=float)) @ first_pk_from_cauchy(sigma, F, G, g)


def reference_traction(P, N):
    """Component contraction ``P^{aA} N^A`` used for interface tractions.

    This contracts with the contravariant components of the unit normal, so
    with a material metric ``e^{2 Omega} G_0`` the result carries a factor
    ``e^{-Omega}`` relative to ``P N_flat`` divided by the metric factor.
    """
    return np.asarray(P) @ np.asarray(N, dtype=float)


# ---------------------------------------------------------------------------
# Finite-difference energy checks


def _sym_gradient(func, C, h):
    """``2 dW/dC`` for a symmetric argument by symmetric central differences."""
    n = C.shape[0]
    S = np.empty((n, n))
    for a in range(n):
        for b in range(a, n):
            E = np.zeros((n, n))
            E[a, b] += h
            E[b, a] += h if a != b else 0.0
            d = (func(C + E) - func(C - E)) / (2.0 * h)
            S[a, b] = S[b, a] = d if a != b else 2.0 * d
    return S


def analytic_second_pk(mat, kin, p=None):
    """Referential stress ``S = J F^-1 sigma F^-*`` of a bulk or surface model."""
    if isinstance(mat, SurfaceMaterial):
        if mat.tag == SURFACE_INCOMPRESSIBLE:
            sigma = surface_cauchy_incompressible(mat, kin, 0.0 if p is None else p).sigma
        else:
            sigma = surface_cauchy_isotropic(mat, kin).sigma
    elif mat.tag in (TI_COMPRESSIBLE, TI_INCOMPRESSIBLE):
        if mat.tag == TI_INCOMPRESSIBLE and p is None:
            I2, W2 = kin.invariants[1], mat.derivatives(
                transverse_invariants(kin.C_flat, kin.G, mat.fiber))[1]
            p = -2.0 * I2 * W2
        sigma = cauchy_transversely_isotropic(mat, kin, p).sigma
    elif mat.tag == INCOMPRESSIBLE_ISOTROPIC:
        if p is None:
            p = -2.0 * kin.invariants[1] * mat.derivatives(kin.invariants)[1]
        sigma = cauchy_incompressible_isotropic(mat, kin, p).sigma
    elif mat.tag == COMPRESSIBLE_ISOTROPIC:
        sigma = cauchy_compressible_isotropic(mat, kin).sigma
    else:
        raise UnsupportedModelError(mat.tag)
    Finv = inv(kin.F)
    return kin.J * Finv @ sigma @ Finv.T


def energy_fd_check(material, strain, step=1e-5):
    """Largest relative gap between the analytic stress and ``2 dW/dC`` by central differences.

    ``strain`` is a :class:`BulkKinematics` / :class:`SurfaceKinematics` for
    solids and surfaces, or the volume ratio ``J`` for a hyperelastic fluid
    (then the absolute gap ``|W'(J) - dW/dJ|`` is returned).  Incompressible
    bulk models are compared at ``p = -2 I2 W2``, the multiplier for which the
    constrained representation coincides with the unconstrained energy
    derivative.
    """
    if getattr(material, "tag", None) == HYPERELASTIC_FLUID:
        J = float(strain)
        fd = (material.energy(J + step) - material.energy(J - step)) / (2.0 * step)
        return abs(material.d_energy(J) - fd)
    if material.energy is None:
        raise UnsupportedModelError("energy callable required for the finite-difference check")
    kin = strain
    if isinstance(material, SurfaceMaterial):
        def W(C):
            return material.energy(surface_invariants(C, kin.G))
    elif material.fiber is not None:
        def W(C):
            return material.energy(transverse_invariants(C, kin.G, material.fiber))
    else:
        def W(C):
            return material.energy(principal_invariants(C, kin.G))
    # step relative to the softest direction of C keeps the stencil inside the domain
    scale = float(np.min(np.linalg.eigvalsh(kin.C_flat)))
    S_fd = _sym_gradient(W, kin.C_flat, step * scale)
    S = analytic_second_pk(material, kin)
    ref = max(float(np.max(np.abs(S))), float(np.max(np.abs(S_fd))), 1e-300)
    return float(np.max(np.abs(S - S_fd))) / ref
