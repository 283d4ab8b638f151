from math import exp, sqrt

import numpy as np
import pytest

from elastocap.constitutive import (bulk_kinematics, cauchy_compressible_isotropic,
                                    cauchy_incompressible_isotropic,
                                    cauchy_transversely_isotropic, constant_tension_surface,
                                    energy_fd_check, first_pk_from_cauchy, fluid_stress,
                                    hyperelastic_fluid, mooney_rivlin, neo_hookean,
                                    reference_traction, second_pk_from_cauchy,
                                    surface_cauchy_incompressible, surface_cauchy_isotropic,
                                    surface_kinematics, surface_neo_hookean,
                                    surface_neo_hookean_incompressible, transversely_isotropic)
from elastocap.errors import DomainError, IncompressibilityError, UnsupportedModelError
from elastocap.geometry import spherical_field
from elastocap.tensor import Metric

from conftest import isochoric, random_F, random_spd


def test_identity_strain_incompressible():
    mat = mooney_rivlin(0.3, 0.2)
    kin = bulk_kinematics(np.eye(3), np.eye(3), np.eye(3))
    s = cauchy_incompressible_isotropic(mat, kin, 0.7).sigma
    assert np.allclose(s, (-0.7 + 0.6 - 0.4) * np.eye(3))


def test_radial_neo_hookean_component():
    mu, x, R, th = 1.0, 1.2, 1.5, 0.8
    r = np.cbrt(R ** 3 + x ** 3 - 1)
    F = np.diag([R * R / (r * r), 1.0, 1.0])
    G = spherical_field().metric(np.array([R, th, 0.0]))
    g = spherical_field().metric(np.array([r, th, 0.0]))
    kin = bulk_kinematics(F, G, g)
    p = 0.4
    s = cauchy_incompressible_isotropic(neo_hookean(mu), kin, p).sigma
    assert s[0, 0] == pytest.approx(-p + mu * R ** 4 / r ** 4, rel=1e-13)
    # contravariant hoop component -p/r^2 + mu/R^2
    assert s[1, 1] == pytest.approx(-p / r ** 2 + mu / R ** 2, rel=1e-13)


def test_incompressibility_enforced():
    kin = bulk_kinematics(1.1 * np.eye(3), np.eye(3), np.eye(3))
    with pytest.raises(IncompressibilityError):
        cauchy_incompressible_isotropic(neo_hookean(1.0), kin, 0.0)


def test_compressible_stress_free_reference():
    for mat in (neo_hookean(1.0, incompressible=False, lam=3.0),
                mooney_rivlin(0.3, 0.2, incompressible=False)):
        kin = bulk_kinematics(np.eye(3), np.eye(3), np.eye(3))
        assert np.allclose(cauchy_compressible_isotropic(mat, kin).sigma, 0, atol=1e-15)


def test_uniform_dilation():
    lam_s = 1.1
    mat = mooney_rivlin(0.3, 0.2, incompressible=False, kappa=2.0)
    kin = bulk_kinematics(lam_s * np.eye(3), np.eye(3), np.eye(3))
    W1, W2, W3 = mat.derivatives(kin.invariants)
    expected = 2 / lam_s ** 3 * (W1 * lam_s ** 2 + 2 * W2 * lam_s ** 4 + W3 * lam_s ** 6)
    assert np.allclose(cauchy_compressible_isotropic(mat, kin).sigma, expected * np.eye(3),
                       atol=1e-14)


def test_transversely_isotropic_reductions(rng):
    base = neo_hookean(1.0, incompressible=False)
    ti = transversely_isotropic(base, [1.0, 0, 0])
    for _ in range(5):
        kin = bulk_kinematics(random_F(rng), np.eye(3), np.eye(3))
        assert np.array_equal(cauchy_transversely_isotropic(ti, kin).sigma,
                              cauchy_compressible_isotropic(base, kin).sigma)


def test_fiber_only():
    fib = transversely_isotropic(mooney_rivlin(0, 0, incompressible=False, kappa=0.0),
                                 [1.0, 0, 0], a4=0.3)
    kin = bulk_kinematics(np.eye(3), np.eye(3), np.eye(3))
    s = cauchy_transversely_isotropic(fib, kin).sigma
    expected = np.zeros((3, 3))
    expected[0, 0] = 0.6
    assert np.allclose(s, expected, atol=1e-15)


def test_fiber_incompressible_stretch():
    lam, a4, a5 = 1.3, 0.2, 0.05
    ti = transversely_isotropic(neo_hookean(0.0), [1.0, 0, 0], a4=a4, a5=a5)
    F = np.diag([lam, 1 / sqrt(lam), 1 / sqrt(lam)])
    kin = bulk_kinematics(F, np.eye(3), np.eye(3))
    s = cauchy_transversely_isotropic(ti, kin, p=0.0).sigma
    assert s[0, 0] == pytest.approx(2 * a4 * lam ** 2 + 4 * a5 * lam ** 4, rel=1e-13)


def test_fluid():
    f = hyperelastic_fluid(20.0)
    assert np.array_equal(fluid_stress(f, 1.0).sigma, np.zeros((3, 3)))
    assert fluid_stress(f, 1.331).pressure == pytest.approx(6.62, rel=1e-13)
    om = 0.1
    J0 = exp(om) ** 3 * exp(-3 * om)
    assert fluid_stress(f, J0).pressure == pytest.approx(0.0, abs=1e-14)
    assert fluid_stress(f, 0.9).pressure < 0
    assert f.d2_energy(0.7) > 0
    with pytest.raises(DomainError):
        fluid_stress(f, 0.0)
    with pytest.raises(DomainError):
        hyperelastic_fluid(-1.0)


def test_surface_neo_hookean_natural_state():
    s = surface_neo_hookean(1.0, 2.0)
    kin = surface_kinematics(np.eye(2), np.eye(2), np.eye(2))
    assert np.allclose(surface_cauchy_isotropic(s, kin).sigma, 0, atol=1e-15)


def test_surface_stress_on_sphere():
    x, om, mu_s, kappa_s, th = 1.2, 0.1, 0.7, 1.3, 0.6
    s2 = np.sin(th) ** 2
    Gbar = exp(-2 * om) * np.diag([1.0, s2])
    gbar = x * x * np.diag([1.0, s2])
    kin = surface_kinematics(np.eye(2), Gbar, gbar)
    sigma = surface_cauchy_isotropic(surface_neo_hookean(mu_s, kappa_s), kin).sigma
    Jb = exp(2 * om) * x * x
    gamma0 = (Jb - 1) * kappa_s + (1 - 1 / Jb) * mu_s
    # physical components: sigma^{ab} g_ab per direction
    assert sigma[0, 0] * gbar[0, 0] == pytest.approx(gamma0, rel=1e-13)
    assert sigma[1, 1] * gbar[1, 1] == pytest.approx(gamma0, rel=1e-13)


def test_constant_tension_surface(rng):
    gamma = 0.37
    for _ in range(5):
        F = random_F(rng, 2)
        kin = surface_kinematics(F, np.eye(2), np.eye(2))
        s = surface_cauchy_isotropic(constant_tension_surface(gamma), kin).sigma
        assert np.allclose(s, gamma * np.eye(2), atol=1e-14)


def test_surface_incompressible():
    mu_s = 0.8
    smat = surface_neo_hookean_incompressible(mu_s)
    kin = surface_kinematics(np.eye(2), np.eye(2), np.eye(2))
    assert np.allclose(surface_cauchy_incompressible(smat, kin, mu_s).sigma, 0)
    lam = 1.4
    kin = surface_kinematics(np.diag([lam, 1 / lam]), np.eye(2), np.eye(2))
    s = surface_cauchy_incompressible(smat, kin, 0.3).sigma
    assert np.allclose(s, -0.3 * np.eye(2) + mu_s * kin.b_sharp)
    bad = surface_kinematics(np.diag([1.1, 1.0]), np.eye(2), np.eye(2))
    with pytest.raises(IncompressibilityError):
        surface_cauchy_incompressible(smat, bad, 0.0)


def test_piola_identities(rng):
    sigma = random_spd(rng)
    assert np.allclose(first_pk_from_cauchy(sigma, np.eye(3), np.eye(3), np.eye(3)), sigma)
    G, g = Metric(random_spd(rng)), Metric(random_spd(rng))
    F = random_F(rng)
    P = first_pk_from_cauchy(sigma, F, G, g)
    J = sqrt(g.det / G.det) * np.linalg.det(F)
    assert np.allclose(P @ F.T, J * sigma, atol=1e-12)
    S = second_pk_from_cauchy(sigma, F, G, g)
    assert np.allclose(S, S.T, atol=1e-12)


def test_interface_tractions():
    x, th, om = 1.1, 0.5, 0.05
    R, r = 1.0, x
    # shell side: F = diag(R^2/r^2, 1, 1), radial traction = x^2 sigma_i
    F = np.diag([R * R / (r * r), 1.0, 1.0])
    G = spherical_field().metric(np.array([R, th, 0.0]))
    g = spherical_field().metric(np.array([r, th, 0.0]))
    sigma_i = 0.3
    sig = np.diag([sigma_i, 0.1, 0.1])
    P = first_pk_from_cauchy(sig, F, G, g)
    assert reference_traction(P, [1.0, 0, 0])[0] == pytest.approx(x * x * sigma_i, rel=1e-13)
    # inclusion side: eigenstrained metric, F = diag(x, 1, 1)
    Gf = Metric(exp(2 * om) * G.matrix)
    p_f = -0.2
    sig_f = p_f * g.inverse
    Ff = np.diag([x, 1.0, 1.0])
    Pf = first_pk_from_cauchy(sig_f, Ff, Gf, g)
    tr = reference_traction(Pf, [exp(-om), 0, 0])[0]
    assert tr == pytest.approx(exp(-4 * om) * x * x * p_f, rel=1e-13)


def _bulk_strain(rng, incompressible):
    G, g = random_spd(rng), random_spd(rng)
    F = random_F(rng)
    if incompressible:
        F = isochoric(F, G, g)
    return bulk_kinematics(F, G, g)


def test_fd_checks(rng):
    models = [
        (neo_hookean(1.3), True),
        (neo_hookean(1.3, incompressible=False, lam=2.0), False),
        (mooney_rivlin(0.4, 0.3), True),
        (mooney_rivlin(0.4, 0.3, incompressible=False, kappa=3.0), False),
    ]
    for mat, inc in models:
        for _ in range(10):
            assert energy_fd_check(mat, _bulk_strain(rng, inc)) < 1e-6
    for _ in range(10):
        F = random_F(rng, 2)
        kin = surface_kinematics(F, random_spd(rng, 2), random_spd(rng, 2))
        assert energy_fd_check(surface_neo_hookean(0.7, 1.2), kin) < 1e-6
    f = hyperelastic_fluid(20.0)
    for J in rng.uniform(0.6, 1.5, 10):
        assert energy_fd_check(f, J) < 1e-8


def test_unsupported_model():
    with pytest.raises(UnsupportedModelError):
        transversely_isotropic(hyperelastic_fluid(1.0), [1.0, 0, 0])
    kin = bulk_kinematics(np.eye(3), np.eye(3), np.eye(3))
    with pytest.raises(UnsupportedModelError):
        fluid_stress(neo_hookean(1.0), 1.0)
    with pytest.raises(UnsupportedModelError):
        cauchy_transversely_isotropic(neo_hookean(1.0), kin)


def test_negative_surface_moduli_rejected():
    with pytest.raises(DomainError):
        surface_neo_hookean(-1.0, 1.0)
