from math import cos, exp, sin

import numpy as np
import pytest

from elastocap.errors import ChartError, DomainError, NormalizationError
from elastocap.geometry import (MetricField, cartesian_field, christoffel, codazzi_residual,
                                cylindrical_field, deformed_normal, gauss_residual,
                                geometry_diagnostics, jacobian, nanson_residual, normal_stretch,
                                projected_metric, projector, riemann_lowered,
                                round_three_sphere_field, second_fundamental_form,
                                spherical_field, surface_jacobian, surface_jacobian_material)
from elastocap.tensor import Metric

from conftest import random_F, random_spd

SPHERE_PT = np.array([1.0, 0.7, 0.3])
CYL_PT = np.array([1.3, 0.4, 0.2])


def sphere_surface_field(r=1.0):
    return MetricField(lambda u: np.diag([r * r, (r * sin(u[0])) ** 2]), dim=2,
                       label="sphere surface", normal_axis=None)


def test_cartesian_christoffel_vanish():
    assert np.array_equal(christoffel(cartesian_field(), np.array([0.3, -1.0, 2.0]), 1e-3),
                          np.zeros((3, 3, 3)))


def test_sphere_surface_christoffel():
    th = 0.7
    gam = christoffel(sphere_surface_field(1.3), np.array([th, 0.2]), 1e-5)
    expected = np.zeros((2, 2, 2))
    expected[0, 1, 1] = -sin(th) * cos(th)
    expected[1, 0, 1] = expected[1, 1, 0] = cos(th) / sin(th)
    assert np.allclose(gam, expected, atol=1e-9)


def test_spherical_bulk_christoffel():
    R, th = 1.7, 0.9
    gam = christoffel(spherical_field(), np.array([R, th, 0.1]), 1e-5)
    assert gam[0, 1, 1] == pytest.approx(-R, rel=1e-9)
    assert gam[1, 0, 1] == pytest.approx(1 / R, rel=1e-9)
    assert np.allclose(gam, np.swapaxes(gam, 1, 2), atol=0)


def test_christoffel_order_two():
    # error of the FD Christoffel symbols drops by ~4 per halving of h
    th = 0.7
    exact = -sin(th) * cos(th)
    errs = [abs(christoffel(sphere_surface_field(), np.array([th, 0.2]), h)[0, 1, 1] - exact)
            for h in (1e-2, 5e-3, 2.5e-3)]
    for a, b in zip(errs, errs[1:]):
        assert 3.5 < a / b < 4.5


def test_intrinsic_curvature_order_two():
    # Rbar_1212 of the unit sphere is sin^2(theta)
    th = 0.7
    exact = sin(th) ** 2
    errs = [abs(riemann_lowered(sphere_surface_field(), np.array([th, 0.2]), (0, 1, 0, 1), h)
                - exact) for h in (1e-2, 5e-3, 2.5e-3)]
    for a, b in zip(errs, errs[1:]):
        assert 3.5 < a / b < 4.5


def test_sphere_second_fundamental_form():
    for r in (1.0, 2.5):
        point = np.array([r, 0.7, 0.3])
        K = second_fundamental_form(spherical_field(), point, 1e-4)
        assert np.allclose(K, np.diag([r, r * sin(0.7) ** 2]), rtol=0, atol=1e-10)


def test_cylinder_and_plane_second_fundamental_form():
    a = 1.3
    K = second_fundamental_form(cylindrical_field(), np.array([a, 0.4, 0.2]), 1e-4)
    assert np.allclose(K, np.diag([a, 0.0]), atol=1e-10)
    assert np.array_equal(second_fundamental_form(cartesian_field(), np.zeros(3), 1e-4),
                          np.zeros((2, 2)))


def test_second_fundamental_form_needs_foliation():
    field = MetricField(lambda x: np.eye(3), normal_axis=None)
    with pytest.raises(ChartError):
        second_fundamental_form(field, np.zeros(3))


@pytest.mark.parametrize("make,point", [(spherical_field, SPHERE_PT),
                                        (cylindrical_field, CYL_PT),
                                        (cartesian_field, np.array([0.1, 0.2, 0.3]))])
def test_gauss_and_codazzi_residuals(make, point):
    field = make()
    assert abs(gauss_residual(field, point, 1e-4)) < 1e-6
    c1, c2 = codazzi_residual(field, point, 1e-4)
    assert abs(c1) < 1e-6 and abs(c2) < 1e-6


def test_gauss_in_curved_ambient():
    # geodesic 2-spheres in the unit 3-sphere: ambient curvature is not zero
    field = round_three_sphere_field()
    point = np.array([0.8, 0.6, 0.1])
    ambient = riemann_lowered(field, point, (1, 2, 1, 2), 1e-4)
    assert ambient == pytest.approx(sin(0.8) ** 4 * sin(0.6) ** 2, rel=1e-6)
    assert abs(gauss_residual(field, point, 1e-4)) < 1e-6


def test_chart_singularity():
    with pytest.raises(ChartError):
        spherical_field().metric(np.array([1.0, 0.0, 0.0]))


def test_foliation_flag():
    assert spherical_field().check_foliation(SPHERE_PT)
    tilted = MetricField(lambda x: np.array([[1.0, 0.0, 0.3], [0.0, 1.0, 0.0], [0.3, 0.0, 1.0]]))
    assert not tilted.check_foliation(np.zeros(3))


def test_projector():
    assert np.allclose(projector([1.0, 0, 0], np.eye(3)), np.diag([0.0, 1, 1]))
    om = 0.3
    G = exp(2 * om) * np.eye(3)
    N = exp(-om) * np.array([1.0, 0, 0])
    assert np.allclose(projector(N, G), np.diag([0.0, 1, 1]), atol=1e-15)


def test_projector_properties(rng):
    for _ in range(10):
        G = Metric(random_spd(rng))
        N = rng.standard_normal(3)
        N /= G.norm(N)
        pi = projector(N, G)
        assert np.allclose(pi @ pi, pi, atol=1e-13)
        assert np.allclose(pi @ N, 0, atol=1e-13)
        t = rng.standard_normal(3)
        t -= G.inner(t, N) * N
        assert np.allclose(pi @ t, t, atol=1e-13)
        assert np.allclose(projected_metric(G, N) @ N, 0, atol=1e-13)


def test_projector_rejects_non_unit():
    with pytest.raises(NormalizationError):
        projector([2.0, 0, 0], np.eye(3))


def test_surface_jacobian_examples():
    I = np.eye(3)
    N = np.array([1.0, 0, 0])
    assert surface_jacobian(I, N, I, I) == pytest.approx(1.0)
    assert surface_jacobian(np.diag([1.7, 1, 1]), N, I, I) == pytest.approx(1.0)
    assert surface_jacobian(np.diag([1, 1.3, 1.3]), N, I, I) == pytest.approx(1.69)
    with pytest.raises(DomainError):
        surface_jacobian(np.diag([0.0, 1, 1]), N, I, I)


def test_surface_jacobian_variants_agree(rng):
    for _ in range(20):
        G, g = Metric(random_spd(rng)), Metric(random_spd(rng))
        F = random_F(rng)
        N = rng.standard_normal(3)
        N /= G.norm(N)
        a = surface_jacobian(F, N, G, g)
        assert a > 0
        assert a == pytest.approx(surface_jacobian_material(F, N, G, g), rel=1e-12)


def test_normal_stretch(rng):
    I = np.eye(3)
    N = np.array([1.0, 0, 0])
    assert normal_stretch(I, N, N, I) == 1.0
    assert normal_stretch(np.diag([1.4, 1, 1]), N, N, I) == pytest.approx(1.4)
    for _ in range(10):
        G, g = Metric(random_spd(rng)), Metric(random_spd(rng))
        F = random_F(rng)
        N = rng.standard_normal(3)
        N /= G.norm(N)
        n = deformed_normal(F, N, G, g)
        lam = normal_stretch(F, N, n, g)
        assert lam == pytest.approx(jacobian(F, G, g) / surface_jacobian(F, N, G, g), rel=1e-12)


def _radial_shell_gradient(R, x, R_i=1.0, om=0.0):
    # shell map r^3 = R^3 + r_i^3 - R_i^3 in spherical charts, at (R, theta)
    r = np.cbrt(R ** 3 + (x * R_i) ** 3 - R_i ** 3)
    return r, np.diag([R * R / (r * r), 1.0, 1.0])


def test_interface_normal_stretch():
    x, th = 1.15, 0.8
    r, F = _radial_shell_gradient(1.0, x)
    G = spherical_field().metric(np.array([1.0, th, 0.0]))
    g = spherical_field().metric(np.array([r, th, 0.0]))
    N = np.array([1.0, 0, 0])
    n = deformed_normal(F, N, G, g)
    assert jacobian(F, G, g) == pytest.approx(1.0, rel=1e-14)
    assert surface_jacobian(F, N, G, g) == pytest.approx(x * x, rel=1e-14)
    assert normal_stretch(F, N, n, g) == pytest.approx(1 / x ** 2, rel=1e-14)


def test_nanson(rng):
    I = np.eye(3)
    assert nanson_residual(I, np.array([1.0, 0, 0]), I, I) == 0.0
    for _ in range(10):
        G, g = Metric(random_spd(rng)), Metric(random_spd(rng))
        F = random_F(rng)
        N = rng.standard_normal(3)
        N /= G.norm(N)
        assert nanson_residual(F, N, G, g) < 1e-12
    # eigenstrained inclusion metric G = e^{2 om} G_sph, normal N = e^{-om} e_R
    om, x, th = 0.1, 1.05, 0.6
    G = exp(2 * om) * spherical_field().metric(np.array([1.0, th, 0.0])).matrix
    g = spherical_field().metric(np.array([x, th, 0.0]))
    F = x * np.eye(3)
    F[1, 1] = F[2, 2] = 1.0
    N = np.array([exp(-om), 0, 0])
    n = deformed_normal(F, N, G, g)
    assert np.allclose(n, [1.0, 0, 0], atol=1e-14)
    assert nanson_residual(F, N, G, g, n) < 1e-12


def test_diagnostics_table():
    rows = geometry_diagnostics(1e-4)
    assert [r[:2] for r in rows][:4] == [("sphere", "gauss"), ("sphere", "codazzi_1"),
                                         ("sphere", "codazzi_2"), ("sphere", "nanson")]
    assert all(r[2] < 1e-6 for r in rows)
