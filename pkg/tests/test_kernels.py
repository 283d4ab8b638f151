import numpy as np
import pytest

from elastocap import kernels
from elastocap.kernels import pure

compiled = kernels.compiled
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")

CASES = [
    (3.0, 1.0, 2.0, 0.0, 0.0, 0.2, 0.0, False),
    (1.5, 0.1, 0.2, 0.0, 0.3, 0.1, 0.0, False),
    (2.0, 0.5, 1.0, 20.0, 0.2, 0.1, 0.05, True),
    (1.02, 0.0, 0.0, 5.0, -0.1, 0.0, 0.1, True),
]


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (compiled is not None)


@pytest.mark.parametrize("args", CASES)
def test_pure_scan_matches_scalar(args):
    xs, gs = pure.scan(0.3, 3.0, 57, *args)
    ref = np.array([pure.residual(float(x), *args) for x in xs])
    assert np.allclose(gs, ref, rtol=1e-13, atol=1e-13, equal_nan=True)


@needs_compiled
@pytest.mark.parametrize("args", CASES)
def test_residual_and_roots_parity(args):
    for x in (0.4, 0.9, 1.0, 1.3, 2.5):
        assert compiled.residual(x, *args) == pytest.approx(pure.residual(x, *args),
                                                            rel=1e-13, abs=1e-13)
    xs_c, gs_c = compiled.scan(0.2, 5.0, 400, *args)
    xs_p, gs_p = pure.scan(0.2, 5.0, 400, *args)
    assert np.array_equal(xs_c, xs_p)
    assert np.allclose(gs_c, gs_p, rtol=1e-12, atol=1e-13, equal_nan=True)
    rc = compiled.find_roots(0.2, 5.0, 400, *args, 1e-12, 1e-14)[0]
    rp = pure.find_roots(0.2, 5.0, 400, *args, 1e-12, 1e-14)[0]
    assert len(rc) == len(rp) >= 1
    assert np.allclose(rc, rp, rtol=0, atol=1e-11)


@needs_compiled
def test_quadrature_parity():
    R = np.linspace(1.0, 3.0, 13)
    for x, w1, w2 in ((0.85, 0.5, 0.0), (1.2, 0.3, 0.2)):
        assert compiled.integrand(1.7, x, w1, w2) == pytest.approx(
            pure.integrand(1.7, x, w1, w2), rel=1e-14)
        assert compiled.integrate_f(1.0, 3.0, x, w1, w2, 1e-12, 40) == pytest.approx(
            pure.integrate_f(1.0, 3.0, x, w1, w2, 1e-12, 40), rel=1e-12)
        qc = compiled.sigma_rr_quadrature(R, x, 3.0, 0.1, w1, w2, 1e-12, 40)
        qp = pure.sigma_rr_quadrature(R, x, 3.0, 0.1, w1, w2, 1e-12, 40)
        assert np.allclose(qc, qp, rtol=1e-12, atol=1e-14)
        assert np.allclose(compiled.sigma_rr_closed(R, x, 3.0, 0.1),
                           pure.sigma_rr_closed(R, x, 3.0, 0.1), rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("impl", [pure, compiled], ids=["python", "cython"])
def test_quadrature_vs_closed_form(impl):
    if impl is None:
        pytest.skip("compiled extension not built")
    R = np.linspace(1.0, 3.0, 9)
    for x in (0.7, 0.95, 1.25):
        q = impl.sigma_rr_quadrature(R, x, 3.0, 0.0, 0.5, 0.0, 1e-12, 40)
        c = impl.sigma_rr_closed(R, x, 3.0, 0.0)
        assert np.allclose(q, c, rtol=0, atol=1e-10)


def test_bisect_rejects_same_sign():
    args = CASES[0]
    with pytest.raises(ValueError):
        pure.bisect(2.0, 3.0, *args, 1e-12, 1e-14)
    if compiled is not None:
        with pytest.raises(ValueError):
            compiled.bisect(2.0, 3.0, *args, 1e-12, 1e-14)
