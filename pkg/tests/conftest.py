import numpy as np
import pytest

from elastocap.tensor import det


def random_spd(rng, n=3, spread=0.3):
    A = np.eye(n) + spread * rng.standard_normal((n, n))
    return A @ A.T + 0.2 * np.eye(n)


def random_F(rng, n=3, spread=0.25):
    F = np.eye(n) + spread * rng.standard_normal((n, n))
    while det(F) <= 0.1:
        F = np.eye(n) + spread * rng.standard_normal((n, n))
    return F


def isochoric(F, G, g):
    """Rescale ``F`` so that ``sqrt(det g / det G) det F = 1``."""
    J = np.sqrt(det(g) / det(G)) * det(F)
    return F / J ** (1.0 / F.shape[0])


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


# Acceptance report: tests in test_acceptance.py record outcomes here and the
# terminal summary prints one PASS/FAIL line per criterion.
ACCEPTANCE = {}


def record(criterion, ok, detail):
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))
    print(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[key]
        ok = all(p[0] for p in parts)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {key}: "
                                    + "; ".join(p[1] for p in parts))
