"""Time the compiled kernels against the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat N]

Prints one row per kernel with the best-of-N time for each backend and the
speed-up.  The compiled column is blank when the extension is not built.
"""

import argparse
import timeit

import numpy as np

from elastocap import kernels
from elastocap.kernels import pure

ARGS = (3.0, 1.0, 2.0, 0.0, 0.0, 0.2, 0.0, False)  # alpha, xi, eta, eta_f, p, om_s, om_l, wet
WET = (2.0, 0.5, 1.0, 20.0, 0.2, 0.1, 0.05, True)
RADII = np.linspace(1.0, 3.0, 50)


def cases(impl):
    return {
        "residual (1 call)": lambda: impl.residual(0.9, *ARGS),
        "scan (4000 pts)": lambda: impl.scan(0.2, 5.0, 4000, *ARGS),
        "find_roots dry": lambda: impl.find_roots(0.2, 5.0, 4000, *ARGS, 1e-12, 1e-14),
        "find_roots wet": lambda: impl.find_roots(0.2, 5.0, 4000, *WET, 1e-12, 1e-14),
        "sigma_rr quadrature (50 R)": lambda: impl.sigma_rr_quadrature(
            RADII, 0.85, 3.0, 0.0, 0.5, 0.0, 1e-12, 40),
        "sigma_rr closed form (50 R)": lambda: impl.sigma_rr_closed(RADII, 0.85, 3.0, 0.0),
    }


def best(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    py = {k: best(f, args.repeat) for k, f in cases(pure).items()}
    cy = ({k: best(f, args.repeat) for k, f in cases(kernels.compiled).items()}
          if kernels.compiled is not None else {})
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':30s} {'python [us]':>12s} {'cython [us]':>12s} {'speed-up':>9s}")
    for name, t_py in py.items():
        t_cy = cy.get(name)
        cy_txt = f"{t_cy * 1e6:12.2f}" if t_cy is not None else f"{'':12s}"
        ratio = f"{t_py / t_cy:8.1f}x" if t_cy else ""
        print(f"{name:30s} {t_py * 1e6:12.2f} {cy_txt} {ratio:>9s}")


if __name__ == "__main__":
    main()
