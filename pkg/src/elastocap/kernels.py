"""Backend selection for the solver inner loops.

The compiled extension is used when it imports; ``ELASTOCAP_PURE=1`` forces
the pure-Python fallback.  ``BACKEND`` names the active implementation.
"""

import os

from . import _pykernels as pure

compiled = None
if os.environ.get("ELASTOCAP_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

residual = _impl.residual
scan = _impl.scan
bisect = _impl.bisect
find_roots = _impl.find_roots
integrand = _impl.integrand
integrate_f = _impl.integrate_f
sigma_rr_quadrature = _impl.sigma_rr_quadrature
sigma_rr_closed = _impl.sigma_rr_closed
