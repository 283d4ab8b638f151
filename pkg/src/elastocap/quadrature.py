"""Adaptive Simpson quadrature for scalar integrands given as Python callables."""


def adaptive_simpson(f, a, b, tol=1e-12, max_depth=40):
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Each interval is bisected until the two-panel and one-panel estimates
    agree to ``15 * tol`` (tolerance halves with every split) or the depth cap
    is hit; the Richardson-corrected value is returned.
    """
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    # explicit stack: (a, b, fa, fm, fb, whole, tol, depth)
    stack = [(a, b, fa, fm, fb, whole, tol, max_depth)]
    total = 0.0
    while stack:
        a, b, fa, fm, fb, whole, tol, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
        else:
            stack.append((m, b, fm, frm, fb, right, 0.5 * tol, depth - 1))
            stack.append((a, m, fa, flm, fm, left, 0.5 * tol, depth - 1))
    return total
