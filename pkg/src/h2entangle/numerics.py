"""One-dimensional quadrature, minimization and root finding."""
import math

import numpy as np

from .errors import QuadratureNotConverged

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
MAX_PANELS = 2 ** 20


def _simpson(y, h):
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


def integrate(f, a, b, tol=1e-12, min_panels=8, full_output=False):
    """Composite Simpson rule, doubling the panel count until two estimates agree.

    ``f`` must accept a numpy array. Returns the estimate, or
    ``(estimate, panels)`` when ``full_output`` is set.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    n = min_panels
    x = np.linspace(a, b, n + 1)
    y = np.asarray(f(x), dtype=float)
    prev = _simpson(y, (b - a) / n)
    while n < MAX_PANELS:
        # reuse previous nodes; evaluate only the new midpoints
        mid = np.asarray(f(0.5 * (x[:-1] + x[1:])), dtype=float)
        n *= 2
        x = np.linspace(a, b, n + 1)
        y_new = np.empty(n + 1)
        y_new[0::2] = y
        y_new[1::2] = mid
        y = y_new
        est = _simpson(y, (b - a) / n)
        if abs(est - prev) < tol:
            return (est, n) if full_output else est
        prev = est
    raise QuadratureNotConverged(
        f"no convergence to {tol:g} on [{a}, {b}] after {MAX_PANELS} panels")


def golden_section_min(f, a, b, tol=1e-6):
    """Minimize a unimodal ``f`` on [a, b]. Returns ``(x, f(x))``."""
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def bisect(f, a, b, tol=1e-10, max_iter=200):
    """Root of ``f`` on a sign-changing bracket [a, b]."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError(f"f does not change sign on [{a}, {b}]")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0 or 0.5 * (b - a) < tol:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def trapezoid_weights(x):
    """Weights ``w`` with ``sum(w * y)`` equal to the trapezoid integral of y over x."""
    x = np.asarray(x, dtype=float)
    dx = np.diff(x)
    w = np.zeros_like(x)
    w[:-1] += 0.5 * dx
    w[1:] += 0.5 * dx
    return w
