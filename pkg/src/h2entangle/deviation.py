"""Correlation energy versus entanglement: least-squares scaling and residual profiles.

The residual ``E_corr(lam) - alpha * M(lam)`` compares the correlation energy
with an entanglement measure ``M`` (entropy or concurrence). The scaling
minimizing its mean square over a coupling window is

    alpha_min = int E_corr M dlam / int M^2 dlam
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .measures import ground_state_concurrence, ground_state_entropy
from .numerics import golden_section_min, integrate
from .spin_model import ground_energy

DEFAULT_WINDOW = (0.0, 1.0)
SCAN_POINTS = 64
LAMBDA_TOL = 1e-6
QUAD_TOL = 1e-12


class MeasureKind(Enum):
    ENTROPY = "entropy"
    CONCURRENCE = "concurrence"


class MinimumTag(Enum):
    INTERIOR = "interior"
    # profile increases from the lower window edge
    MONOTONE = "monotone"
    # profile still decreasing at the upper window edge
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class DeviationResult:
    alpha_min: float
    lambda_min: float
    residual_at_min: float
    integration_panels: int
    tag: MinimumTag = MinimumTag.INTERIOR


def as_kind(kind):
    return kind if isinstance(kind, MeasureKind) else MeasureKind(str(kind).lower())


def correlation_energy(lam, g=1.0):
    """|E_0| - 2 in units of B; for g = 1 this is sqrt(4 + lam^2) - 2."""
    out = -ground_energy(g, lam) - 2.0
    return out if np.ndim(out) else float(out)


def measure(kind, lam, g=1.0):
    kind = as_kind(kind)
    if kind is MeasureKind.ENTROPY:
        out = ground_state_entropy(g, lam)
    else:
        out = ground_state_concurrence(g, lam)
    return out if np.ndim(out) else float(out)


def residual(kind, alpha, lam, g=1.0):
    """E_corr(lam) - alpha * M(lam), vectorized over ``lam``."""
    out = correlation_energy(lam, g) - alpha * np.asarray(measure(kind, lam, g))
    return out if np.ndim(out) else float(out)


def mean_square_deviation(kind, alpha, window=DEFAULT_WINDOW, g=1.0, tol=QUAD_TOL):
    lo, hi = window
    return integrate(lambda x: residual(kind, alpha, x, g) ** 2, lo, hi, tol=tol)


@lru_cache(maxsize=256)
def _alpha_min(kind, g, lo, hi, tol):
    num, n1 = integrate(lambda x: correlation_energy(x, g) * measure(kind, x, g),
                        lo, hi, tol=tol, full_output=True)
    den, n2 = integrate(lambda x: measure(kind, x, g) ** 2,
                        lo, hi, tol=tol, full_output=True)
    return float(num / den), max(n1, n2)


def alpha_min(kind, g=1.0, window=DEFAULT_WINDOW, tol=QUAD_TOL, full_output=False):
    """Least-squares scaling of the measure onto the correlation energy.

    Reported positive: the integrand E_corr * M is non-negative on the window.
    """
    lo, hi = map(float, window)
    if not 0.0 <= lo < hi:
        raise ValueError(f"window must satisfy 0 <= lo < hi, got {window}")
    value, panels = _alpha_min(as_kind(kind), float(g), lo, hi, float(tol))
    return (value, panels) if full_output else value


def minimize_residual(kind, alpha, window=DEFAULT_WINDOW, g=1.0,
                      scan_points=SCAN_POINTS, tol=LAMBDA_TOL, panels=0):
    """Locate the minimum of the residual profile over the window.

    A uniform scan brackets the smallest sample; golden-section search then
    refines it. Minima sitting on the window edge are tagged instead.
    """
    kind = as_kind(kind)
    lo, hi = map(float, window)
    x = np.linspace(lo, hi, scan_points)
    y = residual(kind, alpha, x, g)
    i = int(np.argmin(y))
    if i == 0:
        return DeviationResult(alpha, lo, float(y[0]), panels, MinimumTag.MONOTONE)
    if i == scan_points - 1:
        return DeviationResult(alpha, hi, float(y[-1]), panels, MinimumTag.BOUNDARY)
    lam, val = golden_section_min(lambda t: residual(kind, alpha, t, g),
                                  x[i - 1], x[i + 1], tol=tol)
    return DeviationResult(alpha, float(lam), float(val), panels, MinimumTag.INTERIOR)


def analyze(kind, g=1.0, window=DEFAULT_WINDOW):
    """alpha_min over the window and the minimum of the resulting residual profile."""
    alpha, panels = alpha_min(kind, g, window, full_output=True)
    return minimize_residual(kind, alpha, window, g, panels=panels)


def relative_deviations(kind, alpha, lam, g=1.0):
    """|residual / M| and |residual / E_corr|; NaN where the denominator vanishes."""
    lam = np.asarray(lam, dtype=float)
    d = residual(kind, alpha, lam, g)
    m = np.asarray(measure(kind, lam, g))
    e = np.asarray(correlation_energy(lam, g))
    with np.errstate(divide="ignore", invalid="ignore"):
        rel_m = np.where(m > 0, np.abs(d / m), np.nan)
        rel_e = np.where(e > 0, np.abs(d / e), np.nan)
    return rel_m, rel_e
