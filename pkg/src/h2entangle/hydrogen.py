"""Distance-dependent exchange coupling and equilibrium lengths of H2.

Distances are in Bohr radii and energies in Rydberg throughout. The
exchange coupling is J(r) = 1.641 r^(5/2) exp(-2 r) Ry, so a field B maps
each distance to the dimensionless coupling lam(r) = J(r) / B.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import deviation
from .deviation import MeasureKind, MinimumTag, as_kind
from .errors import NegativeDistance
from .numerics import bisect, golden_section_min

R_EXPERIMENT = 2.0
R_MIN_SEARCH = 0.01
R_MAX_SEARCH = 10.0
ROOT_TOL = 1e-10


@dataclass(frozen=True)
class CouplingModel:
    amplitude: float = 1.641
    power: float = 2.5
    decay: float = 2.0

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r < 0.0):
            raise NegativeDistance("internuclear distance must be >= 0")
        out = self.amplitude * r ** self.power * np.exp(-self.decay * r)
        return out if out.ndim else float(out)

    @property
    def r_max(self):
        return self.power / self.decay


HERRING_FLICKER = CouplingModel()


class ScanKind(Enum):
    TWO_MINIMA = "two_minima"
    SINGLE_AT_J_MAX = "single_at_j_max"
    NONE = "none"


@dataclass(frozen=True)
class EquilibriumScan:
    b_field: float
    target_lambda: float
    roots: tuple
    kind: ScanKind
    alpha: float = float("nan")
    tag: MinimumTag = field(default=MinimumTag.INTERIOR)

    def nearest_to(self, r_ref=R_EXPERIMENT):
        """(root, |root - r_ref|) for the root closest to ``r_ref``, or None."""
        if not self.roots:
            return None
        r = min(self.roots, key=lambda x: abs(x - r_ref))
        return r, abs(r - r_ref)


def j_of_r(r, model=HERRING_FLICKER):
    return model(r)


def j_max_location(model=HERRING_FLICKER, check=True):
    """Stationary point of J and its value.

    The analytic location power/decay is cross-checked by golden-section
    maximization.
    """
    r_max = model.r_max
    if check:
        r_num, _ = golden_section_min(lambda r: -model(r), 0.0, 5.0, tol=1e-10)
        if abs(r_num - r_max) > 1e-8:
            raise RuntimeError(f"J maximum at {r_num}, expected {r_max}")
    return r_max, model(r_max)


def roots_for_lambda(target_lambda, b_field, model=HERRING_FLICKER):
    """Distances where J(r)/B equals ``target_lambda``, one per side of r_max."""
    r_max, j_max = j_max_location(model, check=False)
    target = target_lambda * b_field
    if target > j_max or target <= 0.0:
        return ()

    def f(r):
        return model(r) - target

    lo = bisect(f, R_MIN_SEARCH, r_max, tol=ROOT_TOL)
    hi = bisect(f, r_max, R_MAX_SEARCH, tol=ROOT_TOL)
    return (lo, hi)


def equilibrium_lengths(kind, b_field, g=1.0, window=deviation.DEFAULT_WINDOW,
                        model=HERRING_FLICKER):
    """Distances at which the residual profile in r attains its minimum."""
    if b_field <= 0.0:
        raise ValueError(f"b_field must be > 0, got {b_field}")
    kind = as_kind(kind)
    res = deviation.analyze(kind, g, window)
    if res.tag is not MinimumTag.INTERIOR:
        return EquilibriumScan(b_field, res.lambda_min, (), ScanKind.NONE, res.alpha_min, res.tag)
    r_max, j_max = j_max_location(model, check=False)
    if res.lambda_min * b_field > j_max:
        # lam(r) never reaches the minimum; the residual is smallest where J peaks
        return EquilibriumScan(b_field, res.lambda_min, (r_max,), ScanKind.SINGLE_AT_J_MAX,
                               res.alpha_min, res.tag)
    roots = roots_for_lambda(res.lambda_min, b_field, model)
    return EquilibriumScan(b_field, res.lambda_min, roots, ScanKind.TWO_MINIMA,
                           res.alpha_min, res.tag)


def merge_field(kind, g=1.0, window=deviation.DEFAULT_WINDOW, model=HERRING_FLICKER):
    """Field above which the two equilibrium distances merge into r_max."""
    res = deviation.analyze(kind, g, window)
    return model(model.r_max) / res.lambda_min


def residual_profile(kind, b_field, r, g=1.0, window=deviation.DEFAULT_WINDOW,
                     model=HERRING_FLICKER):
    """Residual at the optimal scaling as a function of distance."""
    alpha = deviation.alpha_min(kind, g, window)
    return deviation.residual(kind, alpha, np.asarray(model(r)) / b_field, g)


def contour_grid(b_values, r_values, kind=MeasureKind.CONCURRENCE, g=1.0,
                 window=deviation.DEFAULT_WINDOW, model=HERRING_FLICKER, n_jobs=1):
    """Residual at optimal scaling over a (r, B) grid; shape ``(len(r), len(B))``.

    The optimal scaling is a property of the coupling window only, so one
    value serves every field column.
    """
    b_values = np.asarray(b_values, dtype=float)
    r_values = np.asarray(r_values, dtype=float)
    if b_values.size < 2 or r_values.size < 2:
        raise ValueError("contour grid needs at least 2 points per axis")
    if np.any(b_values <= 0.0) or np.any(r_values < 0.0):
        raise ValueError("field values must be > 0 and distances >= 0")
    alpha = deviation.alpha_min(kind, g, window)
    j = np.asarray(model(r_values))

    def column(b):
        return deviation.residual(kind, alpha, j / b, g)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            cols = list(pool.map(column, b_values))
    else:
        cols = [column(b) for b in b_values]
    return np.column_stack(cols)


def count_basins(profile):
    """Number of strict interior local minima of a sampled profile."""
    y = np.asarray(profile, dtype=float)
    return int(np.sum((y[1:-1] < y[:-2]) & (y[1:-1] <= y[2:])))
