"""Comparison with configuration-interaction (CISD) data for H2.

Covers the reduced entropy from CISD excitation coefficients, the entropy of
the Ising model written as a function of the correlation energy, its
small-E expansion, and the processing of external (R, E_corr, S) series.
CI data enter as CSV files; no quantum-chemistry calculation happens here.
"""
import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (InvariantViolation, NonPositive, NotNormalized, ParseError,
                     SingularBasis, TooFewSamples)
from .measures import binary_entropy
from .numerics import trapezoid_weights

CSV_HEADER = ("R_angstrom", "E_corr", "S_vN")
PURITY_COLUMNS = ("Tr_rho", "Tr_rho2")

# values printed alongside the fitted small-E coefficients
PRINTED_A = 0.5
PRINTED_SLOPE = 0.25 * (1.0 + 1.0 / math.log(2.0))
ANALYTIC_A = 0.5 + 1.0 / (4.0 * math.log(2.0))
ANALYTIC_B = -1.0 / (4.0 * math.log(2.0))


@dataclass(frozen=True)
class CisdCoefficients:
    c0: float
    singles: tuple = ()
    doubles_mixed: tuple = ()
    doubles_paired: tuple = ()

    def populations(self):
        """(p, q): weight of the excited-orbital and reference-orbital sectors."""
        sq = lambda xs: float(np.sum(np.abs(np.asarray(xs, dtype=complex)) ** 2))
        p = sq(self.singles) + sq(self.doubles_mixed)
        q = abs(self.c0) ** 2 + sq(self.doubles_paired)
        return p, q


@dataclass(frozen=True)
class SampleSeries:
    abscissa: np.ndarray
    e_corr: np.ndarray
    entropy: np.ndarray
    trace_rho: np.ndarray = None
    trace_rho_sq: np.ndarray = None

    def __len__(self):
        return len(self.abscissa)

    def __getitem__(self, idx):
        opt = lambda a: None if a is None else a[idx]
        return SampleSeries(self.abscissa[idx], self.e_corr[idx], self.entropy[idx],
                            opt(self.trace_rho), opt(self.trace_rho_sq))

    @property
    def has_purity(self):
        return self.trace_rho is not None


@dataclass(frozen=True)
class LogLinearFit:
    a_coef: float
    b_coef: float
    rss: float

    def __call__(self, e):
        e = np.asarray(e, dtype=float)
        return self.a_coef * e + self.b_coef * e * np.log(e)


class Denominator(Enum):
    SQUARED = "squared"
    PLAIN = "plain"


def cisd_entropy(c, tol=1e-8):
    p, q = c.populations()
    if abs(p + q - 1.0) > tol:
        raise NotNormalized(f"coefficient norm is {p + q:.12g}, expected 1")
    # p + q = 1 up to tol; use p alone so the result is an exact binary entropy
    return float(binary_entropy(min(max(p, 0.0), 1.0)))


def s_of_ecorr(e):
    """Ising-model entropy (bits) as a function of the correlation energy (units of B)."""
    e = np.asarray(e, dtype=float)
    if np.any(e <= 0.0):
        raise NonPositive("correlation energy must be > 0")
    d = 2.0 * (e + 2.0)
    out = -(e * np.log(e / d) + (e + 4.0) * np.log((e + 4.0) / d)) / ((e + 2.0) * np.log(4.0))
    return out if out.ndim else float(out)


def _lstsq_log_linear(e, s, weights=None):
    e = np.asarray(e, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.ptp(e) == 0.0:
        raise SingularBasis("all E_corr values are equal")
    basis = np.column_stack([e, e * np.log(e)])
    w = np.ones_like(e) if weights is None else np.asarray(weights, dtype=float)
    coef, *_ = np.linalg.lstsq(basis * w[:, None], s * w, rcond=None)
    rss = float(np.sum((basis @ coef - s) ** 2))
    return LogLinearFit(float(coef[0]), float(coef[1]), rss)


def expansion_coefficients(e_lo=1e-6, e_hi=1e-2, n=200):
    """Small-E coefficients (a, b) of S ~ a E + b E ln E, fitted to ``s_of_ecorr``.

    Residuals are weighted by 1/E so every decade of the geometric grid counts
    equally; unweighted, the O(E^2 ln E) terms at the top of the grid bias b.
    """
    e = np.geomspace(e_lo, e_hi, n)
    fit = _lstsq_log_linear(e, s_of_ecorr(e), weights=1.0 / e)
    return fit.a_coef, fit.b_coef


def fit_log_linear(series):
    """Least squares of entropy against {E, E ln E} on a series with E_corr > 0."""
    if len(series) < 2:
        raise TooFewSamples("log-linear fit needs at least 2 samples")
    if np.any(series.e_corr <= 0.0):
        raise NonPositive("log-linear fit needs E_corr > 0")
    return _lstsq_log_linear(series.e_corr, series.entropy)


def _float(token, lineno, name):
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"{name}: cannot parse {token!r} as a number", lineno) from None
    return value


def ingest_series(path):
    """Read ``R_angstrom,E_corr,S_vN`` rows (optional ``Tr_rho,Tr_rho2``)."""
    rows = []
    header = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = [f.strip() for f in next(csv.reader([text]))]
            if header is None:
                if tuple(fields[:3]) != CSV_HEADER:
                    raise ParseError(f"expected header {','.join(CSV_HEADER)}", lineno)
                if len(fields) not in (3, 5) or (len(fields) == 5 and tuple(fields[3:]) != PURITY_COLUMNS):
                    raise ParseError(f"unexpected columns {fields[3:]}", lineno)
                header = fields
                continue
            if len(fields) != len(header):
                raise ParseError(f"expected {len(header)} fields, got {len(fields)}", lineno)
            rows.append((lineno, [_float(t, lineno, n) for t, n in zip(fields, header)]))
    if header is None:
        raise ParseError("missing header line")
    for lineno, vals in rows:
        if not all(math.isfinite(v) for v in vals):
            raise InvariantViolation(f"line {lineno}: non-finite value in {vals}")
        if not 0.0 <= vals[2] <= 1.0:
            raise InvariantViolation(f"line {lineno}: entropy {vals[2]} outside [0, 1]")
    rows.sort(key=lambda item: item[1][0])
    for (l1, v1), (l2, v2) in zip(rows, rows[1:]):
        if v1[0] == v2[0]:
            raise InvariantViolation(f"lines {l1} and {l2}: duplicate R = {v1[0]}")
    data = np.array([vals for _, vals in rows], dtype=float).reshape(-1, len(header))
    purity = (data[:, 3], data[:, 4]) if len(header) == 5 else (None, None)
    return SampleSeries(data[:, 0], data[:, 1], data[:, 2], *purity)


def write_series(series, path, comment=None):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        w = csv.writer(fh, lineterminator="\n")
        cols = [series.abscissa, series.e_corr, series.entropy]
        header = list(CSV_HEADER)
        if series.has_purity:
            cols += [series.trace_rho, series.trace_rho_sq]
            header += list(PURITY_COLUMNS)
        w.writerow(header)
        for row in zip(*cols):
            w.writerow([f"{v:.9g}" for v in row])


def alpha_over_r(series, denominator=Denominator.SQUARED):
    """Scaling of entropy onto E_corr along the R axis, trapezoid rule.

    ``SQUARED`` divides by int S^2 dR (least-squares optimum); ``PLAIN``
    divides by int S dR.
    """
    if len(series) < 3:
        raise TooFewSamples(f"need at least 3 samples, got {len(series)}")
    denominator = Denominator(denominator)
    w = trapezoid_weights(series.abscissa)
    s = series.entropy
    num = np.sum(w * series.e_corr * s)
    den = np.sum(w * s * s) if denominator is Denominator.SQUARED else np.sum(w * s)
    return float(num / den)


def split_ascending_branch(series):
    """Longest leading run over which E_corr strictly increases."""
    e = series.e_corr
    n = 1
    while n < len(e) and e[n] > e[n - 1]:
        n += 1
    return series[:n]


def synthetic_series(r_angstrom=None, b_field=0.375):
    """Ising-model series over an R grid, for exercising the CI pipeline.

    R (Angstrom) is converted to Bohr radii, mapped to lam = J(r)/B and
    evaluated with the g = 1 closed forms. The states are pure, so both
    purity columns are 1.
    """
    from .deviation import correlation_energy
    from .hydrogen import j_of_r
    from .measures import ground_state_entropy

    bohr_in_angstrom = 0.529177210903
    if r_angstrom is None:
        r_angstrom = np.round(np.linspace(0.2, 4.0, 39), 10)
    r_angstrom = np.asarray(r_angstrom, dtype=float)
    lam = np.asarray(j_of_r(r_angstrom / bohr_in_angstrom)) / b_field
    ones = np.ones_like(lam)
    return SampleSeries(r_angstrom, np.asarray(correlation_energy(lam)),
                        np.asarray(ground_state_entropy(1.0, lam)), ones, ones.copy())
