"""Dense complex linear algebra for the 2x2 / 4x4 matrices of a two-qubit system.

Matrices are plain ``numpy`` complex arrays. Basis ordering is |00>, |01>,
|10>, |11> with the first qubit as the slowest index.
"""
from dataclasses import dataclass

import numpy as np

from .errors import BadTrace, NotHermitian, NotPSD

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_0, SIGMA_1, SIGMA_2, SIGMA_3)

HERMITIAN_TOL = 1e-10
OFFDIAG_TOL = 1e-14
PSD_CLAMP = -1e-8
# eigenvalues this small relative to the spectral radius are numerical zeros
RANK_RTOL = 1e-14
# off-diagonal entries below this (relative) are dropped without rotating
NEGLIGIBLE = 1e-20


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = as_matrix(m)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def kron(a, b):
    """Kronecker product, ``(a x b)[i*nb + k, j*nb + l] = a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    na, nb = a.shape[0], b.shape[0]
    out = np.empty((na * nb, na * nb), dtype=complex)
    for i in range(na):
        for j in range(na):
            out[i * nb:(i + 1) * nb, j * nb:(j + 1) * nb] = a[i, j] * b
    return out


def _offdiag_norm(a):
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return np.sqrt(np.sum(np.abs(off) ** 2))


def eigh(m, tol=OFFDIAG_TOL, max_sweeps=100):
    """Hermitian eigendecomposition by cyclic complex Jacobi rotations.

    Eigenvalues are returned in ascending order with the matching
    orthonormal eigenvectors as columns.
    """
    a = as_matrix(m).copy()
    if not is_hermitian(a):
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = max(np.max(np.abs(a), initial=0.0), 1.0)

    for _ in range(max_sweeps):
        if _offdiag_norm(a) < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < NEGLIGIBLE * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / r
                # real symmetric rotation on the phase-rotated block
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                u = np.eye(n, dtype=complex)
                u[p, p] = c
                u[p, q] = s
                u[q, p] = -s * phase.conjugate()
                u[q, q] = c * phase.conjugate()
                a = u.conj().T @ a @ u
                a[p, q] = a[q, p] = 0.0
                v = v @ u
    else:
        raise RuntimeError("Jacobi sweeps did not converge")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def _clean_spectrum(w):
    if np.any(w < PSD_CLAMP):
        raise NotPSD(f"eigenvalue {w.min():.3e} below {PSD_CLAMP}")
    cutoff = RANK_RTOL * max(np.max(np.abs(w), initial=0.0), 1.0)
    w = w.copy()
    w[w < cutoff] = 0.0
    return w


def mat_sqrt(m):
    """Principal square root of a Hermitian positive semidefinite matrix."""
    dec = eigh(m)
    w = _clean_spectrum(dec.eigenvalues)
    v = dec.eigenvectors
    out = (v * np.sqrt(w)) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def psd_eigenvalues(m):
    """Ascending eigenvalues of a PSD matrix with drift and numerical zeros clamped to 0."""
    return _clean_spectrum(eigh(m).eigenvalues)


def partial_trace_second(rho):
    """Trace out the second qubit of a 4x4 density matrix."""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {rho.shape}")
    if not is_hermitian(rho):
        raise NotHermitian("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > 1e-8:
        raise BadTrace(f"trace is {tr.real:.12g}, expected 1")
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[i, j] = sum(rho[2 * i + k, 2 * j + k] for k in range(2))
    return out


def projector(psi):
    """Density matrix |psi><psi| of a (re-normalized) state vector."""
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())
