"""Dense complex linear algebra on small matrices (at most 8x8).

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Composite
kets follow the convention that ``|kl>`` lives at index ``k * d_B + l``,
i.e. subsystem A is the slow index, which is exactly what ``np.kron``
produces.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import HermiticityError, ShapeError, ValidationError

DEFAULT_TOL = 1e-9

# Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
JACOBI_OFF_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class HermitianEigenResult(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array.

    1-D input is treated as a column vector.
    """
    m = np.array(a, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix contains NaN or infinite entries")
    return m


def _require_square(a: np.ndarray, what: str = "matrix") -> None:
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{what} must be square, got shape {a.shape}")


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    a = as_matrix(a)
    _require_square(a)
    return complex(np.trace(a))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def hermiticity_deviation(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T)))


def check_hermitian(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    a = as_matrix(a)
    _require_square(a)
    dev = hermiticity_deviation(a)
    if dev > tol:
        raise HermiticityError(dev, tol)
    return a


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eig(a, tol: float = DEFAULT_TOL) -> HermitianEigenResult:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first strips the phase of the pivot ``a[p, q]`` with a
    diagonal unitary, then applies the real Givens rotation that zeroes it.
    Eigenvalues are returned ascending; eigenvectors are the matching columns.
    """
    a = check_hermitian(a, tol)
    n = a.shape[0]
    work = 0.5 * (a + a.conj().T)
    vecs = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(work))))

    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(work) < JACOBI_OFF_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                theta = 0.5 * np.arctan2(2.0 * mag, (work[p, p] - work[q, q]).real)
                c, s = np.cos(theta), np.sin(theta)
                # columns p, q of the unitary: (c, s*conj(phase)) and (-s, c*conj(phase))
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[q, p] = s * np.conj(phase)
                rot[p, q] = -s
                rot[q, q] = c * np.conj(phase)
                work = rot.conj().T @ work @ rot
                work[p, q] = work[q, p] = 0.0
                vecs = vecs @ rot
    else:
        if _off_norm(work) >= JACOBI_OFF_TOL * scale:
            raise ArithmeticError("Jacobi eigensolver did not converge")

    evals = np.real(np.diag(work)).copy()
    order = np.argsort(evals, kind="stable")
    return HermitianEigenResult(evals[order], vecs[:, order])


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``a == U @ diag(s) @ V^dag`` with ``s`` descending.

    Returns ``V`` itself (not ``V^dag``).
    """
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    return u, s, vh.conj().T


def is_psd(a, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    evals = hermitian_eig(a, tol).eigenvalues
    lo = float(evals[0])
    return lo >= -tol, lo
