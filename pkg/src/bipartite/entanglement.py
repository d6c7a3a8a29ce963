"""Entanglement tests: Schmidt decomposition for pure states, PPT for mixed states."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg
from .errors import ShapeError, UnsupportedDimensionError
from .linalg import DEFAULT_TOL
from .states import (
    DensityOperator,
    PureState,
    Subsystem,
    density_from_pure,
    partial_trace,
    partial_transpose,
    purity,
)

# A Schmidt coefficient p counts as nonzero when p > SCHMIDT_THRESHOLD.
SCHMIDT_THRESHOLD = 1e-10

# Dimension pairs where a positive partial transpose also implies separability.
PPT_EXACT_DIMS = frozenset({(2, 2), (2, 3), (3, 2)})


class Verdict(str, Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    @property
    def schmidt_number(self) -> int:
        return int(np.count_nonzero(self.coefficients > SCHMIDT_THRESHOLD))

    def reconstruct(self) -> np.ndarray:
        out = np.zeros(self.basis_a.shape[0] * self.basis_b.shape[0], dtype=complex)
        for p, ua, ub in zip(self.coefficients, self.basis_a.T, self.basis_b.T):
            out += np.sqrt(p) * np.kron(ua, ub)
        return out


@dataclass(frozen=True)
class SeparabilityVerdict:
    verdict: Verdict
    min_pt_eigenvalue: float
    dims: tuple[int, int]


def coefficient_matrix(psi: PureState, d_a: int, d_b: int) -> np.ndarray:
    """Amplitudes ``psi_kl`` arranged as a ``d_a x d_b`` matrix."""
    if d_a < 1 or d_b < 1 or psi.dim != d_a * d_b:
        raise ShapeError(f"state of dimension {psi.dim} does not split as {d_a} x {d_b}")
    return psi.amplitudes.reshape(d_a, d_b)


def schmidt(psi: PureState, d_a: int, d_b: int) -> SchmidtDecomposition:
    """Schmidt decomposition via the SVD of the coefficient matrix.

    With ``psi_kl = sum_a s_a U[k, a] conj(V[l, a])`` the A basis is the
    columns of ``U``, the B basis the conjugated columns of ``V``, and
    ``p_a = s_a**2``.  Only coefficients above ``SCHMIDT_THRESHOLD`` are kept.
    Each A vector is rephased so its first nonzero entry is real positive.
    """
    u, s, v = linalg.svd(coefficient_matrix(psi, d_a, d_b))
    p = s**2
    keep = p > SCHMIDT_THRESHOLD
    basis_a = u[:, keep].copy()
    basis_b = v[:, keep].conj()
    for j in range(basis_a.shape[1]):
        col = basis_a[:, j]
        lead = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
        phase = lead / abs(lead)
        basis_a[:, j] = col / phase
        basis_b[:, j] = basis_b[:, j] * phase
    return SchmidtDecomposition(p[keep], basis_a, basis_b)


def is_entangled_pure(psi: PureState, d_a: int, d_b: int) -> bool:
    return schmidt(psi, d_a, d_b).schmidt_number > 1


def is_entangled_pure_via_purity(psi: PureState, d_a: int, d_b: int) -> bool:
    """Entangled iff the reduced state of A is mixed (qubit A only)."""
    if d_a != 2:
        raise UnsupportedDimensionError(f"reduced purity needs a qubit subsystem A, got d_A = {d_a}")
    coefficient_matrix(psi, d_a, d_b)
    rho_a = partial_trace(density_from_pure(psi, (d_a, d_b)), Subsystem.A)
    return purity(rho_a) < 1.0 - DEFAULT_TOL


def ppt_check(rho: DensityOperator, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    return linalg.is_psd(partial_transpose(rho), tol)


def separability_decision(rho: DensityOperator, tol: float = DEFAULT_TOL) -> SeparabilityVerdict:
    """PPT test, read as a full separability decision where it is one.

    For 2x2 and 2x3 systems PPT is equivalent to separability; elsewhere a
    PPT state is reported as inconclusive.
    """
    is_ppt, lo = ppt_check(rho, tol)
    dims = rho.dims
    if not is_ppt:
        verdict = Verdict.ENTANGLED
    elif dims in PPT_EXACT_DIMS:
        verdict = Verdict.SEPARABLE
    else:
        verdict = Verdict.INCONCLUSIVE
    return SeparabilityVerdict(verdict, lo, dims)
