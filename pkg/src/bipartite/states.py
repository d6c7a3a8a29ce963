"""Qubits, density operators, the Bloch ball, partial trace and partial transpose."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg
from .errors import MetadataError, ShapeError, ValidationError
from .linalg import DEFAULT_TOL, I2, PAULIS


class Subsystem(str, Enum):
    A = "A"
    B = "B"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def _real3(v) -> np.ndarray:
    arr = np.array(v, dtype=float).reshape(-1)
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise ShapeError(f"expected a finite real 3-vector, got {v!r}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size == 0 or not np.all(np.isfinite(amps)):
            raise ValidationError("amplitudes must be a non-empty finite sequence")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > DEFAULT_TOL:
            raise ValidationError(f"sum |amplitude|^2 = {norm2!r}, expected 1 +/- {DEFAULT_TOL:g}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def normalized(cls, amplitudes) -> PureState:
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValidationError("cannot normalize the zero vector")
        return cls(amps / norm)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive semidefinite matrix.

    ``dims`` is the optional bipartite split ``(d_A, d_B)``.
    """

    matrix: np.ndarray
    dims: tuple[int, int] | None = None

    def __post_init__(self):
        m = linalg.check_hermitian(self.matrix, DEFAULT_TOL)
        tr = linalg.trace(m)
        if abs(tr - 1.0) > DEFAULT_TOL:
            raise ValidationError(f"trace = {tr.real!r}, expected 1 +/- {DEFAULT_TOL:g}")
        ok, lo = linalg.is_psd(m, DEFAULT_TOL)
        if not ok:
            raise ValidationError(
                f"min eigenvalue = {lo!r}, expected >= -{DEFAULT_TOL:g} (not positive semidefinite)"
            )
        if self.dims is not None:
            d_a, d_b = (int(d) for d in self.dims)
            if d_a < 1 or d_b < 1 or d_a * d_b != m.shape[0]:
                raise ShapeError(f"dims {self.dims} do not factor matrix dimension {m.shape[0]}")
            object.__setattr__(self, "dims", (d_a, d_b))
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def with_dims(self, d_a: int, d_b: int) -> DensityOperator:
        return DensityOperator(self.matrix, (d_a, d_b))


@dataclass(frozen=True, eq=False)
class BlochVector:
    n: np.ndarray

    def __post_init__(self):
        n = _real3(self.n)
        length = float(np.linalg.norm(n))
        if length > 1.0 + DEFAULT_TOL:
            raise ValidationError(f"|n| = {length!r} lies outside the Bloch ball (max 1 + {DEFAULT_TOL:g})")
        object.__setattr__(self, "n", n)


@dataclass(frozen=True, eq=False)
class MeasurementAxis:
    a: np.ndarray

    def __post_init__(self):
        a = _real3(self.a)
        length = float(np.linalg.norm(a))
        if abs(length - 1.0) > DEFAULT_TOL:
            raise ValidationError(f"|axis| = {length!r}, expected 1 +/- {DEFAULT_TOL:g}")
        object.__setattr__(self, "a", a)

    @classmethod
    def from_polar(cls, theta: float, phi: float = 0.0) -> MeasurementAxis:
        """Axis at polar angle ``theta`` from z and azimuth ``phi`` from x."""
        return cls((np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)))


def qubit_from_angles(theta: float, phi: float) -> PureState:
    """``cos(theta)|0> + exp(i phi) sin(theta)|1>``.

    Note the half-angle convention: the Bloch vector sits at polar angle ``2*theta``.
    """
    return PureState((np.cos(theta), np.exp(1j * phi) * np.sin(theta)))


def density_from_pure(psi: PureState, dims: tuple[int, int] | None = None) -> DensityOperator:
    v = psi.amplitudes
    return DensityOperator(np.outer(v, v.conj()), dims)


def pauli_dot(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    return n[0] * PAULIS[0] + n[1] * PAULIS[1] + n[2] * PAULIS[2]


def bloch_to_density(n: BlochVector) -> DensityOperator:
    return DensityOperator(0.5 * (I2 + pauli_dot(n.n)))


def _require_qubit(rho: DensityOperator) -> None:
    if rho.dim != 2:
        raise ShapeError(f"expected a 2x2 density operator, got {rho.dim}x{rho.dim}")


def density_to_bloch(rho: DensityOperator) -> BlochVector:
    _require_qubit(rho)
    return BlochVector([np.trace(rho.matrix @ s).real for s in PAULIS])


def purity(rho: DensityOperator) -> float:
    """``2 tr(rho^2) - 1``, equal to the squared Bloch-vector length.

    Only qubits are accepted; for larger ``d`` this expression is not a purity.
    """
    if rho.dim != 2:
        raise ShapeError(f"purity is defined here for qubits only, got dimension {rho.dim}")
    m = rho.matrix
    return float(2.0 * np.trace(m @ m).real - 1.0)


def linear_entropy(rho: DensityOperator) -> float:
    return 1.0 - purity(rho)


def _dims_of(rho: DensityOperator) -> tuple[int, int]:
    if rho.dims is None:
        raise MetadataError("operation needs bipartite dims (d_A, d_B) on the density operator")
    return rho.dims


def partial_trace_matrix(m, dims: tuple[int, int], keep: Subsystem | str) -> np.ndarray:
    """Partial trace of a raw ``(d_A d_B) x (d_A d_B)`` matrix.

    Entry ``[k, m]`` of the A-marginal is ``sum_l a[k l, m l]``.
    """
    m = linalg.as_matrix(m)
    d_a, d_b = dims
    if m.shape != (d_a * d_b, d_a * d_b):
        raise ShapeError(f"matrix shape {m.shape} does not match dims {dims}")
    t = m.reshape(d_a, d_b, d_a, d_b)
    if Subsystem(keep) is Subsystem.A:
        return np.einsum("kjmj->km", t)
    return np.einsum("jljn->ln", t)


def partial_trace(rho: DensityOperator, keep: Subsystem | str) -> DensityOperator:
    return DensityOperator(partial_trace_matrix(rho.matrix, _dims_of(rho), keep))


def partial_transpose_matrix(m, dims: tuple[int, int]) -> np.ndarray:
    """Transpose the B indices: ``out[k n, m l] = in[k l, m n]``."""
    m = linalg.as_matrix(m)
    d_a, d_b = dims
    if m.shape != (d_a * d_b, d_a * d_b):
        raise ShapeError(f"matrix shape {m.shape} does not match dims {dims}")
    t = m.reshape(d_a, d_b, d_a, d_b).transpose(0, 3, 2, 1)
    return t.reshape(d_a * d_b, d_a * d_b)


def partial_transpose(rho: DensityOperator) -> np.ndarray:
    # Returned raw: the result need not be positive semidefinite.
    return partial_transpose_matrix(rho.matrix, _dims_of(rho))


def projector_from_axis(a: MeasurementAxis, k: int) -> DensityOperator:
    if k not in (0, 1):
        raise ValidationError(f"outcome must be 0 or 1, got {k!r}")
    sign = 1.0 if k == 0 else -1.0
    return DensityOperator(0.5 * (I2 + sign * pauli_dot(a.a)))


def product_density(rho_a: DensityOperator, rho_b: DensityOperator) -> DensityOperator:
    """``rho_a (x) rho_b`` tagged with bipartite dims."""
    return DensityOperator(np.kron(rho_a.matrix, rho_b.matrix), (rho_a.dim, rho_b.dim))
