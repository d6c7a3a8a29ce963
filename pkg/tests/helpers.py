"""Random-instance generators and independent reference implementations for tests."""

import numpy as np

from bipartite.states import DensityOperator, MeasurementAxis, PureState


def random_vector(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_pure(rng, dim):
    return PureState(random_vector(rng, dim))


def random_density_matrix(rng, dim, rank=None):
    g = rng.normal(size=(dim, rank or dim)) + 1j * rng.normal(size=(dim, rank or dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_density(rng, dim, dims=None, rank=None):
    return DensityOperator(random_density_matrix(rng, dim, rank), dims)


def random_hermitian(rng, dim):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return x + x.conj().T


def random_unitary(rng, dim):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_axis(rng):
    v = rng.normal(size=3)
    return MeasurementAxis(v / np.linalg.norm(v))


def random_separable(rng, d_a=2, d_b=2, terms=None):
    terms = terms or int(rng.integers(1, 6))
    p = rng.dirichlet(np.ones(terms))
    m = sum(
        pk * np.kron(random_density_matrix(rng, d_a), random_density_matrix(rng, d_b)) for pk in p
    )
    return DensityOperator(m, (d_a, d_b))


def entrywise_partial_trace_b(a):
    """tr_B of a 4x4 matrix written out entry by entry as a_{k0m0} + a_{k1m1}."""
    out = np.zeros((2, 2), dtype=complex)
    for k in range(2):
        for m in range(2):
            out[k, m] = a[2 * k + 0, 2 * m + 0] + a[2 * k + 1, 2 * m + 1]
    return out


def loop_partial_trace_a(a, d_a, d_b):
    """tr_A by explicit index loops: out[l, n] = sum_k a[k l, k n]."""
    out = np.zeros((d_b, d_b), dtype=complex)
    for l in range(d_b):
        for n in range(d_b):
            out[l, n] = sum(a[k * d_b + l, k * d_b + n] for k in range(d_a))
    return out


def werner(p):
    """p |psi-><psi-| + (1 - p) I/4."""
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return DensityOperator(p * np.outer(psi, psi) + (1 - p) * np.eye(4) / 4, (2, 2))


def equal_up_to_phase(x, y, atol=1e-9):
    x, y = np.asarray(x), np.asarray(y)
    overlap = np.vdot(x, y)
    if abs(overlap) < 1e-12:
        return False
    return np.allclose(x * (overlap / abs(overlap)), y, atol=atol)
