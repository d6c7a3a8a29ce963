"""CHSH analysis: quantum correlations, the local-hidden-variable bound, sampling."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .linalg import DEFAULT_TOL
from .states import (
    DensityOperator,
    MeasurementAxis,
    PureState,
    density_from_pure,
    projector_from_axis,
)

SQRT_HALF = 1.0 / np.sqrt(2.0)

# Outcome order for sampling and counts: (0,0), (0,1), (1,0), (1,1).
OUTCOMES = ((0, 0), (0, 1), (1, 0), (1, 1))

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class ChshSetting:
    a1: MeasurementAxis
    a2: MeasurementAxis
    b1: MeasurementAxis
    b2: MeasurementAxis


@dataclass(frozen=True)
class DeterministicStrategy:
    """Fixed +/-1 answers for each of the four measurement directions."""

    a1_out: int
    a2_out: int
    b1_out: int
    b2_out: int

    def chsh(self) -> int:
        return (
            self.a2_out * self.b2_out
            - self.a1_out * self.b1_out
            - self.a1_out * self.b2_out
            - self.a2_out * self.b1_out
        )


@dataclass(frozen=True)
class ChshReport:
    c11: float
    c12: float
    c21: float
    c22: float

    @property
    def s_value(self) -> float:
        return chsh_combination(self.c11, self.c12, self.c21, self.c22)

    @property
    def violates_classical(self) -> bool:
        return abs(self.s_value) > 2.0 + DEFAULT_TOL


def chsh_combination(c11: float, c12: float, c21: float, c22: float) -> float:
    return c22 - c11 - c12 - c21


def singlet() -> PureState:
    return PureState((0.0, SQRT_HALF, -SQRT_HALF, 0.0))


def singlet_density() -> DensityOperator:
    return density_from_pure(singlet(), (2, 2))


def _require_two_qubits(rho: DensityOperator) -> None:
    if rho.dim != 4:
        raise ShapeError(f"expected a two-qubit (4x4) state, got dimension {rho.dim}")
    if rho.dims not in (None, (2, 2)):
        raise ShapeError(f"expected dims (2, 2), got {rho.dims}")


def joint_probability(rho: DensityOperator, a: MeasurementAxis, b: MeasurementAxis, k: int, l: int) -> float:
    """``tr(rho P_k(a) (x) P_l(b))``."""
    _require_two_qubits(rho)
    effect = np.kron(projector_from_axis(a, k).matrix, projector_from_axis(b, l).matrix)
    return float(np.trace(rho.matrix @ effect).real)


def outcome_distribution(rho: DensityOperator, a: MeasurementAxis, b: MeasurementAxis) -> np.ndarray:
    return np.array([joint_probability(rho, a, b, k, l) for k, l in OUTCOMES])


def singlet_probability_closed_form(a: MeasurementAxis, b: MeasurementAxis, k: int, l: int) -> float:
    return 0.25 * (1.0 - (-1) ** (k + l) * float(np.dot(a.a, b.a)))


def correlation(rho: DensityOperator, a: MeasurementAxis, b: MeasurementAxis) -> float:
    return sum((-1) ** (k + l) * joint_probability(rho, a, b, k, l) for k, l in OUTCOMES)


def chsh_value(rho: DensityOperator, setting: ChshSetting) -> ChshReport:
    return ChshReport(
        c11=correlation(rho, setting.a1, setting.b1),
        c12=correlation(rho, setting.a1, setting.b2),
        c21=correlation(rho, setting.a2, setting.b1),
        c22=correlation(rho, setting.a2, setting.b2),
    )


def optimal_setting(rotation: float = 0.0) -> ChshSetting:
    """Coplanar x-z axes: a2 at 0, b1 at 45, a1 at 90, b2 at 135 degrees from z.

    ``rotation`` (radians) turns all four axes rigidly within the plane.
    """

    def axis(degrees: float) -> MeasurementAxis:
        return MeasurementAxis.from_polar(np.deg2rad(degrees) + rotation)

    return ChshSetting(a1=axis(90.0), a2=axis(0.0), b1=axis(45.0), b2=axis(135.0))


# Long-form name kept for callers written against the published interface.
paper_optimal_setting = optimal_setting


def all_strategies() -> list[DeterministicStrategy]:
    return [DeterministicStrategy(*signs) for signs in itertools.product((1, -1), repeat=4)]


def lhv_max_chsh() -> tuple[int, DeterministicStrategy]:
    """Maximise the CHSH combination over every deterministic strategy.

    A shared hidden variable is a probability distribution over these 16
    strategies; the combination is linear in that distribution, so its
    extremes sit on the strategies themselves.
    """
    best = max(all_strategies(), key=lambda st: st.chsh())
    return best.chsh(), best


def mixed_strategy_chsh(weights) -> float:
    """Expected CHSH combination for a distribution over ``all_strategies()``."""
    weights = np.asarray(weights, dtype=float)
    values = np.array([st.chsh() for st in all_strategies()], dtype=float)
    return float(weights @ values)


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; seeds are reduced to 64 bits."""
    return np.random.Generator(np.random.PCG64(int(seed) & SEED_MASK))


def sample_categorical(probs, n: int, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF draws of category indices, categories in the given order."""
    probs = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    probs[probs < 1e-15] = 0.0
    cdf = np.cumsum(probs / probs.sum())
    # rounding must not leave room for trailing zero-probability categories
    cdf[np.flatnonzero(probs)[-1]:] = 1.0
    return np.searchsorted(cdf, rng.random(n), side="right")


def sample_outcomes(
    rho: DensityOperator, a: MeasurementAxis, b: MeasurementAxis, n: int, seed: int
) -> tuple[float, np.ndarray]:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    draws = sample_categorical(outcome_distribution(rho, a, b), n, make_rng(seed))
    counts = np.bincount(draws, minlength=4)
    n00, n01, n10, n11 = (int(c) for c in counts)
    return (n00 + n11 - n01 - n10) / n, counts
