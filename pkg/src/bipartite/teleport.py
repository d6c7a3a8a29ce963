"""Single-qubit teleportation through a shared |Phi+> pair.

Qubit order in the three-qubit register is (Alice's input, Alice's half
of the pair, Bob's half); Alice's two qubits form the slow index.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bell import make_rng, sample_categorical
from .errors import DegenerateBranchError, ShapeError
from .linalg import I2, SIGMA_X, SIGMA_Y, SIGMA_Z
from .states import DensityOperator, PureState, Subsystem, density_from_pure, partial_trace

_H = 1.0 / np.sqrt(2.0)

# Branch norms below this are treated as impossible outcomes.
BRANCH_EPS = 1e-12


class BellLabel(str, Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


_AMPLITUDES = {
    BellLabel.PHI_PLUS: (_H, 0.0, 0.0, _H),
    BellLabel.PHI_MINUS: (_H, 0.0, 0.0, -_H),
    BellLabel.PSI_PLUS: (0.0, _H, _H, 0.0),
    BellLabel.PSI_MINUS: (0.0, _H, -_H, 0.0),
}

# bit 0 picks the phi/psi family, bit 1 the relative sign
_BITS = {
    BellLabel.PHI_PLUS: "00",
    BellLabel.PHI_MINUS: "01",
    BellLabel.PSI_PLUS: "10",
    BellLabel.PSI_MINUS: "11",
}
_LABEL_FROM_BITS = {bits: label for label, bits in _BITS.items()}

# psi- leaves Bob with -i*sigma_y|phi>; sigma_y undoes it up to a global phase.
CORRECTIONS = {
    BellLabel.PHI_PLUS: ("I", I2),
    BellLabel.PHI_MINUS: ("Z", SIGMA_Z),
    BellLabel.PSI_PLUS: ("X", SIGMA_X),
    BellLabel.PSI_MINUS: ("Y", SIGMA_Y),
}


@dataclass(frozen=True, eq=False)
class BellState:
    label: BellLabel
    state: PureState


@dataclass(frozen=True, eq=False)
class TeleportTranscript:
    input_state: PureState
    measured_bell: BellLabel
    classical_bits: str
    correction: str
    bob_pre_message: DensityOperator
    output_state: PureState
    fidelity: float


def bell_states() -> tuple[BellState, ...]:
    return tuple(BellState(label, PureState(amps)) for label, amps in _AMPLITUDES.items())


def bell_state(label: BellLabel | str) -> BellState:
    label = BellLabel(label)
    return BellState(label, PureState(_AMPLITUDES[label]))


def encode_bits(label: BellLabel | str) -> str:
    return _BITS[BellLabel(label)]


def decode_bits(bits: str) -> BellLabel:
    try:
        return _LABEL_FROM_BITS[bits]
    except KeyError:
        raise ValueError(f"classical message must be one of 00, 01, 10, 11, got {bits!r}") from None


def correction_for(label: BellLabel | str) -> np.ndarray:
    return CORRECTIONS[BellLabel(label)][1]


def fidelity(x: PureState, y: PureState) -> float:
    if x.dim != y.dim:
        raise ShapeError(f"fidelity needs equal dimensions, got {x.dim} and {y.dim}")
    return float(min(1.0, abs(np.vdot(x.amplitudes, y.amplitudes)) ** 2))


def _require_qubit(phi: PureState) -> None:
    if phi.dim != 2:
        raise ShapeError(f"teleportation input must be a qubit, got dimension {phi.dim}")


def compose_initial(phi: PureState) -> PureState:
    _require_qubit(phi)
    return PureState(np.kron(phi.amplitudes, _AMPLITUDES[BellLabel.PHI_PLUS]))


def bell_branches(state3: PureState) -> dict[BellLabel, np.ndarray]:
    """Unnormalized Bob vectors ``(<b| (x) I)|state3>`` for each Bell state ``b`` of Alice."""
    if state3.dim != 8:
        raise ShapeError(f"expected a three-qubit state, got dimension {state3.dim}")
    alice_bob = state3.amplitudes.reshape(4, 2)
    return {label: np.conj(amps) @ alice_bob for label, amps in _AMPLITUDES.items()}


def bell_measure_alice(
    state3: PureState, seed: int, forced_outcome: BellLabel | str | None = None
) -> tuple[BellLabel, PureState, float]:
    branches = bell_branches(state3)
    labels = list(branches)
    probs = np.array([np.vdot(v, v).real for v in branches.values()])
    if forced_outcome is None:
        outcome = labels[int(sample_categorical(probs, 1, make_rng(seed))[0])]
    else:
        outcome = BellLabel(forced_outcome)
    prob = float(probs[labels.index(outcome)])
    if prob < BRANCH_EPS:
        raise DegenerateBranchError(f"outcome {outcome.value} has probability {prob:.3g}")
    return outcome, PureState(branches[outcome] / np.sqrt(prob)), prob


def teleport(phi: PureState, seed: int) -> TeleportTranscript:
    _require_qubit(phi)
    state3 = compose_initial(phi)
    bob_pre = partial_trace(density_from_pure(state3, (4, 2)), Subsystem.B)
    outcome, bob_post, _ = bell_measure_alice(state3, seed)
    bits = encode_bits(outcome)
    # Bob sees only the two bits.
    name, unitary = CORRECTIONS[decode_bits(bits)]
    output = PureState.normalized(unitary @ bob_post.amplitudes)
    return TeleportTranscript(
        input_state=phi,
        measured_bell=outcome,
        classical_bits=bits,
        correction=name,
        bob_pre_message=bob_pre,
        output_state=output,
        fidelity=fidelity(phi, output),
    )
