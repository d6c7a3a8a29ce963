"""JSON encodings for matrices, states and results.

Complex numbers are ``[re, im]`` pairs; matrices are row-major
``{"rows", "cols", "data"}`` objects.  Floats go through ``json``'s
shortest round-trip repr, so nothing is rounded.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .bell import ChshReport, ChshSetting
from .entanglement import SchmidtDecomposition, SeparabilityVerdict
from .errors import ShapeError, ValidationError
from .linalg import as_matrix
from .states import BlochVector, DensityOperator, MeasurementAxis, PureState
from .teleport import TeleportTranscript


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _unpair(p) -> complex:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise ShapeError(f"complex entries must be [re, im] pairs, got {p!r}")
    try:
        re, im = (float(x) for x in p)
    except (TypeError, ValueError):
        raise ShapeError(f"complex entries must be numeric [re, im] pairs, got {p!r}") from None
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ValidationError(f"non-finite complex entry {p!r}")
    return complex(re, im)


def _require(obj: dict, *keys: str) -> None:
    if not isinstance(obj, dict):
        raise ShapeError(f"expected a JSON object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ShapeError(f"missing key(s) {', '.join(missing)}")


def matrix_to_json(m) -> dict[str, Any]:
    m = as_matrix(m)
    return {"rows": m.shape[0], "cols": m.shape[1], "data": [_pair(z) for z in m.reshape(-1)]}


def matrix_from_json(obj) -> np.ndarray:
    _require(obj, "rows", "cols", "data")
    rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    if rows < 1 or cols < 1 or len(data) != rows * cols:
        raise ShapeError(f"data has {len(data)} entries, expected rows*cols = {rows * cols}")
    return as_matrix(np.array([_unpair(p) for p in data], dtype=complex).reshape(rows, cols))


def pure_to_json(psi: PureState) -> dict[str, Any]:
    return {"dim": psi.dim, "amplitudes": [_pair(z) for z in psi.amplitudes]}


def pure_from_json(obj) -> PureState:
    _require(obj, "dim", "amplitudes")
    amps = [_unpair(p) for p in obj["amplitudes"]]
    if len(amps) != int(obj["dim"]):
        raise ShapeError(f"dim = {obj['dim']} but {len(amps)} amplitudes given")
    return PureState(amps)


def density_to_json(rho: DensityOperator) -> dict[str, Any]:
    out = matrix_to_json(rho.matrix)
    if rho.dims is not None:
        out["dims"] = list(rho.dims)
    return out


def density_from_json(obj) -> DensityOperator:
    m = matrix_from_json(obj)
    dims = obj.get("dims")
    if dims is not None:
        if len(dims) != 2:
            raise ShapeError(f"dims must be a pair [dA, dB], got {dims!r}")
        dims = (int(dims[0]), int(dims[1]))
    return DensityOperator(m, dims)


def bloch_to_json(n: BlochVector) -> dict[str, Any]:
    return {"n": [float(x) for x in n.n]}


def bloch_from_json(obj) -> BlochVector:
    _require(obj, "n")
    return BlochVector(obj["n"])


def setting_to_json(s: ChshSetting) -> dict[str, Any]:
    return {name: [float(x) for x in getattr(s, name).a] for name in ("a1", "a2", "b1", "b2")}


def setting_from_json(obj) -> ChshSetting:
    _require(obj, "a1", "a2", "b1", "b2")
    return ChshSetting(**{name: MeasurementAxis(obj[name]) for name in ("a1", "a2", "b1", "b2")})


def report_to_json(r: ChshReport) -> dict[str, Any]:
    return {
        "c11": r.c11,
        "c12": r.c12,
        "c21": r.c21,
        "c22": r.c22,
        "s_value": r.s_value,
        "violates_classical": r.violates_classical,
    }


def schmidt_to_json(sd: SchmidtDecomposition) -> dict[str, Any]:
    return {
        "coefficients": [float(p) for p in sd.coefficients],
        "schmidt_number": sd.schmidt_number,
        "basis_a": matrix_to_json(sd.basis_a),
        "basis_b": matrix_to_json(sd.basis_b),
    }


def verdict_to_json(v: SeparabilityVerdict) -> dict[str, Any]:
    return {"verdict": v.verdict.value, "min_pt_eigenvalue": v.min_pt_eigenvalue, "dims": list(v.dims)}


def transcript_to_json(t: TeleportTranscript) -> dict[str, Any]:
    return {
        "input": pure_to_json(t.input_state),
        "outcome": t.measured_bell.value,
        "bits": t.classical_bits,
        "correction": t.correction,
        "fidelity": t.fidelity,
        "bob_pre_message": matrix_to_json(t.bob_pre_message.matrix),
        "output": pure_to_json(t.output_state),
    }


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, allow_nan=False)
