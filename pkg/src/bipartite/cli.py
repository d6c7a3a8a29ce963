"""Command-line front end.

JSON results go to stdout (or ``--output``); a short human summary goes to stderr.

Exit codes: 0 success, 2 bad arguments, 3 invalid input, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Any

import numpy as np

from . import bell, entanglement, jsonio, states, teleport
from .errors import QuantumInputError
from .linalg import DEFAULT_TOL

DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_IO = 4


class InputFailure(Exception):
    pass


class IOFailure(Exception):
    pass


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFailure(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        d_a, d_b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must look like 'dA,dB', got {text!r}") from None
    if d_a < 1 or d_b < 1:
        raise argparse.ArgumentTypeError("dims must be positive")
    return d_a, d_b


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _load_density(path: str, dims: tuple[int, int] | None) -> states.DensityOperator:
    """Read a density operator; a pure-state file is converted to its projector."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "amplitudes" in obj:
        rho = states.density_from_pure(jsonio.pure_from_json(obj))
    else:
        rho = jsonio.density_from_json(obj)
    if dims is not None:
        rho = rho.with_dims(*dims)
    return rho


def cmd_bloch(args) -> tuple[dict, str]:
    obj = _load_json(args.state)
    if isinstance(obj, dict) and "amplitudes" in obj:
        rho = states.density_from_pure(jsonio.pure_from_json(obj))
    elif isinstance(obj, dict) and "n" in obj:
        rho = states.bloch_to_density(jsonio.bloch_from_json(obj))
    else:
        rho = jsonio.density_from_json(obj)
    n = states.density_to_bloch(rho)
    mu = states.purity(rho)
    payload = {
        "bloch": jsonio.bloch_to_json(n),
        "purity": mu,
        "linear_entropy": states.linear_entropy(rho),
        "density": jsonio.density_to_json(rho),
    }
    x, y, z = n.n
    return payload, f"Bloch vector ({x:.6g}, {y:.6g}, {z:.6g}), purity {mu:.6g}"


def cmd_ptrace(args) -> tuple[dict, str]:
    rho = _load_density(args.rho, args.dims)
    reduced = states.partial_trace(rho, args.keep)
    return jsonio.density_to_json(reduced), f"kept subsystem {args.keep}: {reduced.dim}x{reduced.dim} reduced state"


def cmd_schmidt(args) -> tuple[dict, str]:
    psi = jsonio.pure_from_json(_load_json(args.psi))
    d_a, d_b = args.dims
    sd = entanglement.schmidt(psi, d_a, d_b)
    payload = jsonio.schmidt_to_json(sd)
    payload["entangled"] = sd.schmidt_number > 1
    if d_a == 2:
        payload["entangled_via_purity"] = entanglement.is_entangled_pure_via_purity(psi, d_a, d_b)
    kind = "entangled" if payload["entangled"] else "product"
    return payload, f"Schmidt number {sd.schmidt_number} ({kind})"


def cmd_ppt(args) -> tuple[dict, str]:
    rho = _load_density(args.rho, args.dims)
    verdict = entanglement.separability_decision(rho, args.tol)
    return (
        jsonio.verdict_to_json(verdict),
        f"{verdict.verdict.value}: min eigenvalue of partial transpose {verdict.min_pt_eigenvalue:.6g}",
    )


def _correlation_series(rho, points: int, samples: int | None, seed: int) -> list[dict]:
    """Correlation against the angle between a (fixed at z) and b, swept over [0, pi]."""
    a = states.MeasurementAxis((0.0, 0.0, 1.0))
    series = []
    for i, angle in enumerate(np.linspace(0.0, np.pi, points)):
        b = states.MeasurementAxis.from_polar(angle)
        row = {"angle": float(angle), "correlation": bell.correlation(rho, a, b)}
        if samples:
            row["sampled"], _ = bell.sample_outcomes(rho, a, b, samples, seed + 100 + i)
        series.append(row)
    return series


def cmd_chsh(args) -> tuple[dict, str]:
    setting = (
        jsonio.setting_from_json(_load_json(args.setting)) if args.setting else bell.optimal_setting()
    )
    rho = bell.singlet_density()
    report = bell.chsh_value(rho, setting)
    payload = jsonio.report_to_json(report)
    payload["setting"] = jsonio.setting_to_json(setting)
    if args.samples:
        pairs = {
            "c11": (setting.a1, setting.b1),
            "c12": (setting.a1, setting.b2),
            "c21": (setting.a2, setting.b1),
            "c22": (setting.a2, setting.b2),
        }
        mc: dict[str, Any] = {"samples": args.samples, "seed": args.seed}
        for i, (name, (a, b)) in enumerate(pairs.items()):
            mc[name], counts = bell.sample_outcomes(rho, a, b, args.samples, args.seed + i)
            mc[f"{name}_counts"] = [int(c) for c in counts]
        mc["s_value"] = bell.chsh_combination(mc["c11"], mc["c12"], mc["c21"], mc["c22"])
        payload["monte_carlo"] = mc
        payload["series"] = _correlation_series(rho, args.points, args.samples, args.seed)
        if args.series_csv:
            _write_series_csv(args.series_csv, payload["series"])
    flag = "violates" if report.violates_classical else "respects"
    return payload, f"S = {report.s_value:.10f} ({flag} the classical bound 2)"


def _write_series_csv(path: str, series: list[dict]) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(series[0]))
            writer.writeheader()
            for row in series:
                writer.writerow({k: repr(v) for k, v in row.items()})
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_lhv(args) -> tuple[dict, str]:
    table = [
        {"a1": st.a1_out, "a2": st.a2_out, "b1": st.b1_out, "b2": st.b2_out, "F": st.chsh()}
        for st in bell.all_strategies()
    ]
    max_s, best = bell.lhv_max_chsh()
    payload = {
        "strategies": table,
        "max_s": max_s,
        "min_s": min(row["F"] for row in table),
        "max_abs_s": max(abs(row["F"]) for row in table),
        "argmax": {"a1": best.a1_out, "a2": best.a2_out, "b1": best.b1_out, "b2": best.b2_out},
    }
    return payload, f"16 deterministic strategies, max |F| = {payload['max_abs_s']}"


def cmd_teleport(args) -> tuple[dict, str]:
    phi = states.qubit_from_angles(args.theta, args.phi)
    runs = [teleport.teleport(phi, args.seed + i) for i in range(args.runs)]
    freq = {label.value: 0 for label in teleport.BellLabel}
    for t in runs:
        freq[t.measured_bell.value] += 1
    payload: dict[str, Any] = {
        "bit_encoding": {label.value: teleport.encode_bits(label) for label in teleport.BellLabel},
        "summary": {
            "runs": args.runs,
            "seed": args.seed,
            "outcome_counts": freq,
            "outcome_frequencies": {k: v / args.runs for k, v in freq.items()},
            "min_fidelity": min(t.fidelity for t in runs),
        },
    }
    if not args.no_transcripts:
        payload["transcripts"] = [jsonio.transcript_to_json(t) for t in runs]
    return payload, f"{args.runs} run(s), min fidelity {payload['summary']['min_fidelity']:.12f}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="PSD tolerance (default 1e-9)")
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="bipartite", description="Bipartite entanglement, CHSH and teleportation calculations."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bloch", parents=[common], help="Bloch vector and purity of a qubit")
    p.add_argument("state", help="pure-state, density-operator or Bloch-vector JSON file")
    p.set_defaults(func=cmd_bloch)

    p = sub.add_parser("ptrace", parents=[common], help="reduced density operator")
    p.add_argument("rho", help="density-operator JSON file (with dims) or pure-state JSON")
    p.add_argument("--keep", choices=["A", "B"], required=True)
    p.add_argument("--dims", type=_parse_dims, help="override bipartite dims as dA,dB")
    p.set_defaults(func=cmd_ptrace)

    p = sub.add_parser("schmidt", parents=[common], help="Schmidt decomposition of a pure state")
    p.add_argument("psi", help="pure-state JSON file")
    p.add_argument("--dims", type=_parse_dims, required=True, help="dA,dB")
    p.set_defaults(func=cmd_schmidt)

    p = sub.add_parser("ppt", parents=[common], help="partial-transpose separability test")
    p.add_argument("rho", help="density-operator JSON file (with dims) or pure-state JSON")
    p.add_argument("--dims", type=_parse_dims, help="override bipartite dims as dA,dB")
    p.set_defaults(func=cmd_ppt)

    p = sub.add_parser("chsh", parents=[common], help="CHSH value of the singlet")
    p.add_argument("--setting", help="ChshSetting JSON file (default: the 0/45/90/135 degree axes)")
    p.add_argument("--samples", type=_positive_int, help="add Monte Carlo estimates with N samples each")
    p.add_argument("--points", type=_positive_int, default=37, help="angles in the correlation sweep")
    p.add_argument("--series-csv", help="also write the correlation sweep as CSV")
    p.set_defaults(func=cmd_chsh)

    p = sub.add_parser("lhv", parents=[common], help="enumerate deterministic local strategies")
    p.set_defaults(func=cmd_lhv)

    p = sub.add_parser("teleport", parents=[common], help="teleport cos(T)|0> + e^{iP} sin(T)|1>")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--runs", type=_positive_int, default=1)
    p.add_argument("--no-transcripts", action="store_true", help="emit only the summary")
    p.set_defaults(func=cmd_teleport)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, summary = args.func(args)
        text = jsonio.dumps(payload) + "\n"
        if args.output:
            try:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise IOFailure(f"cannot write {args.output}: {exc.strerror or exc}") from exc
        else:
            sys.stdout.write(text)
    except IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InputFailure, QuantumInputError, TypeError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(summary, file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
