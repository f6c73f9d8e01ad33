"""Command-line front end: JSON in, JSON or text reports out.

Exit code 0 means every requested check passed; 1 means a check came back
negative; 2 means the input could not be processed.  The environment
variable ``LOCC_FORGE_THREADS`` caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import analysis, majorization
from .engine import protocol_from_dict, protocol_to_dict, run, verify_checkpoints, verify_deterministic
from .ghz3 import (
    GhzParams,
    InvalidParams,
    ParamMismatch,
    WParams,
    WrongClass,
    ghz3_to_any_staged,
    make_ghz_state,
    make_w_state,
    trivial_preparation_staged,
)
from .states import Bipartition, ghz3_state, schmidt_vector, state_from_dict, state_to_dict
from .sweeps import verify_sweep


def _load_input(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"parse error in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _vector_list(payload) -> list:
    if not isinstance(payload, list) or not payload:
        raise ValueError("expected a non-empty JSON list of Schmidt vectors")
    return [np.asarray(v, dtype=float) for v in payload]


def _cmd_ocr(args) -> tuple[dict, bool]:
    payload = _load_input(args.input)
    if isinstance(payload, dict) and payload.get("family") == "Sa":
        ocr = majorization.sa_family_ocr(int(payload["d"]), float(payload["a"]))
        report = {
            "family": "Sa",
            "d": int(payload["d"]),
            "a": float(payload["a"]),
            "ocr": [float(v) for v in ocr],
        }
        return report, True
    vectors = _vector_list(payload)
    ocr = majorization.ocr_finite(vectors)
    confirm = [bool(majorization.majorizes(v, ocr)) for v in vectors]
    report = {
        "ocr": [float(v) for v in ocr],
        "members_majorize_ocr": confirm,
        "all_majorize": all(confirm),
    }
    return report, all(confirm)


def _cmd_check_transform(args) -> tuple[dict, bool]:
    payload = _load_input(args.input)
    source = state_from_dict(payload["source"])
    target = state_from_dict(payload["target"])
    cut = Bipartition.of(payload.get("cut", [0]), source.n_parties)
    ok = majorization.can_transform(source, target, cut)
    report = {
        "can_transform": bool(ok),
        "source_schmidt": [float(v) for v in schmidt_vector(source, cut)],
        "target_schmidt": [float(v) for v in schmidt_vector(target, cut)],
    }
    return report, bool(ok)


def _cmd_ensemble(args) -> tuple[dict, bool]:
    payload = _load_input(args.input)
    source = np.asarray(payload["source"], dtype=float)
    pairs = [(np.asarray(item["vector"], dtype=float), float(item["p"])) for item in payload["ensemble"]]
    ok = majorization.ensemble_feasible(source, pairs)
    return {"feasible": bool(ok)}, bool(ok)


def _cmd_run_protocol(args) -> tuple[dict, bool]:
    payload = _load_input(args.input)
    protocol = protocol_from_dict(payload["protocol"])
    state = state_from_dict(payload["input"])
    branches = run(protocol, state)
    report: dict = {
        "n_branches": len(branches),
        "prob_sum": float(sum(b.probability for b in branches)),
        "branches": [
            {
                "outcomes": list(b.outcomes),
                "probability": b.probability,
                "state": state_to_dict(b.state),
            }
            for b in branches
        ],
    }
    if "target" in payload:
        target = state_from_dict(payload["target"])
        rep = verify_deterministic(protocol, state, target, args.tol)
        report["verification"] = {
            "success": rep.success,
            "min_fidelity": rep.min_fidelity,
            "prob_sum": rep.prob_sum,
            "n_branches": rep.n_branches,
        }
        return report, rep.success
    return report, abs(report["prob_sum"] - 1.0) <= 1e-9


def _parse_target_params(payload: dict):
    kind = payload.get("class")
    if kind == "W":
        return WParams(*(float(v) for v in payload["x"]))
    if kind == "GHZ":
        return GhzParams(
            float(payload["x"]),
            float(payload["y"]),
            *(float(v) for v in payload["A"]),
            *(float(v) for v in payload["B"]),
            *(float(v) for v in payload["C"]),
        )
    raise ValueError(f'unknown target class {kind!r}; expected "W" or "GHZ"')


def _cmd_ghz3_prepare(args) -> tuple[dict, bool]:
    payload = _load_input(args.input)
    params = _parse_target_params(payload)
    target = make_w_state(params) if isinstance(params, WParams) else make_ghz_state(params)
    cls = analysis.slocc_class(target)
    report: dict = {"target_class": cls.value}
    if cls in (SLOCC_W, SLOCC_GHZ):
        staged = ghz3_to_any_staged(target, params)
    else:
        staged = trivial_preparation_staged(target)
        report["notice"] = "target is not genuinely entangled; using the trivial preparation route"
    report["protocol"] = protocol_to_dict(staged.protocol)
    ok = True
    if args.verify:
        rep = verify_deterministic(staged.protocol, ghz3_state(), target, args.tol)
        checkpoint_reports = verify_checkpoints(staged.protocol, ghz3_state(), staged.checkpoints, args.tol)
        report["verification"] = {
            "success": rep.success,
            "min_fidelity": rep.min_fidelity,
            "prob_sum": rep.prob_sum,
            "n_branches": rep.n_branches,
            "checkpoints": [
                {"label": c.label, "min_fidelity": c.min_fidelity, "ok": c.ok} for c in checkpoint_reports
            ],
        }
        ok = rep.success and all(c.ok for c in checkpoint_reports)
    return report, ok


def _cmd_classify(args) -> tuple[dict, bool]:
    state = state_from_dict(_load_input(args.input))
    return analysis.report(state), True


def _cmd_rank322(args) -> tuple[dict, bool]:
    state = state_from_dict(_load_input(args.input))
    md = analysis.missing_dimension(state)
    report = {
        "tensor_rank": analysis.tensor_rank_322(state),
        "missing_dimension": [[float(x.real), float(x.imag)] for x in md.vec],
        "missing_dimension_kind": md.kind.value,
    }
    return report, True


def _cmd_cut_check(args) -> tuple[dict, bool]:
    payload = _load_input(args.input)
    source = state_from_dict(payload["source"])
    target = state_from_dict(payload["target"])
    rep = analysis.cut_condition(source, target)
    return {"cuts": rep.cuts, "overall": rep.overall}, rep.overall


def _cmd_verify_sweep(args) -> tuple[dict, bool]:
    if args.n is None or args.n < 1:
        raise ValueError("--n must be a positive target count")
    workers = int(os.environ.get("LOCC_FORGE_THREADS", "1") or "1")
    report = verify_sweep(args.n, args.seed, tol=args.tol, workers=max(1, workers))
    return report.to_dict(), report.n_passed == report.n_total


_COMMANDS = {
    "ocr": _cmd_ocr,
    "check-transform": _cmd_check_transform,
    "ensemble": _cmd_ensemble,
    "run-protocol": _cmd_run_protocol,
    "ghz3-prepare": _cmd_ghz3_prepare,
    "classify": _cmd_classify,
    "rank322": _cmd_rank322,
    "cut-check": _cmd_cut_check,
    "verify-sweep": _cmd_verify_sweep,
}

SLOCC_W = analysis.SloccClass.W_CLASS
SLOCC_GHZ = analysis.SloccClass.GHZ_CLASS


def _render_text(payload, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            lines.extend(_render_text(value, f"{prefix}{key}." if isinstance(value, (dict, list)) else f"{prefix}{key}"))
    elif isinstance(payload, list):
        if all(not isinstance(v, (dict, list)) for v in payload):
            lines.append(f"{prefix.rstrip('.')}: {payload}")
        else:
            for i, value in enumerate(payload):
                lines.extend(_render_text(value, f"{prefix}{i}."))
    else:
        lines.append(f"{prefix}: {payload}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locc-forge",
        description="Optimal common resources, LOCC protocol simulation, and three-qubit preparation checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    needs_input = {
        "ocr": "Schmidt vectors (list) or {'family': 'Sa', 'd': ..., 'a': ...}",
        "check-transform": "{'source': state, 'target': state, 'cut': [parties]}",
        "ensemble": "{'source': vector, 'ensemble': [{'vector': ..., 'p': ...}]}",
        "run-protocol": "{'protocol': ..., 'input': state, 'target': state?}",
        "ghz3-prepare": "{'class': 'W', 'x': [...]} or {'class': 'GHZ', 'x': ..., 'y': ..., 'A': ..., 'B': ..., 'C': ...}",
        "classify": "a state",
        "rank322": "a 3x2x2 state",
        "cut-check": "{'source': state, 'target': state}",
    }
    for name, help_text in needs_input.items():
        cmd = sub.add_parser(name, help=f"input file holds {help_text}")
        cmd.add_argument("--input", required=True, help="JSON input file")
        cmd.add_argument("--format", choices=("json", "text"), default="json")
        cmd.add_argument("--tol", type=float, default=1e-8, help="verification fidelity tolerance")
        if name == "ghz3-prepare":
            cmd.add_argument("--verify", action="store_true", help="run and verify every branch")
    sweep = sub.add_parser("verify-sweep", help="seeded random-target verification sweep")
    sweep.add_argument("--n", type=int, required=True, help="targets per class")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--tol", type=float, default=1e-8)
    sweep.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, ok = _COMMANDS[args.command](args)
    except (ValueError, KeyError, InvalidParams, WrongClass, ParamMismatch) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(_render_text(report)))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
