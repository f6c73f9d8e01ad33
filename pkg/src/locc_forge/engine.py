"""Executable model of finite-round LOCC protocols.

A protocol is an ordered list of steps.  A measure step applies one party's
Kraus set and records the classical outcome (outcomes are numbered from 1,
in Kraus order); a correct step applies a party-local unitary chosen by the
full record of outcomes broadcast so far.  Running a protocol enumerates
every branch depth-first, so the result is the exact output ensemble with
its probabilities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .states import LocalOperator, PureState, apply_local, fidelity_up_to_phase

COMPLETENESS_TOL = 1e-10
UNITARY_TOL = 1e-10
ZERO_BRANCH_TOL = 1e-14   # squared-norm cutoff for discarding branches
PROB_SUM_TOL = 1e-9

Record = tuple[int, ...]

__all__ = [
    "InvalidMeasurement",
    "ProtocolIncomplete",
    "Measurement",
    "MeasureStep",
    "CorrectStep",
    "Step",
    "LoccProtocol",
    "BranchResult",
    "Checkpoint",
    "StagedProtocol",
    "VerificationReport",
    "CheckpointReport",
    "measure",
    "run",
    "verify_deterministic",
    "verify_checkpoints",
    "protocol_to_dict",
    "protocol_from_dict",
    "protocol_to_json",
    "protocol_from_json",
]


class InvalidMeasurement(ValueError):
    """Kraus operators do not satisfy the completeness relation."""


class ProtocolIncomplete(RuntimeError):
    """A correction table has no entry for a reachable outcome record."""


@dataclass(frozen=True)
class Measurement:
    """A party-local generalized measurement given by a complete Kraus set.

    All operators share one input dimension and one output dimension;
    rectangular operators shrink (or grow) the party's local dimension.
    Completeness is enforced at construction time.
    """

    party: int
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.array(m, dtype=complex) for m in self.kraus)
        if not ops:
            raise InvalidMeasurement("a measurement needs at least one Kraus operator")
        shape = ops[0].shape
        if len(shape) != 2:
            raise InvalidMeasurement(f"Kraus operators must be matrices, got shape {shape}")
        if any(m.shape != shape for m in ops):
            raise InvalidMeasurement("all Kraus operators in one measurement must share a shape")
        total = sum(m.conj().T @ m for m in ops)
        if np.max(np.abs(total - np.eye(shape[1]))) > COMPLETENESS_TOL:
            raise InvalidMeasurement(
                f"Kraus completeness violated: max |sum M^dag M - I| = "
                f"{np.max(np.abs(total - np.eye(shape[1]))):.3e}"
            )
        for m in ops:
            m.setflags(write=False)
        object.__setattr__(self, "party", int(self.party))
        object.__setattr__(self, "kraus", ops)

    @property
    def n_outcomes(self) -> int:
        return len(self.kraus)

    @property
    def d_in(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def d_out(self) -> int:
        return self.kraus[0].shape[0]


@dataclass(frozen=True)
class MeasureStep:
    measurement: Measurement

    @property
    def party(self) -> int:
        return self.measurement.party


@dataclass(frozen=True)
class CorrectStep:
    """Outcome-conditioned local unitary.

    ``table`` maps the accumulated outcome record (one integer per measure
    step executed so far) to the unitary this party applies.  Every operator
    is checked unitary at construction; totality over reachable records is
    checked when the protocol runs.
    """

    party: int
    table: Mapping[Record, np.ndarray]

    def __post_init__(self) -> None:
        frozen: dict[Record, np.ndarray] = {}
        for record, op in self.table.items():
            mat = np.array(op, dtype=complex)
            if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
                raise ValueError(f"correction for record {record} is not square: {mat.shape}")
            if np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0]))) > UNITARY_TOL:
                raise ValueError(f"correction for record {record} is not unitary")
            mat.setflags(write=False)
            frozen[tuple(int(o) for o in record)] = mat
        object.__setattr__(self, "party", int(self.party))
        object.__setattr__(self, "table", frozen)


Step = Union[MeasureStep, CorrectStep]


@dataclass(frozen=True)
class LoccProtocol:
    """Ordered steps of measurements and outcome-conditioned corrections."""

    steps: tuple[Step, ...] = ()

    def __post_init__(self) -> None:
        steps = tuple(self.steps)
        if any(not isinstance(s, (MeasureStep, CorrectStep)) for s in steps):
            raise TypeError("protocol steps must be MeasureStep or CorrectStep")
        object.__setattr__(self, "steps", steps)

    @property
    def n_steps(self) -> int:
        return len(self.steps)

    def prefix(self, n: int) -> "LoccProtocol":
        return LoccProtocol(self.steps[:n])


@dataclass(frozen=True)
class BranchResult:
    """One classical trajectory: outcome record, its probability, final state."""

    outcomes: Record
    probability: float
    state: PureState


def measure(state: PureState, m: Measurement) -> list[BranchResult]:
    """All outcome branches of one measurement, zero-probability branches dropped."""
    branches = []
    for i, op in enumerate(m.kraus):
        raw = apply_local(state, LocalOperator(m.party, op))
        p = raw.probability()
        if p < ZERO_BRANCH_TOL:
            continue
        branches.append(BranchResult((i + 1,), p, raw.normalized()))
    return branches


def run(protocol: LoccProtocol, input: PureState) -> list[BranchResult]:
    """Exhaustive branch enumeration, in lexicographic outcome order.

    Branch probability is the product of the step outcome probabilities.
    Raises :class:`ProtocolIncomplete` when a correction table misses a
    reachable record.
    """
    branches = [BranchResult((), 1.0, input)]
    for step in protocol.steps:
        if isinstance(step, MeasureStep):
            new: list[BranchResult] = []
            for b in branches:
                for sub in measure(b.state, step.measurement):
                    new.append(
                        BranchResult(b.outcomes + sub.outcomes, b.probability * sub.probability, sub.state)
                    )
            branches = new
        else:
            updated = []
            for b in branches:
                op = step.table.get(b.outcomes)
                if op is None:
                    raise ProtocolIncomplete(
                        f"no correction for party {step.party} at outcome record {b.outcomes}"
                    )
                updated.append(
                    BranchResult(
                        b.outcomes,
                        b.probability,
                        apply_local(b.state, LocalOperator(step.party, op)).normalized(),
                    )
                )
            branches = updated
    return branches


@dataclass(frozen=True)
class VerificationReport:
    success: bool
    min_fidelity: float
    prob_sum: float
    n_branches: int


def verify_deterministic(
    protocol: LoccProtocol, input: PureState, target: PureState, tol: float = 1e-8
) -> VerificationReport:
    """Check that every branch reaches ``target`` (up to phase) with total probability 1."""
    branches = run(protocol, input)
    fids = [fidelity_up_to_phase(b.state, target) for b in branches]
    prob_sum = float(sum(b.probability for b in branches))
    min_fid = min(fids) if fids else 0.0
    success = bool(min_fid >= 1.0 - tol and abs(prob_sum - 1.0) <= PROB_SUM_TOL)
    return VerificationReport(success, min_fid, prob_sum, len(branches))


@dataclass(frozen=True)
class Checkpoint:
    """Expected (deterministic) intermediate after the first ``step_count`` steps."""

    step_count: int
    expected: PureState
    label: str


@dataclass(frozen=True)
class StagedProtocol:
    """A protocol bundled with the intermediates each of its stages must reach."""

    protocol: LoccProtocol
    checkpoints: tuple[Checkpoint, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class CheckpointReport:
    label: str
    min_fidelity: float
    n_branches: int
    ok: bool


def verify_checkpoints(
    protocol: LoccProtocol,
    input: PureState,
    checkpoints: Sequence[Checkpoint],
    tol: float = 1e-8,
) -> list[CheckpointReport]:
    """Run each protocol prefix and compare every live branch to its checkpoint state."""
    reports = []
    for cp in checkpoints:
        branches = run(protocol.prefix(cp.step_count), input)
        fids = [fidelity_up_to_phase(b.state, cp.expected) for b in branches]
        min_fid = min(fids) if fids else 0.0
        reports.append(CheckpointReport(cp.label, min_fid, len(branches), bool(min_fid >= 1.0 - tol)))
    return reports


def _matrix_to_payload(mat: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(mat, dtype=complex)]


def _matrix_from_payload(payload: Iterable) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in payload])


def _record_key(record: Record) -> str:
    return ",".join(str(o) for o in record)


def _record_from_key(key: str) -> Record:
    if key == "":
        return ()
    return tuple(int(part) for part in key.split(","))


def protocol_to_dict(protocol: LoccProtocol) -> dict:
    steps = []
    for step in protocol.steps:
        if isinstance(step, MeasureStep):
            steps.append(
                {
                    "type": "measure",
                    "party": step.party,
                    "kraus": [_matrix_to_payload(m) for m in step.measurement.kraus],
                }
            )
        else:
            steps.append(
                {
                    "type": "correct",
                    "party": step.party,
                    "table": {_record_key(rec): _matrix_to_payload(op) for rec, op in step.table.items()},
                }
            )
    return {"steps": steps}


def protocol_from_dict(payload: dict) -> LoccProtocol:
    steps: list[Step] = []
    for raw in payload["steps"]:
        if raw["type"] == "measure":
            steps.append(
                MeasureStep(Measurement(raw["party"], tuple(_matrix_from_payload(m) for m in raw["kraus"])))
            )
        elif raw["type"] == "correct":
            table = {_record_from_key(k): _matrix_from_payload(v) for k, v in raw["table"].items()}
            steps.append(CorrectStep(raw["party"], table))
        else:
            raise ValueError(f"unknown step type {raw['type']!r}")
    return LoccProtocol(tuple(steps))


def protocol_to_json(protocol: LoccProtocol) -> str:
    return json.dumps(protocol_to_dict(protocol))


def protocol_from_json(text: str) -> LoccProtocol:
    return protocol_from_dict(json.loads(text))
