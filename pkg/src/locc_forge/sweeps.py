"""Seeded random-target verification sweeps over the three-qubit classes."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .engine import verify_checkpoints, verify_deterministic
from .ghz3 import (
    GhzParams,
    WParams,
    make_ghz_state,
    make_w_state,
    nonorthogonal_ghz_protocol_staged,
    orthogonal_ghz_protocol_staged,
    w_protocol_staged,
)
from .states import ghz3_state

DEGENERATE_DRAW_TOL = 1e-3

__all__ = [
    "CLASS_TAGS",
    "sample_w_params",
    "sample_orthogonal_ghz_params",
    "sample_nonorthogonal_ghz_params",
    "SweepCase",
    "SweepReport",
    "verify_sweep",
]

CLASS_TAGS = ("w", "ghz_orthogonal", "ghz_nonorthogonal")


def sample_w_params(rng: np.random.Generator) -> WParams:
    """Uniform draw from the positive orthant of the coefficient 3-sphere."""
    while True:
        v = np.abs(rng.normal(size=4))
        if np.all(v > 0.0):
            return WParams(*(v / np.linalg.norm(v)))


def sample_orthogonal_ghz_params(rng: np.random.Generator) -> GhzParams:
    """Uniform local Bloch angles with phi_C = |1>; weights on the unit circle."""
    while True:
        ta, tb = rng.uniform(0.0, 2.0 * np.pi, size=2)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        x, y = np.cos(phi), np.sin(phi)
        if min(abs(x), abs(y)) < DEGENERATE_DRAW_TOL:
            continue
        return GhzParams(
            x=x, y=y,
            a0=np.cos(ta), a1=np.sin(ta),
            b0=np.cos(tb), b1=np.sin(tb),
            c0=0.0, c1=1.0,
        )


def sample_nonorthogonal_ghz_params(rng: np.random.Generator) -> GhzParams:
    """Uniform Bloch angles, y drawn uniformly and x solved from the norm constraint.

    Draws with |b1|, |c1|, |x| or |y| below 1e-3 are rejected; they sit next
    to degenerate protocols.
    """
    while True:
        ta, tb, tc = rng.uniform(0.0, 2.0 * np.pi, size=3)
        a0, a1 = np.cos(ta), np.sin(ta)
        b0, b1 = np.cos(tb), np.sin(tb)
        c0, c1 = np.cos(tc), np.sin(tc)
        if min(abs(b1), abs(c1)) < DEGENERATE_DRAW_TOL:
            continue
        k = a0 * b0 * c0
        if abs(k) < DEGENERATE_DRAW_TOL:
            continue
        y = rng.uniform(-1.0, 1.0)
        root = np.sqrt(1.0 - y * y * (1.0 - k * k))
        x = -y * k + (root if rng.uniform() < 0.5 else -root)
        if min(abs(x), abs(y)) < DEGENERATE_DRAW_TOL:
            continue
        return GhzParams(x=x, y=y, a0=a0, a1=a1, b0=b0, b1=b1, c0=c0, c1=c1)


_SAMPLERS = {
    "w": sample_w_params,
    "ghz_orthogonal": sample_orthogonal_ghz_params,
    "ghz_nonorthogonal": sample_nonorthogonal_ghz_params,
}

_BUILDERS = {
    "w": (w_protocol_staged, make_w_state),
    "ghz_orthogonal": (orthogonal_ghz_protocol_staged, make_ghz_state),
    "ghz_nonorthogonal": (nonorthogonal_ghz_protocol_staged, make_ghz_state),
}


@dataclass(frozen=True)
class SweepCase:
    """One verified target: class tag, parameter tuple, outcome."""

    tag: str
    params: tuple[float, ...]
    ok: bool
    min_fidelity: float
    prob_sum: float
    reason: str = ""


@dataclass(frozen=True)
class SweepReport:
    n_total: int
    n_passed: int
    worst_fidelity: float
    runtime_seconds: float
    per_class: dict[str, int]
    failures: list[SweepCase] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["failures"] = [asdict(c) for c in self.failures]
        return out


def _params_tuple(tag: str, params) -> tuple[float, ...]:
    if tag == "w":
        return (params.x0, params.x1, params.x2, params.x3)
    return (params.x, params.y, params.a0, params.a1, params.b0, params.b1, params.c0, params.c1)


def _params_from_tuple(tag: str, values: tuple[float, ...]):
    return WParams(*values) if tag == "w" else GhzParams(*values)


def _verify_case(args: tuple[str, tuple[float, ...], float, bool]) -> SweepCase:
    tag, values, tol, check_intermediates = args
    params = _params_from_tuple(tag, values)
    builder, make_state = _BUILDERS[tag]
    source = ghz3_state()
    try:
        staged = builder(params)
        target = make_state(params)
        rep = verify_deterministic(staged.protocol, source, target, tol)
        ok = rep.success
        min_fid = rep.min_fidelity
        reason = "" if ok else f"final fidelity {rep.min_fidelity!r}, prob sum {rep.prob_sum!r}"
        if check_intermediates:
            for cpr in verify_checkpoints(staged.protocol, source, staged.checkpoints, tol):
                min_fid = min(min_fid, cpr.min_fidelity)
                if not cpr.ok:
                    ok = False
                    reason = f"checkpoint {cpr.label!r} fidelity {cpr.min_fidelity!r}"
        return SweepCase(tag, values, ok, min_fid, rep.prob_sum, reason)
    except Exception as exc:  # a builder crash is a failed case, not a crashed sweep
        return SweepCase(tag, values, False, 0.0, 0.0, f"{type(exc).__name__}: {exc}")


def verify_sweep(
    n_per_class: int,
    seed: int,
    tol: float = 1e-8,
    check_intermediates: bool = True,
    workers: int = 1,
) -> SweepReport:
    """Sample ``n_per_class`` targets per class and verify every protocol branch.

    Deterministic for fixed (n_per_class, seed).  ``workers > 1`` spreads
    the verification over processes; results are merged in draw order.
    """
    if n_per_class < 1:
        raise ValueError(f"n_per_class must be >= 1, got {n_per_class}")
    rng = np.random.default_rng(seed)
    jobs = []
    for tag in CLASS_TAGS:
        sampler = _SAMPLERS[tag]
        for _ in range(n_per_class):
            jobs.append((tag, _params_tuple(tag, sampler(rng)), tol, check_intermediates))
    start = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cases = list(pool.map(_verify_case, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        cases = [_verify_case(job) for job in jobs]
    runtime = time.perf_counter() - start
    per_class = {tag: sum(1 for c in cases if c.tag == tag and c.ok) for tag in CLASS_TAGS}
    failures = [c for c in cases if not c.ok]
    return SweepReport(
        n_total=len(cases),
        n_passed=sum(1 for c in cases if c.ok),
        worst_fidelity=min((c.min_fidelity for c in cases), default=0.0),
        runtime_seconds=runtime,
        per_class=per_class,
        failures=failures,
    )
