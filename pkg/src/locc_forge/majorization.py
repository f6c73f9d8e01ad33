"""Majorization order on probability vectors and optimal common resources.

A descending probability vector ``x`` majorizes ``y`` (``y < x``) when every
prefix sum of ``y`` is bounded by the corresponding prefix sum of ``x`` and
the totals agree.  For bipartite pure states, a source transforms into a
target under LOCC exactly when the source's Schmidt vector is majorized by
the target's; the greatest lower bound of a family of Schmidt vectors in
this order is the Schmidt vector of the unique optimal common resource for
that family of targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .states import (
    Bipartition,
    PureState,
    SchmidtVector,
    schmidt_vector,
)

PREFIX_TOL = 1e-12
TOTAL_TOL = 1e-10

__all__ = [
    "SchmidtVector",
    "CumulativeEnvelope",
    "InvalidEnvelope",
    "majorizes",
    "can_transform",
    "ocr_finite",
    "ocr_envelope",
    "sa_family_ocr",
    "ensemble_feasible",
    "is_common_resource",
]


class InvalidEnvelope(ValueError):
    """The supplied infima cannot arise from descending probability vectors."""


def _as_entries(vec) -> np.ndarray:
    if isinstance(vec, SchmidtVector):
        return vec.entries
    return SchmidtVector(np.asarray(vec, dtype=float)).entries


def _padded_rows(vectors: Sequence) -> np.ndarray:
    rows = [_as_entries(v) for v in vectors]
    d = max(r.size for r in rows)
    out = np.zeros((len(rows), d))
    for i, r in enumerate(rows):
        out[i, : r.size] = r
    return out


def _family_matrix(family) -> np.ndarray:
    """Coerce a family to a 2-D array of descending rows, zero-padded."""
    if isinstance(family, np.ndarray) and family.ndim == 2:
        rows = np.asarray(family, dtype=float)
        if rows.shape[0] == 0:
            raise ValueError("family must be non-empty")
        if np.any(rows < -PREFIX_TOL):
            raise ValueError("family entries must be nonnegative")
        if np.any(np.diff(rows, axis=1) > PREFIX_TOL):
            raise ValueError("family rows must be descending")
        totals = rows.sum(axis=1)
        if np.any(np.abs(totals - 1.0) > TOTAL_TOL):
            raise ValueError("family rows must sum to 1")
        return rows
    vectors = list(family)
    if not vectors:
        raise ValueError("family must be non-empty")
    return _padded_rows(vectors)


def _prefix_dominated(lower: np.ndarray, upper: np.ndarray) -> bool:
    """True when the ``lower`` cumulative curve sits under ``upper`` with equal totals."""
    if abs(lower[-1] - upper[-1]) > TOTAL_TOL:
        return False
    return bool(np.all(lower[:-1] <= upper[:-1] + PREFIX_TOL))


def majorizes(x, y) -> bool:
    """True iff ``y`` is majorized by ``x`` (``y < x``)."""
    rows = _padded_rows([x, y])
    prefixes = np.cumsum(rows, axis=1)
    return _prefix_dominated(prefixes[1], prefixes[0])


def can_transform(source: PureState, target: PureState, cut: Bipartition) -> bool:
    """Deterministic LOCC convertibility of bipartite pure states across ``cut``.

    Holds exactly when the source Schmidt vector is majorized by the
    target's.
    """
    return majorizes(schmidt_vector(target, cut), schmidt_vector(source, cut))


def ocr_finite(family) -> SchmidtVector:
    """Greatest lower bound of a finite family in the majorization order.

    Entry ``k`` of the result is the k-th increment of the pointwise minimum
    of the family's cumulative-sum curves.  The output is majorized by every
    member, and majorizes every vector that is; it is the Schmidt vector of
    the unique optimal common resource for targets with those Schmidt
    vectors.

    Accepts a sequence of SchmidtVector/array-likes or a 2-D array whose
    rows are descending probability vectors (shorter vectors are
    zero-padded).  The result is asserted descending rather than re-sorted,
    so non-descending inputs fail loudly.
    """
    rows = _family_matrix(family)
    envelope = np.cumsum(rows, axis=1).min(axis=0)
    return SchmidtVector(np.diff(envelope, prepend=0.0))


@dataclass(frozen=True)
class CumulativeEnvelope:
    """Pointwise infimum of the cumulative-sum curves of a vector family.

    ``c[k]`` holds the infimum over the family of the (k+1)-term partial
    sums.  Construction validates that the curve could come from descending
    probability vectors: non-decreasing, ends at 1, and has non-increasing
    increments (raising :class:`InvalidEnvelope` otherwise).
    """

    c: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.c, dtype=float).ravel()
        if c.size == 0:
            raise InvalidEnvelope("envelope must have at least one entry")
        if not 0.0 < c[0] <= 1.0 + TOTAL_TOL:
            raise InvalidEnvelope(f"first envelope value {c[0]!r} outside (0, 1]")
        if abs(c[-1] - 1.0) > TOTAL_TOL:
            raise InvalidEnvelope(f"envelope must end at 1, got {c[-1]!r}")
        increments = np.diff(c, prepend=0.0)
        if np.any(increments < -PREFIX_TOL):
            raise InvalidEnvelope("envelope must be non-decreasing")
        if np.any(np.diff(increments) > PREFIX_TOL):
            raise InvalidEnvelope(
                "envelope increments increase; these infima cannot come from descending vectors"
            )
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def d(self) -> int:
        return self.c.size

    @classmethod
    def from_family(cls, family) -> "CumulativeEnvelope":
        """Sampled envelope: pointwise minimum over a finite family."""
        rows = _family_matrix(family)
        return cls(np.cumsum(rows, axis=1).min(axis=0))


def ocr_envelope(env: CumulativeEnvelope) -> SchmidtVector:
    """Greatest lower bound read off a cumulative envelope (its first differences)."""
    return SchmidtVector(np.diff(env.c, prepend=0.0))


def sa_family_ocr(d: int, a: float) -> SchmidtVector:
    """Optimal common resource for the targets whose largest Schmidt coefficient is >= a.

    Closed form ``(a, (1-a)/(d-1), ..., (1-a)/(d-1))``; requires
    ``1/d <= a <= 1`` (below ``1/d`` the family is the whole space).
    """
    d = int(d)
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    if a < 1.0 / d - PREFIX_TOL:
        raise ValueError(f"a={a!r} below 1/d={1.0 / d!r}; the constraint would be vacuous")
    if a > 1.0 + PREFIX_TOL:
        raise ValueError(f"a={a!r} exceeds 1")
    a = min(max(a, 1.0 / d), 1.0)
    entries = np.full(d, (1.0 - a) / (d - 1))
    entries[0] = a
    return SchmidtVector(entries)


def ensemble_feasible(source, ensemble: Iterable[tuple]) -> bool:
    """Can a state with Schmidt vector ``source`` produce the given ensemble by LOCC?

    ``ensemble`` is an iterable of ``(schmidt_vector, probability)`` pairs.
    Feasible exactly when every prefix sum of ``source`` is bounded by the
    probability-weighted average of the members' prefix sums.
    """
    pairs = list(ensemble)
    if not pairs:
        raise ValueError("ensemble must be non-empty")
    probs = np.array([float(p) for _, p in pairs])
    if np.any(probs < -PREFIX_TOL):
        raise ValueError("ensemble probabilities must be nonnegative")
    if abs(probs.sum() - 1.0) > TOTAL_TOL:
        raise ValueError(f"ensemble probabilities sum to {probs.sum()!r}, expected 1")
    rows = _padded_rows([source] + [v for v, _ in pairs])
    prefixes = np.cumsum(rows, axis=1)
    weighted = probs @ prefixes[1:]
    return _prefix_dominated(prefixes[0], weighted)


def is_common_resource(candidate: PureState, targets: Sequence[PureState], cut: Bipartition) -> bool:
    """True when the candidate transforms into every target by LOCC across ``cut``."""
    return all(can_transform(candidate, t, cut) for t in targets)
