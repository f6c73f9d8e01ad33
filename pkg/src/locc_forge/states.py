"""Multipartite pure states and local-operator linear algebra.

Index convention: a state over parties with local dimensions ``dims = (d0,
d1, ...)`` stores its amplitudes as a flat complex vector of length
``prod(dims)``, row-major with party 0 most significant.  The amplitude of
the basis ket ``|i0 i1 i2>`` therefore sits at flat index
``(i0 * d1 + i1) * d2 + i2``, and ``amps.reshape(dims)`` yields the
coefficient tensor indexed by party.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

NORM_TOL = 1e-10
JSON_NORM_TOL = 1e-8
SCHMIDT_RANK_TOL = 1e-12   # singular values below this count as zero
DESCENDING_TOL = 1e-12

__all__ = [
    "PureState",
    "UnnormalizedState",
    "LocalOperator",
    "Bipartition",
    "SchmidtVector",
    "apply_local",
    "schmidt_vector",
    "reduced_spectrum",
    "fidelity_up_to_phase",
    "basis_state",
    "ghz3_state",
    "ghz2_state",
    "random_state",
    "random_unitary",
    "state_to_dict",
    "state_from_dict",
    "state_to_json",
    "state_from_json",
]


def _as_dims(dims: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out or any(d < 1 for d in out):
        raise ValueError(f"local dimensions must be positive integers, got {out}")
    return out


@dataclass(frozen=True)
class PureState:
    """Normalized pure state of a multipartite system.

    Attributes:
        dims: local dimension of each party, party 0 first.
        amps: flat complex amplitude vector (see module docstring for the
            index convention); unit norm within ``NORM_TOL``.
    """

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self) -> None:
        dims = _as_dims(self.dims)
        amps = np.array(self.amps, dtype=complex).ravel()
        if amps.size != math.prod(dims):
            raise ValueError(
                f"amplitude vector has length {amps.size}, expected {math.prod(dims)} for dims {dims}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per party."""
        return self.amps.reshape(self.dims)


@dataclass(frozen=True)
class UnnormalizedState:
    """Measurement-branch intermediate: same layout as PureState, any norm."""

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self) -> None:
        dims = _as_dims(self.dims)
        amps = np.array(self.amps, dtype=complex).ravel()
        if amps.size != math.prod(dims):
            raise ValueError(
                f"amplitude vector has length {amps.size}, expected {math.prod(dims)} for dims {dims}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def probability(self) -> float:
        """Squared norm; the outcome probability when produced by a Kraus operator."""
        return float(np.vdot(self.amps, self.amps).real)

    def normalized(self) -> PureState:
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.dims, self.amps / n)


@dataclass(frozen=True)
class LocalOperator:
    """A (possibly rectangular) matrix acting on one party's subsystem."""

    party: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2:
            raise ValueError(f"operator matrix must be 2-D, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("operator entries must be finite")
        mat.setflags(write=False)
        object.__setattr__(self, "party", int(self.party))
        object.__setattr__(self, "matrix", mat)

    @property
    def d_out(self) -> int:
        return self.matrix.shape[0]

    @property
    def d_in(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class Bipartition:
    """A split of the parties into two non-empty disjoint groups."""

    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self) -> None:
        left = frozenset(int(p) for p in self.left)
        right = frozenset(int(p) for p in self.right)
        if not left or not right:
            raise ValueError("both sides of a bipartition must be non-empty")
        if left & right:
            raise ValueError(f"bipartition sides overlap: {sorted(left & right)}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @classmethod
    def of(cls, left: Iterable[int], n_parties: int) -> "Bipartition":
        """Bipartition of ``range(n_parties)`` with the given left side."""
        left_set = frozenset(int(p) for p in left)
        return cls(left_set, frozenset(range(n_parties)) - left_set)

    def validate_for(self, n_parties: int) -> None:
        if self.left | self.right != frozenset(range(n_parties)):
            raise ValueError(
                f"bipartition {sorted(self.left)}|{sorted(self.right)} does not cover "
                f"parties 0..{n_parties - 1}"
            )


@dataclass(frozen=True)
class SchmidtVector:
    """Descending nonnegative reals summing to 1 (squared Schmidt coefficients)."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float).ravel()
        if entries.size == 0:
            raise ValueError("a Schmidt vector needs at least one entry")
        if np.any(entries < -DESCENDING_TOL):
            raise ValueError("Schmidt vector entries must be nonnegative")
        if np.any(np.diff(entries) > DESCENDING_TOL):
            raise ValueError(f"Schmidt vector entries must be descending, got {entries}")
        total = float(entries.sum())
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"Schmidt vector sums to {total!r}, expected 1")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return self.entries.size

    def __getitem__(self, idx):
        return self.entries[idx]

    def __iter__(self):
        return iter(self.entries)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)

    def padded(self, d: int) -> np.ndarray:
        """Entries zero-padded on the right to length ``d``."""
        if d < self.entries.size:
            raise ValueError(f"cannot pad length-{self.entries.size} vector to {d}")
        out = np.zeros(d)
        out[: self.entries.size] = self.entries
        return out


def apply_local(state: PureState | UnnormalizedState, op: LocalOperator) -> UnnormalizedState:
    """Apply ``I x ... x M x ... x I`` with ``M`` on ``op.party``.

    The result is unnormalized; its squared norm is the outcome probability
    when ``M`` belongs to a Kraus set.  Rectangular ``M`` changes the party's
    local dimension.
    """
    dims = state.dims
    if not 0 <= op.party < len(dims):
        raise ValueError(f"party {op.party} out of range for {len(dims)} parties")
    if op.d_in != dims[op.party]:
        raise ValueError(
            f"operator acts on dimension {op.d_in} but party {op.party} has dimension {dims[op.party]}"
        )
    moved = np.tensordot(op.matrix, state.amps.reshape(dims), axes=([1], [op.party]))
    out = np.moveaxis(moved, 0, op.party)
    new_dims = dims[: op.party] + (op.d_out,) + dims[op.party + 1 :]
    return UnnormalizedState(new_dims, out.ravel())


def schmidt_vector(state: PureState, cut: Bipartition) -> SchmidtVector:
    """Squared singular values of the state reshaped across ``cut``, descending.

    Trailing zero coefficients (singular value below ``SCHMIDT_RANK_TOL``)
    are trimmed, so the length equals the Schmidt rank across the cut.
    """
    n = state.n_parties
    cut.validate_for(n)
    left = sorted(cut.left)
    right = sorted(cut.right)
    d_left = math.prod(state.dims[p] for p in left)
    d_right = math.prod(state.dims[p] for p in right)
    mat = state.tensor.transpose(left + right).reshape(d_left, d_right)
    svals = np.linalg.svd(mat, compute_uv=False)
    rank = int(np.count_nonzero(svals >= SCHMIDT_RANK_TOL))
    return SchmidtVector(svals[: max(rank, 1)] ** 2)


def reduced_spectrum(state: PureState, parties: Iterable[int]) -> SchmidtVector:
    """Eigenvalues of the reduced state on ``parties``, descending.

    Named convenience for ``schmidt_vector`` across the cut
    ``parties | complement``.
    """
    subset = frozenset(int(p) for p in parties)
    if not subset:
        raise ValueError("party subset must be non-empty")
    everyone = frozenset(range(state.n_parties))
    if subset == everyone:
        raise ValueError("party subset must be proper (reduced state would be the full state)")
    if not subset <= everyone:
        raise ValueError(f"parties {sorted(subset - everyone)} out of range")
    return schmidt_vector(state, Bipartition(subset, everyone - subset))


def fidelity_up_to_phase(a: PureState, b: PureState) -> float:
    """|<a|b>|; equals 1 exactly when the states agree up to a global phase."""
    if a.dims != b.dims:
        raise ValueError(f"dimension mismatch: {a.dims} vs {b.dims}")
    return float(min(abs(np.vdot(a.amps, b.amps)), 1.0))


def basis_state(dims: Iterable[int], indices: Iterable[int]) -> PureState:
    """Computational basis ket ``|i0 i1 ...>``."""
    dims = _as_dims(dims)
    idx = tuple(int(i) for i in indices)
    if len(idx) != len(dims) or any(not 0 <= i < d for i, d in zip(idx, dims)):
        raise ValueError(f"basis indices {idx} invalid for dims {dims}")
    amps = np.zeros(math.prod(dims), dtype=complex)
    amps[int(np.ravel_multi_index(idx, dims))] = 1.0
    return PureState(dims, amps)


def ghz3_state() -> PureState:
    """Three-qutrit state (|000> + |111> + |222>) / sqrt(3)."""
    amps = np.zeros(27, dtype=complex)
    amps[[0, 13, 26]] = 1.0 / np.sqrt(3.0)
    return PureState((3, 3, 3), amps)


def ghz2_state() -> PureState:
    """Three-qubit state (|000> + |111>) / sqrt(2)."""
    amps = np.zeros(8, dtype=complex)
    amps[[0, 7]] = 1.0 / np.sqrt(2.0)
    return PureState((2, 2, 2), amps)


def random_state(dims: Iterable[int], rng: np.random.Generator) -> PureState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    dims = _as_dims(dims)
    n = math.prod(dims)
    amps = rng.normal(size=n) + 1j * rng.normal(size=n)
    return PureState(dims, amps / np.linalg.norm(amps))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random d x d unitary (QR of a complex Ginibre matrix)."""
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def state_to_dict(state: PureState) -> dict:
    """JSON-ready payload: {"dims": [...], "amps": [[re, im], ...]}."""
    return {
        "dims": list(state.dims),
        "amps": [[float(a.real), float(a.imag)] for a in state.amps],
    }


def state_from_dict(payload: dict) -> PureState:
    """Parse the JSON state format; rejects norm deviation beyond ``JSON_NORM_TOL``."""
    try:
        dims = _as_dims(payload["dims"])
        raw = payload["amps"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"state payload must have 'dims' and 'amps' fields: {exc}") from exc
    amps = np.array([complex(re, im) for re, im in raw])
    if amps.size != math.prod(dims):
        raise ValueError(f"{amps.size} amplitudes for dims {dims} (expected {math.prod(dims)})")
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > JSON_NORM_TOL:
        raise ValueError(f"state norm {norm!r} deviates from 1 beyond {JSON_NORM_TOL}")
    return PureState(dims, amps / norm)


def state_to_json(state: PureState) -> str:
    return json.dumps(state_to_dict(state))


def state_from_json(text: str) -> PureState:
    return state_from_dict(json.loads(text))
