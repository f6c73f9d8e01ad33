"""Entanglement classification and LOCC no-go checks.

Three-qubit pure states fall into six classes: fully product, three
biseparable families, and two genuinely entangled classes told apart by the
three-tangle (the absolute Cayley hyperdeterminant of the amplitude
tensor), which vanishes exactly on the W class.  For 3x2x2 states, the pair
subsystem is one dimension short of its space; the direction it misses
determines the state's tensor rank (3 when the missing vector is a product,
4 when it is entangled).  Bipartite majorization across each cut gives a
necessary condition for any LOCC transformation, usable as a no-go check.
"""

from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .majorization import majorizes
from .states import Bipartition, PureState, schmidt_vector

TANGLE_TOL = 1e-9
TANGLE_WARN_TOL = 1e-12
SUPPORT_RANK_TOL = 1e-12
ORTHOGONALITY_TOL = 1e-9
PRODUCT_DET_TOL = 1e-10
FORM_TOL = 1e-9
SYMMETRY_TOL = 1e-10

__all__ = [
    "DegenerateSupport",
    "FormMismatch",
    "SloccClass",
    "MissingDimensionKind",
    "MissingDimension",
    "CutReport",
    "three_tangle",
    "slocc_class",
    "missing_dimension",
    "tensor_rank_322",
    "cut_condition",
    "symmetric_target_flag",
    "report",
]


class DegenerateSupport(ValueError):
    """The pair subsystem's support has rank below 3; no unique missing direction."""


class FormMismatch(ValueError):
    """The state does not have the expected canonical form."""


class SloccClass(enum.Enum):
    PRODUCT_FULL = "product"
    BISEPARABLE_A = "biseparable_a"
    BISEPARABLE_B = "biseparable_b"
    BISEPARABLE_C = "biseparable_c"
    W_CLASS = "w"
    GHZ_CLASS = "ghz"


class MissingDimensionKind(enum.Enum):
    PRODUCT = "product"
    ENTANGLED = "entangled"


@dataclass(frozen=True)
class MissingDimension:
    """Unit vector on the BC pair orthogonal to a 3x2x2 state's BC support."""

    vec: np.ndarray
    kind: MissingDimensionKind


def three_tangle(state: PureState) -> float:
    """|Cayley hyperdeterminant| of the three-qubit amplitude tensor, scaled to [0, 1].

    Zero exactly on W-class and more degenerate states; 1 on the
    two-term GHZ state.
    """
    if state.dims != (2, 2, 2):
        raise ValueError(f"three_tangle needs a three-qubit state, got dims {state.dims}")
    a = state.tensor
    det = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
        - 2.0
        * (
            a[0, 0, 0] * a[0, 0, 1] * a[1, 1, 0] * a[1, 1, 1]
            + a[0, 0, 0] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 1]
            + a[0, 0, 0] * a[1, 0, 0] * a[0, 1, 1] * a[1, 1, 1]
            + a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 0]
            + a[0, 0, 1] * a[1, 0, 0] * a[0, 1, 1] * a[1, 1, 0]
            + a[0, 1, 0] * a[1, 0, 0] * a[0, 1, 1] * a[1, 0, 1]
        )
        + 4.0
        * (
            a[0, 0, 0] * a[0, 1, 1] * a[1, 0, 1] * a[1, 1, 0]
            + a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0] * a[1, 1, 1]
        )
    )
    return float(4.0 * abs(det))


def slocc_class(state: PureState) -> SloccClass:
    """Classify a three-qubit pure state by reduced ranks and the three-tangle."""
    if state.dims != (2, 2, 2):
        raise ValueError(f"slocc_class needs a three-qubit state, got dims {state.dims}")
    ranks = [len(schmidt_vector(state, Bipartition.of({p}, 3))) for p in range(3)]
    pure_parties = [p for p, r in enumerate(ranks) if r == 1]
    if len(pure_parties) >= 2:
        return SloccClass.PRODUCT_FULL
    if len(pure_parties) == 1:
        return (SloccClass.BISEPARABLE_A, SloccClass.BISEPARABLE_B, SloccClass.BISEPARABLE_C)[
            pure_parties[0]
        ]
    tangle = three_tangle(state)
    if tangle > TANGLE_TOL:
        return SloccClass.GHZ_CLASS
    if tangle > TANGLE_WARN_TOL:
        warnings.warn(
            f"three-tangle {tangle:.3e} is near the classification threshold {TANGLE_TOL:.0e}; "
            "classifying as W class",
            RuntimeWarning,
            stacklevel=2,
        )
    return SloccClass.W_CLASS


def missing_dimension(state: PureState) -> MissingDimension:
    """The unique BC-pair direction orthogonal to a 3x2x2 state's BC support.

    Requires the support to have dimension exactly 3 (else
    :class:`DegenerateSupport`).  The result is a product vector exactly for
    tensor-rank-3 states and entangled for rank-4 ones; the kind is decided
    by the 2x2 reshape's determinant.
    """
    if state.dims != (3, 2, 2):
        raise ValueError(f"missing_dimension needs dims (3, 2, 2), got {state.dims}")
    support = state.tensor.reshape(3, 4).T  # columns span the BC support
    u_mat, svals, _ = np.linalg.svd(support)
    rank = int(np.count_nonzero(svals >= SUPPORT_RANK_TOL))
    if rank < 3:
        raise DegenerateSupport(f"BC support has rank {rank}, expected 3")
    vec = u_mat[:, 3]
    residual = np.max(np.abs(vec.conj() @ support))
    if residual > ORTHOGONALITY_TOL:
        raise DegenerateSupport(f"missing-direction residual {residual:.3e} too large")
    pivot = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[pivot]) / vec[pivot])  # deterministic phase
    kind = (
        MissingDimensionKind.PRODUCT
        if abs(np.linalg.det(vec.reshape(2, 2))) < PRODUCT_DET_TOL
        else MissingDimensionKind.ENTANGLED
    )
    vec.setflags(write=False)
    return MissingDimension(vec, kind)


def tensor_rank_322(state: PureState) -> int:
    """Tensor rank (3 or 4) of a 3x2x2 state, read off its missing dimension."""
    md = missing_dimension(state)
    return 3 if md.kind is MissingDimensionKind.PRODUCT else 4


@dataclass(frozen=True)
class CutReport:
    """Majorization necessary conditions per bipartite cut."""

    cuts: dict[str, bool]
    overall: bool


def _cut_label(left: tuple[int, ...], n: int) -> str:
    right = tuple(p for p in range(n) if p not in left)
    return ",".join(map(str, left)) + "|" + ",".join(map(str, right))


def cut_condition(source: PureState, target: PureState) -> CutReport:
    """Necessary conditions for source -> target under LOCC, cut by cut.

    Checks that the source Schmidt vector is majorized by the target's
    across each bipartite cut (single-party cuts up to three parties, all
    bipartitions beyond).  A False anywhere rules the transformation out;
    True everywhere is necessary but not sufficient.
    """
    n = source.n_parties
    if target.n_parties != n:
        raise ValueError(f"party count mismatch: {n} vs {target.n_parties}")
    if n < 2:
        raise ValueError("cut conditions need at least two parties")
    if n <= 3:
        lefts = [(p,) for p in range(n)] if n == 3 else [(0,)]
    else:
        lefts = []
        for size in range(1, n):
            for combo in _combinations_with_zero(n, size):
                lefts.append(combo)
    cuts = {}
    for left in lefts:
        cut = Bipartition.of(left, n)
        cuts[_cut_label(left, n)] = majorizes(
            schmidt_vector(target, cut), schmidt_vector(source, cut)
        )
    return CutReport(cuts, all(cuts.values()))


def _combinations_with_zero(n: int, size: int):
    """Size-``size`` subsets of range(n) containing 0 (one side per bipartition)."""
    for rest in itertools.combinations(range(1, n), size - 1):
        yield (0,) + rest


def symmetric_target_flag(target: PureState) -> bool:
    """For targets (|100> + sqrt(1-L)|010> + sqrt(L)|001>) / sqrt(2): is L = 1/2?

    Recovers the weight from the amplitudes and flags whether the two-qubit
    part treats the last two parties symmetrically.  States not of this
    form (including the L = 0, 1 product boundaries) raise
    :class:`FormMismatch`.
    """
    if target.dims != (2, 2, 2):
        raise ValueError(f"expected a three-qubit state, got dims {target.dims}")
    amps = target.amps
    ref = amps[4]  # |100> carries weight 1/sqrt(2) in this form
    if abs(ref) < FORM_TOL:
        raise FormMismatch("no |100> component")
    a = amps * (abs(ref) / ref)
    if np.max(np.abs(a.imag)) > FORM_TOL:
        raise FormMismatch("amplitudes are not real up to a global phase")
    r = a.real
    if np.max(np.abs(r[[0, 3, 5, 6, 7]])) > FORM_TOL:
        raise FormMismatch("support outside {|100>, |010>, |001>}")
    if abs(r[4] - 1.0 / np.sqrt(2.0)) > FORM_TOL:
        raise FormMismatch(f"|100> weight {r[4]!r} != 1/sqrt(2)")
    if r[1] < -FORM_TOL or r[2] < -FORM_TOL:
        raise FormMismatch("negative branch weights")
    lam = 2.0 * max(float(r[1]), 0.0) ** 2
    if not SYMMETRY_TOL <= lam <= 1.0 - SYMMETRY_TOL:
        raise FormMismatch(f"weight {lam!r} at the product boundary; target is biseparable")
    return bool(abs(lam - 0.5) < SYMMETRY_TOL)


def report(state: PureState, target: PureState | None = None) -> dict:
    """JSON-ready analysis summary for a state (and optionally a transformation target)."""
    out: dict = {"dims": list(state.dims)}
    if state.dims == (2, 2, 2):
        cls = slocc_class(state)
        out["class"] = cls.value
        out["three_tangle"] = three_tangle(state)
    if state.dims == (3, 2, 2):
        try:
            md = missing_dimension(state)
            out["missing_dimension"] = [[float(x.real), float(x.imag)] for x in md.vec]
            out["missing_dimension_kind"] = md.kind.value
            out["tensor_rank"] = tensor_rank_322(state)
        except DegenerateSupport as exc:
            out["missing_dimension_error"] = str(exc)
    if target is not None:
        cut_report = cut_condition(state, target)
        out["cuts"] = cut_report.cuts
        out["cuts_ok"] = cut_report.overall
    return out
