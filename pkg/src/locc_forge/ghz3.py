"""Protocols preparing arbitrary three-qubit pure states from the qutrit GHZ state.

Every genuinely entangled three-qubit target, written in a canonical
parameterization (:class:`WParams` for the W class, :class:`GhzParams` for
the GHZ class), is reached deterministically: each builder returns a
protocol all of whose branches end in the target state.  All builders open
with the same three-outcome "dilution" measurement that turns the qutrit
GHZ state into an arbitrary three-term Schmidt-diagonal state; the
class-specific stages then reshape that intermediate with two- and
four-outcome measurements whose sign ambiguities are undone by broadcast
corrections.

Product and biseparable targets are handled by a separate measure-and-
discard construction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .analysis import SloccClass, slocc_class
from .engine import (
    Checkpoint,
    CorrectStep,
    LoccProtocol,
    MeasureStep,
    Measurement,
    StagedProtocol,
    Step,
)
from .states import (
    LocalOperator,
    PureState,
    apply_local,
    fidelity_up_to_phase,
    ghz2_state,
)

NORM_TOL = 1e-10
ORTH_FORM_TOL = 1e-12
DEGENERATE_TOL = 1e-12
PARAM_MATCH_TOL = 1e-8
SIGN_SEARCH_TOL = 1e-9

_I2 = np.eye(2)
_I3 = np.eye(3)
_X2 = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z2 = np.array([[1.0, 0.0], [0.0, -1.0]])
# cyclic shifts on a qutrit: _DOWN3 |j> = |j-1 mod 3>, _UP3 |j> = |j+1 mod 3>
_DOWN3 = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
_UP3 = _DOWN3.T.copy()
# complete two-outcome reduction of a qutrit to a qubit; the second outcome
# has probability zero whenever the state has no |2> component
_TRUNCATE = (
    np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
    np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]),
)

__all__ = [
    "InvalidParams",
    "WrongClass",
    "ParamMismatch",
    "CorrectionNotFound",
    "WParams",
    "GhzParams",
    "make_w_state",
    "make_ghz_state",
    "schmidt_dilution_protocol",
    "schmidt_dilution_staged",
    "w_protocol",
    "w_protocol_staged",
    "orthogonal_ghz_protocol",
    "orthogonal_ghz_protocol_staged",
    "nonorthogonal_ghz_protocol",
    "nonorthogonal_ghz_protocol_staged",
    "trivial_preparation_protocol",
    "trivial_preparation_staged",
    "ghz3_to_any",
    "ghz3_to_any_staged",
]


class InvalidParams(ValueError):
    """Canonical parameters violate their normalization constraints."""


class WrongClass(ValueError):
    """Parameters do not belong to the class this builder handles."""


class ParamMismatch(ValueError):
    """Supplied parameters do not reproduce the target amplitudes."""


class CorrectionNotFound(RuntimeError):
    """No local sign correction maps a measurement branch onto its intended state."""


@dataclass(frozen=True)
class WParams:
    """Canonical W-class amplitudes: x0|000> + x1|100> + x2|010> + x3|001>.

    All four coefficients are strictly positive and their squares sum to 1.
    """

    x0: float
    x1: float
    x2: float
    x3: float

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in (self.x0, self.x1, self.x2, self.x3))
        if any(v <= 0.0 for v in vals):
            raise InvalidParams(f"W coefficients must be strictly positive, got {vals}")
        total = sum(v * v for v in vals)
        if abs(total - 1.0) > NORM_TOL:
            raise InvalidParams(f"W coefficient squares sum to {total!r}, expected 1")
        for name, v in zip(("x0", "x1", "x2", "x3"), vals):
            object.__setattr__(self, name, v)

    @property
    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3])


@dataclass(frozen=True)
class GhzParams:
    """Canonical GHZ-class form x|000> + y|phi_A phi_B phi_C>, all real.

    Each local state ``phi_P = p0|0> + p1|1>`` is unit-normalized, and the
    total state must be normalized: ``x^2 + y^2 + 2 x y a0 b0 c0 = 1``.  The
    orthogonal sub-case is ``a0 b0 c0 = 0`` (canonically ``c0 = 0``).
    """

    x: float
    y: float
    a0: float
    a1: float
    b0: float
    b1: float
    c0: float
    c1: float

    def __post_init__(self) -> None:
        vals = {name: float(getattr(self, name)) for name in ("x", "y", "a0", "a1", "b0", "b1", "c0", "c1")}
        for pair in (("a0", "a1"), ("b0", "b1"), ("c0", "c1")):
            norm = vals[pair[0]] ** 2 + vals[pair[1]] ** 2
            if abs(norm - 1.0) > NORM_TOL:
                raise InvalidParams(f"|{pair[0]}|^2 + |{pair[1]}|^2 = {norm!r}, expected 1")
        total = vals["x"] ** 2 + vals["y"] ** 2 + 2.0 * vals["x"] * vals["y"] * vals["a0"] * vals["b0"] * vals["c0"]
        if abs(total - 1.0) > NORM_TOL:
            raise InvalidParams(f"state norm^2 would be {total!r}, expected 1")
        for name, v in vals.items():
            object.__setattr__(self, name, v)

    @property
    def overlap(self) -> float:
        """<000|phi_A phi_B phi_C> = a0 b0 c0."""
        return self.a0 * self.b0 * self.c0

    @property
    def is_orthogonal(self) -> bool:
        return abs(self.overlap) <= ORTH_FORM_TOL

    @property
    def phi_a(self) -> np.ndarray:
        return np.array([self.a0, self.a1])

    @property
    def phi_b(self) -> np.ndarray:
        return np.array([self.b0, self.b1])

    @property
    def phi_c(self) -> np.ndarray:
        return np.array([self.c0, self.c1])


def make_w_state(p: WParams) -> PureState:
    """Three-qubit state with the four canonical W-class amplitudes."""
    return _state_from_terms(
        (2, 2, 2),
        [(p.x0, (0, 0, 0)), (p.x1, (1, 0, 0)), (p.x2, (0, 1, 0)), (p.x3, (0, 0, 1))],
    )


def make_ghz_state(p: GhzParams) -> PureState:
    """Three-qubit state x|000> + y|phi_A phi_B phi_C>."""
    tensor = p.y * np.einsum("i,j,k->ijk", p.phi_a, p.phi_b, p.phi_c)
    tensor[0, 0, 0] += p.x
    return PureState((2, 2, 2), tensor.astype(complex).ravel())


def _state_from_terms(dims: tuple[int, ...], terms) -> PureState:
    amps = np.zeros(math.prod(dims), dtype=complex)
    for coeff, idx in terms:
        amps[int(np.ravel_multi_index(idx, dims))] += coeff
    return PureState(dims, amps)


class _Builder:
    """Accumulates steps, materializing correction tables over all outcome records."""

    def __init__(self) -> None:
        self._steps: list[Step] = []
        self._counts: list[int] = []
        self._checkpoints: list[Checkpoint] = []

    def measure(self, party: int, kraus) -> None:
        m = Measurement(party, tuple(kraus))
        self._steps.append(MeasureStep(m))
        self._counts.append(m.n_outcomes)

    def correct(self, party: int, op_for_record) -> None:
        table = {
            rec: op_for_record(rec)
            for rec in itertools.product(*(range(1, c + 1) for c in self._counts))
        }
        self._steps.append(CorrectStep(party, table))

    def checkpoint(self, expected: PureState, label: str) -> None:
        self._checkpoints.append(Checkpoint(len(self._steps), expected, label))

    def build(self) -> StagedProtocol:
        return StagedProtocol(LoccProtocol(tuple(self._steps)), tuple(self._checkpoints))


def _dilution_kraus(z0: float, z1: float, z2: float) -> tuple[np.ndarray, ...]:
    """Alice's three-outcome measurement turning the qutrit GHZ state Schmidt-diagonal.

    Outcome 1 keeps the basis in place; outcomes 2 and 3 permute it
    cyclically and are undone by matching shifts on the other parties.
    """
    m1 = np.diag([z0, z1, z2]).astype(float)
    m2 = np.zeros((3, 3))
    m2[0, 1], m2[1, 2], m2[2, 0] = z0, z1, z2
    m3 = np.zeros((3, 3))
    m3[0, 2], m3[1, 0], m3[2, 1] = z0, z1, z2
    return (m1, m2, m3)


def _append_dilution(b: _Builder, z: tuple[float, float, float]) -> None:
    b.measure(0, _dilution_kraus(*z))
    shift = {1: _I3, 2: _DOWN3, 3: _UP3}
    b.correct(1, lambda rec: shift[rec[0]])
    b.correct(2, lambda rec: shift[rec[0]])


def schmidt_dilution_staged(z0: float, z1: float, z2: float) -> StagedProtocol:
    """Protocol taking the qutrit GHZ state to z0|000> + z1|111> + z2|222>."""
    z = (float(z0), float(z1), float(z2))
    total = sum(v * v for v in z)
    if abs(total - 1.0) > NORM_TOL:
        raise InvalidParams(f"dilution weights square-sum to {total!r}, expected 1")
    b = _Builder()
    _append_dilution(b, z)
    b.checkpoint(
        _state_from_terms((3, 3, 3), [(z[0], (0, 0, 0)), (z[1], (1, 1, 1)), (z[2], (2, 2, 2))]),
        "dilution",
    )
    return b.build()


def schmidt_dilution_protocol(z0: float, z1: float, z2: float) -> LoccProtocol:
    return schmidt_dilution_staged(z0, z1, z2).protocol


def w_protocol_staged(p: WParams) -> StagedProtocol:
    """Deterministic route to a W-class target.

    Dilution first concentrates the weights (x0, x1 merged); three
    simultaneous two-outcome measurements then move each term onto a
    one-excitation basis state, shrinking every qutrit to a qubit; the
    final binary measurement splits the merged weight back into x0 and x1.
    Each two-outcome stage broadcasts its result and the designated
    receiver undoes the sign with a Z.
    """
    r = math.hypot(p.x0, p.x1)
    s = 1.0 / math.sqrt(2.0)
    b = _Builder()
    _append_dilution(b, (r, p.x2, p.x3))
    b.checkpoint(
        _state_from_terms((3, 3, 3), [(r, (0, 0, 0)), (p.x2, (1, 1, 1)), (p.x3, (2, 2, 2))]),
        "dilution",
    )
    b.measure(0, (s * np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 0.0]]),
                  s * np.array([[0.0, -1.0, 1.0], [1.0, 0.0, 0.0]])))
    b.measure(1, (s * np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
                  s * np.array([[1.0, 0.0, -1.0], [0.0, 1.0, 0.0]])))
    b.measure(2, (s * np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
                  s * np.array([[-1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])))
    # results travel around the ring: the receiver applies Z on result 2
    b.correct(1, lambda rec: _Z2 if rec[1] == 2 else _I2)
    b.correct(2, lambda rec: _Z2 if rec[2] == 2 else _I2)
    b.correct(0, lambda rec: _Z2 if rec[3] == 2 else _I2)
    b.checkpoint(
        _state_from_terms((2, 2, 2), [(r, (1, 0, 0)), (p.x2, (0, 1, 0)), (p.x3, (0, 0, 1))]),
        "rebase",
    )
    b.measure(0, (s * np.array([[1.0, p.x0 / r], [0.0, p.x1 / r]]),
                  s * np.array([[1.0, -p.x0 / r], [0.0, p.x1 / r]])))
    b.correct(1, lambda rec: _Z2 if rec[4] == 2 else _I2)
    b.correct(2, lambda rec: _Z2 if rec[4] == 2 else _I2)
    b.correct(0, lambda rec: -_Z2 if rec[4] == 2 else _I2)
    return b.build()


def w_protocol(p: WParams) -> LoccProtocol:
    return w_protocol_staged(p).protocol


def orthogonal_ghz_protocol_staged(p: GhzParams) -> StagedProtocol:
    """Deterministic route to a GHZ-class target whose phi_C is |1> (c0 = 0).

    Dilution produces the embedded two-term GHZ state; each qutrit is then
    reduced to a qubit, the amplitudes are split into (x, y), and phi_A and
    phi_B are injected by binary measurements whose sign flip Charlie
    undoes with a Z.
    """
    if abs(p.c0) > ORTH_FORM_TOL:
        raise WrongClass(
            f"c0 = {p.c0!r} is nonzero; the orthogonal builder needs the canonical form phi_C = |1> "
            "(re-parameterize, or use the non-orthogonal builder when a0*b0*c0 != 0)"
        )
    y_eff = p.y if p.c1 >= 0.0 else -p.y
    if min(abs(p.x), abs(y_eff)) <= DEGENERATE_TOL:
        raise WrongClass("x = 0 or y = 0 gives a product target; use the trivial preparation route")
    s = 1.0 / math.sqrt(2.0)
    b = _Builder()
    _append_dilution(b, (s, s, 0.0))
    b.checkpoint(_state_from_terms((3, 3, 3), [(s, (0, 0, 0)), (s, (1, 1, 1))]), "dilution")
    for party in (0, 1, 2):
        b.measure(party, _TRUNCATE)
    b.checkpoint(ghz2_state(), "truncate")
    b.measure(0, (np.diag([p.x, y_eff]), np.diag([y_eff, p.x])))
    for party in (0, 1, 2):
        b.correct(party, lambda rec: _X2 if rec[4] == 2 else _I2)
    b.checkpoint(_state_from_terms((2, 2, 2), [(p.x, (0, 0, 0)), (y_eff, (1, 1, 1))]), "weights")
    b.measure(0, (s * np.array([[1.0, p.a0], [0.0, p.a1]]),
                  s * np.array([[1.0, -p.a0], [0.0, -p.a1]])))
    b.correct(2, lambda rec: _Z2 if rec[5] == 2 else _I2)
    b.checkpoint(
        _state_from_terms(
            (2, 2, 2),
            [(p.x, (0, 0, 0)), (y_eff * p.a0, (0, 1, 1)), (y_eff * p.a1, (1, 1, 1))],
        ),
        "inject_a",
    )
    b.measure(1, (s * np.array([[1.0, p.b0], [0.0, p.b1]]),
                  s * np.array([[1.0, -p.b0], [0.0, -p.b1]])))
    b.correct(2, lambda rec: _Z2 if rec[6] == 2 else _I2)
    return b.build()


def orthogonal_ghz_protocol(p: GhzParams) -> LoccProtocol:
    return orthogonal_ghz_protocol_staged(p).protocol


def nonorthogonal_ghz_protocol_staged(p: GhzParams) -> StagedProtocol:
    """Deterministic route to a GHZ-class target with a0 b0 c0 != 0.

    Dilution prepares a Schmidt-diagonal three-term state whose weights
    come from the target's amplitudes; Bob's and Charlie's binary
    measurements rewire the basis (Alice absorbing both signs); Alice's
    four-outcome measurement then merges the terms into
    x|00 phi_C> + y|phi_A phi_B 0> up to local signs found by search; a
    final rotation by Charlie produces the target.
    """
    if p.is_orthogonal:
        raise WrongClass("a0*b0*c0 = 0 is the orthogonal sub-case; use orthogonal_ghz_protocol")
    if min(abs(p.c1), abs(p.b1)) <= DEGENERATE_TOL:
        raise WrongClass(
            "c1 = 0 or b1 = 0 collapses a dilution weight; re-parameterize the target "
            "(such states admit an orthogonal canonical form)"
        )
    w = p.x * p.c0 + p.y * p.a0 * p.b0
    v = p.y * p.a1 * p.b0
    z0 = math.hypot(w, v)
    z1 = abs(p.x * p.c1)
    z2 = abs(p.y * p.b1)
    if z0 <= DEGENERATE_TOL:
        raise WrongClass("degenerate parameters: the merged |000> weight vanishes")
    total = z0 * z0 + z1 * z1 + z2 * z2
    if abs(total - 1.0) > NORM_TOL:
        # guaranteed by the state normalization identity; never renormalize silently
        raise InvalidParams(f"dilution weights square-sum to {total!r}; parameters are inconsistent")
    s = 1.0 / math.sqrt(2.0)
    b = _Builder()
    _append_dilution(b, (z0, z1, z2))
    b.checkpoint(
        _state_from_terms((3, 3, 3), [(z0, (0, 0, 0)), (z1, (1, 1, 1)), (z2, (2, 2, 2))]),
        "dilution",
    )
    b.measure(1, (s * np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
                  s * np.array([[1.0, -1.0, 0.0], [0.0, 0.0, 1.0]])))
    b.measure(2, (s * np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
                  s * np.array([[1.0, 0.0, -1.0], [0.0, 1.0, 0.0]])))
    b.correct(
        0,
        lambda rec: np.diag([1.0, 1.0 if rec[1] == 1 else -1.0, 1.0 if rec[2] == 1 else -1.0]),
    )
    rewired = _state_from_terms((3, 2, 2), [(z0, (0, 0, 0)), (z1, (1, 0, 1)), (z2, (2, 1, 0))])
    b.checkpoint(rewired, "rewire")
    sigma1 = 1.0 if p.x * p.c1 > 0 else -1.0
    sigma2 = 1.0 if p.y * p.b1 > 0 else -1.0
    u = np.array([w, v]) / z0
    kraus4 = []
    for eps, delta in ((1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)):
        m = np.zeros((2, 3))
        m[:, 0] = u
        m[0, 1] = eps * sigma1
        m[:, 2] = delta * sigma2 * p.phi_a
        kraus4.append(m / 2.0)
    b.measure(0, tuple(kraus4))
    merged = _state_from_terms(
        (2, 2, 2),
        [
            (p.x * p.c0, (0, 0, 0)),
            (p.x * p.c1, (0, 0, 1)),
            (p.y * p.a0 * p.b0, (0, 0, 0)),
            (p.y * p.a0 * p.b1, (0, 1, 0)),
            (p.y * p.a1 * p.b0, (1, 0, 0)),
            (p.y * p.a1 * p.b1, (1, 1, 0)),
        ],
    )
    corrections = _search_sign_corrections(rewired, kraus4, merged)
    b.correct(0, lambda rec: corrections[rec[3] - 1][0])
    b.correct(1, lambda rec: corrections[rec[3] - 1][1])
    b.correct(2, lambda rec: corrections[rec[3] - 1][2])
    b.checkpoint(merged, "merge")
    rotate_c = np.array([[p.c0, p.c1], [p.c1, -p.c0]])
    b.correct(2, lambda rec: rotate_c)
    return b.build()


def nonorthogonal_ghz_protocol(p: GhzParams) -> LoccProtocol:
    return nonorthogonal_ghz_protocol_staged(p).protocol


def _search_sign_corrections(source: PureState, kraus, target: PureState):
    """Per-outcome local corrections from the group {I, Z}x{I, Z}x{I, Z} x (+-1).

    For each Kraus branch of ``source``, finds the sign pattern whose
    application lands exactly on ``target``; the global sign rides on
    Alice's operator.  Raises :class:`CorrectionNotFound` when no pattern
    works, which flags a mistranscribed measurement.
    """
    z_axis = (np.ones(2), np.array([1.0, -1.0]))
    out = []
    for m in kraus:
        branch = apply_local(source, LocalOperator(0, m)).normalized()
        found = None
        for ea, eb, ec in itertools.product((0, 1), repeat=3):
            mask = np.einsum("i,j,k->ijk", z_axis[ea], z_axis[eb], z_axis[ec]).ravel()
            overlap = np.vdot(target.amps, branch.amps * mask)
            if abs(overlap) >= 1.0 - SIGN_SEARCH_TOL:
                sign = 1.0 if overlap.real > 0 else -1.0
                found = (
                    sign * (_Z2 if ea else _I2),
                    _Z2 if eb else _I2,
                    _Z2 if ec else _I2,
                )
                break
        if found is None:
            raise CorrectionNotFound(
                "no diagonal sign correction matches a merge branch to its intended state"
            )
        out.append(found)
    return out


def _factor_out(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rank-1 split of a (d, k) coefficient matrix into (d-factor, k-remainder)."""
    u_mat, svals, vh = np.linalg.svd(mat, full_matrices=False)
    return u_mat[:, 0], svals[0] * vh[0, :]


def _rotation_from_zero(chi: np.ndarray) -> np.ndarray:
    """Unitary sending |0> to the qubit state ``chi``."""
    return np.array([[chi[0], -np.conj(chi[1])], [chi[1], np.conj(chi[0])]])


def _fourier_discard_kraus() -> tuple[np.ndarray, ...]:
    """Complete 3-outcome set collapsing a qutrit onto |0> in a qubit space."""
    omega = np.exp(2j * np.pi / 3.0)
    ops = []
    for j in range(3):
        m = np.zeros((2, 3), dtype=complex)
        m[0, :] = np.array([1.0, omega ** (-j), omega ** (-2 * j)]) / np.sqrt(3.0)
        ops.append(m)
    return tuple(ops)


def trivial_preparation_staged(target: PureState) -> StagedProtocol:
    """Measure-and-discard preparation of a product or biseparable three-qubit target."""
    if target.dims != (2, 2, 2):
        raise ValueError(f"target must be a three-qubit state, got dims {target.dims}")
    cls = slocc_class(target)
    tensor = target.tensor
    b = _Builder()
    if cls is SloccClass.PRODUCT_FULL:
        chi_a, rest = _factor_out(tensor.reshape(2, 4))
        chi_b, chi_c = _factor_out(rest.reshape(2, 2))
        _append_dilution(b, (1.0, 0.0, 0.0))
        for party in (0, 1, 2):
            b.measure(party, _TRUNCATE)
        for party, chi in ((0, chi_a), (1, chi_b), (2, chi_c)):
            rot = _rotation_from_zero(chi)
            b.correct(party, lambda rec, rot=rot: rot)
    elif cls in (SloccClass.BISEPARABLE_A, SloccClass.BISEPARABLE_B, SloccClass.BISEPARABLE_C):
        pure_party = {SloccClass.BISEPARABLE_A: 0, SloccClass.BISEPARABLE_B: 1, SloccClass.BISEPARABLE_C: 2}[cls]
        pair_parties = tuple(q for q in range(3) if q != pure_party)
        chi, pair = _factor_out(
            tensor.transpose((pure_party,) + pair_parties).reshape(2, 4)
        )
        u_mat, svals, vh = np.linalg.svd(pair.reshape(2, 2))
        _append_dilution(b, (float(svals[0]), float(svals[1]), 0.0))
        # the pure party measures in a Fourier basis and drops out; its
        # outcome phase is undone on the first entangled party
        b.measure(pure_party, _fourier_discard_kraus())
        omega = np.exp(2j * np.pi / 3.0)
        b.correct(pair_parties[0], lambda rec: np.diag([1.0, omega ** (rec[1] - 1), 1.0]))
        for party in pair_parties:
            b.measure(party, _TRUNCATE)
        b.correct(pair_parties[0], lambda rec: u_mat)
        b.correct(pair_parties[1], lambda rec: vh.T)
        rot = _rotation_from_zero(chi)
        b.correct(pure_party, lambda rec: rot)
    else:
        raise ParamMismatch(
            f"target is genuinely entangled ({cls.value}); supply WParams or GhzParams"
        )
    b.checkpoint(target, "prepare")
    return b.build()


def trivial_preparation_protocol(target: PureState) -> LoccProtocol:
    return trivial_preparation_staged(target).protocol


def ghz3_to_any_staged(target: PureState, params: WParams | GhzParams | None = None) -> StagedProtocol:
    """Dispatch to the route matching the target's class.

    Genuinely entangled targets must come with their canonical parameters;
    the built protocol is checked against the target amplitudes (raising
    :class:`ParamMismatch` on disagreement beyond fidelity 1 - 1e-8).
    Product and biseparable targets take the measure-and-discard route.
    """
    if target.dims != (2, 2, 2):
        raise ValueError(f"target must be a three-qubit state, got dims {target.dims}")
    if params is None:
        return trivial_preparation_staged(target)
    if isinstance(params, WParams):
        built = make_w_state(params)
    elif isinstance(params, GhzParams):
        built = make_ghz_state(params)
    else:
        raise TypeError(f"params must be WParams or GhzParams, got {type(params).__name__}")
    fid = fidelity_up_to_phase(built, target)
    if fid < 1.0 - PARAM_MATCH_TOL:
        raise ParamMismatch(
            f"parameters rebuild the target only to fidelity {fid!r} (< 1 - {PARAM_MATCH_TOL})"
        )
    if isinstance(params, WParams):
        return w_protocol_staged(params)
    if params.is_orthogonal:
        return orthogonal_ghz_protocol_staged(params)
    return nonorthogonal_ghz_protocol_staged(params)


def ghz3_to_any(target: PureState, params: WParams | GhzParams | None = None) -> LoccProtocol:
    return ghz3_to_any_staged(target, params).protocol
