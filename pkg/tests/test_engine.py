import numpy as np
import pytest

from locc_forge.engine import (
    CorrectStep,
    InvalidMeasurement,
    LoccProtocol,
    MeasureStep,
    Measurement,
    ProtocolIncomplete,
    measure,
    protocol_from_dict,
    protocol_from_json,
    protocol_to_dict,
    protocol_to_json,
    run,
    verify_checkpoints,
    verify_deterministic,
)
from locc_forge.ghz3 import schmidt_dilution_protocol, schmidt_dilution_staged
from locc_forge.states import (
    Bipartition,
    PureState,
    basis_state,
    ghz2_state,
    ghz3_state,
    random_state,
    random_unitary,
    schmidt_vector,
)

I2 = np.eye(2)
Z = np.diag([1.0, -1.0])
S2 = 1.0 / np.sqrt(2.0)


def three_term_state(z0, z1, z2) -> PureState:
    amps = np.zeros(27, dtype=complex)
    amps[[0, 13, 26]] = (z0, z1, z2)
    return PureState((3, 3, 3), amps)


class TestMeasurement:
    def test_completeness_enforced_at_construction(self):
        with pytest.raises(InvalidMeasurement, match="completeness"):
            Measurement(0, (0.9 * I2,))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(InvalidMeasurement, match="share a shape"):
            Measurement(0, (np.eye(2), np.zeros((3, 2))))

    def test_random_unitary_block_sets_pass(self, rng):
        for _ in range(50):
            d = int(rng.integers(2, 4))
            u = random_unitary(2 * d, rng)
            m = Measurement(0, (u[:d, :d], u[d:, :d]))
            total = sum(k.conj().T @ k for k in m.kraus)
            assert np.max(np.abs(total - np.eye(d))) < 1e-10


class TestMeasure:
    def test_identity_single_branch(self, rng):
        state = random_state((2, 2), rng)
        branches = measure(state, Measurement(0, (I2,)))
        assert len(branches) == 1
        assert branches[0].outcomes == (1,)
        assert abs(branches[0].probability - 1.0) < 1e-12
        np.testing.assert_allclose(branches[0].state.amps, state.amps, atol=1e-12)

    def test_three_outcome_diagonal_set_uniform(self):
        z = (0.8, 0.36, 0.48)
        m1 = np.diag(z)
        m2 = np.zeros((3, 3))
        m2[0, 1], m2[1, 2], m2[2, 0] = z
        m3 = np.zeros((3, 3))
        m3[0, 2], m3[1, 0], m3[2, 1] = z
        branches = measure(ghz3_state(), Measurement(0, (m1, m2, m3)))
        assert len(branches) == 3
        for b in branches:
            assert abs(b.probability - 1.0 / 3.0) < 1e-12

    def test_amplitude_split_on_two_term_state(self):
        x, y = 0.8, 0.6
        branches = measure(ghz2_state(), Measurement(0, (np.diag([x, y]), np.diag([y, x]))))
        assert len(branches) == 2
        for b in branches:
            assert abs(b.probability - 0.5) < 1e-12
        first = np.zeros(8, dtype=complex)
        first[0], first[7] = x, y
        np.testing.assert_allclose(branches[0].state.amps, first, atol=1e-12)
        second = np.zeros(8, dtype=complex)
        second[0], second[7] = y, x
        np.testing.assert_allclose(branches[1].state.amps, second, atol=1e-12)

    def test_zero_probability_branch_dropped(self):
        proj0 = np.array([[1.0, 0.0], [0.0, 0.0]])
        proj1 = np.array([[0.0, 0.0], [0.0, 1.0]])
        branches = measure(basis_state((2,), (0,)), Measurement(0, (proj0, proj1)))
        assert [b.outcomes for b in branches] == [(1,)]


class TestRun:
    def test_empty_protocol(self, rng):
        state = random_state((2, 2), rng)
        branches = run(LoccProtocol(), state)
        assert len(branches) == 1 and branches[0].probability == 1.0

    def test_dilution_protocol_all_branches_equal(self):
        z = (0.8, 0.36, 0.48)
        branches = run(schmidt_dilution_protocol(*z), ghz3_state())
        expected = three_term_state(*z)
        assert len(branches) == 3
        for b in branches:
            assert abs(b.probability - 1.0 / 3.0) < 1e-12
            np.testing.assert_allclose(b.state.amps, expected.amps, atol=1e-12)

    def test_ring_of_binary_measurements(self):
        # three two-outcome measurements move the three diagonal terms onto
        # one-excitation kets; Z corrections routed around the ring make all
        # eight branches identical
        x0, x1, x2, x3 = 0.5, 0.5, 0.5, 0.5
        r = np.hypot(x0, x1)
        steps = (
            MeasureStep(Measurement(0, (S2 * np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 0.0]]),
                                        S2 * np.array([[0.0, -1.0, 1.0], [1.0, 0.0, 0.0]])))),
            MeasureStep(Measurement(1, (S2 * np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
                                        S2 * np.array([[1.0, 0.0, -1.0], [0.0, 1.0, 0.0]])))),
            MeasureStep(Measurement(2, (S2 * np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
                                        S2 * np.array([[-1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])))),
            CorrectStep(1, {(a, b, c): Z if a == 2 else I2 for a in (1, 2) for b in (1, 2) for c in (1, 2)}),
            CorrectStep(2, {(a, b, c): Z if b == 2 else I2 for a in (1, 2) for b in (1, 2) for c in (1, 2)}),
            CorrectStep(0, {(a, b, c): Z if c == 2 else I2 for a in (1, 2) for b in (1, 2) for c in (1, 2)}),
        )
        branches = run(LoccProtocol(steps), three_term_state(r, x2, x3))
        expected = np.zeros(8, dtype=complex)
        expected[4], expected[2], expected[1] = r, x2, x3
        assert len(branches) == 8
        for b in branches:
            assert abs(b.probability - 1.0 / 8.0) < 1e-12
            assert abs(abs(np.vdot(b.state.amps, expected)) - 1.0) < 1e-12

    def test_deterministic_branch_order(self):
        protocol = schmidt_dilution_protocol(0.6, 0.8, 0.0)
        first = run(protocol, ghz3_state())
        second = run(protocol, ghz3_state())
        assert [b.outcomes for b in first] == [b.outcomes for b in second]
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a.state.amps, b.state.amps)

    def test_probabilities_sum_to_one(self, rng):
        for _ in range(30):
            u = random_unitary(6, rng)
            m = Measurement(1, (u[:3, :3], u[3:, :3]))
            branches = run(LoccProtocol((MeasureStep(m),)), random_state((2, 3), rng))
            assert abs(sum(b.probability for b in branches) - 1.0) < 1e-9

    def test_missing_correction_entry(self):
        steps = (
            MeasureStep(Measurement(0, (np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))),
            CorrectStep(0, {(1,): I2}),
        )
        plus = PureState((2,), np.array([1.0, 1.0]) / np.sqrt(2.0))
        with pytest.raises(ProtocolIncomplete, match="record"):
            run(LoccProtocol(steps), plus)

    def test_correction_must_be_unitary(self):
        with pytest.raises(ValueError, match="unitary"):
            CorrectStep(0, {(): np.diag([1.0, 0.5])})

    def test_unitary_only_protocol_preserves_schmidt_vectors(self, rng):
        state = random_state((2, 3, 2), rng)
        steps = tuple(
            CorrectStep(p, {(): random_unitary(state.dims[p], rng)}) for p in range(3)
        )
        branches = run(LoccProtocol(steps), state)
        assert len(branches) == 1
        for p in range(3):
            cut = Bipartition.of({p}, 3)
            np.testing.assert_allclose(
                schmidt_vector(state, cut).entries,
                schmidt_vector(branches[0].state, cut).entries,
                atol=1e-9,
            )


class TestVerify:
    def test_identity_protocol(self, rng):
        state = random_state((2, 2), rng)
        rep = verify_deterministic(LoccProtocol(), state, state)
        assert rep.success and abs(rep.min_fidelity - 1.0) < 1e-12

    def test_dilution_protocol_verifies(self):
        z = (0.6, 0.8, 0.0)
        rep = verify_deterministic(schmidt_dilution_protocol(*z), ghz3_state(), three_term_state(*z))
        assert rep.success
        assert abs(rep.prob_sum - 1.0) < 1e-9

    def test_wrong_target_fails(self):
        # collapse to |000> but ask for the two-term state: fidelity 1/sqrt(2)
        rep = verify_deterministic(
            schmidt_dilution_protocol(1.0, 0.0, 0.0),
            ghz3_state(),
            three_term_state(S2, S2, 0.0),
        )
        assert not rep.success
        assert abs(rep.min_fidelity - S2) < 1e-12

    def test_checkpoints(self):
        staged = schmidt_dilution_staged(0.6, 0.8, 0.0)
        reports = verify_checkpoints(staged.protocol, ghz3_state(), staged.checkpoints)
        assert [r.ok for r in reports] == [True]
        assert reports[0].label == "dilution"


class TestSerialization:
    def test_round_trip_preserves_semantics(self):
        protocol = schmidt_dilution_protocol(0.8, 0.36, 0.48)
        payload = protocol_to_dict(protocol)
        again = protocol_from_dict(payload)
        assert protocol_to_dict(again) == payload
        ours = run(protocol, ghz3_state())
        theirs = run(again, ghz3_state())
        for a, b in zip(ours, theirs):
            assert a.outcomes == b.outcomes
            np.testing.assert_array_equal(a.state.amps, b.state.amps)

    def test_json_text_round_trip(self):
        protocol = schmidt_dilution_protocol(0.6, 0.8, 0.0)
        again = protocol_from_json(protocol_to_json(protocol))
        assert protocol_to_dict(again) == protocol_to_dict(protocol)

    def test_outcome_record_keys(self):
        payload = protocol_to_dict(schmidt_dilution_protocol(1.0, 0.0, 0.0))
        correct = payload["steps"][1]
        assert set(correct["table"]) == {"1", "2", "3"}

    def test_unknown_step_type_rejected(self):
        with pytest.raises(ValueError, match="unknown step"):
            protocol_from_dict({"steps": [{"type": "teleport", "party": 0}]})
