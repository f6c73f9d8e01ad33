import numpy as np
import pytest

from locc_forge.majorization import (
    CumulativeEnvelope,
    InvalidEnvelope,
    SchmidtVector,
    can_transform,
    ensemble_feasible,
    is_common_resource,
    majorizes,
    ocr_envelope,
    ocr_finite,
    sa_family_ocr,
)
from locc_forge.states import Bipartition, PureState, random_state, schmidt_vector


def state_with_schmidt(entries) -> PureState:
    """Bipartite state diag(sqrt(entries)) in matching local dimensions."""
    entries = np.asarray(entries, dtype=float)
    d = entries.size
    amps = np.zeros(d * d, dtype=complex)
    amps[:: d + 1] = np.sqrt(entries)
    return PureState((d, d), amps)


def random_schmidt(rng, d) -> np.ndarray:
    v = rng.dirichlet(np.ones(d))
    return np.sort(v)[::-1]


def doubly_stochastic_mix(rng, x, t=None) -> np.ndarray:
    """sort(D x) for D a convex mix of the flat matrix and a random permutation."""
    x = np.asarray(x, dtype=float)
    if t is None:
        t = rng.uniform()
    mixed = (1.0 - t) * x.sum() / x.size + t * x[rng.permutation(x.size)]
    return np.sort(mixed)[::-1]


class TestMajorizes:
    def test_extreme_points(self):
        assert majorizes([1.0, 0.0], [0.5, 0.5])
        assert not majorizes([0.5, 0.5], [1.0, 0.0])

    def test_reflexive(self):
        v = [0.5, 1.0 / 3.0, 1.0 / 6.0]
        assert majorizes(v, v)

    def test_strict_pair(self):
        # prefix sums 0.6 >= 0.5 and 0.9 >= 0.8
        assert majorizes([0.6, 0.3, 0.1], [0.5, 0.3, 0.2])
        assert not majorizes([0.5, 0.3, 0.2], [0.6, 0.3, 0.1])

    def test_pads_unequal_lengths(self):
        assert majorizes([0.7, 0.3], [0.5, 0.3, 0.2])
        assert not majorizes([0.5, 0.3, 0.2], [0.7, 0.3])

    def test_rejects_non_descending(self):
        with pytest.raises(ValueError, match="descending"):
            majorizes([0.3, 0.7], [0.5, 0.5])

    def test_partial_order_properties(self, rng):
        for _ in range(2000):
            d = int(rng.integers(2, 7))
            x = random_schmidt(rng, d)
            assert majorizes(x, x)
            y = doubly_stochastic_mix(rng, x)
            z = doubly_stochastic_mix(rng, y)
            assert majorizes(x, y) and majorizes(y, z)
            assert majorizes(x, z)  # transitivity along the chain
            if majorizes(y, x):
                np.testing.assert_allclose(x, y, atol=1e-9)  # antisymmetry


class TestCanTransform:
    def test_bell_reaches_any_two_qubit_state(self, rng):
        bell = state_with_schmidt([0.5, 0.5])
        cut = Bipartition.of({0}, 2)
        for _ in range(100):
            target = random_state((2, 2), rng)
            assert can_transform(bell, target, cut)

    def test_self_transform(self, rng):
        state = random_state((3, 3), rng)
        assert can_transform(state, state, Bipartition.of({0}, 2))

    def test_skewed_source_cannot_flatten(self):
        source = state_with_schmidt([0.9, 0.1])
        target = state_with_schmidt([0.5, 0.5])
        assert not can_transform(source, target, Bipartition.of({0}, 2))


class TestOcrFinite:
    def test_singleton_returns_member(self):
        x = [0.5, 0.3, 0.2]
        np.testing.assert_allclose(ocr_finite([x]).entries, x, atol=1e-15)

    def test_two_member_worked_example(self):
        # cumulative minima of the prefix curves: (0.6, 0.9, 1.0)
        y = ocr_finite([[0.7, 0.2, 0.1], [0.6, 0.35, 0.05]])
        np.testing.assert_allclose(y.entries, [0.6, 0.3, 0.1], atol=1e-15)

    def test_family_containing_the_bound_returns_it(self, rng):
        # the flat-tail vector lies in the constrained family and is below
        # every member, so adding it to any sample pins the glb exactly
        d, a = 5, 0.4
        members = [sa_family_ocr(d, a).entries]
        for _ in range(200):
            x1 = rng.uniform(a, 1.0)
            rest = (1.0 - x1) * rng.dirichlet(np.ones(d - 1))
            members.append(np.sort(np.concatenate([[x1], rest]))[::-1])
        np.testing.assert_allclose(ocr_finite(members).entries, sa_family_ocr(d, a).entries, atol=1e-12)

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            ocr_finite([])

    def test_soundness_and_greatestness(self, rng):
        for _ in range(200):
            d = int(rng.integers(2, 9))
            members = [random_schmidt(rng, int(rng.integers(2, d + 1))) for _ in range(rng.integers(1, 7))]
            y = ocr_finite(members)
            for x in members:
                assert majorizes(x, y)
            # witnesses: doubly-stochastic mixes of members, kept when they
            # lower-bound the whole family
            for _ in range(20):
                z = doubly_stochastic_mix(rng, members[rng.integers(len(members))])
                if all(majorizes(x, z) for x in members):
                    assert majorizes(y, z)
                    if majorizes(z, y):
                        np.testing.assert_allclose(z, y.padded(z.size), atol=1e-10)  # uniqueness

    def test_accepts_two_dimensional_array(self, rng):
        rows = np.array([[0.7, 0.2, 0.1], [0.6, 0.35, 0.05]])
        y = ocr_finite(rows)
        np.testing.assert_allclose(y.entries, [0.6, 0.3, 0.1], atol=1e-15)


class TestEnvelope:
    def test_flat_tail_closed_form(self):
        d, a = 4, 0.4
        c = np.cumsum([a] + [(1 - a) / (d - 1)] * (d - 1))
        y = ocr_envelope(CumulativeEnvelope(c))
        np.testing.assert_allclose(y.entries, [0.4, 0.2, 0.2, 0.2], atol=1e-12)

    def test_prefix_sums_of_single_vector(self):
        v = np.array([0.5, 0.3, 0.2])
        y = ocr_envelope(CumulativeEnvelope(np.cumsum(v)))
        np.testing.assert_allclose(y.entries, v, atol=1e-15)

    def test_matches_finite_construction(self):
        y = ocr_envelope(CumulativeEnvelope([0.6, 0.9, 1.0]))
        np.testing.assert_allclose(y.entries, [0.6, 0.3, 0.1], atol=1e-15)

    def test_envelope_of_family_equals_ocr_finite(self, rng):
        for _ in range(100):
            d = int(rng.integers(2, 8))
            members = [random_schmidt(rng, d) for _ in range(rng.integers(1, 6))]
            via_env = ocr_envelope(CumulativeEnvelope.from_family(members))
            direct = ocr_finite(members)
            np.testing.assert_array_equal(via_env.entries, direct.entries)

    def test_increasing_increments_rejected(self):
        with pytest.raises(InvalidEnvelope, match="increments"):
            CumulativeEnvelope([0.2, 0.3, 1.0])  # increments 0.2, 0.1, 0.7

    def test_must_end_at_one(self):
        with pytest.raises(InvalidEnvelope, match="end at 1"):
            CumulativeEnvelope([0.5, 0.9])

    def test_must_be_nondecreasing(self):
        with pytest.raises(InvalidEnvelope):
            CumulativeEnvelope([0.8, 0.6, 1.0])


class TestSaFamily:
    def test_bell_point(self):
        np.testing.assert_allclose(sa_family_ocr(2, 0.5).entries, [0.5, 0.5], atol=1e-15)

    def test_mid_value(self):
        np.testing.assert_allclose(sa_family_ocr(3, 0.5).entries, [0.5, 0.25, 0.25], atol=1e-15)

    def test_product_family(self):
        np.testing.assert_allclose(sa_family_ocr(4, 1.0).entries, [1.0, 0.0, 0.0, 0.0], atol=1e-15)

    def test_below_uniform_rejected(self):
        with pytest.raises(ValueError, match="1/d"):
            sa_family_ocr(4, 0.2)

    def test_uniform_boundary(self):
        np.testing.assert_allclose(sa_family_ocr(4, 0.25).entries, [0.25] * 4, atol=1e-15)


class TestEnsembleFeasible:
    def test_glb_source_always_feasible(self, rng):
        for _ in range(200):
            d = int(rng.integers(2, 8))
            members = [random_schmidt(rng, d) for _ in range(rng.integers(1, 6))]
            probs = rng.dirichlet(np.ones(len(members)))
            source = ocr_finite(members)
            assert ensemble_feasible(source, list(zip(members, probs)))

    def test_single_target_matches_majorization(self, rng):
        cut = Bipartition.of({0}, 2)
        for _ in range(300):
            d = int(rng.integers(2, 5))
            src = random_state((d, d), rng)
            tgt = random_state((d, d), rng)
            feasible = ensemble_feasible(schmidt_vector(src, cut), [(schmidt_vector(tgt, cut), 1.0)])
            assert feasible == can_transform(src, tgt, cut)

    def test_infeasible_case(self):
        assert not ensemble_feasible([0.9, 0.1], [([0.5, 0.5], 1.0)])

    def test_bad_probabilities_rejected(self):
        with pytest.raises(ValueError, match="sum"):
            ensemble_feasible([0.5, 0.5], [([1.0, 0.0], 0.4)])


class TestIsCommonResource:
    def test_maximally_entangled_is_always_common(self, rng):
        d = 3
        candidate = state_with_schmidt([1.0 / d] * d)
        targets = [random_state((d, d), rng) for _ in range(50)]
        assert is_common_resource(candidate, targets, Bipartition.of({0}, 2))

    def test_incomparable_targets_have_no_member_resource(self):
        first = state_with_schmidt([0.7, 0.2, 0.1])
        second = state_with_schmidt([0.6, 0.4, 0.0])
        cut = Bipartition.of({0}, 2)
        assert not is_common_resource(first, [first, second], cut)
        assert not is_common_resource(second, [first, second], cut)

    def test_empty_target_list(self):
        assert is_common_resource(state_with_schmidt([0.5, 0.5]), [], Bipartition.of({0}, 2))


class TestSchmidtVectorType:
    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="nonnegative"):
            SchmidtVector([0.9, 0.2, -0.1])

    def test_rejects_wrong_total(self):
        with pytest.raises(ValueError, match="sums"):
            SchmidtVector([0.5, 0.4])

    def test_padded(self):
        v = SchmidtVector([0.7, 0.3])
        np.testing.assert_array_equal(v.padded(4), [0.7, 0.3, 0.0, 0.0])
        with pytest.raises(ValueError):
            v.padded(1)
