import numpy as np
import pytest

from isinglearn.errors import CapacityError
from isinglearn.model import (
    Dataset,
    EdgeVector,
    IsingModel,
    all_states,
    canonical_pairs,
    conditional_prob_plus,
    enumerate_distribution,
    joint_log_prob,
    model_from_json,
    model_to_json,
    pack_edges,
    unpack_edges,
)
from _helpers import random_model


def two_node(theta12):
    return IsingModel(p=2, theta=np.array([[0.0, theta12], [theta12, 0.0]]))


class TestTypes:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            IsingModel(p=2, theta=np.array([[0.0, 1.0], [0.5, 0.0]]))

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError, match="diagonal"):
            IsingModel(p=2, theta=np.array([[1.0, 0.0], [0.0, 0.0]]))

    def test_rejects_p_below_two(self):
        with pytest.raises(ValueError, match="p >= 2"):
            IsingModel(p=1, theta=np.zeros((1, 1)))

    def test_dataset_rejects_non_pm1(self):
        with pytest.raises(ValueError, match="-1 or \\+1"):
            Dataset(n=1, p=2, x=np.array([[1.0, 0.5]]))

    def test_edge_vector_length(self):
        with pytest.raises(ValueError, match="expected 3"):
            EdgeVector(p=3, values=np.zeros(2))


class TestPackUnpack:
    def test_p3_canonical_order(self):
        theta = np.array([[0.0, 0.5, 0.0], [0.5, 0.0, -0.5], [0.0, -0.5, 0.0]])
        ev = pack_edges(IsingModel(p=3, theta=theta))
        np.testing.assert_array_equal(ev.values, [0.5, 0.0, -0.5])

    def test_p2_zero(self):
        ev = pack_edges(two_node(0.0))
        np.testing.assert_array_equal(ev.values, [0.0])

    def test_round_trip_random(self, rng):
        for _ in range(20):
            p = int(rng.integers(2, 9))
            m = random_model(p, rng)
            assert unpack_edges(pack_edges(m)) == m

    def test_canonical_pair_count(self):
        for p in (2, 3, 5, 8):
            assert len(canonical_pairs(p)) == p * (p - 1) // 2


class TestConditional:
    def test_independence(self):
        m = two_node(0.0)
        for x2 in (-1.0, 1.0):
            assert conditional_prob_plus(m, 0, np.array([0.0, x2])) == 0.5

    def test_logistic_one(self):
        # logistic(2 * 0.5 * (+1)) = 1/(1+e^-1)
        m = two_node(0.5)
        got = conditional_prob_plus(m, 0, np.array([1.0, 1.0]))
        assert got == pytest.approx(0.7310585786300049, abs=1e-15)

    def test_cancellation(self):
        theta = np.array([[0.0, 0.5, -0.5], [0.5, 0.0, 0.0], [-0.5, 0.0, 0.0]])
        m = IsingModel(p=3, theta=theta)
        assert conditional_prob_plus(m, 0, np.array([0.0, 1.0, 1.0])) == pytest.approx(0.5)

    def test_out_of_range_node(self):
        with pytest.raises(IndexError):
            conditional_prob_plus(two_node(0.5), 2, np.array([1.0, 1.0]))

    def test_matches_enumeration(self, rng):
        # conditional from the joint: P(X_r=+1 | rest) by direct summation
        for _ in range(10):
            p = int(rng.integers(2, 8))
            m = random_model(p, rng)
            dist = enumerate_distribution(m)
            states = all_states(p)
            x = states[int(rng.integers(0, 2 ** p))].copy()
            for r in range(p):
                x_plus = x.copy()
                x_plus[r] = 1.0
                x_minus = x.copy()
                x_minus[r] = -1.0
                k_plus = int(np.sum((x_plus > 0) * (1 << np.arange(p))))
                k_minus = int(np.sum((x_minus > 0) * (1 << np.arange(p))))
                oracle = dist.probs[k_plus] / (dist.probs[k_plus] + dist.probs[k_minus])
                got = conditional_prob_plus(m, r, x)
                assert got == pytest.approx(oracle, abs=1e-10)


class TestEnumeration:
    def test_p2_values(self):
        # brute force: Z = 2e^0.5 + 2e^-0.5, P(+1,+1) = e^0.5/Z
        dist = enumerate_distribution(two_node(0.5))
        Z = 2 * np.exp(0.5) + 2 * np.exp(-0.5)
        assert dist.probs[3] == pytest.approx(np.exp(0.5) / Z, abs=1e-14)
        assert dist.probs[3] == pytest.approx(0.3655292893, abs=1e-9)
        assert dist.probs[0] == pytest.approx(np.exp(0.5) / Z, abs=1e-14)
        assert dist.probs[1] == pytest.approx(np.exp(-0.5) / Z, abs=1e-14)
        assert dist.logZ == pytest.approx(np.log(Z), abs=1e-14)

    def test_sums_to_one_and_positive(self, rng):
        for _ in range(10):
            m = random_model(int(rng.integers(2, 9)), rng)
            dist = enumerate_distribution(m)
            assert np.sum(dist.probs) == pytest.approx(1.0, abs=1e-12)
            assert np.all(dist.probs > 0)

    def test_sign_flip_symmetry(self, rng):
        for _ in range(5):
            p = int(rng.integers(2, 8))
            dist = enumerate_distribution(random_model(p, rng))
            # state k and its bitwise complement are sign flips of each other
            flipped = (2 ** p - 1) - np.arange(2 ** p)
            np.testing.assert_allclose(dist.probs, dist.probs[flipped], atol=1e-14)

    def test_zero_couplings_uniform(self):
        dist = enumerate_distribution(IsingModel(p=4, theta=np.zeros((4, 4))))
        np.testing.assert_allclose(dist.probs, 1.0 / 16, atol=1e-15)

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            enumerate_distribution(IsingModel(p=21, theta=np.zeros((21, 21))))


class TestJointLogProb:
    def test_p2_value(self):
        m = two_node(0.5)
        dist = enumerate_distribution(m)
        got = joint_log_prob(m, np.array([1.0, 1.0]), dist.logZ)
        Z = 2 * np.exp(0.5) + 2 * np.exp(-0.5)
        assert got == pytest.approx(0.5 - np.log(Z), abs=1e-14)

    def test_quadratic_form_identity(self, rng):
        for _ in range(10):
            p = int(rng.integers(2, 8))
            m = random_model(p, rng)
            x = rng.choice([-1.0, 1.0], size=p)
            pairwise = sum(m.theta[i, j] * x[i] * x[j] for i, j in canonical_pairs(p))
            assert 0.5 * x @ m.theta @ x == pytest.approx(pairwise, abs=1e-12)

    def test_sign_flip(self, rng):
        m = random_model(4, rng)
        dist = enumerate_distribution(m)
        x = np.array([1.0, -1.0, 1.0, 1.0])
        assert joint_log_prob(m, x, dist.logZ) == pytest.approx(
            joint_log_prob(m, -x, dist.logZ), abs=1e-14
        )

    def test_exponentials_sum_to_one(self, rng):
        m = random_model(5, rng)
        dist = enumerate_distribution(m)
        states = all_states(5)
        total = sum(np.exp(joint_log_prob(m, s, dist.logZ)) for s in states)
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            joint_log_prob(two_node(0.5), np.array([1.0, 1.0, 1.0]), 0.0)


class TestJson:
    def test_round_trip_bit_exact(self, rng):
        for _ in range(10):
            m = random_model(int(rng.integers(2, 9)), rng)
            back = model_from_json(model_to_json(m))
            assert back.p == m.p
            assert np.array_equal(back.theta, m.theta)

    def test_absent_pairs_zero(self):
        m = model_from_json('{"p": 3, "edges": [[1, 2, 0.5]]}')
        assert m.theta[0, 1] == 0.5
        assert m.theta[0, 2] == 0.0
        assert m.theta[1, 2] == 0.0

    def test_extra_keys_ignored(self):
        m = model_from_json('{"p": 2, "edges": [[1, 2, -0.25]], "method": "GL"}')
        assert m.theta[0, 1] == -0.25
