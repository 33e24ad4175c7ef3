import numpy as np
import pytest

from conftest import perfect_pair_instance, random_closed_mp
from qboost.learners import LearnerSet, Stump, build_matrices
from qboost.qsim import (SimulationCapError, closed_form_distribution, quantum_score,
                         run_training_circuit, sample_circuit, simulate_circuit,
                         simulate_classification)
from qboost.rng import SplitMix64


class TestClosedForm:
    def test_single_learner(self):
        np.testing.assert_array_equal(closed_form_distribution([1.0]).probs, [1.0])

    def test_symmetric(self):
        np.testing.assert_allclose(closed_form_distribution([0.5, 0.5]).probs, [0.5, 0.5])

    def test_three_quarters(self):
        d = closed_form_distribution([0.75, 0.25])
        np.testing.assert_allclose(d.probs, [0.8535533905932737, 0.14644660940672624],
                                   atol=1e-12)
        assert d.chi == pytest.approx(1.0, abs=1e-15)

    def test_all_zero(self):
        with pytest.raises(ValueError):
            closed_form_distribution([0.0, 0.0])


class TestSimulateCircuit:
    def test_perfect_pair(self):
        dist, accept = simulate_circuit([[1, 1], [0, 0]])
        np.testing.assert_allclose(dist.probs, [1.0, 0.0], atol=1e-15)
        assert accept == pytest.approx(0.5, abs=1e-15)

    def test_balanced_is_uniform(self):
        Mp = np.array([[1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 0, 0], [0, 0, 1, 1]])
        dist, _ = simulate_circuit(Mp)
        np.testing.assert_allclose(dist.probs, 0.25, atol=1e-12)

    def test_random_instances_match_closed_form(self, np_rng):
        for _ in range(100):
            W = 2 * int(np_rng.integers(1, 5))
            N = int(np_rng.integers(1, 17))
            Mp = random_closed_mp(np_rng, W, N)
            dist, accept = simulate_circuit(Mp)
            oracle = closed_form_distribution(Mp.mean(axis=1))
            np.testing.assert_allclose(dist.probs, oracle.probs, atol=1e-9, rtol=0)
            assert accept == pytest.approx(0.5, abs=1e-9)
            assert dist.chi == pytest.approx(oracle.chi, abs=1e-9)

    def test_acceptance_without_closure_is_chi_over_w(self, np_rng):
        Mp = np_rng.integers(0, 2, size=(5, 7))
        Mp[0] = 1
        dist, accept = simulate_circuit(Mp)
        assert accept == pytest.approx(dist.chi / 5, abs=1e-12)

    def test_g_register_uncomputed(self, np_rng):
        amp = run_training_circuit(random_closed_mp(np_rng, 4, 9))
        assert not np.any(amp[:, 1, :])
        assert np.sum(np.abs(amp) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_caps(self):
        with pytest.raises(SimulationCapError):
            simulate_circuit(np.ones((4, 3)), max_learners=2)
        with pytest.raises(SimulationCapError):
            simulate_circuit(np.ones((2, 30)), max_samples=20)

    def test_soft_matrix_rejected(self):
        with pytest.raises(ValueError, match="hard"):
            simulate_circuit([[0.5, 1.0], [0.5, 0.0]])


class TestMeasurementOrder:
    def test_order_does_not_matter(self, np_rng):
        for _ in range(100):
            W = 2 * int(np_rng.integers(1, 5))
            Mp = random_closed_mp(np_rng, W, int(np_rng.integers(1, 17)))
            votes = np_rng.integers(0, 2, size=W)
            early = simulate_classification(Mp, votes, True)
            late = simulate_classification(Mp, votes, False)
            np.testing.assert_allclose(early, late, atol=1e-9, rtol=0)
            # and both equal the classical vote under the closed-form law
            p1 = closed_form_distribution(Mp.mean(axis=1)).probs @ votes
            assert late[1] == pytest.approx(p1, abs=1e-9)


class TestQuantumScore:
    def _pair(self):
        s = Stump(0, 0.5, 1)
        return LearnerSet([s, s.negate()], True, 1)

    def test_three_quarters_pair(self):
        assert quantum_score([1.0], self._pair(), [0.75, 0.25]) == pytest.approx(
            0.8535533905932737, abs=1e-12)

    def test_unanimous(self):
        ls = LearnerSet([Stump(0, -1.0, 1), Stump(1, -1.0, 1)])
        assert quantum_score([0.0, 0.0], ls, [0.3, 0.9]) == pytest.approx(1.0)

    def test_uniform_accuracy_counts_votes(self):
        ls = LearnerSet([Stump(0, 0.5, 1), Stump(0, 0.5, -1), Stump(0, 2.0, 1), Stump(0, 2.0, -1)],
                        True)
        assert quantum_score([1.0], ls, [0.5] * 4) == pytest.approx(0.5)
        assert quantum_score([3.0], ls, [0.5] * 4) == pytest.approx(0.5)


class TestSampleCircuit:
    def test_shots_follow_distribution(self):
        ds, ls = perfect_pair_instance()
        Mp = build_matrices(ls, ds).Mp
        idx, reps = sample_circuit(Mp, 2000, SplitMix64(1))
        assert not idx.any()
        assert reps.mean() == pytest.approx(2.0, abs=0.15)
