import math

import numpy as np
import pytest

import statedisc as sd
from statedisc.errors import (
    BadPriors,
    CountMismatch,
    DimensionMismatch,
    ValidationError,
)

from helpers import (
    ket,
    maximally_mixed,
    plus_state,
    pure,
    random_ensemble,
    random_unitary,
)

# closed form for two equiprobable pure states with overlap amplitude c
HALF_OVERLAP_VALUE = 0.5 * (1.0 + math.sqrt(1.0 - 0.5))  # c = 1/sqrt(2)
HALF_OVERLAP_BK = 1.0 - math.sqrt(0.5)


def overlap_pair(c):
    """Two pure qubit states with real overlap c."""
    a = pure(ket(2, 0))
    b = pure([c, math.sqrt(1.0 - c * c)])
    return a, b


class TestPovmValidation:
    def test_rejects_incomplete(self):
        with pytest.raises(ValidationError):
            sd.Povm((np.eye(2) * 0.5,))

    def test_rejects_non_psd_element(self):
        half = np.eye(2) * 0.5
        bad = np.array([[1.5, 0.0], [0.0, -0.5]])
        with pytest.raises(ValidationError):
            sd.Povm((bad, np.eye(2) - bad, half - half))

    def test_rejects_mixed_dims(self):
        with pytest.raises(DimensionMismatch):
            sd.Povm((np.eye(2), np.eye(3)))


class TestPgm:
    def test_orthogonal_states_give_projectors(self):
        states = [pure(ket(3, i)) for i in range(3)]
        e = sd.uniform_ensemble(states)
        m = sd.pgm(e)
        for proj, rho in zip(m.elements, states):
            assert np.allclose(proj, rho.mat, atol=1e-10)
        rep = sd.success_report(e, m)
        assert np.all(rep.per_state >= 1.0 - 1e-10)

    def test_orthogonal_with_kernel_share(self):
        # two orthogonal states in d=3: the unused dimension is split evenly
        states = [pure(ket(3, 0)), pure(ket(3, 1))]
        e = sd.uniform_ensemble(states)
        m = sd.pgm(e)
        rep = sd.success_report(e, m)
        assert np.all(rep.per_state >= 1.0 - 1e-10)
        assert m.elements[0][2, 2] == pytest.approx(0.5, abs=1e-10)

    def test_single_state(self):
        e = sd.uniform_ensemble([sd.random_density(3, 2, seed=1)])
        m = sd.pgm(e)
        assert np.allclose(m.elements[0], np.eye(3), atol=1e-10)
        assert sd.success_report(e, m).average == pytest.approx(1.0, abs=1e-10)

    def test_two_equiprobable_pure_states_closed_form(self):
        a, b = overlap_pair(1.0 / math.sqrt(2.0))
        e = sd.uniform_ensemble([a, b])
        rep = sd.success_report(e, sd.pgm(e))
        assert rep.average == pytest.approx(HALF_OVERLAP_VALUE, abs=1e-10)
        # cross-check against the independent two-state oracle
        value, _ = sd.helstrom(0.5, a, 0.5, b)
        assert rep.average == pytest.approx(value, abs=1e-10)

    def test_zero_prior_state_keeps_outcome_slot(self):
        states = [pure(ket(2, 0)), pure(ket(2, 1)), plus_state()]
        e = sd.Ensemble(tuple(states), np.array([0.5, 0.5, 0.0]))
        m = sd.pgm(e)
        assert m.n_outcomes == 3
        rep = sd.success_report(e, m)
        assert rep.per_state[0] >= 1.0 - 1e-10
        assert rep.per_state[1] >= 1.0 - 1e-10
        assert rep.average == pytest.approx(1.0, abs=1e-10)

    def test_unitary_covariance(self):
        rng = np.random.default_rng(303)
        for _ in range(10):
            e = random_ensemble(rng, d=3)
            u = random_unitary(3, rng)
            rotated = sd.Ensemble(
                tuple(sd.DensityMatrix(u @ s.mat @ u.conj().T) for s in e.states),
                e.priors,
            )
            m = sd.pgm(e)
            m_rot = sd.pgm(rotated)
            for a, b in zip(m.elements, m_rot.elements):
                assert np.linalg.norm(u @ a @ u.conj().T - b) <= 1e-8
            rep, rep_rot = sd.success_report(e, m), sd.success_report(rotated, m_rot)
            assert rep.average == pytest.approx(rep_rot.average, abs=1e-8)
            assert rep.worst_case == pytest.approx(rep_rot.worst_case, abs=1e-8)


class TestSuccessReport:
    def test_trivial_povm(self):
        e = sd.uniform_ensemble([sd.random_density(2, 2, seed=s) for s in (1, 2, 3)])
        m = sd.Povm(tuple(np.eye(2) / 3 for _ in range(3)))
        rep = sd.success_report(e, m)
        assert np.allclose(rep.per_state, 1.0 / 3.0, atol=1e-12)

    def test_pair_report_values(self):
        a, b = overlap_pair(1.0 / math.sqrt(2.0))
        e = sd.uniform_ensemble([a, b])
        rep = sd.success_report(e, sd.pgm(e))
        assert rep.average == pytest.approx(HALF_OVERLAP_VALUE, abs=1e-9)
        assert rep.bk_bound == pytest.approx(HALF_OVERLAP_BK, abs=1e-12)
        assert rep.average >= rep.bk_bound

    def test_worst_below_average(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            e = random_ensemble(rng)
            rep = sd.success_report(e, sd.pgm(e))
            assert rep.worst_case <= rep.average + 1e-12

    def test_count_mismatch(self):
        e = sd.uniform_ensemble([maximally_mixed(2), maximally_mixed(2)])
        with pytest.raises(CountMismatch):
            sd.success_report(e, sd.Povm((np.eye(2),)))

    def test_dimension_mismatch(self):
        e = sd.uniform_ensemble([maximally_mixed(2), maximally_mixed(2)])
        m = sd.Povm((np.eye(3) * 0.5, np.eye(3) * 0.5))
        with pytest.raises(DimensionMismatch):
            sd.success_report(e, m)


class TestBkLowerBound:
    def test_orthogonal_is_one(self):
        e = sd.uniform_ensemble([pure(ket(3, i)) for i in range(3)])
        assert sd.bk_lower_bound(e) == pytest.approx(1.0, abs=1e-10)

    def test_two_state_arithmetic(self):
        a, b = overlap_pair(1.0 / math.sqrt(2.0))  # F = 1/2
        e = sd.uniform_ensemble([a, b])
        assert sd.bk_lower_bound(e) == pytest.approx(1.0 - math.sqrt(0.5), abs=1e-10)

    def test_copy_scaling_dominates_coarse_form(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            e = random_ensemble(rng, d=2, uniform=True)
            f_max = sd.max_pairwise_fidelity(e)
            for n in (1, 2, 3):
                powered = sd.uniform_ensemble(
                    [sd.tensor_power(s, n) for s in e.states]
                )
                coarse = 1.0 - e.n_states * f_max ** (n / 2.0)
                assert sd.bk_lower_bound(powered) >= coarse - 1e-9

    def test_dominance_on_random_ensembles(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            e = random_ensemble(rng)
            rep = sd.success_report(e, sd.pgm(e))
            assert rep.average >= rep.bk_bound - 1e-9


class TestHelstrom:
    def test_identical_states(self):
        rho = sd.random_density(2, 2, seed=7)
        value, _ = sd.helstrom(0.5, rho, 0.5, rho)
        assert value == pytest.approx(0.5, abs=1e-12)

    def test_orthogonal_pure(self):
        value, m = sd.helstrom(0.5, pure(ket(2, 0)), 0.5, pure(ket(2, 1)))
        assert value == pytest.approx(1.0, abs=1e-12)
        e = sd.uniform_ensemble([pure(ket(2, 0)), pure(ket(2, 1))])
        assert sd.success_report(e, m).average == pytest.approx(1.0, abs=1e-10)

    def test_half_overlap_value(self):
        a, b = overlap_pair(1.0 / math.sqrt(2.0))
        value, m = sd.helstrom(0.5, a, 0.5, b)
        assert value == pytest.approx(HALF_OVERLAP_VALUE, abs=1e-12)
        e = sd.uniform_ensemble([a, b])
        assert sd.success_report(e, m).average == pytest.approx(value, abs=1e-10)

    def test_povm_achieves_value_generally(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            p0 = float(rng.uniform(0.1, 0.9))
            a = sd.random_density(3, int(rng.integers(1, 4)), int(rng.integers(1e6)))
            b = sd.random_density(3, int(rng.integers(1, 4)), int(rng.integers(1e6)))
            value, m = sd.helstrom(p0, a, 1.0 - p0, b)
            e = sd.Ensemble((a, b), np.array([p0, 1.0 - p0]))
            assert sd.success_report(e, m).average == pytest.approx(value, abs=1e-10)

    def test_bad_priors(self):
        rho = maximally_mixed(2)
        with pytest.raises(BadPriors):
            sd.helstrom(0.7, rho, 0.7, rho)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            sd.helstrom(0.5, maximally_mixed(2), 0.5, maximally_mixed(3))

    def test_factor_two_bound_on_random_pairs(self):
        rng = np.random.default_rng(43)
        for _ in range(200):
            d = int(rng.integers(2, 4))
            p0 = float(rng.uniform(0.05, 0.95))
            a = sd.random_density(d, int(rng.integers(1, d + 1)), int(rng.integers(1e6)))
            b = sd.random_density(d, int(rng.integers(1, d + 1)), int(rng.integers(1e6)))
            e = sd.Ensemble((a, b), np.array([p0, 1.0 - p0]))
            avg_pgm = sd.success_report(e, sd.pgm(e)).average
            optimal, _ = sd.helstrom(p0, a, 1.0 - p0, b)
            assert 1.0 - avg_pgm <= 2.0 * (1.0 - optimal) + 1e-9
