"""Convex-roof oracle against the closed-form two-qubit concurrence."""

import numpy as np
import pytest

from qmonogamy import measures, states


def rank2_density(rng):
    v1 = states.haar_state_vector(4, rng)
    v2 = states.haar_state_vector(4, rng)
    w = rng.random()
    return w * np.outer(v1, v1.conj()) + (1 - w) * np.outer(v2, v2.conj())


def eigendecomposition_average(rho):
    w, v = np.linalg.eigh(rho)
    total = 0.0
    for i in range(w.size):
        if w[i] > 1e-12:
            vec = v[:, i] / np.linalg.norm(v[:, i])
            total += w[i] * measures.concurrence_pure(states.PureState(2, vec), {0})
    return total


def test_pure_input_matches_pure_formula():
    for seed in range(20):
        st = states.random_pure_state(2, seed)
        est = measures.concurrence_roof_oracle(states.density(st), restarts=10, seed=seed)
        assert abs(est - measures.concurrence_pure(st, {0})) < 1e-6


def test_rank2_matches_closed_form():
    rng = np.random.default_rng(99)
    for i in range(30):
        rho = rank2_density(rng)
        closed = measures.concurrence_two_qubit(rho)
        est = measures.concurrence_roof_oracle(rho, restarts=60, seed=1000 + i)
        assert est >= closed - 1e-6
        assert est <= eigendecomposition_average(rho) + 1e-12
        assert abs(est - closed) < 2e-3


def test_werner_mixture():
    v = np.zeros(4)
    v[0] = v[3] = 1 / np.sqrt(2)
    rho = 0.5 * np.outer(v, v.conj()) + 0.5 * np.eye(4) / 4.0
    closed = measures.concurrence_two_qubit(rho)
    assert closed == pytest.approx(0.25, abs=1e-12)
    est = measures.concurrence_roof_oracle(rho, restarts=200, seed=3)
    assert abs(est - closed) < 2e-3


def test_deterministic_and_nonincreasing_in_restarts():
    rng = np.random.default_rng(17)
    rho = rank2_density(rng)
    a = measures.concurrence_roof_oracle(rho, restarts=30, seed=5)
    b = measures.concurrence_roof_oracle(rho, restarts=30, seed=5)
    assert a == b
    more = measures.concurrence_roof_oracle(rho, restarts=90, seed=5)
    assert more <= a + 1e-15


def test_restart_gate():
    with pytest.raises(ValueError):
        measures.concurrence_roof_oracle(np.eye(4, dtype=complex) / 4.0, restarts=0)
