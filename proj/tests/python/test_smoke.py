import math

import numpy as np
import pytest

import qhedge

ALPHA = 1 / math.sqrt(2)


def test_thresholds():
    t1, t2 = qhedge.thresholds(ALPHA, 2)
    assert abs(t1 - math.pi / 8) < 1e-12
    assert abs(t2 - 3 * math.pi / 8) < 1e-12


def test_interior_strategy_never_loses_both():
    t1, t2 = qhedge.thresholds(0.6, 3)
    for theta in np.linspace(t1, t2, 5):
        phases = qhedge.phi_interp(0.6, theta, 3)
        assert len(phases) == 8
        assert all(abs(abs(p) - 1) < 1e-12 for p in phases)
        assert qhedge.lose_all(phases, 0.6, theta) < 1e-9


def test_distribution_matches_choi_pairing():
    phases = qhedge.recommended_strategy(0.8, 0.3, 2)
    u = np.diag(phases)
    v = u.reshape(-1)
    choi = np.outer(v, v.conj())
    a = qhedge.outcome_distribution(phases, 0.8, 0.3)
    b = qhedge.outcome_distribution_choi(choi, 0.8, 0.3, 2)
    assert np.allclose(a, b, atol=1e-12)
    assert abs(sum(a) - 1) < 1e-12


def test_solve_and_certify():
    s = qhedge.solve(ALPHA, math.pi / 16, 2)
    assert abs(s["value"] - 0.0732233047) < 1e-6
    assert s["primal_X"].shape == (16, 16)
    phases = qhedge.phi_border(2, 1)
    cert = qhedge.certify(phases, ALPHA, math.pi / 16)
    assert cert["optimal"]
    assert abs(cert["primal_value"] - qhedge.losing_amplitude(ALPHA, math.pi / 16, 2, 1) ** 2) < 1e-12
    # the objective pairs with the Choi matrix to the same value
    c = qhedge.objective(ALPHA, math.pi / 16, 2)
    assert abs(np.vdot(c, s["primal_X"]).real - s["value"]) < 1e-9


def test_noanswer_coin():
    rho = np.kron(np.diag([1.0, 0.0]), np.eye(2) / 2)
    pa = np.diag([1.0, 0.0, 0.0, 1.0])
    assert abs(qhedge.noanswer_single_value(rho, pa) - 0.5) < 1e-12
    assert abs(qhedge.noanswer_k_of_n(rho, pa, 2, 1) - 0.75) < 1e-12


def test_errors():
    with pytest.raises(qhedge.Error):
        qhedge.thresholds(0.0, 2)
    with pytest.raises(ValueError):
        qhedge.solve(0.5, 0.3, 2, 3)
    with pytest.raises(qhedge.OutOfHedgingRange):
        qhedge.phi_interp(ALPHA, 0.01, 2)
    with pytest.raises(qhedge.SolverError):
        qhedge.solve(0.5, 0.3, 2, max_steps=2)
