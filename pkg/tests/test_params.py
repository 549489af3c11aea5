import numpy as np
import pytest

from awfunctions.exceptions import DomainError
from awfunctions.params import (AWParameters, DeformationParameter,
                                GroupParameters, Regime, dual_aw_parameters,
                                dual_parameters, eigenvalue_E,
                                eigenvalue_from_qpower, link_parameters,
                                q_pow, self_dual_parameters)


def test_regimes():
    assert DeformationParameter(0.3j).regime is Regime.MODULUS_LESS_ONE
    assert DeformationParameter(-0.3).regime is Regime.MODULUS_ONE
    dp = DeformationParameter.from_q(0.6)
    assert abs(dp.q - 0.6) < 1e-15
    assert dp.purely_imaginary


@pytest.mark.parametrize("tau", [0.0, -0.5, 0.5, 1.0, -0.7, 0.3 - 0.1j])
def test_rejects_bad_tau(tau):
    with pytest.raises(DomainError):
        DeformationParameter(tau)


def test_q_pow_uses_exponential_branch():
    dp = DeformationParameter(0.6 + 0.1j)
    u = 2.7 - 0.4j
    assert q_pow(dp, u) == pytest.approx(np.exp(2j * np.pi * dp.tau * u), rel=1e-15)
    # a principal branch power would differ here
    assert abs(q_pow(dp, u) - dp.q ** u) > 1e-3
    assert np.allclose(q_pow(dp, np.array([1.0, u])), [dp.q, q_pow(dp, u)], rtol=1e-15)


def test_link_parameters_example():
    awp = link_parameters(GroupParameters(2, 3, 2, 3))
    assert awp.as_tuple() == (7, 1, 1, -9)


def test_link_sum(rng):
    for _ in range(20):
        gp = GroupParameters(*(rng.normal(size=4) + 1j * rng.normal(size=4)))
        assert abs(link_parameters(gp).total - (4 - 2 * gp.beta)) < 1e-13


def test_dual_forms_agree(rng):
    for _ in range(100):
        gp = GroupParameters(*(rng.normal(size=4) + 1j * rng.normal(size=4)))
        a = np.array(dual_parameters(gp).as_tuple())
        b = np.array(dual_aw_parameters(link_parameters(gp)).as_tuple())
        assert np.max(np.abs(a - b)) < 1e-12


def test_dual_fixed_points_and_involution(rng):
    dp = DeformationParameter(0.3j)
    sd = self_dual_parameters(dp)
    assert np.allclose(dual_aw_parameters(sd).as_tuple(), sd.as_tuple(), atol=1e-14)
    assert dual_aw_parameters(AWParameters(1, 1, 1, 1)).as_tuple() == (1, 1, 1, 1)
    p = AWParameters(*rng.normal(size=4))
    assert np.allclose(dual_aw_parameters(dual_aw_parameters(p)).as_tuple(), p.as_tuple(),
                       atol=1e-14)


def test_eigenvalue():
    dp = DeformationParameter(0.3j)
    beta = 0.7
    assert eigenvalue_E(dp, 0, beta) == pytest.approx(-(1 - q_pow(dp, 1 - beta)) ** 2, abs=1e-15)
    assert eigenvalue_E(dp, 0.4, beta) == pytest.approx(eigenvalue_E(dp, -0.4, beta), abs=1e-15)
    for m in range(4):
        mu = 1 - beta + 2 * m
        lhs = eigenvalue_from_qpower(dp, mu, beta)
        rhs = (q_pow(dp, -2 * m) - 1) * (1 - q_pow(dp, 2 * m + 2 - 2 * beta))
        assert abs(lhs - rhs) < 1e-12 * (1 + abs(rhs))
