import numpy as np
import pytest

import oracles
from conftest import box
from awfunctions.exceptions import (DomainError, InfiniteProductDivergent,
                                    PoleHit, SeriesDivergent)
from awfunctions.params import AWParameters, DeformationParameter, q_pow, self_dual_parameters
from awfunctions.qseries import (INF, aw_polynomial, aw_polynomial_series,
                                 aw_polynomials, aw_weight, phi_43, q_gamma,
                                 q_pochhammer, qpoch_inf, theta_modified,
                                 theta_renorm, w_87)

DP = DeformationParameter(0.3j)


def test_pochhammer_basics():
    assert q_pochhammer(0.3, 0.5, 0).value == 1
    v = q_pochhammer(0.5, 0.25, 2)
    assert v.value == pytest.approx(0.4375) and v.tail_bound == 0
    assert q_pochhammer(0, 0.5, INF).value == 1
    with pytest.raises(InfiniteProductDivergent):
        q_pochhammer(0.5, 1.0, INF)


def test_pochhammer_against_mpmath():
    for b, q in [(0.3 + 0.2j, 0.6), (-0.9, 0.8 + 0.1j), (2.0 - 1j, 0.35j)]:
        v = q_pochhammer(b, q, INF)
        ref = complex(oracles.poch_inf(b, q))
        assert abs(v.value - ref) <= 1e-13 * abs(ref)
        assert v.tail_bound < 1e-12 * abs(ref)
    b = np.array([0.3, -0.7 + 0.1j])
    assert np.allclose(qpoch_inf(b, 0.6), [complex(oracles.poch_inf(x, 0.6)) for x in b],
                       rtol=1e-13)


def test_pochhammer_recurrence():
    b, q = 0.4 - 0.3j, 0.7
    for n in range(6):
        nxt = q_pochhammer(b, q, n + 1).value
        assert nxt == (1 - b * q ** n) * q_pochhammer(b, q, n).value


def test_q_gamma_against_mpmath(rng):
    for x in box(rng, 8):
        assert q_gamma(DP, x) == pytest.approx(oracles.q_gamma(DP.tau, x), rel=1e-13)
    assert q_gamma(DP, 0) == pytest.approx(oracles.q_gamma(DP.tau, 0), rel=1e-14)


def test_q_gamma_difference_equation_and_conjugation(rng):
    x = box(rng, 100)
    lhs = q_gamma(DP, x + 2)
    rhs = 2 * np.cos(np.pi * (x + 1) * DP.tau / 2) * q_gamma(DP, x)
    assert np.max(np.abs(lhs - rhs) / np.abs(rhs)) < 1e-10
    assert np.allclose(np.conj(q_gamma(DP, x)), q_gamma(DP, np.conj(x)), rtol=1e-13)


def test_q_gamma_zero_free_and_poles(rng):
    x = box(rng, 1000, 3, 3)
    assert np.all(np.abs(q_gamma(DP, x)) > 0)
    with pytest.raises(PoleHit):
        q_gamma(DP, -1 + 1 / DP.tau)
    with pytest.raises(PoleHit):
        q_gamma(DP, -3 + 1 / DP.tau + 2 / DP.tau)


def test_theta_functional_equation(rng):
    q = DP.q
    z = np.exp(box(rng, 20, 0.5, np.pi))
    for k in (-2, -1, 1, 2):
        lhs = theta_modified(DP, q ** (2 * k) * z)
        rhs = (-z) ** (-k) * q ** (-k * k) * theta_modified(DP, z)
        assert np.max(np.abs(lhs - rhs) / (1 + np.abs(lhs) + np.abs(rhs))) < 1e-11
    with pytest.raises(DomainError):
        theta_modified(DP, 0)


def test_theta_renorm(rng):
    x = box(rng, 50)
    assert np.allclose(theta_renorm(DP, x), [oracles.theta_renorm(DP.tau, v) for v in x],
                       rtol=1e-13)
    assert np.array_equal(theta_renorm(DP, -x), theta_renorm(DP, x))
    lhs = theta_renorm(DP, x + 2)
    assert np.allclose(lhs, q_pow(DP, -1 - x) * theta_renorm(DP, x), rtol=1e-11)
    q = DP.q
    m = np.arange(1, 60)[:, None]
    series = 1 + 2 * np.sum(np.cos(2 * np.pi * m * DP.tau * x) * q ** (m * m), axis=0)
    assert np.allclose(series, qpoch_inf(q * q, q * q) * theta_renorm(DP, x), rtol=1e-11)


def test_phi43_trivial_and_small():
    q = 0.5
    assert phi_43(1, 0.3, 0.2, 0.1, 0.4, 0.5, 0.6, q, q).value == 1
    assert phi_43(0.3, 0.3, 0.2, 0.1, 0.4, 0.5, 0.6, q, 0).value == 1
    a = (q ** -2, 0.3, 0.2, 0.1)
    b = (0.4, 0.5, 0.6)
    poch = lambda x, k: np.prod([1 - x * q ** j for j in range(k)])
    ref = sum(np.prod([poch(v, k) for v in a]) / np.prod([poch(v, k) for v in (q,) + b]) * q ** k
              for k in range(3))
    v = phi_43(*a, *b, q, q)
    assert v.value == pytest.approx(ref, rel=1e-14) and v.terms_used == 3
    with pytest.raises(SeriesDivergent):
        phi_43(0.3, 0.3, 0.2, 0.1, 0.4, 0.5, 0.6, q, 1.5)


def test_w87_against_mpmath():
    q = 0.36
    args = (0.2 + 0.1j, (0.3, -0.4 + 0.2j, 0.5, 0.25j, -0.6), q, 0.5)
    v = w_87(args[0], *args[1], q, 0.5)
    ref = oracles.w87(*args)
    assert abs(v.value - ref) < 1e-13 * abs(ref)
    assert v.tail_bound < 1e-12 * abs(ref)
    assert w_87(0.2, 0.3, 0.4, 0.5, 0.6, 0.7, q, 0).value == 1
    # terminating at k = 1
    u, bs = 0.2, (1 / q, 0.4, 0.5, 0.6, 0.7)
    t1 = ((1 - u * q * q) / (1 - u) * (1 - u) / (1 - q)
          * np.prod([(1 - b) / (1 - q * u / b) for b in bs]) * 0.3)
    assert w_87(u, *bs, q, 0.3).value == pytest.approx(1 + t1, rel=1e-14)
    with pytest.raises(SeriesDivergent):
        w_87(0.2, 0.3, 0.4, 0.5, 0.6, 0.7, q, 1.2)


PARAMS = AWParameters(0.7, 1.3, 0.45, 0.9)


def test_aw_polynomials_against_mpmath():
    dp = DeformationParameter.from_q(0.6)
    x = 0.3 + 0.4j
    E = aw_polynomials(12, x, PARAMS, dp)
    for m in (0, 1, 3, 8, 12):
        ref = oracles.phi43(dp.tau, m, *PARAMS.as_tuple(), x)
        assert abs(E[m] - ref) < 1e-11 * (1 + abs(ref))


def test_aw_polynomial_basics(rng):
    dp = DeformationParameter.from_q(0.6)
    x = box(rng, 20)
    assert np.all(aw_polynomial(0, x, PARAMS, dp) == 1)
    assert np.allclose(aw_polynomials(8, PARAMS.a, PARAMS, dp), 1, atol=1e-12)
    assert np.allclose(aw_polynomials(8, -x, PARAMS, dp), aw_polynomials(8, x, PARAMS, dp),
                       rtol=1e-12)
    s = aw_polynomial_series(3, x[0], PARAMS, dp)
    assert s.value == pytest.approx(aw_polynomial(3, x[0], PARAMS, dp), rel=1e-9)


def test_cosine_specialisation():
    sd = self_dual_parameters(DP)
    x = np.linspace(0, 1, 50) / DP.tau
    E = aw_polynomials(10, x, sd, DP)
    m = np.arange(11)[:, None]
    assert np.max(np.abs(E - np.cos(2 * np.pi * m * DP.tau * x))) < 1e-10


def test_orthogonality():
    dp = DeformationParameter.from_q(0.5)
    awp = AWParameters(0.5, 0.8, 1.1, 0.6)
    n = 2048
    x = (np.arange(n) / n) / dp.tau
    w = aw_weight(x, awp, dp)
    E = aw_polynomials(5, x, awp, dp)
    G = (E * w) @ E.T / n
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) < 1e-6 * np.max(np.abs(np.diag(G)))
    assert np.all(np.diag(G).real > 0)


def test_recurrence_degenerates_loudly():
    dp = DeformationParameter.from_q(0.5)
    with pytest.raises(DomainError):
        aw_polynomials(3, 0.1, AWParameters(0.0, 0.0, 0.4, 0.5), dp)
