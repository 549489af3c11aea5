import numpy as np
import pytest

from conftest import box
from awfunctions.awop import (apply_D, apply_L, coeff_A, coeffs_BCD,
                              delta_ratio, delta_ratio_sine, gauge_Delta,
                              gauge_Delta_product, gauge_delta_hyp, hecke_T0,
                              hecke_T1, hecke_Y, hecke_quadratic_residual,
                              residual, symmetrizer)
from awfunctions.exceptions import SingularPoint
from awfunctions.hypgamma import HypGammaContext, hyp_gamma
from awfunctions.params import (AWParameters, DeformationParameter,
                                GroupParameters, aw_eigenvalue_degree,
                                link_parameters, q_pow, self_dual_parameters)
from awfunctions.qseries import aw_polynomials

DP = DeformationParameter.from_q(0.6)
AWP = AWParameters(0.3, 0.5, 0.6, 0.8)
GP = GroupParameters(0.7, 3.3, 1.1, 3.6)


def laurent(dp, k):
    return lambda y: q_pow(dp, k * np.asarray(y))


def test_residual_metric():
    assert residual(1.0, 1.0) == 0
    assert residual(3.0, 1.0) == pytest.approx(2 / 5)


def test_coefficient_singularities():
    with pytest.raises(SingularPoint):
        coeff_A(0.0, AWP, DP)
    with pytest.raises(SingularPoint):
        coeffs_BCD(1.0, GP, DP)


def test_D_on_constants_and_polynomials(rng):
    x = box(rng, 20)
    assert np.all(apply_D(lambda y: np.ones_like(y), x, AWP, DP) == 0)
    for m in range(6):
        f = lambda y, m=m: aw_polynomials(m, y, AWP, DP)[m]
        assert residual(apply_D(f, x, AWP, DP), aw_eigenvalue_degree(DP, m, AWP) * f(x)) < 1e-9


def test_gauge_forms(rng):
    awp = link_parameters(GP)
    x = box(rng, 20, 0.8, 0.8)
    ratio = gauge_Delta(x, awp, DP) / gauge_Delta_product(x, awp, DP)
    assert np.std(ratio) / abs(np.mean(ratio)) < 1e-10
    lhs = gauge_Delta(x + 2, awp, DP) / gauge_Delta(x, awp, DP)
    assert residual(lhs, delta_ratio(x, awp, DP)) < 1e-10
    assert residual(delta_ratio(x, awp, DP), delta_ratio_sine(x, awp, DP)) < 1e-12


def test_L_is_conjugated_D(rng):
    awp = link_parameters(GP)
    x = box(rng, 10, 0.5, 0.5)
    for k in (-2, 0, 1, 3):
        f = laurent(DP, k)
        g = lambda y, f=f: f(y) / gauge_Delta(y, awp, DP)
        lhs = apply_L(f, x, GP, DP)
        rhs = gauge_Delta(x, awp, DP) * apply_D(g, x, awp, DP)
        assert residual(lhs, rhs) < 1e-9


def test_hyperbolic_gauge(rng):
    dp = DeformationParameter(-0.3)
    gp = GroupParameters(0.4, 0.7, 0.55, 0.3)
    awp = link_parameters(gp)
    x = box(rng, 20, 0.5, 0.5)
    lhs = gauge_delta_hyp(x + 2, gp, dp) / gauge_delta_hyp(x, gp, dp)
    assert residual(lhs, delta_ratio_sine(x, awp, dp)) < 1e-8
    assert np.isfinite(gauge_delta_hyp(0, gp, dp))


def test_hecke_at_self_dual_point(rng):
    dp = DeformationParameter(0.3j)
    a, b, c, d = self_dual_parameters(dp).as_tuple()
    f = lambda y: np.exp(0.4 * y) + y ** 3
    x = box(rng, 10, 0.6, 0.6)
    assert residual(hecke_T0(f, x, c, d, dp), f(2 - x)) < 1e-10
    assert residual(hecke_T1(f, x, a, b, dp), f(-x)) < 1e-10
    assert residual(hecke_Y(f, x, self_dual_parameters(dp), dp), f(2 + x)) < 1e-10


def test_hecke_constants_and_symmetrizer(rng):
    a, b = AWP.a, AWP.b
    one = lambda y: np.ones_like(np.asarray(y, dtype=complex))
    x = box(rng, 5)
    assert np.allclose(hecke_T1(one, x, a, b, DP), -q_pow(DP, a + b), rtol=1e-15)
    assert np.allclose(symmetrizer(one, x, a, b, DP), 1, rtol=1e-14)


def test_hecke_quadratic_relations(rng):
    a, b, c, d = AWP.as_tuple()
    x = box(rng, 10)
    T1 = lambda g, y: hecke_T1(g, y, a, b, DP)
    T0 = lambda g, y: hecke_T0(g, y, c, d, DP)
    for k in range(-3, 4):
        f = laurent(DP, k)
        assert residual(hecke_quadratic_residual(T1, f, x, 1, q_pow(DP, a + b)), 0) < 1e-9
        assert residual(hecke_quadratic_residual(T0, f, x, 1, q_pow(DP, c + d - 2)), 0) < 1e-9
    # the (T - 1)(T + q^{a+b}) form does not annihilate these functions
    f = laurent(DP, 2)
    assert residual(hecke_quadratic_residual(T1, f, x, -1, q_pow(DP, a + b)), 0) > 1e-3
