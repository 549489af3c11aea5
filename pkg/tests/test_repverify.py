import numpy as np
import pytest

from conftest import box
from awfunctions.awfunction_q import f_lambda
from awfunctions.awop import residual
from awfunctions.exceptions import DomainError
from awfunctions.params import DeformationParameter, GroupParameters, mu_eigenvalue, q_pow
from awfunctions.repverify import (Gen, GeneratorWord, Shift,
                                   appendix_identity_check,
                                   bilinear_adjointness_check, casimir_apply,
                                   casimir_scalar, laurent_basis,
                                   mu_relation_residual,
                                   pairing_adjointness_check, pi_apply,
                                   twisted_primitive_apply, word)

DP = DeformationParameter(0.13 + 0.21j)
LAM = 0.37


def test_word_must_be_nonempty():
    with pytest.raises(DomainError):
        GeneratorWord(())
    w = word(Gen.K) * word(Gen.XPLUS)
    assert w.factors == (Gen.K, Gen.XPLUS)


def test_generator_actions_against_formulas(rng):
    q = DP.q
    f = lambda z: np.exp(0.3 * z) + z ** 2
    z = box(rng, 10)
    L = 1j * LAM
    xp = q_pow(DP, z) * (q_pow(DP, -0.5 - L) * f(z - 1) - q_pow(DP, 0.5 + L) * f(z + 1)) / (1 / q - q)
    assert np.allclose(pi_apply(word(Gen.XPLUS), LAM, DP, f)(z), xp, rtol=1e-15)
    assert np.array_equal(pi_apply(word(Gen.K), LAM, DP, f)(z), f(z + 1))
    assert np.array_equal(pi_apply(word(Shift(0.3)), LAM, DP, f)(z), f(z + 0.3))
    # words act right to left
    kx = pi_apply(word(Gen.K, Gen.XPLUS), LAM, DP, f)(z)
    assert np.allclose(kx, q * pi_apply(word(Gen.XPLUS, Gen.K), LAM, DP, f)(z), rtol=1e-12)


def test_casimir(rng):
    z = box(rng, 10)
    for k in range(-2, 3):
        f = lambda y, k=k: q_pow(DP, k * np.asarray(y))
        assert residual(casimir_apply(LAM, DP, f)(z), casimir_scalar(LAM, DP) * f(z)) < 1e-10
    assert casimir_scalar(0, DP) == 0


def test_twisted_primitive(rng):
    z = box(rng, 10, 0.5, 0.5)
    f = lambda y: np.cos(0.7 * y) + y
    assert residual(twisted_primitive_apply(3.2, LAM, DP, f)(z),
                    twisted_primitive_apply(3.2, LAM, DP, f, "closed")(z)) < 1e-11
    dq = DeformationParameter.from_q(0.6)
    fl = lambda y: f_lambda(y, 1.3, 3.3, LAM, dq)
    assert residual(twisted_primitive_apply(3.3, LAM, dq, fl)(z),
                    mu_eigenvalue(dq, 1.3, 3.3) * fl(z)) < 1e-9
    assert mu_relation_residual(1.3, 3.3, dq) < 1e-12


def test_appendix_identities(rng):
    worst = 0.0
    for _ in range(100):
        gp = GroupParameters(*(rng.normal(size=4) + 0.5j * rng.normal(size=4)))
        worst = max(worst, appendix_identity_check(complex(*rng.normal(size=2)), gp, DP).max)
    assert worst < 1e-10
    # alpha = beta = 0
    gp = GroupParameters(0, 0.4 + 0.2j, 0, -0.3 + 0.1j)
    assert appendix_identity_check(0.3 + 0.1j, gp, DP).max < 1e-10


def test_appendix_detects_a_wrong_reading():
    # reading A(x^{-1}) as A(1/x) would break the middle identity
    from awfunctions.awop import coeff_A
    from awfunctions.params import link_parameters
    from awfunctions.repverify import appendix_coefficients
    gp = GroupParameters(0.3, 0.8, 0.5, 0.2)
    x = 0.4 + 0.3j
    _, Ct, _ = appendix_coefficients(x, gp, DP)
    awp = link_parameters(gp)
    pf = q_pow(DP, gp.beta - 1) / (DP.q - 1 / DP.q) ** 2
    wrong = pf * (-coeff_A(x, awp, DP) - coeff_A(1 / x, awp, DP) + (1 - q_pow(DP, 1 - gp.beta)) ** 2)
    assert residual(Ct, wrong) > 1e-3


def test_pairing_adjointness():
    dq = DeformationParameter.from_q(0.6)
    res = pairing_adjointness_check(LAM, dq, laurent_basis(dq))
    assert res["1"] == 0
    assert res["K"] < 1e-10 and res["Kinv"] < 1e-10
    assert res["Xplus"] < 1e-9 and res["Xminus"] < 1e-9
    with pytest.raises(DomainError):
        pairing_adjointness_check(LAM + 0.1j, dq)


def test_bilinear_adjointness():
    dp = DeformationParameter(-0.3)
    G1 = lambda y: np.exp(0.3 * y ** 2 + 0.2 * y)
    G2 = lambda y: np.exp(0.5 * y ** 2 - 0.1j * y)
    res = bilinear_adjointness_check(LAM, dp, [(G1, G2), (G2, G1)])
    assert max(res.values()) < 1e-7
