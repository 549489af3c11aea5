"""Askey-Wilson operator, its gauged form, gauge factors and Hecke operators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import PoleHit, SingularPoint
from .hypgamma import HypGammaContext, hyp_log_G
from .params import (AWParameters, DeformationParameter, GroupParameters,
                     link_parameters, q_pow)
from .qseries import q_gamma, qpoch_inf

SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class FunctionHandle:
    """Callable wrapper used as operator input and output."""

    evaluator: Callable
    domain_note: str = ""

    def __call__(self, x):
        return self.evaluator(x)


def _handle(f) -> Callable:
    return f.evaluator if isinstance(f, FunctionHandle) else f


def _check(den, what="coefficient"):
    if np.any(np.abs(den) < SINGULAR_TOL):
        raise SingularPoint(f"vanishing denominator in {what}")


def residual(lhs, rhs) -> float:
    """Relative residual ``|lhs - rhs| / (1 + |lhs| + |rhs|)``."""
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    return float(np.max(np.abs(lhs - rhs) / (1 + np.abs(lhs) + np.abs(rhs))))


def coeff_A(x, awp: AWParameters, dp: DeformationParameter):
    x = np.asarray(x, dtype=complex)
    num = 1
    for e in awp.as_tuple():
        num = num * (1 - q_pow(dp, e + x))
    den = (1 - q_pow(dp, 2 * x)) * (1 - q_pow(dp, 2 + 2 * x))
    _check(den, "A(x)")
    v = num / den
    return v if np.ndim(v) else complex(v)


def apply_D(f, x, awp: AWParameters, dp: DeformationParameter):
    """``A(x)(f(x+2) - f(x)) + A(-x)(f(x-2) - f(x))``."""
    f = _handle(f)
    x = np.asarray(x, dtype=complex)
    f0 = f(x)
    return (coeff_A(x, awp, dp) * (f(x + 2) - f0)
            + coeff_A(-x, awp, dp) * (f(x - 2) - f0))


def coeffs_BCD(x, gp: GroupParameters, dp: DeformationParameter):
    """Coefficients ``B, C, D`` of the gauged operator."""
    x = np.asarray(x, dtype=complex)
    a, b, c, d = link_parameters(gp).as_tuple()
    qb = q_pow(dp, -gp.beta)
    qp = lambda u: q_pow(dp, u)
    denB = (1 - qp(2 * x)) * (1 - qp(2 + 2 * x))
    denD = (1 - qp(-2 * x)) * (1 - qp(2 - 2 * x))
    _check(denB, "B(x)")
    _check(denD, "D(x)")
    B = qb * ((1 - qp(a + x)) * (1 - qp(2 - a + x)) * (1 - qp(b + x))
              * (1 - qp(2 - b + x))) / denB
    awp = link_parameters(gp)
    C = -coeff_A(x, awp, dp) - coeff_A(-x, awp, dp)
    D = qb * ((1 - qp(c - x)) * (1 - qp(2 - c - x)) * (1 - qp(d - x))
              * (1 - qp(2 - d - x))) / denD
    return B, C, D


def apply_L(f, x, gp: GroupParameters, dp: DeformationParameter):
    """``B(x) f(x+2) + C(x) f(x) + D(x) f(x-2)``."""
    f = _handle(f)
    x = np.asarray(x, dtype=complex)
    B, C, D = coeffs_BCD(x, gp, dp)
    return B * f(x + 2) + C * f(x) + D * f(x - 2)


def apply_L_values(fp, f0, fm, x, gp, dp):
    """Gauged operator from precomputed values at ``x+2, x, x-2``."""
    B, C, D = coeffs_BCD(x, gp, dp)
    return B * fp + C * f0 + D * fm


def apply_D_values(fp, f0, fm, x, awp, dp):
    return (coeff_A(x, awp, dp) * (fp - f0)
            + coeff_A(-x, awp, dp) * (fm - f0))


def _gp_beta(awp: AWParameters):
    # a+b+c+d = 4 - 2 beta under the link map
    return (4 - awp.total) / 2


def gauge_Delta(x, awp: AWParameters, dp: DeformationParameter):
    """Quotient of four ``Gamma_{2 tau}`` values (``0 < |q| < 1``)."""
    a, b, c, d = awp.as_tuple()
    x = np.asarray(x, dtype=complex)
    dp2 = dp.doubled()
    k = 1 / (2 * dp.tau)
    v = (q_gamma(dp2, -1 + k + a - x) * q_gamma(dp2, -1 + k + b - x)
         / (q_gamma(dp2, 1 + k - c - x) * q_gamma(dp2, 1 + k - d - x)))
    return v if np.ndim(v) else complex(v)


def gauge_Delta_product(x, awp: AWParameters, dp: DeformationParameter):
    """Product form ``(q^{2-c-x}, q^{2-d-x}; q^2)/(q^{a-x}, q^{b-x}; q^2) q^{-beta x/2}``.

    Equal to :func:`gauge_Delta` up to an x-independent factor.
    """
    a, b, c, d = awp.as_tuple()
    x = np.asarray(x, dtype=complex)
    Q = dp.q ** 2
    beta = _gp_beta(awp)
    v = (qpoch_inf(q_pow(dp, 2 - c - x), Q) * qpoch_inf(q_pow(dp, 2 - d - x), Q)
         / (qpoch_inf(q_pow(dp, a - x), Q) * qpoch_inf(q_pow(dp, b - x), Q))
         * q_pow(dp, -beta * x / 2))
    return v if np.ndim(v) else complex(v)


def delta_ratio(x, awp: AWParameters, dp: DeformationParameter):
    """Right side of the gauge equation ``Delta(x+2)/Delta(x)``."""
    a, b, c, d = awp.as_tuple()
    qp = lambda u: q_pow(dp, u)
    x = np.asarray(x, dtype=complex)
    return (qp(_gp_beta(awp)) * (1 - qp(c + x)) * (1 - qp(d + x))
            / ((1 - qp(2 - a + x)) * (1 - qp(2 - b + x))))


def delta_ratio_sine(x, awp: AWParameters, dp: DeformationParameter):
    """Same ratio written with sines; valid for every tau."""
    a, b, c, d = awp.as_tuple()
    t = dp.tau
    s = lambda u: np.sin(np.pi * u * t)
    x = np.asarray(x, dtype=complex)
    return s(c + x) * s(d + x) / (s(2 - a + x) * s(2 - b + x))


def gauge_delta_hyp(x, gp: GroupParameters, dp: DeformationParameter,
                    ctx: HypGammaContext | None = None):
    """``|q| = 1`` gauge factor: the same quotient with ``G_{2 tau}``."""
    a, b, c, d = link_parameters(gp).as_tuple()
    ctx = ctx or HypGammaContext(2 * dp.tau.real)
    k = 1 / (2 * dp.tau.real)
    x = np.asarray(x, dtype=complex)
    args = np.stack([-1 + k + a - x, -1 + k + b - x, 1 + k - c - x, 1 + k - d - x])
    lg = hyp_log_G(ctx, args)
    v = np.exp(lg[0] + lg[1] - lg[2] - lg[3])
    return v if np.ndim(v) else complex(v)


def hecke_T0(f, x, c, d, dp: DeformationParameter):
    f = _handle(f)
    x = np.asarray(x, dtype=complex)
    den = 1 - q_pow(dp, 2 - 2 * x)
    _check(den, "T0")
    return (-q_pow(dp, -2 + c + d) * f(x)
            + (1 - q_pow(dp, c - x)) * (1 - q_pow(dp, d - x)) / den
            * (f(2 - x) - f(x)))


def hecke_T1(f, x, a, b, dp: DeformationParameter):
    f = _handle(f)
    x = np.asarray(x, dtype=complex)
    den = 1 - q_pow(dp, 2 * x)
    _check(den, "T1")
    return (-q_pow(dp, a + b) * f(x)
            + (1 - q_pow(dp, a + x)) * (1 - q_pow(dp, b + x)) / den
            * (f(-x) - f(x)))


def hecke_Y(f, x, awp: AWParameters, dp: DeformationParameter):
    """``Y = T1 o T0``."""
    a, b, c, d = awp.as_tuple()
    g = lambda y: hecke_T0(f, y, c, d, dp)
    return hecke_T1(g, x, a, b, dp)


def symmetrizer(f, x, a, b, dp: DeformationParameter):
    """``C+ = (1 + T1)/(1 - q^{a+b})``."""
    f = _handle(f)
    return (f(x) + hecke_T1(f, x, a, b, dp)) / (1 - q_pow(dp, a + b))


def hecke_quadratic_residual(T, f, x, t0, t1):
    """``(T + t0)(T + t1) f`` at x for an operator ``T(f, x)``."""
    Tf = lambda y: T(f, y)
    TTf = T(Tf, x)
    return TTf + (t0 + t1) * Tf(x) + t0 * t1 * _handle(f)(x)
