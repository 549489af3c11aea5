"""Principal series of the quantised enveloping algebra as difference
operators, and numerical checks of the radial-part identities."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .awop import FunctionHandle, coeff_A, coeffs_BCD
from .exceptions import DomainError, SingularPoint
from .params import (DeformationParameter, GroupParameters, link_parameters,
                     mu_eigenvalue, q_pow, _lam)


class Gen(enum.Enum):
    K = "K"
    KINV = "Kinv"
    XPLUS = "Xplus"
    XMINUS = "Xminus"


@dataclass(frozen=True)
class Shift:
    """The extra generator ``x-hat`` acting by translation."""

    x: complex


@dataclass(frozen=True)
class GeneratorWord:
    """Product of generators, applied right to left."""

    factors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.factors) == 0:
            raise DomainError("a generator word needs at least one factor")

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.factors + other.factors)


def word(*factors) -> GeneratorWord:
    return GeneratorWord(tuple(factors))


def _fn(f):
    return f.evaluator if isinstance(f, FunctionHandle) else f


def _apply_gen(g, lam, dp: DeformationParameter, f):
    q = dp.q
    L = 1j * _lam(lam)
    if isinstance(g, Shift):
        return lambda z: f(z + g.x)
    if g is Gen.K:
        return lambda z: f(z + 1)
    if g is Gen.KINV:
        return lambda z: f(z - 1)
    cm = q_pow(dp, -0.5 - L)
    cp = q_pow(dp, 0.5 + L)
    if g is Gen.XPLUS:
        return lambda z: q_pow(dp, z) * (cm * f(z - 1) - cp * f(z + 1)) / (1 / q - q)
    if g is Gen.XMINUS:
        return lambda z: q_pow(dp, -z) * (cm * f(z + 1) - cp * f(z - 1)) / (1 / q - q)
    raise DomainError(f"unknown generator {g}")


def pi_apply(w: GeneratorWord, lam, dp: DeformationParameter, f) -> FunctionHandle:
    """``pi_lambda(w) f`` as a lazily evaluated handle."""
    h = _fn(f)
    for g in reversed(w.factors):
        h = _apply_gen(g, lam, dp, h)
    return FunctionHandle(h, "pi_lambda image")


def _lin(*terms) -> FunctionHandle:
    # linear combination of (coefficient, handle) pairs
    return FunctionHandle(lambda z: sum(c * _fn(h)(z) for c, h in terms))


def casimir_apply(lam, dp: DeformationParameter, f) -> FunctionHandle:
    q = dp.q
    k = (q - 1 / q) ** 2
    return _lin((1, pi_apply(word(Gen.XPLUS, Gen.XMINUS), lam, dp, f)),
                (1 / (q * k), pi_apply(word(Gen.K, Gen.K), lam, dp, f)),
                (q / k, pi_apply(word(Gen.KINV, Gen.KINV), lam, dp, f)),
                (-2 / k, f))


def casimir_scalar(lam, dp: DeformationParameter) -> complex:
    L = 1j * _lam(lam)
    return ((q_pow(dp, L) - q_pow(dp, -L)) / (dp.q - 1 / dp.q)) ** 2


def twisted_primitive_apply(rho, lam, dp: DeformationParameter, f,
                            path: str = "generators") -> FunctionHandle:
    """``pi_lambda(Y_rho) f``.

    ``path="generators"`` composes the generator actions,
    ``path="closed"`` uses the explicit first-order operator.
    """
    q = dp.q
    f = _fn(f)
    if path == "generators":
        c = (q_pow(dp, -rho) + q_pow(dp, rho)) / (1 / q - q)
        return _lin((q_pow(dp, 0.5), pi_apply(word(Gen.XPLUS, Gen.K), lam, dp, f)),
                    (-q_pow(dp, -0.5), pi_apply(word(Gen.XMINUS, Gen.K), lam, dp, f)),
                    (c, pi_apply(word(Gen.K, Gen.K), lam, dp, f)),
                    (-c, f))
    if path == "closed":
        L = 1j * _lam(lam)
        pre = q_pow(dp, -rho) / (q - 1 / q)

        def ev(z):
            return pre * ((q_pow(dp, rho - 1 - L - z) - 1) * (1 - q_pow(dp, rho + 1 + L + z)) * f(z + 2)
                          - (q_pow(dp, rho + L - z) - 1) * (1 - q_pow(dp, rho - L + z)) * f(z))
        return FunctionHandle(ev, "closed first order form")
    raise DomainError(f"unknown path {path}")


def twisted_primitive_circ_apply(rho, lam, dp: DeformationParameter, f) -> FunctionHandle:
    """``pi_lambda`` of the circ-image of ``Y_rho``.

    ``-q^{1/2} K^{-1} X^+ + q^{-1/2} K^{-1} X^- + c (K^{-2} - 1)``.
    """
    q = dp.q
    f = _fn(f)
    c = (q_pow(dp, -rho) + q_pow(dp, rho)) / (1 / q - q)
    return _lin((-q_pow(dp, 0.5), pi_apply(word(Gen.KINV, Gen.XPLUS), lam, dp, f)),
                (q_pow(dp, -0.5), pi_apply(word(Gen.KINV, Gen.XMINUS), lam, dp, f)),
                (c, pi_apply(word(Gen.KINV, Gen.KINV), lam, dp, f)),
                (-c, f))


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / (np.abs(a) + np.abs(b) + 1e-300)))


@dataclass(frozen=True)
class IdentityReport:
    residual_B: float
    residual_C: float
    residual_D: float

    @property
    def max(self) -> float:
        return max(self.residual_B, self.residual_C, self.residual_D)


def appendix_coefficients(x, gp: GroupParameters, dp: DeformationParameter):
    """Explicit radial-part coefficients ``B~, C~, D~`` written with
    symmetric combinations of the group parameters."""
    al, rh, be, si = gp.as_tuple()
    qp = lambda u: q_pow(dp, u)
    q = dp.q
    k = q - 1 / q
    x = np.asarray(x, dtype=complex)
    r = qp(rh) + qp(-rh)
    s = qp(si) + qp(-si)
    ra = qp(rh + al) + qp(-rh - al)
    sb = qp(si + be) + qp(-si - be)
    d1 = (1 - qp(2 * x)) * (1 - qp(-2 - 2 * x))
    d2 = (1 - qp(2 * x)) * (1 - qp(2 - 2 * x))
    if np.any(np.abs(d1) < 1e-12) or np.any(np.abs(d2) < 1e-12):
        raise SingularPoint("appendix coefficients singular")
    Bt = ((qp(0.5 + x) * r - qp(1.5 + 2 * x) * s)
          * (qp(-2.5 - 2 * x) * s - qp(-1.5 - x) * r) / (k ** 2 * d1)
          - qp(2 * x) / (k * (1 - qp(2 * x))) + 1 / (q * k ** 2))
    Ct = (-2 / k ** 2
          + (qp(0.5 + x) * r - qp(1.5 + 2 * x) * s)
          * (qp(-1.5 - x) * ra - qp(-2.5 - 2 * x) * sb) / (k ** 2 * d1)
          + (qp(-0.5 + 2 * x) * sb - qp(0.5 + x) * ra)
          * (qp(1.5 - 2 * x) * s - qp(0.5 - x) * r) / (k ** 2 * d2))
    Dt = (qp(2 * x) / (k * (1 - qp(2 * x))) + q / k ** 2
          + (qp(-0.5 + 2 * x) * sb - qp(0.5 + x) * ra)
          * (qp(0.5 - x) * ra - qp(1.5 - 2 * x) * sb) / (k ** 2 * d2))
    return Bt, Ct, Dt


def appendix_identity_check(x, gp: GroupParameters, dp: DeformationParameter) -> IdentityReport:
    """Compare the explicit coefficients with the radial-part ones.

    ``A(x^{-1})`` of the multiplicative notation is read as ``A(-x)``.
    """
    Bt, Ct, Dt = appendix_coefficients(x, gp, dp)
    B, C, D = coeffs_BCD(x, gp, dp)
    awp = link_parameters(gp)
    pf = q_pow(dp, gp.beta - 1) / (dp.q - 1 / dp.q) ** 2
    Cfull = -coeff_A(x, awp, dp) - coeff_A(-np.asarray(x), awp, dp) \
        + (1 - q_pow(dp, 1 - gp.beta)) ** 2
    assert np.allclose(C, Cfull - (1 - q_pow(dp, 1 - gp.beta)) ** 2)
    return IdentityReport(_rel(Bt, pf * B), _rel(Ct, pf * Cfull), _rel(Dt, pf * D))


# ---------------------------------------------------------------------------
# pairings

STAR = {Gen.K: [(1, Gen.K)], Gen.KINV: [(1, Gen.KINV)],
        Gen.XPLUS: [(-1, Gen.XMINUS)], Gen.XMINUS: [(-1, Gen.XPLUS)]}


def laurent_basis(dp: DeformationParameter, degrees=range(-3, 4)):
    """Monomials ``q^{k z}``: entire and ``1/tau``-periodic."""
    return [FunctionHandle(lambda z, k=k: q_pow(dp, k * np.asarray(z)), f"q^({k}z)")
            for k in degrees]


def _pair(f, g, dp, n=256):
    y = np.arange(n) / n
    w = y / dp.tau
    return np.mean(_fn(f)(w) * np.conj(_fn(g)(w)))


def pairing_adjointness_check(lam, dp: DeformationParameter, basis=None, n=256):
    """Max residual of ``<pi(X) f, g> - <f, pi(X*) g>`` over the basis.

    Returns a dict keyed by generator name (``"1"`` for the unit).
    """
    if complex(lam).imag != 0:
        raise DomainError("adjointness needs real lambda")
    if not dp.purely_imaginary:
        raise DomainError("adjointness needs 0 < q < 1")
    basis = basis or laurent_basis(dp)
    out = {"1": 0.0}
    for g0 in (Gen.K, Gen.KINV, Gen.XPLUS, Gen.XMINUS):
        worst = 0.0
        for f in basis:
            for g in basis:
                lhs = _pair(pi_apply(word(g0), lam, dp, f), g, dp, n)
                rhs = 0
                for c, gs in STAR[g0]:
                    rhs = rhs + np.conj(c) * _pair(f, pi_apply(word(gs), lam, dp, g), dp, n)
                worst = max(worst, abs(lhs - rhs) / (1 + abs(lhs) + abs(rhs)))
        out[g0.value] = worst
    return out


CIRC = {Gen.K: [(1, Gen.KINV)], Gen.KINV: [(1, Gen.K)],
        Gen.XPLUS: [(-1, Gen.XPLUS)], Gen.XMINUS: [(-1, Gen.XMINUS)]}


def bilinear_pairing(f, g, half_width=12.0, n=4001):
    """``int_{iR} f(z) g(z) dz`` by the trapezoid rule on ``[-Y, Y]``."""
    y = np.linspace(-half_width, half_width, n)
    vals = _fn(f)(1j * y) * _fn(g)(1j * y)
    return 1j * np.trapezoid(vals, y)


def bilinear_adjointness_check(lam, dp: DeformationParameter, pairs, gens=None):
    """Max residual of ``(pi_lam(X) f, g) - (f, pi_{-lam}(X circ) g)`` on iR."""
    gens = gens or (Gen.K, Gen.KINV, Gen.XPLUS, Gen.XMINUS)
    out = {}
    for g0 in gens:
        worst = 0.0
        for f, g in pairs:
            lhs = bilinear_pairing(pi_apply(word(g0), lam, dp, f), g)
            rhs = sum(c * bilinear_pairing(f, pi_apply(word(gs), -_lam(lam), dp, g))
                      for c, gs in CIRC[g0])
            worst = max(worst, abs(lhs - rhs) / (1 + abs(lhs) + abs(rhs)))
        out[g0.value] = worst
    return out


def mu_relation_residual(alpha, rho, dp: DeformationParameter) -> float:
    """``q^r + q^-r - (q - 1/q) mu = q^{r+a} + q^{-r-a}``."""
    q = dp.q
    lhs = q_pow(dp, rho) + q_pow(dp, -rho) - (q - 1 / q) * mu_eigenvalue(dp, alpha, rho)
    rhs = q_pow(dp, rho + alpha) + q_pow(dp, -rho - alpha)
    return abs(lhs - rhs) / (1 + abs(lhs) + abs(rhs))
