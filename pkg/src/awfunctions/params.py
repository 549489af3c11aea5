"""Parameter objects, the q-power convention and the spectral eigenvalue.

Every power of q in the library goes through :func:`q_pow`, i.e.
``q**u == exp(2*pi*i*tau*u)``.  No principal-branch power of ``q`` is
ever taken, so there is no branch ambiguity anywhere downstream.
"""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError

TWO_PI_I = 2j * np.pi


class Regime(enum.Enum):
    MODULUS_LESS_ONE = "ModulusLessOne"
    MODULUS_ONE = "ModulusOne"


@dataclass(frozen=True)
class DeformationParameter:
    """Deformation parameter ``tau`` with ``q = exp(2 pi i tau)``.

    ``Im(tau) > 0`` gives ``|q| < 1``; real ``tau`` in ``(-1/2, 0)`` gives
    ``|q| = 1``.
    """

    tau: complex
    q: complex = field(init=False)
    regime: Regime = field(init=False)

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        k = 2 * tau
        if abs(k.imag) < 1e-14 and abs(k.real - round(k.real)) < 1e-14:
            raise DomainError(f"tau must avoid (1/2)Z, got {tau}")
        if tau.imag > 0:
            regime = Regime.MODULUS_LESS_ONE
        elif tau.imag == 0 and -0.5 < tau.real < 0:
            regime = Regime.MODULUS_ONE
        else:
            raise DomainError(
                f"tau={tau}: need Im(tau) > 0 or real tau in (-1/2, 0)")
        object.__setattr__(self, "q", cmath.exp(TWO_PI_I * tau))
        object.__setattr__(self, "regime", regime)

    @classmethod
    def from_q(cls, q: float) -> "DeformationParameter":
        """Real ``0 < q < 1``; tau is then purely imaginary."""
        if not 0 < q < 1:
            raise DomainError(f"from_q needs 0 < q < 1, got {q}")
        return cls(complex(0.0, -np.log(q) / (2 * np.pi)))

    @property
    def purely_imaginary(self) -> bool:
        return self.tau.real == 0 and self.tau.imag > 0

    def doubled(self) -> "DeformationParameter":
        """Parameter ``2 tau`` (base ``q**2``)."""
        return DeformationParameter(2 * self.tau)

    def pow(self, u):
        return q_pow(self, u)


def q_pow(dp: DeformationParameter, u):
    """``q**u`` computed as ``exp(2 pi i tau u)``; vectorised over ``u``."""
    if np.isscalar(u):
        return cmath.exp(TWO_PI_I * dp.tau * u)
    return np.exp(TWO_PI_I * dp.tau * np.asarray(u, dtype=complex))


@dataclass(frozen=True)
class GroupParameters:
    alpha: complex
    rho: complex
    beta: complex
    sigma: complex

    def as_tuple(self):
        return (self.alpha, self.rho, self.beta, self.sigma)


@dataclass(frozen=True)
class AWParameters:
    a: complex
    b: complex
    c: complex
    d: complex

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def total(self):
        return self.a + self.b + self.c + self.d


@dataclass(frozen=True)
class SpectralPoint:
    lam: complex

    def __complex__(self):
        return complex(self.lam)


def _lam(lam) -> complex:
    return complex(lam.lam) if isinstance(lam, SpectralPoint) else complex(lam)


def link_parameters(gp: GroupParameters) -> AWParameters:
    al, rh, be, si = gp.as_tuple()
    return AWParameters(1 + rh + si, 1 - rh + si,
                        1 + al + rh - be - si, 1 - al - rh - be - si)


def dual_parameters(gp: GroupParameters) -> AWParameters:
    """Dual Askey-Wilson parameters in terms of the group parameters."""
    al, rh, be, si = gp.as_tuple()
    return AWParameters(1 - be, 1 + be + 2 * si, 1 + al + 2 * rh, 1 - al)


def dual_aw_parameters(awp: AWParameters) -> AWParameters:
    """Dual parameters expressed through (a, b, c, d) alone.

    Works for any quadruple, not only those in the image of the link map,
    and is an involution.
    """
    a, b, c, d = awp.as_tuple()
    s = a + b + c + d
    return AWParameters(-1 + s / 2, 1 + (a + b - c - d) / 2,
                        1 + (a - b + c - d) / 2, 1 + (a - b - c + d) / 2)


def self_dual_parameters(dp: DeformationParameter) -> AWParameters:
    """The quadruple (0, 1/(2 tau), 1, 1 - 1/(2 tau))."""
    k = 1 / (2 * dp.tau)
    return AWParameters(0.0, k, 1.0, 1 - k)


def mu_eigenvalue(dp: DeformationParameter, alpha, rho) -> complex:
    """Eigenvalue of the twisted primitive element on its eigenfunctions."""
    q = dp.q
    return (q_pow(dp, rho) * (1 - q_pow(dp, alpha))
            + q_pow(dp, -rho) * (1 - q_pow(dp, -alpha))) / (q - 1 / q)


def eigenvalue_E(dp: DeformationParameter, lam, beta) -> complex:
    """Spectral eigenvalue ``-1 - q^{2-2b} + q^{1-b}(q^{2il} + q^{-2il})``."""
    L = 2j * _lam(lam)
    return (-1 - q_pow(dp, 2 - 2 * beta)
            + q_pow(dp, 1 - beta) * (q_pow(dp, L) + q_pow(dp, -L)))


def eigenvalue_from_qpower(dp: DeformationParameter, mu, beta) -> complex:
    """Same eigenvalue written through ``mu`` with ``q^{2 i lambda} = q^mu``."""
    return (-1 - q_pow(dp, 2 - 2 * beta)
            + q_pow(dp, 1 - beta) * (q_pow(dp, mu) + q_pow(dp, -mu)))


def aw_eigenvalue_degree(dp: DeformationParameter, m: int, awp: AWParameters):
    """Eigenvalue of the Askey-Wilson operator on the degree ``m`` polynomial."""
    return (q_pow(dp, -2 * m) - 1) * (1 - q_pow(dp, 2 * m - 2 + awp.total))
