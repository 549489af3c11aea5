"""Hyperbolic gamma function ``G_tau`` for real ``tau < 0``.

Inside the strip ``|Re z| < 1 - 1/tau`` we use the integral

    gamma_tau(z) = (1/2i) int_0^inf (z/y - sinh(tau y z)/(sinh y sinh tau y)) dy/y

and ``G_tau = exp(i gamma_tau)``.  The integrand is even and analytic in a
strip around the real y-axis, so the trapezoid rule on the whole line
converges geometrically.  The ``z/y^2`` counterterm is summed in closed form
(``sum 1/j^2 = pi^2/6``), which removes both the 0/0 cancellation at the
origin and the slow algebraic tail.

Outside the strip ``G_tau(z+2) = 2 cos(pi (z+1) tau / 2) G_tau(z)`` moves the
argument back.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numba as nb
import numpy as np

from .exceptions import CapExceeded, DomainError, PoleHit, StripViolation, ZeroHit

ACC_EXP = 40.0      # target: trapezoid errors ~ exp(-ACC_EXP)
MAX_SHIFTS = 10 ** 4


@nb.njit(cache=True)
def _R_over_y(y, z, s):
    # sinh(s y z)/(y sinh(y) sinh(s y)), written to stay finite for large y
    R = 2 * (cmath.exp(s * y * (z - 1) - y) - cmath.exp(-s * y * (z + 1) - y)) \
        / (math.expm1(-2 * s * y) * math.expm1(-2 * y))
    return R / y


@nb.njit(cache=True)
def _log_gamma_strip(zs, s, acc_exp):
    out = np.empty(zs.shape[0], np.complex128)
    d = 0.9 * min(math.pi, math.pi / s)     # half-width of analyticity in y
    for k in range(zs.shape[0]):
        z = zs[k]
        h = 2 * math.pi * d / (acc_exp + s * abs(z.imag) * d)
        kap = 1 + s - s * abs(z.real)       # decay rate of the sinh ratio
        Y = (acc_exp + math.log(1 + abs(z))) / kap
        K = int(math.ceil(Y / h))
        f0 = -(z / 6) * (s * s * z * z - 1 - s * s)
        acc = 0j
        for j in range(K, 0, -1):           # small terms first
            acc += _R_over_y(j * h, z, s)
        val = h * (0.5 * f0 - acc) + z * math.pi ** 2 / (6 * h)
        out[k] = val / 2j
    return out


@dataclass(frozen=True)
class HypGammaContext:
    """Settings for ``G_tau``.

    ``quadrature_nodes`` caps the trapezoid length per evaluation and
    ``strip_margin`` keeps integral evaluations off the strip boundary.
    """

    tau: float
    quadrature_nodes: int = 20000
    strip_margin: float = 1e-3
    pole_tolerance: float = 1e-9
    zero_tolerance: float = 1e-9

    def __post_init__(self):
        t = complex(self.tau)
        if t.imag != 0 or not t.real < 0:
            raise DomainError(f"hyperbolic gamma needs real tau < 0, got {self.tau}")
        object.__setattr__(self, "tau", float(t.real))

    @property
    def strip_halfwidth(self) -> float:
        return 1 - 1 / self.tau

    def with_tau(self, tau) -> "HypGammaContext":
        return HypGammaContext(tau, self.quadrature_nodes, self.strip_margin,
                               self.pole_tolerance, self.zero_tolerance)


def hyp_log_gamma(ctx: HypGammaContext, z):
    """``gamma_tau(z)`` from the integral; only inside the strip."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z.real) >= ctx.strip_halfwidth - ctx.strip_margin):
        raise StripViolation(
            f"|Re z| must stay below {ctx.strip_halfwidth - ctx.strip_margin}")
    s = -ctx.tau
    d = 0.9 * min(math.pi, math.pi / s)
    h = 2 * math.pi * d / (ACC_EXP + s * np.abs(z.imag) * d)
    kap = 1 + s - s * np.abs(z.real)
    nodes = (ACC_EXP + np.log1p(np.abs(z))) / kap / h
    if np.any(nodes > ctx.quadrature_nodes):
        raise CapExceeded("trapezoid rule would exceed quadrature_nodes")
    flat = np.ascontiguousarray(z.ravel())
    out = _log_gamma_strip(flat, s, ACC_EXP).reshape(z.shape)
    return out if out.ndim else complex(out)


def _cos_factor(w, tau):
    return 2 * np.cos(np.pi * (w + 1) * tau / 2)


def hyp_log_G(ctx: HypGammaContext, z):
    """``log G_tau(z)`` (defined modulo ``2 pi i``) on the whole plane.

    Points are shifted by even integers into ``|Re w| <= 1`` and the
    cosine factors of the difference equation are accumulated.
    """
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    n = np.round(flat.real / 2)
    w = flat - 2 * n
    nmax = int(np.max(np.abs(n))) if flat.size else 0
    if nmax > MAX_SHIFTS:
        raise CapExceeded("continuation needs more than 10^4 shifts")
    out = 1j * hyp_log_gamma(ctx, w) if flat.size else np.zeros(0, complex)
    out = np.asarray(out, dtype=complex)
    tau = ctx.tau
    for j in range(nmax):
        fwd = n > j
        if np.any(fwd):
            c = _cos_factor(w[fwd] + 2 * j, tau)
            if np.any(np.abs(c) < ctx.zero_tolerance):
                raise ZeroHit("argument on the zero lattice of G")
            out[fwd] += np.log(c)
        bwd = -n > j
        if np.any(bwd):
            c = _cos_factor(w[bwd] - 2 * j - 2, tau)
            if np.any(np.abs(c) < ctx.pole_tolerance):
                raise PoleHit("argument on the pole lattice of G")
            out[bwd] -= np.log(c)
    out = out.reshape(z.shape)
    return out if out.ndim else complex(out)


def hyp_gamma(ctx: HypGammaContext, z):
    """Meromorphic ``G_tau(z)``."""
    v = np.exp(hyp_log_G(ctx, z))
    return v if np.ndim(v) else complex(v)


@dataclass(frozen=True)
class Lattice:
    """Points ``anchor + step_re*m + step_tau*n`` with ``m, n >= 0``."""

    anchor: float
    step_re: float
    step_tau: float

    def points(self, count: int = 40):
        m, n = np.meshgrid(np.arange(count), np.arange(count))
        return np.unique((self.anchor + self.step_re * m + self.step_tau * n).ravel())

    def distance(self, z, count: int = 60) -> float:
        return float(np.min(np.abs(complex(z) - self.points(count))))


def zero_pole_lattices(ctx: HypGammaContext):
    """(zeros, poles) of ``G_tau``.

    Zeros: ``1 - 1/tau + 2 Z_{>=0} + (2/tau) Z_{<=0}``; poles are their
    negatives.  With real tau both sets are real half-lattices.
    """
    t = ctx.tau
    zeros = Lattice(1 - 1 / t, 2.0, -2 / t)
    poles = Lattice(-1 + 1 / t, -2.0, 2 / t)
    return zeros, poles


def asymptotic_log_gamma(ctx: HypGammaContext, z, sign: int):
    """Leading behaviour of ``gamma_tau(z)`` as ``Im z -> sign * inf``.

    ``sign * (pi tau z^2 / 8 - pi (tau + 1/tau) / 24)``; the branch was fixed
    by comparison with the integral at moderate ``|Im z|``.
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    t = ctx.tau
    z = np.asarray(z, dtype=complex)
    v = sign * (np.pi * t * z * z / 8 - np.pi * (t + 1 / t) / 24)
    return v if np.ndim(v) else complex(v)
