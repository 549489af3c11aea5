"""q-shifted factorials, q-gamma, theta functions and basic hypergeometric
series for ``0 < |q| < 1``.

Series and products that take an explicit base expect the caller to pass
it (for the Askey-Wilson material that base is ``q**2``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (DomainError, InfiniteProductDivergent, PoleHit,
                         SeriesDivergent)
from .params import AWParameters, DeformationParameter, Regime, q_pow

EPS = 1e-14
INF = math.inf


@dataclass(frozen=True)
class SeriesValue:
    """A value with an absolute truncation-error bound."""

    value: complex
    tail_bound: float
    terms_used: int

    def __complex__(self):
        return complex(self.value)


def _n_factors(bmax: float, aq: float, eps: float) -> int:
    # smallest J with bmax*|q|^J < eps*(1-|q|)
    if bmax == 0:
        return 1
    target = eps * (1 - aq)
    if bmax < target:
        return 1
    return int(math.ceil(math.log(target / bmax) / math.log(aq))) + 1


def q_pochhammer(b, q, n=INF, eps: float = EPS) -> SeriesValue:
    """``(b; q)_n`` for finite ``n`` or ``n = inf`` (needs ``|q| < 1``)."""
    b = complex(b)
    q = complex(q)
    if n != INF:
        n = int(n)
        if n < 0:
            raise DomainError("negative length")
        val = 1 + 0j
        qj = 1 + 0j
        for _ in range(n):
            val *= 1 - b * qj
            qj *= q
        return SeriesValue(val, 0.0, max(n, 1))
    aq = abs(q)
    if aq >= 1:
        raise InfiniteProductDivergent(f"|q|={aq} >= 1")
    J = _n_factors(abs(b), aq, eps)
    val = 1 + 0j
    qj = 1 + 0j
    for _ in range(J):
        val *= 1 - b * qj
        qj *= q
    # sum_{j>=J} |b||q|^j = |b||q|^J/(1-|q|)
    rest = abs(b) * aq ** J / (1 - aq)
    return SeriesValue(val, abs(val) * math.expm1(rest), J)


def qpoch_inf(b, q, eps: float = 1e-17):
    """Vectorised ``(b; q)_inf`` returning bare complex values."""
    b = np.asarray(b, dtype=complex)
    aq = abs(q)
    if aq >= 1:
        raise InfiniteProductDivergent(f"|q|={aq} >= 1")
    J = _n_factors(float(np.max(np.abs(b))) if b.size else 0.0, aq, eps)
    out = np.ones_like(b)
    qj = 1 + 0j
    for _ in range(J):
        out = out * (1 - b * qj)
        qj *= q
    return out if out.ndim else complex(out)


def qpoch_fin(b, q, n: int):
    """Vectorised finite ``(b; q)_n``."""
    b = np.asarray(b, dtype=complex)
    out = np.ones_like(b)
    qj = 1 + 0j
    for _ in range(n):
        out = out * (1 - b * qj)
        qj *= q
    return out if out.ndim else complex(out)


def qprod(bs, q):
    """``(b1, ..., bk; q)_inf``."""
    out = 1
    for b in bs:
        out = out * qpoch_inf(b, q)
    return out


def _require_lt1(dp: DeformationParameter):
    if dp.regime is not Regime.MODULUS_LESS_ONE:
        raise DomainError("requires |q| < 1")


def q_gamma(dp: DeformationParameter, x, pole_tolerance: float = 1e-9):
    """``Gamma_tau(x) = q^{-x^2/16} / (-q^{(x+1)/2}; q)_inf``.

    Poles sit on ``-1 + 1/tau + 2 Z_{<=0} + (2/tau) Z``.  A ``PoleHit`` is
    raised when the nearest lattice point is within ``pole_tolerance``.
    """
    _require_lt1(dp)
    x = np.asarray(x, dtype=complex)
    u = (x + 1) / 2
    # near a zero of 1 + q^{u+j} the factor behaves like pi i tau (x - x0)
    J = _n_factors(float(np.max(np.abs(q_pow(dp, u)))), abs(dp.q), 1e-17)
    fac = 1 + q_pow(dp, u[..., None] + np.arange(J))
    dist = np.min(np.abs(fac), axis=-1) / (np.pi * abs(dp.tau))
    if np.any(dist < pole_tolerance):
        raise PoleHit(f"q_gamma pole near {x}")
    val = q_pow(dp, -x * x / 16) / qpoch_inf(-q_pow(dp, u), dp.q)
    return val if np.ndim(val) else complex(val)


def theta_modified(dp: DeformationParameter, z):
    """``theta(z) = (q z, q/z; q^2)_inf``."""
    _require_lt1(dp)
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("theta_modified at z = 0")
    q = dp.q
    val = qpoch_inf(q * z, q * q) * qpoch_inf(q / z, q * q)
    return val if np.ndim(val) else complex(val)


def theta_renorm(dp: DeformationParameter, x):
    """Renormalised theta ``(-q^{1+x}, -q^{1-x}; q^2)_inf``; even in x."""
    _require_lt1(dp)
    x = np.asarray(x, dtype=complex)
    Q = dp.q ** 2
    # one call so x and -x share the truncation; the averaged product is
    # exactly even even when the complex multiply is fused
    p = qpoch_inf(np.stack([-q_pow(dp, 1 + x), -q_pow(dp, 1 - x)]), Q)
    val = (p[0] * p[1] + p[1] * p[0]) / 2
    return val if np.ndim(val) else complex(val)


def _is_qneg_power(a: complex, q: complex, tol=1e-12, nmax=10 ** 4):
    """Return N if a == q^{-N} (to tol) for some 0 <= N <= nmax, else None."""
    if a == 0 or abs(q) == 0 or abs(abs(q) - 1) < 1e-15:
        return None
    # |a| = |q|^{-N} fixes the candidate N; the check below confirms it
    n = int(round(-math.log(abs(a)) / math.log(abs(q))))
    for N in (n - 1, n, n + 1):
        if 0 <= N <= nmax and abs(a - q ** (-N)) < tol * max(1.0, abs(a)):
            return N
    return None


def _generic_series(nums, dens, q, z, term_factor=None, kmax=200000,
                    rel_tol=1e-17):
    """Sum of prod (nums)_k / prod (dens)_k z^k with optional extra factor.

    Returns (value, tail_bound, terms_used).  Terminating series (a zero in
    a numerator factor) are summed exactly.
    """
    nums = [complex(v) for v in nums]
    dens = [complex(v) for v in dens]
    q = complex(q)
    z = complex(z)
    term = 1 + 0j
    total = term * (term_factor(0) if term_factor else 1)
    qk = 1 + 0j
    k = 0
    small_run = 0
    while True:
        numf = 1 + 0j
        for a in nums:
            numf *= 1 - a * qk
        if abs(numf) < 1e-300:
            return total, 0.0, k + 1
        denf = 1 + 0j
        for b in dens:
            denf *= 1 - b * qk
        if abs(denf) < 1e-13:
            raise DomainError(f"denominator parameter vanishes at k={k}")
        ratio = numf / denf * z
        term *= ratio
        k += 1
        qk *= q
        t = term * (term_factor(k) if term_factor else 1)
        total += t
        if abs(t) <= rel_tol * abs(total):
            small_run += 1
        else:
            small_run = 0
        r = abs(ratio)
        if small_run >= 3 and r < 1:
            rr = max(r, abs(z))
            if rr < 1:
                return total, abs(t) * rr / (1 - rr), k + 1
        if k >= kmax:
            rr = max(r, abs(z))
            bound = abs(t) * rr / (1 - rr) if rr < 1 else math.inf
            return total, bound, k + 1


def phi_43(a1, a2, a3, a4, b1, b2, b3, q, z) -> SeriesValue:
    """Balanced-type series ``4phi3(a1..a4; b1..b3; q, z)``."""
    nums = (a1, a2, a3, a4)
    terminating = any(_is_qneg_power(complex(a), complex(q)) is not None
                      for a in nums)
    if not terminating and abs(z) >= 1:
        raise SeriesDivergent("nonterminating 4phi3 with |z| >= 1")
    val, tb, k = _generic_series(nums, (q, b1, b2, b3), q, z)
    return SeriesValue(val, tb, k)


def w_87(u, b1, b2, b3, b4, b5, q, z, kmax=200000) -> SeriesValue:
    """Very-well-poised ``8W7(u; b1..b5; q, z)``."""
    bs = (b1, b2, b3, b4, b5)
    terminating = any(_is_qneg_power(complex(b), complex(q)) is not None
                      for b in bs)
    if not terminating and abs(z) >= 1:
        raise SeriesDivergent(f"8W7 needs |z| < 1, got {abs(z)}")
    u = complex(u)
    q = complex(q)
    wp = lambda k: (1 - u * q ** (2 * k)) / (1 - u)
    nums = (u,) + tuple(bs)
    dens = (q,) + tuple(q * u / complex(b) for b in bs)
    val, tb, k = _generic_series(nums, dens, q, z, term_factor=wp, kmax=kmax)
    return SeriesValue(val, tb, k)


def aw_polynomials(M: int, x, awp: AWParameters, dp: DeformationParameter):
    """Askey-Wilson polynomials ``E_0 .. E_M`` at ``x`` (base ``q^2``).

    Normalised by ``E_m(a) = 1``.  Computed by the three-term recurrence,
    which stays accurate where the hypergeometric terms would cancel.
    Returns an array of shape ``(M+1,) + shape(x)``.
    """
    _require_lt1(dp)
    x = np.asarray(x, dtype=complex)
    Q = dp.q ** 2
    A, B, C, D = (q_pow(dp, p) for p in awp.as_tuple())
    ABCD = A * B * C * D
    X2 = q_pow(dp, x) + q_pow(dp, -x)
    out = np.empty((M + 1,) + x.shape, dtype=complex)
    out[0] = 1
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for n in range(M):
        Qn = Q ** n
        if n == 0:
            den = A * (1 - ABCD)
            An = (1 - A * B) * (1 - A * C) * (1 - A * D)
            Cn = 0
        else:
            den = A * (1 - ABCD * Q ** (2 * n - 1)) * (1 - ABCD * Q ** (2 * n))
            An = ((1 - A * B * Qn) * (1 - A * C * Qn) * (1 - A * D * Qn)
                  * (1 - ABCD * Q ** (n - 1)))
            Cn = (A * (1 - Qn) * (1 - B * C * Q ** (n - 1))
                  * (1 - B * D * Q ** (n - 1)) * (1 - C * D * Q ** (n - 1))
                  / ((1 - ABCD * Q ** (2 * n - 2))
                     * (1 - ABCD * Q ** (2 * n - 1))))
        if abs(den) < 1e-14 or abs(An) < 1e-14 * abs(den):
            raise DomainError(f"recurrence degenerates at n={n}")
        An = An / den
        nxt = (X2 * cur - (A + 1 / A - (An + Cn)) * cur - Cn * prev) / An
        prev, cur = cur, nxt
        out[n + 1] = cur
    return out


def aw_polynomial(m: int, x, awp: AWParameters, dp: DeformationParameter):
    """Single Askey-Wilson polynomial ``E_m(x; a, b, c, d)``."""
    v = aw_polynomials(m, x, awp, dp)[m]
    return v if np.ndim(v) else complex(v)


def aw_polynomial_series(m: int, x, awp: AWParameters,
                         dp: DeformationParameter) -> SeriesValue:
    """``E_m`` through its terminating 4phi3; fine for small degrees."""
    a, b, c, d = awp.as_tuple()
    Q = dp.q ** 2
    return phi_43(q_pow(dp, -2 * m), q_pow(dp, 2 * m - 2 + a + b + c + d),
                  q_pow(dp, a + x), q_pow(dp, a - x),
                  q_pow(dp, a + b), q_pow(dp, a + c), q_pow(dp, a + d), Q, Q)


def aw_weight(x, awp: AWParameters, dp: DeformationParameter):
    """Orthogonality weight in the additive variable.

    ``(q^{2x}, q^{-2x}; q^2) / prod_e (q^{e+x}, q^{e-x}; q^2)`` over the four
    parameters ``e``.
    """
    x = np.asarray(x, dtype=complex)
    Q = dp.q ** 2
    num = qpoch_inf(q_pow(dp, 2 * x), Q) * qpoch_inf(q_pow(dp, -2 * x), Q)
    den = 1
    for e in awp.as_tuple():
        den = den * qpoch_inf(q_pow(dp, e + x), Q) * qpoch_inf(q_pow(dp, e - x), Q)
    return num / den
