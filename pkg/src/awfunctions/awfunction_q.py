"""Eigenfunctions of the Askey-Wilson operator for ``0 < q < 1``.

Matrix coefficients are contour integrals of ratios of infinite products in
base ``q**2``.  The contour has to separate the increasing pole sequences
(from factors ``(c z; q^2)``) from the decreasing ones (factors
``(c/z; q^2)``).  For general real parameters the unit circle does not do
this, so :func:`separated_circle_integral` integrates over a convenient
circle and adds or removes the residues of poles on the wrong side.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (DomainError, NonConvergence, SeriesDivergent,
                         ThetaZero, WindowViolation)
from .params import (AWParameters, DeformationParameter, GroupParameters,
                     Regime, dual_aw_parameters, dual_parameters,
                     link_parameters, q_pow, _lam)
from .qseries import aw_polynomials, q_gamma, qpoch_fin, qpoch_inf, qprod, w_87


class Form(enum.Enum):
    CIRCLE_INTEGRAL = "CircleIntegral"
    CLOSED_W87 = "ClosedW87"
    EXPANSION = "Expansion"


@dataclass(frozen=True)
class AWFunctionRequest:
    dp: DeformationParameter
    gp: GroupParameters
    lam: complex
    form: Form = Form.CIRCLE_INTEGRAL

    def window(self) -> str:
        """Check the parameter window and name the one that holds."""
        if not self.dp.purely_imaginary:
            raise WindowViolation("need tau purely imaginary (0 < q < 1)")
        al, rh, be, si = (complex(v) for v in self.gp.as_tuple())
        lam = complex(self.lam)
        if lam.imag != 0:
            raise WindowViolation("lambda must be real")
        if any(v.imag != 0 for v in (al, rh, be, si)):
            raise WindowViolation("group parameters must be real")
        if rh.real < 3 or si.real < 3:
            raise WindowViolation("need rho, sigma >= 3")
        if al.real <= 0 or be.real <= 0:
            raise WindowViolation("need alpha, beta > 0")
        even = all(abs(v.real / 2 - round(v.real / 2)) < 1e-12 for v in (al, be))
        return "even-integer" if even else "continuous"


# ---------------------------------------------------------------------------
# twisted primitive eigenfunctions

def f_lambda(z, alpha, rho, lam, dp: DeformationParameter):
    """Quotient of four ``Gamma_{2 tau}`` values; eigenfunction of ``Y_rho``."""
    L = 1j * _lam(lam)
    k = 1 / (2 * dp.tau)
    dp2 = dp.doubled()
    z = np.asarray(z, dtype=complex)
    v = (q_gamma(dp2, -1 - k + alpha + rho - L + z) * q_gamma(dp2, -k + rho - L - z)
         / (q_gamma(dp2, 1 - k + alpha + rho + L - z) * q_gamma(dp2, -k + rho + L + z)))
    return v if np.ndim(v) else complex(v)


def f_lambda_product(z, alpha, rho, lam, dp: DeformationParameter):
    """q-factorial form of :func:`f_lambda`, without its constant."""
    L = 1j * _lam(lam)
    Q = dp.q ** 2
    qp = lambda u: q_pow(dp, u)
    z = np.asarray(z, dtype=complex)
    v = (qpoch_inf(qp(2 + alpha + rho + L - z), Q) * qpoch_inf(qp(1 + rho + L + z), Q)
         / (qpoch_inf(qp(alpha + rho - L + z), Q) * qpoch_inf(qp(1 + rho - L - z), Q))
         * qp(-alpha * z / 2))
    return v if np.ndim(v) else complex(v)


def first_order_ratio(z, alpha, rho, lam, dp: DeformationParameter):
    """Required ratio ``f(z+2)/f(z)`` for eigenfunctions of ``Y_rho``."""
    L = 1j * _lam(lam)
    t = dp.tau
    s = lambda u: np.sin(np.pi * u * t)
    z = np.asarray(z, dtype=complex)
    return (s(-L - alpha - rho + z) * s(-L + alpha + rho + z)
            / (s(L - rho + 1 + z) * s(L + rho + 1 + z)))


def first_order_ratio_conj(z, alpha, rho, lam, dp: DeformationParameter):
    """Required ratio ``f(z-2)/f(z)`` for eigenfunctions of the
    ``circ``-twisted element under ``pi_{-lambda}``."""
    L = 1j * _lam(lam)
    t = dp.tau
    s = lambda u: np.sin(np.pi * u * t)
    z = np.asarray(z, dtype=complex)
    return (s(L + alpha + rho - z) * s(-L + alpha + rho + z)
            / (s(L + rho - 1 + z) * s(-L + rho + 1 - z)))


# ---------------------------------------------------------------------------
# circle integrals with residue bookkeeping

@dataclass(frozen=True)
class ProductIntegrand:
    """``prod (c z)(c'/z) / prod (d z)(d'/z)`` over base ``Q``.

    ``den_z`` produce poles tending to infinity (must lie outside the
    contour), ``den_iz`` poles tending to zero (must lie inside).
    """

    num_z: tuple
    num_iz: tuple
    den_z: tuple
    den_iz: tuple
    Q: complex

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        Q = self.Q
        out = np.ones_like(z)
        for c in self.num_z:
            out = out * qpoch_inf(c * z, Q)
        for c in self.num_iz:
            out = out * qpoch_inf(c / z, Q)
        for c in self.den_z:
            out = out / qpoch_inf(c * z, Q)
        for c in self.den_iz:
            out = out / qpoch_inf(c / z, Q)
        return out

    def _without(self, z0, group, idx, k):
        # full integrand at z0 with the vanishing factor left out
        Q = self.Q
        val = 1 + 0j
        for c in self.num_z:
            val *= qpoch_inf(c * z0, Q)
        for c in self.num_iz:
            val *= qpoch_inf(c / z0, Q)
        for g, cs in (("z", self.den_z), ("iz", self.den_iz)):
            for i, c in enumerate(cs):
                arg = c * z0 if g == "z" else c / z0
                if g == group and i == idx:
                    p = qpoch_fin(arg, Q, k) * qpoch_inf(arg * Q ** (k + 1), Q)
                else:
                    p = qpoch_inf(arg, Q)
                val /= p
        return val

    def pole_logmods(self, kmax=40):
        lQ = math.log(abs(self.Q))
        out = []
        for c in self.den_z:
            out += [-k * lQ - math.log(abs(c)) for k in range(kmax)]
        for c in self.den_iz:
            out += [math.log(abs(c)) + k * lQ for k in range(kmax)]
        return np.array(out)

    def residue_correction(self, r: float, kmax=400):
        """Residues of ``f(z)/z`` at poles on the wrong side of ``|z| = r``."""
        Q = self.Q
        corr = 0j
        for i, c in enumerate(self.den_z):
            for k in range(kmax):
                z0 = Q ** (-k) / c
                if abs(z0) >= r:
                    break
                corr -= self._without(z0, "z", i, k) / (-c * Q ** k) / z0
        for i, c in enumerate(self.den_iz):
            for k in range(kmax):
                z0 = c * Q ** k
                if abs(z0) <= r:
                    break
                corr += self._without(z0, "iz", i, k)
        return corr


def _pick_radius(f: ProductIntegrand) -> float:
    # put the circle in the widest gap of pole moduli near |z| = 1
    lQ = abs(math.log(abs(f.Q)))
    logs = np.sort(f.pole_logmods())
    cand = np.linspace(-lQ, lQ, 401)
    dist = np.min(np.abs(cand[:, None] - logs[None, :]), axis=1)
    return float(math.exp(cand[int(np.argmax(dist))]))


def separated_circle_integral(f: ProductIntegrand, rel_tol=1e-13,
                              n_start=256, n_max=2 ** 16, radius=None):
    """``(1/2 pi i) int f(z) dz/z`` over a contour separating the two pole
    families.  Returns ``(value, nodes_used)``."""
    r = radius or _pick_radius(f)
    corr = f.residue_correction(r)
    n = n_start
    prev = None
    while n <= n_max:
        z = r * np.exp(2j * np.pi * np.arange(n) / n)
        val = np.mean(f(z)) + corr
        if prev is not None and abs(val - prev) <= rel_tol * max(abs(val), 1e-300):
            return val, n
        prev = val
        n *= 2
    raise NonConvergence(f"trapezoid rule not converged with {n_max} nodes")


def _integrand(x, req: AWFunctionRequest) -> ProductIntegrand:
    al, rh, be, si = req.gp.as_tuple()
    L = 1j * complex(req.lam)
    qp = lambda u: q_pow(req.dp, u)
    return ProductIntegrand(
        num_z=(qp(1 - al - rh + be + L), qp(2 + si + L + x), qp(2 + al + rh - L)),
        num_iz=(qp(1 + be + si + L - x), qp(1 + al + rh - be - L)),
        den_z=(qp(1 - rh + L), qp(1 + rh + L), qp(1 + be + si - L + x)),
        den_iz=(qp(al + rh + L), qp(si - L - x)),
        Q=req.dp.q ** 2)


def _vectorize(fun, x):
    x = np.asarray(x, dtype=complex)
    out = np.array([fun(complex(v)) for v in x.ravel()]).reshape(x.shape)
    return out if out.ndim else complex(out)


def phi_lambda(x, req: AWFunctionRequest, check_window=True):
    """Matrix coefficient with the free constant set to 1.

    ``q^{-beta x/2}`` times the separated circle integral of the
    continuous-parameter integrand.
    """
    if check_window:
        req.window()
    be = req.gp.beta

    def one(xv):
        if abs(xv.real) > 2 + 1e-12:
            raise DomainError("matrix coefficient defined for |Re x| <= 2")
        val, _ = separated_circle_integral(_integrand(xv, req))
        return q_pow(req.dp, -be * xv / 2) * val
    return _vectorize(one, x)


def phi_lambda_circle(x, req: AWFunctionRequest, n=1024):
    """Unit-circle form carrying ``z^{(alpha-beta)/2}``; needs
    ``(alpha - beta)/2`` integral."""
    al, rh, be, si = req.gp.as_tuple()
    p = (al - be) / 2
    if abs(p - round(p.real)) > 1e-12:
        raise WindowViolation("need alpha - beta in 2Z")
    p = int(round(p.real))
    L = 1j * complex(req.lam)
    qp = lambda u: q_pow(req.dp, u)
    Q = req.dp.q ** 2
    z = np.exp(2j * np.pi * np.arange(n) / n)

    def one(xv):
        f = ProductIntegrand(
            num_z=(qp(2 + si + L + xv), qp(2 + al + rh - L)),
            num_iz=(qp(1 + be + si + L - xv), qp(1 + rh - L)),
            den_z=(qp(1 + be + si - L + xv), qp(1 + rh + L)),
            den_iz=(qp(si - L - xv), qp(al + rh + L)), Q=Q)
        return qp(-be * xv / 2) * np.mean(f(z) * z ** p)
    return _vectorize(one, x)


def phi_lambda_pairing(x, req: AWFunctionRequest, n=256):
    """Matrix coefficient as the pairing integral over ``y in [0, 1]``.

    Needs ``alpha, beta`` in ``2Z`` so that the integrand is periodic.
    """
    al, rh, be, si = req.gp.as_tuple()
    for v in (al, be):
        if abs(v / 2 - round(complex(v).real / 2)) > 1e-12:
            raise WindowViolation("pairing form needs alpha, beta in 2Z")
    dp2 = req.dp.doubled()
    k = 1 / (2 * req.dp.tau)
    L = 1j * complex(req.lam)
    y = np.arange(n) / n
    w = y / req.dp.tau

    def one(xv):
        G = lambda u: q_gamma(dp2, u)
        num = (G(-k + be + si - L + xv + w) * G(-1 - k + si - L - xv - w)
               * G(-1 + k + al + rh + L - w) * G(k + rh + L + w))
        den = (G(-k + be + si + L - xv - w) * G(1 - k + si + L + xv + w)
               * G(1 + k + al + rh - L + w) * G(k + rh - L - w))
        return np.mean(num / den)
    return _vectorize(one, x)


def F_prefactor(x, gp: GroupParameters, dp: DeformationParameter):
    al, rh, be, si = gp.as_tuple()
    qp = lambda u: q_pow(dp, u)
    Q = dp.q ** 2
    return (qpoch_inf(qp(1 + rh + si - x), Q) * qpoch_inf(qp(1 - rh + si - x), Q)
            / (qpoch_inf(qp(1 - al - rh + be + si - x), Q)
               * qpoch_inf(qp(1 + al + rh + be + si - x), Q)))


def F_script(x, req: AWFunctionRequest, check_window=True):
    """Gauged matrix coefficient: product prefactor times circle integral."""
    if check_window:
        req.window()

    def one(xv):
        val, _ = separated_circle_integral(_integrand(xv, req))
        return F_prefactor(xv, req.gp, req.dp) * val
    return _vectorize(one, x)


def closed_W87_constant(req: AWFunctionRequest) -> complex:
    al, rh, be, si = req.gp.as_tuple()
    L2 = 2j * complex(req.lam)
    qp = lambda u: q_pow(req.dp, u)
    Q = req.dp.q ** 2
    num = qprod([qp(2 + 2 * si), qp(2 + al + 2 * rh - be),
                 qp(2 + al + 2 * rh + be + 2 * si), qp(1 + be + L2),
                 qp(1 + al - L2)], Q)
    den = qprod([Q, qp(1 + al + L2), qp(1 + al + 2 * rh + L2),
                 qp(1 + be + 2 * si - L2), qp(3 + al + 2 * rh + 2 * si + L2)], Q)
    if abs(den) < 1e-300:
        raise DomainError("constant has a vanishing denominator")
    return complex(num / den)


def F_closed(x, req: AWFunctionRequest, with_constant=True):
    """Very-well-poised closed form of :func:`F_script`."""
    a, b, c, d = link_parameters(req.gp).as_tuple()
    at, bt, ct, dt = dual_parameters(req.gp).as_tuple()
    L2 = 2j * complex(req.lam)
    qp = lambda u: q_pow(req.dp, u)
    Q = req.dp.q ** 2
    C = closed_W87_constant(req) if with_constant else 1.0

    def one(xv):
        pre = (qprod([qp(2 + a - dt + L2 + xv), qp(2 + a - dt + L2 - xv)], Q)
               / qprod([qp(2 - d + xv), qp(2 - d - xv)], Q))
        w = w_87(qp(-2 + at + bt + ct + L2), qp(a + xv), qp(a - xv),
                 qp(at + L2), qp(bt + L2), qp(ct + L2), Q, qp(2 - dt - L2))
        return C * pre * w.value
    return _vectorize(one, x)


# ---------------------------------------------------------------------------
# normalised Askey-Wilson function

def _E_closed(mu, x, awp, dp):
    a, b, c, d = awp.as_tuple()
    at, bt, ct, dt = dual_aw_parameters(awp).as_tuple()
    qp = lambda u: q_pow(dp, u)
    Q = dp.q ** 2
    zarg = qp(2 - dt - mu)
    if abs(zarg) >= 1:
        raise SeriesDivergent("closed form needs |q^{2 - d~ - mu}| < 1")
    pre = (qprod([qp(2 + a - dt + mu + x), qp(2 + a - dt + mu - x),
                  qp(2 - a - d), qp(2 + a - d)], Q)
           / qprod([qp(at + bt + ct + mu), qp(2 - dt + mu), qp(2 - d + x),
                    qp(2 - d - x)], Q))
    w = w_87(qp(-2 + at + bt + ct + mu), qp(a + x), qp(a - x), qp(at + mu),
             qp(bt + mu), qp(ct + mu), Q, zarg)
    return pre * w.value


def expansion_terms(mu, x, awp: AWParameters, dp: DeformationParameter,
                    m_max=400):
    """Summands of the polynomial expansion, prefactor excluded."""
    a, b, c, d = awp.as_tuple()
    at, bt, ct, dt = dual_aw_parameters(awp).as_tuple()
    qp = lambda u: q_pow(dp, u)
    Q = dp.q ** 2
    S = a + b + c - d
    Ex = aw_polynomials(m_max, x, AWParameters(a, b, c, 2 - d), dp)
    Em = aw_polynomials(m_max, mu, AWParameters(at, bt, ct, 2 - dt), dp)
    m = np.arange(m_max + 1)
    cf = np.empty(m_max + 1, dtype=complex)
    cf[0] = 1
    # running products (q^{S+2}; Q)_{m-1} (q^{a+b}, q^{a+c}; Q)_m / (Q, q^{2+b-d}, q^{2+c-d}; Q)_m
    run = 1 + 0j
    for j in range(1, m_max + 1):
        run *= ((1 - qp(a + b) * Q ** (j - 1)) * (1 - qp(a + c) * Q ** (j - 1))
                / ((1 - Q ** j) * (1 - qp(2 + b - d) * Q ** (j - 1))
                   * (1 - qp(2 + c - d) * Q ** (j - 1))))
        if j >= 2:
            run *= 1 - qp(S + 2) * Q ** (j - 2)
        cf[j] = (1 - qp(4 * j + S)) * run
    sign = (-1.0) ** m
    return Ex * Em * cf * sign * qp((1 - a - d) * m) * qp(m * m)


def _E_expansion(mu, x, awp, dp):
    a, b, c, d = awp.as_tuple()
    at, bt, ct, dt = dual_aw_parameters(awp).as_tuple()
    qp = lambda u: q_pow(dp, u)
    Q = dp.q ** 2
    S = a + b + c - d
    pre = (qprod([qp(2 - a - d), qp(2 + a - d), qp(b + c), qp(2 + b - d),
                  qp(2 + c - d)], Q)
           / qprod([qp(2 + S), qp(2 - d + x), qp(2 - d - x), qp(2 - dt + mu),
                    qp(2 - dt - mu)], Q))
    m_max = 24
    while True:
        t = expansion_terms(mu, x, awp, dp, m_max)
        partial = np.cumsum(t)
        small = np.abs(t) < 1e-16 * (1 + np.abs(partial))
        idx = np.nonzero(small & (np.arange(m_max + 1) >= 10))[0]
        if idx.size:
            return pre * partial[idx[0]]
        if m_max > 800:
            raise NonConvergence("expansion did not reach its truncation rule")
        m_max *= 2


def E_plus(mu, x, awp: AWParameters, dp: DeformationParameter,
           form: Form = Form.EXPANSION):
    """Normalised Askey-Wilson function."""
    if dp.regime is not Regime.MODULUS_LESS_ONE:
        raise DomainError("requires |q| < 1")
    mu_a = np.asarray(mu, dtype=complex)
    x_a = np.asarray(x, dtype=complex)
    mu_b, x_b = np.broadcast_arrays(mu_a, x_a)
    fun = _E_closed if form is Form.CLOSED_W87 else _E_expansion
    out = np.array([fun(complex(m), complex(v), awp, dp)
                    for m, v in zip(mu_b.ravel(), x_b.ravel())]).reshape(mu_b.shape)
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# elliptic cosine kernel

def _theta(dp, x):
    Q = dp.q ** 2
    return qpoch_inf(-q_pow(dp, 1 + x), Q) * qpoch_inf(-q_pow(dp, 1 - x), Q)


def _theta_nonzero(*vals):
    for v in vals:
        if np.any(np.abs(v) < 1e-14):
            raise ThetaZero("theta vanishes")


def elliptic_cosine(mu, x, dp: DeformationParameter):
    mu = np.asarray(mu, dtype=complex)
    x = np.asarray(x, dtype=complex)
    Q = dp.q ** 2
    tm, tx = _theta(dp, mu), _theta(dp, x)
    _theta_nonzero(tm, tx)
    c = qpoch_inf(-dp.q, Q) ** 2 / 2
    v = c * (_theta(dp, mu + x) + _theta(dp, mu - x)) / (tm * tx)
    return v if np.ndim(v) else complex(v)


def E0_kernel(mu, x, dp: DeformationParameter):
    mu = np.asarray(mu, dtype=complex)
    x = np.asarray(x, dtype=complex)
    Q = dp.q ** 2
    tm, tx = _theta(dp, mu), _theta(dp, x)
    _theta_nonzero(tm, tx)
    v = qpoch_inf(-dp.q, Q) ** 2 * _theta(dp, mu + x) / (tm * tx)
    return v if np.ndim(v) else complex(v)
