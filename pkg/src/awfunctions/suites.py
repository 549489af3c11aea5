"""Verification suites: named identity checks with measured residuals.

Each suite returns a :class:`SuiteReport`.  Checks whose name starts with
``probe:`` sample an analytic claim (periodicity, decay, contour admissibility)
on a finite set of points; they are evidence, not proofs.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .awfunction_hyp import (build_contour, check_contour, g_lambda,
                             h_lambda, psi_lambda, singular_half_lines)
from .awfunction_q import (AWFunctionRequest, E0_kernel, E_plus, F_closed,
                           F_script, Form, elliptic_cosine, f_lambda,
                           first_order_ratio, first_order_ratio_conj,
                           phi_lambda)
from .awop import (apply_D, apply_D_values, apply_L, apply_L_values,
                   gauge_Delta, gauge_delta_hyp, hecke_T0, hecke_T1,
                   hecke_quadratic_residual, residual)
from .exceptions import ConfigError
from .hypgamma import (HypGammaContext, asymptotic_log_gamma, hyp_gamma,
                       hyp_log_gamma)
from .params import (AWParameters, DeformationParameter, GroupParameters,
                     aw_eigenvalue_degree, dual_aw_parameters, eigenvalue_E,
                     link_parameters, mu_eigenvalue, q_pow,
                     self_dual_parameters)
from .qseries import (aw_polynomials, aw_polynomial_series, q_gamma,
                      theta_modified, theta_renorm, qpoch_inf)
from .repverify import (Gen, Shift, appendix_identity_check,
                        bilinear_adjointness_check, casimir_apply,
                        casimir_scalar, laurent_basis, mu_relation_residual,
                        pairing_adjointness_check, pi_apply,
                        twisted_primitive_apply, twisted_primitive_circ_apply,
                        word)

DEFAULT_SEED = 20040101
SUITES = ("gamma", "hypgamma", "awq", "awhyp", "rep")


@dataclass(frozen=True)
class Check:
    name: str
    paper_ref: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual < self.tolerance)

    def as_dict(self):
        d = asdict(self)
        d["residual"] = float(self.residual)
        d["pass"] = self.passed
        return d


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, ref, res, tol):
        self.checks.append(Check(name, ref, float(res), tol))

    def as_dict(self):
        return {"suite": self.suite, "seed": self.seed,
                "checks": [c.as_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


@dataclass(frozen=True)
class SuiteOptions:
    """Parameter overrides; ``None`` keeps the suite default."""

    tau: complex | None = None
    gp: GroupParameters | None = None
    lam: float | None = None
    awp: AWParameters | None = None
    tol_scale: float = 1.0


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def _box(rng, n, re=1.0, im=1.0):
    return rng.uniform(-re, re, n) + 1j * rng.uniform(-im, im, n)


# ---------------------------------------------------------------------------

def suite_gamma(rng, opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("gamma", 0)
    dp = DeformationParameter(opt.tau if opt.tau is not None else 0.3j)
    s = opt.tol_scale
    x = _box(rng, 100)
    lhs = q_gamma(dp, x + 2)
    rhs = 2 * np.cos(np.pi * (x + 1) * dp.tau / 2) * q_gamma(dp, x)
    rep.add("qgamma_difference_equation", "q-gamma two-step cosine difference equation",
            _rel(lhs, rhs), 1e-10 * s)
    if dp.purely_imaginary:
        rep.add("qgamma_conjugation", "q-gamma conjugation symmetry",
                _rel(np.conj(q_gamma(dp, x)), q_gamma(dp, np.conj(x))), 1e-12 * s)
    z = np.exp(_box(rng, 20, 0.5, math.pi))
    q = dp.q
    worst = 0.0
    for k in (-2, -1, 1, 2):
        lhs = theta_modified(dp, q ** (2 * k) * z)
        rhs = (-z) ** (-k) * q ** (-k * k) * theta_modified(dp, z)
        worst = max(worst, residual(lhs, rhs))
    rep.add("theta_functional_equation", "modified theta functional equation",
            worst, 1e-11 * s)
    xs = _box(rng, 50)
    rep.add("theta_quasi_periodicity", "renormalised theta quasi-periodicity",
            residual(theta_renorm(dp, xs + 2), q_pow(dp, -1 - xs) * theta_renorm(dp, xs)),
            1e-11 * s)
    m = np.arange(1, 80)[:, None]
    series = 1 + 2 * np.sum(np.cos(2 * np.pi * m * dp.tau * xs) * q ** (m * m), axis=0)
    rep.add("jacobi_triple_product", "Jacobi triple product",
            residual(series, qpoch_inf(q ** 2, q ** 2) * theta_renorm(dp, xs)), 1e-11 * s)
    sd = self_dual_parameters(dp)
    grid = np.linspace(0, 1, 50) / dp.tau
    E = aw_polynomials(10, grid, sd, dp)
    cosines = np.cos(2 * np.pi * np.arange(11)[:, None] * dp.tau * grid)
    rep.add("cosine_specialisation", "Askey-Wilson polynomials at the self-dual point",
            float(np.max(np.abs(E - cosines))), 1e-10 * s)
    awp = opt.awp or AWParameters(*rng.uniform(0.2, 0.9, 4))
    E = aw_polynomials(8, xs, awp, dp)
    Em = aw_polynomials(8, -xs, awp, dp)
    rep.add("aw_polynomial_even", "polynomial in q^x + q^-x", residual(E, Em), 1e-12 * s)
    worst = 0.0
    for deg in range(4):
        ser = [aw_polynomial_series(deg, v, awp, dp).value for v in xs]
        worst = max(worst, residual(E[deg], ser))
    rep.add("aw_recurrence_vs_4phi3", "terminating 4phi3 definition", worst, 1e-8 * s)
    rep.add("aw_normalisation", "E_m(a) = 1",
            float(np.max(np.abs(aw_polynomials(8, awp.a, awp, dp) - 1))), 1e-11 * s)
    return rep


def suite_hypgamma(rng, opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("hypgamma", 0)
    tau = float(np.real(opt.tau)) if opt.tau is not None else -0.35
    ctx = HypGammaContext(tau)
    s = opt.tol_scale
    z = _box(rng, 100, 3.0, 1.5)
    lhs = hyp_gamma(ctx, z + 2)
    rhs = 2 * np.cos(np.pi * (z + 1) * tau / 2) * hyp_gamma(ctx, z)
    rep.add("difference_equation", "hyperbolic gamma difference equation",
            residual(lhs, rhs), 1e-8 * s)
    rep.add("reflection", "G(z) G(-z) = 1",
            residual(hyp_gamma(ctx, z) * hyp_gamma(ctx, -z), 1), 1e-8 * s)
    zs = _box(rng, 100, 1.5, 1.5)
    rep.add("modular_symmetry", "G_tau(z) = G_{1/tau}(-tau z)",
            residual(hyp_gamma(ctx, zs), hyp_gamma(ctx.with_tau(1 / tau), -tau * zs)),
            1e-8 * s)
    rep.add("conjugation", "conj G(z) = G(conj z)",
            residual(np.conj(hyp_gamma(ctx, zs)), hyp_gamma(ctx, np.conj(zs))), 1e-10 * s)
    w = _box(rng, 100, 1.8, 1.5)
    direct = np.exp(1j * hyp_log_gamma(ctx, w + 2))
    cont = 2 * np.cos(np.pi * (w + 1) * tau / 2) * np.exp(1j * hyp_log_gamma(ctx, w))
    rep.add("continuation_consistency", "strip integral vs one continuation step",
            residual(direct, cont), 1e-9 * s)
    errs = [abs(hyp_log_gamma(ctx, 0.3 + 1j * Y) - asymptotic_log_gamma(ctx, 0.3 + 1j * Y, 1))
            for Y in (5, 10, 20)]
    rep.add("probe:asymptotic_decay", "asymptotics along the imaginary axis",
            0.0 if errs[0] > errs[1] > errs[2] else 1.0, 0.5)
    return rep


def _awq_defaults(opt):
    dp = DeformationParameter(opt.tau if opt.tau is not None else DeformationParameter.from_q(0.6).tau)
    gp = opt.gp or GroupParameters(0.7, 3.3, 1.1, 3.6)
    lam = 0.37 if opt.lam is None else opt.lam
    return dp, gp, lam


def suite_awq(rng, opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("awq", 0)
    dp, gp, lam = _awq_defaults(opt)
    s = opt.tol_scale
    al, rh, be, si = gp.as_tuple()
    z = _box(rng, 20, 0.5, 0.5)
    rep.add("f_lambda_first_order", "first order equation of the Y_rho eigenfunction",
            residual(f_lambda(z + 2, al, rh, lam, dp) / f_lambda(z, al, rh, lam, dp),
                     first_order_ratio(z, al, rh, lam, dp)), 1e-10 * s)
    req = AWFunctionRequest(dp, gp, lam)
    x = 1j * np.linspace(-1, 0.95, 21)
    E = eigenvalue_E(dp, lam, be)
    fp, f0, fm = (phi_lambda(x + t, req) for t in (2, 0, -2))
    rep.add("matrix_coefficient_equation", "(L - E) phi = 0 on the imaginary segment",
            residual(apply_L_values(fp, f0, fm, x, gp, dp), E * f0), 1e-7 * s)
    Fp, F0, Fm = (F_script(x + t, req) for t in (2, 0, -2))
    awp = link_parameters(gp)
    rep.add("gauged_coefficient_equation", "(D - E) F = 0 on the imaginary segment",
            residual(apply_D_values(Fp, F0, Fm, x, awp, dp), E * F0), 1e-7 * s)
    xc = np.array([0.3j, -0.2 + 0.1j, 0.4 - 0.2j])
    rep.add("integral_vs_8W7", "circle integral equals the very-well-poised closed form",
            _rel(F_script(xc, req), F_closed(xc, req)), 1e-6 * s)
    rep.add("probe:periodicity", "F is 1/tau-periodic",
            residual(F_script(xc + 1 / dp.tau, req), F_script(xc, req)), 1e-8 * s)
    awr = opt.awp or AWParameters(*rng.uniform(0.2, 0.9, 4))
    adu = dual_aw_parameters(awr)
    mu, xs = _box(rng, 50), _box(rng, 50)
    rep.add("duality", "E+(mu, x; a,b,c,d) = E+(x, mu; dual parameters)",
            residual(E_plus(mu, xs, awr, dp), E_plus(xs, mu, adu, dp)), 1e-8 * s)
    worst = 0.0
    for m in range(9):
        worst = max(worst, residual(E_plus(adu.a + 2 * m, xs, awr, dp),
                                    aw_polynomials(m, xs, awr, dp)[m]))
    rep.add("polynomial_reduction", "E+ at dual a + 2m is the degree m polynomial",
            worst, 1e-9 * s)
    mu_c = 2 - adu.d - rng.uniform(0.3, 1.5, 10) + 0.3j * rng.uniform(-1, 1, 10)
    xs10 = xs[:10]
    rep.add("closed_vs_expansion", "8W7 form against the polynomial expansion",
            residual(E_plus(mu_c, xs10, awr, dp, Form.CLOSED_W87), E_plus(mu_c, xs10, awr, dp)),
            1e-9 * s)
    worst = 0.0
    for m in range(6):
        f = lambda y, m=m: aw_polynomials(m, y, awr, dp)[m]
        worst = max(worst, residual(apply_D(f, xs10, awr, dp),
                                    aw_eigenvalue_degree(dp, m, awr) * f(xs10)))
    rep.add("polynomial_eigen_equation", "D E_m = lambda_m E_m", worst, 1e-9 * s)
    sd = self_dual_parameters(dp)
    rep.add("elliptic_cosine", "E+ at the self-dual point is the elliptic cosine kernel",
            residual(E_plus(mu, xs, sd, dp), elliptic_cosine(mu, xs, dp)), 1e-9 * s)
    rep.add("elliptic_symmetrisation", "symmetrisation of the kernel",
            residual(elliptic_cosine(mu, xs, dp),
                     (E0_kernel(mu, xs, dp) + E0_kernel(mu, -xs, dp)) / 2), 1e-10 * s)
    basis = [lambda y, k=k: q_pow(dp, k * y) for k in range(-2, 3)]
    a, b, c, d = awr.as_tuple()
    w1 = w0 = 0.0
    for f in basis:
        w1 = max(w1, residual(hecke_quadratic_residual(
            lambda g, y: hecke_T1(g, y, a, b, dp), f, xs10, 1, q_pow(dp, a + b)), 0))
        w0 = max(w0, residual(hecke_quadratic_residual(
            lambda g, y: hecke_T0(g, y, c, d, dp), f, xs10, 1, q_pow(dp, c + d - 2)), 0))
    rep.add("hecke_quadratic_T1", "(T1 + 1)(T1 + q^(a+b)) = 0", w1, 1e-9 * s)
    rep.add("hecke_quadratic_T0", "(T0 + 1)(T0 + q^(c+d-2)) = 0", w0, 1e-9 * s)
    # L = Delta D Delta^-1 on Laurent test functions
    worst = 0.0
    for f in basis[:3]:
        g = lambda y, f=f: f(y) / gauge_Delta(y, awp, dp)
        worst = max(worst, residual(apply_L(f, xs10, gp, dp),
                                    gauge_Delta(xs10, awp, dp) * apply_D(g, xs10, awp, dp)))
    rep.add("gauge_conjugation", "L = Delta D Delta^-1", worst, 1e-9 * s)
    return rep


def _awhyp_defaults(opt):
    dp = DeformationParameter(float(np.real(opt.tau)) if opt.tau is not None else -0.3)
    gp = opt.gp or GroupParameters(0.4, 0.7, 0.55, 0.3)
    lam = 0.37 if opt.lam is None else opt.lam
    return dp, gp, lam


def suite_awhyp(rng, opt: SuiteOptions, npoints: int = 3) -> SuiteReport:
    rep = SuiteReport("awhyp", 0)
    dp, gp, lam = _awhyp_defaults(opt)
    s = opt.tol_scale
    al, rh, be, si = gp.as_tuple()
    z = _box(rng, 100, 0.5, 1.0)
    rep.add("h_first_order", "first order equation of h",
            residual(h_lambda(z - 2, lam, al, rh, dp) / h_lambda(z, lam, al, rh, dp),
                     first_order_ratio_conj(z, al, rh, lam, dp)), 1e-8 * s)
    rep.add("g_first_order", "first order equation of g",
            residual(g_lambda(z + 2, lam, be, si, dp) / g_lambda(z, lam, be, si, dp),
                     first_order_ratio(z, be, si, lam, dp)), 1e-8 * s)
    zz = z[:10]
    hl = lambda y: h_lambda(y, lam, al, rh, dp)
    rep.add("h_eigen_equation", "h is an eigenfunction of the circ-twisted primitive element",
            residual(twisted_primitive_circ_apply(rh, -lam, dp, hl)(zz),
                     mu_eigenvalue(dp, al, rh) * hl(zz)), 1e-8 * s)
    gl = lambda y: g_lambda(y, lam, be, si, dp)
    rep.add("g_eigen_equation", "g is an eigenfunction of the twisted primitive element",
            residual(twisted_primitive_apply(si, lam, dp, gl)(zz),
                     mu_eigenvalue(dp, be, si) * gl(zz)), 1e-8 * s)
    x = _box(rng, npoints, 0.5, 0.5)
    E = eigenvalue_E(dp, lam, be)
    P = {t: psi_lambda(x + t, gp, lam, dp) for t in (2, 0, -2)}
    rep.add("psi_equation", "(L - E) psi = 0", residual(
        apply_L_values(P[2], P[0], P[-2], x, gp, dp), E * P[0]), 1e-5 * s)
    H = {t: P[t] / gauge_delta_hyp(x + t, gp, dp) for t in P}
    rep.add("H_equation", "(D - E) H = 0", residual(
        apply_D_values(H[2], H[0], H[-2], x, link_parameters(gp), dp), E * H[0]), 1e-5 * s)
    rep.add("contour_independence", "psi does not depend on the admissible contour",
            _rel(psi_lambda(x, gp, lam, dp, clearance=0.2), P[0]), 1e-6 * s)
    bad = 0
    for xv in x:
        hls = singular_half_lines(xv, lam, gp, dp.tau.real)
        bad += len(check_contour(build_contour(hls), hls))
    rep.add("probe:contour_admissible", "contour separates the half lines", bad, 0.5)
    return rep


def suite_rep(rng, opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("rep", 0)
    dp = DeformationParameter(opt.tau if opt.tau is not None else 0.13 + 0.21j)
    lam = 0.37 if opt.lam is None else opt.lam
    s = opt.tol_scale
    q = dp.q
    z = _box(rng, 10, 0.5, 0.5)
    basis = [lambda y, k=k: q_pow(dp, k * y) for k in (-2, -1, 1, 2)]
    basis += [lambda y: np.exp(0.3 * y) + y ** 2, lambda y: np.cos(0.7 * y)]
    P = lambda *g: (lambda f: pi_apply(word(*g), lam, dp, f)(z))
    rel = {"inverse": 0.0, "KX+": 0.0, "KX-": 0.0, "commutator": 0.0,
           "casimir": 0.0, "central": 0.0, "shift": 0.0}
    for f in basis:
        rel["inverse"] = max(rel["inverse"], residual(P(Gen.K, Gen.KINV)(f), f(z)))
        rel["KX+"] = max(rel["KX+"], residual(P(Gen.K, Gen.XPLUS)(f), q * P(Gen.XPLUS, Gen.K)(f)))
        rel["KX-"] = max(rel["KX-"], residual(P(Gen.K, Gen.XMINUS)(f), P(Gen.XMINUS, Gen.K)(f) / q))
        rel["commutator"] = max(rel["commutator"], residual(
            P(Gen.XPLUS, Gen.XMINUS)(f) - P(Gen.XMINUS, Gen.XPLUS)(f),
            (P(Gen.K, Gen.K)(f) - P(Gen.KINV, Gen.KINV)(f)) / (q - 1 / q)))
        rel["casimir"] = max(rel["casimir"], residual(
            casimir_apply(lam, dp, f)(z), casimir_scalar(lam, dp) * f(z)))
        Kf = pi_apply(word(Gen.K), lam, dp, f)
        rel["central"] = max(rel["central"], residual(
            casimir_apply(lam, dp, Kf)(z),
            pi_apply(word(Gen.K), lam, dp, casimir_apply(lam, dp, f))(z)))
        for m, g in ((1, Gen.K), (-1, Gen.KINV)):
            rel["shift"] = max(rel["shift"], residual(
                pi_apply(word(Shift(m)), lam, dp, f)(z), P(g)(f)))
    names = {"inverse": "K Kinv = 1", "KX+": "K X+ = q X+ K", "KX-": "K X- = q^-1 X- K",
             "commutator": "[X+, X-] = (K^2 - K^-2)/(q - q^-1)",
             "casimir": "Casimir acts by a scalar", "central": "Casimir commutes with K",
             "shift": "pi(m-hat) = pi(K^m)"}
    tols = {"inverse": 1e-13, "shift": 1e-13, "casimir": 1e-10}
    for k, v in rel.items():
        rep.add(f"relation_{k}", names[k], v, tols.get(k, 1e-11) * s)
    f = basis[4]
    rep.add("twisted_primitive_paths", "generator form vs closed first order form",
            residual(twisted_primitive_apply(3.2, lam, dp, f)(z),
                     twisted_primitive_apply(3.2, lam, dp, f, "closed")(z)), 1e-11 * s)
    dq = DeformationParameter.from_q(0.6)
    al, rh = 1.3, 3.3
    fl = lambda y: f_lambda(y, al, rh, lam, dq)
    rep.add("f_lambda_eigen_equation", "f_lambda is an eigenfunction of Y_rho",
            residual(twisted_primitive_apply(rh, lam, dq, fl)(z),
                     mu_eigenvalue(dq, al, rh) * fl(z)), 1e-9 * s)
    rep.add("mu_relation", "q^r + q^-r - (q - q^-1) mu = q^(r+a) + q^(-r-a)",
            mu_relation_residual(al, rh, dq), 1e-12 * s)
    worst = 0.0
    for _ in range(100):
        gp = GroupParameters(*(rng.normal(size=4) + 0.5j * rng.normal(size=4)))
        worst = max(worst, appendix_identity_check(complex(*rng.normal(size=2)), gp, dp).max)
    rep.add("appendix_identities", "explicit radial part coefficients", worst, 1e-10 * s)
    worst = 0.0
    for _ in range(10):
        al2, be2 = 0.0, 0.0
        gp = GroupParameters(al2, rng.normal() + 0.3j, be2, rng.normal() - 0.2j)
        worst = max(worst, appendix_identity_check(complex(*rng.normal(size=2)), gp, dp).max)
    rep.add("appendix_identities_zero_alpha_beta", "radial part with alpha = beta = 0",
            worst, 1e-10 * s)
    adj = pairing_adjointness_check(lam, dq, laurent_basis(dq))
    for k, v in adj.items():
        rep.add(f"adjointness_{k}", "sesquilinear pairing adjointness", v, 1e-9 * s)
    dph = DeformationParameter(-0.3)
    G1 = lambda y: np.exp(0.3 * y ** 2 + 0.2 * y)
    G2 = lambda y: np.exp(0.5 * y ** 2 - 0.1j * y)
    badj = bilinear_adjointness_check(lam, dph, [(G1, G2), (G2, G1)])
    for k, v in badj.items():
        rep.add(f"bilinear_adjointness_{k}", "bilinear pairing adjointness", v, 1e-7 * s)
    return rep


_RUNNERS = {"gamma": suite_gamma, "hypgamma": suite_hypgamma, "awq": suite_awq,
            "awhyp": suite_awhyp, "rep": suite_rep}


def run_suite(name: str, seed: int = DEFAULT_SEED,
              options: SuiteOptions | None = None) -> list:
    """Run one suite, or all of them for ``name == "all"``."""
    names = SUITES if name == "all" else (name,)
    reports = []
    for n in names:
        if n not in _RUNNERS:
            raise ConfigError(f"unknown suite {n!r}")
        rng = np.random.default_rng(seed)
        r = _RUNNERS[n](rng, options or SuiteOptions())
        r.seed = seed
        reports.append(r)
    return reports
