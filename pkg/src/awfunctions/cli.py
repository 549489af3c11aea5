"""Command line front end.

    awfunctions eval psi_lambda --tau -0.3 --x 0.1+0.2j --lambda 0.37
    awfunctions table E_plus --mu 0.4 --grid -1:1:21 --axis im
    awfunctions residual-scan D:E_plus --mu 0.4 --grid -1:1:41 --axis im
    awfunctions verify all --format json

Exit status: 0 success, 1 numerical failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

import numpy as np

from .awfunction_hyp import psi_lambda_detail
from .awfunction_q import (AWFunctionRequest, E_plus, F_closed, F_script,
                           elliptic_cosine, f_lambda, phi_lambda)
from .awop import apply_D_values, apply_L_values, gauge_delta_hyp, residual
from .exceptions import AWError, ConfigError, DomainError, WindowViolation
from .hypgamma import HypGammaContext, hyp_gamma
from .params import (AWParameters, DeformationParameter, GroupParameters,
                     Regime, aw_eigenvalue_degree, dual_aw_parameters,
                     eigenvalue_E, link_parameters, q_pow)
from .qseries import aw_polynomial, aw_polynomial_series, q_gamma, theta_renorm
from .suites import DEFAULT_SEED, SUITES, SuiteOptions, run_suite

EPS = np.finfo(float).eps
NUDGE = 1e-3j


@dataclass(frozen=True)
class RunConfig:
    command: str
    function_id: str
    tau: complex | None
    gp: GroupParameters
    awp: AWParameters
    lam: complex
    mu: complex
    m: int
    x: complex
    grid: tuple
    axis: str
    fmt: str
    offset: complex
    tol: float
    seed: int
    nudge: bool

    @property
    def lam_eff(self) -> complex:
        return self.lam + (NUDGE if self.nudge else 0)


def _complex(s: str) -> complex:
    try:
        return complex(s.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {s!r}")


def parse_grid(spec: str) -> tuple:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError("grid must be start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad grid {spec!r}")
    if count < 1:
        raise ConfigError("grid count must be at least 1")
    return start, stop, count


def grid_points(cfg: RunConfig) -> np.ndarray:
    start, stop, count = cfg.grid
    t = np.linspace(start, stop, count)
    return cfg.offset + (t.astype(complex) if cfg.axis == "re" else 1j * t)


# ---------------------------------------------------------------------------
# function registry: name -> (regime, evaluator returning (value, error))

def _dp(cfg: RunConfig, regime: Regime) -> DeformationParameter:
    tau = cfg.tau
    if tau is None:
        tau = 0.3j if regime is Regime.MODULUS_LESS_ONE else -0.3
    try:
        dp = DeformationParameter(tau)
    except DomainError as e:
        raise ConfigError(str(e))
    if dp.regime is not regime:
        raise ConfigError(f"{cfg.function_id} needs the {regime.value} regime, "
                          f"tau={tau} gives {dp.regime.value}")
    return dp


def _roundoff(v):
    return 64 * EPS * abs(v)


def _ev_q_gamma(cfg, x):
    v = q_gamma(_dp(cfg, Regime.MODULUS_LESS_ONE), x)
    return v, _roundoff(v)


def _ev_theta(cfg, x):
    v = theta_renorm(_dp(cfg, Regime.MODULUS_LESS_ONE), x)
    return v, _roundoff(v)


def _ev_aw_polynomial(cfg, x):
    dp = _dp(cfg, Regime.MODULUS_LESS_ONE)
    v = aw_polynomial(cfg.m, x, cfg.awp, dp)
    alt = aw_polynomial_series(cfg.m, x, cfg.awp, dp).value
    return v, abs(v - alt)


def _ev_E_plus(cfg, x):
    v = E_plus(cfg.mu, x, cfg.awp, _dp(cfg, Regime.MODULUS_LESS_ONE))
    return v, _roundoff(v)


def _ev_elliptic(cfg, x):
    v = elliptic_cosine(cfg.mu, x, _dp(cfg, Regime.MODULUS_LESS_ONE))
    return v, _roundoff(v)


def _req(cfg):
    return AWFunctionRequest(_dp(cfg, Regime.MODULUS_LESS_ONE), cfg.gp, cfg.lam_eff)


def _ev_phi(cfg, x):
    v = phi_lambda(x, _req(cfg))
    return v, 1e-13 * abs(v)


def _ev_F(cfg, x):
    req = _req(cfg)
    v = F_script(x, req)
    return v, abs(v - F_closed(x, req))


def _ev_F_closed(cfg, x):
    req = _req(cfg)
    v = F_closed(x, req)
    return v, abs(v - F_script(x, req))


def _ev_f_lambda(cfg, x):
    dp = _dp(cfg, Regime.MODULUS_LESS_ONE)
    v = f_lambda(x, cfg.gp.alpha, cfg.gp.rho, cfg.lam_eff, dp)
    return v, _roundoff(v)


def _ev_hyp_gamma(cfg, x):
    dp = _dp(cfg, Regime.MODULUS_ONE)
    v = hyp_gamma(HypGammaContext(dp.tau.real), x)
    return v, 1e-14 * abs(v)


def _ev_psi(cfg, x):
    dp = _dp(cfg, Regime.MODULUS_ONE)
    r = psi_lambda_detail(x, cfg.gp, cfg.lam_eff, dp)
    return r.value, r.error_estimate + r.tail_bound


def _ev_H(cfg, x):
    dp = _dp(cfg, Regime.MODULUS_ONE)
    r = psi_lambda_detail(x, cfg.gp, cfg.lam_eff, dp)
    d = gauge_delta_hyp(x, cfg.gp, dp)
    return r.value / d, (r.error_estimate + r.tail_bound) / abs(d)


FUNCTIONS = {
    "q_gamma": _ev_q_gamma,
    "theta_renorm": _ev_theta,
    "aw_polynomial": _ev_aw_polynomial,
    "E_plus": _ev_E_plus,
    "elliptic_cosine": _ev_elliptic,
    "f_lambda": _ev_f_lambda,
    "phi_lambda": _ev_phi,
    "F_script": _ev_F,
    "F_closed": _ev_F_closed,
    "hyp_gamma": _ev_hyp_gamma,
    "psi_lambda": _ev_psi,
    "H_lambda": _ev_H,
}


# ---------------------------------------------------------------------------
# residual scans: operator applied to a function, minus eigenvalue times it

def _scan_setup(cfg: RunConfig):
    """Return (operator, values callable, eigenvalue)."""
    op, _, fn = cfg.function_id.partition(":")
    if op not in ("D", "L") or fn not in FUNCTIONS:
        raise ConfigError(f"unknown scan {cfg.function_id!r}; use D:<function> or L:<function>")
    if fn == "E_plus":
        dp = _dp(cfg, Regime.MODULUS_LESS_ONE)
        at = dual_aw_parameters(cfg.awp).a
        eig = (q_pow(dp, at - cfg.mu) - 1) * (1 - q_pow(dp, cfg.mu + at))
        ok = op == "D"
    elif fn == "aw_polynomial":
        dp = _dp(cfg, Regime.MODULUS_LESS_ONE)
        eig = aw_eigenvalue_degree(dp, cfg.m, cfg.awp)
        ok = op == "D"
    elif fn in ("F_script", "F_closed", "H_lambda"):
        regime = Regime.MODULUS_ONE if fn == "H_lambda" else Regime.MODULUS_LESS_ONE
        dp = _dp(cfg, regime)
        eig = eigenvalue_E(dp, cfg.lam_eff, cfg.gp.beta)
        ok = op == "D"
    elif fn in ("phi_lambda", "psi_lambda"):
        regime = Regime.MODULUS_ONE if fn == "psi_lambda" else Regime.MODULUS_LESS_ONE
        dp = _dp(cfg, regime)
        eig = eigenvalue_E(dp, cfg.lam_eff, cfg.gp.beta)
        ok = op == "L"
    else:
        ok = False
    if not ok:
        raise ConfigError(f"no eigen-equation registered for {cfg.function_id}")
    if fn in ("E_plus", "aw_polynomial"):
        awp = cfg.awp
        apply = lambda fp, f0, fm, x: apply_D_values(fp, f0, fm, x, awp, dp)
    elif op == "D":
        awp = link_parameters(cfg.gp)
        apply = lambda fp, f0, fm, x: apply_D_values(fp, f0, fm, x, awp, dp)
    else:
        apply = lambda fp, f0, fm, x: apply_L_values(fp, f0, fm, x, cfg.gp, dp)
    return apply, FUNCTIONS[fn], eig


def residual_scan(cfg: RunConfig):
    apply, ev, eig = _scan_setup(cfg)
    rows = []
    for x in grid_points(cfg):
        try:
            fp, f0, fm = (ev(cfg, x + t)[0] for t in (2, 0, -2))
            r = residual(apply(fp, f0, fm, x), eig * f0)
            note = ""
        except AWError as e:
            # singular grid points are reported, not silently dropped
            r, note = float("nan"), type(e).__name__
        rows.append((x, r, note))
    return rows


# ---------------------------------------------------------------------------
# output

def _cjson(v: complex):
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def _emit_rows(header, rows, fmt, out):
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([repr(float(v)) if isinstance(v, float) else v for v in r])
    else:
        json.dump([dict(zip(header, r)) for r in rows], out, indent=2)
        out.write("\n")


def cmd_eval(cfg: RunConfig, out) -> int:
    ev = FUNCTIONS.get(cfg.function_id)
    if ev is None:
        raise ConfigError(f"unknown function {cfg.function_id!r}")
    v, err = ev(cfg, cfg.x)
    v = complex(v)
    if cfg.fmt == "csv":
        _emit_rows(["function", "x_re", "x_im", "re", "im", "error_bound"],
                   [(cfg.function_id, cfg.x.real, cfg.x.imag, v.real, v.imag, float(err))],
                   "csv", out)
    else:
        json.dump({"function": cfg.function_id, "x": _cjson(cfg.x), "value": _cjson(v),
                   "error_estimate": float(err), "nudged": cfg.nudge}, out, indent=2)
        out.write("\n")
    return 0


def cmd_table(cfg: RunConfig, out) -> int:
    ev = FUNCTIONS.get(cfg.function_id)
    if ev is None:
        raise ConfigError(f"unknown function {cfg.function_id!r}")
    rows = []
    for x in grid_points(cfg):
        v, err = ev(cfg, x)
        v = complex(v)
        rows.append((x.real, x.imag, v.real, v.imag, float(err)))
    _emit_rows(["x_re", "x_im", "re", "im", "error_bound"], rows, cfg.fmt, out)
    return 0


def cmd_scan(cfg: RunConfig, out) -> int:
    rows = residual_scan(cfg)
    _emit_rows(["x_re", "x_im", "residual", "note"],
               [(x.real, x.imag, r, note) for x, r, note in rows], cfg.fmt, out)
    finite = [r for _, r, _ in rows if np.isfinite(r)]
    worst = max(finite) if finite else float("nan")
    print(f"max residual {worst:.3e} over {len(finite)} regular points "
          f"(tolerance {cfg.tol:g})", file=sys.stderr)
    return 0 if finite and worst < cfg.tol else 1


def cmd_verify(cfg: RunConfig, out) -> int:
    if cfg.function_id not in SUITES + ("all",):
        raise ConfigError(f"unknown suite {cfg.function_id!r}")
    opts = SuiteOptions(tau=cfg.tau, lam=None if cfg.lam is None else cfg.lam_eff)
    reports = run_suite(cfg.function_id, cfg.seed, opts)
    if cfg.fmt == "csv":
        rows = [(r.suite, c.name, c.paper_ref, c.residual, c.tolerance, c.passed)
                for r in reports for c in r.checks]
        out.write(f"# seed {cfg.seed}\n")
        _emit_rows(["suite", "name", "paper_ref", "residual", "tolerance", "pass"],
                   rows, "csv", out)
    else:
        data = [r.as_dict() for r in reports]
        json.dump(data[0] if len(data) == 1 else data, out, indent=2)
        out.write("\n")
    failed = [f"{r.suite}/{c.name}" for r in reports for c in r.checks if not c.passed]
    for name in failed:
        print(f"FAIL {name}", file=sys.stderr)
    return 1 if failed else 0


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "residual-scan": cmd_scan,
            "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="awfunctions",
                                description="Askey-Wilson eigenfunctions and identity checks")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tau", type=_complex, default=None,
                        help="deformation parameter, q^u = exp(2 pi i tau u)")
    for name, dflt in (("alpha", 0.7), ("rho", 3.3), ("beta", 1.1), ("sigma", 3.6)):
        common.add_argument(f"--{name}", type=_complex, default=dflt)
    common.add_argument("--lambda", dest="lam", type=float, default=0.37)
    for name, dflt in (("a", 0.3), ("b", 0.5), ("c", 0.6), ("d", 0.8)):
        common.add_argument(f"--{name}", type=_complex, default=dflt)
    common.add_argument("--mu", type=_complex, default=0.4 + 0j)
    common.add_argument("--m", type=int, default=2, help="polynomial degree")
    common.add_argument("--x", type=_complex, default=0.1 + 0.2j)
    common.add_argument("--grid", default="-1:1:21")
    common.add_argument("--axis", choices=("re", "im"), default="im")
    common.add_argument("--offset", type=_complex, default=0j, help="added to every grid point")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--tol", type=float, default=1e-7)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--nudge", action="store_true",
                        help="add 1e-3 i to lambda to leave a degenerate configuration")
    for cmd, target in (("eval", "function"), ("table", "function"),
                        ("residual-scan", "operator:function"), ("verify", "suite")):
        sp = sub.add_parser(cmd, parents=[common])
        sp.add_argument("target", metavar=target)
    return p


def config_from_args(ns) -> RunConfig:
    if not ns.tol > 0:
        raise ConfigError("tolerance must be positive")
    return RunConfig(
        command=ns.command, function_id=ns.target, tau=ns.tau,
        gp=GroupParameters(ns.alpha, ns.rho, ns.beta, ns.sigma),
        awp=AWParameters(ns.a, ns.b, ns.c, ns.d), lam=ns.lam, mu=ns.mu, m=ns.m,
        x=ns.x, grid=parse_grid(ns.grid), axis=ns.axis, fmt=ns.fmt, offset=ns.offset, tol=ns.tol,
        seed=ns.seed, nudge=ns.nudge)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (ConfigError, WindowViolation) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    except (AWError, ArithmeticError) as e:
        print(f"numerical failure ({type(e).__name__}): {e}", file=sys.stderr)
        return 1


def _glue_values(argv) -> list:
    """Write ``--opt value`` as ``--opt=value`` so that values such as
    ``-1:1:41`` or ``-1-2j`` are not mistaken for options."""
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        a = argv[i]
        if (a.startswith("--") and "=" not in a and a not in ("--nudge", "--help")
                and i + 1 < len(argv)):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
    try:
        cfg = config_from_args(ns)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
