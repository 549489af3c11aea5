"""Eigenfunction of the gauged Askey-Wilson operator for ``|q| = 1``.

The integrand is a product of eight hyperbolic gamma values whose poles lie
on eight horizontal half lines.  The integration path is a deformation of
the imaginary axis that keeps the four left-tending lines on its left and
the four right-tending lines on its right.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .awop import gauge_delta_hyp
from .exceptions import (DegenerateHeights, DomainError, InfeasibleSeparation,
                         NonConvergence)
from .hypgamma import HypGammaContext, hyp_log_G
from .params import DeformationParameter, GroupParameters, Regime, _lam

HEIGHT_TOL = 1e-6
_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)
_GL_X10, _GL_W10 = np.polynomial.legendre.leggauss(10)


class Direction(enum.Enum):
    LEFT = "LeftTending"
    RIGHT = "RightTending"


@dataclass(frozen=True)
class HalfLine:
    anchor: complex
    direction: Direction

    @property
    def height(self) -> float:
        return float(complex(self.anchor).imag)

    def distance(self, p: complex) -> float:
        a = complex(self.anchor)
        dy = p.imag - a.imag
        if self.direction is Direction.LEFT:
            dx = max(p.real - a.real, 0.0)
        else:
            dx = max(a.real - p.real, 0.0)
        return math.hypot(dx, dy)


@dataclass(frozen=True)
class Contour:
    """Upward polyline; outside ``|Im| <= truncation_height`` it is iR."""

    vertices: tuple
    truncation_height: float
    clearance: float
    halflines: tuple = field(default=(), repr=False)

    def segments(self):
        v = self.vertices
        return [(v[i], v[i + 1]) for i in range(len(v) - 1)
                if abs(v[i + 1] - v[i]) > 1e-15]

    def min_distance(self) -> float:
        best = math.inf
        for a, b in self.segments():
            for hl in self.halflines:
                best = min(best, _segment_halfline_distance(a, b, hl))
        return best

    def crossing(self, c: float) -> complex:
        """Point where the contour meets ``Im z = c``."""
        if c <= self.vertices[0].imag or c >= self.vertices[-1].imag:
            return complex(0, c)
        for a, b in self.segments():
            if a.imag <= c <= b.imag and b.imag > a.imag:
                t = (c - a.imag) / (b.imag - a.imag)
                return a + t * (b - a)
        raise DomainError("contour is not monotone in height")


def _segment_halfline_distance(a: complex, b: complex, hl: HalfLine) -> float:
    # both are axis parallel; sample the segment finely enough near the line
    if a.imag == b.imag:            # horizontal segment
        lo, hi = sorted((a.real, b.real))
        anc = complex(hl.anchor)
        dy = abs(a.imag - anc.imag)
        if hl.direction is Direction.LEFT:
            dx = max(lo - anc.real, 0.0)
        else:
            dx = max(anc.real - hi, 0.0)
        return math.hypot(dx, dy)
    # vertical segment at fixed real part
    lo, hi = sorted((a.imag, b.imag))
    anc = complex(hl.anchor)
    dy = 0.0 if lo <= anc.imag <= hi else min(abs(anc.imag - lo), abs(anc.imag - hi))
    p = complex(a.real, min(max(anc.imag, lo), hi))
    if hl.direction is Direction.LEFT:
        dx = max(p.real - anc.real, 0.0)
    else:
        dx = max(anc.real - p.real, 0.0)
    return math.hypot(dx, dy)


def singular_half_lines(x, lam, gp: GroupParameters, tau: float,
                        height_tol: float = HEIGHT_TOL):
    """The eight half lines carrying the poles of the integrand in ``z``."""
    al, rh, be, si = (complex(v) for v in gp.as_tuple())
    L = 1j * _lam(lam)
    x = complex(x)
    left = [-1 - be - si + L - x, -1 + be + si + L - x,
            -1 + 1 / tau - rh - L, -1 + rh - L]
    right = [-si - L - x, si - L - x, -al - rh + L, -1 / tau + al + rh + L]
    lines = ([HalfLine(p, Direction.LEFT) for p in left]
             + [HalfLine(p, Direction.RIGHT) for p in right])
    for p in left:
        for r in right:
            if abs(p.imag - r.imag) < height_tol:
                raise DegenerateHeights(
                    f"opposite half lines share height {p.imag:.3g}")
    return lines


def build_contour(halflines, clearance: float = 0.1,
                  truncation_height: float | None = None) -> Contour:
    """Axis-parallel deformation of iR separating the two families."""
    heights = sorted({round(h.height, 12) for h in halflines})
    xs = []
    for h in heights:
        at_h = [hl for hl in halflines if abs(hl.height - h) < 1e-9]
        lo = max([hl.anchor.real for hl in at_h if hl.direction is Direction.LEFT],
                 default=-math.inf) + clearance
        hi = min([hl.anchor.real for hl in at_h if hl.direction is Direction.RIGHT],
                 default=math.inf) - clearance
        if lo > hi:
            raise InfeasibleSeparation(f"no room at height {h:.4g}")
        xs.append(min(max(0.0, lo), hi))
    gaps = np.diff(heights)
    pad = clearance if not gaps.size else min(clearance, 0.5 * float(gaps.min()))
    verts = [complex(0, heights[0] - pad)]
    cur = 0.0
    for i, h in enumerate(heights):
        ylo = (heights[i - 1] + h) / 2 if i else h - pad
        if xs[i] != cur:
            verts.append(complex(cur, ylo))
            verts.append(complex(xs[i], ylo))
            cur = xs[i]
    if cur != 0.0:
        verts.append(complex(cur, heights[-1] + pad))
        verts.append(complex(0, heights[-1] + pad))
    top = heights[-1] + pad
    bottom = heights[0] - pad
    T = truncation_height or max(abs(top), abs(bottom)) + 1.0
    verts = [complex(0, -T)] + verts + [complex(0, T)]
    # drop repeated points
    clean = [verts[0]]
    for v in verts[1:]:
        if abs(v - clean[-1]) > 1e-15:
            clean.append(v)
    return Contour(tuple(clean), T, clearance, tuple(halflines))


def check_contour(contour: Contour, halflines=None) -> list:
    """Return a list of violated invariants (empty when all hold)."""
    problems = []
    v = contour.vertices
    hl = halflines if halflines is not None else contour.halflines
    for a, b in zip(v[:-1], v[1:]):
        if b.imag < a.imag - 1e-15:
            problems.append("height decreases along the contour")
            break
        if a.imag != b.imag and a.real != b.real:
            problems.append("segment is not axis parallel")
            break
    if v[0].real != 0 or v[-1].real != 0:
        problems.append("ends are not on the imaginary axis")
    if max(abs(p.imag) for p in v) > contour.truncation_height + 1e-12:
        problems.append("vertex above truncation height")
    heights = sorted({round(h.height, 12) for h in hl})
    gaps = np.diff(heights)
    need = contour.clearance if not gaps.size else min(contour.clearance, 0.5 * float(gaps.min()))
    c = Contour(contour.vertices, contour.truncation_height, contour.clearance, tuple(hl))
    if c.min_distance() < need * (1 - 1e-9):
        problems.append("contour too close to a singular half line")
    for h in hl:
        z = c.crossing(h.height)
        if h.direction is Direction.LEFT and not z.real > h.anchor.real:
            problems.append("left-tending line not on the left")
        if h.direction is Direction.RIGHT and not z.real < h.anchor.real:
            problems.append("right-tending line not on the right")
    return problems


def _ctx(tau: float, ctx: HypGammaContext | None) -> HypGammaContext:
    return ctx or HypGammaContext(2 * tau)


def _log_g(z, lam, beta, sigma, tau, ctx):
    k = 1 / (2 * tau)
    L = 1j * _lam(lam)
    z = np.asarray(z, dtype=complex)
    args = np.stack([k - 1 + beta + sigma - L + z, k + sigma - L - z,
                     -k + 1 + beta + sigma + L - z, -k + sigma + L + z])
    lg = hyp_log_G(ctx, args)
    return lg[0] + lg[1] - lg[2] - lg[3]


def _log_h(z, lam, alpha, rho, tau, ctx):
    k = 1 / (2 * tau)
    L = 1j * _lam(lam)
    z = np.asarray(z, dtype=complex)
    args = np.stack([-k - 1 + alpha + rho + L - z, -k + rho + L + z,
                     -k + 1 + alpha + rho - L + z, -k + rho - L - z])
    lg = hyp_log_G(ctx, args)
    return lg[0] + lg[1] - lg[2] - lg[3]


def g_lambda(z, lam, beta, sigma, dp: DeformationParameter, ctx=None):
    v = np.exp(_log_g(z, lam, beta, sigma, dp.tau.real, _ctx(dp.tau.real, ctx)))
    return v if np.ndim(v) else complex(v)


def h_lambda(z, lam, alpha, rho, dp: DeformationParameter, ctx=None):
    v = np.exp(_log_h(z, lam, alpha, rho, dp.tau.real, _ctx(dp.tau.real, ctx)))
    return v if np.ndim(v) else complex(v)


def gh_factors(z, x, gp: GroupParameters, lam, dp: DeformationParameter, ctx=None):
    """``(g_lambda(1 + x + z; beta, sigma), h_lambda(z; alpha, rho))``."""
    al, rh, be, si = gp.as_tuple()
    z = np.asarray(z, dtype=complex)
    return (g_lambda(1 + x + z, lam, be, si, dp, ctx),
            h_lambda(z, lam, al, rh, dp, ctx))


def log_integrand(z, x, gp: GroupParameters, lam, dp, ctx=None):
    al, rh, be, si = gp.as_tuple()
    tau = dp.tau.real
    ctx = _ctx(tau, ctx)
    return (_log_g(1 + x + np.asarray(z), lam, be, si, tau, ctx)
            + _log_h(z, lam, al, rh, tau, ctx))


def _require_window(dp: DeformationParameter):
    if dp.regime is not Regime.MODULUS_ONE:
        raise DomainError("needs |q| = 1 with -1/2 < tau < 0")


@dataclass(frozen=True)
class PsiResult:
    value: complex
    error_estimate: float
    tail_bound: float
    nodes: int
    contour: Contour


def _panel(f, a, b, nodes, weights):
    mid, half = (a + b) / 2, (b - a) / 2
    fz = f(mid + half * nodes)
    return np.sum(fz * weights) * half, np.sum(np.abs(fz) * weights) * abs(half)


def _adaptive_segment(f, a, b, rel, counter, depth=0):
    # compare 20- and 10-point Gauss rules; bisect where they disagree
    i20, l1 = _panel(f, a, b, _GL_X, _GL_W)
    i10, _ = _panel(f, a, b, _GL_X10, _GL_W10)
    counter[0] += 30
    err = abs(i20 - i10)
    if err <= rel * l1 or depth > 40:
        return i20, err
    m = (a + b) / 2
    left, el = _adaptive_segment(f, a, m, rel, counter, depth + 1)
    right, er = _adaptive_segment(f, m, b, rel, counter, depth + 1)
    return left + right, el + er


def _split(a, b, width):
    n = max(1, int(math.ceil(abs(b - a) / width)))
    t = np.linspace(0, 1, n + 1)
    return [(a + (b - a) * t[i], a + (b - a) * t[i + 1]) for i in range(n)]


def psi_lambda_detail(x, gp: GroupParameters, lam, dp: DeformationParameter,
                      clearance: float = 0.1, rel_tol: float = 1e-14,
                      tail_tol: float = 1e-15, ctx=None) -> PsiResult:
    """Contour integral with error bookkeeping.

    The path is followed up and down the imaginary axis in unit steps until
    the integrand has dropped below ``tail_tol`` times the running value.
    The decay over the last step gives the tail bound.
    """
    _require_window(dp)
    tau = dp.tau.real
    ctx = _ctx(tau, ctx)
    x = complex(x)
    hls = singular_half_lines(x, lam, gp, tau)
    base = build_contour(hls, clearance)
    f = lambda z: np.exp(log_integrand(z, x, gp, lam, dp, ctx))
    counter = [0]

    v = list(base.vertices[1:-1])
    value = 0j
    err = 0.0
    for a, b in zip(v[:-1], v[1:]):
        for pa, pb in _split(a, b, 0.5):
            val, e = _adaptive_segment(f, pa, pb, rel_tol, counter)
            value += val
            err += e
    top, bottom = v[-1].imag, v[0].imag
    y_up, y_dn = top, bottom
    for _ in range(400):
        scale = max(abs(value), 1e-300)
        fu, fd = np.abs(f(np.array([1j * y_up, 1j * y_dn])))
        done_up = fu < tail_tol * scale and y_up - top >= 1
        done_dn = fd < tail_tol * scale and bottom - y_dn >= 1
        if done_up and done_dn:
            break
        if not done_up:
            val, e = _adaptive_segment(f, 1j * y_up, 1j * (y_up + 1), rel_tol, counter)
            value += val
            err += e
            y_up += 1
        if not done_dn:
            val, e = _adaptive_segment(f, 1j * (y_dn - 1), 1j * y_dn, rel_tol, counter)
            value += val
            err += e
            y_dn -= 1
    else:
        raise NonConvergence("integrand does not decay along the imaginary axis")
    rate = (1 - 2 * tau) * math.pi
    fu0, fu1 = np.abs(f(np.array([1j * (y_up - 1), 1j * y_up])))
    fd0, fd1 = np.abs(f(np.array([1j * (y_dn + 1), 1j * y_dn])))
    r_up = math.log(fu0 / fu1) if 0 < fu1 < fu0 else rate
    r_dn = math.log(fd0 / fd1) if 0 < fd1 < fd0 else rate
    tail = fu1 / r_up + fd1 / r_dn
    contour = Contour((complex(0, y_dn),) + tuple(v) + (complex(0, y_up),),
                      max(y_up, -y_dn), clearance, tuple(hls))
    return PsiResult(complex(value), float(err), float(tail), counter[0], contour)


def psi_lambda(x, gp: GroupParameters, lam, dp: DeformationParameter,
               clearance: float = 0.1, ctx=None):
    """``psi_lambda(x)``; vectorised over ``x``."""
    xa = np.asarray(x, dtype=complex)
    out = np.array([psi_lambda_detail(complex(v), gp, lam, dp, clearance, ctx=ctx).value
                    for v in xa.ravel()]).reshape(xa.shape)
    return out if out.ndim else complex(out)


def H_lambda(x, gp: GroupParameters, lam, dp: DeformationParameter,
             clearance: float = 0.1, ctx=None):
    """``psi_lambda / delta``: eigenfunction of the Askey-Wilson operator."""
    psi = psi_lambda(x, gp, lam, dp, clearance, ctx)
    return psi / gauge_delta_hyp(x, gp, dp)


def growth_rates(lam, tau: float):
    """Exponential growth rates of ``g`` and ``h`` at ``+-i inf``."""
    im = complex(lam).imag
    return (math.pi * ((1 - 2 * im) * tau - 1), math.pi * (1 + 2 * im) * tau)
