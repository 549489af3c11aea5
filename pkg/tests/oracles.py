"""Independent high-precision reference values (mpmath), written straight
from the defining formulas without reusing library code."""
import mpmath as mp

DPS = 40


def qp(tau, u):
    return mp.exp(2j * mp.pi * mp.mpc(tau) * mp.mpc(u))


def poch_inf(b, q):
    with mp.workdps(DPS):
        return mp.qp(mp.mpc(b), mp.mpc(q))


def q_gamma(tau, x):
    """q^{-x^2/16} / (-q^{(x+1)/2}; q)_inf."""
    with mp.workdps(DPS):
        x = mp.mpc(x)
        q = qp(tau, 1)
        return complex(qp(tau, -x * x / 16) / mp.qp(-qp(tau, (x + 1) / 2), q))


def theta_renorm(tau, x):
    with mp.workdps(DPS):
        Q = qp(tau, 2)
        return complex(mp.qp(-qp(tau, 1 + x), Q) * mp.qp(-qp(tau, 1 - x), Q))


def phi43(tau, m, a, b, c, d, x):
    """Terminating 4phi3 definition of the Askey-Wilson polynomial, base q^2."""
    with mp.workdps(60):
        Q = qp(tau, 2)
        s = 0
        for k in range(m + 1):
            num = (mp.qp(qp(tau, -2 * m), Q, k) * mp.qp(qp(tau, 2 * m - 2 + a + b + c + d), Q, k)
                   * mp.qp(qp(tau, a + x), Q, k) * mp.qp(qp(tau, a - x), Q, k))
            den = (mp.qp(Q, Q, k) * mp.qp(qp(tau, a + b), Q, k) * mp.qp(qp(tau, a + c), Q, k)
                   * mp.qp(qp(tau, a + d), Q, k))
            s += num / den * Q ** k
        return complex(s)


def w87(u, bs, q, z, terms=200):
    """Very-well-poised 8W7 by direct summation of running term ratios."""
    with mp.workdps(DPS):
        u, q, z = mp.mpc(u), mp.mpc(q), mp.mpc(z)
        bs = [mp.mpc(b) for b in bs]
        s, t = 0, mp.mpc(1)
        for k in range(terms):
            s += (1 - u * q ** (2 * k)) / (1 - u) * t
            r = (1 - u * q ** k) / (1 - q ** (k + 1)) * z
            for b in bs:
                r *= (1 - b * q ** k) / (1 - u * q ** (k + 1) / b)
            t *= r
        return complex(s)


def hyp_log_gamma(tau, z):
    """(1/2i) int_0^inf (z/y - sinh(tau y z)/(sinh y sinh tau y)) dy/y."""
    with mp.workdps(20):
        z, tau = mp.mpc(z), mp.mpf(tau)
        f = lambda y: (z / y - mp.sinh(tau * y * z) / (mp.sinh(y) * mp.sinh(tau * y))) / y
        e = mp.mpf("1e-8")
        head = -(z / 6) * (tau ** 2 * z ** 2 - 1 - tau ** 2) * e
        pts = [e] + [mp.mpf(k) / 2 for k in range(1, 121)]
        return complex((head + mp.quad(f, pts) + z / pts[-1]) / 2j)
