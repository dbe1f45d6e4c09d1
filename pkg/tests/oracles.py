"""Independent reference routes used to freeze expected values in the tests.

Every routine here recomputes its target by a different algorithm than the
library: explicit coefficient sums, high-precision mpmath evaluation, a dense
matrix exponential built from scratch, Richardson-extrapolated trapezoids,
and high-order finite differences.  Tests compare library output against
these, or against constants frozen from a run of these.
"""

import math

import numpy as np
from scipy.linalg import expm


def hermite_sum(n, z):
    # explicit coefficient sum H_n(z) = sum_m n! (-1)^m (2z)^{n-2m} / (m!(n-2m)!)
    total = 0.0
    for m in range(n // 2 + 1):
        total += (
            (-1.0) ** m
            * math.factorial(n)
            / (math.factorial(m) * math.factorial(n - 2 * m))
            * (2.0 * z) ** (n - 2 * m)
        )
    return total


def laguerre_sum(k, m, z):
    total = 0.0
    for j in range(k + 1):
        total += (-1.0) ** j * math.comb(k + m, k - j) * z**j / math.factorial(j)
    return total


def eigenfunction_mp(n, omega, x, dps=50):
    """phi_n(x) straight from the factorial formula at `dps` decimal digits."""
    import mpmath as mp

    with mp.workdps(dps):
        w = mp.mpf(repr(float(omega)))
        xx = mp.mpf(repr(float(x)))
        val = (
            (w / mp.pi) ** mp.mpf("0.25")
            / mp.sqrt(mp.mpf(2) ** n * mp.factorial(n))
            * mp.exp(-w * xx * xx / 2)
            * mp.hermite(n, mp.sqrt(w) * xx)
        )
        return float(val)


def displacement_dense(alpha, dim):
    """exp(alpha adag - conj(alpha) a) built here from scratch."""
    a = np.diag(np.sqrt(np.arange(1.0, dim)), 1).astype(complex)
    return expm(alpha * a.conj().T - np.conjugate(alpha) * a)


def photon_prob(n, alpha, k, dim=220):
    return float(abs(displacement_dense(complex(alpha), dim)[k, n]) ** 2)


def overlap_pair(n, beta, alpha, dim=60):
    """<n, beta | n, alpha> as a dense-column inner product."""
    col_a = displacement_dense(complex(alpha), dim)[:, n]
    col_b = displacement_dense(complex(beta), dim)[:, n]
    return complex(np.vdot(col_b, col_a))


def schrodinger_residual(psi, omega, x_values, t, delta=1e-3):
    """max |i dpsi/dt + psi_xx/2 - omega^2 x^2 psi/2| / max |psi|.

    psi is a callable (x array, t) -> complex array.  Both derivatives use
    4th-order central stencils with step `delta`.
    """
    x = np.asarray(x_values, dtype=np.float64)
    xs = x[None, :] + delta * np.arange(-2.0, 3.0)[:, None]

    dpsi_dt = (
        -psi(x, t + 2 * delta)
        + 8.0 * psi(x, t + delta)
        - 8.0 * psi(x, t - delta)
        + psi(x, t - 2 * delta)
    ) / (12.0 * delta)

    stack = psi(xs.ravel(), t).reshape(5, x.size)
    d2 = (
        -stack[4] + 16.0 * stack[3] - 30.0 * stack[2] + 16.0 * stack[1] - stack[0]
    ) / (12.0 * delta**2)

    core = psi(x, t)
    h_psi = -0.5 * d2 + 0.5 * omega**2 * x**2 * core
    return float(np.max(np.abs(1j * dpsi_dt - h_psi)) / np.max(np.abs(core)))


def _trapz_pieces(pulse, fn, t, points):
    total = 0.0 + 0.0j
    for a, b, f in pulse.pieces:
        hi = min(b, t)
        if hi <= a:
            break
        s = np.linspace(a, hi, points)
        total += np.trapezoid(fn(f(s), s), s)
    return total


def zeta_trapz(pulse, omega, t, points=20001):
    """Richardson-extrapolated trapezoid for -(i/sqrt(2w)) int f e^{iws} ds."""
    fn = lambda fs, s: fs * np.exp(1j * omega * s)
    coarse = _trapz_pieces(pulse, fn, t, points)
    fine = _trapz_pieces(pulse, fn, t, 2 * points - 1)
    return -1j / math.sqrt(2.0 * omega) * (4.0 * fine - coarse) / 3.0


def _beta_grid(pulse, omega, t, points):
    # carry G(s) = int_{t0}^{s} f e^{-iw s'} ds' along, then integrate
    # f(s) Im[e^{iws} G(s)] / (2w); plain trapezoid throughout
    total = 0.0
    g0 = 0.0 + 0.0j
    for a, b, f in pulse.pieces:
        hi = min(b, t)
        if hi <= a:
            break
        s = np.linspace(a, hi, points)
        fs = f(s)
        integrand_g = fs * np.exp(-1j * omega * s)
        h = s[1] - s[0]
        g = g0 + np.concatenate(
            ([0.0], np.cumsum(0.5 * h * (integrand_g[1:] + integrand_g[:-1])))
        )
        total += float(
            np.trapezoid(fs * np.imag(np.exp(1j * omega * s) * g), s) / (2.0 * omega)
        )
        g0 = g[-1]
    return total


def beta_trapz(pulse, omega, t, points=20001):
    coarse = _beta_grid(pulse, omega, t, points)
    fine = _beta_grid(pulse, omega, t, 2 * points - 1)
    return (4.0 * fine - coarse) / 3.0


def strict_local_minima(values):
    """Indices k with values[k-1] > values[k] < values[k+1]."""
    v = np.asarray(values)
    return [
        k for k in range(1, v.size - 1) if v[k - 1] > v[k] and v[k] < v[k + 1]
    ]


def local_maxima(values, floor=0.0):
    # plateau-tolerant: a two-sample tie at a symmetric peak counts once
    v = np.asarray(values)
    return [
        k
        for k in range(1, v.size - 1)
        if v[k] >= v[k - 1] and v[k] > v[k + 1] and v[k] > floor
    ]
