"""Independent reference computations used by the tests."""

from __future__ import annotations

import numpy as np


def ramanujan_tau(n_max: int) -> list[int]:
    """tau(1..n_max) from q * prod (1 - q^k)^24 with exact integers.

    prod (1 - q^k)^3 = sum_j (-1)^j (2j + 1) q^{j(j+1)/2} (Jacobi), so the
    24th power is eight multiplications by a sparse series.
    """
    size = n_max  # coefficients of q^0 .. q^{n_max - 1}
    sparse = []
    j = 0
    while j * (j + 1) // 2 < size:
        sparse.append((j * (j + 1) // 2, (-1) ** j * (2 * j + 1)))
        j += 1
    series = np.zeros(size, dtype=object)
    series[0] = 1
    for _ in range(8):
        out = np.zeros(size, dtype=object)
        for e, c in sparse:
            out[e:] += c * series[: size - e]
        series = out
    return [int(v) for v in series]


def divisor_count(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def brute_convolution(a, b, n_max):
    out = [0j] * n_max
    for d in range(1, n_max + 1):
        for e in range(1, n_max // d + 1):
            out[d * e - 1] += a[d - 1] * b[e - 1]
    return out


def tau_by_recursion(n_max: int) -> list[int]:
    """tau from the sigma recursion: (n - 1) tau(n) = -24 sum_{k<n} sigma(n-k) tau(k).

    This follows from the logarithmic derivative of prod (1 - q^k)^24.
    """
    sigma = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            sigma[m] += d
    tau = [0, 1]
    for n in range(2, n_max + 1):
        acc = sum(sigma[n - k] * tau[k] for k in range(1, n))
        tau.append(-24 * acc // (n - 1))
    return tau[1:]


def mp_dirichlet(residues, s, dps: int = 30) -> complex:
    """sum c(n mod q) n^{-s} continued analytically, via Hurwitz zeta."""
    import mpmath

    with mpmath.workdps(dps):
        return complex(mpmath.dirichlet(mpmath.mpc(s.real, s.imag), list(residues)))


def mp_reflected_quotient(factors, t: float, dps: int = 30) -> complex:
    """prod over (sign, lam, mu) of (Gamma(lam(1/2-it)+conj mu) / Gamma(lam(1/2+it)+mu))^sign."""
    import mpmath

    with mpmath.workdps(dps):
        acc = mpmath.mpc(0)
        for sign, lam, mu in factors:
            lam = mpmath.mpf(lam)
            top = lam * mpmath.mpc(0.5, -t) + mpmath.conj(mu)
            bot = lam * mpmath.mpc(0.5, t) + mu
            acc += sign * (mpmath.loggamma(top) - mpmath.loggamma(bot))
        return complex(mpmath.exp(acc))


def window_enumeration(sets, window):
    """Multiset of points -(n + beta)/alpha with real part >= -window, by plain loops."""
    from collections import Counter
    from fractions import Fraction

    out = Counter()
    for alpha, beta_re, beta_im, mult in sets:
        n = 0
        while True:
            re = -(n + Fraction(beta_re)) / Fraction(alpha)
            if re < -window:
                break
            out[(re, -Fraction(beta_im) / Fraction(alpha))] += mult
            n += 1
    return out
