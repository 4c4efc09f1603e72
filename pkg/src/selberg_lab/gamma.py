"""Complex log-gamma, the gamma quotient G(s) and its large-t asymptotics.

``log_gamma`` returns the analytic branch of log Gamma (branch cut on the
negative real axis), i.e. the same function as ``scipy.special.loggamma``.
It is continuous along vertical lines, which is what the phase fits need.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .core import FunctionalEquation, degree
from .errors import FitFailure, SingularityError

SINGULAR_TOL = 1e-10

_LOG_2PI_HALF = 0.5 * math.log(2 * math.pi)
_LOG_PI = math.log(math.pi)
_STIRLING_RADIUS = 15.0
# B_{2k} / (2k (2k-1)), k = 1..12
_STIRLING = np.array(
    [
        1 / 12,
        -1 / 360,
        1 / 1260,
        -1 / 1680,
        1 / 1188,
        -691 / 360360,
        1 / 156,
        -3617 / 122400,
        43867 / 244188,
        -174611 / 125400,
        77683 / 5796,
        -236364091 / 1506960,
    ]
)


def _stirling(z: np.ndarray) -> np.ndarray:
    # Requires Re z > 0 and |z| >= _STIRLING_RADIUS.
    r = 1.0 / z
    r2 = r * r
    acc = np.zeros_like(z)
    for c in _STIRLING[::-1]:
        acc = acc * r2 + c
    return (z - 0.5) * np.log(z) - z + _LOG_2PI_HALF + acc * r


def _log_gamma_right(z: np.ndarray) -> np.ndarray:
    """log Gamma for Re z >= 0 (shift recurrence, then Stirling)."""
    need = np.maximum(0, np.ceil(_STIRLING_RADIUS - z.real)).astype(int)
    need[np.abs(z) >= _STIRLING_RADIUS] = 0
    shift = np.zeros_like(z)
    w = z.copy()
    for k in range(int(need.max()) if need.size else 0):
        m = need > k
        shift[m] += np.log(w[m])
        w[m] += 1
    return _stirling(w) - shift


def _log_sin_pi_upper(z: np.ndarray) -> np.ndarray:
    """Analytic log sin(pi z) on Im z >= 0 (continuous along the half-plane)."""
    x = z.real
    frac = x - np.round(x)
    e = np.exp(2j * np.pi * (frac + 1j * z.imag))
    return math.log(0.5) + 0.5j * np.pi - 1j * np.pi * z + np.log1p(-e)


def log_gamma(z):
    """Analytic-branch log Gamma(z) for scalar or array complex input.

    Raises SingularityError within ``SINGULAR_TOL`` of a non-positive integer.
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    a = np.atleast_1d(arr).astype(complex)
    n = np.round(a.real)
    if np.any((n <= 0) & (np.abs(a - n) < SINGULAR_TOL)):
        raise SingularityError(f"log_gamma: argument at a pole ({a[(n <= 0) & (np.abs(a - n) < SINGULAR_TOL)][0]})")
    lower = a.imag < 0
    w = np.where(lower, np.conj(a), a)
    out = np.empty_like(w)
    right = w.real >= 0.0
    if right.any():
        out[right] = _log_gamma_right(w[right])
    left = ~right
    if left.any():
        wl = w[left]
        out[left] = _LOG_PI - _log_sin_pi_upper(wl) - _log_gamma_right(1 - wl)
    out = np.where(lower, np.conj(out), out)
    return complex(out[0]) if scalar else out.reshape(arr.shape)


def _check_factor_args(args: np.ndarray, what: str):
    n = np.round(args.real)
    bad = (n <= 0) & (np.abs(args - n) < SINGULAR_TOL)
    if np.any(bad):
        raise SingularityError(f"{what}: gamma argument {args[bad].ravel()[0]} is a pole")


def log_G(fe: FunctionalEquation, s) -> np.ndarray | complex:
    """sum log Gamma(lam s + mu) - sum log Gamma(lam' s + mu')."""
    s_arr = np.asarray(s, dtype=complex)
    acc = np.zeros(s_arr.shape, dtype=complex)
    for sign, g in fe.factors():
        arg = float(g.lam) * s_arr + g.mu
        _check_factor_args(np.atleast_1d(arg), "quotient_G")
        acc = acc + sign * log_gamma(arg)
    return complex(acc) if acc.ndim == 0 else acc


def quotient_G(fe: FunctionalEquation, s):
    """G(s) evaluated through log-gamma sums."""
    return np.exp(log_G(fe, s))


def log_reflected(fe: FunctionalEquation, t, w=0j):
    """log of G~(1/2 - it - w) / G(1/2 + it + w), continuous in t."""
    t_arr = np.asarray(t, dtype=float)
    w = complex(w)
    acc = np.zeros(t_arr.shape, dtype=complex)
    for sign, g in fe.factors():
        lam = float(g.lam)
        top = lam * (0.5 - 1j * t_arr - w) + np.conj(g.mu)
        bot = lam * (0.5 + 1j * t_arr + w) + g.mu
        _check_factor_args(np.atleast_1d(top), "reflected_quotient")
        _check_factor_args(np.atleast_1d(bot), "reflected_quotient")
        acc = acc + sign * (log_gamma(top) - log_gamma(bot))
    return complex(acc) if acc.ndim == 0 else acc


def log_reflection(fe: FunctionalEquation, s):
    """log of G~(1 - s) / G(s) for arbitrary (array) s, where G~(z) = conj(G(conj z))."""
    s_arr = np.asarray(s, dtype=complex)
    acc = np.zeros(s_arr.shape, dtype=complex)
    for sign, g in fe.factors():
        lam = float(g.lam)
        top = lam * (1 - s_arr) + np.conj(g.mu)
        bot = lam * s_arr + g.mu
        _check_factor_args(np.atleast_1d(top), "reflection")
        _check_factor_args(np.atleast_1d(bot), "reflection")
        acc = acc + sign * (log_gamma(top) - log_gamma(bot))
    return complex(acc) if acc.ndim == 0 else acc


def reflected_quotient(fe: FunctionalEquation, t):
    """G~(1/2 - it) / G(1/2 + it) where G~(s) = conj(G(conj s))."""
    return np.exp(log_reflected(fe, t))


@dataclass(frozen=True)
class AsymptoticConstants:
    """Constants of G~(1/2-it)/G(1/2+it) ~ e^{-i d t log(t/2e)} t^{iA} e^{iB} C^{-it}.

    ``a_const``, ``b_const``, ``c_const`` are the fitted values and are the ones
    used downstream.  ``formula_*`` come from a direct Stirling expansion;
    ``paper_b``/``paper_c`` are the published closed forms, kept for comparison.
    """

    a_const: float
    b_const: float
    c_const: float
    degree: float
    formula_a: float
    formula_b: float
    formula_c: float
    paper_b: complex
    paper_c: float
    fit_residual: float
    discrepancy: str | None = None

    def model(self, t):
        t = np.asarray(t, dtype=float)
        ph = (
            -self.degree * t * np.log(t / (2 * math.e))
            + self.a_const * np.log(t)
            + self.b_const
            - t * math.log(self.c_const)
        )
        return np.exp(1j * ph)


def _wrap(x: float) -> float:
    return (x + math.pi) % (2 * math.pi) - math.pi


def formula_constants(fe: FunctionalEquation) -> tuple[float, float, float]:
    """(A, B, C) from a termwise Stirling expansion of each gamma ratio."""
    d = float(degree(fe))
    a = b = log_c = 0.0
    for sign, g in fe.factors():
        lam, mu = float(g.lam), g.mu
        a += -2 * sign * mu.imag
        b += sign * (-2 * mu.imag * math.log(lam) - 0.5 * math.pi * (lam + 2 * mu.real - 1))
        log_c += sign * 2 * lam * math.log(lam)
    log_c += d * math.log(2)
    return a, _wrap(b), math.exp(log_c)


def paper_constants(fe: FunctionalEquation) -> tuple[complex, float]:
    """B and C exactly as printed alongside the refined Stirling estimate."""
    mu = sum((g.mu for g in fe.numerator), 0j)
    mup = sum((g.mu for g in fe.denominator), 0j)
    inner = sum(((g.mu.conjugate() - g.mu) * math.log(float(g.lam)) for g in fe.numerator), 0j)
    inner -= sum(((g.mu.conjugate() - g.mu) * math.log(float(g.lam)) for g in fe.denominator), 0j)
    b = (
        -1j * inner
        - (mu - mu.conjugate())
        + (mup - mup.conjugate())
        - ((mu - mu.conjugate()) - (mup - mup.conjugate()) + 1) * math.pi / 2
    )
    log_c = 1.0
    log_c += sum(2 * float(g.lam) * math.log(float(g.lam)) for g in fe.numerator)
    log_c -= sum(2 * float(g.lam) * math.log(float(g.lam)) for g in fe.denominator)
    return complex(b), math.exp(log_c)


FIT_T_RANGE = (1e3, 1e4)
FIT_POINTS = 400
FIT_TOL = 1e-7
AGREE_TOL = 1e-6


def asymptotic_constants(fe: FunctionalEquation, t_range=FIT_T_RANGE, n_points=FIT_POINTS) -> AsymptoticConstants:
    """Fit (A, B, C) to the exact reflected quotient and compare with formulas.

    The fit is linear least squares of the phase of
    ``Q(t) e^{i d t log(t/2e)}`` on ``[log t, 1, t, 1/t, 1/t^2]``.
    """
    d = float(degree(fe))
    fa, fb, fc = formula_constants(fe)
    pb, pc = paper_constants(fe)
    if not fe.numerator and not fe.denominator:
        return AsymptoticConstants(0.0, 0.0, 1.0, d, fa, fb, fc, pb, pc, 0.0)

    t = np.geomspace(*t_range, n_points)
    logq = log_reflected(fe, t) + 1j * d * t * np.log(t / (2 * math.e))
    y = logq.imag
    basis = np.column_stack([np.log(t), np.ones_like(t), t / t_range[1], t_range[0] / t, (t_range[0] / t) ** 2])
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    resid = float(np.max(np.abs(basis @ coef - y)))
    # modulus part: log|Q| should vanish like 1/t
    re = logq.real
    re_basis = np.column_stack([np.ones_like(t), t_range[0] / t, (t_range[0] / t) ** 2])
    re_coef, *_ = np.linalg.lstsq(re_basis, re, rcond=None)
    resid = max(resid, float(np.max(np.abs(re_basis @ re_coef - re))), abs(float(re_coef[0])))
    if not np.isfinite(resid) or resid > FIT_TOL:
        raise FitFailure(f"asymptotic fit residual {resid:.3e} exceeds {FIT_TOL:.0e}")

    a_fit = float(coef[0])
    b_fit = _wrap(float(coef[1]))
    c_fit = math.exp(-float(coef[2]) / t_range[1])
    issues = []
    if abs(a_fit - fa) > AGREE_TOL:
        issues.append(f"A: fit {a_fit!r} vs formula {fa!r}")
    if abs(_wrap(b_fit - fb)) > AGREE_TOL:
        issues.append(f"B: fit {b_fit!r} vs formula {fb!r}")
    if abs(c_fit - fc) > AGREE_TOL * fc:
        issues.append(f"C: fit {c_fit!r} vs formula {fc!r}")
    return AsymptoticConstants(
        a_fit, b_fit, c_fit, d, fa, fb, fc, pb, pc, resid, "; ".join(issues) or None
    )


def quotient_bound_check(fe: FunctionalEquation, w: complex, t: float, calibration=None):
    """Compare |G~(1/2-it-w)/G(1/2+it+w)| with K (1+|t+v|+|u|)^(-u d).

    Returns ``(value, bound, violated)``.  K is calibrated on a reference grid
    unless given explicitly.
    """
    w = complex(w)
    d = float(degree(fe))
    value = float(abs(np.exp(log_reflected(fe, t, w))))
    k = _calibrate_bound(fe) if calibration is None else calibration
    bound = k * (1 + abs(t + w.imag) + abs(w.real)) ** (-w.real * d)
    return value, bound, value > bound


_BOUND_CACHE: dict = {}


def _calibrate_bound(fe: FunctionalEquation) -> float:
    if fe in _BOUND_CACHE:
        return _BOUND_CACHE[fe]
    d = float(degree(fe))
    ts = np.geomspace(1, 1e3, 40)
    k = 1.0
    for u in (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0):
        vals = np.abs(np.exp(log_reflected(fe, ts, complex(u, 0))))
        ref = (1 + ts + abs(u)) ** (-u * d)
        k = max(k, float(np.max(vals / ref)))
    _BOUND_CACHE[fe] = k
    return k


def write_quotient_csv(fe: FunctionalEquation, t_values, fh, consts: AsymptoticConstants | None = None):
    """Emit t, Re/Im of the exact quotient and of the model, and the abs error."""
    consts = consts or asymptotic_constants(fe)
    t = np.asarray(t_values, dtype=float)
    q = reflected_quotient(fe, t)
    m = consts.model(t)
    writer = csv.writer(fh, lineterminator="\r\n")
    writer.writerow(["t", "re_quotient", "im_quotient", "model_re", "model_im", "abs_error"])
    for row in zip(t, q.real, q.imag, m.real, m.imag, np.abs(q - m)):
        writer.writerow([repr(float(x)) for x in row])
