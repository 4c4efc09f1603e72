"""Values of F on and near the critical line.

Two routes are provided.

* ``direct_value`` evaluates sources with periodic or finite coefficient
  structure exactly: each residue class is a Hurwitz zeta function summed
  explicitly up to a cutoff, with an Euler-Maclaurin tail.
* ``critical_value`` uses the smoothed identity

      sum_n a_n e^{-n/X} n^{-s} = F(s) + r1 + r2,     s = 1/2 + it,

  where r1 collects the residues of F(s+w) X^w Gamma(w) at the poles of F
  and r2 is the same integrand taken upward along Re(w) = -1 + eta.  On that
  line F(s+w) is rewritten through the functional equation, so only the
  conjugate series at real part 3/2 - eta is needed.  Hence
  F(s) = smoothed - r1 - r2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from sympy import bernoulli

from .arithmetic import MAX_MATERIALIZED, CoefficientSource, Convolution, Explicit, Periodic
from .core import LFunctionSpec
from .errors import ConvergenceError, PreconditionError, SingularityError, TruncationError, ValidationError
from .gamma import log_gamma, log_reflection

EM_TERMS = 24
_CHUNK = 2_000_000


@lru_cache(maxsize=None)
def _em_coefficients() -> np.ndarray:
    """B_{2j} / (2j)! for j = 1..EM_TERMS."""
    return np.array([float(bernoulli(2 * j) / math.factorial(2 * j)) for j in range(1, EM_TERMS + 1)])


def has_direct(src: CoefficientSource) -> bool:
    if isinstance(src, Periodic):
        return True
    if isinstance(src, Explicit):
        return src.complete
    if isinstance(src, Convolution):
        return has_direct(src.left) and has_direct(src.right)
    return False


def direct_value(src: CoefficientSource, s):
    """F(s) for sources built from periodic and finite pieces; any complex s."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    out = _direct(src, s_arr.ravel()).reshape(s_arr.shape)
    return complex(out[0]) if np.ndim(s) == 0 else out


def _direct(src, s: np.ndarray) -> np.ndarray:
    if isinstance(src, Periodic):
        return _periodic_value(np.asarray(src.residues), s - 1j * src.shift)
    if isinstance(src, Explicit):
        if not src.complete:
            raise PreconditionError("a truncated coefficient list has no direct evaluator")
        vals = np.asarray(src.values)
        nz = np.flatnonzero(vals)
        if len(nz) == 0:
            return np.zeros(len(s), dtype=complex)
        logn = np.log(nz + 1.0)
        return np.exp(-np.outer(s, logn)) @ vals[nz]
    if isinstance(src, Convolution):
        return _direct(src.left, s) * _direct(src.right, s)
    raise PreconditionError(f"no direct evaluator for {type(src).__name__} sources")


def _periodic_value(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """sum_n c(n mod q) n^{-z}, meromorphic continuation."""
    q = len(c)
    total = c.sum()
    near_pole = np.abs(z - 1) < SINGULAR_EPS
    if abs(total) > 1e-13 and np.any(near_pole):
        raise SingularityError(f"evaluation point {z[near_pole][0]} is at the pole s = 1")
    out = np.empty(len(z), dtype=complex)
    # one cutoff per block of similar |z| keeps the work proportional to |z|
    order = np.argsort(np.abs(z))
    zs = z[order]
    cuts = _cutoffs(np.abs(zs))
    start = 0
    while start < len(zs):
        n_cut = cuts[start]
        stop = start + 1
        while stop < len(zs) and cuts[stop] == n_cut:
            stop += 1
        block = zs[start:stop]
        rows = max(1, _CHUNK // (q * n_cut))
        for i in range(0, len(block), rows):
            out[order[start + i : start + min(stop - start, i + rows)]] = _periodic_block(c, total, block[i : i + rows], n_cut)
        start = stop
    return out


SINGULAR_EPS = 1e-10


def _cutoffs(absz: np.ndarray) -> np.ndarray:
    # the Euler-Maclaurin terms shrink like (|z| / (2 pi x))^2 per step
    raw = absz / math.pi + 20
    return (np.ceil(raw / 16) * 16).astype(int)


def _periodic_block(c: np.ndarray, total: complex, z: np.ndarray, n_cut: int) -> np.ndarray:
    q = len(c)
    n = np.arange(1, q * n_cut + 1)
    coef = c[n % q]
    keep = coef != 0
    head = np.exp(-np.outer(z, np.log(n[keep]))) @ coef[keep]

    r = np.arange(1, q + 1)
    cr = c[r % q]
    x = n_cut + r / q  # tail: sum_{k >= 0} (x + k)^{-z}
    logx = np.log(x)
    zz = z[:, None]
    xpow = np.exp(-zz * logx)  # x^{-z}
    # x^{1-z}/(z-1) = x * x^{-z} / (z-1); split off the pole part 1/(z-1)
    w = (1 - zz) * logx
    with np.errstate(invalid="ignore", divide="ignore"):
        phi = np.where(np.abs(w) < 1e-8, 1 + w / 2, np.expm1(w) / np.where(w == 0, 1, w))
    regular = -logx * phi  # (x^{1-z} - 1)/(z - 1)
    tail = regular + xpow / 2
    bern = _em_coefficients()
    rising = zz.copy()  # z (z+1) ... (z+2j-2)
    xk = xpow / x  # x^{-z-1}
    for j in range(1, EM_TERMS + 1):
        tail = tail + bern[j - 1] * rising * xk
        rising = rising * (zz + 2 * j - 1) * (zz + 2 * j)
        xk = xk / (x * x)
    qz = np.exp(-z * math.log(q))
    result = head + qz * (tail @ cr)
    if abs(total) > 1e-13:
        result = result + qz * total / (z - 1)
    return result


# ---------------------------------------------------------------------------
# smoothed identity


@dataclass(frozen=True)
class EvalParams:
    X: float | None = None
    eta: float = 0.1
    contour_half_height: float | None = None
    quadrature_nodes: int = 16
    tol: float = 1e-10

    def __post_init__(self):
        if not 0 < self.eta < 1:
            raise ValidationError(f"eta must lie in (0, 1), got {self.eta}")
        if self.X is not None and not self.X > 0:
            raise ValidationError(f"X must be positive, got {self.X}")
        if self.quadrature_nodes < 2:
            raise ValidationError("need at least two quadrature nodes per panel")

    def smoothing(self, t: float) -> float:
        return self.X if self.X is not None else max(abs(t), 2.0) ** (4 / 3)

    def half_height(self, t: float) -> float:
        return self.contour_half_height if self.contour_half_height is not None else 30 + 2 * abs(t)


DEFAULT_PARAMS = EvalParams()


def truncation_point(X: float) -> int:
    return int(math.ceil(X * (35 + max(math.log(X), 0))))


def smoothed_sum(spec: LFunctionSpec, t: float, params: EvalParams = DEFAULT_PARAMS) -> complex:
    X = params.smoothing(t)
    n_top = truncation_point(X)
    src = spec.coefficients
    if isinstance(src, Explicit) and src.complete:
        n_top = min(n_top, max(len(src.values), 1))
    elif n_top > MAX_MATERIALIZED and not isinstance(src, Periodic):
        raise TruncationError(f"smoothed sum needs {n_top} coefficients, above the cap {MAX_MATERIALIZED}")
    a = src.coefficients(n_top)
    n = np.arange(1, n_top + 1, dtype=float)
    weights = np.exp(-n / X - (0.5 + 1j * t) * np.log(n))
    return complex(np.dot(a, weights))


def _g_derivatives(w0: complex, X: float, count: int) -> list[complex]:
    """g^{(k)}(w0)/k! for g(w) = X^w Gamma(w), k < count, by a Cauchy integral."""
    if count == 1:
        return [complex(np.exp(w0 * math.log(X) + log_gamma(w0)))]
    radius = min(0.25, 0.5 * min(abs(w0 + k) for k in range(0, 4)))
    m = 64
    theta = 2 * np.pi * np.arange(m) / m
    nodes = w0 + radius * np.exp(1j * theta)
    vals = np.exp(nodes * math.log(X) + log_gamma(nodes))
    return [complex(np.mean(vals * np.exp(-1j * k * theta)) / radius**k) for k in range(count)]


def principal_part(spec: LFunctionSpec, pole) -> tuple[complex, ...]:
    """(c_{-m}, ..., c_{-1}) of F at the pole."""
    if pole.laurent is not None:
        return pole.laurent
    if pole.order > 1:
        raise PreconditionError(f"pole of order {pole.order} at {pole.at} needs supplied Laurent data")
    if not has_direct(spec.coefficients):
        raise PreconditionError(f"residue at {pole.at} not supplied and no direct evaluator is available")
    radius, m = 0.1, 64
    theta = 2 * np.pi * np.arange(m) / m
    vals = direct_value(spec.coefficients, pole.at + radius * np.exp(1j * theta))
    return (complex(np.mean(vals * radius * np.exp(1j * theta))),)


def residue_term_r1(spec: LFunctionSpec, t: float, params: EvalParams = DEFAULT_PARAMS) -> complex:
    X = params.smoothing(t)
    total = 0j
    for pole in spec.fe.poles:
        w0 = pole.at - 0.5 - 1j * t
        lau = principal_part(spec, pole)
        derivs = _g_derivatives(w0, X, pole.order)
        # c_{-k} (w - w0)^{-k} against the Taylor coefficient g^{(k-1)}(w0)/(k-1)!
        for k in range(1, pole.order + 1):
            total += lau[pole.order - k] * derivs[k - 1]
    return total


def reflected_value(spec: LFunctionSpec, s) -> np.ndarray:
    """F(s) = omega Q^{1-2s} [G~(1-s)/G(s)] conj(F(conj(1-s))) through the direct evaluator."""
    fe = spec.fe
    s = np.asarray(s, dtype=complex)
    dual = np.conj(direct_value(spec.coefficients, np.conj(1 - s)))
    return fe.omega * np.exp((1 - 2 * s) * math.log(fe.Q) + log_reflection(fe, s)) * dual


def _check_contour(spec: LFunctionSpec, t: float, u: float):
    for pole in spec.fe.poles:
        if abs(pole.at.real - (0.5 + u)) < 1e-8:
            raise SingularityError(f"contour Re(w) = {u} passes through the pole at {pole.at}")


def contour_term_r2(spec: LFunctionSpec, t: float, params: EvalParams = DEFAULT_PARAMS) -> complex:
    if spec.fe.extra_factor is not None:
        raise PreconditionError("functional equations with a Dirichlet-series factor are not supported")
    X = params.smoothing(t)
    u = -1 + params.eta
    _check_contour(spec, t, u)
    V = params.half_height(t)
    s = 0.5 + 1j * t
    x_ref, w_ref = leggauss(params.quadrature_nodes)
    logX = math.log(X)

    def integrate(panels: int) -> complex:
        edges = np.linspace(-V, V, panels + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        v = (mid[:, None] + half[:, None] * x_ref[None, :]).ravel()
        wts = (half[:, None] * w_ref[None, :]).ravel()
        w = u + 1j * v
        f = reflected_value(spec, s + w)
        vals = f * np.exp(w * logX + log_gamma(w))
        return complex(np.dot(wts, vals)) / (2 * math.pi)

    panels = max(8, int(math.ceil(2 * V / 2.0)))
    prev = integrate(panels)
    for _ in range(8):
        panels *= 2
        cur = integrate(panels)
        if abs(cur - prev) <= params.tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise ConvergenceError(f"contour quadrature did not settle at t = {t} (last change {abs(cur - prev):.3g})")


@dataclass(frozen=True)
class CriticalValue:
    t: float
    value: complex
    smoothed: complex
    r1: complex
    r2: complex
    X: float
    eta: float

    @property
    def r2_bound_ratio(self) -> float:
        """|r2| / ((1+|t|)^{1-eta} X^{eta-1})."""
        return abs(self.r2) / ((1 + abs(self.t)) ** (1 - self.eta) * self.X ** (self.eta - 1))


def critical_value_parts(spec: LFunctionSpec, t: float, params: EvalParams = DEFAULT_PARAMS) -> CriticalValue:
    sm = smoothed_sum(spec, t, params)
    r1 = residue_term_r1(spec, t, params)
    r2 = contour_term_r2(spec, t, params)
    return CriticalValue(t, sm - r1 - r2, sm, r1, r2, params.smoothing(t), params.eta)


def critical_value(spec: LFunctionSpec, t: float, params: EvalParams = DEFAULT_PARAMS) -> complex:
    """F(1/2 + it) via the smoothed identity."""
    return critical_value_parts(spec, t, params).value


def completed_value(spec: LFunctionSpec, s, value) -> complex:
    """Phi(s) = Q^s G(s) F(s) given F(s)."""
    from .gamma import log_G

    return complex(np.exp(s * math.log(spec.fe.Q) + log_G(spec.fe, s)) * value)
