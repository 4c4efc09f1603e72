"""Periodicity detector for degree-one series and the classifiers built on it.

For s = 1/2 + it the window integral

    FF(alpha, T) = alpha^{-1/2} int_{alpha T}^{2 alpha T} F(s) e^{i t log(t/(2 pi e alpha)) - i pi/4} dt

grows like T^{1+iA} exactly when q alpha is a positive integer m, where
q = C pi Q^2 and A, C come from the gamma quotient.  The limit is

    FF(alpha) = omega e^{i(B - pi/4)} conj(a_m) alpha^{iA} q^{-1/2} (2^{1+iA} - 1)/(1 + iA),

and zero otherwise.  ``classify_degree_one`` then writes a series whose
coefficients a_n n^{-iA} have period q as sum_chi P_chi(s - iA) L(s - iA, chi*).
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .arithmetic import CoefficientSource, Explicit, dirichlet_convolve
from .characters import DirichletCharacter, character_group
from .core import FunctionalEquation, LFunctionSpec, degree
from .errors import ConvergenceError, DegreeError, PreconditionError, SingularityError, ValidationError
from .evaluator import EvalParams, critical_value, direct_value, has_direct
from .gamma import AGREE_TOL, AsymptoticConstants, asymptotic_constants, log_G
from .gamma_sets import degree_zero_shape_check

INTEGRALITY_TOL = 1e-6
T_OFFSETS = (1.0, 1.01, 1.03)
GL_NODES = 16

EMPTY_REGION_MESSAGE = (
    "degree {d} lies strictly between 0 and 1: no such series exists, since for "
    "0 < d < 1 the functional equation would force F(s) to be unbounded on a "
    "vertical line Re(s) = -eps while the Dirichlet series keeps it bounded"
)


@lru_cache(maxsize=256)
def constants(fe: FunctionalEquation) -> AsymptoticConstants:
    return asymptotic_constants(fe)


def degree_gate(spec: LFunctionSpec) -> Fraction | float:
    """Reject specs of degree strictly between 0 and 1."""
    d = degree(spec.fe)
    if 0 < d < 1:
        raise DegreeError(EMPTY_REGION_MESSAGE.format(d=d))
    return d


def _require_degree_one(spec: LFunctionSpec):
    d = degree_gate(spec)
    if d != 1:
        raise DegreeError(f"the detector needs degree 1, got {d}")
    if spec.abscissa > 1:
        raise PreconditionError(f"the detector needs abscissa <= 1, got {spec.abscissa}")


def recover_A(spec: LFunctionSpec) -> float:
    """The shift A; the closed Stirling value when the fit confirms it."""
    c = constants(spec.fe)
    return c.formula_a if abs(c.formula_a - c.a_const) <= AGREE_TOL else c.a_const


def recover_q(spec: LFunctionSpec) -> tuple[float, bool]:
    """q = C pi Q^2 and whether it is a positive integer (relative tolerance 1e-6)."""
    _require_degree_one(spec)
    q = constants(spec.fe).c_const * math.pi * spec.fe.Q**2
    m = round(q)
    return q, bool(m >= 1 and abs(q - m) <= INTEGRALITY_TOL * max(1.0, q))


def closed_form(spec: LFunctionSpec, alpha: float, coeffs: np.ndarray | None = None) -> complex:
    """Limit of FF(alpha, T) / T^{1+iA}."""
    _require_degree_one(spec)
    c = constants(spec.fe)
    q, _ = recover_q(spec)
    qa = q * alpha
    m = round(qa)
    if m < 1 or abs(qa - m) > INTEGRALITY_TOL * max(1.0, qa):
        return 0j
    a_m = (coeffs if coeffs is not None else spec.coefficients.coefficients(m))[m - 1]
    A = recover_A(spec)
    return complex(
        spec.fe.omega
        * cmath.exp(1j * (c.b_const - math.pi / 4))
        * np.conj(a_m)
        * alpha ** (1j * A)
        * q**-0.5
        * (2 ** (1 + 1j * A) - 1)
        / (1 + 1j * A)
    )


def _frequency_bound(t: np.ndarray, alpha: float, q: float) -> np.ndarray:
    # the faster of the weight phase and the oscillation of F(1/2+it) itself
    weight = np.abs(np.log(t / (2 * math.pi * alpha)))
    own = np.log(np.maximum(q * t / (2 * math.pi), 1.0))
    return np.maximum(weight, own) + 1.0


def _panel_edges(a: float, b: float, alpha: float, q: float) -> np.ndarray:
    edges = [a]
    x = a
    while x < b:
        h = math.pi / float(_frequency_bound(np.array([x]), alpha, q)[0])
        x = min(b, x + h)
        edges.append(x)
    return np.array(edges)


def _gl_integral(f, edges: np.ndarray) -> complex:
    x_ref, w_ref = leggauss(GL_NODES)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    t = (mid[:, None] + half[:, None] * x_ref[None, :]).ravel()
    wts = (half[:, None] * w_ref[None, :]).ravel()
    total = 0j
    for i in range(0, len(t), 8192):
        total += complex(np.dot(wts[i : i + 8192], f(t[i : i + 8192])))
    return total


@dataclass(frozen=True)
class WindowIntegral:
    alpha: float
    T: float
    value: complex
    panels: int
    halving_gap: float


def script_F(
    spec: LFunctionSpec, alpha: float, T: float, params: EvalParams | None = None, method: str = "direct"
) -> WindowIntegral:
    """FF(alpha, T) by Gauss-Legendre panels no longer than pi / (local frequency).

    ``method="direct"`` takes F(1/2+it) from the direct evaluator;
    ``method="smoothed"`` uses the smoothed identity at every node (slow).
    A spot check recomputes every 64th panel with halved panels.
    """
    _require_degree_one(spec)
    if T < 50:
        raise PreconditionError(f"T must be >= 50, got {T}")
    if alpha <= 0:
        raise ValidationError("alpha must be positive")
    q, _ = recover_q(spec)
    src = spec.coefficients
    if method == "direct":
        if not has_direct(src):
            raise PreconditionError("direct evaluation is unavailable for this source; use method='smoothed'")

        def F(t):
            return direct_value(src, 0.5 + 1j * t)

    elif method == "smoothed":
        p = params or EvalParams()

        def F(t):
            return np.array([critical_value(spec, float(x), p) for x in t])

    else:
        raise ValidationError(f"unknown method {method!r}")

    def integrand(t):
        phase = t * np.log(t / (2 * math.pi * math.e * alpha)) - math.pi / 4
        return F(t) * np.exp(1j * phase)

    edges = _panel_edges(alpha * T, 2 * alpha * T, alpha, q)
    value = _gl_integral(integrand, edges) / math.sqrt(alpha)
    gap = 0.0
    for i in range(0, len(edges) - 1, 64):
        a, b = edges[i], edges[i + 1]
        coarse = _gl_integral(integrand, np.array([a, b]))
        fine = _gl_integral(integrand, np.array([a, 0.5 * (a + b), b]))
        gap = max(gap, abs(coarse - fine))
    if gap > 1e-8 * max(1.0, abs(value)):
        raise ConvergenceError(f"panel halving changed a panel by {gap:.3g}")
    return WindowIntegral(alpha, T, complex(value), len(edges) - 1, gap)


def exp_sum_surrogate(spec: LFunctionSpec, alpha: float, T: float) -> complex:
    """2 pi sum_{T < 2 pi n < 2T} a_n e(-n alpha)."""
    lo = int(math.floor(T / (2 * math.pi))) + 1
    hi = int(math.ceil(T / math.pi)) - 1
    if hi < lo:
        return 0j
    a = spec.coefficients.coefficients(hi)
    n = np.arange(lo, hi + 1)
    n = n[(2 * math.pi * n > T) & (2 * math.pi * n < 2 * T)]
    return complex(2 * math.pi * np.sum(a[n - 1] * np.exp(-2j * math.pi * n * alpha)))


@dataclass(frozen=True)
class DetectorSample:
    alpha: float
    T: float
    normalized: complex
    closed_form: complex
    gap: float
    surrogate_gap: float


@dataclass(frozen=True)
class DetectorResult:
    shift_A: float
    q_candidate: float
    q_is_integer: bool
    samples: tuple
    closed_form: dict
    convergence_rate: float | None


def _medoid(values: list[complex]) -> complex:
    arr = np.array(values)
    cost = np.abs(arr[:, None] - arr[None, :]).sum(axis=1)
    return complex(arr[int(np.argmin(cost))])


def _window_job(job):
    spec, alpha, T, method = job
    return script_F(spec, alpha, T, method=method).value, exp_sum_surrogate(spec, alpha, T)


def detect(
    spec: LFunctionSpec, alphas, Ts, offsets=T_OFFSETS, method: str = "direct", workers: int = 1
) -> DetectorResult:
    """Normalized FF(alpha, T)/T^{1+iA} on a grid, medoid over nearby T.

    With ``workers > 1`` the window integrals run in a process pool; results
    are merged in grid order so the output does not depend on scheduling.
    """
    _require_degree_one(spec)
    A = recover_A(spec)
    q, is_int = recover_q(spec)
    jobs = [(spec, float(alpha), T * off, method) for alpha in alphas for T in Ts for off in offsets]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_window_job, jobs))
    else:
        results = [_window_job(job) for job in jobs]
    samples = []
    forms = {}
    k = 0
    for alpha in alphas:
        cf = closed_form(spec, alpha)
        forms[float(alpha)] = cf
        for T in Ts:
            vals, sur = [], []
            for off in offsets:
                Tk = T * off
                norm = Tk ** (1 + 1j * A)
                value, surrogate = results[k]
                k += 1
                vals.append(value / norm)
                sur.append(abs(value - surrogate))
            med = _medoid(vals)
            samples.append(DetectorSample(float(alpha), float(T), med, cf, abs(med - cf), float(np.median(sur))))
    rate = None
    for alpha in alphas:
        pts = [(s.T, s.gap) for s in samples if s.alpha == float(alpha) and s.gap > 0]
        if len(pts) >= 2:
            x, y = np.log([p[0] for p in pts]), np.log([p[1] for p in pts])
            slope = float(np.polyfit(x, y, 1)[0])
            rate = slope if rate is None else max(rate, slope)
    return DetectorResult(A, q, is_int, tuple(samples), forms, rate)


# ---------------------------------------------------------------------------
# periodicity and classification


def periodicity_test(src: CoefficientSource, A: float, q: int, horizon: int) -> tuple[bool, float]:
    """Max |a_{n+q}(n+q)^{-iA} - a_n n^{-iA}| for n <= horizon - q."""
    if q < 1:
        raise ValidationError("q must be a positive integer")
    if horizon < 10 * q:
        raise ValidationError(f"horizon must be at least 10 q = {10 * q}")
    a = src.coefficients(horizon)
    n = np.arange(1, horizon + 1)
    b = a * np.exp(-1j * A * np.log(n))
    dev = float(np.max(np.abs(b[q:] - b[:-q]))) if horizon > q else 0.0
    scale = max(1.0, float(np.max(np.abs(b))))
    return dev <= 1e-9 * scale, dev


def periodicity_scan(src: CoefficientSource, A_grid, q_max: int, horizon: int) -> tuple[float, float, int]:
    """Smallest periodicity deviation over the grid: (deviation, A, q)."""
    a = src.coefficients(horizon)
    logn = np.log(np.arange(1, horizon + 1))
    best = (math.inf, 0.0, 0)
    for A in A_grid:
        b = a * np.exp(-1j * A * logn)
        for q in range(1, q_max + 1):
            dev = float(np.max(np.abs(b[q:] - b[:-q])))
            if dev < best[0]:
                best = (dev, float(A), q)
    return best


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Component:
    conductor: int
    index: int
    polynomial: dict  # n -> coefficient of n^{-s}

    @property
    def character(self) -> DirichletCharacter:
        return character_group(self.conductor)[self.index]


@dataclass(frozen=True)
class ClassificationResult:
    shift_A: float
    period_q: int
    decomposition: tuple
    residual: float
    support_divides_q: bool

    def to_json(self) -> dict:
        return {
            "shift_A": self.shift_A,
            "period_q": self.period_q,
            "convention": "F(s) = sum_chi P_chi(s - iA) L(s - iA, chi*)",
            "decomposition": [
                {
                    "conductor": c.conductor,
                    "index": c.index,
                    "polynomial": [[n, _num(v)] for n, v in sorted(c.polynomial.items())],
                }
                for c in self.decomposition
            ],
            "residual": self.residual,
            "support_divides_q": self.support_divides_q,
        }


def _num(z: complex, digits: int = 12):
    re, im = round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0
    return [re, im]


def classify_degree_one(src: CoefficientSource, A: float, q: int, horizon: int | None = None) -> ClassificationResult:
    """Split a series with a_n n^{-iA} of period q into twisted Dirichlet L-functions."""
    horizon = horizon or max(10 * q, 200)
    ok, dev = periodicity_test(src, A, q, horizon)
    if not ok:
        raise PreconditionError(f"coefficients are not periodic with period {q} (deviation {dev:.3g})")
    a = src.coefficients(horizon)
    n = np.arange(1, horizon + 1)
    b = a * np.exp(-1j * A * np.log(n))
    table = {r: b[r - 1] for r in range(1, q + 1)}  # b on residues, r = q stands for 0

    polys: dict[tuple[int, int], dict[int, complex]] = {}
    for d in _divisors(q):
        k = q // d
        units = [m for m in range(1, k + 1) if math.gcd(m, k) == 1]
        for psi in character_group(k):
            coef = sum(table[((d * m - 1) % q) + 1] * np.conj(psi(m)) for m in units) / len(units)
            if abs(coef) < 1e-13:
                continue
            star = psi.primitive_character()
            # L(s, psi) = prod_{p | k} (1 - chi*(p) p^{-s}) L(s, chi*)
            poly = {d: complex(coef)}
            for p in _prime_factors(k):
                cp = star(p)
                if cp == 0:
                    continue
                nxt = dict(poly)
                for m_, v in poly.items():
                    nxt[m_ * p] = nxt.get(m_ * p, 0) - v * cp
                poly = nxt
            key = (star.modulus, star.index)
            tgt = polys.setdefault(key, {})
            for m_, v in poly.items():
                tgt[m_] = tgt.get(m_, 0) + v
    comps = []
    for (f, idx), poly in sorted(polys.items()):
        poly = {m_: v for m_, v in poly.items() if abs(v) > 1e-12}
        if poly:
            comps.append(Component(f, idx, poly))
    recon = reconstruct(comps, A, horizon)
    residual = float(np.max(np.abs(recon - a)))
    support = all(q % m_ == 0 for c in comps for m_ in c.polynomial)
    if residual > 1e-6:
        raise SingularityError(f"classification does not reproduce the coefficients (residual {residual:.3g})")
    return ClassificationResult(float(A), int(q), tuple(comps), residual, support)


def reconstruct(components, A: float, horizon: int) -> np.ndarray:
    """Coefficients of sum_chi P_chi(s - iA) L(s - iA, chi*) up to the horizon."""
    out = np.zeros(horizon, dtype=complex)
    for c in components:
        poly = np.zeros(horizon, dtype=complex)
        for m_, v in c.polynomial.items():
            if m_ <= horizon:
                poly[m_ - 1] += v
        out += dirichlet_convolve(poly, c.character.table(horizon))
    return out * np.exp(1j * A * np.log(np.arange(1, horizon + 1)))


# ---------------------------------------------------------------------------
# primitivity probe


@dataclass(frozen=True)
class ProbeResult:
    best_residual: float
    chi1: tuple
    t1: float
    chi2: tuple
    t2: float
    characters_tried: int
    grid: tuple
    horizon: int

    @property
    def factored(self) -> bool:
        return self.best_residual < 1e-8

    def to_json(self) -> dict:
        return {
            "best_residual": self.best_residual,
            "chi1": list(self.chi1),
            "t1": self.t1,
            "chi2": list(self.chi2),
            "t2": self.t2,
            "characters_tried": self.characters_tried,
            "grid": list(self.grid),
            "horizon": self.horizon,
        }


def primitive_characters(q_max: int) -> list[DirichletCharacter]:
    return [chi for f in range(1, q_max + 1) for chi in character_group(f) if chi.primitive]


def _mobius(n_max: int) -> np.ndarray:
    mu = np.ones(n_max + 1, dtype=int)
    is_comp = np.zeros(n_max + 1, dtype=bool)
    for p in range(2, n_max + 1):
        if not is_comp[p]:
            is_comp[2 * p :: p] = True
            mu[p::p] *= -1
            mu[p * p :: p * p] = 0
    return mu[1:]


def primitivity_probe(
    src: CoefficientSource, A_grid=None, q_max: int = 20, horizon: int = 40
) -> ProbeResult:
    """Search a_n = (chi1(.)(.)^{-it1} * chi2(.)(.)^{-it2})_n on a grid.

    For each (chi1, t1) the Dirichlet quotient D = a / L(s + it1, chi1) is
    formed exactly; a factorization needs D_n = chi2(n) n^{-it2}.  t2 is read
    off from D_p at the first prime p in {2, 3, 5} with chi2(p) != 0 and
    snapped to the grid (with both neighbours), then the residual
    max_{n <= horizon} |D_n - chi2(n) n^{-it2}| is taken.
    """
    grid = np.round(np.arange(-5.0, 5.0 + 1e-9, 0.01), 10) if A_grid is None else np.asarray(A_grid, dtype=float)
    step = round(float(np.median(np.diff(grid))), 12) if len(grid) > 1 else 1.0
    a = src.coefficients(horizon)
    if abs(a[0]) < 1e-12:
        raise PreconditionError("a_1 must be nonzero for a factorization search")
    a = a / a[0]
    n = np.arange(1, horizon + 1)
    logn = np.log(n)
    mu = _mobius(horizon)
    chars = primitive_characters(q_max)
    best = (math.inf, None, 0.0, None, 0.0)
    # divisor pairs for the convolution a * u
    pairs = [(d, m // d) for m in range(1, horizon + 1) for d in range(1, m + 1) if m % d == 0]
    d_idx = np.array([p[0] - 1 for p in pairs])
    e_idx = np.array([p[1] - 1 for p in pairs])
    m_idx = np.array([p[0] * p[1] - 1 for p in pairs])
    twist_phase = np.exp(-1j * np.outer(grid, logn))  # n^{-it} on the grid
    for chi1 in chars:
        u = (mu * chi1.table(horizon))[None, :] * twist_phase  # inverse of L(s+it1, chi1)
        contrib = a[d_idx][None, :] * u[:, e_idx]
        D = np.zeros((len(grid), horizon), dtype=complex)
        for k in range(len(pairs)):
            D[:, m_idx[k]] += contrib[:, k]
        absD = np.abs(D)
        for chi2 in chars:
            tab2 = chi2.table(horizon)
            p = next((p for p in (2, 3, 5) if p <= horizon and tab2[p - 1] != 0), None)
            if p is None:
                continue
            # |D_n - chi2(n) n^{-it2}| >= ||D_n| - |chi2(n)||, whatever t2 is
            lower = np.max(np.abs(absD - np.abs(tab2)[None, :]), axis=1)
            live = np.flatnonzero(lower < best[0])
            if len(live) == 0:
                continue
            base = -np.angle(D[live, p - 1] / tab2[p - 1]) / math.log(p)
            period = 2 * math.pi / math.log(p)
            rows, idxs = [], []
            for k in range(-2, 3):
                snapped = np.round((base + k * period - grid[0]) / step).astype(int)
                for off in (-1, 0, 1):
                    j = snapped + off
                    ok = (j >= 0) & (j < len(grid))
                    rows.append(live[ok])
                    idxs.append(j[ok])
            rows, idxs = np.concatenate(rows), np.concatenate(idxs)
            if len(rows) == 0:
                continue
            # cheap screen on the first few n before the full residual
            head = np.max(np.abs(D[rows, :12] - tab2[None, :12] * twist_phase[idxs, :12]), axis=1)
            keep = head < best[0]
            rows, idxs = rows[keep], idxs[keep]
            if len(rows) == 0:
                continue
            res = np.max(np.abs(D[rows] - tab2[None, :] * twist_phase[idxs]), axis=1)
            k = int(np.argmin(res))
            if res[k] < best[0]:
                best = (
                    float(res[k]),
                    (chi1.modulus, chi1.index),
                    float(grid[rows[k]]) + 0.0,
                    (chi2.modulus, chi2.index),
                    float(grid[idxs[k]]) + 0.0,
                )
    return ProbeResult(best[0], best[1], best[2], best[3], best[4], len(chars), (float(grid[0]), float(grid[-1]), step), horizon)


# ---------------------------------------------------------------------------
# degree-0 classification and routing


@dataclass(frozen=True)
class DegreeZeroResult:
    shape_finite: bool
    q1: float
    q1_is_integer: bool
    support_ok: bool
    symmetry_deviation: float
    consistent: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "shape_finite": self.shape_finite,
            "Q1": self.q1,
            "Q1_is_integer": self.q1_is_integer,
            "support_ok": self.support_ok,
            "symmetry_deviation": self.symmetry_deviation,
            "consistent": self.consistent,
            "note": self.note,
        }


def classify_degree_zero(spec: LFunctionSpec) -> DegreeZeroResult:
    """Check a degree-0 spec against the Dirichlet-polynomial shape.

    A series of degree 0 is a Dirichlet polynomial supported on the divisors
    of Q1 = Q'^2 with a_{Q1/n} = omega' sqrt(Q1) conj(a_n) / n, where Q' and
    omega' absorb the exponential left after the gamma factors cancel.
    """
    if degree(spec.fe) != 0:
        raise DegreeError(f"degree-0 classifier needs degree 0, got {degree(spec.fe)}")
    shape = degree_zero_shape_check(spec.fe)
    if not (shape.poles.is_empty and shape.zeros.is_empty):
        return DegreeZeroResult(
            shape.finite_zero_pole, math.nan, False, False, math.inf, False,
            "gamma quotient keeps zeros or poles; not reduced to an exponential",
        )
    if spec.fe.numerator or spec.fe.denominator:
        g1, g2 = complex(log_G(spec.fe, 1.0)), complex(log_G(spec.fe, 2.0))
        slope, const = g2 - g1, g1 - (g2 - g1)
    else:
        slope, const = 0j, 0j
    if abs(slope.imag) > 1e-12:
        return DegreeZeroResult(True, math.nan, False, False, math.inf, False, "exponential factor has a complex rate")
    q_eff = spec.fe.Q * math.exp(slope.real)
    omega = spec.fe.omega * cmath.exp(-2j * const.imag)
    q1 = q_eff**2
    m = round(q1)
    is_int = m >= 1 and abs(q1 - m) < 1e-9 * max(1.0, q1)
    src = spec.coefficients
    if not (isinstance(src, Explicit) and src.complete) and not _finite_support(src):
        return DegreeZeroResult(True, q1, is_int, False, math.inf, False, "coefficients are not a Dirichlet polynomial")
    top = max(m, 1) if is_int else 1
    a = src.coefficients(max(top, _support_length(src)))
    support = [k + 1 for k in np.flatnonzero(np.abs(a) > 1e-14)]
    support_ok = is_int and all(m % k == 0 for k in support)
    dev = math.inf
    if support_ok:
        dev = 0.0
        for k in range(1, m + 1):
            if m % k == 0:
                want = omega * math.sqrt(m) * np.conj(a[k - 1]) / k
                dev = max(dev, abs(a[m // k - 1] - want))
    consistent = bool(support_ok and dev < 1e-9)
    return DegreeZeroResult(True, q1, bool(is_int), bool(support_ok), float(dev), consistent)


def _finite_support(src) -> bool:
    from .arithmetic import Convolution

    if isinstance(src, Explicit):
        return src.complete
    if isinstance(src, Convolution):
        return _finite_support(src.left) and _finite_support(src.right)
    return False


def _support_length(src) -> int:
    from .arithmetic import Convolution

    if isinstance(src, Explicit):
        return max(len(src.values), 1)
    if isinstance(src, Convolution):
        return _support_length(src.left) * _support_length(src.right)
    return 1


@dataclass(frozen=True)
class Routing:
    degree: float
    route: str
    detail: object = None


def classify_spec(spec: LFunctionSpec, horizon: int | None = None) -> Routing:
    """Degree gate followed by the matching classifier."""
    d = degree_gate(spec)
    if d == 0:
        return Routing(0.0, "degree-0", classify_degree_zero(spec))
    if d == 1:
        A = recover_A(spec)
        q, is_int = recover_q(spec)
        if not is_int:
            return Routing(1.0, "degree-1", f"q = {q!r} is not an integer")
        return Routing(1.0, "degree-1", classify_degree_one(spec.coefficients, A, int(round(q)), horizon))
    return Routing(float(d), "unclassified", "no classifier for degree above 1")
