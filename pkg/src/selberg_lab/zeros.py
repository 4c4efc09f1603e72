"""Argument-principle zero counting, zero location, and zero-set comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import CoefficientSource, Convolution, Explicit, Periodic
from .core import LFunctionSpec, degree
from .errors import PreconditionError, SingularityError, ValidationError
from .evaluator import direct_value

MAX_PHASE_STEP = math.pi / 4
NUDGES = (0.0, 1e-4, -1e-4, 4e-4, -4e-4, 1e-3, -1e-3)
TINY = 1e-8
ZERO_TOL = 1e-9


@dataclass(frozen=True)
class Rectangle:
    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        if not (self.sigma_min < self.sigma_max and self.t_min < self.t_max):
            raise ValidationError(f"degenerate rectangle {self.as_tuple()}")

    def as_tuple(self):
        return (self.sigma_min, self.sigma_max, self.t_min, self.t_max)

    def contains(self, z: complex) -> bool:
        return self.sigma_min < z.real < self.sigma_max and self.t_min < z.imag < self.t_max

    def corners(self):
        a, b, c, d = self.as_tuple()
        return [complex(a, c), complex(b, c), complex(b, d), complex(a, d)]


@dataclass(frozen=True)
class Zero:
    location: complex
    multiplicity: int
    error: float


@dataclass(frozen=True)
class ZeroReport:
    rectangle: tuple
    count: int
    winding: float
    poles_inside: int
    zeros: tuple = ()
    samples: int = 0

    def to_json(self) -> dict:
        return {
            "rectangle": list(self.rectangle),
            "count": self.count,
            "winding": self.winding,
            "poles_inside": self.poles_inside,
            "zeros": [
                {"re": z.location.real, "im": z.location.imag, "multiplicity": z.multiplicity, "error": z.error}
                for z in self.zeros
            ],
        }


def _source(target) -> CoefficientSource:
    return target.coefficients if isinstance(target, LFunctionSpec) else target


def source_poles(src: CoefficientSource) -> list[tuple[complex, int]]:
    """Poles of the continuation given by the direct evaluator."""
    if isinstance(src, Periodic):
        return [(complex(1, src.shift), 1)] if abs(sum(src.residues)) > 1e-13 else []
    if isinstance(src, Explicit):
        return []
    if isinstance(src, Convolution):
        merged: dict = {}
        for at, order in source_poles(src.left) + source_poles(src.right):
            key = complex(round(at.real, 12), round(at.imag, 12))
            merged[key] = merged.get(key, 0) + order
        # a zero of the other factor could cancel a pole; orders here are upper bounds
        return sorted(merged.items(), key=lambda p: (p[0].real, p[0].imag))
    raise PreconditionError(f"no direct evaluator for {type(src).__name__} sources")


class _Degenerate(Exception):
    pass


def _edge_winding(f, za: complex, zb: complex, spacing: float) -> tuple[float, int]:
    """Total change of arg f along the segment, with adaptive refinement."""
    n0 = max(8, int(math.ceil(abs(zb - za) / spacing)) + 1)
    tau = np.linspace(0.0, 1.0, n0)
    vals = f(za + (zb - za) * tau)
    for _ in range(60):
        if not np.all(np.isfinite(vals)):
            raise _Degenerate("non-finite value on the boundary")
        steps = np.angle(vals[1:] / vals[:-1])
        bad = np.flatnonzero(np.abs(steps) > MAX_PHASE_STEP)
        if len(bad) == 0:
            scale = np.median(np.abs(vals))
            if np.min(np.abs(vals)) < TINY * scale:
                raise _Degenerate("boundary passes too close to a zero")
            return float(steps.sum()), len(tau)
        if np.min(np.diff(tau)[bad]) < 1e-12:
            raise _Degenerate("phase refinement stalled on the boundary")
        mids = 0.5 * (tau[bad] + tau[bad + 1])
        mvals = f(za + (zb - za) * mids)
        tau = np.insert(tau, bad + 1, mids)
        vals = np.insert(vals, bad + 1, mvals)
    raise _Degenerate("phase refinement did not settle")


def _winding(f, rect: Rectangle, spacing: float) -> tuple[float, int]:
    c = rect.corners()
    total, samples = 0.0, 0
    for za, zb in zip(c, c[1:] + c[:1]):
        w, n = _edge_winding(f, za, zb, spacing)
        total += w
        samples += n
    return total / (2 * math.pi), samples


def _pole_clear(poles, rect: Rectangle, gap: float = 1e-6) -> bool:
    for at, _ in poles:
        on_vertical = rect.t_min - gap <= at.imag <= rect.t_max + gap and min(
            abs(at.real - rect.sigma_min), abs(at.real - rect.sigma_max)
        ) < gap
        on_horizontal = rect.sigma_min - gap <= at.real <= rect.sigma_max + gap and min(
            abs(at.imag - rect.t_min), abs(at.imag - rect.t_max)
        ) < gap
        if on_vertical or on_horizontal:
            return False
    return True


def _nudged(rect: Rectangle):
    """Rectangles with edges moved outward first, then inward, by at most 1e-3."""
    a, b, c, d = rect.as_tuple()
    for delta in NUDGES:
        yield Rectangle(a - delta, b + delta, c - delta, d + delta)


def _count(f, poles, rect: Rectangle, spacing: float):
    last = None
    for r in _nudged(rect):
        if not _pole_clear(poles, r):
            continue
        try:
            wind, samples = _winding(f, r, spacing)
        except _Degenerate as exc:
            last = exc
            continue
        if abs(wind - round(wind)) > 0.25:
            last = _Degenerate(f"winding {wind} is not near an integer")
            continue
        inside = sum(order for at, order in poles if r.contains(at))
        return r, int(round(wind)), wind, inside, samples
    raise SingularityError(f"boundary degeneracy on {rect.as_tuple()}: {last}")


def _evaluator(src):
    def f(z):
        return direct_value(src, np.asarray(z, dtype=complex))

    return f


def count_zeros(target, rectangle, locate: bool = True, spacing: float = 0.05) -> ZeroReport:
    """Zeros of F (with multiplicity) inside the rectangle.

    The boundary winding counts zeros minus poles of F; poles inside are
    added back so ``count`` is the number of zeros.
    """
    rect = rectangle if isinstance(rectangle, Rectangle) else Rectangle(*rectangle)
    src = _source(target)
    f = _evaluator(src)
    poles = source_poles(src)
    used, wind_int, wind, inside, samples = _count(f, poles, rect, spacing)
    count = wind_int + inside
    zeros: tuple = ()
    if locate and count > 0:
        zeros = tuple(sorted(_locate(f, poles, used, count, spacing), key=lambda z: (z.location.imag, z.location.real)))
    return ZeroReport(used.as_tuple(), count, wind, inside, zeros, samples)


def _split(rect: Rectangle) -> tuple[Rectangle, Rectangle]:
    # split slightly off-centre so the cut rarely lands on a symmetry line
    a, b, c, d = rect.as_tuple()
    if (d - c) >= (b - a):
        m = c + (d - c) * 0.4871
        return Rectangle(a, b, c, m), Rectangle(a, b, m, d)
    m = a + (b - a) * 0.4871
    return Rectangle(a, m, c, d), Rectangle(m, b, c, d)


def _locate(f, poles, rect: Rectangle, count: int, spacing: float) -> list[Zero]:
    out: list[Zero] = []
    stack = [(rect, count)]
    while stack:
        r, k = stack.pop()
        if k <= 0:
            continue
        size = max(r.sigma_max - r.sigma_min, r.t_max - r.t_min)
        if size < 0.02:
            centre = complex(0.5 * (r.sigma_min + r.sigma_max), 0.5 * (r.t_min + r.t_max))
            out.append(_refine(f, centre, k))
            continue
        for half in _split(r):
            sp = min(spacing, 0.05 * max(half.sigma_max - half.sigma_min, half.t_max - half.t_min))
            used, w, _, inside, _ = _count(f, poles, half, sp)
            stack.append((used, w + inside))
    return out


def _refine(f, z: complex, m: int) -> Zero:
    """Multiplicity-aware Newton iteration from the centre of a tiny box."""
    h = 1e-5
    step = float("inf")
    for _ in range(60):
        v = f(np.array([z, z + h, z - h, z + 1j * h, z - 1j * h]))
        d = (v[1] - v[2]) / (2 * h)
        if v[0] == 0:
            step = 0.0
            break
        if d == 0:
            break
        dz = m * v[0] / d
        z = z - dz
        step = abs(dz)
        if step < 1e-13:
            break
    return Zero(complex(z), m, float(step))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonReport:
    rectangle: tuple
    zeros_f2: tuple
    missing: tuple  # (zero of F2, |F1| there)
    multiplicity_excess: tuple  # zeros of F2 of higher multiplicity than in F1
    quotient_degree: float
    hypothesis_range: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "rectangle": list(self.rectangle),
            "zeros_f2": [[z.location.real, z.location.imag, z.multiplicity] for z in self.zeros_f2],
            "missing": [[z.location.real, z.location.imag, z.multiplicity, v] for z, v in self.missing],
            "multiplicity_excess": [[z.location.real, z.location.imag, m1, z.multiplicity] for z, m1 in self.multiplicity_excess],
            "quotient_degree": self.quotient_degree,
            "hypothesis_range": self.hypothesis_range,
            "note": self.note,
        }


def compare_zero_sets(spec1: LFunctionSpec, spec2: LFunctionSpec, rectangle, threshold: float = 1e-4) -> ComparisonReport:
    """Zeros of F2 in the rectangle at which F1 does not vanish (poles of F1/F2)."""
    report = count_zeros(spec2, rectangle)
    f1 = _evaluator(_source(spec1))
    p1 = source_poles(_source(spec1))
    missing, excess = [], []
    for z in report.zeros:
        v = abs(complex(f1(np.array([z.location]))[0]))
        if v > threshold:
            missing.append((z, v))
            continue
        box = Rectangle(z.location.real - 0.01, z.location.real + 0.01, z.location.imag - 0.01, z.location.imag + 0.01)
        _, w, _, inside, _ = _count(f1, p1, box, 0.002)
        if w + inside < z.multiplicity:
            excess.append((z, w + inside))
    d = float(degree(spec1.fe) - degree(spec2.fe))
    hyp = 0 <= d <= 1
    note = (
        "quotient degree in [0, 1]: the quotient must have infinitely many poles unless it is entire"
        if hyp
        else "quotient degree outside [0, 1]: no conclusion from the comparison theorem"
    )
    return ComparisonReport(report.rectangle, report.zeros, tuple(missing), tuple(excess), d, hyp, note)


@dataclass(frozen=True)
class CountingFit:
    T: tuple
    counts: tuple
    degree_fit: float
    c1: float
    c2: float
    residuals: tuple
    degree_zero_regime: bool


def counting_asymptotic_check(target, T_list, sigma=(0.0, 1.0), t_min: float = 0.0) -> CountingFit:
    """Fit N(T) = (d/2pi) T log T + c1 T + c2 with d free; diagnostic only."""
    T_arr = np.array(sorted(float(T) for T in T_list))
    counts = [count_zeros(target, (sigma[0], sigma[1], t_min, T), locate=False).count for T in T_arr]
    basis = np.column_stack([T_arr * np.log(T_arr) / (2 * math.pi), T_arr, np.ones_like(T_arr)])
    if len(T_arr) >= 3:
        coef, *_ = np.linalg.lstsq(basis, np.array(counts, dtype=float), rcond=None)
    else:
        coef = np.array([np.nan, np.nan, np.nan])
    res = np.array(counts) - basis @ coef if np.all(np.isfinite(coef)) else np.full(len(T_arr), np.nan)
    return CountingFit(tuple(T_arr), tuple(counts), float(coef[0]), float(coef[1]), float(coef[2]), tuple(res), bool(abs(coef[0]) < 0.5))
