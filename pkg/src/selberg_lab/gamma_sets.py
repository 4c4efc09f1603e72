"""Exact arithmetic on gamma-sets gamma(alpha, beta) = {-(n + beta)/alpha : n >= 0}.

Points are pairs of Fractions (re, im).  Two gamma-sets meet either nowhere
or in an infinite arithmetic progression of both index sets, so every
difference is a finite union of gamma-sets plus a finite set of points.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .core import FunctionalEquation, degree
from .errors import DegreeError, ValidationError

Point = tuple[Fraction, Fraction]

DEFAULT_WINDOW = Fraction(100)


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, float) and math.isfinite(x):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ValidationError(f"gamma-set data must be rational, got {x!r}")


@dataclass(frozen=True, order=True)
class GammaSet:
    alpha: Fraction
    beta_re: Fraction = Fraction(0)
    beta_im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _rational(self.alpha))
        object.__setattr__(self, "beta_re", _rational(self.beta_re))
        object.__setattr__(self, "beta_im", _rational(self.beta_im))
        if self.alpha <= 0:
            raise ValidationError(f"alpha must be positive, got {self.alpha}")

    def point(self, n: int) -> Point:
        return (-(n + self.beta_re) / self.alpha, -self.beta_im / self.alpha)

    def index_of(self, z: Point) -> int | None:
        """n with point(n) == z, or None."""
        if z[1] != -self.beta_im / self.alpha:
            return None
        n = -z[0] * self.alpha - self.beta_re
        if n.denominator != 1 or n < 0:
            return None
        return int(n)

    def __contains__(self, z: Point) -> bool:
        return self.index_of(z) is not None

    def points(self, window: Fraction = DEFAULT_WINDOW) -> list[Point]:
        """All points with real part >= -window."""
        top = window * self.alpha - self.beta_re
        if top < 0:
            return []
        return [self.point(n) for n in range(math.floor(top) + 1)]

    def shifted(self, k: int) -> "GammaSet":
        """Drop the first k points."""
        return GammaSet(self.alpha, self.beta_re + k, self.beta_im)

    def progression(self, r: int, m: int) -> "GammaSet":
        """The sub-gamma-set of points with index n = r + m j, j >= 0."""
        return GammaSet(self.alpha / m, (r + self.beta_re) / m, self.beta_im / m)

    def __str__(self):
        beta = str(self.beta_re) if self.beta_im == 0 else f"{self.beta_re}{_signed(self.beta_im)}i"
        return f"gamma({self.alpha}, {beta})"


def _signed(x: Fraction) -> str:
    return f"+{x}" if x >= 0 else str(x)


def _intersection(w1: GammaSet, w2: GammaSet):
    """Index progressions of w1 and w2 describing w1 & w2.

    Returns None when disjoint, else ((r1, m1), (r2, m2)): the common points
    are w1.point(r1 + m1 j) = w2.point(r2 + m2 j) for j >= 0.
    """
    if w2.alpha * w1.beta_im != w1.alpha * w2.beta_im:
        return None
    # alpha2 (n + beta1) = alpha1 (k + beta2)  <=>  a n - b k = c
    a_, b_ = w2.alpha, w1.alpha
    c_ = w1.alpha * w2.beta_re - w2.alpha * w1.beta_re
    den = math.lcm(a_.denominator, b_.denominator, c_.denominator)
    a, b, c = int(a_ * den), int(b_ * den), int(c_ * den)
    g = math.gcd(a, b)
    if c % g:
        return None
    m1, m2 = b // g, a // g
    # particular solution of a n - b k = c
    _, x, _ = _egcd(a, b)
    n0 = (x * (c // g)) % m1
    k0 = (a * n0 - c) // b
    if k0 < 0:
        steps = (-k0 + m2 - 1) // m2
        n0 += steps * m1
        k0 += steps * m2
    return (n0, m1), (k0, m2)


def _egcd(a: int, b: int):
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _remove_progression(w: GammaSet, r: int, m: int) -> tuple[list[GammaSet], list[Point]]:
    """w minus its points with index r + m j (j >= 0): gamma-sets and a finite head."""
    parts = [w.progression(b, m) for b in range(m) if b != r % m]
    head = [w.point(n) for n in range(r % m, r, m)]
    return parts, head


@dataclass(frozen=True)
class GammaMultiset:
    """Finite sum of gamma-sets with multiplicities plus a signed finite adjustment."""

    parts: tuple[tuple[GammaSet, int], ...] = ()
    finite: tuple[tuple[Point, int], ...] = ()

    @classmethod
    def of(cls, *sets: GammaSet | tuple[GammaSet, int]) -> "GammaMultiset":
        parts = [(s, 1) if isinstance(s, GammaSet) else s for s in sets]
        return canonical(parts, {})

    def density(self) -> Fraction:
        return sum((s.alpha * m for s, m in self.parts), Fraction(0))

    def multiplicity(self, z: Point) -> int:
        total = sum(m for s, m in self.parts if z in s)
        return total + dict(self.finite).get(z, 0)

    def window_counter(self, window: Fraction = DEFAULT_WINDOW) -> Counter:
        out: Counter = Counter()
        for s, m in self.parts:
            for z in s.points(window):
                out[z] += m
        for z, m in self.finite:
            if z[0] >= -window:
                out[z] += m
        return +out if all(v >= 0 for v in out.values()) else out

    @property
    def is_empty(self) -> bool:
        return not self.parts and not self.finite

    def __add__(self, other: "GammaMultiset") -> "GammaMultiset":
        fin = Counter(dict(self.finite))
        fin.update(dict(other.finite))
        return canonical(list(self.parts) + list(other.parts), fin)

    def to_json(self) -> dict:
        return {
            "parts": [
                {"alpha": str(s.alpha), "beta": [str(s.beta_re), str(s.beta_im)], "multiplicity": m}
                for s, m in self.parts
            ],
            "finite": [{"at": [str(z[0]), str(z[1])], "multiplicity": m} for z, m in self.finite],
            "density": str(self.density()),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self):
        terms = [f"{m}*{s}" if m != 1 else str(s) for s, m in self.parts]
        terms += [f"{m:+}*[{z[0]}{_signed(z[1])}i]" for z, m in self.finite]
        return " + ".join(terms) if terms else "empty"


EMPTY = GammaMultiset()


def canonical(parts: Iterable[tuple[GammaSet, int]], finite: dict) -> GammaMultiset:
    """Merge equal parts, absorb adjacent finite points, rejoin residue systems."""
    pc: Counter = Counter()
    for s, m in parts:
        pc[s] += m
    fc: Counter = Counter(finite)
    while True:
        work = sorted(s for s, m in pc.items() if m > 0)
        while work:
            s = work.pop()
            if pc[s] <= 0:
                continue
            before = s.point(-1)
            if fc.get(before, 0) > 0:
                take = min(pc[s], fc[before])
                pc[s] -= take
                fc[before] -= take
                pc[s.shifted(-1)] += take
                work += [s, s.shifted(-1)]
                continue
            start = s.point(0)
            if fc.get(start, 0) < 0:
                take = min(pc[s], -fc[start])
                pc[s] -= take
                fc[start] += take
                pc[s.shifted(1)] += take
                work += [s, s.shifted(1)]
        pc = +pc
        if not _rejoin(pc):
            break
    pc = +pc
    fc = Counter({z: m for z, m in fc.items() if m != 0})
    return GammaMultiset(tuple(sorted(pc.items())), tuple(sorted(fc.items())))


def _rejoin(pc: Counter) -> bool:
    """Replace one full residue system {gamma(a/M, (b+beta)/M)} by gamma(a, beta)."""
    keys = sorted(s for s, m in pc.items() if m > 0)
    by_alpha: dict = {}
    for s in keys:
        by_alpha.setdefault((s.alpha, s.beta_im), []).append(s)
    for (alpha, beta_im), group in by_alpha.items():
        if len(group) < 2:
            continue
        betas = {s.beta_re for s in group}
        for s in group:
            for m_ in range(len(group), 1, -1):
                if not all(s.beta_re + Fraction(j, m_) in betas for j in range(1, m_)):
                    continue
                members = [GammaSet(alpha, s.beta_re + Fraction(j, m_), beta_im) for j in range(m_)]
                take = min(pc[x] for x in members)
                for x in members:
                    pc[x] -= take
                pc[GammaSet(alpha * m_, s.beta_re * m_, beta_im * m_)] += take
                return True
    return False


def density(v: GammaMultiset | GammaSet) -> Fraction:
    if isinstance(v, GammaSet):
        return v.alpha
    return v.density()


def set_difference(w1: GammaSet, w2: GammaSet) -> GammaMultiset:
    """W1 minus W2, exactly."""
    inter = _intersection(w1, w2)
    if inter is None:
        return GammaMultiset(((w1, 1),))
    (r1, m1), _ = inter
    parts, head = _remove_progression(w1, r1, m1)
    return canonical([(p, 1) for p in parts], Counter(head))


def _difference_with_overlap(v1: GammaMultiset, v2: GammaMultiset):
    """max(0, V1 - V2) and the removed overlap min(V1, V2) restricted to parts."""
    queue = sorted(([s, m] for s, m in v1.parts), reverse=True)
    right = sorted([s, m] for s, m in v2.parts)
    fin1: Counter = Counter(dict(v1.finite))
    fin2: Counter = Counter(dict(v2.finite))
    overlap: Counter = Counter()
    left = []
    # A left piece disjoint from every right piece stays final: later right
    # pieces are subsets of earlier ones, so one pass per piece suffices.
    while queue:
        p, mp = queue.pop()
        for j, (r, mr) in enumerate(right):
            if mr <= 0:
                continue
            inter = _intersection(p, r)
            if inter is None:
                continue
            (rp, mp_step), (rr, mr_step) = inter
            take = min(mp, mr)
            overlap[p.progression(rp, mp_step)] += take
            p_parts, p_head = _remove_progression(p, rp, mp_step)
            r_parts, r_head = _remove_progression(r, rr, mr_step)
            right[j][1] -= take
            right.extend([x, take] for x in r_parts)
            for z in p_head:
                fin1[z] += take
            for z in r_head:
                fin2[z] += take
            queue.extend([x, take] for x in p_parts)
            if mp > take:
                queue.append([p, mp - take])
            break
        else:
            left.append([p, mp])
    right = [e for e in right if e[1] > 0]
    # Remaining parts of the two sides are disjoint; only finite points interact.
    lv = canonical([tuple(e) for e in left], {})
    rv = canonical([tuple(e) for e in right], {})
    adjust: Counter = Counter()
    candidates = set(fin1) | {z for z in fin2 if any(z in s for s, _ in lv.parts)}
    for z in candidates:
        base = sum(m for s, m in lv.parts if z in s)
        f1 = base + fin1.get(z, 0)
        f2 = sum(m for s, m in rv.parts if z in s) + fin2.get(z, 0)
        adjust[z] = max(0, f1 - f2) - base
    return canonical(list(lv.parts), adjust), canonical(list(overlap.items()), {})


LATTICE_CAP = 8_000_000


def _lattice_line(parts1, parts2, fin1, fin2, y: Fraction):
    """Difference and overlap on one horizontal line via residue classes.

    On the line every point is -k/D for an integer k, and gamma(alpha, beta)
    becomes the progression k = c + s n with c = D beta/alpha, s = D/alpha.
    Beyond the largest start the multiplicity depends only on k mod L,
    L = lcm of the steps; below it the finitely many points are counted
    directly.  Returns None when L exceeds LATTICE_CAP.
    """
    sets = [x for x, _ in parts1 + parts2]
    dens = [(x.beta_re / x.alpha).denominator for x in sets] + [(1 / x.alpha).denominator for x in sets]
    dens += [z[0].denominator for z in list(fin1) + list(fin2)]
    D = math.lcm(*dens) if dens else 1

    def prog(x):
        return int(D * x.beta_re / x.alpha), int(D / x.alpha)

    p1 = [(prog(x), m) for x, m in parts1]
    p2 = [(prog(x), m) for x, m in parts2]
    steps = [st for (_, st), _ in p1 + p2]
    L = math.lcm(*steps) if steps else 1
    if L > LATTICE_CAP:
        return None
    fin_k1 = Counter({int(-z[0] * D): m for z, m in fin1.items()})
    fin_k2 = Counter({int(-z[0] * D): m for z, m in fin2.items()})
    # k0 lies past every start and every finite point, so the head is exact
    starts = [c for (c, _), _ in p1 + p2] + [k + 1 for k in list(fin_k1) + list(fin_k2)]
    k0 = max(starts) if starts else 0
    small = sum(m for _, m in p1 + p2) < 2**15
    e1 = np.zeros(L, dtype=np.int16 if small else np.int64)
    e2 = np.zeros_like(e1)
    for arr, progs in ((e1, p1), (e2, p2)):
        for (c, st), m in progs:
            arr[c % st :: st] += m
    head1, head2 = fin_k1, fin_k2
    for cnt, progs in ((head1, p1), (head2, p2)):
        for (c, st), m in progs:
            for k in range(c, k0, st):
                cnt[k] += m

    # Coarsest classes first.  Only lcms of step subsets are tried; full
    # residue systems left over are rejoined by canonical().
    divisors = {1}
    for st in steps:
        divisors |= {math.lcm(d, st) for d in divisors}

    def emit(e):
        out = []
        e = e.copy()
        mass = int(e.sum())
        for d in sorted(divisors):
            if not mass:
                break
            block = e.reshape(L // d, d)
            low = block.min(axis=0)
            hit = np.flatnonzero(low)
            if not len(hit):
                continue
            alpha = Fraction(D, d)
            for r in hit:
                start = k0 + (int(r) - k0) % d
                out.append((GammaSet(alpha, Fraction(start, d), -y * alpha), int(low[r])))
            block -= low
            mass -= int(low.sum()) * (L // d)
        return out

    diff_parts = emit(np.maximum(e1 - e2, 0))
    over_parts = emit(np.minimum(e1, e2))
    finite: Counter = Counter()
    for k in set(head1) | set(head2):
        if head1[k] > head2[k]:
            finite[(Fraction(-k, D), y)] += head1[k] - head2[k]
    return diff_parts, over_parts, finite


def _divisors_of(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _lattice_difference(v1: GammaMultiset, v2: GammaMultiset):
    def line(x):
        return -x.beta_im / x.alpha

    lines: dict = {}
    for side, v in ((0, v1), (1, v2)):
        for x, m in v.parts:
            lines.setdefault(line(x), ([], [], Counter(), Counter()))[side].append((x, m))
        for z, m in v.finite:
            lines.setdefault(z[1], ([], [], Counter(), Counter()))[2 + side][z] += m
    diff, over, finite = [], [], Counter()
    for y, (a, b, f1, f2) in sorted(lines.items()):
        res = _lattice_line(a, b, f1, f2, y)
        if res is None:
            pd, po = _difference_with_overlap(GammaMultiset(tuple(a), tuple(f1.items())), GammaMultiset(tuple(b), tuple(f2.items())))
            diff += list(pd.parts)
            over += list(po.parts)
            finite.update(dict(pd.finite))
            continue
        diff += res[0]
        over += res[1]
        finite.update(res[2])
    return canonical(diff, finite), canonical(over, {})


def multiset_difference(v1: GammaMultiset, v2: GammaMultiset) -> GammaMultiset:
    """Pointwise max(0, V1 - V2) as a canonical gamma-multiset."""
    return _lattice_difference(v1, v2)[0]


def overlap(v1: GammaMultiset, v2: GammaMultiset) -> GammaMultiset:
    """The infinite part of min(V1, V2) removed by :func:`multiset_difference`."""
    return _lattice_difference(v1, v2)[1]


def brute_difference(v1: GammaMultiset, v2: GammaMultiset, window: Fraction = DEFAULT_WINDOW) -> Counter:
    """Window enumeration oracle for max(0, V1 - V2)."""
    c1, c2 = v1.window_counter(window), v2.window_counter(window)
    return Counter({z: c1[z] - c2[z] for z in c1 if c1[z] - c2[z] > 0})


def pole_multiset(factors) -> GammaMultiset:
    """Poles of prod Gamma(lam s + mu): lam s + mu = -n, i.e. gamma(lam, mu)."""
    parts = []
    for g in factors:
        parts.append((GammaSet(_rational(g.lam), _rational(g.mu_re), _rational(g.mu_im)), 1))
    return canonical(parts, {})


@dataclass(frozen=True)
class ShapeCheck:
    finite_zero_pole: bool
    poles: GammaMultiset
    zeros: GammaMultiset

    def to_json(self) -> dict:
        return {
            "finite_zero_pole": self.finite_zero_pole,
            "poles": self.poles.to_json(),
            "zeros": self.zeros.to_json(),
        }


def degree_zero_shape_check(fe: FunctionalEquation) -> ShapeCheck:
    """Compare numerator and denominator gamma poles of a degree-0 equation.

    ``poles`` are the poles of G left after cancellation and ``zeros`` its
    zeros.  A member of the class of degree 0 needs both to be finite.
    """
    if degree(fe) != 0:
        raise DegreeError(f"degree-0 shape check needs degree 0, got {degree(fe)}")
    num, den = pole_multiset(fe.numerator), pole_multiset(fe.denominator)
    poles, zeros = multiset_difference(num, den), multiset_difference(den, num)
    return ShapeCheck(poles.density() == 0 and zeros.density() == 0, poles, zeros)
