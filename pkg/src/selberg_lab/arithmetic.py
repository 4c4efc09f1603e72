"""Coefficient sources: explicit lists, periodic sequences, Euler products
and Dirichlet convolutions, plus twisting and removal of Euler factors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Union

import numpy as np
from sympy import primerange

from .characters import DirichletCharacter
from .errors import OverflowLimitError, PreconditionError, TruncationError, ValidationError

MAX_MATERIALIZED = 10**6
OVERFLOW_LIMIT = 1e300


class CoefficientSource:
    """Base class.  ``coefficients(n)`` returns a_1..a_n as a complex array."""

    def coefficients(self, n_max: int) -> np.ndarray:
        if n_max < 1:
            raise ValidationError("n_max must be >= 1")
        if n_max > MAX_MATERIALIZED and not isinstance(self, (Periodic, Explicit)):
            raise ValidationError(f"n_max {n_max} exceeds the materialization cap {MAX_MATERIALIZED}")
        a = np.asarray(self._coefficients(int(n_max)), dtype=complex)
        if not np.all(np.isfinite(a)) or np.max(np.abs(a), initial=0) > OVERFLOW_LIMIT:
            raise OverflowLimitError("coefficient magnitude exceeds 1e300")
        return a

    def _coefficients(self, n_max: int) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    def euler_bound(self):
        """(C_b, theta) for the log-coefficients, or None without Euler data."""
        return None

    def check_log_bound(self) -> list[str]:
        return []


@dataclass(frozen=True)
class Explicit(CoefficientSource):
    """Coefficients a_1..a_N.

    With ``complete=True`` (the default) a_n = 0 beyond N, so the series is a
    Dirichlet polynomial.  ``complete=False`` marks a prefix of an infinite
    sequence (a data file): asking for more than N coefficients is an error.
    """

    values: tuple
    complete: bool = True

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))

    def _coefficients(self, n_max):
        if not self.complete and n_max > len(self.values):
            raise TruncationError(f"only {len(self.values)} coefficients are known, {n_max} requested")
        out = np.zeros(n_max, dtype=complex)
        k = min(n_max, len(self.values))
        out[:k] = self.values[:k]
        return out

    @property
    def support(self) -> list[int]:
        return [n for n, v in enumerate(self.values, 1) if v != 0]


@dataclass(frozen=True)
class Periodic(CoefficientSource):
    """a_n = c(n mod q) * n^{i shift}, i.e. a_n n^{-i shift} has period q.

    ``residues[r]`` holds c(r) for r = 0..q-1.
    """

    residues: tuple
    shift: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(complex(v) for v in self.residues))
        object.__setattr__(self, "shift", float(self.shift))
        if not self.residues:
            raise ValidationError("periodic source needs at least one residue")

    @classmethod
    def from_character(cls, chi: DirichletCharacter, shift: float = 0.0) -> "Periodic":
        return cls(tuple(chi.values()), shift)

    @property
    def period(self) -> int:
        return len(self.residues)

    def _coefficients(self, n_max):
        n = np.arange(1, n_max + 1)
        c = np.asarray(self.residues)[n % self.period]
        if self.shift:
            c = c * np.exp(1j * self.shift * np.log(n))
        return c

    def is_completely_multiplicative(self, tol: float = 1e-12) -> bool:
        q = self.period
        c = np.asarray(self.residues)
        if abs(c[1 % q] - 1) > tol:
            return False
        m = np.arange(q)
        prod = np.outer(c, c)
        return bool(np.all(np.abs(c[np.outer(m, m) % q] - prod) <= tol))

    def euler_bound(self):
        if not self.is_completely_multiplicative():
            return None
        return 1.0, 0.0


@dataclass(frozen=True)
class EulerProduct(CoefficientSource):
    """F(s) = prod_p F_p(s) with local data produced by ``local(p)``.

    kind ``"inverse_poly"``: ``local(p)`` gives (1, c_1, ..., c_d) and
    F_p = 1 / (1 + c_1 p^{-s} + ... + c_d p^{-ds}).
    kind ``"log"``: ``local(p)`` gives a callable k -> b_{p^k} or a finite
    sequence (b_{p}, b_{p^2}, ...), and log F_p = sum_k b_{p^k} p^{-ks}.

    ``bound`` is the declared (C_b, theta) with |b_{p^k}| <= C_b p^{k theta}.
    """

    local: Callable
    kind: str = "inverse_poly"
    bound: tuple = (1.0, 0.0)
    excluded: frozenset = frozenset()
    twist_by: DirichletCharacter | None = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("inverse_poly", "log"):
            raise ValidationError(f"unknown Euler factor kind {self.kind!r}")
        object.__setattr__(self, "excluded", frozenset(self.excluded))

    def _twist_factor(self, p: int) -> complex:
        return 1 + 0j if self.twist_by is None else self.twist_by(p)

    def local_series(self, p: int, kmax: int) -> np.ndarray:
        """Coefficients e_0..e_kmax of F_p as a power series in x = p^{-s}."""
        e = np.zeros(kmax + 1, dtype=complex)
        e[0] = 1
        if p in self.excluded:
            return e
        chi_p = self._twist_factor(p)
        if self.kind == "inverse_poly":
            poly = np.asarray(self.local(p), dtype=complex)
            if abs(poly[0] - 1) > 1e-14:
                raise ValidationError("inverse_poly local factors must start with 1")
            poly = poly * chi_p ** np.arange(len(poly))
            for k in range(1, kmax + 1):
                top = min(k, len(poly) - 1)
                e[k] = -np.dot(poly[1 : top + 1], e[k - 1 :: -1][:top]) if top else 0
        else:
            b = self.log_coeffs(p, kmax)
            for k in range(1, kmax + 1):
                j = np.arange(1, k + 1)
                e[k] = np.dot(j * b[1 : k + 1], e[k - 1 :: -1][:k]) / k
        return e

    def log_coeffs(self, p: int, kmax: int) -> np.ndarray:
        """b_{p^0}=0, b_{p^1}, ..., b_{p^kmax} after twisting/exclusion."""
        b = np.zeros(kmax + 1, dtype=complex)
        if p in self.excluded:
            return b
        chi_p = self._twist_factor(p)
        if self.kind == "log":
            data = self.local(p)
            for k in range(1, kmax + 1):
                if callable(data):
                    b[k] = data(k)
                elif k <= len(data):
                    b[k] = data[k - 1]
            return b * chi_p ** np.arange(kmax + 1)
        return series_log(self.local_series(p, kmax))

    def _coefficients(self, n_max):
        a = np.ones(n_max + 1, dtype=complex)
        a[0] = 0
        for p in primerange(2, n_max + 1):
            kmax = int(math.log(n_max) / math.log(p) + 1e-9)
            while p ** (kmax + 1) <= n_max:
                kmax += 1
            while p**kmax > n_max:
                kmax -= 1
            e = self.local_series(int(p), kmax)
            for k in range(1, kmax + 1):
                pk = p**k
                idx = np.arange(pk, n_max + 1, pk)
                idx = idx[(idx // pk) % p != 0]
                a[idx] *= e[k]
        return a[1:]

    def euler_bound(self):
        return tuple(self.bound)

    def check_log_bound(self, limit: int = 1000) -> list[str]:
        c_b, theta = self.bound
        msgs = []
        for p in primerange(2, limit + 1):
            kmax = int(math.log(limit) / math.log(p))
            b = self.log_coeffs(int(p), kmax)
            for k in range(1, kmax + 1):
                if abs(b[k]) > c_b * p ** (k * theta) * (1 + 1e-9):
                    msgs.append(f"|b_{{{p}^{k}}}| = {abs(b[k]):.4g} exceeds {c_b} * p^({k}*{theta})")
        return msgs


@dataclass(frozen=True)
class Convolution(CoefficientSource):
    left: CoefficientSource
    right: CoefficientSource

    def _coefficients(self, n_max):
        return dirichlet_convolve(self.left.coefficients(n_max), self.right.coefficients(n_max))

    def euler_bound(self):
        lb, rb = self.left.euler_bound(), self.right.euler_bound()
        if lb is None or rb is None:
            return None
        return lb[0] + rb[0], max(lb[1], rb[1])

    def check_log_bound(self) -> list[str]:
        return self.left.check_log_bound() + self.right.check_log_bound()


Source = Union[Explicit, Periodic, EulerProduct, Convolution]


def coefficients(src: CoefficientSource, n_max: int) -> np.ndarray:
    return src.coefficients(n_max)


def dirichlet_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a * b)_n = sum_{de = n} a_d b_e for n = 1..len, arrays indexed from n = 1."""
    n = min(len(a), len(b))
    out = np.zeros(n, dtype=complex)
    for d in np.flatnonzero(a[:n]) + 1:
        m = n // d
        out[d - 1 :: d][:m] += a[d - 1] * b[:m]
    return out


def dirichlet_inverse(a: np.ndarray) -> np.ndarray:
    """Coefficients of 1/F for a_1 != 0."""
    n = len(a)
    if a[0] == 0:
        raise ValidationError("Dirichlet inverse needs a_1 != 0")
    inv = np.zeros(n, dtype=complex)
    inv[0] = 1 / a[0]
    for k in range(2, n + 1):
        ds = np.array([d for d in range(2, k + 1) if k % d == 0])
        inv[k - 1] = -np.dot(a[ds - 1], inv[k // ds - 1]) / a[0]
    return inv


def series_log(e: np.ndarray) -> np.ndarray:
    """log of a power series with e_0 = 1; returns b with b_0 = 0."""
    kmax = len(e) - 1
    b = np.zeros(kmax + 1, dtype=complex)
    for k in range(1, kmax + 1):
        j = np.arange(1, k)
        b[k] = (k * e[k] - np.dot(j * b[1:k], e[k - 1 : 0 : -1][: k - 1])) / k
    return b


def log_coefficients_from(a: np.ndarray, p: int, kmax: int) -> np.ndarray:
    """Recover b_{p^k} from materialised coefficients a_{p^k} (a_1 = 1)."""
    e = np.array([1] + [a[p**k - 1] for k in range(1, kmax + 1)], dtype=complex)
    return series_log(e)


def twist(src: CoefficientSource, chi: DirichletCharacter) -> CoefficientSource:
    """Coefficients chi(n) a_n."""
    if isinstance(src, Explicit):
        n = np.arange(1, len(src.values) + 1)
        return Explicit(tuple(np.asarray(src.values) * chi.values()[n % chi.modulus]), src.complete)
    if isinstance(src, Periodic):
        q = math.lcm(src.period, chi.modulus)
        r = np.arange(q)
        res = np.asarray(src.residues)[r % src.period] * chi.values()[r % chi.modulus]
        return Periodic(tuple(res), src.shift)
    if isinstance(src, EulerProduct):
        new = chi if src.twist_by is None else src.twist_by * chi
        return EulerProduct(src.local, src.kind, src.bound, src.excluded, new, src.name)
    if isinstance(src, Convolution):
        return Convolution(twist(src.left, chi), twist(src.right, chi))
    raise ValidationError(f"cannot twist {type(src).__name__}")


def incomplete(src: CoefficientSource, primes) -> CoefficientSource:
    """Drop the Euler factors at the given primes."""
    primes = frozenset(int(p) for p in primes)
    if not primes:
        return src
    if isinstance(src, EulerProduct):
        return EulerProduct(src.local, src.kind, src.bound, src.excluded | primes, src.twist_by, src.name)
    if isinstance(src, Periodic) and src.is_completely_multiplicative():
        poly = np.zeros(math.prod(primes), dtype=complex)
        poly[0] = 1
        for p in sorted(primes):
            factor = np.zeros(len(poly), dtype=complex)
            factor[0] = 1
            factor[p - 1] = -src.residues[p % src.period] * np.exp(1j * src.shift * math.log(p))
            poly = dirichlet_convolve(poly, factor)
        return Convolution(Explicit(tuple(poly)), src)
    if isinstance(src, Convolution):
        return Convolution(incomplete(src.left, primes), incomplete(src.right, primes))
    raise PreconditionError(f"{type(src).__name__} source carries no Euler product data")


@dataclass(frozen=True)
class AverageBound:
    total: float
    exponent: float
    local_slope: float
    within_regime: bool


def average_bound_report(src: CoefficientSource, X: float) -> AverageBound:
    """sum_{n<X} |a_n|/sqrt(n) and its growth exponent.

    ``exponent`` is log(sum)/log(X); ``local_slope`` is the log-log slope of
    the partial sums on [sqrt(X), X].  Absolute convergence for Re(s) > 1
    forces growth like X^{1/2+eps}; ``within_regime`` tests slope <= 0.75.
    """
    if X < 2:
        raise ValidationError("X must be >= 2")
    n_top = int(math.ceil(X)) - 1
    a = src.coefficients(max(n_top, 1))[:n_top]
    partial = np.cumsum(np.abs(a) / np.sqrt(np.arange(1, n_top + 1)))
    total = float(partial[-1]) if n_top else 0.0
    exponent = math.log(total) / math.log(X) if total > 0 else float("-inf")
    lo = max(1, int(math.sqrt(X)))
    xs = np.unique(np.geomspace(lo, n_top, 30).astype(int))
    ys = partial[xs - 1]
    if len(xs) >= 2 and np.all(ys > 0) and ys[-1] > ys[0]:
        slope = float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
    else:
        slope = 0.0
    return AverageBound(total, exponent, slope, slope <= 0.75)


def zeta_source() -> Periodic:
    return Periodic((1,))


def zeta_euler() -> EulerProduct:
    return EulerProduct(lambda p: (1, -1), "inverse_poly", (1.0, 0.0), name="zeta")


def reduce_convolution(sources) -> CoefficientSource:
    return reduce(Convolution, sources)
