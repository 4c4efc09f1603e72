"""Dirichlet characters with exact values.

A character mod q is stored through its values as exact turn fractions:
chi(n) = exp(2 pi i theta(n)) with theta(n) a Fraction in [0, 1), or None
when gcd(n, q) > 1.

Indexing is deterministic.  (Z/qZ)* is split into cyclic components, one per
odd prime power (generator: least primitive root) and, for 2^e, the
components <-1> (e >= 2) and <5> (e >= 3), ordered by prime.  A character is
given by its exponent vector (k_1, ..., k_r) with chi(g_i) = e(k_i / ord_i),
and its index is the mixed-radix number with k_1 most significant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import factorint, primitive_root


def root_of_unity(theta: Fraction) -> complex:
    """exp(2 pi i theta), exact for quarter turns."""
    theta = theta % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if theta in exact:
        return exact[theta]
    return cmath.exp(2j * math.pi * float(theta))


@lru_cache(maxsize=None)
def _components(q: int) -> tuple[tuple[int, int, int], ...]:
    """(modulus p^e, generator mod p^e, order) for each cyclic component."""
    comps = []
    for p, e in sorted(factorint(q).items()):
        pe = p**e
        if p == 2:
            if e >= 2:
                comps.append((pe, pe - 1, 2))
            if e >= 3:
                comps.append((pe, 5, pe // 4))
        else:
            comps.append((pe, int(primitive_root(pe)), pe - pe // p))
    return tuple(comps)


@lru_cache(maxsize=None)
def _discrete_logs(q: int) -> dict[int, tuple[int, ...]]:
    """Map each unit n mod q to its exponent vector over the components."""
    comps = _components(q)
    per_comp = []
    i = 0
    while i < len(comps):
        pe, g, order = comps[i]
        if pe % 2 == 0 and pe >= 8:
            # (Z/2^e)* = <-1> x <5>
            _, g5, ord5 = comps[i + 1]
            table = {}
            x5 = 1
            for b in range(ord5):
                table[x5 % pe] = (0, b)
                table[(-x5) % pe] = (1, b)
                x5 = x5 * g5 % pe
            per_comp.append((pe, table, 2))
            i += 2
        else:
            table = {}
            x = 1
            for a in range(order):
                table[x % pe] = (a,)
                x = x * g % pe
            per_comp.append((pe, table, 1))
            i += 1
    out = {}
    for n in range(q):
        if math.gcd(n, q) != 1:
            continue
        vec: tuple[int, ...] = ()
        for pe, table, _ in per_comp:
            vec += table[n % pe]
        out[n] = vec
    return out


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    index: int
    exponents: tuple[Fraction | None, ...]  # theta(n) for n = 0..q-1

    def __call__(self, n: int) -> complex:
        th = self.exponents[n % self.modulus]
        return 0j if th is None else root_of_unity(th)

    def values(self) -> np.ndarray:
        return np.array([self(n) for n in range(self.modulus)], dtype=complex)

    def table(self, n_max: int) -> np.ndarray:
        """chi(1), ..., chi(n_max)."""
        v = self.values()
        return v[np.arange(1, n_max + 1) % self.modulus]

    @property
    def is_principal(self) -> bool:
        return all(th in (None, 0) for th in self.exponents)

    @property
    def is_real(self) -> bool:
        return all(th is None or th in (0, Fraction(1, 2)) for th in self.exponents)

    @property
    def parity(self) -> int:
        """0 for even characters, 1 for odd ones."""
        if self.modulus <= 2:
            return 0
        return 0 if self.exponents[self.modulus - 1] == 0 else 1

    @property
    def conductor(self) -> int:
        return _conductor(self.modulus, self.exponents)

    @property
    def inducing_modulus(self) -> int:
        return self.conductor

    @property
    def primitive(self) -> bool:
        return self.conductor == self.modulus

    def primitive_character(self) -> "DirichletCharacter":
        """The primitive character chi* inducing this one."""
        f = self.conductor
        if f == self.modulus:
            return self
        exps: list[Fraction | None] = [None] * f
        for n in range(self.modulus):
            th = self.exponents[n]
            if th is not None and exps[n % f] is None:
                exps[n % f] = th
        for chi in character_group(f):
            if list(chi.exponents) == exps:
                return chi
        raise AssertionError("primitive character not found")  # pragma: no cover

    def conj(self) -> "DirichletCharacter":
        exps = tuple(None if th is None else (-th) % 1 for th in self.exponents)
        return _by_exponents(self.modulus, exps)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        q = math.lcm(self.modulus, other.modulus)
        exps = []
        for n in range(q):
            a, b = self.exponents[n % self.modulus], other.exponents[n % other.modulus]
            exps.append(None if a is None or b is None else (a + b) % 1)
        return _by_exponents(q, tuple(exps))

    def __repr__(self):
        return f"DirichletCharacter(q={self.modulus}, index={self.index}, conductor={self.conductor})"


def _conductor(q: int, exps) -> int:
    for d in sorted(_divisors(q)):
        if all(exps[n] in (None, 0) for n in range(1, q, d) if exps[n] is not None):
            return d
    return q


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _by_exponents(q: int, exps) -> DirichletCharacter:
    for chi in character_group(q):
        if chi.exponents == exps:
            return chi
    raise ValueError("not a Dirichlet character table")


@lru_cache(maxsize=None)
def character_group(q: int) -> tuple[DirichletCharacter, ...]:
    """All phi(q) characters mod q in the documented deterministic order."""
    if q < 1:
        raise ValueError("modulus must be >= 1")
    comps = _components(q)
    orders = [c[2] for c in comps]
    logs = _discrete_logs(q)
    out = []
    for index in range(math.prod(orders)):
        ks = []
        rem = index
        for order in reversed(orders):
            ks.append(rem % order)
            rem //= order
        ks.reverse()
        exps: list[Fraction | None] = [None] * q
        for n, vec in logs.items():
            exps[n] = sum((Fraction(k * v, o) for k, v, o in zip(ks, vec, orders)), Fraction(0)) % 1
        out.append(DirichletCharacter(q, index, tuple(exps)))
    return tuple(out)


def character(q: int, index: int) -> DirichletCharacter:
    return character_group(q)[index]


def principal_character(q: int) -> DirichletCharacter:
    return character_group(q)[0]


def gauss_sum(chi: DirichletCharacter) -> complex:
    q = chi.modulus
    return sum(chi(n) * cmath.exp(2j * math.pi * n / q) for n in range(q))


def real_primitive(q: int) -> DirichletCharacter:
    """The unique non-principal real primitive character mod q (q = 3, 4, ...)."""
    for chi in character_group(q):
        if chi.primitive and chi.is_real and not chi.is_principal:
            return chi
    raise ValueError(f"no real primitive character mod {q}")
