"""Axiom data for Dirichlet series with a gamma-factor functional equation.

A member of the class is described by its coefficients and by the data of

    Phi(s) = Q^s G(s) F(s) = omega * conj(Phi(1 - conj(s))),
    G(s)   = prod Gamma(lam_j s + mu_j) / prod Gamma(lam'_j s + mu'_j).

Scales and shifts are kept as exact ``Fraction`` values whenever the caller
supplies them that way (ints, Fractions or ``"p/q"`` strings); floats are
kept as floats.  The gamma-set algebra relies on the exact values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import ValidationError

Real = Union[Fraction, float]

FLAGS = frozenset({"P3'", "P3''", "P4", "P4'"})
UNIT_TOL = 1e-12


def exact(x) -> Real:
    """Coerce ``x`` to a Fraction when it is exactly representable input.

    ints, Fractions and strings like ``"3/4"`` or ``"-2"`` become Fractions;
    floats (and strings that only parse as floats) stay floats.
    """
    if isinstance(x, bool):
        raise ValidationError(f"not a number: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        s = x.strip()
        try:
            return Fraction(s) if "." not in s and "e" not in s.lower() else float(s)
        except (ValueError, ZeroDivisionError):
            pass
        try:
            return float(s)
        except ValueError:
            raise ValidationError(f"cannot parse number {x!r}") from None
    try:
        return float(x)
    except (TypeError, ValueError):
        raise ValidationError(f"cannot parse number {x!r}") from None


def exact_complex(z) -> tuple[Real, Real]:
    """Split a complex-like value into (re, im), each via :func:`exact`."""
    if isinstance(z, (tuple, list)):
        if len(z) != 2:
            raise ValidationError(f"complex pair must have two entries: {z!r}")
        return exact(z[0]), exact(z[1])
    if isinstance(z, complex):
        return exact(z.real), exact(z.imag)
    return exact(z), Fraction(0)


def is_exact(*values) -> bool:
    return all(isinstance(v, Fraction) for v in values)


@dataclass(frozen=True)
class GammaFactor:
    """One factor Gamma(lam*s + mu) with mu = mu_re + i*mu_im."""

    lam: Real
    mu_re: Real = Fraction(0)
    mu_im: Real = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lam", exact(self.lam))
        object.__setattr__(self, "mu_re", exact(self.mu_re))
        object.__setattr__(self, "mu_im", exact(self.mu_im))
        if not self.lam > 0:
            raise ValidationError(f"gamma factor scale must be positive, got {self.lam}")

    @classmethod
    def of(cls, lam, mu=0) -> "GammaFactor":
        re, im = exact_complex(mu)
        return cls(lam, re, im)

    @property
    def mu(self) -> complex:
        return complex(float(self.mu_re), float(self.mu_im))

    @property
    def exact(self) -> bool:
        return is_exact(self.lam, self.mu_re, self.mu_im)

    def conjugate(self) -> "GammaFactor":
        return GammaFactor(self.lam, self.mu_re, -self.mu_im)


@dataclass(frozen=True)
class Pole:
    """A pole of F at ``at`` of the given order.

    ``laurent`` optionally holds the principal part ``(c_{-order}, ..., c_{-1})``.
    When absent it is computed numerically where a direct evaluator exists.
    """

    at: complex
    order: int = 1
    laurent: tuple[complex, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "at", complex(self.at))
        if int(self.order) != self.order or self.order < 1:
            raise ValidationError(f"pole order must be a positive integer, got {self.order}")
        object.__setattr__(self, "order", int(self.order))
        if self.laurent is not None:
            lau = tuple(complex(c) for c in self.laurent)
            if len(lau) != self.order:
                raise ValidationError("principal part length must equal the pole order")
            object.__setattr__(self, "laurent", lau)


@dataclass(frozen=True)
class PoleSpec:
    entries: tuple[Pole, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def locations(self) -> list[complex]:
        return [p.at for p in self.entries]

    def merged(self, other: "PoleSpec") -> "PoleSpec":
        """Union of root multisets; orders add at shared locations."""
        out: dict[complex, int] = {}
        for p in list(self) + list(other):
            key = _round_key(p.at)
            out[key] = out.get(key, 0) + p.order
        return PoleSpec(tuple(Pole(at, order) for at, order in out.items()))


def _round_key(z: complex) -> complex:
    return complex(round(z.real, 12), round(z.imag, 12))


@dataclass(frozen=True)
class FunctionalEquation:
    q_scale: Real
    omega: complex = 1 + 0j
    numerator: tuple[GammaFactor, ...] = ()
    denominator: tuple[GammaFactor, ...] = ()
    poles: PoleSpec = field(default_factory=PoleSpec)
    # Dirichlet-series factor B(s) of the generalised equation; unsupported.
    extra_factor: object = None

    def __post_init__(self):
        object.__setattr__(self, "q_scale", exact(self.q_scale))
        object.__setattr__(self, "omega", complex(self.omega))
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        if not isinstance(self.poles, PoleSpec):
            object.__setattr__(self, "poles", PoleSpec(tuple(self.poles)))
        if not self.q_scale > 0:
            raise ValidationError(f"Q must be positive, got {self.q_scale}")

    @property
    def Q(self) -> float:
        return float(self.q_scale)

    def factors(self):
        """Yield ``(sign, factor)`` with sign +1 for numerator, -1 for denominator."""
        for g in self.numerator:
            yield 1, g
        for g in self.denominator:
            yield -1, g

    def inverse(self) -> "FunctionalEquation":
        """Numerator and denominator swapped: the gamma quotient becomes 1/G."""
        return replace(self, numerator=self.denominator, denominator=self.numerator)


@dataclass(frozen=True)
class LFunctionSpec:
    coefficients: object  # a CoefficientSource from selberg_lab.arithmetic
    fe: FunctionalEquation
    abscissa: Real = Fraction(1)
    flags: frozenset = frozenset()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "abscissa", exact(self.abscissa))
        object.__setattr__(self, "flags", frozenset(self.flags))
        unknown = self.flags - FLAGS
        if unknown:
            raise ValidationError(f"unknown class flags: {sorted(unknown)}")

    @property
    def degree(self) -> Real:
        return degree(self.fe)


def degree(fe: FunctionalEquation) -> Real:
    """d_F = 2 (sum lam_j - sum lam'_j); exact when every scale is a Fraction."""
    total = sum((g.lam for g in fe.numerator), Fraction(0)) - sum(
        (g.lam for g in fe.denominator), Fraction(0)
    )
    return 2 * total


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


def validate(spec: LFunctionSpec) -> list[Violation]:
    """Check the declared class flags against the data. Violations are data."""
    out: list[Violation] = []
    fe = spec.fe
    if abs(abs(fe.omega) - 1) > UNIT_TOL:
        out.append(Violation("unit-modulus", f"|omega| = {abs(fe.omega)!r}, expected 1"))
    if spec.abscissa < Fraction(1, 2):
        out.append(Violation("abscissa", f"abscissa {spec.abscissa} < 1/2"))
    if fe.extra_factor is not None:
        out.append(
            Violation("extra-factor", "functional equations with a Dirichlet-series factor are not supported")
        )
    locs = [_round_key(p.at) for p in fe.poles]
    if len(set(locs)) != len(locs):
        out.append(Violation("pole-duplicate", "pole locations must be pairwise distinct"))
    for p in fe.poles:
        if p.at.real > float(spec.abscissa) + 1e-12:
            out.append(Violation("pole-location", f"pole at {p.at} lies right of the abscissa {spec.abscissa}"))

    if "P3'" in spec.flags:
        for sign, g in fe.factors():
            ratio = -(g.mu_re / g.lam) if g.exact else -float(g.mu_re) / float(g.lam)
            if ratio >= 0.5:
                side = "numerator" if sign > 0 else "denominator"
                out.append(Violation("P3'", f"{side} factor {g}: Re(-mu/lambda) >= 1/2"))
    if "P3''" in spec.flags:
        if fe.denominator:
            out.append(Violation("P3''", "denominator gamma factors are not allowed"))
        for g in fe.numerator:
            if g.mu_re < 0:
                out.append(Violation("P3''", f"factor {g}: Re(mu) < 0"))
    if "P4" in spec.flags or "P4'" in spec.flags:
        bound = _euler_bound(spec.coefficients)
        if bound is None:
            out.append(Violation("P4", "coefficients carry no Euler product data"))
        else:
            c_b, theta = bound
            if "P4'" in spec.flags and not theta < 0.5:
                out.append(Violation("P4'", f"theta = {theta} is not < 1/2"))
            for msg in _euler_spot_check(spec.coefficients):
                out.append(Violation("P4", msg))
    return out


def _euler_bound(src):
    fn = getattr(src, "euler_bound", None)
    return fn() if fn is not None else None


def _euler_spot_check(src) -> list[str]:
    fn = getattr(src, "check_log_bound", None)
    return fn() if fn is not None else []


def unit_spec() -> LFunctionSpec:
    """The constant series 1: identity of the monoid."""
    from .arithmetic import Explicit

    return LFunctionSpec(Explicit((1,)), FunctionalEquation(1), Fraction(1, 2), frozenset(FLAGS), "1")


def monoid_product(a: LFunctionSpec, b: LFunctionSpec) -> LFunctionSpec:
    """Product of two members: convolved coefficients, multiplied equation data."""
    from .arithmetic import Convolution

    fe = FunctionalEquation(
        q_scale=a.fe.q_scale * b.fe.q_scale,
        omega=a.fe.omega * b.fe.omega,
        numerator=a.fe.numerator + b.fe.numerator,
        denominator=a.fe.denominator + b.fe.denominator,
        poles=a.fe.poles.merged(b.fe.poles),
    )
    name = f"{a.name or 'F'}*{b.name or 'G'}"
    return LFunctionSpec(
        coefficients=Convolution(a.coefficients, b.coefficients),
        fe=fe,
        abscissa=max(a.abscissa, b.abscissa),
        flags=a.flags & b.flags,
        name=name,
    )


def gamma_factors(pairs: Iterable[Sequence]) -> tuple[GammaFactor, ...]:
    return tuple(GammaFactor.of(*p) for p in pairs)
