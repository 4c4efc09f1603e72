import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from oracles import brute_convolution, divisor_count
from selberg_lab.arithmetic import (
    Convolution,
    EulerProduct,
    Explicit,
    Periodic,
    average_bound_report,
    dirichlet_convolve,
    dirichlet_inverse,
    incomplete,
    log_coefficients_from,
    twist,
    zeta_euler,
    zeta_source,
)
from selberg_lab.characters import character, principal_character, real_primitive
from selberg_lab.errors import OverflowLimitError, PreconditionError, TruncationError, ValidationError
from selberg_lab.io import TableLocal

CHI4 = real_primitive(4)


def test_zeta_coefficients():
    assert list(zeta_source().coefficients(5)) == [1] * 5
    assert np.allclose(zeta_euler().coefficients(5), 1)


def test_log_form_of_zeta():
    src = EulerProduct(TableLocal("1/k"), kind="log")
    assert np.allclose(src.coefficients(200), 1, atol=1e-13)


def test_zeta_squared_divisor_function():
    a = Convolution(zeta_source(), zeta_source()).coefficients(6)
    assert list(a.real) == [1, 2, 2, 3, 2, 4]


def test_euler_l_chi4_matches_character():
    src = EulerProduct(TableLocal((1, -1)), twist_by=CHI4)
    assert np.allclose(src.coefficients(300), CHI4.table(300))


def test_dirichlet_inverse_of_zeta_is_mobius():
    mu = dirichlet_inverse(np.ones(30, dtype=complex)).real
    assert list(mu[:10]) == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


complex_vals = st.builds(complex, st.integers(-5, 5), st.integers(-5, 5))


@settings(max_examples=50, deadline=None)
@given(st.lists(complex_vals, min_size=1, max_size=40), st.lists(complex_vals, min_size=1, max_size=40))
def test_convolution_matches_double_loop(a, b):
    n = 120
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    got = Convolution(Explicit(a), Explicit(b)).coefficients(n)
    assert np.allclose(got, brute_convolution(a, b, n), atol=1e-12, rtol=0)


def test_convolution_random_sources_to_1000():
    rng = np.random.default_rng(7)
    a = rng.normal(size=1000) + 1j * rng.normal(size=1000)
    b = rng.normal(size=1000) + 1j * rng.normal(size=1000)
    assert np.allclose(dirichlet_convolve(a, b), brute_convolution(a, b, 1000), atol=1e-12, rtol=0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.floats(-0.9, 0.9), min_size=1, max_size=4), min_size=1, max_size=4))
def test_euler_log_inversion(local_logs):
    # b_{p^k} for the first few primes; other primes get b = 0
    primes = list(primerange(2, 100))[: len(local_logs)]
    table = tuple((p, tuple(b)) for p, b in zip(primes, local_logs))
    src = EulerProduct(TableLocal((), table), kind="log")
    a = src.coefficients(1000)
    for p, b in table:
        kmax = int(math.log(1000) / math.log(p))
        got = log_coefficients_from(a, p, kmax)[1:]
        want = np.zeros(kmax)
        want[: min(kmax, len(b))] = b[:kmax]
        assert np.allclose(got, want, atol=1e-10)


def test_inverse_poly_log_recovers_one_over_k():
    a = zeta_euler().coefficients(1000)
    for p in (2, 3, 5, 31):
        kmax = int(math.log(1000) / math.log(p))
        assert np.allclose(log_coefficients_from(a, p, kmax)[1:], 1 / np.arange(1, kmax + 1), atol=1e-12)


def test_twist_examples():
    assert list(twist(zeta_source(), CHI4).coefficients(5).real) == [1, 0, -1, 0, 1]
    trivial = principal_character(1)
    src = Explicit((1, 2, 3, 4))
    assert np.allclose(twist(src, trivial).coefficients(4), src.coefficients(4))
    d = twist(Convolution(zeta_source(), zeta_source()), CHI4).coefficients(9)
    assert d[8] == pytest.approx(3)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(complex_vals, min_size=1, max_size=30),
    st.lists(complex_vals, min_size=1, max_size=30),
    st.sampled_from([(3, 1), (4, 1), (5, 1), (5, 2), (7, 3), (8, 2), (12, 3)]),
)
def test_twist_distributes_over_convolution(a, b, qi):
    chi = character(*qi)
    left = twist(Convolution(Explicit(a), Explicit(b)), chi).coefficients(200)
    right = Convolution(twist(Explicit(a), chi), twist(Explicit(b), chi)).coefficients(200)
    assert np.allclose(left, right, atol=1e-12, rtol=0)


def test_twist_euler_product():
    tw = twist(zeta_euler(), CHI4)
    assert np.allclose(tw.coefficients(200), CHI4.table(200))


def test_incomplete_examples():
    odd = incomplete(zeta_source(), {2}).coefficients(20).real
    assert list(odd) == [1 if n % 2 else 0 for n in range(1, 21)]
    assert incomplete(zeta_source(), set()) == zeta_source()
    l46 = incomplete(Periodic.from_character(CHI4), {2, 3}).coefficients(60)
    want = [CHI4(n) if math.gcd(n, 6) == 1 else 0 for n in range(1, 61)]
    assert np.allclose(l46, want)
    ep = incomplete(zeta_euler(), {2, 3}).coefficients(60)
    assert np.allclose(ep, [1 if math.gcd(n, 6) == 1 else 0 for n in range(1, 61)])


def test_incomplete_needs_euler_data():
    with pytest.raises(PreconditionError):
        incomplete(Explicit((1, 2, 3)), {2})


def test_truncated_explicit_refuses_extension():
    src = Explicit((1, 2, 3), complete=False)
    assert list(src.coefficients(3).real) == [1, 2, 3]
    with pytest.raises(TruncationError):
        src.coefficients(4)
    assert list(Explicit((1, 2)).coefficients(4).real) == [1, 2, 0, 0]


def test_overflow_detected():
    with pytest.raises(OverflowLimitError):
        Explicit((1, 1e301)).coefficients(2)


def test_bad_n_max():
    with pytest.raises(ValidationError):
        zeta_source().coefficients(0)


def test_average_bound_zeta():
    rep = average_bound_report(zeta_source(), 1e4)
    with mpmath.workdps(30):
        want = float(mpmath.fsum(mpmath.mpf(n) ** -0.5 for n in range(1, 10000)))
    assert rep.total == pytest.approx(want, rel=1e-12)
    assert rep.exponent == pytest.approx(math.log(want) / math.log(1e4), rel=1e-12)
    assert rep.within_regime


def test_average_bound_linear_growth_flagged():
    rep = average_bound_report(Explicit(tuple(range(1, 100))), 100)
    assert rep.local_slope > 1.3
    assert not rep.within_regime


def test_average_bound_single_term():
    rep = average_bound_report(Explicit((1,)), 50)
    assert rep.total == 1 and rep.exponent == 0


def test_periodic_shift():
    src = Periodic((1,), shift=2.0)
    n = np.arange(1, 11)
    assert np.allclose(src.coefficients(10), n ** 2j)


def test_completely_multiplicative_detection():
    assert Periodic.from_character(CHI4).is_completely_multiplicative()
    assert not Periodic((0, 1, 2)).is_completely_multiplicative()


def test_divisor_oracle_agrees():
    a = Convolution(zeta_euler(), zeta_source()).coefficients(100).real
    assert list(np.round(a).astype(int)) == [divisor_count(n) for n in range(1, 101)]
