import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import mp_reflected_quotient
from selberg_lab.core import FunctionalEquation, gamma_factors
from selberg_lab.errors import SingularityError
from selberg_lab.gamma import (
    asymptotic_constants,
    formula_constants,
    log_gamma,
    log_G,
    log_reflection,
    paper_constants,
    quotient_bound_check,
    reflected_quotient,
)


@settings(max_examples=300, deadline=None)
@given(
    st.floats(min_value=-40, max_value=60, allow_nan=False),
    st.floats(min_value=-500, max_value=500, allow_nan=False),
)
def test_log_gamma_matches_mpmath(x, y):
    z = complex(x, y)
    if abs(z - round(x)) < 1e-3 and round(x) <= 0:
        return
    ref = complex(mpmath.loggamma(mpmath.mpc(x, y)))
    got = complex(log_gamma(z))
    assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


def test_log_gamma_poles():
    with pytest.raises(SingularityError):
        log_G(FunctionalEquation(1, 1, gamma_factors([(1, 0)])), -2.0)


def test_log_gamma_vectorised():
    z = np.array([0.5, 1 + 1j, 10 - 3j])
    assert np.allclose(np.exp(log_gamma(z)), [math.sqrt(math.pi), complex(mpmath.gamma(1 + 1j)), complex(mpmath.gamma(10 - 3j))])


@pytest.mark.parametrize("name", ["zeta", "l_chi4", "zeta_l_chi4", "delta"])
@pytest.mark.parametrize("t", [1.0, 17.5, 300.0, 5000.0])
def test_reflected_quotient_matches_mpmath(name, t):
    from selberg_lab import corpus

    fe = corpus.spec(name).fe
    factors = [(sign, float(g.lam), g.mu) for sign, g in fe.factors()]
    # the phase is a difference of log-gammas of size t log t, so double precision loses that much
    tol = 1e-13 + 1e-15 * t * math.log(t + 2) * len(factors)
    assert reflected_quotient(fe, t) == pytest.approx(mp_reflected_quotient(factors, t), abs=tol)


def test_log_reflection_is_reflected_on_critical_line(zeta):
    t = np.array([3.0, 40.0])
    from selberg_lab.gamma import log_reflected

    assert np.allclose(log_reflection(zeta.fe, 0.5 + 1j * t), log_reflected(zeta.fe, t))


def test_constants_zeta(zeta):
    c = asymptotic_constants(zeta.fe)
    assert c.discrepancy is None
    assert c.a_const == pytest.approx(0, abs=1e-8)
    assert c.b_const == pytest.approx(math.pi / 4, abs=1e-8)
    assert c.c_const == pytest.approx(1, abs=1e-8)


def test_constants_l_chi4(l_chi4):
    c = asymptotic_constants(l_chi4.fe)
    assert c.b_const == pytest.approx(-math.pi / 4, abs=1e-8)
    assert c.formula_b == pytest.approx(-math.pi / 4, abs=1e-15)


def test_constants_shifted_factor():
    fe = FunctionalEquation(1, 1, gamma_factors([("1/2", [0, "1/3"])]))
    c = asymptotic_constants(fe)
    assert c.discrepancy is None
    assert c.a_const == pytest.approx(-2 / 3, abs=1e-8)


def test_constants_mixed_scales():
    # degree 2 with unequal scales and a denominator
    fe = FunctionalEquation(1, 1, gamma_factors([(1, "1/4"), ("1/2", [0, 1])]), gamma_factors([("1/2", "1/3")]))
    c = asymptotic_constants(fe)
    assert c.discrepancy is None
    fa, fb, fc = formula_constants(fe)
    assert fc == pytest.approx(4 * 1 * 0.5 / 0.5, rel=1e-14)


def test_published_constants_recorded(zeta):
    b, c = paper_constants(zeta.fe)
    assert c == pytest.approx(math.e / 2)
    assert asymptotic_constants(zeta.fe).paper_c == pytest.approx(math.e / 2)


def test_model_error_is_order_one_over_t(zeta):
    c = asymptotic_constants(zeta.fe)
    t = np.geomspace(100, 1e4, 50)
    err = np.abs(reflected_quotient(zeta.fe, t) - c.model(t))
    slope = np.polyfit(np.log(t), np.log(err), 1)[0]
    assert slope < -0.9
    assert np.max(t * err) < 0.1


def test_quotient_bound(zeta):
    value, bound, violated = quotient_bound_check(zeta.fe, complex(-1, 2), 50.0)
    assert not violated and value <= bound
