import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import mp_dirichlet
from selberg_lab import corpus
from selberg_lab.arithmetic import Convolution, Explicit, Periodic
from selberg_lab.core import FunctionalEquation, LFunctionSpec, Pole, PoleSpec
from selberg_lab.evaluator import (
    EvalParams,
    completed_value,
    critical_value,
    critical_value_parts,
    direct_value,
    has_direct,
    principal_part,
    reflected_value,
)
from selberg_lab.errors import PreconditionError, SingularityError, ValidationError

# mpmath.zeta(0.5) and mpmath.dirichlet(0.5, [0, 1, 0, -1]) at 30 digits
ZETA_HALF = -1.4603545088095868
L4_HALF = 0.6676914571896092
ZETA_FIRST_ZERO = 14.134725141734693


def test_frozen_values_match_mpmath():
    mpmath.mp.dps = 30
    assert abs(float(mpmath.zeta(0.5)) - ZETA_HALF) < 1e-15
    assert abs(float(mpmath.dirichlet(0.5, [0, 1, 0, -1])) - L4_HALF) < 1e-15
    assert abs(float(mpmath.zetazero(1).imag) - ZETA_FIRST_ZERO) < 1e-14


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-3, 3), min_size=1, max_size=6),
    st.floats(0.1, 3.0),
    st.floats(-60, 60),
)
def test_direct_periodic_matches_mpmath(residues, sigma, t):
    # residues c(1), ..., c(q) with the n = q class last, as mpmath expects c(0) first
    q = len(residues)
    periodic = Periodic(tuple(residues[-1:] + residues[:-1]))
    s = complex(sigma, t)
    if sum(residues) != 0 and abs(s - 1) < 0.05:
        return
    got = direct_value(periodic, s)
    want = mp_dirichlet(residues[-1:] + residues[:-1], s)
    assert abs(got - want) <= 1e-10 * max(1.0, abs(want)), (q, s)


def test_direct_convolution_is_product():
    a = Periodic((0, 1, 0, -1))
    b = Periodic((1,))
    s = 0.5 + 7.3j
    assert abs(direct_value(Convolution(a, b), s) - direct_value(a, s) * direct_value(b, s)) < 1e-12


def test_direct_finite_polynomial():
    src = Explicit((1, -2, 0, 3), complete=True)
    s = 0.3 + 2j
    want = 1 - 2 * 2**-s + 3 * 4**-s
    assert abs(direct_value(src, s) - want) < 1e-14


def test_has_direct():
    assert has_direct(Periodic((1,)))
    assert has_direct(Explicit((1, 2), complete=True))
    assert not has_direct(Explicit((1, 2), complete=False))
    assert not has_direct(corpus.delta().coefficients)


def test_critical_values(zeta, l_chi4):
    assert abs(critical_value(zeta, 0.0) - ZETA_HALF) < 1e-6
    assert abs(critical_value(l_chi4, 0.0) - L4_HALF) < 1e-6


def test_first_zero(zeta):
    assert abs(critical_value(zeta, ZETA_FIRST_ZERO)) < 1e-5


@pytest.mark.parametrize("t", [0.0, 5.0, 21.0])
def test_smoothed_agrees_with_direct(zeta, l_chi4, t):
    for spec in (zeta, l_chi4):
        assert abs(critical_value(spec, t) - direct_value(spec.coefficients, 0.5 + 1j * t)) < 1e-8


@pytest.mark.parametrize("t", [0.0, 3.5, 30.0])
def test_independent_of_X_and_eta(zeta, l_chi4, t):
    for spec in (zeta, l_chi4):
        base = critical_value(spec, t)
        for params in (EvalParams(X=20.0), EvalParams(X=60.0), EvalParams(eta=0.3), EvalParams(eta=0.05)):
            assert abs(critical_value(spec, t, params) - base) < 1e-7


def test_parts_sum(zeta):
    cv = critical_value_parts(zeta, 10.0)
    assert cv.value == cv.smoothed - cv.r1 - cv.r2
    assert cv.X == 10.0 ** (4 / 3)
    assert cv.r2_bound_ratio < 10


def test_reflection_matches_direct(zeta_l_chi4):
    s = np.array([0.2 + 3j, 0.7 - 11j, -0.4 + 25j])
    got = reflected_value(zeta_l_chi4, s)
    want = direct_value(zeta_l_chi4.coefficients, s)
    assert np.max(np.abs(got - want) / np.abs(want)) < 1e-10


@pytest.mark.parametrize("name", ["zeta", "l_chi4"])
def test_completed_function_symmetric(name):
    spec = corpus.spec(name)
    for t in np.geomspace(1, 100, 12):
        plus = completed_value(spec, 0.5 + 1j * t, critical_value(spec, t))
        minus = completed_value(spec, 0.5 - 1j * t, critical_value(spec, -t))
        assert abs(abs(plus) - abs(minus)) < 1e-8 * max(1.0, abs(plus))


def test_residue_from_contour_matches_supplied(zeta):
    (pole,) = tuple(zeta.fe.poles)
    assert pole.laurent == (1,)
    bare = Pole(pole.at, 1, None)
    got = principal_part(zeta, bare)[0]
    assert abs(got - 1) < 1e-12


def test_parameter_validation():
    with pytest.raises(ValidationError):
        EvalParams(eta=1.0)
    with pytest.raises(ValidationError):
        EvalParams(X=-1.0)
    with pytest.raises(ValidationError):
        EvalParams(quadrature_nodes=1)


def test_no_direct_route_for_delta():
    with pytest.raises(PreconditionError):
        critical_value(corpus.delta(), 10.0)


def test_contour_through_pole_rejected(zeta):
    fe = zeta.fe
    shifted = FunctionalEquation(fe.q_scale, fe.omega, fe.numerator, fe.denominator, PoleSpec((Pole(-0.4, 1, (1,)),)))
    spec = LFunctionSpec(zeta.coefficients, shifted, 1)
    with pytest.raises(SingularityError):
        critical_value(spec, 3.0, EvalParams(eta=0.1))
