from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import window_enumeration
from selberg_lab.core import FunctionalEquation, gamma_factors
from selberg_lab.errors import DegreeError, ValidationError
from selberg_lab.gamma_sets import (
    GammaMultiset,
    GammaSet,
    _intersection,
    degree_zero_shape_check,
    density,
    multiset_difference,
    overlap,
    set_difference,
)

WINDOW = F(100)


def oracle_difference(v1, v2):
    c1 = window_enumeration(v1, WINDOW)
    c2 = window_enumeration(v2, WINDOW)
    return Counter({z: c1[z] - c2[z] for z in c1 if c1[z] > c2[z]})


def as_multiset(items):
    return GammaMultiset.of(*[(GammaSet(a, b, i), m) for a, b, i, m in items])


def test_density_examples():
    assert density(GammaSet(1, 0)) == 1
    assert density(GammaMultiset()) == 0
    assert density(GammaMultiset.of(GammaSet(2), GammaSet(1))) == 3


def test_alpha_must_be_positive_rational():
    with pytest.raises(ValidationError):
        GammaSet(0)
    with pytest.raises(ValidationError):
        GammaSet("pi")


def test_disjoint_difference():
    w1 = GammaSet(1, 0)
    assert set_difference(w1, GammaSet(1, F(1, 2))) == GammaMultiset(((w1, 1),))


def test_halving_difference():
    res = set_difference(GammaSet(2, 0), GammaSet(1, 0))
    assert res.parts == ((GammaSet(1, F(1, 2)), 1),) and not res.finite
    assert res.density() == 1
    assert str(res) == "gamma(1, 1/2)"
    pts = sorted(res.window_counter(F(50)), reverse=True)[:3]
    assert pts == [(F(-1, 2), 0), (F(-3, 2), 0), (F(-5, 2), 0)]


def test_self_difference_empty():
    w = GammaSet(1, 0, 1)
    assert set_difference(w, w).is_empty


def test_legendre_duplication():
    v1 = as_multiset([(1, 0, 0, 1), (1, F(1, 2), 0, 1)])
    v2 = as_multiset([(2, 0, 0, 1)])
    assert multiset_difference(v1, v2).is_empty
    assert multiset_difference(v2, v1).is_empty


def test_multiplicity_cancellation():
    v1 = as_multiset([(1, 0, 0, 2)])
    v2 = as_multiset([(1, 0, 0, 1)])
    assert multiset_difference(v1, v2) == as_multiset([(1, 0, 0, 1)])


def test_shifted_sets_leave_finite_points():
    res = set_difference(GammaSet(1, 0), GammaSet(1, 3))
    assert not res.parts
    assert dict(res.finite) == {(F(0), F(0)): 1, (F(-1), F(0)): 1, (F(-2), F(0)): 1}


def test_shape_check_examples():
    same = FunctionalEquation(1, 1, gamma_factors([(1, 0)]), gamma_factors([(1, 0)]))
    chk = degree_zero_shape_check(same)
    assert chk.finite_zero_pole and chk.poles.is_empty and chk.zeros.is_empty
    dup = FunctionalEquation(1, 1, gamma_factors([(1, 0), (1, "1/2")]), gamma_factors([(2, 0)]))
    assert degree_zero_shape_check(dup).finite_zero_pole
    bad = FunctionalEquation(1, 1, gamma_factors([(1, 0)]), gamma_factors([(1, "1/2")]))
    chk = degree_zero_shape_check(bad)
    assert not chk.finite_zero_pole
    assert chk.poles.density() == 1 and chk.zeros.density() == 1


def test_shape_check_degree_gate():
    with pytest.raises(DegreeError):
        degree_zero_shape_check(FunctionalEquation(1, 1, gamma_factors([("1/2", 0)])))


def test_json_dump_is_exact():
    doc = set_difference(GammaSet(2, 0), GammaSet(1, 0)).to_json()
    assert doc["parts"][0]["beta"] == ["1/2", "0"]
    assert doc["density"] == "1"


alphas = st.fractions(min_value=F(1, 6), max_value=10, max_denominator=6)
betas = st.fractions(min_value=-6, max_value=12, max_denominator=6)
gsets = st.builds(lambda a, b, imag: (a, b, a / 2 if imag else F(0)), alphas, betas, st.booleans())
multisets = st.lists(st.tuples(gsets, st.integers(1, 3)), max_size=3).map(lambda xs: [(*g, m) for g, m in xs])


@settings(max_examples=150, deadline=None)
@given(gsets, gsets)
def test_set_difference_matches_enumeration(g1, g2):
    res = set_difference(GammaSet(*g1), GammaSet(*g2))
    assert +res.window_counter(WINDOW) == oracle_difference([(*g1, 1)], [(*g2, 1)])


@settings(max_examples=100, deadline=None)
@given(gsets, st.integers(1, 4), st.integers(1, 4))
def test_set_difference_with_commensurable_scale(g1, m1, m2):
    # force a rational ratio so the infinite-intersection branch is exercised
    g2 = (g1[0] * F(m2, m1), g1[1], g1[2])
    res = set_difference(GammaSet(*g1), GammaSet(*g2))
    assert +res.window_counter(WINDOW) == oracle_difference([(*g1, 1)], [(*g2, 1)])


@settings(max_examples=100, deadline=None)
@given(multisets, multisets)
def test_multiset_difference_and_conservation(v1, v2):
    m1, m2 = as_multiset(v1), as_multiset(v2)
    res = multiset_difference(m1, m2)
    assert +res.window_counter(WINDOW) == oracle_difference(v1, v2)
    assert res.density() + overlap(m1, m2).density() == m1.density()


@settings(max_examples=150, deadline=None)
@given(gsets, gsets)
def test_density_dichotomy(g1, g2):
    w1, w2 = GammaSet(*g1), GammaSet(*g2)
    res = set_difference(w1, w2)
    if _intersection(w1, w2) is None:
        assert res.density() == w1.alpha
        return
    m1 = (w1.alpha / w2.alpha).numerator
    if m1 == 1:
        assert not res.parts
    assert res.density() == (m1 - 1) * w1.alpha / m1


@settings(max_examples=50, deadline=None)
@given(multisets)
def test_self_difference_is_empty(v):
    m = as_multiset(v)
    assert multiset_difference(m, m).is_empty
