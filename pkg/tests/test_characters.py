import cmath
import math

import numpy as np
import pytest

from selberg_lab.characters import character, character_group, gauss_sum, principal_character, real_primitive


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24, 30, 36, 50])
def test_group_orthogonality(q):
    group = character_group(q)
    phi = sum(1 for n in range(q) if math.gcd(n, q) == 1)
    assert len(group) == phi
    tab = np.array([chi.values() for chi in group])
    assert np.allclose(tab @ tab.conj().T, phi * np.eye(phi), atol=1e-10)


@pytest.mark.parametrize("q", [5, 8, 12, 21])
def test_characters_are_multiplicative(q):
    for chi in character_group(q):
        for m in range(1, 2 * q):
            for n in range(1, 2 * q):
                assert cmath.isclose(chi(m * n), chi(m) * chi(n), abs_tol=1e-12)


def test_real_primitive_tables():
    assert list(real_primitive(4).values().real) == [0, 1, 0, -1]
    assert list(real_primitive(3).values().real) == [0, 1, -1]


def test_conductors_mod_12():
    assert sorted(chi.conductor for chi in character_group(12)) == [1, 3, 4, 12]


def test_principal_character():
    chi = principal_character(10)
    assert chi.is_principal and chi.conductor == 1
    assert [chi(n) for n in range(10)] == [0, 1, 0, 1, 0, 0, 0, 1, 0, 1]


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 11, 12, 13])
def test_gauss_sum_modulus_for_primitive(q):
    for chi in character_group(q):
        if chi.primitive:
            assert abs(gauss_sum(chi)) == pytest.approx(math.sqrt(q), rel=1e-12)


def test_primitive_character_induces():
    for chi in character_group(24):
        star = chi.primitive_character()
        assert star.primitive
        for n in range(1, 100):
            if math.gcd(n, 24) == 1:
                assert cmath.isclose(chi(n), star(n), abs_tol=1e-12)


def test_parity_and_conj():
    chi = real_primitive(4)
    assert chi.parity == 1
    assert real_primitive(5).parity == 0
    chi5 = character(5, 1)
    prod = chi5 * chi5.conj()
    assert prod.is_principal
