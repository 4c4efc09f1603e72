import math
from fractions import Fraction

import numpy as np
import pytest

from selberg_lab import corpus
from selberg_lab.arithmetic import Convolution, EulerProduct, Explicit, Periodic
from selberg_lab.characters import character
from selberg_lab.errors import ValidationError
from selberg_lab.io import fe_from_json, fe_to_json, parse_complex, parse_real, source_from_json


def test_parse_real():
    assert parse_real("3/4") == Fraction(3, 4)
    assert parse_real(2) == 2
    assert parse_real("sqrt(4/pi)") == pytest.approx(math.sqrt(4 / math.pi))
    assert parse_real("-pi**2/6") == pytest.approx(-math.pi**2 / 6)
    for bad in ("__import__('os')", "e", "1/"):
        with pytest.raises(ValidationError):
            parse_real(bad)


def test_parse_complex():
    assert parse_complex(["1/2", -1]) == 0.5 - 1j
    assert parse_complex(3) == 3 + 0j
    with pytest.raises(ValidationError):
        parse_complex([1, 2, 3])


def test_sources_from_json():
    src = source_from_json({"kind": "character", "modulus": 5, "index": 1})
    assert np.allclose(src.coefficients(10), character(5, 1).table(10))
    src = source_from_json({"kind": "periodic", "residues": [1, [0, 1]], "shift": "1/2"})
    assert isinstance(src, Periodic) and src.shift == 0.5
    src = source_from_json({"kind": "explicit", "values": [1, 4, 9], "scale_exponent": 2})
    assert isinstance(src, Explicit) and src.complete
    assert np.allclose(src.coefficients(3), [1, 1, 1])
    src = source_from_json({"kind": "euler"})
    assert isinstance(src, EulerProduct)
    assert np.allclose(src.coefficients(12), 1)
    src = source_from_json({"kind": "euler", "form": "log"})
    assert np.allclose(src.coefficients(12), 1)
    src = source_from_json({"kind": "convolution", "left": {"kind": "periodic", "residues": [1]}, "right": {"kind": "explicit", "values": [1, -1]}})
    assert isinstance(src, Convolution)
    assert np.allclose(src.coefficients(6), [1, 0, 1, 0, 1, 0])


def test_euler_overrides():
    # drop the Euler factor at 2: coefficients vanish on even n
    src = source_from_json({"kind": "euler", "overrides": {"2": [1]}})
    assert np.allclose(src.coefficients(8), [1, 0, 1, 0, 1, 0, 1, 0])


def test_twist_and_incomplete():
    src = source_from_json({"kind": "twist", "source": {"kind": "periodic", "residues": [1]}, "character": {"modulus": 4, "index": 1}})
    assert np.allclose(src.coefficients(8), corpus.source("l_chi4").coefficients(8))
    src = source_from_json({"kind": "incomplete", "source": {"kind": "euler"}, "primes": [3]})
    assert np.allclose(src.coefficients(9), [1, 1, 0, 1, 1, 0, 1, 1, 0])


@pytest.mark.parametrize(
    "doc",
    [
        {"values": [1]},
        {"kind": "nonsense"},
        {"kind": "periodic", "residues": [1], "extra": 0},
        {"kind": "explicit"},
        {"kind": "explicit", "values": [1], "file": "x.txt"},
    ],
)
def test_bad_sources(doc):
    with pytest.raises(ValidationError):
        source_from_json(doc)


def test_fe_round_trip():
    fe = corpus.zeta_l_chi4().fe
    again = fe_from_json(fe_to_json(fe))
    assert again.numerator == fe.numerator
    assert again.Q == pytest.approx(fe.Q)
    assert [p.at for p in again.poles] == [p.at for p in fe.poles]


def test_fe_requires_q():
    with pytest.raises(ValidationError):
        fe_from_json({"omega": 1})


def test_delta_table():
    src = corpus.delta().coefficients
    a = src.coefficients(5)
    tau = np.array([1, -24, 252, -1472, 4830])
    assert np.allclose(a, tau / np.arange(1, 6) ** 5.5)
    assert not src.complete


def test_tau_table_matches_oracles():
    from oracles import ramanujan_tau, tau_by_recursion
    from selberg_lab.corpus import bundled_path

    table = [int(x) for x in bundled_path("delta").with_name("ramanujan_tau.txt").read_text().split()]
    assert len(table) == 10_000
    assert table == ramanujan_tau(10_000)
    assert table[:400] == tau_by_recursion(400)
    # Hecke multiplicativity on coprime pairs and at p^2
    assert table[6 * 35 - 1] == table[5] * table[34]
    p = 7
    assert table[p * p - 1] == table[p - 1] ** 2 - p**11
