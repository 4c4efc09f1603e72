"""Bundled specs: zeta, L(chi_3), L(chi_4), their product, (1 - 2^-s) zeta and Delta."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

from .io import load_source, load_spec

BUNDLED = {
    "zeta": "zeta.json",
    "l_chi3": "l_chi3.json",
    "l_chi4": "l_chi4.json",
    "zeta_l_chi4": "zeta_l_chi4.json",
    "zeta_one_minus_2": "zeta_one_minus_2.json",
    "delta": "delta.json",
}


def bundled_path(name: str) -> Path:
    if name not in BUNDLED:
        raise KeyError(f"no bundled spec {name!r}; choose from {sorted(BUNDLED)}")
    return Path(str(resources.files("selberg_lab") / "data" / BUNDLED[name]))


@lru_cache(maxsize=None)
def spec(name: str):
    return load_spec(bundled_path(name))


@lru_cache(maxsize=None)
def source(name: str):
    return load_source(bundled_path(name))


def zeta():
    return spec("zeta")


def l_chi3():
    return spec("l_chi3")


def l_chi4():
    return spec("l_chi4")


def zeta_l_chi4():
    return spec("zeta_l_chi4")


def zeta_one_minus_2():
    return source("zeta_one_minus_2")


def delta():
    return spec("delta")
