"""JSON forms of coefficient sources and L-function specs.

Spec document::

    {"name": "...",
     "coefficients": {...source...},
     "fe": {"Q": "1/2" | 0.56 | "sqrt(4/pi)",
            "omega": [re, im],
            "numerator": [{"lambda": "1/2", "mu": ["1/2", 0]}],
            "denominator": [],
            "poles": [{"at": [1, 0], "order": 1, "laurent": [[1, 0]]}]},
     "abscissa": 1,
     "flags": ["P3''"]}

Source forms, selected by ``"kind"``:

* ``explicit``: ``"values"`` (numbers or ``[re, im]`` pairs) or ``"file"`` (one
  number per line, relative to the document), optional ``"scale_exponent"`` e
  giving a_n = v_n n^{-e}, and ``"complete"`` (default true for inline values,
  false for files).
* ``periodic``: ``"residues"`` c(0..q-1), optional ``"shift"``.
* ``character``: ``"modulus"``, ``"index"`` (order of ``character_group``),
  optional ``"shift"``.
* ``euler``: ``"form"`` ``inverse_poly`` or ``log``, ``"default"`` local data,
  ``"overrides"`` keyed by prime, optional ``"character"``, ``"bound"``,
  ``"excluded"``.  For ``log`` the default may be the string ``"1/k"``.
* ``convolution``: ``"left"`` and ``"right"``.
* ``twist``: ``"source"`` and ``"character"``.
* ``incomplete``: ``"source"`` and ``"primes"``.

A document without ``"fe"`` describes coefficients only; load it with
:func:`load_source`.
"""

from __future__ import annotations

import ast
import json
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .arithmetic import CoefficientSource, Convolution, EulerProduct, Explicit, Periodic, incomplete, twist
from .characters import character
from .core import FunctionalEquation, GammaFactor, LFunctionSpec, Pole, PoleSpec, exact, exact_complex
from .errors import ValidationError

SOURCE_KEYS = {
    "explicit": {"values", "file", "scale_exponent", "complete"},
    "periodic": {"residues", "shift"},
    "character": {"modulus", "index", "shift"},
    "euler": {"form", "default", "overrides", "character", "bound", "excluded", "name"},
    "convolution": {"left", "right"},
    "twist": {"source", "character"},
    "incomplete": {"source", "primes"},
}
SPEC_KEYS = {"name", "coefficients", "fe", "abscissa", "flags", "description"}
FE_KEYS = {"Q", "omega", "numerator", "denominator", "poles"}

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}


def parse_real(x):
    """A number, a ``"p/q"`` string, or an arithmetic string in ``pi`` and ``sqrt``.

    Rational input stays exact; anything involving ``pi`` or ``sqrt`` is a float.
    """
    if not isinstance(x, str):
        return exact(x)
    try:
        return exact(x)
    except ValidationError:
        pass
    try:
        tree = ast.parse(x.strip(), mode="eval")
    except SyntaxError:
        raise ValidationError(f"cannot parse number {x!r}") from None
    return float(_eval(tree.body, x))


def _eval(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_eval(node.left, text), _eval(node.right, text))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval(node.operand, text)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt" and len(node.args) == 1:
        return math.sqrt(_eval(node.args[0], text))
    raise ValidationError(f"unsupported expression in {text!r}")


def parse_complex(z) -> complex:
    if isinstance(z, (list, tuple)):
        if len(z) != 2:
            raise ValidationError(f"complex pair must have two entries: {z!r}")
        return complex(float(parse_real(z[0])), float(parse_real(z[1])))
    return complex(float(parse_real(z)), 0.0)


def _check_keys(obj: dict, allowed: set, where: str):
    if not isinstance(obj, dict):
        raise ValidationError(f"{where} must be a JSON object")
    extra = set(obj) - allowed
    if extra:
        raise ValidationError(f"unknown keys in {where}: {sorted(extra)}")


@dataclass(frozen=True)
class TableLocal:
    """Local Euler data: a default tuple with per-prime overrides (hashable)."""

    default: tuple | str
    overrides: tuple = ()

    def __call__(self, p: int):
        for q, data in self.overrides:
            if q == p:
                return data
        if self.default == "1/k":
            return lambda k: 1.0 / k
        return self.default


def _character(obj):
    _check_keys(obj, {"modulus", "index"}, "character")
    return character(int(obj["modulus"]), int(obj.get("index", 0)))


def source_from_json(obj: dict, base: Path | None = None) -> CoefficientSource:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValidationError("coefficient source needs a 'kind'")
    kind = obj["kind"]
    if kind not in SOURCE_KEYS:
        raise ValidationError(f"unknown coefficient kind {kind!r}")
    _check_keys(obj, SOURCE_KEYS[kind] | {"kind"}, f"{kind} source")
    if kind == "explicit":
        if ("values" in obj) == ("file" in obj):
            raise ValidationError("explicit source needs exactly one of 'values' and 'file'")
        if "file" in obj:
            path = Path(obj["file"])
            if not path.is_absolute():
                path = (base or Path.cwd()) / path
            values = np.array([complex(line) for line in path.read_text().split()], dtype=complex)
            complete = bool(obj.get("complete", False))
        else:
            values = np.array([parse_complex(v) for v in obj["values"]], dtype=complex)
            complete = bool(obj.get("complete", True))
        e = float(parse_real(obj.get("scale_exponent", 0)))
        if e:
            values = values * np.arange(1, len(values) + 1, dtype=float) ** (-e)
        return Explicit(tuple(values), complete)
    if kind == "periodic":
        return Periodic(tuple(parse_complex(v) for v in obj["residues"]), float(parse_real(obj.get("shift", 0))))
    if kind == "character":
        chi = character(int(obj["modulus"]), int(obj.get("index", 0)))
        return Periodic.from_character(chi, float(parse_real(obj.get("shift", 0))))
    if kind == "euler":
        form = obj.get("form", "inverse_poly")
        default = obj.get("default", [1, -1] if form == "inverse_poly" else "1/k")

        def local_data(d):
            return d if d == "1/k" else tuple(parse_complex(v) for v in d)

        overrides = tuple(sorted((int(p), local_data(d)) for p, d in obj.get("overrides", {}).items()))
        bound = tuple(float(parse_real(b)) for b in obj.get("bound", [1, 0]))
        twist_by = _character(obj["character"]) if "character" in obj else None
        return EulerProduct(
            TableLocal(local_data(default), overrides),
            form,
            bound,
            frozenset(int(p) for p in obj.get("excluded", [])),
            twist_by,
            obj.get("name", ""),
        )
    if kind == "convolution":
        return Convolution(source_from_json(obj["left"], base), source_from_json(obj["right"], base))
    if kind == "twist":
        return twist(source_from_json(obj["source"], base), _character(obj["character"]))
    return incomplete(source_from_json(obj["source"], base), [int(p) for p in obj["primes"]])


def _gamma(obj) -> GammaFactor:
    _check_keys(obj, {"lambda", "mu"}, "gamma factor")
    re, im = exact_complex([parse_real(m) for m in obj["mu"]] if isinstance(obj.get("mu"), list) else parse_real(obj.get("mu", 0)))
    return GammaFactor(parse_real(obj["lambda"]), re, im)


def _pole(obj) -> Pole:
    _check_keys(obj, {"at", "order", "laurent"}, "pole")
    lau = obj.get("laurent")
    return Pole(parse_complex(obj["at"]), int(obj.get("order", 1)), None if lau is None else tuple(parse_complex(c) for c in lau))


def fe_from_json(obj: dict) -> FunctionalEquation:
    _check_keys(obj, FE_KEYS, "fe")
    if "Q" not in obj:
        raise ValidationError("fe needs 'Q'")
    return FunctionalEquation(
        parse_real(obj["Q"]),
        parse_complex(obj.get("omega", 1)),
        tuple(_gamma(g) for g in obj.get("numerator", [])),
        tuple(_gamma(g) for g in obj.get("denominator", [])),
        PoleSpec(tuple(_pole(p) for p in obj.get("poles", []))),
    )


def spec_from_json(obj: dict, base: Path | None = None) -> LFunctionSpec:
    _check_keys(obj, SPEC_KEYS, "spec")
    if "fe" not in obj:
        raise ValidationError("document has no 'fe' block; load it as a coefficient source")
    return LFunctionSpec(
        source_from_json(obj["coefficients"], base),
        fe_from_json(obj["fe"]),
        parse_real(obj.get("abscissa", 1)),
        frozenset(obj.get("flags", [])),
        obj.get("name", ""),
    )


def read_document(path) -> tuple[dict, Path]:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return doc, path.resolve().parent


def load_spec(path) -> LFunctionSpec:
    doc, base = read_document(path)
    return spec_from_json(doc, base)


def load_source(path) -> CoefficientSource:
    """Coefficients of a spec document or of a coefficient-only document."""
    doc, base = read_document(path)
    _check_keys(doc, SPEC_KEYS, "document")
    if "coefficients" not in doc:
        raise ValidationError("document has no 'coefficients' block")
    return source_from_json(doc["coefficients"], base)


def load_target(path):
    """A spec when the document carries an ``fe`` block, otherwise a source."""
    doc, base = read_document(path)
    return spec_from_json(doc, base) if "fe" in doc else load_source(path)


def fraction_text(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def fe_to_json(fe: FunctionalEquation) -> dict:
    def g(f):
        return {"lambda": fraction_text(f.lam), "mu": [fraction_text(f.mu_re), fraction_text(f.mu_im)]}

    out = {
        "Q": fraction_text(fe.q_scale),
        "omega": [fe.omega.real, fe.omega.imag],
        "numerator": [g(f) for f in fe.numerator],
        "denominator": [g(f) for f in fe.denominator],
        "poles": [],
    }
    for p in fe.poles:
        pole = {"at": [p.at.real, p.at.imag], "order": p.order}
        if p.laurent is not None:
            pole["laurent"] = [[c.real, c.imag] for c in p.laurent]
        out["poles"].append(pole)
    return out
