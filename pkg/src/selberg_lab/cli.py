"""Command-line front end.

Exit status: 0 ok, 2 invalid input, 3 numerical non-convergence,
4 failed precondition.  Every CSV row and JSON document carries the
``config_hash`` of the resolved run configuration.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import corpus
from .core import LFunctionSpec, degree, validate
from .detector import (
    classify_degree_one,
    classify_spec,
    detect,
    periodicity_scan,
    periodicity_test,
    primitivity_probe,
)
from .errors import PreconditionError, SelbergLabError, ValidationError
from .evaluator import EvalParams, critical_value_parts
from .gamma import asymptotic_constants, reflected_quotient
from .gamma_sets import GammaMultiset, GammaSet, degree_zero_shape_check, multiset_difference, overlap
from .io import load_source, load_target, parse_real
from .zeros import Rectangle, compare_zero_sets, count_zeros

COMMANDS = (
    "degree",
    "validate",
    "eval",
    "gamma-asym",
    "gamma-sets",
    "detect",
    "classify",
    "probe-primitivity",
    "zeros",
    "compare-zeros",
)
# keys of the run configuration that do not change the numbers produced
_UNHASHED = {"output", "workers", "config"}


def _float_list(text: str) -> list[float]:
    return [float(parse_real(x)) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    def common(default):
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--config", default=default(None), help="JSON file with option values; flags on the command line win")
        g.add_argument("--output", "-o", default=default(None), help="output file (default: stdout)")
        g.add_argument("--seed", type=int, default=default(0), help="seed for randomised corpus generation")
        g.add_argument("--workers", type=int, default=default(1), help="worker processes for independent integrals")
        return g

    p = argparse.ArgumentParser(prog="selberg-lab", description=__doc__.splitlines()[0], parents=[common(lambda v: v)])
    # the same options after the command name; SUPPRESS keeps them from clobbering earlier values
    after = common(lambda v: argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[after], **kw)

    sub.add_parser = add_parser

    def spec_cmd(name, help_text, n_specs=1):
        c = sub.add_parser(name, help=help_text)
        c.add_argument("specs", nargs=n_specs, metavar="SPEC", help="spec file or bundled name (" + ", ".join(corpus.BUNDLED) + ")")
        return c

    spec_cmd("degree", "print the degree")
    spec_cmd("validate", "list class-flag violations")

    c = spec_cmd("eval", "F(1/2+it) on a t grid via the smoothed identity")
    c.add_argument("--t-start", type=float, default=0.0)
    c.add_argument("--t-stop", type=float, default=10.0)
    c.add_argument("--t-step", type=float, default=1.0)
    c.add_argument("--X", type=float, default=None, help="smoothing parameter (default max(|t|,2)^(4/3))")
    c.add_argument("--eta", type=float, default=0.1)
    c.add_argument("--half-height", type=float, default=None)
    c.add_argument("--tol", type=float, default=1e-10)

    c = spec_cmd("gamma-asym", "reflected gamma quotient against its asymptotic model")
    c.add_argument("--t-min", type=float, default=100.0)
    c.add_argument("--t-max", type=float, default=1e4)
    c.add_argument("--points", type=int, default=50)
    c.add_argument("--constants", action="store_true", help="emit the fitted constants as JSON instead")

    c = sub.add_parser("gamma-sets", help="degree-0 shape check of a spec, or a difference of gamma multisets")
    c.add_argument("specs", nargs="?", metavar="SPEC")
    c.add_argument("--minuend", help="'alpha,beta[,mult];...' e.g. '2,0'")
    c.add_argument("--subtrahend", help="same format as --minuend")

    c = spec_cmd("detect", "normalized window integrals against the closed form")
    c.add_argument("--alpha", type=_float_list, default=[1.0])
    c.add_argument("--T", type=_float_list, default=[500.0, 1000.0, 2000.0, 4000.0])
    c.add_argument("--offsets", type=_float_list, default=[1.0, 1.01, 1.03])
    c.add_argument("--method", choices=("direct", "smoothed"), default="direct")

    c = spec_cmd("classify", "degree gate and classification")
    c.add_argument("--A", type=float, default=None, help="shift (coefficient files only; default 0)")
    c.add_argument("--q", type=int, default=None, help="period (coefficient files only; default: smallest q <= q-max)")
    c.add_argument("--q-max", type=int, default=100)
    c.add_argument("--horizon", type=int, default=None)

    c = spec_cmd("probe-primitivity", "search for a product of two shifted Dirichlet L-functions")
    c.add_argument("--q-max", type=int, default=20)
    c.add_argument("--horizon", type=int, default=40)
    c.add_argument("--grid-min", type=float, default=-5.0)
    c.add_argument("--grid-max", type=float, default=5.0)
    c.add_argument("--grid-step", type=float, default=0.01)
    c.add_argument("--scan-q-max", type=int, default=100)
    c.add_argument("--scan-horizon", type=int, default=1000)

    c = spec_cmd("zeros", "argument-principle count and zero locations")
    c.add_argument("--rect", type=_float_list, required=False, default=[0.0, 1.0, 0.0, 50.0])
    c.add_argument("--no-locate", action="store_true")
    c.add_argument("--csv", action="store_true", help="emit the zero list as CSV")

    c = spec_cmd("compare-zeros", "zeros of the second spec at which the first does not vanish", n_specs=2)
    c.add_argument("--rect", type=_float_list, default=[0.0, 1.0, 0.0, 30.0])
    c.add_argument("--threshold", type=float, default=1e-4)
    return p


# ---------------------------------------------------------------------------
# configuration


def _resolve_spec(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path.resolve()
    if name in corpus.BUNDLED:
        return corpus.bundled_path(name)
    raise ValidationError(f"no spec file or bundled spec named {name!r}")


def resolve_config(argv=None) -> dict:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = vars(args)
    if args.config:
        try:
            extra = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(extra, dict):
            raise ValidationError("config file must hold a JSON object")
        extra = {k.replace("-", "_"): v for k, v in extra.items()}
        unknown = set(extra) - set(cfg)
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        if extra.get("command", args.command) != args.command:
            raise ValidationError("config names a different command")
        # flags typed on the command line win over the file
        typed = argv if argv is not None else sys.argv[1:]
        given = {a.split("=")[0].lstrip("-").replace("-", "_") for a in typed if a.startswith("--")}
        if "-o" in typed:
            given.add("output")
        for k, v in extra.items():
            if k not in given and k != "specs":
                cfg[k] = v
    specs = cfg.get("specs")
    if specs is None:
        cfg["specs"] = []
    elif isinstance(specs, str):
        cfg["specs"] = [specs]
    cfg["specs"] = [str(_resolve_spec(s)) for s in cfg["specs"]]
    if cfg.get("output"):
        cfg["output"] = str(Path(cfg["output"]).resolve())
    if cfg["workers"] < 1:
        raise ValidationError("workers must be at least 1")
    return cfg


def config_hash(cfg: dict) -> str:
    """sha256 over the numeric configuration and the bytes of every spec (and data) file."""
    payload = {k: v for k, v in cfg.items() if k not in _UNHASHED}
    payload["specs"] = [_file_digest(Path(s)) for s in cfg["specs"]]
    text = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _file_digest(path: Path) -> str:
    h = hashlib.sha256(path.read_bytes())
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError:
        doc = {}
    for ref in _file_refs(doc):
        ref_path = Path(ref) if Path(ref).is_absolute() else path.parent / ref
        if ref_path.exists():
            h.update(ref_path.read_bytes())
    return h.hexdigest()


def _file_refs(obj):
    if isinstance(obj, dict):
        if isinstance(obj.get("file"), str):
            yield obj["file"]
        for v in obj.values():
            yield from _file_refs(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _file_refs(v)


# ---------------------------------------------------------------------------
# output


def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [jsonable(float(x.real)), jsonable(float(x.imag))]
    if isinstance(x, (float, np.floating)):
        return float(x) if math.isfinite(x) else None
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return x


def dump_json(doc: dict, h: str) -> str:
    doc = dict(jsonable(doc))
    doc["config_hash"] = h
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def dump_csv(header, rows, h: str) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(list(header) + ["config_hash"])
    for row in rows:
        writer.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in row] + [h])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def _spec(path: str) -> LFunctionSpec:
    target = load_target(path)
    if not isinstance(target, LFunctionSpec):
        raise PreconditionError(f"{path} holds coefficients only; this command needs a functional equation")
    return target


def _grid(start: float, stop: float, step: float) -> np.ndarray:
    if step <= 0 or stop < start:
        raise ValidationError("t grid needs step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _eval_job(job):
    spec, t, params = job
    return critical_value_parts(spec, float(t), params)


def cmd_degree(cfg, h):
    d = degree(_spec(cfg["specs"][0]).fe)
    if cfg.get("output"):
        return dump_json({"degree": d}, h), 0
    return f"{d}\n", 0


def cmd_validate(cfg, h):
    violations = validate(_spec(cfg["specs"][0]))
    doc = {"violations": [{"kind": v.kind, "message": v.message} for v in violations]}
    return dump_json(doc, h), ValidationError.code if violations else 0


def cmd_eval(cfg, h):
    spec = _spec(cfg["specs"][0])
    params = EvalParams(cfg["X"], cfg["eta"], cfg["half_height"], 16, cfg["tol"])
    jobs = [(spec, t, params) for t in _grid(cfg["t_start"], cfg["t_stop"], cfg["t_step"])]
    if cfg["workers"] > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=cfg["workers"]) as pool:
            parts = list(pool.map(_eval_job, jobs))
    else:
        parts = [_eval_job(j) for j in jobs]
    rows = [(p.t, p.value.real, p.value.imag, abs(p.value), abs(p.r1), abs(p.r2)) for p in parts]
    return dump_csv(["t", "re", "im", "abs", "r1_mag", "r2_mag"], rows, h), 0


def cmd_gamma_asym(cfg, h):
    fe = _spec(cfg["specs"][0]).fe
    consts = asymptotic_constants(fe)
    if cfg["constants"]:
        doc = {
            "A": consts.a_const,
            "B": consts.b_const,
            "C": consts.c_const,
            "degree": consts.degree,
            "formula": {"A": consts.formula_a, "B": consts.formula_b, "C": consts.formula_c},
            "published": {"B": consts.paper_b, "C": consts.paper_c},
            "fit_residual": consts.fit_residual,
            "discrepancy": consts.discrepancy,
        }
        return dump_json(doc, h), 0
    t = np.geomspace(cfg["t_min"], cfg["t_max"], cfg["points"])
    q = reflected_quotient(fe, t)
    m = consts.model(t)
    err = np.abs(q - m)
    rows = zip(t, q.real, q.imag, m.real, m.imag, err, t * err)
    return dump_csv(["t", "re_quotient", "im_quotient", "model_re", "model_im", "abs_error", "t_times_error"], rows, h), 0


def _multiset(text: str) -> GammaMultiset:
    parts = []
    for item in text.split(";"):
        fields = [f.strip() for f in item.split(",")]
        if len(fields) not in (2, 3):
            raise ValidationError(f"gamma-set entry must be 'alpha,beta[,mult]': {item!r}")
        mult = int(fields[2]) if len(fields) == 3 else 1
        parts.append((GammaSet(parse_real(fields[0]), parse_real(fields[1])), mult))
    return GammaMultiset.of(*parts)


def cmd_gamma_sets(cfg, h):
    if cfg["specs"]:
        return dump_json({"shape": degree_zero_shape_check(_spec(cfg["specs"][0]).fe)}, h), 0
    if not (cfg.get("minuend") and cfg.get("subtrahend")):
        raise ValidationError("gamma-sets needs a spec or both --minuend and --subtrahend")
    v1, v2 = _multiset(cfg["minuend"]), _multiset(cfg["subtrahend"])
    diff = multiset_difference(v1, v2)
    doc = {
        "minuend": v1,
        "subtrahend": v2,
        "difference": diff,
        "difference_text": str(diff),
        "overlap": overlap(v1, v2),
    }
    return dump_json(doc, h), 0


def cmd_detect(cfg, h):
    spec = _spec(cfg["specs"][0])
    res = detect(spec, cfg["alpha"], cfg["T"], tuple(cfg["offsets"]), cfg["method"], cfg["workers"])
    rows = [
        (s.alpha, s.T, s.normalized.real, s.normalized.imag, s.closed_form.real, s.closed_form.imag, s.gap)
        for s in res.samples
    ]
    return dump_csv(["alpha", "T", "re", "im", "closed_re", "closed_im", "gap"], rows, h), 0


def cmd_classify(cfg, h):
    target = load_target(cfg["specs"][0])
    if isinstance(target, LFunctionSpec):
        routing = classify_spec(target, cfg["horizon"])
        return dump_json({"degree": routing.degree, "route": routing.route, "result": routing.detail}, h), 0
    A = cfg["A"] if cfg["A"] is not None else 0.0
    q = cfg["q"]
    if q is None:
        for cand in range(1, cfg["q_max"] + 1):
            if periodicity_test(target, A, cand, max(1000, 10 * cand))[0]:
                q = cand
                break
        else:
            raise PreconditionError(f"coefficients are not periodic with period <= {cfg['q_max']} at shift {A}")
    result = classify_degree_one(target, A, q, cfg["horizon"])
    return dump_json({"route": "degree-1", "result": result}, h), 0


def cmd_probe(cfg, h):
    src = load_source(cfg["specs"][0])
    step = cfg["grid_step"]
    n = int(round((cfg["grid_max"] - cfg["grid_min"]) / step)) + 1
    grid = np.round(cfg["grid_min"] + step * np.arange(n), 10)
    probe = primitivity_probe(src, grid, cfg["q_max"], cfg["horizon"])
    dev, A, q = periodicity_scan(src, grid, cfg["scan_q_max"], cfg["scan_horizon"])
    doc = {
        "probe": probe,
        "factored": probe.factored,
        "periodicity": {"min_deviation": dev, "A": A, "q": q, "q_max": cfg["scan_q_max"], "horizon": cfg["scan_horizon"]},
    }
    return dump_json(doc, h), 0


def _rect(values) -> Rectangle:
    if len(values) != 4:
        raise ValidationError("--rect needs sigma_min,sigma_max,t_min,t_max")
    return Rectangle(*values)


def cmd_zeros(cfg, h):
    report = count_zeros(load_target(cfg["specs"][0]), _rect(cfg["rect"]), locate=not cfg["no_locate"])
    if cfg["csv"]:
        rows = [(z.location.real, z.location.imag, z.multiplicity, z.error) for z in report.zeros]
        return dump_csv(["re", "im", "multiplicity", "error"], rows, h), 0
    return dump_json(report.to_json(), h), 0


def cmd_compare(cfg, h):
    s1, s2 = (_spec(p) for p in cfg["specs"])
    return dump_json(compare_zero_sets(s1, s2, _rect(cfg["rect"]), cfg["threshold"]).to_json(), h), 0


HANDLERS = {
    "degree": cmd_degree,
    "validate": cmd_validate,
    "eval": cmd_eval,
    "gamma-asym": cmd_gamma_asym,
    "gamma-sets": cmd_gamma_sets,
    "detect": cmd_detect,
    "classify": cmd_classify,
    "probe-primitivity": cmd_probe,
    "zeros": cmd_zeros,
    "compare-zeros": cmd_compare,
}


def run(cfg: dict) -> tuple[str, int]:
    """Execute a resolved configuration; returns (output text, exit status)."""
    return HANDLERS[cfg["command"]](cfg, config_hash(cfg))


def main(argv=None) -> int:
    try:
        cfg = resolve_config(argv)
        text, status = run(cfg)
        if cfg.get("output"):
            with open(cfg["output"], "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return status
    except SelbergLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ValidationError.code


if __name__ == "__main__":
    sys.exit(main())
