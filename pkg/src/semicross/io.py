"""Workspace files and report serialization.

A workspace is one JSON object::

    {
      "limits": ["p0", "p2"],
      "cycles": [{"name": "Y", "length": 2}],
      "chains": [{"name": "c", "minus": "p0", "plus": "p2"}],
      "functions": {
        "f": {"chains": {"c": {"values": {"0": "1"}}}},
        "g": {"chains": {"c": {"split": 1}}, "limits": {"p2": "1"}}
      },
      "elements": {"A": {"1": "f"}, "B": {"1": "g"}}
    }

Chain entries take ``minus``/``plus`` tails (defaulting to the value at the
limit the end converges to, or 0 at infinity), a ``split`` index where the
plus tail starts, and explicit ``values``. Element coefficients are function
names or inline function objects. Scalars are exact strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .algebra import AlgebraElement
from .compactness.approximant import Approximant
from .compactness.certify import Certificate, Verdict, minimal_indices
from .compactness.conditions import ConditionReport, Failure
from .compactness.witness import WitnessFamily
from .dynsys import CyclePoint, DynamicalSystem, parse_point, parse_system, system_to_dict
from .errors import ValidationError
from .funcspace import ModelFunction, make_function
from .profile import Profile
from .scalar import ZERO, Scalar

FIXTURES = ("paper-example", "WA", "WB", "CP", "CYC")


@dataclass(frozen=True)
class Workspace:
    system: DynamicalSystem
    functions: Mapping[str, ModelFunction] = field(default_factory=dict)
    elements: Mapping[str, AlgebraElement] = field(default_factory=dict)

    def element(self, ref: str) -> AlgebraElement:
        """A named element, or an inline ``"deg:func,deg:func"`` expression."""
        if ref in self.elements:
            return self.elements[ref]
        if ":" not in ref:
            if ref == "0":
                return AlgebraElement(self.system)
            raise ValidationError(f"unknown element {ref!r}")
        coeffs: dict[int, ModelFunction] = {}
        for part in ref.split(","):
            deg, _, name = part.partition(":")
            try:
                n = int(deg)
            except ValueError:
                raise ValidationError(f"bad degree in {part!r}") from None
            if name.strip() not in self.functions:
                raise ValidationError(f"unknown function {name.strip()!r}")
            if n in coeffs:
                raise ValidationError(f"degree {n} given twice in {ref!r}")
            coeffs[n] = self.functions[name.strip()]
        try:
            return AlgebraElement(self.system, coeffs)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None


# -- scalars -------------------------------------------------------------------


def number_to_json(x) -> str | float | None:
    """Exact values become strings, inexact ones stay floats."""
    if x is None:
        return None
    if isinstance(x, float):
        return x
    if isinstance(x, (Fraction, int)):
        return str(Fraction(x))
    return str(x)


def number_from_json(x) -> Fraction | float | None:
    if x is None or isinstance(x, float):
        return x
    return Fraction(x)


def _scalar(x) -> Scalar:
    try:
        return Scalar.coerce(x)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad scalar {x!r}: {exc}") from None


# -- functions and elements ----------------------------------------------------


def function_from_dict(sys: DynamicalSystem, data: Mapping) -> ModelFunction:
    if not isinstance(data, Mapping):
        raise ValidationError("a function must be an object")
    unknown = set(data) - {"chains", "cycles", "limits"}
    if unknown:
        raise ValidationError(f"unknown function keys {sorted(unknown)}")
    limits = {str(a): _scalar(v) for a, v in data.get("limits", {}).items()}
    cycles = {}
    for key, v in data.get("cycles", {}).items():
        p = parse_point(sys, key)
        if not isinstance(p, CyclePoint):
            raise ValidationError(f"{key!r} is not a cycle point")
        cycles[p] = _scalar(v)
    chains = {}
    for name, spec in data.get("chains", {}).items():
        ch = sys.chain_by_name.get(name)
        if ch is None:
            raise ValidationError(f"unknown chain {name!r}")
        minus = _scalar(spec["minus"]) if "minus" in spec else limits.get(ch.minus, ZERO)
        plus = _scalar(spec["plus"]) if "plus" in spec else limits.get(ch.plus, ZERO)
        try:
            explicit = {int(j): _scalar(v) for j, v in spec.get("values", {}).items()}
            split = int(spec.get("split", 0))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"chain {name!r}: {exc}") from None
        chains[name] = Profile.build(minus, plus, explicit, split)
    return make_function(sys, cycles, chains, limits)


def function_to_dict(f: ModelFunction) -> dict:
    out: dict[str, Any] = {}
    if f.cycle_values:
        out["cycles"] = {str(p): str(v) for p, v in f.cycle_values.items()}
    if f.limit_values:
        out["limits"] = {a: str(v) for a, v in f.limit_values.items()}
    if f.chains:
        out["chains"] = {
            name: {
                "minus": str(prof.minus),
                "plus": str(prof.plus),
                "split": prof.lo,
                "values": {str(j): str(v) for j, v in prof.window()},
            }
            for name, prof in f.chains.items()
        }
    return out


def element_from_dict(sys: DynamicalSystem, data: Mapping,
                      functions: Mapping[str, ModelFunction] | None = None) -> AlgebraElement:
    functions = functions or {}
    coeffs = {}
    for deg, ref in data.items():
        try:
            n = int(deg)
        except ValueError:
            raise ValidationError(f"bad degree {deg!r}") from None
        if isinstance(ref, str):
            if ref not in functions:
                raise ValidationError(f"unknown function {ref!r}")
            coeffs[n] = functions[ref]
        else:
            coeffs[n] = function_from_dict(sys, ref)
    try:
        return AlgebraElement(sys, coeffs)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def element_to_dict(a: AlgebraElement) -> dict:
    return {str(n): function_to_dict(f) for n, f in a.items()}


# -- workspaces ----------------------------------------------------------------


def parse_workspace(data: Mapping) -> Workspace:
    if not isinstance(data, Mapping):
        raise ValidationError("workspace must be a JSON object")
    sys = parse_system({k: data[k] for k in ("limits", "cycles", "chains") if k in data})
    raw_f = data.get("functions", {})
    raw_e = data.get("elements", {})
    clash = set(raw_f) & set(raw_e)
    if clash:
        raise ValidationError(f"names used for both functions and elements: {sorted(clash)}")
    try:
        functions = {name: function_from_dict(sys, spec) for name, spec in raw_f.items()}
        elements = {name: element_from_dict(sys, spec, functions) for name, spec in raw_e.items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"malformed workspace: {exc!r}") from None
    return Workspace(sys, functions, elements)


def workspace_to_dict(ws: Workspace) -> dict:
    out = system_to_dict(ws.system)
    out["functions"] = {n: function_to_dict(f) for n, f in ws.functions.items()}
    named = {f: fn for fn, f in sorted(ws.functions.items(), reverse=True)}
    out["elements"] = {
        name: {str(n): named.get(f) or function_to_dict(f) for n, f in e.items()}
        for name, e in ws.elements.items()
    }
    return out


def read_text(ref: str) -> str:
    """Contents of a file path, or of a bundled fixture by name."""
    path = Path(ref)
    if path.is_file():
        return path.read_text()
    if ref in FIXTURES:
        return resources.files("semicross").joinpath("fixtures", f"{ref}.json").read_text()
    raise ValidationError(f"no such file or fixture: {ref!r}")


def load_workspace(ref: str) -> Workspace:
    try:
        data = json.loads(read_text(ref))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{ref}: not valid JSON: {exc}") from None
    return parse_workspace(data)


def dumps(obj) -> str:
    """Bit-stable JSON."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- reports -------------------------------------------------------------------


def failure_to_dict(f: Failure | None) -> dict | None:
    if f is None:
        return None
    return {"condition": f.condition, "point": str(f.point), "chain": f.chain, "l": f.l,
            "degree": f.degree, "detail": f.detail}


def failure_from_dict(sys: DynamicalSystem, d: Mapping | None) -> Failure | None:
    if d is None:
        return None
    return Failure(d["condition"], parse_point(sys, d["point"]), d.get("chain"), d.get("l"),
                   d.get("degree"), d.get("detail", ""))


def pair_to_dict(r: ConditionReport) -> dict:
    return {"m": r.m, "n": r.n, "passed": r.passed, "a": failure_to_dict(r.a),
            "b": failure_to_dict(r.b), "c": failure_to_dict(r.c)}


def pair_from_dict(sys: DynamicalSystem, d: Mapping) -> ConditionReport:
    return ConditionReport(d["m"], d["n"], failure_from_dict(sys, d["a"]),
                           failure_from_dict(sys, d["b"]), failure_from_dict(sys, d["c"]))


def witness_to_dict(w: WitnessFamily, verified=None) -> dict:
    return {
        "condition": w.condition,
        "m0": w.m0,
        "n0": w.n0,
        "l0": w.l0,
        "count": len(w),
        "delta": number_to_json(w.delta),
        "separation": number_to_json(verified),
        "elements": [{"l": l, "point": str(q), "probe": str(p)}
                     for l, q, p in zip(w.shifts, w.supports, w.probes)],
    }


def approximant_to_dict(ap: Approximant) -> dict:
    return {
        "m": ap.m,
        "n": ap.n,
        "k": ap.k,
        "L0": ap.horizon,
        "rank_bound": ap.rank_bound,
        "exceptional": [str(p) for p in ap.exceptional],
        "image": [{"degree": d, "point": str(p)} for d, p in ap.image],
        "error_bound": number_to_json(ap.error_bound),
    }


def certificate_to_dict(cert: Certificate) -> dict:
    mi = minimal_indices(cert.pairs)
    return {
        "kind": cert.kind,
        "verdict": cert.verdict.value,
        "method": cert.method,
        "pairs": [pair_to_dict(r) for r in cert.pairs],
        "extra_failures": [failure_to_dict(f) for f in cert.failures],
        "failures": [failure_to_dict(f) for f in cert.all_failures()],
        "minimal_indices": None if mi is None else {
            "condition": mi.condition, "m0": mi.m0, "n0": mi.n0, "l0": mi.l0,
            "point": str(mi.failure.point), "chain": mi.failure.chain,
        },
        "approximant": [approximant_to_dict(ap) for ap in cert.approximants],
    }


def certificate_from_dict(sys: DynamicalSystem, d: Mapping) -> Certificate:
    """Inverse of :func:`certificate_to_dict` up to the approximants."""
    return Certificate(
        d["kind"],
        Verdict(d["verdict"]),
        d["method"],
        tuple(pair_from_dict(sys, p) for p in d["pairs"]),
        tuple(failure_from_dict(sys, f) for f in d["extra_failures"]),
    )
