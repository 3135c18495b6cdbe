"""JSON file formats.

Complex numbers are ``[re, im]`` pairs of JSON numbers.  Python's ``json``
writes floats with the shortest decimal that round-trips, so parsing a
serialized object gives back bit-identical values.

UnitaryFile::

    {"matrix": [[[re, im], ...4], ...4]}

CircuitFile::

    {"gate_spec": {"kind": "cu", "gamma": g} | {"kind": "cnot"} | {"kind": "dcnot"} | null,
     "global_phase": phi,
     "items": [{"type": "interaction", "kind": "zz" | "xxyy", "gamma": g},
               {"type": "local", "q1": [[[re, im], ...2], ...2], "q2": ...}]}
"""
from __future__ import annotations

import json
import math

import numpy as np

from .circuit import CircuitIR, GateSpec, Interaction, InteractionKind, Local
from .errors import MalformedCircuit, WeylForgeError
from .su import is_unitary


class FormatError(WeylForgeError, ValueError):
    pass


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def matrix_from_json(data, shape: tuple[int, int]) -> np.ndarray:
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"matrix entries must be [re, im] number pairs: {exc}") from None
    if arr.shape != shape + (2,):
        raise FormatError(f"expected a {shape[0]}x{shape[1]} array of [re, im] pairs, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise FormatError("matrix entries must be finite")
    return arr[..., 0] + 1j * arr[..., 1]


def unitary_to_dict(u: np.ndarray) -> dict:
    return {"matrix": matrix_to_json(u)}


def unitary_from_dict(d) -> np.ndarray:
    if not isinstance(d, dict) or "matrix" not in d:
        raise FormatError('unitary file must be an object with a "matrix" field')
    u = matrix_from_json(d["matrix"], (4, 4))
    if not is_unitary(u, tol=1e-10):
        raise FormatError("matrix is not unitary")
    return u


def circuit_to_dict(c: CircuitIR) -> dict:
    items = []
    for it in c.items:
        if isinstance(it, Interaction):
            items.append({"type": "interaction", "kind": InteractionKind(it.kind).value, "gamma": float(it.gamma)})
        elif isinstance(it, Local):
            items.append({"type": "local", "q1": matrix_to_json(it.q1), "q2": matrix_to_json(it.q2)})
        else:
            raise MalformedCircuit(f"unknown circuit item {it!r}")
    return {
        "gate_spec": c.gate_spec.to_dict() if c.gate_spec is not None else None,
        "global_phase": float(c.global_phase),
        "items": items,
    }


def circuit_from_dict(d) -> CircuitIR:
    if not isinstance(d, dict) or "items" not in d:
        raise MalformedCircuit('circuit file must be an object with an "items" list')
    try:
        spec = GateSpec.from_dict(d["gate_spec"]) if d.get("gate_spec") is not None else None
        phase = float(d.get("global_phase", 0.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCircuit(f"bad gate_spec or global_phase: {exc}") from None
    if not math.isfinite(phase):
        raise MalformedCircuit("global_phase must be finite")
    items = []
    for k, raw in enumerate(d["items"]):
        kind = raw.get("type") if isinstance(raw, dict) else None
        if kind == "interaction":
            try:
                items.append(Interaction(InteractionKind(raw["kind"]), float(raw["gamma"])))
            except (KeyError, ValueError, TypeError) as exc:
                raise MalformedCircuit(f"item {k}: bad interaction: {exc}") from None
        elif kind == "local":
            try:
                q1 = matrix_from_json(raw["q1"], (2, 2))
                q2 = matrix_from_json(raw["q2"], (2, 2))
            except (KeyError, FormatError) as exc:
                raise MalformedCircuit(f"item {k}: bad local: {exc}") from None
            items.append(Local(q1, q2))
        else:
            raise MalformedCircuit(f"item {k}: unknown item type {kind!r}")
    return CircuitIR(items, phase, spec)


def report_to_dict(report) -> dict:
    return {
        "applications": report.applications,
        "min_bound": report.min_bound,
        "constructive_bound": report.constructive_bound,
        "target_class": report.target_class.as_array().tolist(),
        "residual": report.residual,
        "method": report.method,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None


def write_json(path: str, obj) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))
