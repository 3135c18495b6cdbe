"""Command-line front end.

Exit codes: 0 success, 1 input or IO error, 2 verification or reachability
failure.  ``WEYLFORGE_TOL`` overrides the class tolerance (must lie in
``[1e-14, 1e-6]``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys

import numpy as np

from . import formats, tolerances
from .circuit import GateSpec
from .composer import full_synthesize
from .errors import MalformedCircuit, NotEntangling, OutOfReach, WeylForgeError
from .su import haar_random_su4
from .verifier import bounds_table, check_equivalence, coverage_monte_carlo, simulate
from .weyl import coverage_vertices, invariants_from_unitary, kak_decompose

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

BOUNDS_HEADER = ("gamma", "min", "constructive", "old")
VERTEX_HEADER = ("vertex", "c1", "c2", "c3")
MESH_HEADER = ("tetrahedron", "face", "corner", "c1", "c2", "c3")

_PI_TOKEN = re.compile(r"^\s*pi\s*/\s*([0-9.]+)\s*$")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_gamma(text: str) -> float:
    """A decimal or ``pi/k``, e.g. ``pi/3``."""
    m = _PI_TOKEN.match(text)
    try:
        value = np.pi / float(m.group(1)) if m else float(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse gamma {text!r}") from None
    if not np.isfinite(value):
        raise InputError(f"gamma must be finite, got {text!r}")
    return float(value)


def parse_gate(text: str) -> GateSpec:
    low = text.strip().lower()
    if low == "cnot":
        return GateSpec.cnot()
    if low == "dcnot":
        return GateSpec.dcnot()
    if low.startswith("cu:"):
        gamma = parse_gamma(low[3:])
        try:
            return GateSpec.controlled_u(gamma)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    raise InputError(f"unknown gate {text!r}; use cu:GAMMA, cnot or dcnot")


def _read_unitary(path: str) -> np.ndarray:
    try:
        return formats.unitary_from_dict(formats.read_json(path))
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except formats.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands


def cmd_synthesize(args) -> int:
    target = _read_unitary(args.target)
    spec = parse_gate(args.gate)
    try:
        report = full_synthesize(target, spec)
    except OutOfReach as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    rep = formats.report_to_dict(report)
    if args.out:
        formats.write_json(args.out, formats.circuit_to_dict(report.circuit))
    if args.report:
        formats.write_json(args.report, rep)
    else:
        sys.stdout.write(formats.dumps(rep))
    if not report.verified:
        print(f"verification failed: residual {report.residual:.3e}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_bounds(args) -> int:
    lo, hi = parse_gamma(args.gamma_min), parse_gamma(args.gamma_max)
    if not (0 < lo <= hi <= np.pi / 2 + 1e-12):
        raise InputError("gamma range must satisfy 0 < gamma-min <= gamma-max <= pi/2")
    if args.steps < 1:
        raise InputError("steps must be positive")
    grid = np.linspace(lo, hi, args.steps) if args.steps > 1 else np.array([lo])
    rows = [(repr(r.gamma), r.min, r.constructive, r.old) for r in bounds_table(grid)]
    _emit(_csv_text(BOUNDS_HEADER, rows), args.csv)
    return EXIT_OK


def cmd_invariants(args) -> int:
    u = _read_unitary(args.target)
    _, c = kak_decompose(u)
    g = invariants_from_unitary(u)
    sys.stdout.write(json.dumps({"c": c.as_array().tolist(), "g": g.as_array().tolist()}) + "\n")
    return EXIT_OK


def _mesh_rows(region):
    b1, b2, b3 = (v.as_array() for v in region.vertices_b)
    c1, c2, c3 = (v.as_array() for v in region.vertices_c)
    o, a1 = np.zeros(3), np.array([np.pi, 0.0, 0.0])
    faces = {
        "OB1B2B3": [(o, b1, b2), (o, b2, b3), (o, b1, b3), (b1, b2, b3)],
        "A1C1C2C3": [(a1, c1, c2), (a1, c2, c3), (a1, c1, c3), (c1, c2, c3)],
    }
    for name, tris in faces.items():
        for f, tri in enumerate(tris):
            for k, p in enumerate(tri):
                yield (name, f, k, *map(repr, map(float, p)))


def cmd_coverage(args) -> int:
    gamma = parse_gamma(args.gamma)
    if args.n < 3:
        raise InputError("coverage tetrahedra are only defined for n >= 3 applications")
    try:
        region = coverage_vertices(args.n, gamma)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    names = ("B1", "B2", "B3", "C1", "C2", "C3")
    verts = region.vertices_b + region.vertices_c
    rows = [(nm, *map(repr, map(float, v.as_array()))) for nm, v in zip(names, verts)]
    sys.stdout.write(_csv_text(VERTEX_HEADER, rows))
    if args.mesh:
        _emit(_csv_text(MESH_HEADER, list(_mesh_rows(region))), args.mesh)
    if args.samples is not None:
        if args.samples < 1:
            raise InputError("samples must be positive")
        rep = coverage_monte_carlo(args.n, gamma, args.samples, args.seed)
        sys.stdout.write(json.dumps(rep.to_dict()) + "\n")
        if rep.violations:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        circ = formats.circuit_from_dict(formats.read_json(args.circuit))
        u = simulate(circ)
    except OSError as exc:
        raise InputError(f"{args.circuit}: {exc.strerror}") from None
    except (MalformedCircuit, formats.FormatError) as exc:
        raise InputError(f"{args.circuit}: {exc}") from None
    target = _read_unitary(args.target)
    verdict = check_equivalence(u, target)
    sys.stdout.write(json.dumps(verdict.to_dict()) + "\n")
    return EXIT_OK if verdict.exact_up_to_phase else EXIT_VERIFY


def cmd_random(args) -> int:
    if args.count < 0:
        raise InputError("count must be non-negative")
    os.makedirs(args.out_dir, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    files = []
    for k in range(args.count):
        name = f"unitary_{k:04d}.json"
        formats.write_json(os.path.join(args.out_dir, name), formats.unitary_to_dict(haar_random_su4(rng)))
        files.append(name)
    manifest = {"seed": args.seed, "count": args.count, "files": files}
    formats.write_json(os.path.join(args.out_dir, "manifest.json"), manifest)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weylforge", description="Two-qubit synthesis from Controlled-U, CNOT and DCNOT gates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("synthesize", help="compile a two-qubit unitary")
    s.add_argument("--target", required=True)
    s.add_argument("--gate", required=True, help="cu:GAMMA, cnot or dcnot")
    s.add_argument("--out", help="circuit JSON output")
    s.add_argument("--report", help="report JSON output (stdout if omitted)")
    s.set_defaults(func=cmd_synthesize)

    s = sub.add_parser("bounds", help="application-count bounds as CSV")
    s.add_argument("--gamma-min", default="0.01")
    s.add_argument("--gamma-max", default="pi/2")
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--csv", help="output file (stdout if omitted)")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("invariants", help="chamber class and local invariants")
    s.add_argument("--target", required=True)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("coverage", help="coverage tetrahedra vertices, meshes and sampling")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gamma", required=True)
    s.add_argument("--mesh", help="face mesh CSV output")
    s.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_coverage)

    s = sub.add_parser("verify", help="compare a circuit with a target unitary")
    s.add_argument("--circuit", required=True)
    s.add_argument("--target", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("random", help="seeded Haar-random unitary files")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--out-dir", required=True)
    s.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = tolerances.get()
    try:
        tol = tolerances.class_tolerance_from_env()
        if tol is not None:
            tolerances.set_class_tolerance(tol)
        return args.func(args)
    except (InputError, ValueError, NotEntangling) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WeylForgeError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    finally:
        tolerances.reset(saved)


if __name__ == "__main__":
    sys.exit(main())
