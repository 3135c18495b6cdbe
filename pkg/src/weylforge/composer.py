"""Synthesis of two-qubit gates from a fixed entangling gate plus local gates.

Conventions used throughout:

* ``ZZ(g) = exp(i g/2 Z (x) Z)`` is one application of a Controlled-U gate of
  strength ``g`` (after local normalization).
* Circuits are lists in temporal order (see :mod:`weylforge.circuit`).
* The two-pulse circuit is ``ZZ(g1)``, then ``Ry(b1) (x) Ry(b2)``, then
  ``ZZ(g2)``, where ``Ry(b) = exp(i b/2 Y)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from . import tolerances
from .circuit import CircuitIR, GateKind, GateSpec, Interaction, InteractionKind, Local
from .errors import NotEntangling, OutOfReach
from .su import (
    I2,
    PauliAxis,
    exp_canonical,
    pauli,
    phase_distance,
    rot,
    rot_about,
    su2_from_axis_angle,
)
from .weyl import (
    CanonicalClass,
    _raw_invariants,
    canonical_matrix,
    canonicalize,
    canonicalize_many,
    class_covered,
    constructive_applications,
    kak_decompose,
    local_gate_recovery,
    min_applications,
)

HALF_PI = np.pi / 2
# roots of the two-pulse quadratic may leave [-1, 1] by round-off only
ROOT_SLACK = 1e-9
RADICAND_SLACK = 1e-12
# internal stitching may be slightly off; the final polish absorbs it
STITCH_TOL = 1e-6


@dataclass(frozen=True)
class CompositionAngles:
    """Local angles of a two-pulse circuit and the quadratic roots they came from.

    ``mirrored`` is set when the solution realizes ``[pi - c1, c2, 0]``, the
    base-equivalent representative of the requested class.
    """

    beta1: float
    beta2: float
    x1: float
    x2: float
    mirrored: bool = False


@dataclass
class SynthesisReport:
    circuit: CircuitIR
    applications: int
    min_bound: int
    constructive_bound: int
    target_class: CanonicalClass
    residual: float
    method: str = "analytic"

    @property
    def verified(self) -> bool:
        return self.residual < tolerances.get().cls


# ---------------------------------------------------------------------------
# Controlled-U normalization


def controlled_u_matrix(n) -> np.ndarray:
    """``|0><0| (x) I + |1><1| (x) U`` with ``U = exp(i n.sigma)``, control on qubit 1."""
    u = su2_from_axis_angle(n)
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = I2
    out[2:, 2:] = u
    return out


def controlled_u_normalize(n) -> tuple[float, np.ndarray]:
    """Strength in ``(0, pi/2]`` and the diagonalizing gate ``U1`` of a Controlled-U.

    With ``g = |n|`` the raw norm and ``U1 = X V^dag``, where the columns of
    ``V`` are the ``+1`` and ``-1`` eigenvectors of ``n.sigma / g``,

        CU = (I (x) U1^dag exp(-i g/2 Z)) ZZ(g) (I (x) U1).

    The returned strength reduces ``g`` by the local equivalences
    ``ZZ(g) ~ ZZ(g + pi) ~ ZZ(-g)``.
    """
    n = np.asarray(n, dtype=float)
    g = float(np.linalg.norm(n))
    gamma = abs(g - np.pi * round(g / np.pi))
    if gamma <= tolerances.get().cls:
        raise NotEntangling(f"Controlled-U with |n| = {g!r} is local")
    nh = n / g
    gen = nh[0] * pauli("x") + nh[1] * pauli("y") + nh[2] * pauli("z")
    _, vecs = np.linalg.eigh(gen)
    v = vecs[:, ::-1]  # columns: +1 then -1 eigenvector
    u1 = pauli("x") @ v.conj().T
    return gamma, u1


# ---------------------------------------------------------------------------
# the two-pulse quadratic


def quadratic_coefficients(gamma1, gamma2, c1, c2):
    """Coefficients ``(a, R, k)`` of ``a x^2 + sqrt(R) x + k = 0`` (vectorized)."""
    cg1, cg2 = np.cos(gamma1), np.cos(gamma2)
    cc1, cc2 = np.cos(c1), np.cos(c2)
    a = np.sin(gamma1) * np.sin(gamma2)
    k = cg1 * cg2 - cc1 * cc2
    radicand = cc1**2 + cc2**2 - cg1**2 - cg2**2 + 2 * k * np.cos(gamma1 - gamma2)
    return a, radicand, k


def discriminant(gamma1, gamma2, c1, c2):
    """Closed-form discriminant ``R - 4 a k`` of the two-pulse quadratic."""
    s = np.asarray(gamma1) + np.asarray(gamma2)
    return (np.cos(c1) * np.cos(s) - np.cos(c2)) ** 2 - np.sin(s) ** 2 * np.sin(c1) ** 2


def quadratic_value(gamma1, gamma2, c1, c2, x):
    a, radicand, k = quadratic_coefficients(gamma1, gamma2, c1, c2)
    return a * x * x + np.sqrt(np.maximum(radicand, 0.0)) * x + k


def two_pulse_roots(gamma1, gamma2, c1, c2):
    """Roots ``x1 >= x2`` of the two-pulse quadratic and a validity mask (vectorized).

    A root pair is valid when the radicand and the discriminant are
    non-negative up to round-off and both roots lie in ``[-1, 1]``.
    """
    a, radicand, k = quadratic_coefficients(gamma1, gamma2, c1, c2)
    a, radicand, k = np.broadcast_arrays(a, radicand, k)
    ok = radicand >= -RADICAND_SLACK
    b = np.sqrt(np.maximum(radicand, 0.0))
    disc = b * b - 4 * a * k
    ok &= disc >= -RADICAND_SLACK
    sq = np.sqrt(np.maximum(disc, 0.0))
    q = -(b + sq) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        r1 = np.where(a != 0, q / a, np.nan)
        r2 = np.where(q != 0, k / q, 0.0)
    # line targets (c2 = 0) have the exact root -1; arccos is ill-conditioned
    # there, so pin it instead of trusting the rounded value
    line = (np.asarray(c2) == 0) & (a != 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        r1 = np.where(line, -k / np.where(a != 0, a, 1.0), r1)
    r2 = np.where(line, -1.0, r2)
    x1 = np.maximum(r1, r2)
    x2 = np.minimum(r1, r2)
    ok &= a > 0
    ok &= (np.abs(x1) <= 1 + ROOT_SLACK) & (np.abs(x2) <= 1 + ROOT_SLACK)
    return np.clip(x1, -1, 1), np.clip(x2, -1, 1), ok


def two_pulse_feasible(gamma1, gamma2, c1, c2, tol: float = 1e-12):
    """Region generated by the two-pulse circuit, tested on a base representative.

    ``[c1, c2, 0]`` is reached iff ``c1 + c2 <= g1 + g2`` and
    ``c1 - c2 >= |g1 - g2|`` hold for it or for ``[pi - c1, c2, 0]``.
    """
    s = gamma1 + gamma2
    d = abs(gamma1 - gamma2)

    def inside(u, v):
        return u + v <= s + tol and u - v >= d - tol

    return bool(inside(c1, c2) or inside(np.pi - c1, c2))


def _line_beta(gamma1: float, gamma2: float, c1: float) -> float:
    """``arccos(x1)`` for a line target without cancellation near ``x1 = +-1``.

    With ``x1 = (cos c1 - cos g1 cos g2) / (sin g1 sin g2)`` both ``1 - x1``
    and ``1 + x1`` factor into products of sines.
    """
    a = np.sin(gamma1) * np.sin(gamma2)
    d, s = gamma1 - gamma2, gamma1 + gamma2
    one_minus = 2 * np.sin((c1 + d) / 2) * np.sin((c1 - d) / 2) / a
    one_plus = 2 * np.sin((s + c1) / 2) * np.sin((s - c1) / 2) / a
    return float(2 * np.arctan2(np.sqrt(max(one_minus, 0.0)), np.sqrt(max(one_plus, 0.0))))


def two_pulse_solve(gamma1: float, gamma2: float, c1: float, c2: float) -> CompositionAngles:
    """Local angles that make the two-pulse circuit reach ``[c1, c2, 0]``.

    Both base representatives ``c1`` and ``pi - c1`` are tried.

    Raises
    ------
    OutOfReach
        When neither representative yields two real roots in ``[-1, 1]``.
    """
    if gamma1 <= 0 or gamma2 <= 0:
        raise ValueError("pulse strengths must be positive")
    for mirrored, u in ((False, c1), (True, np.pi - c1)):
        x1, x2, ok = two_pulse_roots(gamma1, gamma2, u, c2)
        if ok:
            x1, x2 = float(x1), float(x2)
            b1 = _line_beta(gamma1, gamma2, u) if c2 == 0 else float(np.arccos(x1))
            return CompositionAngles(b1, float(np.arccos(x2)), x1, x2, mirrored)
    raise OutOfReach(
        f"[{c1:.6g}, {c2:.6g}, 0] is not generated by pulses {gamma1:.6g} and {gamma2:.6g}"
    )


def two_pulse_matrix(gamma1: float, gamma2: float, angles: CompositionAngles) -> np.ndarray:
    mid = np.kron(rot(PauliAxis.Y, angles.beta1), rot(PauliAxis.Y, angles.beta2))
    return exp_canonical(PauliAxis.Z, gamma2) @ mid @ exp_canonical(PauliAxis.Z, gamma1)


def two_pulse_matrices(gamma1, gamma2, beta1, beta2) -> np.ndarray:
    """Batched two-pulse circuits, shape ``(N, 4, 4)``."""
    gamma1, gamma2, beta1, beta2 = np.broadcast_arrays(
        *(np.atleast_1d(np.asarray(v, dtype=float)) for v in (gamma1, gamma2, beta1, beta2))
    )
    zz = np.array([1, -1, -1, 1])

    def diag_zz(g):
        return np.exp(0.5j * g[:, None] * zz)

    def ry(b):
        c, s = np.cos(b / 2), np.sin(b / 2)
        out = np.zeros(b.shape + (2, 2), dtype=complex)
        out[:, 0, 0] = out[:, 1, 1] = c
        out[:, 0, 1] = s
        out[:, 1, 0] = -s
        return out

    mid = np.einsum("nij,nkl->nikjl", ry(beta1), ry(beta2)).reshape(-1, 4, 4)
    return diag_zz(gamma2)[:, :, None] * mid * diag_zz(gamma1)[:, None, :]


# ---------------------------------------------------------------------------
# building blocks


def _ceil(x: float) -> int:
    return math.ceil(x - 1e-9)


def _zz(gamma: float) -> Interaction:
    return Interaction(InteractionKind.ZZ, float(gamma))


def _ry_pair(angles: CompositionAngles) -> Local:
    return Local(rot(PauliAxis.Y, angles.beta1), rot(PauliAxis.Y, angles.beta2))


def line_count(gamma: float, a: float) -> int:
    """Applications used by :func:`zz_fraction_synthesize` for line class ``[a, 0, 0]``."""
    a = min(a, np.pi - a)
    tol = tolerances.get().cls
    if a <= tol:
        return 0
    k = a / gamma
    if abs(k - round(k)) <= 1e-12 * max(1.0, k):
        return int(round(k))
    return max(2, _ceil(k))


def zz_fraction_synthesize(gamma: float, c3: float) -> CircuitIR:
    """Circuit in the class ``[c3, 0, 0]`` built from ``ZZ(gamma)`` applications.

    Exact multiples of ``gamma`` are plain chains.  Otherwise the count
    ``k = max(2, ceil(c3/gamma))`` is split into chains of ``ceil(k/2)`` and
    ``floor(k/2)`` applications joined by a ``Ry (x) Ry`` layer.
    """
    c3 = float(c3)
    if c3 > HALF_PI:
        c3 = np.pi - c3
    k = line_count(gamma, c3)
    if k == 0:
        return CircuitIR()
    if abs(c3 / gamma - k) <= 1e-12 * max(1.0, k):
        return CircuitIR([_zz(gamma)] * k)
    na = (k + 1) // 2
    nb = k - na
    angles = two_pulse_solve(na * gamma, nb * gamma, c3, 0.0)
    return CircuitIR([_zz(gamma)] * na + [_ry_pair(angles)] + [_zz(gamma)] * nb)


def stitch(circuit: CircuitIR, target: np.ndarray) -> CircuitIR:
    """Dress a locally equivalent circuit with locals so that it equals ``target``."""
    pair = local_gate_recovery(target, circuit.matrix(), tol=STITCH_TOL)
    return CircuitIR(
        [Local(pair.k2_left, pair.k2_right)] + list(circuit.items) + [Local(pair.k1_left, pair.k1_right)],
        circuit.global_phase + pair.phase,
        circuit.gate_spec,
    ).fused()


def _exact_line(gamma: float, a: float) -> CircuitIR:
    """Circuit equal to ``ZZ(a)`` up to global phase."""
    circ = zz_fraction_synthesize(gamma, a)
    if all(isinstance(it, Interaction) for it in circ.items):
        # plain chain, already exact when a is a multiple of gamma
        if abs(circ.applications * gamma - a) <= 1e-12:
            return circ
    return stitch(circ, exp_canonical(PauliAxis.Z, a))


def _block_range(gamma: float, p: int) -> tuple[float, float]:
    """Line classes ``[a, 0, 0]`` reachable with ``p`` applications."""
    if p == 0:
        return 0.0, 0.0
    if p == 1:
        return gamma, gamma
    return 0.0, min(p * gamma, HALF_PI)


def _max_pair_sum(box_a, box_b, delta):
    """Largest ``a + b`` over the box with ``|a - b| <= delta`` (-inf if empty)."""
    (a0, a1), (b0, b1) = box_a, box_b
    best = np.minimum(np.minimum(a1 + b1, 2 * b1 + delta), 2 * a1 + delta)
    empty = (a0 - b1 > delta + 1e-12) | (b0 - a1 > delta + 1e-12)
    return np.where(empty, -np.inf, best)


def _split(box_a, box_b, sigma, delta):
    """Pick ``(a, b)`` in the box with ``a + b >= sigma`` and ``|a - b| <= delta``.

    Returns the grid point of largest slack and the slack, or None.
    """
    ga = np.unique(np.linspace(*box_a, 41))
    gb = np.unique(np.linspace(*box_b, 41))
    a, b = np.meshgrid(ga, gb, indexing="ij")
    slack = np.minimum(a + b - sigma, delta - np.abs(a - b))
    i = np.unravel_index(np.argmax(slack), slack.shape)
    if slack[i] < -1e-12:
        return None
    return float(a[i]), float(b[i]), float(slack[i])


def _base_reps(u, v):
    """``(sigma, delta)`` for both base representatives of ``[u, v, 0]`` (vectorized)."""
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    c = canonicalize_many(np.stack([u, v, np.zeros_like(u)], axis=1))
    u, v = c[:, 0], c[:, 1]
    return (u + v, u - v), (np.pi - u + v, np.pi - u - v)


@dataclass(frozen=True)
class BasePlan:
    """Blocks for ``exp(i u/2 XX) exp(i v/2 YY)``.

    A two-pulse circuit on line blocks ``ZZ(a)`` (``p`` applications) and
    ``ZZ(b)`` (``q`` applications) produces the reduced target, and a third
    line block of strength ``d`` (``r`` applications, possibly none) adds
    ``shift`` to coordinate ``axis`` of it.
    """

    p: int
    q: int
    r: int
    a: float
    b: float
    d: float
    axis: int
    shift: float

    @property
    def applications(self) -> int:
        return self.p + self.q + self.r


def base_plane_plan(gamma: float, c1: float, c2: float) -> BasePlan | None:
    """Cheapest block plan for the base class ``[c1, c2, 0]``.

    Returns None for line classes (``c2 = 0``), which need a single block.
    """
    tol = tolerances.get().cls
    if abs(c2) <= tol:
        return None
    cap = max(1, _ceil(HALF_PI / gamma))
    for total in range(2, 3 * cap + 1):
        for r in range(0, min(cap, total - 2) + 1):
            box_d = _block_range(gamma, r)
            ds = np.unique(np.linspace(*box_d, 33))
            # reduced targets: remove +-d from either coordinate
            cand = [(0, 0.0)] if r == 0 else [(ax, sg * d) for ax in (0, 1) for sg in (1, -1) for d in ds]
            axes = np.array([ax for ax, _ in cand])
            shifts = np.array([sh for _, sh in cand])
            u = np.where(axes == 0, c1 - shifts, c1)
            v = np.where(axes == 1, c2 - shifts, c2)
            reps = _base_reps(u, v)
            for p in range(1, cap + 1):
                q = total - r - p
                if q < p or q > cap:
                    continue
                box_a, box_b = _block_range(gamma, p), _block_range(gamma, q)
                best = None
                for sigma, delta in reps:
                    ok = _max_pair_sum(box_a, box_b, delta) >= sigma - 1e-12
                    ok &= delta >= -1e-12
                    for i in np.flatnonzero(ok):
                        got = _split(box_a, box_b, sigma[i], max(delta[i], 0.0))
                        if got is not None and (best is None or got[2] > best[0]):
                            best = (got[2], got[0], got[1], i)
                        if best is not None and best[0] > 1e-6:
                            break
                if best is not None:
                    _, a, b, i = best
                    d = abs(float(shifts[i]))
                    pa, qb, rd = line_count(gamma, a), line_count(gamma, b), line_count(gamma, d)
                    if pa > 0 and qb > 0:
                        return BasePlan(pa, qb, rd, a, b, d, int(axes[i]), float(shifts[i]))
    raise OutOfReach(f"no block plan for [{c1}, {c2}, 0] at gamma={gamma}")


def base_plane_cost(gamma: float, c1: float, c2: float) -> int:
    plan = base_plane_plan(gamma, c1, c2)
    if plan is None:
        return line_count(gamma, c1)
    return plan.applications


def _base_exact(gamma: float, u: float, v: float) -> CircuitIR:
    """Circuit equal to ``exp(i u/2 XX) exp(i v/2 YY)`` up to global phase."""
    target = exp_canonical(PauliAxis.X, u) @ exp_canonical(PauliAxis.Y, v)
    plan = base_plane_plan(gamma, *_base_pair(u, v))
    if plan is None:
        return stitch(zz_fraction_synthesize(gamma, _line_value(u, v)), target)
    ru = u - plan.shift if plan.axis == 0 else u
    rv = v - plan.shift if plan.axis == 1 else v
    red = canonicalize([ru, rv, 0.0])
    angles = two_pulse_solve(plan.a, plan.b, red.c1, red.c2)
    pulse = _exact_line(gamma, plan.a) + CircuitIR([_ry_pair(angles)]) + _exact_line(gamma, plan.b)
    reduced_target = exp_canonical(PauliAxis.X, ru) @ exp_canonical(PauliAxis.Y, rv)
    circ = stitch(pulse, reduced_target)
    if plan.r:
        axis = PauliAxis.X if plan.axis == 0 else PauliAxis.Y
        circ = circ + stitch(zz_fraction_synthesize(gamma, plan.d), exp_canonical(axis, plan.shift))
    return circ.fused()


def _base_pair(u: float, v: float) -> tuple[float, float]:
    cls = canonicalize([u, v, 0.0])
    return cls.c1, cls.c2


def _line_value(u: float, v: float) -> float:
    return canonicalize([u, v, 0.0]).c1


def base_plane_synthesize(gamma: float, c1: float, c2: float) -> CircuitIR:
    """Circuit in the base class ``[c1, c2, 0]`` built from ``ZZ(gamma)`` applications.

    Two exact line blocks ``ZZ(a)`` and ``ZZ(b)`` joined by a ``Ry (x) Ry``
    layer reach the region ``a + b >= c1 + c2``, ``|a - b| <= c1 - c2`` (or
    its base mirror).  When that needs more applications than necessary, a
    third line block shifts one coordinate so the two-pulse part lands
    inside the region.  Block strengths minimize the total count.
    """
    c1, c2 = _base_pair(c1, c2)
    if abs(c2) <= tolerances.get().cls:
        return zz_fraction_synthesize(gamma, c1)
    return _base_exact(gamma, c1, c2)


# ---------------------------------------------------------------------------
# three-application circuits


def cnot3_synthesize(c) -> CircuitIR:
    """Three ``ZZ(pi/2)`` applications in the class ``c``."""
    if not isinstance(c, CanonicalClass):
        c = CanonicalClass(*map(float, c))
    zz = _zz(HALF_PI)
    l1 = Local(rot(PauliAxis.Y, c.c1), rot(PauliAxis.Y, HALF_PI))
    axis = np.array([np.sin(c.c3), np.cos(c.c3), 0.0])
    l2 = Local(rot(PauliAxis.X, c.c2), rot_about(axis, HALF_PI))
    return CircuitIR([zz, l1, zz, l2, zz], gate_spec=GateSpec.cnot())


def dcnot3_synthesize(c) -> CircuitIR:
    """Three DCNOT-class applications in the class ``c``."""
    if not isinstance(c, CanonicalClass):
        c = CanonicalClass(*map(float, c))
    dc = Interaction(InteractionKind.XXYY, HALF_PI)
    l1 = Local(rot(PauliAxis.Y, HALF_PI - c.c1), rot(PauliAxis.Y, HALF_PI))
    l2 = Local(
        rot(PauliAxis.Y, HALF_PI) @ rot(PauliAxis.Z, HALF_PI - c.c3),
        rot(PauliAxis.Y, 1.5 * np.pi - c.c2) @ rot(PauliAxis.Z, HALF_PI),
    )
    return CircuitIR([dc, l1, dc, l2, dc], gate_spec=GateSpec.dcnot())


# ---------------------------------------------------------------------------
# numerical fallback


def chain_sizes(gamma: float, n: int) -> list[int]:
    """Split ``n`` applications into near-equal chains for the numerical search.

    Chains are joined by free locals.  One chain more than the strength
    budget ``n gamma / (pi/2)`` requires keeps the search well conditioned.
    """
    blocks = min(n, max(3, _ceil(n * gamma / HALF_PI) + 1))
    base, extra = divmod(n, blocks)
    return [base + (i < extra) for i in range(blocks)]


def _layered(gamma: float, params: np.ndarray, sizes: list[int]) -> CircuitIR:
    items = [_zz(gamma)] * sizes[0]
    for row, size in zip(params.reshape(len(sizes) - 1, 6), sizes[1:]):
        items += [Local(su2_from_axis_angle(row[:3]), su2_from_axis_angle(row[3:]))]
        items += [_zz(gamma)] * size
    return CircuitIR(items)


def _numeric_core(gamma: float, c: CanonicalClass, n: int, seed: int = 0, starts: int = 16):
    """Search the joining locals of an ``n``-application chain circuit for class ``c``."""
    z, g3 = _raw_invariants(canonical_matrix(c))
    z2 = z * z
    sizes = chain_sizes(gamma, n)

    def resid(x):
        zc, g3c = _raw_invariants(_layered(gamma, x, sizes).matrix())
        d = zc * zc - z2
        return [d.real, d.imag, g3c - g3]

    rng = np.random.default_rng(seed)
    for _ in range(starts):
        x0 = rng.uniform(-np.pi, np.pi, 6 * (len(sizes) - 1))
        sol = least_squares(resid, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=400)
        if np.max(np.abs(sol.fun)) < 1e-13:
            return _layered(gamma, sol.x, sizes)
    return None


def polish(circuit: CircuitIR, target: np.ndarray) -> CircuitIR:
    """Least-squares refinement of every local (and the phase) towards ``target``."""
    slots = [i for i, it in enumerate(circuit.items) if isinstance(it, Local)]
    if not slots:
        return circuit

    def build(x):
        items = list(circuit.items)
        for s, row in zip(slots, x[1:].reshape(-1, 6)):
            loc = circuit.items[s]
            items[s] = Local(loc.q1 @ su2_from_axis_angle(row[:3]), loc.q2 @ su2_from_axis_angle(row[3:]))
        return CircuitIR(items, circuit.global_phase + x[0], circuit.gate_spec)

    def resid(x):
        d = (build(x).matrix() - target).ravel()
        return np.concatenate([d.real, d.imag])

    x0 = np.zeros(1 + 6 * len(slots))
    method = "lm" if x0.size <= 32 else "trf"
    sol = least_squares(resid, x0, method=method, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    out = build(sol.x)
    if phase_distance(out.matrix(), target) <= phase_distance(circuit.matrix(), target):
        return out
    return circuit


# ---------------------------------------------------------------------------
# full pipeline


def spec_bounds(spec: GateSpec) -> tuple[int, int]:
    if spec.kind == GateKind.DCNOT:
        return 3, 3
    return min_applications(spec.gamma), constructive_applications(spec.gamma)


def _analytic_core(gamma: float, c: CanonicalClass) -> tuple[CircuitIR, int]:
    """Line block on one axis plus a base block on the other two.

    The block pair whose product is exactly ``A(c)`` with the fewest
    applications is chosen; the z axis wins ties.
    """
    cs = c.as_array()
    best = None
    for j in (2, 0, 1):
        rest = [i for i in range(3) if i != j]
        line = min(cs[j], np.pi - cs[j])
        base = canonicalize([cs[rest[0]], cs[rest[1]], 0.0])
        cost = line_count(gamma, line) + base_plane_cost(gamma, base.c1, base.c2)
        if best is None or cost < best[0]:
            best = (cost, j, rest, base)
    cost, j, rest, base = best
    axes = (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)
    line_target = exp_canonical(axes[j], cs[j])
    base_target = exp_canonical(axes[rest[0]], cs[rest[0]]) @ exp_canonical(axes[rest[1]], cs[rest[1]])
    line_circ = zz_fraction_synthesize(gamma, min(cs[j], np.pi - cs[j]))
    base_circ = base_plane_synthesize(gamma, base.c1, base.c2)
    core = CircuitIR()
    if line_circ.applications:
        core = core + stitch(line_circ, line_target)
    if base_circ.applications:
        core = core + stitch(base_circ, base_target)
    return core, cost


def _minimal_count(gamma: float, c: CanonicalClass) -> int:
    n = 0
    while not class_covered(n, gamma, c, tol=1e-9):
        n += 1
    return n


def full_synthesize(target: np.ndarray, spec: GateSpec) -> SynthesisReport:
    """Exact circuit for ``target`` (up to global phase) from the gate in ``spec``."""
    target = np.asarray(target, dtype=complex)
    _, c = kak_decompose(target)
    lo, hi = spec_bounds(spec)
    method = "analytic"
    if class_covered(0, HALF_PI, c, tol=1e-12):
        core = CircuitIR()
    elif spec.kind == GateKind.CNOT:
        core = cnot3_synthesize(c)
    elif spec.kind == GateKind.DCNOT:
        core = dcnot3_synthesize(c)
    else:
        gamma = spec.gamma
        core, cost = _analytic_core(gamma, c)
        if cost > hi:
            method = "numeric"
            core = None
            for n in range(max(_minimal_count(gamma, c), 1), hi + 1):
                core = _numeric_core(gamma, c, n, starts=4 if n < hi else 32)
                if core is not None:
                    break
            if core is None:
                raise OutOfReach(f"no circuit within {hi} applications found for class {c}")
    circuit = stitch(CircuitIR(list(core.items), core.global_phase), target)
    circuit.gate_spec = spec
    residual = phase_distance(circuit.matrix(), target)
    if residual > 1e-12:
        circuit = polish(circuit, target)
        circuit.gate_spec = spec
        residual = phase_distance(circuit.matrix(), target)
    return SynthesisReport(circuit, circuit.applications, lo, hi, c, residual, method)
