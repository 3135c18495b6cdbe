"""Weyl-chamber geometry of two-qubit gates.

Every ``U`` in SU(4) factors as ``U = e^{i phi} k1 A(c) k2`` with local
``k1, k2`` and the canonical core

    A(c) = exp(i c1/2 XX) exp(i c2/2 YY) exp(i c3/2 ZZ).

The exponent triple is reduced into the chamber
``pi - c2 >= c1 >= c2 >= c3 >= 0`` with the extra base convention
``c1 <= pi/2`` when ``c3 = 0`` (the classes ``[c1, c2, 0]`` and
``[pi - c1, c2, 0]`` coincide).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import tolerances
from .errors import DecompositionFailure, NotLocallyEquivalent
from .su import AXES, I4, PauliAxis, exp_canonical, kron, pauli, rot, to_special

HALF_PI = np.pi / 2

# magic basis: local gates become real orthogonal matrices
MAGIC = np.array(
    [[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]], dtype=complex
) / np.sqrt(2)
MAGIC_DAG = MAGIC.conj().T

# SIGNS[j, k]: eigenvalue of sigma_j (x) sigma_j on magic basis vector k
SIGNS = np.array(
    [np.real(np.diag(MAGIC_DAG @ kron(pauli(ax), pauli(ax)) @ MAGIC)) for ax in AXES]
)
# theta_k = phi + 1/2 sum_j c_j SIGNS[j, k]  ->  solve for (phi, c1, c2, c3)
_PHASE_SYSTEM = np.hstack([np.ones((4, 1)), SIGNS.T / 2])
_PHASE_SOLVE = np.linalg.inv(_PHASE_SYSTEM)

# fixed mixing angles for the simultaneous real diagonalization
_MIX_ANGLES = (0.0, 0.7853981633974483, 1.2345678, 0.3183098861837907, 2.718281828, 0.1)


@dataclass(frozen=True)
class CanonicalClass:
    c1: float
    c2: float
    c3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])

    def in_chamber(self, tol: float = 1e-10) -> bool:
        c1, c2, c3 = self.c1, self.c2, self.c3
        return (
            np.pi - c2 >= c1 - tol
            and c1 >= c2 - tol
            and c2 >= c3 - tol
            and c3 >= -tol
        )

    def is_base(self, tol: float | None = None) -> bool:
        tol = tolerances.get().cls if tol is None else tol
        return abs(self.c3) <= tol

    def mirror(self) -> "CanonicalClass":
        """Base reflection ``[c1, c2, c3] -> [pi - c1, c2, c3]``."""
        return CanonicalClass(np.pi - self.c1, self.c2, self.c3)

    def matrix(self) -> np.ndarray:
        return canonical_matrix(self)


@dataclass(frozen=True)
class LocalInvariants:
    g1: float
    g2: float
    g3: float

    @property
    def G1(self) -> complex:
        """Sign-free complex invariant ``(g1 + i g2)^2``."""
        return complex(self.g1, self.g2) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.g1, self.g2, self.g3])


@dataclass(frozen=True)
class CoverageRegion:
    n: int
    gamma: float
    vertices_b: tuple[CanonicalClass, CanonicalClass, CanonicalClass]
    vertices_c: tuple[CanonicalClass, CanonicalClass, CanonicalClass]


@dataclass(frozen=True)
class LocalGatePair:
    """``u = e^{i phase} (k1_left (x) k1_right) core (k2_left (x) k2_right)``."""

    k1_left: np.ndarray
    k1_right: np.ndarray
    k2_left: np.ndarray
    k2_right: np.ndarray
    phase: float

    @property
    def k1(self) -> np.ndarray:
        return kron(self.k1_left, self.k1_right)

    @property
    def k2(self) -> np.ndarray:
        return kron(self.k2_left, self.k2_right)

    def dress(self, core: np.ndarray) -> np.ndarray:
        return np.exp(1j * self.phase) * (self.k1 @ core @ self.k2)


def canonical_matrix(c) -> np.ndarray:
    if isinstance(c, CanonicalClass):
        c = c.as_array()
    c1, c2, c3 = c
    return exp_canonical(PauliAxis.X, c1) @ exp_canonical(PauliAxis.Y, c2) @ exp_canonical(PauliAxis.Z, c3)


# ---------------------------------------------------------------------------
# invariants


def invariants_from_class(c) -> LocalInvariants:
    if isinstance(c, CanonicalClass):
        c = c.as_array()
    c = np.asarray(c, dtype=float)
    cos, sin = np.cos(c), np.sin(c)
    return LocalInvariants(
        float(np.prod(cos)), float(np.prod(sin)), float(2 * np.sum(cos**2) - 3)
    )


def _magic_square(u: np.ndarray) -> np.ndarray:
    us, _ = to_special(u)
    up = MAGIC_DAG @ us @ MAGIC
    return up.T @ up


def _raw_invariants(u: np.ndarray) -> tuple[complex, float]:
    """``(z, g3)`` where ``z = tr(m)/4`` is fixed only up to sign."""
    m = _magic_square(u)
    tr = np.trace(m)
    z = complex(tr / 4)
    g3 = float(np.real(tr * tr - np.trace(m @ m)) / 4)
    return z, g3


def invariants_from_unitary(u: np.ndarray) -> LocalInvariants:
    """Local invariants from the matrix, signed to agree with the chamber formula.

    ``g1 + i g2`` is only defined up to an overall sign by the matrix.  The
    sign is chosen so that ``g2 >= 0``, and when ``g2`` vanishes so that
    ``g1 >= 0``; this matches the chamber representative chosen by
    :func:`canonicalize`.
    """
    z, g3 = _raw_invariants(u)
    snap = 1e-12
    if z.imag < -snap or (abs(z.imag) <= snap and z.real < 0):
        z = -z
    return LocalInvariants(z.real, z.imag, g3)


def invariant_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Sign-free distance between the invariants of two gates."""
    za, g3a = _raw_invariants(a)
    zb, g3b = _raw_invariants(b)
    return float(max(abs(za * za - zb * zb), abs(g3a - g3b)))


# ---------------------------------------------------------------------------
# KAK with tracked canonicalization


class _Frame:
    """Bookkeeping for ``u = e^{i phase} L A(c) R`` with local 4x4 ``L`` and ``R``."""

    __slots__ = ("phase", "left", "c", "right")

    def __init__(self, phase, left, c, right):
        self.phase = float(phase)
        self.left = left
        self.c = np.array(c, dtype=float)
        self.right = right

    def copy(self) -> "_Frame":
        return _Frame(self.phase, self.left.copy(), self.c.copy(), self.right.copy())

    def shift(self, j: int, m: int) -> None:
        if m == 0:
            return
        # A(c) = A(c + m pi e_j) exp_canonical(j, -m pi)
        self.c[j] += m * np.pi
        self.right = exp_canonical(AXES[j], -m * np.pi) @ self.right

    def swap(self, i: int, j: int) -> None:
        (l,) = {0, 1, 2} - {i, j}
        k = rot(AXES[l], HALF_PI)
        kk = kron(k, k)
        # kk A(c) kk^dag = A(c with i, j swapped)
        self.c[[i, j]] = self.c[[j, i]]
        self.left = self.left @ kk.conj().T
        self.right = kk @ self.right

    def flip(self, i: int, j: int) -> None:
        (l,) = {0, 1, 2} - {i, j}
        s = kron(pauli(AXES[l]), np.eye(2))
        self.c[[i, j]] = -self.c[[i, j]]
        self.left = self.left @ s
        self.right = s @ self.right

    def matrix(self) -> np.ndarray:
        return np.exp(1j * self.phase) * (self.left @ canonical_matrix(self.c) @ self.right)


def _real_diagonalizer(m2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Real orthogonal ``P`` (det +1) with ``P^T m2 P`` diagonal, for symmetric unitary ``m2``."""
    best = None
    for r in _MIX_ANGLES:
        mix = np.cos(r) * m2.real + np.sin(r) * m2.imag
        _, p = np.linalg.eigh(mix)
        d = p.T @ m2 @ p
        off = float(np.max(np.abs(d - np.diag(np.diag(d)))))
        if best is None or off < best[0]:
            best = (off, p, np.diag(d).copy())
        if off < 1e-13:
            break
    off, p, d = best
    if off > 1e-10:
        raise DecompositionFailure(f"magic-basis diagonalization residual {off:.3e}")
    if np.linalg.det(p) < 0:
        p = p.copy()
        p[:, 0] *= -1
    return p, d


def split_local(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Factor a local 4x4 gate as ``e^{i phase} (a (x) b)`` with ``a, b`` in SU(2)."""
    t = np.asarray(m, dtype=complex).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    uu, s, vh = np.linalg.svd(t)
    a = (np.sqrt(s[0]) * uu[:, 0]).reshape(2, 2)
    b = (np.sqrt(s[0]) * vh[0, :]).reshape(2, 2)
    a = a / np.sqrt(np.linalg.det(a))
    b = b / np.sqrt(np.linalg.det(b))
    ov = np.trace(kron(a, b).conj().T @ m) / 4
    return a, b, float(np.angle(ov))


def _kak_frame(u: np.ndarray) -> _Frame:
    """Raw (uncanonicalized) KAK frame of ``u``."""
    u = np.asarray(u, dtype=complex)
    us, phase0 = to_special(u)
    up = MAGIC_DAG @ us @ MAGIC
    m2 = up.T @ up
    p, d = _real_diagonalizer(m2)
    theta = np.angle(d) / 2
    k1 = up @ p @ np.diag(np.exp(-1j * theta))
    if np.linalg.det(k1).real < 0:
        theta[0] += np.pi
        k1[:, 0] *= -1
    sol = _PHASE_SOLVE @ theta
    left = MAGIC @ k1 @ MAGIC_DAG
    right = MAGIC @ p.T @ MAGIC_DAG
    return _Frame(phase0 + sol[0], left, sol[1:], right)


def _canonicalize_frame(fr: _Frame, snap: float) -> None:
    for j in range(3):
        fr.shift(j, -int(np.round(fr.c[j] / np.pi)))
    # bubble sort by magnitude, descending
    for i, j in ((0, 1), (1, 2), (0, 1)):
        if abs(fr.c[i]) < abs(fr.c[j]):
            fr.swap(i, j)
    if fr.c[0] < 0:
        fr.flip(0, 2)
    if fr.c[1] < 0:
        fr.flip(1, 2)
    if fr.c[2] < -snap:
        fr.shift(0, -1)
        fr.flip(0, 2)
    elif fr.c[2] < 0:
        fr.c[2] = 0.0


def canonicalize(raw) -> CanonicalClass:
    """Reduce an exponent triple into the Weyl chamber."""
    snap = tolerances.get().snap
    fr = _Frame(0.0, I4, np.asarray(raw, dtype=float), I4)
    _canonicalize_frame(fr, snap)
    return CanonicalClass(*map(float, fr.c))


def canonicalize_many(raw: np.ndarray) -> np.ndarray:
    """Vectorized :func:`canonicalize` over an ``(N, 3)`` array."""
    snap = tolerances.get().snap
    c = np.array(raw, dtype=float, copy=True)
    c -= np.pi * np.round(c / np.pi)
    idx = np.argsort(-np.abs(c), axis=1, kind="stable")
    c = np.take_along_axis(c, idx, axis=1)
    neg = c[:, 0] < 0
    c[neg, 0] *= -1
    c[neg, 2] *= -1
    neg = c[:, 1] < 0
    c[neg, 1] *= -1
    c[neg, 2] *= -1
    neg = c[:, 2] < -snap
    c[neg, 0] = np.pi - c[neg, 0]
    c[neg, 2] *= -1
    c[(c[:, 2] < 0) & ~neg, 2] = 0.0
    return c


def _frame_to_pair(fr: _Frame) -> LocalGatePair:
    a1, b1, p1 = split_local(fr.left)
    a2, b2, p2 = split_local(fr.right)
    return LocalGatePair(a1, b1, a2, b2, fr.phase + p1 + p2)


def kak_decompose(u: np.ndarray) -> tuple[LocalGatePair, CanonicalClass]:
    """Cartan decomposition ``u = e^{i phase} k1 A(c) k2`` with ``c`` in the chamber."""
    u = np.asarray(u, dtype=complex)
    tol = tolerances.get()
    fr = _kak_frame(u)
    _canonicalize_frame(fr, tol.snap)
    pair = _frame_to_pair(fr)
    cls = CanonicalClass(*map(float, fr.c))
    err = float(np.max(np.abs(pair.dress(canonical_matrix(cls)) - u)))
    if err > max(tol.cls, 1e-9):
        raise DecompositionFailure(f"KAK reconstruction residual {err:.3e}")
    return pair, cls


def canonical_class(u: np.ndarray) -> CanonicalClass:
    return kak_decompose(u)[1]


def classes_of(us: np.ndarray) -> np.ndarray:
    """Chamber classes of a stack of ``(N, 4, 4)`` unitaries, without locals."""
    us = np.asarray(us, dtype=complex)
    det = np.linalg.det(us)
    us = us / (det ** 0.25)[:, None, None]
    up = MAGIC_DAG @ us @ MAGIC
    m = np.swapaxes(up, 1, 2) @ up
    theta = np.angle(np.linalg.eigvals(m)) / 2
    # the eigenphases must sum to 0 mod 2 pi for a consistent exponent triple
    odd = np.mod(np.round(theta.sum(axis=1) / np.pi), 2) == 1
    theta[odd, 0] += np.pi
    sol = theta @ _PHASE_SOLVE.T
    return canonicalize_many(sol[:, 1:])


# ---------------------------------------------------------------------------
# recovery of local gates between equivalent unitaries


def _orbit_moves():
    """All 24 (permutation, even sign flip) moves as sequences of frame operations."""
    moves = []
    perms = [(), ((0, 1),), ((1, 2),), ((0, 2),), ((0, 1), (1, 2)), ((1, 2), (0, 1))]
    flips = [(), ((0, 1),), ((1, 2),), ((0, 2),)]
    for p, f in itertools.product(perms, flips):
        moves.append([("swap", s) for s in p] + [("flip", s) for s in f])
    return moves


_MOVES = _orbit_moves()


def _align_frame(fr: _Frame, target: np.ndarray) -> _Frame:
    best = None
    for move in _MOVES:
        cand = fr.copy()
        for op, args in move:
            getattr(cand, op)(*args)
        for j in range(3):
            cand.shift(j, int(np.round((target[j] - cand.c[j]) / np.pi)))
        dist = float(np.max(np.abs(cand.c - target)))
        if best is None or dist < best[0]:
            best = (dist, cand)
    return best[1]


def local_gate_recovery(u: np.ndarray, v: np.ndarray, tol: float | None = None) -> LocalGatePair:
    """Locals with ``u = e^{i phase} k1 v k2`` for locally equivalent ``u`` and ``v``."""
    tol = tolerances.get().cls if tol is None else tol
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    gap = invariant_distance(u, v)
    if gap > max(tol, 1e-9):
        raise NotLocallyEquivalent(f"invariants differ by {gap:.3e}")
    fu = _kak_frame(u)
    _canonicalize_frame(fu, tolerances.get().snap)
    fv = _align_frame(_kak_frame(v), fu.c)
    k1 = fu.left @ fv.left.conj().T
    k2 = fv.right.conj().T @ fu.right
    a1, b1, p1 = split_local(k1)
    a2, b2, p2 = split_local(k2)
    pair = LocalGatePair(a1, b1, a2, b2, fu.phase - fv.phase + p1 + p2)
    err = float(np.max(np.abs(pair.dress(v) - u)))
    if err > max(tol, 1e-9) * 10:
        raise NotLocallyEquivalent(f"recovered locals miss by {err:.3e}")
    return pair


# ---------------------------------------------------------------------------
# coverage and bounds


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not (0 < gamma <= HALF_PI + 1e-12) or not math.isfinite(gamma):
        raise ValueError(f"gamma must lie in (0, pi/2], got {gamma!r}")
    return min(gamma, HALF_PI)


def _ceil(x: float) -> int:
    # absorbs round-off at exact breakpoints such as 3pi/(2 * pi/2) = 3
    return math.ceil(x - 1e-9)


def min_applications(gamma: float) -> int:
    gamma = _check_gamma(gamma)
    return _ceil(3 * np.pi / (2 * gamma))


def constructive_applications(gamma: float) -> int:
    gamma = _check_gamma(gamma)
    if abs(gamma - HALF_PI) <= 1e-12:
        return 4
    return _ceil(np.pi / gamma) + _ceil(np.pi / (2 * gamma))


def old_upper_bound(gamma: float) -> int:
    gamma = _check_gamma(gamma)
    return 6 * _ceil(np.pi / (4 * gamma))


def coverage_vertices(n: int, gamma: float) -> CoverageRegion:
    if n < 3:
        raise ValueError("coverage tetrahedra are defined for n >= 3")
    gamma = _check_gamma(gamma)
    t = n * gamma
    b = (CanonicalClass(t, 0.0, 0.0), CanonicalClass(t / 2, t / 2, 0.0), CanonicalClass(t / 3, t / 3, t / 3))
    c = (
        CanonicalClass(np.pi - t, 0.0, 0.0),
        CanonicalClass(np.pi - t / 2, t / 2, 0.0),
        CanonicalClass(np.pi - t / 3, t / 3, t / 3),
    )
    return CoverageRegion(n, gamma, b, c)


def class_covered(n: int, gamma: float, c, tol: float | None = None) -> bool:
    """Whether class ``c`` is reachable with ``n`` applications of strength ``gamma``."""
    tol = tolerances.get().cls if tol is None else tol
    gamma = _check_gamma(gamma)
    if isinstance(c, CanonicalClass):
        c = c.as_array()
    c1, c2, c3 = map(float, c)
    if n >= 3:
        t = n * gamma
        return c1 + c2 + c3 <= t + tol or c1 - c2 - c3 >= np.pi - t - tol
    if n == 2:
        return abs(c3) <= tol and (c1 + c2 <= 2 * gamma + tol or np.pi - c1 + c2 <= 2 * gamma + tol)
    if n == 1:
        return (
            abs(c2) <= tol
            and abs(c3) <= tol
            and (abs(c1 - gamma) <= tol or abs(np.pi - c1 - gamma) <= tol)
        )
    if n == 0:
        return max(abs(c1), abs(c2), abs(c3)) <= tol
    raise ValueError("n must be non-negative")
