"""Small fixed-size complex linear algebra for one- and two-qubit gates.

Matrices are plain ``numpy`` complex arrays: 2x2 for single-qubit gates and
4x4 for two-qubit gates.  Every exponential used here has a generator that
squares to the identity, so they are evaluated in closed form.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import tolerances


class PauliAxis(str, enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"


I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

_PAULI = {
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliAxis.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliAxis.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}
_PAULI_PAIR = {ax: np.kron(p, p) for ax, p in _PAULI.items()}

AXES = (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)


def pauli(axis: PauliAxis | str) -> np.ndarray:
    return _PAULI[PauliAxis(axis)].copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def exp_canonical(axis: PauliAxis | str, c: float) -> np.ndarray:
    """``exp(i c/2 sigma_a (x) sigma_a)``."""
    return np.cos(c / 2) * I4 + 1j * np.sin(c / 2) * _PAULI_PAIR[PauliAxis(axis)]


def rot(axis: PauliAxis | str, theta: float) -> np.ndarray:
    """Single-qubit ``exp(i theta/2 sigma_a)``, the half-angle form used in circuits."""
    return np.cos(theta / 2) * I2 + 1j * np.sin(theta / 2) * _PAULI[PauliAxis(axis)]


def rot_about(n: np.ndarray, theta: float) -> np.ndarray:
    """``exp(i theta/2 n.sigma)`` for a unit vector ``n``."""
    nx, ny, nz = n
    gen = nx * _PAULI[PauliAxis.X] + ny * _PAULI[PauliAxis.Y] + nz * _PAULI[PauliAxis.Z]
    return np.cos(theta / 2) * I2 + 1j * np.sin(theta / 2) * gen


def su2_from_axis_angle(n) -> np.ndarray:
    """``exp(i n.sigma)`` for an arbitrary real 3-vector (full angle |n|)."""
    n = np.asarray(n, dtype=float)
    norm = float(np.linalg.norm(n))
    if norm == 0.0:
        return I2.copy()
    return rot_about(n / norm, 2 * norm)


@dataclass(frozen=True)
class EulerZYZ:
    """``u = e^{i phase} e^{alpha i sz} e^{beta i sy} e^{gamma i sz}``."""

    alpha: float
    beta: float
    gamma: float
    phase: float

    def matrix(self) -> np.ndarray:
        rz_a = np.diag([np.exp(1j * self.alpha), np.exp(-1j * self.alpha)])
        rz_g = np.diag([np.exp(1j * self.gamma), np.exp(-1j * self.gamma)])
        cb, sb = np.cos(self.beta), np.sin(self.beta)
        ry = np.array([[cb, sb], [-sb, cb]], dtype=complex)
        return np.exp(1j * self.phase) * (rz_a @ ry @ rz_g)


def euler_zyz(u: np.ndarray) -> EulerZYZ:
    """Euler ZYZ angles with ``beta`` in ``[0, pi/2]``.

    When ``beta`` is 0 or pi/2 the split between ``alpha`` and ``gamma`` is
    not unique and ``gamma`` is set to 0.
    """
    u = np.asarray(u, dtype=complex)
    phase = float(np.angle(np.linalg.det(u))) / 2
    v = u * np.exp(-1j * phase)
    a, b = v[0, 0], v[0, 1]
    beta = float(np.arctan2(abs(b), abs(a)))
    eps = 1e-14
    if abs(b) < eps:
        alpha, gamma = float(np.angle(a)), 0.0
        beta = 0.0
    elif abs(a) < eps:
        alpha, gamma = float(np.angle(b)), 0.0
        beta = np.pi / 2
    else:
        s, d = float(np.angle(a)), float(np.angle(b))
        alpha, gamma = (s + d) / 2, (s - d) / 2
    return EulerZYZ(alpha, beta, gamma, phase)


def is_unitary(u: np.ndarray, tol: float | None = None) -> bool:
    tol = tolerances.get().unitary if tol is None else tol
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or not np.all(np.isfinite(u)):
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def to_special(u: np.ndarray) -> tuple[np.ndarray, float]:
    """Split ``u = e^{i phase} s`` with ``det s = 1`` (principal root of det)."""
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    phase = float(np.angle(np.linalg.det(u))) / n
    return u * np.exp(-1j * phase), phase


def phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """``min_phi ||a - e^{i phi} b||`` in the operator norm.

    With ``w = a^dag b`` unitary, the norm equals the largest chord from 1 to
    the rotated eigenvalues of ``w``; the optimal rotation centres the
    shortest arc that contains all of them.
    """
    w = np.asarray(a, dtype=complex).conj().T @ np.asarray(b, dtype=complex)
    ang = np.sort(np.mod(np.angle(np.linalg.eigvals(w)), 2 * np.pi))
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * np.pi]]))
    arc = max(2 * np.pi - float(gaps.max()), 0.0)
    return float(2 * np.sin(arc / 4))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-random U(dim) via QR of a complex Ginibre matrix with sign-fixed R."""
    rng = _rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_random_su4(seed=None) -> np.ndarray:
    return to_special(haar_random_unitary(4, seed))[0]


def haar_random_su2(seed=None) -> np.ndarray:
    return to_special(haar_random_unitary(2, seed))[0]


def haar_random_su2_batch(count: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized Haar SU(2): uniform unit quaternions."""
    q = rng.standard_normal((count, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    out = np.empty((count, 2, 2), dtype=complex)
    out[:, 0, 0] = q[:, 0] + 1j * q[:, 3]
    out[:, 0, 1] = q[:, 2] + 1j * q[:, 1]
    out[:, 1, 0] = -q[:, 2] + 1j * q[:, 1]
    out[:, 1, 1] = q[:, 0] - 1j * q[:, 3]
    return out
