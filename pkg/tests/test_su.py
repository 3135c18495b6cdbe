import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylforge import su
from weylforge.su import PauliAxis

from oracles import PAULI, SWAP, expm_pair, haar_unitary, kron_loops, min_phase_distance

angles = st.floats(-4 * np.pi, 4 * np.pi, allow_nan=False)
seeds = st.integers(0, 2**32 - 1)
axes = st.sampled_from(list(PauliAxis))


# pauli / kron


def test_pauli_matrices():
    assert np.array_equal(su.pauli("x"), [[0, 1], [1, 0]])
    assert np.array_equal(su.pauli(PauliAxis.Y), [[0, -1j], [1j, 0]])
    assert np.array_equal(su.pauli("z"), [[1, 0], [0, -1]])
    assert len(PauliAxis) == 3


@pytest.mark.parametrize("axis", list(PauliAxis))
def test_pauli_properties(axis):
    p = su.pauli(axis)
    assert np.allclose(p, p.conj().T)
    assert np.trace(p) == 0
    assert np.isclose(np.linalg.det(p), -1)


def test_kron_examples():
    assert np.array_equal(su.kron(su.I2, su.I2), np.eye(4))
    assert np.array_equal(su.kron(su.pauli("z"), su.pauli("z")), np.diag([1, -1, -1, 1]))
    xy = su.kron(su.pauli("x"), su.pauli("y"))
    assert np.allclose(xy, kron_loops(PAULI["x"], PAULI["y"]))
    # antidiagonal read from the top row down: -i, i, -i, i
    assert np.allclose(np.fliplr(xy).diagonal(), [-1j, 1j, -1j, 1j])
    assert np.count_nonzero(xy) == 4


@given(seeds)
def test_kron_mixed_product(seed):
    r = np.random.default_rng(seed)
    a, b, c, d = (haar_unitary(2, r) for _ in range(4))
    lhs = su.kron(a, b) @ su.kron(c, d)
    assert np.max(np.abs(lhs - su.kron(a @ c, b @ d))) < 1e-12
    assert np.max(np.abs(su.kron(a, b) - kron_loops(a, b))) < 1e-15


# exponentials


def test_exp_canonical_examples():
    assert np.array_equal(su.exp_canonical("z", 0.0), np.eye(4))
    assert np.allclose(su.exp_canonical("z", np.pi), 1j * np.diag([1, -1, -1, 1]), atol=1e-15)
    xx = np.kron(PAULI["x"], PAULI["x"])
    assert np.allclose(su.exp_canonical("x", np.pi / 2), (np.eye(4) + 1j * xx) / np.sqrt(2), atol=1e-15)


@given(axes, angles)
def test_exp_canonical_matches_expm(axis, c):
    assert np.max(np.abs(su.exp_canonical(axis, c) - expm_pair(axis.value, c))) < 1e-12


@given(axes, angles, angles)
def test_exp_canonical_additive(axis, c, d):
    lhs = su.exp_canonical(axis, c) @ su.exp_canonical(axis, d)
    assert np.max(np.abs(lhs - su.exp_canonical(axis, c + d))) < 1e-12


@pytest.mark.parametrize("axis", list(PauliAxis))
def test_exp_canonical_periods(axis):
    assert np.allclose(su.exp_canonical(axis, 2 * np.pi), -np.eye(4), atol=1e-15)
    assert np.allclose(su.exp_canonical(axis, 4 * np.pi), np.eye(4), atol=1e-15)


def test_su2_from_axis_angle_examples():
    assert np.array_equal(su.su2_from_axis_angle([0, 0, 0]), np.eye(2))
    assert np.allclose(su.su2_from_axis_angle([0, 0, np.pi / 2]), 1j * PAULI["z"], atol=1e-15)
    want = (np.eye(2) + 1j * PAULI["x"]) / np.sqrt(2)
    assert np.allclose(su.su2_from_axis_angle([np.pi / 4, 0, 0]), want, atol=1e-15)


@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_su2_from_axis_angle_matches_expm(n):
    from scipy.linalg import expm

    gen = sum(ni * PAULI[a] for ni, a in zip(n, "xyz"))
    got = su.su2_from_axis_angle(n)
    assert np.max(np.abs(got - expm(1j * gen))) < 1e-12
    assert np.isclose(np.linalg.det(got), 1)


@given(axes, angles)
def test_rot_is_half_angle_exponential(axis, t):
    from scipy.linalg import expm

    assert np.max(np.abs(su.rot(axis, t) - expm(0.5j * t * PAULI[axis.value]))) < 1e-12


# Euler decomposition


def _ez(a):
    return np.diag([np.exp(1j * a), np.exp(-1j * a)])


def _ey(b):
    return np.array([[np.cos(b), np.sin(b)], [-np.sin(b), np.cos(b)]], dtype=complex)


def test_euler_examples():
    e = su.euler_zyz(np.eye(2))
    assert np.allclose([e.alpha, e.beta, e.gamma, e.phase], 0, atol=1e-15)
    e = su.euler_zyz(_ey(np.pi / 8))
    assert np.allclose([e.alpha, e.beta, e.gamma, e.phase], [0, np.pi / 8, 0, 0], atol=1e-14)


@given(seeds)
def test_euler_round_trip(seed):
    u = haar_unitary(2, np.random.default_rng(seed))
    e = su.euler_zyz(u)
    # reconstruct with independently written factors
    rebuilt = np.exp(1j * e.phase) * _ez(e.alpha) @ _ey(e.beta) @ _ez(e.gamma)
    assert np.max(np.abs(rebuilt - u)) < 1e-12
    assert np.max(np.abs(e.matrix() - u)) < 1e-12
    assert -1e-15 <= e.beta <= np.pi / 2 + 1e-15


@pytest.mark.parametrize("u", [np.eye(2), _ez(0.3), _ey(np.pi / 2), _ey(np.pi / 2) @ _ez(0.7), 1j * PAULI["x"]])
def test_euler_degenerate_inputs(u):
    e = su.euler_zyz(u)
    assert np.max(np.abs(e.matrix() - u)) < 1e-12
    if np.isclose(e.beta, 0) or np.isclose(e.beta, np.pi / 2):
        assert e.gamma == 0


# phase distance


@given(seeds, st.floats(-10, 10))
def test_phase_distance_zero_on_phase_pairs(seed, theta):
    u = haar_unitary(4, np.random.default_rng(seed))
    assert su.phase_distance(u, u) < 1e-12
    assert su.phase_distance(u, np.exp(1j * theta) * u) < 1e-12


def test_phase_distance_positive_on_distinct():
    assert su.phase_distance(np.eye(4), SWAP) > 0.1


@given(seeds)
def test_phase_distance_matches_brute_force(seed):
    r = np.random.default_rng(seed)
    a, b = haar_unitary(4, r), haar_unitary(4, r)
    assert abs(su.phase_distance(a, b) - min_phase_distance(a, b)) < 1e-6


@given(seeds)
def test_phase_distance_pseudometric(seed):
    r = np.random.default_rng(seed)
    a, b, c = (haar_unitary(4, r) for _ in range(3))
    d = su.phase_distance
    assert abs(d(a, b) - d(b, a)) < 1e-12
    assert d(a, c) <= d(a, b) + d(b, c) + 1e-12


# unitarity helpers


def test_is_unitary_and_to_special():
    u = haar_unitary(4, np.random.default_rng(3))
    assert su.is_unitary(u)
    assert not su.is_unitary(2 * u)
    s, phi = su.to_special(u)
    assert np.isclose(np.linalg.det(s), 1)
    assert np.allclose(np.exp(1j * phi) * s, u)


# Haar sampling


def test_haar_deterministic_and_unitary():
    a, b = su.haar_random_su4(7), su.haar_random_su4(7)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, su.haar_random_su4(8))
    assert np.max(np.abs(a.conj().T @ a - np.eye(4))) < 1e-12
    assert np.isclose(np.linalg.det(a), 1)
    v = su.haar_random_su2(7)
    assert np.max(np.abs(v.conj().T @ v - np.eye(2))) < 1e-12
    assert np.isclose(np.linalg.det(v), 1)


def test_haar_trace_moment():
    # E|tr U|^2 = 1 for Haar U(4) and SU(4), so the mean of |tr U|^2/16 is 1/16
    rng = np.random.default_rng(11)
    vals = np.array([abs(np.trace(su.haar_random_su4(rng))) ** 2 / 16 for _ in range(10_000)])
    err = vals.std() / np.sqrt(vals.size)
    assert abs(vals.mean() - 1 / 16) < 5 * err


def test_haar_su2_batch_moments():
    rng = np.random.default_rng(12)
    us = su.haar_random_su2_batch(20_000, rng)
    assert np.max(np.abs(us @ np.conj(np.swapaxes(us, 1, 2)) - np.eye(2))) < 1e-12
    # E|tr U|^2 = 1 for Haar SU(2)
    t = np.abs(np.trace(us, axis1=1, axis2=2)) ** 2
    assert abs(t.mean() - 1) < 5 * t.std() / np.sqrt(t.size)
