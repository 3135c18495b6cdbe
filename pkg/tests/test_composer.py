import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from weylforge import composer, weyl
from weylforge.circuit import GateSpec, Interaction, InteractionKind
from weylforge.errors import NotEntangling, OutOfReach
from weylforge.su import haar_random_su4, phase_distance

from oracles import CNOT, CZ, DCNOT, SWAP, PAULI, canonical_expm, haar_unitary

HP = np.pi / 2
seeds = st.integers(0, 2**32 - 1)
strengths = st.floats(0.05, HP)
GAMMAS = [HP, np.pi / 3, np.pi / 4, np.pi / 8, 0.3]


def class_of(circ):
    return weyl.kak_decompose(circ.matrix())[1]


def same_class(u, c, tol=1e-9):
    """Local equivalence of ``u`` with the canonical gate of ``c`` (mirror-aware)."""
    return weyl.invariant_distance(u, canonical_expm(c)) < tol


# Controlled-U normalization


def _ops(n):
    from scipy.linalg import expm

    u = expm(1j * sum(ni * PAULI[a] for ni, a in zip(n, "xyz")))
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = np.eye(2)
    out[2:, 2:] = u
    return out


@pytest.mark.parametrize(
    "n, gamma",
    [([0, 0, HP], HP), ([0, 0, np.pi / 4], np.pi / 4), ([HP, 0, 0], HP), ([0.3, -0.5, 0.2], None)],
)
def test_controlled_u_normalize(n, gamma):
    g, u1 = composer.controlled_u_normalize(n)
    if gamma is not None:
        assert np.isclose(g, gamma)
    cu = _ops(n)
    assert np.max(np.abs(composer.controlled_u_matrix(n) - cu)) < 1e-12
    # CU is locally equivalent to ZZ(gamma)
    assert weyl.invariant_distance(cu, canonical_expm([0, 0, g])) < 1e-10
    # and the conjugation identity holds exactly
    raw = np.linalg.norm(n)
    zrot = np.diag([np.exp(-0.5j * raw), np.exp(0.5j * raw)])
    rebuilt = np.kron(np.eye(2), u1.conj().T @ zrot) @ canonical_expm([0, 0, raw]) @ np.kron(np.eye(2), u1)
    assert phase_distance(rebuilt, cu) < 1e-10


def test_controlled_z_has_trivial_diagonalizer():
    _, u1 = composer.controlled_u_normalize([0, 0, HP])
    # X maps |0>,|1> to the +1,-1 eigenvectors of Z swapped; up to phase U1 is X
    assert phase_distance(np.kron(np.eye(2), u1), np.kron(np.eye(2), PAULI["x"])) < 1e-12


@given(st.lists(st.floats(-6, 6), min_size=3, max_size=3))
def test_controlled_u_strength_range(n):
    g0 = np.linalg.norm(n)
    assume(abs(g0 - np.pi * round(g0 / np.pi)) > 1e-6)
    g, _ = composer.controlled_u_normalize(n)
    assert 0 < g <= HP + 1e-12
    assert weyl.invariant_distance(_ops(n), canonical_expm([0, 0, g])) < 1e-9


@pytest.mark.parametrize("n", [[0, 0, 0], [0, 0, np.pi], [np.pi, 0, 0]])
def test_controlled_u_local_raises(n):
    with pytest.raises(NotEntangling):
        composer.controlled_u_normalize(n)


# the two-pulse quadratic


def test_two_pulse_examples():
    a = composer.two_pulse_solve(HP, HP, HP, HP)
    assert np.allclose([a.x1, a.x2], 0, atol=1e-12)
    assert np.allclose([a.beta1, a.beta2], HP)
    assert same_class(composer.two_pulse_matrix(HP, HP, a), [HP, HP, 0])

    g = 0.7
    a = composer.two_pulse_solve(g, g, 0, 0)
    assert np.allclose([a.x1, a.x2], [1, -1])
    assert np.allclose([a.beta1, a.beta2], [0, np.pi])
    assert same_class(composer.two_pulse_matrix(g, g, a), [0, 0, 0])

    a = composer.two_pulse_solve(HP, HP, HP, 0)
    assert same_class(composer.two_pulse_matrix(HP, HP, a), [HP, 0, 0])


def _corrected_instance(rng):
    """``(g1, g2, c1, c2)`` inside the region generated by the two-pulse circuit."""
    while True:
        g1, g2 = rng.uniform(0.01, HP, 2)
        c2 = rng.uniform(0, HP)
        c1 = rng.uniform(c2, np.pi - c2)
        if composer.two_pulse_feasible(g1, g2, c1, c2, tol=0):
            return g1, g2, c1, c2


@given(seeds)
def test_two_pulse_solution_sound(seed):
    g1, g2, c1, c2 = _corrected_instance(np.random.default_rng(seed))
    a = composer.two_pulse_solve(g1, g2, c1, c2)
    c1r = np.pi - c1 if a.mirrored else c1
    for x in (a.x1, a.x2):
        assert -1 <= x <= 1
        assert abs(composer.quadratic_value(g1, g2, c1r, c2, x)) < 1e-9
    assert a.x1 >= a.x2
    assert same_class(composer.two_pulse_matrix(g1, g2, a), [c1, c2, 0])


@given(seeds)
def test_two_pulse_discriminant_identity(seed):
    # b^2 - 4ac of the quadratic equals the closed-form discriminant
    r = np.random.default_rng(seed)
    g1, g2 = r.uniform(0.01, HP, 2)
    c2 = r.uniform(0, HP)
    c1 = r.uniform(c2, np.pi - c2)
    a, rad, k = composer.quadratic_coefficients(g1, g2, c1, c2)
    assume(rad >= 0)
    assert abs((rad - 4 * a * k) - composer.discriminant(g1, g2, c1, c2)) < 1e-12


@given(seeds)
def test_two_pulse_out_of_reach(seed):
    r = np.random.default_rng(seed)
    g1, g2 = r.uniform(0.01, 1.0, 2)
    c2 = r.uniform(0, HP)
    c1 = r.uniform(c2, np.pi - c2)
    assume(not composer.two_pulse_feasible(g1, g2, c1, c2, tol=1e-9))
    with pytest.raises(OutOfReach):
        composer.two_pulse_solve(g1, g2, c1, c2)


def test_two_pulse_batched_matches_scalar():
    rng = np.random.default_rng(2)
    g1, g2, b1, b2 = rng.uniform(0, np.pi, (4, 25))
    batch = composer.two_pulse_matrices(g1, g2, b1, b2)
    for i in range(25):
        a = composer.CompositionAngles(b1[i], b2[i], np.cos(b1[i]), np.cos(b2[i]))
        assert np.max(np.abs(batch[i] - composer.two_pulse_matrix(g1[i], g2[i], a))) < 1e-14


# line blocks


@pytest.mark.parametrize(
    "gamma, c3, count, cls",
    [(HP, 0.0, 0, [0, 0, 0]), (HP, HP, 1, [HP, 0, 0]), (np.pi / 4, HP, 2, [HP, 0, 0])],
)
def test_zz_fraction_examples(gamma, c3, count, cls):
    circ = composer.zz_fraction_synthesize(gamma, c3)
    assert circ.applications == count
    assert same_class(circ.matrix(), cls)


@given(strengths, st.floats(0, HP))
def test_zz_fraction_class_and_count(gamma, c3):
    circ = composer.zz_fraction_synthesize(gamma, c3)
    assert same_class(circ.matrix(), [c3, 0, 0])
    assert circ.applications <= max(composer.line_count(gamma, c3), 0)
    assert circ.applications <= max(2, int(np.ceil(HP / gamma - 1e-9)))
    if c3 > 1e-9:
        assert circ.applications >= int(np.ceil(c3 / gamma - 1e-9))


# base plane


def test_base_plane_examples():
    circ = composer.base_plane_synthesize(HP, HP, HP)
    assert circ.applications == 2
    assert same_class(circ.matrix(), [HP, HP, 0])
    circ = composer.base_plane_synthesize(np.pi / 4, HP, HP)
    assert circ.applications <= 4
    assert same_class(circ.matrix(), [HP, HP, 0])
    assert composer.base_plane_synthesize(HP, 0, 0).applications == 0


@given(st.sampled_from(GAMMAS + [0.11, 1.2]), seeds)
def test_base_plane_class_and_count(gamma, seed):
    r = np.random.default_rng(seed)
    c2 = r.uniform(0, HP)
    c1 = r.uniform(c2, np.pi - c2)
    circ = composer.base_plane_synthesize(gamma, c1, c2)
    assert same_class(circ.matrix(), [c1, c2, 0])
    assert circ.applications <= int(np.ceil(np.pi / gamma - 1e-9))
    # the emitted count must cover the class
    assert weyl.class_covered(circ.applications, gamma, weyl.canonicalize([c1, c2, 0]), tol=1e-9)


# three-application circuits


@pytest.mark.parametrize("c", [[HP, 0, 0], [HP, HP, HP], [0, 0, 0], [HP, HP, 0], [1.0, 0.4, 0.2]])
def test_cnot3_classes(c):
    circ = composer.cnot3_synthesize(c)
    assert circ.applications == 3
    circ.check_spec()
    assert same_class(circ.matrix(), c)


@pytest.mark.parametrize("c", [[HP, HP, 0], [HP, 0, 0], [HP, HP, HP], [0, 0, 0], [2.1, 0.7, 0.3]])
def test_dcnot3_classes(c):
    circ = composer.dcnot3_synthesize(c)
    assert circ.applications == 3
    circ.check_spec()
    assert all(it.kind == InteractionKind.XXYY for it in circ.items if isinstance(it, Interaction))
    assert same_class(circ.matrix(), c)


def test_dcnot_interaction_is_dcnot_class():
    m = GateSpec.dcnot().interaction.matrix()
    assert weyl.invariant_distance(m, DCNOT) < 1e-12


@given(seeds)
def test_three_application_circuits_any_class(seed):
    u = haar_unitary(4, np.random.default_rng(seed))
    c = weyl.canonical_class(u)
    assert same_class(composer.cnot3_synthesize(c).matrix(), c.as_array())
    assert same_class(composer.dcnot3_synthesize(c).matrix(), c.as_array())


# full pipeline


@pytest.mark.parametrize("spec", [GateSpec.cnot(), GateSpec.dcnot(), GateSpec.controlled_u(0.4)])
def test_full_synthesize_local_target(spec):
    rep = composer.full_synthesize(np.eye(4), spec)
    assert rep.applications == 0
    assert rep.residual < 1e-9
    loc = np.kron(haar_unitary(2, np.random.default_rng(1)), haar_unitary(2, np.random.default_rng(2)))
    rep = composer.full_synthesize(loc, spec)
    assert rep.applications == 0 and rep.residual < 1e-9


@pytest.mark.parametrize("u", [SWAP, CNOT, CZ, DCNOT])
@pytest.mark.parametrize("spec", [GateSpec.cnot(), GateSpec.dcnot()])
def test_full_synthesize_named_gates(u, spec):
    rep = composer.full_synthesize(u, spec)
    assert rep.applications == 3
    assert rep.residual < 1e-9
    assert phase_distance(rep.circuit.matrix(), u) < 1e-9
    rep.circuit.check_spec()


@pytest.mark.parametrize("gamma", GAMMAS)
def test_full_synthesize_controlled_u(gamma):
    spec = GateSpec.controlled_u(gamma)
    rng = np.random.default_rng(17)
    for _ in range(10):
        u = haar_random_su4(rng)
        rep = composer.full_synthesize(u, spec)
        assert rep.applications <= weyl.constructive_applications(gamma)
        assert rep.residual < 1e-9
        assert rep.verified
        assert phase_distance(rep.circuit.matrix(), u) < 1e-9
        rep.circuit.check_spec()
        assert weyl.class_covered(rep.applications, gamma, rep.target_class, tol=1e-9)


@pytest.mark.parametrize("gamma", GAMMAS)
def test_full_synthesize_swap_controlled_u(gamma):
    rep = composer.full_synthesize(SWAP, GateSpec.controlled_u(gamma))
    assert rep.residual < 1e-9
    assert weyl.min_applications(gamma) <= rep.applications <= weyl.constructive_applications(gamma)


def test_report_bounds():
    rep = composer.full_synthesize(haar_random_su4(3), GateSpec.controlled_u(np.pi / 3))
    assert (rep.min_bound, rep.constructive_bound) == (5, 5)
    assert rep.applications <= 5
    rep = composer.full_synthesize(haar_random_su4(3), GateSpec.cnot())
    assert (rep.min_bound, rep.constructive_bound) == (3, 4)
    rep = composer.full_synthesize(haar_random_su4(3), GateSpec.dcnot())
    assert (rep.min_bound, rep.constructive_bound) == (3, 3)


@given(st.floats(0.08, HP), seeds)
def test_full_synthesize_random_strength(gamma, seed):
    u = haar_random_su4(seed)
    rep = composer.full_synthesize(u, GateSpec.controlled_u(gamma))
    assert rep.applications <= weyl.constructive_applications(gamma)
    assert rep.residual < 1e-9
