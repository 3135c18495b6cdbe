"""Two-qubit gate synthesis from Controlled-U, CNOT and DCNOT gates."""
from .circuit import CircuitIR, GateKind, GateSpec, Interaction, InteractionKind, Local
from .composer import (
    CompositionAngles,
    SynthesisReport,
    base_plane_synthesize,
    cnot3_synthesize,
    controlled_u_normalize,
    dcnot3_synthesize,
    full_synthesize,
    two_pulse_solve,
    zz_fraction_synthesize,
)
from .errors import (
    DecompositionFailure,
    MalformedCircuit,
    NotEntangling,
    NotLocallyEquivalent,
    OutOfReach,
    WeylForgeError,
)
from .su import (
    EulerZYZ,
    PauliAxis,
    euler_zyz,
    exp_canonical,
    haar_random_su2,
    haar_random_su4,
    kron,
    pauli,
    phase_distance,
    su2_from_axis_angle,
)
from .verifier import (
    CoverageSampleReport,
    EquivalenceVerdict,
    bounds_table,
    check_equivalence,
    coverage_monte_carlo,
    simulate,
)
from .weyl import (
    CanonicalClass,
    CoverageRegion,
    LocalGatePair,
    LocalInvariants,
    canonicalize,
    class_covered,
    constructive_applications,
    coverage_vertices,
    invariants_from_class,
    invariants_from_unitary,
    kak_decompose,
    local_gate_recovery,
    min_applications,
    old_upper_bound,
)

__version__ = "0.1.0"
