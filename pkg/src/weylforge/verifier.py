"""Independent checks: simulation, equivalence verdicts, coverage sampling, bound tables."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances
from .circuit import CircuitIR
from .su import haar_random_su2_batch, phase_distance
from .weyl import (
    CanonicalClass,
    classes_of,
    constructive_applications,
    invariant_distance,
    kak_decompose,
    min_applications,
    old_upper_bound,
)


def simulate(circuit: CircuitIR) -> np.ndarray:
    """Matrix of a circuit; the first item acts first (rightmost factor)."""
    return circuit.matrix()


@dataclass(frozen=True)
class EquivalenceVerdict:
    exact_up_to_phase: bool
    locally_equivalent: bool
    class_a: CanonicalClass
    class_b: CanonicalClass
    phase_residual: float
    invariant_residual: float

    def to_dict(self) -> dict:
        return {
            "exact_up_to_phase": self.exact_up_to_phase,
            "locally_equivalent": self.locally_equivalent,
            "class_a": self.class_a.as_array().tolist(),
            "class_b": self.class_b.as_array().tolist(),
            "phase_residual": self.phase_residual,
            "invariant_residual": self.invariant_residual,
        }


def check_equivalence(a: np.ndarray, b: np.ndarray, tol: float | None = None) -> EquivalenceVerdict:
    """Exact (up to phase) and local equivalence of two gates.

    The local test compares the sign-free invariants ``(g1 + i g2)^2`` and
    ``g3``, so it does not depend on which chamber representative either
    gate maps to.
    """
    tol = tolerances.get().cls if tol is None else tol
    pr = phase_distance(a, b)
    ir = invariant_distance(a, b)
    local = ir < tol
    return EquivalenceVerdict(
        exact_up_to_phase=pr < tol and local,
        locally_equivalent=local or pr < tol,
        class_a=kak_decompose(a)[1],
        class_b=kak_decompose(b)[1],
        phase_residual=pr,
        invariant_residual=ir,
    )


@dataclass(frozen=True)
class CoverageSampleReport:
    n: int
    gamma: float
    samples: int
    violations: int
    max_boundary_excess: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def coverage_excess(n: int, gamma: float, classes: np.ndarray) -> np.ndarray:
    """Signed distance outside the two coverage tetrahedra (positive means outside)."""
    t = n * gamma
    c1, c2, c3 = classes.T
    return np.minimum(c1 + c2 + c3 - t, (np.pi - t) - (c1 - c2 - c3))


def random_zz_circuits(n: int, gamma: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` matrices of ``n`` ``ZZ(gamma)`` applications separated by Haar-random locals."""
    zz = np.exp(0.5j * gamma * np.array([1, -1, -1, 1]))
    out = np.broadcast_to(np.diag(zz), (count, 4, 4)).copy()
    for _ in range(n - 1):
        a = haar_random_su2_batch(count, rng)
        b = haar_random_su2_batch(count, rng)
        loc = np.einsum("nij,nkl->nikjl", a, b).reshape(count, 4, 4)
        out = zz[None, :, None] * (loc @ out)
    return out


def coverage_monte_carlo(
    n: int, gamma: float, samples: int, seed: int, tol: float = 1e-9, batch: int = 25_000
) -> CoverageSampleReport:
    """Sample random ``n``-application circuits and test the coverage predicate."""
    if n < 3:
        raise ValueError("the coverage predicate is stated for n >= 3")
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    violations = 0
    worst = -np.inf
    done = 0
    while done < samples:
        k = min(batch, samples - done)
        ex = coverage_excess(n, gamma, classes_of(random_zz_circuits(n, gamma, k, rng)))
        violations += int(np.count_nonzero(ex > tol))
        worst = max(worst, float(ex.max()))
        done += k
    return CoverageSampleReport(n, float(gamma), samples, violations, worst)


@dataclass(frozen=True)
class BoundsRow:
    gamma: float
    min: int
    constructive: int
    old: int


def bounds_table(gamma_grid) -> list[BoundsRow]:
    return [
        BoundsRow(float(g), min_applications(g), constructive_applications(g), old_upper_bound(g))
        for g in gamma_grid
    ]
