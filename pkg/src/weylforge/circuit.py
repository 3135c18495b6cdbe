"""Circuit intermediate representation.

Items are listed in temporal order, so the first item ends up rightmost in
the matrix product.  Interactions are the counted resource; locals are free.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedCircuit
from .su import I4, PauliAxis, exp_canonical, kron

HALF_PI = np.pi / 2


class InteractionKind(str, enum.Enum):
    ZZ = "zz"
    XXYY = "xxyy"


class GateKind(str, enum.Enum):
    CONTROLLED_U = "cu"
    CNOT = "cnot"
    DCNOT = "dcnot"


@dataclass(frozen=True)
class Interaction:
    kind: InteractionKind
    gamma: float

    def matrix(self) -> np.ndarray:
        if self.kind == InteractionKind.ZZ:
            return exp_canonical(PauliAxis.Z, self.gamma)
        if self.kind == InteractionKind.XXYY:
            # XX and YY commute, so the joint exponential factors
            return exp_canonical(PauliAxis.X, self.gamma) @ exp_canonical(PauliAxis.Y, self.gamma)
        raise MalformedCircuit(f"unknown interaction kind {self.kind!r}")


@dataclass(frozen=True, eq=False)
class Local:
    q1: np.ndarray
    q2: np.ndarray

    def matrix(self) -> np.ndarray:
        return kron(self.q1, self.q2)

    def __eq__(self, other):
        return (
            isinstance(other, Local)
            and np.array_equal(self.q1, other.q1)
            and np.array_equal(self.q2, other.q2)
        )


@dataclass(frozen=True)
class GateSpec:
    kind: GateKind
    gamma: float = HALF_PI

    def __post_init__(self):
        if self.kind == GateKind.CONTROLLED_U and not (0 < self.gamma <= HALF_PI + 1e-12):
            raise ValueError(f"Controlled-U strength must lie in (0, pi/2], got {self.gamma!r}")

    @classmethod
    def controlled_u(cls, gamma: float) -> "GateSpec":
        return cls(GateKind.CONTROLLED_U, float(gamma))

    @classmethod
    def cnot(cls) -> "GateSpec":
        return cls(GateKind.CNOT, HALF_PI)

    @classmethod
    def dcnot(cls) -> "GateSpec":
        return cls(GateKind.DCNOT, HALF_PI)

    @property
    def interaction(self) -> Interaction:
        if self.kind == GateKind.DCNOT:
            return Interaction(InteractionKind.XXYY, HALF_PI)
        return Interaction(InteractionKind.ZZ, self.gamma)

    def to_dict(self) -> dict:
        if self.kind == GateKind.CONTROLLED_U:
            return {"kind": "cu", "gamma": self.gamma}
        return {"kind": self.kind.value}

    @classmethod
    def from_dict(cls, d: dict) -> "GateSpec":
        kind = GateKind(d["kind"])
        if kind == GateKind.CONTROLLED_U:
            return cls.controlled_u(float(d["gamma"]))
        return cls(kind, HALF_PI)


@dataclass
class CircuitIR:
    items: list = field(default_factory=list)
    global_phase: float = 0.0
    gate_spec: GateSpec | None = None

    @property
    def applications(self) -> int:
        return sum(isinstance(it, Interaction) for it in self.items)

    def matrix(self) -> np.ndarray:
        out = I4.copy()
        for it in self.items:
            if not isinstance(it, (Interaction, Local)):
                raise MalformedCircuit(f"unknown circuit item {it!r}")
            out = it.matrix() @ out
        return np.exp(1j * self.global_phase) * out

    def __add__(self, other: "CircuitIR") -> "CircuitIR":
        """Run ``self`` first, then ``other``."""
        return CircuitIR(
            list(self.items) + list(other.items),
            self.global_phase + other.global_phase,
            self.gate_spec or other.gate_spec,
        )

    def fused(self) -> "CircuitIR":
        """Merge runs of adjacent locals into one."""
        out: list = []
        for it in self.items:
            if isinstance(it, Local) and out and isinstance(out[-1], Local):
                prev = out.pop()
                it = Local(it.q1 @ prev.q1, it.q2 @ prev.q2)
            out.append(it)
        return CircuitIR(out, self.global_phase, self.gate_spec)

    def check_spec(self) -> None:
        """Every interaction must be the spec's gate."""
        if self.gate_spec is None:
            return
        want = self.gate_spec.interaction
        for it in self.items:
            if isinstance(it, Interaction) and (
                it.kind != want.kind or abs(it.gamma - want.gamma) > 1e-12
            ):
                raise MalformedCircuit(f"interaction {it} does not match gate spec {want}")
