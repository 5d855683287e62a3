"""Gate-level IR: exact-phase gates, circuits, inversion, JSON round-trip.

Qubit convention: internal indices are 0-based little-endian. Basis state
index a has qubit q holding bit (a >> q) & 1. A register's least significant
qubit is index 0 and the most significant (the MCX target) is index n-1.

Circuits and gates are immutable values after construction; they are safe to
share across workers. Construction is single-threaded per circuit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .phase import PhaseExponent, ZERO, PI, phase_normalize


class GateKind(str, Enum):
    H = "h"
    X = "x"
    SX = "sx"
    RZ = "rz"
    PHASE = "phase"      # diag(1, e^{i phi}); the R_m rotation when phi = 2pi/2^m
    CPHASE = "cphase"    # controlled Phase; symmetric in its operands
    CX = "cx"
    SWAP = "swap"

    @property
    def n_qubits(self) -> int:
        return 2 if self in (GateKind.CPHASE, GateKind.CX, GateKind.SWAP) else 1

    @property
    def has_phase(self) -> bool:
        return self in (GateKind.RZ, GateKind.PHASE, GateKind.CPHASE)


# Kinds whose matrix is diagonal in the computational basis.
DIAGONAL_KINDS = frozenset({GateKind.RZ, GateKind.PHASE, GateKind.CPHASE})


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    phase: PhaseExponent | None = None

    def __post_init__(self):
        if len(self.qubits) != self.kind.n_qubits:
            raise ValueError(f"{self.kind.value} takes {self.kind.n_qubits} qubits, got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate operands in {self.kind.value}{self.qubits}")
        if self.kind.has_phase and self.phase is None:
            raise ValueError(f"{self.kind.value} requires a phase")
        if not self.kind.has_phase and self.phase is not None:
            raise ValueError(f"{self.kind.value} takes no phase")

    def on(self, mapping: dict[int, int] | list[int]) -> "Gate":
        """Remap qubit operands through mapping."""
        qs = tuple(mapping[q] for q in self.qubits)
        return Gate(self.kind, qs, self.phase)


def h(q: int) -> Gate:
    return Gate(GateKind.H, (q,))


def x(q: int) -> Gate:
    return Gate(GateKind.X, (q,))


def sx(q: int) -> Gate:
    return Gate(GateKind.SX, (q,))


def rz(q: int, phi: PhaseExponent) -> Gate:
    return Gate(GateKind.RZ, (q,), phi)


def phase(q: int, phi: PhaseExponent) -> Gate:
    return Gate(GateKind.PHASE, (q,), phi)


def cphase(c: int, t: int, phi: PhaseExponent) -> Gate:
    return Gate(GateKind.CPHASE, (c, t), phi)


def cx(c: int, t: int) -> Gate:
    return Gate(GateKind.CX, (c, t))


def swap(a: int, b: int) -> Gate:
    return Gate(GateKind.SWAP, (a, b))


def gate_inverse(g: Gate) -> Gate:
    """Adjoint of g as a single gate.

    H, X, CX, SWAP are self-inverse; Phase/CPhase negate their phase exactly.
    Rz negates mod 2pi, which is the adjoint only up to a global phase of pi
    whenever the angle is nonzero (Rz(2pi) = -I); circuit_inverse compensates.
    SX has no single-gate adjoint in this set and is rejected.
    """
    if g.kind == GateKind.SX:
        raise ValueError("SX inverse is not a single gate in this set")
    if g.kind.has_phase:
        return Gate(g.kind, g.qubits, -g.phase)
    return g


class Circuit:
    """Ordered gate sequence with exact global phase and ancilla bookkeeping."""

    def __init__(self, n_qubits: int, gates: list[Gate] | None = None,
                 global_phase: PhaseExponent = ZERO,
                 ancillas: frozenset[int] | set[int] = frozenset(),
                 label: str = "",
                 output_permutation: tuple[int, ...] | None = None):
        if n_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        self.n_qubits = n_qubits
        self.gates: list[Gate] = list(gates) if gates else []
        self.global_phase = global_phase
        self.ancillas = frozenset(ancillas)
        self.label = label
        # output_permutation[j] = final physical wire of the content that the
        # reference (fully-connected) construction leaves on wire j. None
        # means identity. Used to align unitaries of routed circuits.
        self.output_permutation = output_permutation
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate):
        for q in g.qubits:
            if not (0 <= q < self.n_qubits):
                raise ValueError(f"qubit {q} out of range for {self.n_qubits}-qubit circuit")

    def add(self, g: Gate) -> "Circuit":
        self._check(g)
        self.gates.append(g)
        return self

    def extend(self, gs) -> "Circuit":
        for g in gs:
            self.add(g)
        return self

    def add_global_phase(self, p: PhaseExponent) -> "Circuit":
        self.global_phase = self.global_phase + p
        return self

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for g in self.gates:
            out[g.kind.value] = out.get(g.kind.value, 0) + 1
        return out

    def __len__(self) -> int:
        return len(self.gates)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Circuit)
                and self.n_qubits == other.n_qubits
                and self.gates == other.gates
                and self.global_phase == other.global_phase
                and self.ancillas == other.ancillas)

    def __repr__(self) -> str:
        return f"Circuit(n={self.n_qubits}, gates={len(self.gates)}, label={self.label!r})"


def circuit_inverse(c: Circuit) -> Circuit:
    """Adjoint circuit: gates reversed and inverted, global phase negated.

    Each inverted Rz contributes a compensating global phase of pi (its
    single-gate inverse is exact only up to sign), so the result's unitary is
    the exact adjoint of the input's.
    """
    inv = Circuit(c.n_qubits, global_phase=-c.global_phase, ancillas=c.ancillas,
                  label=f"inverse({c.label})" if c.label else "")
    for g in reversed(c.gates):
        inv.add(gate_inverse(g))
        if g.kind == GateKind.RZ and not g.phase.is_zero:
            inv.add_global_phase(PI)
    return inv


def circuit_concat(a: Circuit, b: Circuit) -> Circuit:
    """Gates of a then b; global phases add. Qubit counts must match."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit count mismatch: {a.n_qubits} vs {b.n_qubits}")
    return Circuit(a.n_qubits, a.gates + b.gates, a.global_phase + b.global_phase,
                   a.ancillas | b.ancillas, label=a.label or b.label)


def _phase_to_json(p: PhaseExponent) -> dict:
    return {"k": p.k, "m": p.m}


def _phase_from_json(d: dict) -> PhaseExponent:
    return phase_normalize(int(d["k"]), int(d["m"]))


def circuit_to_json(c: Circuit) -> str:
    doc = {
        "n_qubits": c.n_qubits,
        "global_phase": _phase_to_json(c.global_phase),
        "ancillas": sorted(c.ancillas),
        "gates": [],
    }
    if c.label:
        doc["label"] = c.label
    if c.output_permutation is not None:
        doc["output_permutation"] = list(c.output_permutation)
    for g in c.gates:
        entry: dict = {"kind": g.kind.value, "qubits": list(g.qubits)}
        if g.phase is not None:
            entry["phase"] = _phase_to_json(g.phase)
        doc["gates"].append(entry)
    return json.dumps(doc, indent=1)


def circuit_from_json(text: str) -> Circuit:
    doc = json.loads(text)
    c = Circuit(int(doc["n_qubits"]),
                global_phase=_phase_from_json(doc.get("global_phase", {"k": 0, "m": 0})),
                ancillas=frozenset(doc.get("ancillas", [])),
                label=doc.get("label", ""),
                output_permutation=tuple(doc["output_permutation"]) if "output_permutation" in doc else None)
    for entry in doc["gates"]:
        kind = GateKind(entry["kind"])
        phi = _phase_from_json(entry["phase"]) if "phase" in entry else None
        c.add(Gate(kind, tuple(entry["qubits"]), phi))
    return c
