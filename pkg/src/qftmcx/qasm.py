"""QASM-style text export.

Angles print as exact rational multiples of pi (every IR angle is dyadic,
so "pi/4", "3*pi/8", never a decimal). The tracked global phase goes out as
a comment line since plain OPENQASM 2.0 has no global-phase statement.
"""
from __future__ import annotations

from .ir import Circuit, Gate, GateKind
from .phase import PhaseExponent


def pi_multiple(p: PhaseExponent) -> str:
    """Angle 2*pi*k/2**m as an exact multiple of pi."""
    if p.is_zero:
        return "0"
    num = 2 * p.k          # angle = pi * 2k / 2^m
    den = 1 << p.m
    while num % 2 == 0 and den % 2 == 0:
        num //= 2
        den //= 2
    head = "pi" if num == 1 else f"{num}*pi"
    return head if den == 1 else f"{head}/{den}"


_SIMPLE = {GateKind.H: "h", GateKind.X: "x", GateKind.SX: "sx",
           GateKind.CX: "cx", GateKind.SWAP: "swap"}


def gate_to_qasm(g: Gate) -> str:
    qs = ", ".join(f"q[{q}]" for q in g.qubits)
    if g.kind in _SIMPLE:
        return f"{_SIMPLE[g.kind]} {qs};"
    if g.kind == GateKind.RZ:
        return f"rz({pi_multiple(g.phase)}) {qs};"
    if g.kind == GateKind.PHASE:
        return f"p({pi_multiple(g.phase)}) {qs};"
    if g.kind == GateKind.CPHASE:
        return f"cp({pi_multiple(g.phase)}) {qs};"
    raise ValueError(f"no QASM form for {g.kind}")


def circuit_to_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    if not c.global_phase.is_zero:
        lines.append(f"// global phase: {pi_multiple(c.global_phase)}")
    if c.output_permutation is not None:
        lines.append(f"// output wire permutation: {list(c.output_permutation)}")
    lines.extend(gate_to_qasm(g) for g in c.gates)
    return "\n".join(lines) + "\n"
