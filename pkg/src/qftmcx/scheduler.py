"""ASAP time-slice scheduling and depth measurement.

Gates acting on disjoint qubits share a slice. Greedy ASAP with list order
as the tie-break: every gate starts at the earliest slice consistent with
its per-qubit predecessors, which is depth-optimal for any schedule that
respects per-qubit gate order. Commuting gates are never reordered.

Two duration modes: "abstract" counts every gate as one slot; "ngs" charges
native-gate-set execution windows (a controlled phase spans 4 slots, a
Hadamard 2 when it adjoins a controlled phase on its wire and 3 otherwise,
a SWAP 3, everything else 1). Architecture affects legality only.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ir import Circuit, GateKind
from .routing import Architecture, FC, check_legal


@dataclass
class Schedule:
    slices: list[list[int]]          # slice -> gate indices occupying it
    depth: int
    start: list[int]                 # per-gate start slice
    duration: list[int]              # per-gate duration in slices
    mode: str

    def to_json_obj(self) -> list[list[int]]:
        return [list(s) for s in self.slices]


def _ngs_duration(c: Circuit, i: int, prev_kind: dict[int, GateKind], next_kind: dict[int, GateKind]) -> int:
    g = c.gates[i]
    if g.kind == GateKind.CPHASE:
        return 4
    if g.kind == GateKind.SWAP:
        return 3
    if g.kind == GateKind.H:
        q = g.qubits[0]
        if prev_kind.get((i, q)) == GateKind.CPHASE or next_kind.get((i, q)) == GateKind.CPHASE:
            return 2
        return 3
    return 1


def _wire_neighbors(c: Circuit):
    """Per (gate index, qubit): kind of the previous/next gate on that wire."""
    prev_kind: dict[tuple[int, int], GateKind] = {}
    next_kind: dict[tuple[int, int], GateKind] = {}
    last: dict[int, int] = {}
    for i, g in enumerate(c.gates):
        for q in g.qubits:
            if q in last:
                prev_kind[(i, q)] = c.gates[last[q]].kind
                next_kind[(last[q], q)] = g.kind
            last[q] = i
    return prev_kind, next_kind


def schedule_asap(c: Circuit, arch: Architecture = FC, mode: str = "abstract") -> Schedule:
    """Pack the gate list into time slices, earliest-first."""
    if mode not in ("abstract", "ngs"):
        raise ValueError(f"unknown mode {mode!r}")
    violations = check_legal(c, arch)
    if violations:
        v = violations[0]
        raise ValueError(f"circuit illegal under {arch.kind}: gate {v.gate_index} on {v.qubits} "
                         f"(+{len(violations) - 1} more)")
    if mode == "ngs":
        prev_kind, next_kind = _wire_neighbors(c)
        dur = [_ngs_duration(c, i, prev_kind, next_kind) for i in range(len(c.gates))]
    else:
        dur = [1] * len(c.gates)

    free: dict[int, int] = {}
    start = []
    depth = 0
    for i, g in enumerate(c.gates):
        t = max((free.get(q, 0) for q in g.qubits), default=0)
        start.append(t)
        for q in g.qubits:
            free[q] = t + dur[i]
        depth = max(depth, t + dur[i])

    slices: list[list[int]] = [[] for _ in range(depth)]
    for i in range(len(c.gates)):
        for t in range(start[i], start[i] + dur[i]):
            slices[t].append(i)
    return Schedule(slices, depth, start, dur, mode)


def max_parallelism(s: Schedule) -> int:
    """Largest number of gates running in any single slice."""
    return max((len(sl) for sl in s.slices), default=0)


def circuit_depth(c: Circuit, arch: Architecture = FC, mode: str = "abstract") -> int:
    return schedule_asap(c, arch, mode).depth
