"""Native-gate-set lowering and the optimization passes.

Target set: {CX, Rz, SX, X}. The merge pass implements the boundary-phase
optimization that makes the increment/decrement phase blocks free:

  * H . Phase(pi) . H on one wire collapses to X.
  * A controlled-phase pair CP(theta), CP(theta') on the same value pair,
    with only diagonal gates and at most one X on the control path between
    them, merges into a single CP (exponents add; an X on the control flips
    the sign of the second exponent), leaving at most one residual Phase.
  * H . CP(pi) . H (H's on one operand wire, optionally with a Phase(pi)
    alongside) rewrites to a CX (plus an X).
  * A SWAP pair enclosing gates confined to the swapped wires cancels after
    relabeling the enclosed gates.

Every rewrite is exactly unitary-preserving (global phase tracked in the
circuit); passes are identity on circuits without their pattern. Wire-pair
tracking follows values through SWAPs, so the same rules fire on routed
linear-chain circuits.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ir import Circuit, Gate, GateKind, cphase, cx, phase, rz, sx, x
from .phase import PI, ZERO, PhaseExponent, phase_normalize, rotation_index
from .routing import FC, Architecture, check_legal
from .scheduler import circuit_depth


@dataclass(frozen=True)
class PassReport:
    name: str
    gates_removed: int
    gates_added: int
    depth_before: int
    depth_after: int

    def to_json_obj(self) -> dict:
        return {"pass": self.name, "gates_removed": self.gates_removed,
                "gates_added": self.gates_added, "depth_before": self.depth_before,
                "depth_after": self.depth_after}


NGS_KINDS = frozenset({GateKind.CX, GateKind.RZ, GateKind.SX, GateKind.X})


def is_ngs(c: Circuit) -> bool:
    return all(g.kind in NGS_KINDS for g in c.gates)


def decompose_gate_ngs(g: Gate) -> tuple[list[Gate], PhaseExponent]:
    """Rewrite one gate into {CX, Rz, SX, X} plus an exact global phase.

    Angles are stored mod 2pi, and Rz(2pi) = -I, so every Rz emitted with a
    wrapped-negative angle carries a compensating global phase of pi; the
    compensations below make each identity exact, not merely up to phase.
    """
    k = g.kind
    if k in (GateKind.X, GateKind.SX, GateKind.CX, GateKind.RZ):
        return [g], ZERO
    if k == GateKind.PHASE:
        # diag(1, e^{i phi}) = e^{i phi/2} Rz(phi)
        return [rz(g.qubits[0], g.phase)], g.phase.half()
    if k == GateKind.H:
        # H = e^{i pi/4} Rz(pi/2) SX Rz(pi/2)
        q = g.qubits[0]
        quarter = phase_normalize(1, 2)
        return [rz(q, quarter), sx(q), rz(q, quarter)], phase_normalize(1, 3)
    if k == GateKind.SWAP:
        a, b = g.qubits
        return [cx(a, b), cx(b, a), cx(a, b)], ZERO
    if k == GateKind.CPHASE:
        c, t = g.qubits
        theta = g.phase
        half = theta.half()
        if half.is_zero:
            return [], ZERO
        # CP(theta) = e^{i theta/4} Rz_c(h) CX Rz_t(-h) CX Rz_t(h); the middle
        # Rz stores -h as 2pi-h, costing one factor of -1.
        gates = [rz(c, half), cx(c, t), rz(t, -half), cx(c, t), rz(t, half)]
        return gates, half.half() + PI
    raise ValueError(f"cannot decompose {k}")


# ---------------------------------------------------------------------------
# merge pass internals: the gate list is held with tombstones (None) so every
# rewrite is a set of in-place replacements and deletions.

_DIAG_1Q = (GateKind.RZ, GateKind.PHASE)


class _Worklist:
    def __init__(self, c: Circuit):
        self.n = c.n_qubits
        self.gates: list[Gate | None] = list(c.gates)

    def live(self):
        return [g for g in self.gates if g is not None]

    def next_on_wire(self, i: int, q: int) -> int | None:
        for j in range(i + 1, len(self.gates)):
            g = self.gates[j]
            if g is not None and q in g.qubits:
                return j
        return None


def _try_hzh(w: _Worklist, i: int) -> bool:
    """H . Phase(pi) . H on one wire -> X."""
    g = w.gates[i]
    if g is None or g.kind != GateKind.H:
        return False
    q = g.qubits[0]
    j = w.next_on_wire(i, q)
    if j is None:
        return False
    mid = w.gates[j]
    if mid.kind != GateKind.PHASE or mid.phase != PI:
        return False
    k = w.next_on_wire(j, q)
    if k is None or w.gates[k].kind != GateKind.H:
        return False
    w.gates[i] = None
    w.gates[j] = x(q)
    w.gates[k] = None
    return True


def _try_swap_sandwich(w: _Worklist, i: int) -> bool:
    """SWAP(a,b) .. gates on {a,b} only .. SWAP(a,b) -> relabeled gates."""
    g = w.gates[i]
    if g is None or g.kind != GateKind.SWAP:
        return False
    a, b = g.qubits
    pair = {a, b}
    inside: list[int] = []
    for j in range(i + 1, len(w.gates)):
        gj = w.gates[j]
        if gj is None:
            continue
        touched = pair.intersection(gj.qubits)
        if not touched:
            continue
        if gj.kind == GateKind.SWAP and set(gj.qubits) == pair:
            relabel = {a: b, b: a}
            for idx in inside:
                w.gates[idx] = w.gates[idx].on({q: relabel.get(q, q) for q in w.gates[idx].qubits})
            w.gates[i] = None
            w.gates[j] = None
            return True
        if not pair.issuperset(gj.qubits):
            return False
        inside.append(j)
    return False


def _try_cp_merge(w: _Worklist, i: int) -> bool:
    """Merge a CP pair on one value pair through diagonals, SWAPs and one X.

    With CP(theta) ... X on the control path ... CP(theta'), the pair plus
    any absorbed Phase(phi) on the target path equals CP(theta - theta')
    followed by Phase(phi + theta'); without the X the exponents simply add.
    """
    g = w.gates[i]
    if g is None or g.kind != GateKind.CPHASE:
        return False
    c_cur, t_cur = g.qubits
    theta = g.phase
    absorbed: list[int] = []
    phi = ZERO
    x_seen = 0
    for j in range(i + 1, len(w.gates)):
        gj = w.gates[j]
        if gj is None:
            continue
        qs = set(gj.qubits)
        if c_cur not in qs and t_cur not in qs:
            continue
        kind = gj.kind
        if kind == GateKind.SWAP:
            m = dict(zip(gj.qubits, reversed(gj.qubits)))
            c_cur = m.get(c_cur, c_cur)
            t_cur = m.get(t_cur, t_cur)
            continue
        if kind == GateKind.CPHASE:
            if qs == {c_cur, t_cur}:
                theta2 = gj.phase
                if x_seen:
                    alpha = theta - theta2
                    beta = phi + theta2
                else:
                    alpha = theta + theta2
                    beta = phi
                w.gates[i] = cphase(g.qubits[0], g.qubits[1], alpha) if not alpha.is_zero else None
                residual = None
                if not beta.is_zero:
                    if absorbed:
                        # sit the residual where the first absorbed phase was
                        # (same value path, ahead of any trailing swaps)
                        residual = (absorbed[0], w.gates[absorbed[0]].qubits[0])
                    else:
                        residual = (j, t_cur)
                for idx in absorbed:
                    w.gates[idx] = None
                w.gates[j] = None
                if residual is not None:
                    pos, wire = residual
                    w.gates[pos] = phase(wire, beta)
                return True
            continue  # other diagonal pair: commutes, keep walking
        if kind == GateKind.PHASE and qs == {t_cur}:
            phi = phi + gj.phase
            absorbed.append(j)
            continue
        if kind in _DIAG_1Q:
            continue  # diagonal on control or an Rz on target: stays in place
        if kind == GateKind.X and qs == {c_cur} and x_seen == 0:
            x_seen = 1
            continue
        return False
    return False


def _try_x_past_swap(w: _Worklist, i: int) -> bool:
    """X then SWAP on its wire -> SWAP then X on the partner wire.

    The X follows its value through the swap onto a wire that has gone
    idle, so the busy wire's chain is not held up. The X lands in a vacant
    slot after the swap (before anything else touches the destination
    wire); if none exists, the two gates trade places when nothing between
    them touches the swap.
    """
    g = w.gates[i]
    if g is None or g.kind != GateKind.X:
        return False
    q = g.qubits[0]
    j = w.next_on_wire(i, q)
    if j is None:
        return False
    sw = w.gates[j]
    if sw.kind != GateKind.SWAP:
        return False
    a, b = sw.qubits
    other = b if q == a else a
    nxt = w.next_on_wire(j, other)
    limit = nxt if nxt is not None else len(w.gates)
    for k in range(j + 1, limit):
        if w.gates[k] is None:
            w.gates[i] = None
            w.gates[k] = x(other)
            return True
    for k in range(i + 1, j):
        gk = w.gates[k]
        if gk is not None and (a in gk.qubits or b in gk.qubits):
            return False
    w.gates[i] = sw
    w.gates[j] = x(other)
    return True


def _try_hcph(w: _Worklist, i: int) -> bool:
    """H . CP(pi) . H (H's on wire q, optional Phase(pi) on q) -> CX (+ X)."""
    g = w.gates[i]
    if g is None or g.kind != GateKind.H:
        return False
    q = g.qubits[0]
    cp_idx = None
    ph_idx = None
    j = i
    while True:
        j = w.next_on_wire(j, q)
        if j is None:
            return False
        gj = w.gates[j]
        if gj.kind == GateKind.H:
            break
        if gj.kind == GateKind.CPHASE and gj.phase == PI and q in gj.qubits and cp_idx is None:
            cp_idx = j
            continue
        if gj.kind == GateKind.PHASE and gj.phase == PI and ph_idx is None:
            ph_idx = j
            continue
        return False
    if cp_idx is None:
        return False
    other = next(qq for qq in w.gates[cp_idx].qubits if qq != q)
    # the residual X acts on the CX target and commutes with it; emit it at
    # the first H's slot so it never delays the following rotation chain
    w.gates[i] = x(q) if ph_idx is not None else None
    w.gates[j] = None
    w.gates[cp_idx] = cx(other, q)
    if ph_idx is not None:
        w.gates[ph_idx] = None
    return True


def pass_merge_boundary_phases(c: Circuit) -> Circuit:
    """Absorb increment/decrement phase blocks into the transform boundary.

    Applies the rewrite family above to a fixed point. Identity on circuits
    without the patterns; the unitary is always preserved exactly.
    """
    w = _Worklist(c)
    changed = True
    while changed:
        changed = False
        for i in range(len(w.gates)):
            if w.gates[i] is None:
                continue
            if (_try_hzh(w, i) or _try_swap_sandwich(w, i)
                    or _try_cp_merge(w, i) or _try_hcph(w, i)
                    or _try_x_past_swap(w, i)):
                changed = True
    return Circuit(c.n_qubits, w.live(), c.global_phase, c.ancillas, c.label,
                   c.output_permutation)


def pass_truncate(c: Circuit, cutoff: int) -> Circuit:
    """Drop controlled rotations with index above the cutoff (approximation)."""
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    kept = [g for g in c.gates
            if not (g.kind == GateKind.CPHASE and rotation_index(g.phase) > cutoff)]
    return Circuit(c.n_qubits, kept, c.global_phase, c.ancillas, c.label, c.output_permutation)


def pass_decompose(c: Circuit) -> Circuit:
    out = Circuit(c.n_qubits, global_phase=c.global_phase, ancillas=c.ancillas,
                  label=c.label, output_permutation=c.output_permutation)
    for g in c.gates:
        gates, ph = decompose_gate_ngs(g)
        out.extend(gates)
        out.add_global_phase(ph)
    return out


def _merge_diag_pair(a: Gate, b: Gate) -> tuple[Gate | None, PhaseExponent]:
    """Combine two diagonal 1q gates on one wire into at most one gate.

    Returns (gate or None, extra global phase). Phase pairs add exactly;
    anything involving an Rz merges as an Rz, converting Phase via
    Phase(phi) = e^{i phi/2} Rz(phi) and charging pi when the angle sum
    wraps past 2pi (Rz(2pi) = -I).
    """
    q = a.qubits[0]
    extra = ZERO
    if a.kind == GateKind.PHASE and b.kind == GateKind.PHASE:
        tot = a.phase + b.phase
        return (None, ZERO) if tot.is_zero else (phase(q, tot), ZERO)
    pa, pb = a.phase, b.phase
    if a.kind == GateKind.PHASE:
        extra = extra + pa.half()
    if b.kind == GateKind.PHASE:
        extra = extra + pb.half()
    m = max(pa.m, pb.m)
    raw = (pa.k << (m - pa.m)) + (pb.k << (m - pb.m))
    if raw >= (1 << m):
        extra = extra + PI
    tot = phase_normalize(raw, m)
    return (None, extra) if tot.is_zero else (rz(q, tot), extra)


def pass_cancel_rz(c: Circuit) -> Circuit:
    """Sum consecutive same-wire Rz/Phase gates; drop zero-angle results."""
    gates: list[Gate | None] = []
    last_diag: dict[int, int | None] = {}
    last_any: dict[int, int] = {}
    extra = ZERO
    for g in c.gates:
        if g.kind in _DIAG_1Q:
            q = g.qubits[0]
            prev = last_diag.get(q)
            if prev is not None and gates[prev] is not None:
                merged, ph = _merge_diag_pair(gates[prev], g)
                extra = extra + ph
                gates[prev] = merged
                if merged is None:
                    last_diag[q] = None
                continue
            gates.append(g)
            last_diag[q] = len(gates) - 1
            last_any[q] = len(gates) - 1
        else:
            gates.append(g)
            for q in g.qubits:
                last_diag[q] = None
                last_any[q] = len(gates) - 1
    live = [g for g in gates if g is not None]
    return Circuit(c.n_qubits, live, c.global_phase + extra, c.ancillas, c.label,
                   c.output_permutation)


def pass_cancel_cx(c: Circuit) -> Circuit:
    """Remove adjacent identical CX pairs (sliding past control-side Rz/Phase)."""
    gates: list[Gate | None] = list(c.gates)

    def next_on(i: int, q: int) -> int | None:
        for j in range(i + 1, len(gates)):
            g = gates[j]
            if g is not None and q in g.qubits:
                return j
        return None

    changed = True
    while changed:
        changed = False
        for i in range(len(gates)):
            g = gates[i]
            if g is None or g.kind != GateKind.CX:
                continue
            ctrl, tgt = g.qubits
            j = i
            while True:
                j = next_on(j, tgt)
                if j is None:
                    break
                gj = gates[j]
                if gj.kind == GateKind.CX and gj.qubits == (ctrl, tgt):
                    # everything on the control wire between must commute
                    ok = True
                    k = i
                    while True:
                        k = next_on(k, ctrl)
                        if k == j:
                            break
                        gk = gates[k]
                        if not (gk.kind in _DIAG_1Q and gk.qubits == (ctrl,)):
                            ok = False
                            break
                    if ok:
                        gates[i] = None
                        gates[j] = None
                        changed = True
                    break
                if gj.kind in _DIAG_1Q and gj.qubits == (ctrl,):
                    continue
                break
    live = [g for g in gates if g is not None]
    return Circuit(c.n_qubits, live, c.global_phase, c.ancillas, c.label,
                   c.output_permutation)


def transpile(c: Circuit, arch: Architecture = FC, cutoff: int | None = None
              ) -> tuple[Circuit, list[PassReport]]:
    """Full pipeline: merge boundaries, truncate, lower to the native set,
    cancel rotations, cancel CX pairs. Output contains only {cx, rz, sx, x}.
    """
    if check_legal(c, arch):
        raise ValueError(f"input circuit is illegal under {arch.kind}; route it first")
    reports = []
    cur = c

    def run(name: str, fn) -> Circuit:
        nonlocal cur
        before_gates, before_depth = len(cur.gates), circuit_depth(cur, FC)
        nxt = fn(cur)
        after_gates, after_depth = len(nxt.gates), circuit_depth(nxt, FC)
        reports.append(PassReport(name,
                                  gates_removed=max(0, before_gates - after_gates),
                                  gates_added=max(0, after_gates - before_gates),
                                  depth_before=before_depth, depth_after=after_depth))
        cur = nxt
        return nxt

    run("merge-boundary-phases", pass_merge_boundary_phases)
    if cutoff is not None:
        run("truncate", lambda cc: pass_truncate(cc, cutoff))
    run("decompose-ngs", pass_decompose)
    run("cancel-rz", pass_cancel_rz)
    run("cancel-cx", pass_cancel_cx)
    return cur, reports
