"""Circuit constructors: QFT/AQFT, phase blocks, increments, MCX, ancilla MCX.

The QFT here is the swap-free cascade: qubit k ends holding the phase state
phi_{k+1}(a) = (|0> + e^{2 pi i a / 2^{k+1}} |1>)/sqrt(2). Composed as
IQFT . P . QFT this increments the register exactly; no output reordering is
ever needed, so none is emitted.

All builders are pure functions of their arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .ir import Circuit, circuit_concat, circuit_inverse, cphase, h, phase
from .phase import rotation_phase


@dataclass(frozen=True)
class BuildOptions:
    """Construction knobs shared by the builders.

    cutoff: maximum retained rotation index m (None = exact). Rotations with
    index above the cutoff are omitted (the AQFT truncation).
    architecture_hint: "fc" emits the fully-connected ordering; "lnn"
    delegates to the routing module's linear-chain constructions.
    """
    cutoff: int | None = None
    architecture_hint: str = "fc"

    def __post_init__(self):
        if self.cutoff is not None and self.cutoff < 2:
            raise ValueError("cutoff must be >= 2: an m=1 cutoff would delete the C-R2 gates")
        if self.architecture_hint not in ("fc", "lnn"):
            raise ValueError(f"unknown architecture hint {self.architecture_hint!r}")


DEFAULT = BuildOptions()


def default_cutoff(n: int) -> int:
    """Round-to-nearest log2(n), never below 2."""
    return max(2, round(math.log2(n)))


def build_qft(n: int, opts: BuildOptions = DEFAULT) -> Circuit:
    """Swap-free QFT cascade on n qubits (fully-connected ordering).

    Per target wire, descending from the most significant: H, then controlled
    rotations from lower wires, nearest control first (index m = 2, 3, ...).
    With a finite cutoff c, rotations with m > c are omitted.
    """
    if n < 1:
        raise ValueError("QFT needs at least one qubit")
    if opts.architecture_hint == "lnn":
        from .routing import build_qft_lnn
        return build_qft_lnn(n, opts)
    c = Circuit(n, label=f"qft{n}" if opts.cutoff is None else f"aqft{n}c{opts.cutoff}")
    cut = opts.cutoff
    for k in range(n - 1, -1, -1):
        c.add(h(k))
        for j in range(k - 1, -1, -1):
            m = k - j + 1
            if cut is not None and m > cut:
                break
            c.add(cphase(j, k, rotation_phase(m)))
    return c


def build_phase_block(n: int, sign: int, opts: BuildOptions = DEFAULT) -> Circuit:
    """One Phase(+-2pi/2^q) per qubit q-1: the single-slice increment kernel."""
    if n < 1:
        raise ValueError("phase block needs at least one qubit")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    c = Circuit(n, label=f"p{'+' if sign > 0 else '-'}1,{n}")
    for q in range(n):
        c.add(phase(q, rotation_phase(q + 1, sign)))
    return c


def build_increment(n: int, sign: int, opts: BuildOptions = DEFAULT) -> Circuit:
    """QFT, phase block, IQFT: maps basis |a> to |a + sign mod 2**n>."""
    if opts.architecture_hint == "lnn":
        from .routing import build_increment_lnn
        return build_increment_lnn(n, sign, opts)
    qft = build_qft(n, opts)
    block = circuit_concat(circuit_concat(qft, build_phase_block(n, sign, opts)),
                           circuit_inverse(qft))
    block.label = f"inc{n}" if sign > 0 else f"dec{n}"
    return block


def _embed(sub: Circuit, wires: list[int]) -> list:
    """Gates of sub remapped onto the given wires of a wider register."""
    return [g.on(wires) for g in sub.gates]


def build_mcx(n: int, opts: BuildOptions = DEFAULT) -> Circuit:
    """Multi-controlled X on n qubits, target = highest wire.

    Increment on all n qubits computes the AND of the controls into the
    target bit; a decrement on the lower n-1 qubits uncomputes the controls.
    """
    if n < 2:
        raise ValueError("MCX needs at least 2 qubits")
    if opts.architecture_hint == "lnn":
        from .routing import route_mcx_lnn
        return route_mcx_lnn(n, opts)
    inc = build_increment(n, +1, opts)
    dec = build_increment(n - 1, -1, opts)
    c = Circuit(n, label=f"mcx{n}", global_phase=inc.global_phase + dec.global_phase)
    c.extend(inc.gates)
    c.extend(_embed(dec, list(range(n - 1))))
    return c


def optimal_ancillas(n_c: int) -> int:
    """Ancilla count minimizing depth: round(sqrt(n_c))."""
    if n_c < 2:
        raise ValueError("need at least 2 controls")
    return round(math.sqrt(n_c))


@dataclass(frozen=True)
class ClusterPlan:
    """Partition of n_c controls into r ancilla-fed clusters plus a remainder.

    cluster_sizes holds the controls per cluster (pairwise within 1 of each
    other); the n_r remainder controls feed the central MCX directly.
    """
    n_c: int
    r: int
    cluster_sizes: tuple[int, ...]
    n_r: int

    def __post_init__(self):
        if sum(self.cluster_sizes) + self.n_r != self.n_c:
            raise ValueError("cluster sizes plus remainder must cover all controls")
        if self.cluster_sizes and max(self.cluster_sizes) - min(self.cluster_sizes) > 1:
            raise ValueError("cluster sizes must differ pairwise by at most 1")

    @property
    def central_width(self) -> int:
        return self.r + self.n_r + 1


def _balanced_sizes(total: int, parts: int) -> tuple[int, ...]:
    big = total % parts
    size = total // parts
    return tuple([size + 1] * big + [size] * (parts - big))


def plan_ancilla(n_c: int, r: int, objective: str = "depth") -> ClusterPlan:
    """Choose cluster sizes for r ancillas.

    depth: fill every control into r clusters of ceil(n_c/r) or one less
    (largest first), no remainder; minimizes the parallel-increment depth.
    gates: equal clusters of the size minimizing the elementary-gate count
    model, seeded by round((n_c + r)/(r + 1)) and refined by an exact sweep;
    leftover controls go to the central MCX.
    """
    if r < 1:
        raise ValueError("need at least one ancilla")
    if r >= n_c:
        raise ValueError("clustering is degenerate with r >= n_c")
    if objective == "depth":
        return ClusterPlan(n_c, r, _balanced_sizes(n_c, r), 0)
    if objective != "gates":
        raise ValueError(f"unknown objective {objective!r}")

    from .analyzer import cluster_cost
    d_max = n_c // r
    seed = round((n_c + r) / (r + 1))
    lo, hi = max(1, seed - 2), min(d_max, seed + 2)
    best = None
    while True:
        for d in range(lo, hi + 1):
            cost = cluster_cost(n_c, r, d, arch="lnn", level="ngs")[1]
            if best is None or cost < best[1] or (cost == best[1] and d < best[0]):
                best = (d, cost)
        # extend the window if the minimum sits on its edge
        if best[0] == lo and lo > 1:
            lo = max(1, lo - 2)
        elif best[0] == hi and hi < d_max:
            hi = min(d_max, hi + 2)
        else:
            break
    d = best[0]
    return ClusterPlan(n_c, r, tuple([d] * r), n_c - r * d)


def ancilla_layout(plan: ClusterPlan) -> dict:
    """Wire assignment: per cluster its controls then its ancilla, then the
    remainder controls, target on the highest wire."""
    wires = {"clusters": [], "ancillas": [], "remainder": [], "target": None}
    w = 0
    for size in plan.cluster_sizes:
        wires["clusters"].append(list(range(w, w + size)))
        w += size
        wires["ancillas"].append(w)
        w += 1
    wires["remainder"] = list(range(w, w + plan.n_r))
    w += plan.n_r
    wires["target"] = w
    return wires


def build_mcx_ancilla(n_c: int, plan: ClusterPlan, opts: BuildOptions = DEFAULT) -> Circuit:
    """Ancilla-assisted MCX per the cluster plan (fully-connected layout).

    Each cluster increments (controls, ancilla) so the ancilla carries the
    AND of its controls; the central MCX fires on (ancillas, remainder,
    target); mirrored decrements restore every ancilla to |0>. The target is
    never touched inside the ANC blocks and cluster controls are never
    touched inside the central block.
    """
    if plan.n_c != n_c:
        raise ValueError("plan does not match the control count")
    lay = ancilla_layout(plan)
    width = n_c + plan.r + 1
    c = Circuit(width, label=f"mcx{n_c}+{plan.r}anc",
                ancillas=frozenset(lay["ancillas"]))

    anc_up = []
    for controls, anc in zip(lay["clusters"], lay["ancillas"]):
        inc = build_increment(len(controls) + 1, +1, opts)
        anc_up.append((inc, controls + [anc]))
        c.extend(_embed(inc, controls + [anc]))
        c.add_global_phase(inc.global_phase)

    central = build_mcx(plan.central_width, opts)
    central_wires = lay["ancillas"] + lay["remainder"] + [lay["target"]]
    c.extend(_embed(central, central_wires))
    c.add_global_phase(central.global_phase)

    for inc, wires in anc_up:
        dec = circuit_inverse(inc)
        c.extend(_embed(dec, wires))
        c.add_global_phase(dec.global_phase)
    return c
