"""Connectivity models, legality checks, and linear-chain QFT constructions.

The linear-nearest-neighbor QFT interleaves a swap slice before each gate
slice of the fully-connected diagram: control bits climb toward the top wire
(where every Hadamard fires) while finished phase qubits sink toward the
bottom, so the output wire ordering is reversed. Routing for arbitrary
custom graphs is out of scope; Custom architectures support legality
checking only.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .builder import BuildOptions, DEFAULT, build_phase_block
from .ir import Circuit, circuit_inverse, cphase, h, phase, swap
from .phase import rotation_phase


@dataclass(frozen=True)
class Architecture:
    """Qubit connectivity: fully connected, a linear chain, or a custom graph."""
    kind: str                                   # "fc" | "lnn" | "custom"
    edges: frozenset[tuple[int, int]] = frozenset()
    n: int | None = None

    @staticmethod
    def fully_connected() -> "Architecture":
        return Architecture("fc")

    @staticmethod
    def linear_chain() -> "Architecture":
        return Architecture("lnn")

    @staticmethod
    def custom(n: int, edges) -> "Architecture":
        es = set()
        for i, j in edges:
            if i == j:
                raise ValueError("adjacency must be irreflexive")
            es.add((min(i, j), max(i, j)))
        return Architecture("custom", frozenset(es), n)

    @staticmethod
    def from_json(text: str) -> "Architecture":
        doc = json.loads(text)
        return Architecture.custom(int(doc["n"]), doc["edges"])

    def allows(self, a: int, b: int) -> bool:
        if self.kind == "fc":
            return True
        if self.kind == "lnn":
            return abs(a - b) == 1
        return (min(a, b), max(a, b)) in self.edges


FC = Architecture.fully_connected()
LNN = Architecture.linear_chain()


def architecture_from_name(name: str) -> Architecture:
    if name == "fc":
        return FC
    if name == "lnn":
        return LNN
    raise ValueError(f"unknown architecture {name!r}")


@dataclass(frozen=True)
class Violation:
    gate_index: int
    qubits: tuple[int, int]


def check_legal(c: Circuit, arch: Architecture) -> list[Violation]:
    """Every two-qubit gate must act on adjacent qubits under arch."""
    out = []
    for i, g in enumerate(c.gates):
        if len(g.qubits) == 2 and not arch.allows(*g.qubits):
            out.append(Violation(i, (g.qubits[0], g.qubits[1])))
    return out


def build_qft_lnn(n: int, opts: BuildOptions = DEFAULT) -> Circuit:
    """QFT on a linear chain with interleaved swap slices.

    The top wire keeps its phase state put for the whole transform; every
    other value climbs to the wire just below the top, fires its rotation
    onto the top from there, takes its own Hadamard, and sinks back down as
    the values beneath it keep climbing. The (n-1)(n-2)/2 swaps this needs
    are exactly the minimum for making every control/target pair adjacent
    in a valid order (verified exhaustively for small n), and the output
    ordering is the controls reversed with the top wire fixed, recorded in
    output_permutation.

    For n = 2 the fully-connected cascade is already chain-legal and is
    returned unchanged. With a finite cutoff, rotations above the cutoff
    index are dropped but every swap is kept (reducing swaps would raise
    the depth instead).
    """
    if n < 2:
        raise ValueError("LNN QFT needs at least 2 qubits")
    cut = opts.cutoff
    if n == 2:
        from .builder import build_qft
        c = build_qft(2, BuildOptions(cutoff=cut))
        c.label = "qft2-lnn"
        return c

    c = Circuit(n, label=f"qft{n}-lnn" if cut is None else f"aqft{n}c{cut}-lnn")
    top = n - 1
    sub_top = n - 2
    c.add(h(top))
    # content[w]: ('a', k) for the still-computational 1-based qubit k, or
    # ('phi', k) once its Hadamard has fired; qubit k starts on wire k-1
    content: list[tuple[str, int]] = [("a", w + 1) for w in range(n - 1)]
    sub_needed = {(j, k) for k in range(2, n) for j in range(1, k)}
    done: set[tuple[int, int]] = set()
    top_done: set[int] = set()
    fired: set[int] = set()

    def emit_rotation(w_ctrl: int, w_tgt: int, index: int):
        if cut is None or index <= cut:
            c.add(cphase(w_ctrl, w_tgt, rotation_phase(index)))

    while True:
        # gate slice: every due rotation between adjacent (a_j, phi_k) pairs
        for w in range(n - 2):
            lo, hi = content[w], content[w + 1]
            if lo[0] == "a" and hi[0] == "phi":
                j, k = lo[1], hi[1]
                if (j, k) in sub_needed and (j, k) not in done:
                    emit_rotation(w, w + 1, k - j + 1)
                    done.add((j, k))
        v = content[sub_top]
        if v[0] == "a" and all((v[1], k) in done for k in range(v[1] + 1, n)):
            # finished climbing: rotate onto the pinned top, then Hadamard
            if v[1] not in top_done:
                emit_rotation(sub_top, top, n - v[1] + 1)
                top_done.add(v[1])
            else:
                c.add(h(sub_top))
                content[sub_top] = ("phi", v[1])
                fired.add(v[1])
        if len(done) == len(sub_needed) and len(fired) == n - 1:
            break
        # swap slice: move each finished (a_j, phi_k) pair past each other
        w = 0
        while w < n - 2:
            lo, hi = content[w], content[w + 1]
            if lo[0] == "a" and hi[0] == "phi" and (lo[1], hi[1]) in done:
                c.add(swap(w, w + 1))
                content[w], content[w + 1] = hi, lo
                w += 2
            else:
                w += 1

    # the fully-connected cascade leaves phi_{j+1} on wire j; here it ends
    # on wire n-2-j, with the top wire's content in place
    c.output_permutation = tuple([n - 2 - j for j in range(n - 1)] + [n - 1])
    return c


def build_increment_lnn(n: int, sign: int, opts: BuildOptions = DEFAULT) -> Circuit:
    """Chain-legal increment: the inverse transform consumes the reversed
    ordering the forward transform leaves, so no restoring swaps are needed
    and the block ends in natural wire order."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if n == 1:
        from .builder import build_increment
        return build_increment(1, sign, BuildOptions(cutoff=opts.cutoff))
    qft = build_qft_lnn(n, opts)
    out = Circuit(n, label=f"inc{n}-lnn" if sign > 0 else f"dec{n}-lnn")
    out.extend(qft.gates)
    perm = qft.output_permutation or tuple(range(n))
    # phase on the wire currently holding phi_{q+1} (FC convention: wire q)
    pblock = build_phase_block(n, sign)
    for g in pblock.gates:
        out.add(phase(perm[g.qubits[0]], g.phase))
    inv = circuit_inverse(qft)
    out.extend(inv.gates)
    out.add_global_phase(qft.global_phase + inv.global_phase)
    return out


def route_mcx_lnn(n: int, opts: BuildOptions = DEFAULT) -> Circuit:
    """Chain-legal MCX: increment on all n wires, decrement on the lower n-1.

    Both blocks restore natural ordering internally, so the final wire
    ordering is the identity (recorded in output_permutation as such).
    """
    if n < 2:
        raise ValueError("MCX needs at least 2 qubits")
    inc = build_increment_lnn(n, +1, opts)
    dec = build_increment_lnn(n - 1, -1, opts)
    c = Circuit(n, label=f"mcx{n}-lnn", global_phase=inc.global_phase + dec.global_phase)
    c.extend(inc.gates)
    c.extend(g.on(list(range(n - 1))) for g in dec.gates)
    c.output_permutation = tuple(range(n))
    return c


def build_aqft_lnn_star(n: int) -> Circuit:
    """Optimized approximate QFT on a chain for 6 <= n < 12.

    Only index-2 and index-3 rotations are kept; each C-R3 swaps its
    next-nearest control in and back out again, so the wire ordering is not
    reversed and the swap count stays linear. Below n = 6 the cutoff-2
    fully-connected AQFT is already chain-legal, and from n = 12 on the
    truncated chain QFT is the better construction.
    """
    if not (6 <= n < 12):
        raise ValueError("optimized chain AQFT applies for 6 <= n < 12 only")
    c = Circuit(n, label=f"aqft{n}-lnn*")
    for k in range(n - 1, -1, -1):
        c.add(h(k))
        if k >= 1:
            c.add(cphase(k - 1, k, rotation_phase(2)))
        if k >= 2:
            c.add(swap(k - 2, k - 1))
            c.add(cphase(k - 1, k, rotation_phase(3)))
            c.add(swap(k - 2, k - 1))
    return c
