"""Dense statevector/unitary simulation and brute-force permutation oracles.

Gate application uses bit-indexed strides on the amplitude array; no general
matrix-matrix product per gate. Dense double precision, capped at desk scale
(override the cap with the MCX_SIM_MAX_QUBITS env var on bigger machines).

Columns of a unitary are independent during circuit application; the numpy
kernels here vectorize over all columns at once, and results do not depend on
how the work is split.
"""
from __future__ import annotations

import math
import os

import numpy as np

from .ir import Circuit, Gate, GateKind

DEFAULT_MAX_QUBITS = 12
STATEVECTOR_MAX_QUBITS = 20

_SQ2 = 1.0 / math.sqrt(2.0)
_H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)


def max_qubits() -> int:
    return int(os.environ.get("MCX_SIM_MAX_QUBITS", DEFAULT_MAX_QUBITS))


def gate_matrix(g: Gate) -> np.ndarray:
    """Dense matrix of a single gate on its own qubits (little-endian)."""
    if g.kind == GateKind.H:
        return _H.copy()
    if g.kind == GateKind.X:
        return _X.copy()
    if g.kind == GateKind.SX:
        return _SX.copy()
    if g.kind == GateKind.RZ:
        half = g.phase.angle / 2.0
        return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=complex)
    if g.kind == GateKind.PHASE:
        return np.array([[1, 0], [0, np.exp(1j * g.phase.angle)]], dtype=complex)
    if g.kind == GateKind.CPHASE:
        # operands (c, t): basis order |t c> little-endian -> index = c + 2t... we
        # return the matrix in the gate's own operand order (q0=first operand):
        m = np.eye(4, dtype=complex)
        m[3, 3] = np.exp(1j * g.phase.angle)
        return m
    if g.kind == GateKind.CX:
        # first operand controls the second; basis index b = b0 + 2*b1
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = m[2, 2] = 1.0     # control 0
        m[3, 1] = m[1, 3] = 1.0     # control 1: flip target
        return m
    if g.kind == GateKind.SWAP:
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = m[3, 3] = 1.0
        m[1, 2] = m[2, 1] = 1.0
        return m
    raise ValueError(f"unknown gate kind {g.kind}")


def _apply_1q(amps: np.ndarray, mat: np.ndarray, q: int, n: int) -> np.ndarray:
    # amps shape (..., 2**n) with the state axis last
    lead = amps.shape[:-1]
    a = amps.reshape(*lead, 1 << (n - q - 1), 2, 1 << q)
    out = np.einsum("ij,...jk->...ik", mat, a)
    return out.reshape(*lead, 1 << n)


def _apply_gate(amps: np.ndarray, g: Gate, n: int) -> np.ndarray:
    kind = g.kind
    if kind.n_qubits == 1:
        return _apply_1q(amps, gate_matrix(g), g.qubits[0], n)

    idx = np.arange(1 << n)
    a, b = g.qubits
    bits_a = (idx >> a) & 1
    bits_b = (idx >> b) & 1
    if kind == GateKind.CPHASE:
        out = amps.copy()
        mask = (bits_a & bits_b).astype(bool)
        out[..., mask] *= np.exp(1j * g.phase.angle)
        return out
    if kind == GateKind.CX:
        src = idx ^ (bits_a << b)           # flip target where control set
        return amps[..., src]
    if kind == GateKind.SWAP:
        diff = bits_a ^ bits_b
        src = idx ^ ((diff << a) | (diff << b))
        return amps[..., src]
    raise ValueError(f"unknown 2q kind {kind}")


def apply_circuit(c: Circuit, state: np.ndarray) -> np.ndarray:
    """Apply c to a statevector (or batch of them along leading axes)."""
    if c.n_qubits > STATEVECTOR_MAX_QUBITS:
        raise ValueError(f"statevector path capped at {STATEVECTOR_MAX_QUBITS} qubits")
    amps = np.asarray(state, dtype=complex)
    if amps.shape[-1] != (1 << c.n_qubits):
        raise ValueError("state length does not match circuit width")
    for g in c.gates:
        amps = _apply_gate(amps, g, c.n_qubits)
    if not c.global_phase.is_zero:
        amps = amps * np.exp(1j * c.global_phase.angle)
    return amps


def unitary_of(c: Circuit) -> np.ndarray:
    """Dense unitary of the circuit including its tracked global phase."""
    cap = max_qubits()
    if c.n_qubits > cap:
        raise ValueError(f"unitary path capped at {cap} qubits (n={c.n_qubits}); "
                         "set MCX_SIM_MAX_QUBITS to raise the cap")
    dim = 1 << c.n_qubits
    cols = apply_circuit(c, np.eye(dim, dtype=complex))
    # apply_circuit treated each row as a state; rows are input basis columns
    return cols.T.copy()


def basis_state(n: int, a: int) -> np.ndarray:
    v = np.zeros(1 << n, dtype=complex)
    v[a] = 1.0
    return v


def shift_permutation(n: int, sign: int) -> np.ndarray:
    """Permutation matrix for |a> -> |a + sign mod 2**n>."""
    if n < 1:
        raise ValueError("n >= 1")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=complex)
    for a in range(dim):
        m[(a + sign) % dim, a] = 1.0
    return m


def mcx_permutation(n: int, target_position: str = "most") -> np.ndarray:
    """MCX permutation: flip the target bit iff all other bits are 1.

    target_position "most" puts the target on the most significant qubit
    (index n-1); "least" yields the block-diagonal form with the Pauli-X in
    the bottom-right corner.
    """
    if n < 2:
        raise ValueError("n >= 2")
    if target_position not in ("most", "least"):
        raise ValueError("target_position must be 'most' or 'least'")
    dim = 1 << n
    tbit = (n - 1) if target_position == "most" else 0
    controls = [q for q in range(n) if q != tbit]
    m = np.zeros((dim, dim), dtype=complex)
    for a in range(dim):
        out = a ^ (1 << tbit) if all((a >> q) & 1 for q in controls) else a
        m[out, a] = 1.0
    return m


def qft_reference(n: int) -> np.ndarray:
    """Column oracle for the swap-free transform, built from the formula.

    Column a is the tensor product of single-qubit phase states, qubit q
    carrying relative phase e^{2 pi i a / 2^(q+1)} — evaluated directly,
    independent of any circuit.
    """
    dim = 1 << n
    m = np.ones((dim, dim), dtype=complex) / (2 ** (n / 2.0))
    for a in range(dim):
        for b in range(dim):
            ph = 0.0
            for q in range(n):
                if (b >> q) & 1:
                    ph += a / float(1 << (q + 1))
            m[b, a] *= np.exp(2j * np.pi * ph)
    return m


def permutation_unitary(perm: tuple[int, ...] | list[int], n: int) -> np.ndarray:
    """Wire-permutation unitary: content of wire j moves to wire perm[j]."""
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=complex)
    for a in range(dim):
        out = 0
        for j in range(n):
            out |= ((a >> j) & 1) << perm[j]
        m[out, a] = 1.0
    return m


def aligned_unitary(c: Circuit) -> np.ndarray:
    """Unitary of c with its output wire permutation undone.

    Routed circuits leave values on permuted wires; this maps them back so
    the result is directly comparable with the fully-connected reference.
    """
    u = unitary_of(c)
    if c.output_permutation is None:
        return u
    inv = [0] * c.n_qubits
    for j, w in enumerate(c.output_permutation):
        inv[w] = j
    return permutation_unitary(inv, c.n_qubits) @ u


def equiv_global_phase(u: np.ndarray, v: np.ndarray, tol: float = 1e-9) -> tuple[bool, complex]:
    """True iff u = e^{i theta} v entrywise within tol; returns the phase.

    theta is extracted at the largest-magnitude entry of v.
    """
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    idx = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(v[idx]) < tol:
        return bool(np.abs(u).max() <= tol), 1.0 + 0j
    scale = u[idx] / v[idx]
    mag = abs(scale)
    if mag < 1e-15:
        return False, 1.0 + 0j
    scale /= mag
    ok = bool(np.abs(u - scale * v).max() <= tol)
    return ok, scale


def unitary_csv(u: np.ndarray, threshold: float = 1e-12) -> str:
    """Dump nonzero entries as 'row,col,re,im' lines (header included)."""
    lines = ["row,col,re,im"]
    rows, cols = np.nonzero(np.abs(u) > threshold)
    for r, c in zip(rows.tolist(), cols.tolist()):
        z = u[r, c]
        lines.append(f"{r},{c},{z.real:.15g},{z.imag:.15g}")
    return "\n".join(lines) + "\n"


def operator_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Max-entry distance after aligning global phase at v's largest entry.

    Zero iff the operators are equivalent up to a global phase (within
    floating point). Reported metric: phase-aligned max-entry norm.
    """
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    idx = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    scale = u[idx] / v[idx]
    mag = abs(scale)
    if mag < 1e-15:
        return float(np.abs(u - v).max())
    return float(np.abs(u - (scale / mag) * v).max())
