import random

import numpy as np
import pytest

from qftmcx.builder import build_qft
from qftmcx.ir import (Circuit, Gate, GateKind, circuit_concat, circuit_from_json,
                       circuit_inverse, circuit_to_json, cphase, cx, gate_inverse,
                       h, phase, rz, swap, sx, x)
from qftmcx.phase import dyadic, phase_normalize
from qftmcx.simulator import equiv_global_phase, gate_matrix, unitary_of


def random_circuit(rng: random.Random, n: int, n_gates: int, allow_sx: bool = True) -> Circuit:
    c = Circuit(n)
    kinds = ["h", "x", "rz", "phase", "cphase", "cx", "swap"] + (["sx"] if allow_sx else [])
    for _ in range(n_gates):
        kind = rng.choice(kinds)
        q = rng.randrange(n)
        if kind in ("cphase", "cx", "swap") and n >= 2:
            q2 = rng.choice([i for i in range(n) if i != q])
            if kind == "cphase":
                c.add(cphase(q, q2, dyadic(rng.randrange(1, 64), 6)))
            elif kind == "cx":
                c.add(cx(q, q2))
            else:
                c.add(swap(q, q2))
        elif kind == "rz":
            c.add(rz(q, dyadic(rng.randrange(1, 64), 6)))
        elif kind == "phase":
            c.add(phase(q, dyadic(rng.randrange(1, 64), 6)))
        elif kind == "h":
            c.add(h(q))
        elif kind == "sx":
            c.add(sx(q))
        else:
            c.add(x(q))
    return c


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate(GateKind.CX, (1, 1))
    with pytest.raises(ValueError):
        Gate(GateKind.RZ, (0,))          # missing phase
    with pytest.raises(ValueError):
        Gate(GateKind.H, (0,), dyadic(1, 1))
    with pytest.raises(ValueError):
        Circuit(3).add(h(3))


@pytest.mark.parametrize("g", [
    h(2), x(0), cx(0, 1), swap(1, 2),
    phase(1, dyadic(1, 2)), cphase(0, 1, dyadic(1, 2)), rz(0, dyadic(1, 3)),
])
def test_gate_inverse_matrix(g):
    u = gate_matrix(g)
    v = gate_matrix(gate_inverse(g))
    prod = u @ v
    dim = u.shape[0]
    # exact identity for all kinds except Rz, which inverts up to a sign
    ok, _ = equiv_global_phase(prod, np.eye(dim), 1e-12)
    assert ok
    if g.kind != GateKind.RZ:
        assert np.abs(prod - np.eye(dim)).max() < 1e-12


def test_gate_inverse_examples():
    g = cphase(0, 1, dyadic(1, 2))       # 2pi/4
    assert gate_inverse(g).phase == dyadic(3, 2)
    assert gate_inverse(h(2)) == h(2)
    assert gate_inverse(rz(0, dyadic(1, 2))).phase == dyadic(3, 2)
    with pytest.raises(ValueError):
        gate_inverse(sx(0))


def test_circuit_inverse_is_adjoint():
    rng = random.Random(42)
    for _ in range(30):
        n = rng.randrange(2, 7)
        c = random_circuit(rng, n, rng.randrange(1, 25), allow_sx=False)
        u = unitary_of(c)
        v = unitary_of(circuit_inverse(c))
        assert np.abs(v - u.conj().T).max() < 1e-12


def test_circuit_inverse_involution():
    rng = random.Random(43)
    c = random_circuit(rng, 4, 20, allow_sx=False)
    back = circuit_inverse(circuit_inverse(c))
    assert back.gates == c.gates
    assert back.global_phase == c.global_phase


def test_circuit_inverse_reverses():
    c = Circuit(2, [h(0), cx(0, 1)])
    inv = circuit_inverse(c)
    assert [g.kind for g in inv.gates] == [GateKind.CX, GateKind.H]


def test_inverse_of_empty():
    c = Circuit(3)
    assert circuit_inverse(c).gates == []


def test_concat():
    rng = random.Random(44)
    c = random_circuit(rng, 3, 12, allow_sx=False)
    joined = circuit_concat(c, circuit_inverse(c))
    u = unitary_of(joined)
    ok, _ = equiv_global_phase(u, np.eye(8), 1e-10)
    assert ok
    empty = Circuit(3)
    assert circuit_concat(empty, c).gates == c.gates
    with pytest.raises(ValueError):
        circuit_concat(Circuit(2), Circuit(3))


def test_concat_qft_iqft_identity():
    qft = build_qft(3)
    u = unitary_of(circuit_concat(qft, circuit_inverse(qft)))
    assert np.abs(u - np.eye(8)).max() < 1e-12


def test_json_roundtrip():
    rng = random.Random(45)
    for _ in range(10):
        c = random_circuit(rng, 4, 15)
        c.label = "fuzz"
        text = circuit_to_json(c)
        back = circuit_from_json(text)
        assert back == c
        assert circuit_to_json(back) == text


def test_json_kind_strings():
    c = Circuit(2, [h(0), cphase(0, 1, dyadic(1, 2))], ancillas={1})
    text = circuit_to_json(c)
    assert '"kind": "h"' in text and '"kind": "cphase"' in text
    assert '"ancillas": [\n  1\n ]' in text or '"ancillas": [1]' in text.replace("\n ", "").replace("\n", "")


def test_phase_pi_is_z():
    z = gate_matrix(phase(0, phase_normalize(1, 1)))
    assert np.abs(z - np.diag([1, -1])).max() < 1e-15


def test_cphase_symmetric():
    a = unitary_of(Circuit(2, [cphase(0, 1, dyadic(1, 2))]))
    b = unitary_of(Circuit(2, [cphase(1, 0, dyadic(1, 2))]))
    assert np.abs(a - b).max() < 1e-15


def test_json_keeps_output_permutation():
    from qftmcx.routing import build_qft_lnn
    c = build_qft_lnn(4)
    back = circuit_from_json(circuit_to_json(c))
    assert back.output_permutation == c.output_permutation == (2, 1, 0, 3)
