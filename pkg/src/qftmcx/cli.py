"""Command-line front door.

Subcommands: build, route, transpile, schedule, verify, sweep, export.
Exit codes: 0 success, 1 verification failure, 2 usage error. Output files
are byte-deterministic for identical inputs.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import analyzer
from .builder import (BuildOptions, build_increment, build_mcx, build_qft,
                      build_mcx_ancilla, default_cutoff, optimal_ancillas,
                      plan_ancilla)
from .ir import Circuit, circuit_from_json, circuit_to_json
from .qasm import circuit_to_qasm
from .routing import (FC, LNN, Architecture, build_aqft_lnn_star, check_legal)
from .scheduler import max_parallelism, schedule_asap
from .simulator import (aligned_unitary, basis_state, apply_circuit,
                        equiv_global_phase, max_qubits, mcx_permutation,
                        qft_reference, shift_permutation, unitary_csv,
                        unitary_of)
from .transpiler import transpile


class UsageError(Exception):
    pass


def _arch(ns) -> Architecture:
    if getattr(ns, "adjacency", None):
        with open(ns.adjacency) as f:
            return Architecture.from_json(f.read())
    return LNN if ns.arch == "lnn" else FC


def _cutoff(ns) -> int | None:
    if ns.cutoff in (None, "none"):
        return None
    return int(ns.cutoff)


def _load_circuit(path: str) -> Circuit:
    with open(path) as f:
        return circuit_from_json(f.read())


def _write(path: str | None, text: str) -> list[str]:
    if path is None or path == "-":
        sys.stdout.write(text)
        return []
    with open(path, "w") as f:
        f.write(text)
    return [path]


def _build_kind(ns) -> Circuit:
    n = ns.n
    cutoff = _cutoff(ns)
    opts = BuildOptions(cutoff=cutoff, architecture_hint=ns.arch)
    kind = ns.kind
    if kind == "qft":
        return build_qft(n, opts)
    if kind == "aqft":
        cut = cutoff if cutoff is not None else default_cutoff(n)
        if ns.arch == "lnn" and cut == 3 and 6 <= n < 12:
            return build_aqft_lnn_star(n)
        return build_qft(n, BuildOptions(cutoff=cut, architecture_hint=ns.arch))
    if kind == "increment":
        return build_increment(n, ns.sign, opts)
    if kind == "mcx":
        return build_mcx(n, opts)
    if kind == "mcx-ancilla":
        r = ns.ancillas if ns.ancillas else optimal_ancillas(n)
        plan = plan_ancilla(n, r, ns.objective)
        print(f"plan: n_c={plan.n_c} r={plan.r} cluster_sizes={list(plan.cluster_sizes)} "
              f"n_r={plan.n_r} central_width={plan.central_width}")
        return build_mcx_ancilla(n, plan, BuildOptions(cutoff=cutoff))
    raise UsageError(f"unknown build kind {kind}")


def cmd_build(ns) -> int:
    c = _build_kind(ns)
    if ns.out is None:
        raise UsageError("--out is required for circuit output")
    written = _write(ns.out, circuit_to_json(c))
    sched = schedule_asap(c)
    counts = ", ".join(f"{k}:{v}" for k, v in sorted(c.counts().items()))
    print(f"{c.label or ns.kind}: {len(c.gates)} gates ({counts}), depth {sched.depth}")
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_route(ns) -> int:
    c = _load_circuit(ns.circuit)
    arch = _arch(ns)
    violations = check_legal(c, arch)
    if not violations:
        print(f"legal under {arch.kind}: 0 violations")
        return 0
    for v in violations[:20]:
        print(f"violation: gate {v.gate_index} on qubits {v.qubits}")
    print(f"illegal under {arch.kind}: {len(violations)} violations")
    return 1


def cmd_transpile(ns) -> int:
    c = _load_circuit(ns.circuit)
    arch = _arch(ns)
    lowered, reports = transpile(c, arch, _cutoff(ns))
    if ns.out is None:
        raise UsageError("--out is required for circuit output")
    _write(ns.out, circuit_to_json(lowered))
    print(json.dumps([r.to_json_obj() for r in reports], indent=1))
    print(f"native circuit: {len(lowered.gates)} gates, wrote {ns.out}")
    return 0


def cmd_schedule(ns) -> int:
    c = _load_circuit(ns.circuit)
    s = schedule_asap(c, _arch(ns), ns.mode)
    print(f"depth {s.depth}, max parallelism {max_parallelism(s)}")
    if ns.slices:
        print(json.dumps(s.to_json_obj()))
    return 0


def _verify_mcx(c: Circuit, n: int, tol: float) -> bool:
    u = aligned_unitary(c)
    ok, _ = equiv_global_phase(u, mcx_permutation(n), tol)
    return ok


def cmd_verify(ns) -> int:
    tol = 1e-9
    n = ns.n
    cap = max_qubits()
    kind = ns.kind
    opts = BuildOptions(cutoff=_cutoff(ns), architecture_hint=ns.arch)
    if kind == "mcx-ancilla":
        r = ns.ancillas if ns.ancillas else optimal_ancillas(n)
        width = n + r + 1
    else:
        width = n
    if width > cap:
        print(f"error: {width} qubits exceeds the simulator cap {cap} "
              "(set MCX_SIM_MAX_QUBITS to override)", file=sys.stderr)
        return 2
    if kind == "mcx":
        c = build_mcx(n, opts)
        if ns.transpiled:
            c, _ = transpile(c, _arch(ns), _cutoff(ns))
        ok = _verify_mcx(c, n, tol)
        label = f"mcx {n} ({ns.arch})"
    elif kind == "increment":
        c = build_increment(n, ns.sign, opts)
        ok, _ = equiv_global_phase(aligned_unitary(c), shift_permutation(n, ns.sign), tol)
        label = f"increment {n} sign {ns.sign:+d}"
    elif kind == "qft":
        c = build_qft(n, opts)
        u = aligned_unitary(c)
        if _cutoff(ns) is None:
            ok = bool(np.abs(u - qft_reference(n)).max() <= tol)   # column test
        else:
            ok = bool(np.abs(u @ u.conj().T - np.eye(1 << n)).max() <= tol)
        label = f"qft {n} ({ns.arch})"
    elif kind == "mcx-ancilla":
        plan = plan_ancilla(n, r, ns.objective)
        c = build_mcx_ancilla(n, plan, BuildOptions(cutoff=_cutoff(ns)))
        ok = True
        anc = sorted(c.ancillas)
        target = c.n_qubits - 1
        controls = [q for q in range(c.n_qubits) if q != target and q not in anc]
        for a in range(1 << n):
            inp = 0
            for bit, q in enumerate(controls):
                inp |= ((a >> bit) & 1) << q
            out = apply_circuit(c, basis_state(c.n_qubits, inp))
            expect = inp | ((1 << target) if all((a >> b) & 1 for b in range(n)) else 0)
            if abs(abs(out[expect]) - 1.0) > tol:
                ok = False
                break
        label = f"mcx-ancilla {n} r={r}"
    else:
        raise UsageError(f"unknown verify kind {kind}")
    if getattr(ns, "dump_unitary", None) and kind != "mcx-ancilla":
        _write(ns.dump_unitary, unitary_csv(aligned_unitary(c)))
    print(f"{label}: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    v = int(text)
    return v, v


def cmd_sweep(ns) -> int:
    if ns.kind == "figure4":
        lo, hi = _parse_range(ns.n)
        rows = analyzer.sweep_figure4(lo, hi)
        x_name = "n"
    elif ns.kind == "cluster":
        rows = analyzer.sweep_cluster(ns.nc, ns.r, ns.arch, ns.level)
        x_name = "delta_nc"
    elif ns.kind == "ancilla":
        lo, hi = _parse_range(ns.rrange)
        rows = analyzer.sweep_ancilla(ns.nc, lo, hi, ns.arch, ns.level)
        x_name = "r"
    else:
        raise UsageError(f"unknown sweep kind {ns.kind}")
    csv = analyzer.rows_to_csv(rows, x_name)
    written = _write(ns.out, csv)
    if ns.plot:
        if not written:
            raise UsageError("--plot needs --out to name the image")
        from .plotting import render_sweep
        img = written[0].rsplit(".", 1)[0] + ".png"
        render_sweep(rows, x_name, img, title=f"sweep {ns.kind}")
        print(f"wrote {img}")
    if written:
        print(f"wrote {written[0]} ({len(rows)} rows)")
    return 0


def cmd_export(ns) -> int:
    c = _load_circuit(ns.circuit)
    if ns.format == "qasm":
        text = circuit_to_qasm(c)
    elif ns.format == "json":
        text = circuit_to_json(c)
    else:
        raise UsageError(f"unknown format {ns.format}")
    written = _write(ns.out, text)
    for path in written:
        print(f"wrote {path}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qftmcx",
                                description="QFT-based multi-controlled-X toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, arch=True, cutoff=True):
        if arch:
            sp.add_argument("--arch", choices=("fc", "lnn"), default="fc")
        if cutoff:
            sp.add_argument("--cutoff", default=None,
                            help="AQFT truncation index (integer or 'none')")

    b = sub.add_parser("build", help="construct a circuit and write JSON")
    b.add_argument("kind", choices=("qft", "aqft", "increment", "mcx", "mcx-ancilla"))
    b.add_argument("n", type=int)
    add_common(b)
    b.add_argument("--sign", type=int, choices=(1, -1), default=1)
    b.add_argument("--ancillas", type=int, default=None)
    b.add_argument("--objective", choices=("depth", "gates"), default="depth")
    b.add_argument("--out", required=False)
    b.set_defaults(fn=cmd_build)

    r = sub.add_parser("route", help="check a circuit against an architecture")
    r.add_argument("circuit")
    add_common(r, cutoff=False)
    r.add_argument("--adjacency", help="custom adjacency JSON file")
    r.set_defaults(fn=cmd_route)

    t = sub.add_parser("transpile", help="lower a circuit to the native gate set")
    t.add_argument("circuit")
    add_common(t)
    t.add_argument("--out", required=False)
    t.set_defaults(fn=cmd_transpile)

    s = sub.add_parser("schedule", help="ASAP-schedule a circuit and report depth")
    s.add_argument("circuit")
    add_common(s, cutoff=False)
    s.add_argument("--mode", choices=("abstract", "ngs"), default="abstract")
    s.add_argument("--slices", action="store_true", help="print the slice table")
    s.set_defaults(fn=cmd_schedule)

    v = sub.add_parser("verify", help="check a construction against its oracle")
    v.add_argument("kind", choices=("qft", "increment", "mcx", "mcx-ancilla"))
    v.add_argument("n", type=int)
    add_common(v)
    v.add_argument("--sign", type=int, choices=(1, -1), default=1)
    v.add_argument("--ancillas", type=int, default=None)
    v.add_argument("--objective", choices=("depth", "gates"), default="depth")
    v.add_argument("--transpiled", action="store_true",
                   help="verify the transpiled form instead of the abstract one")
    v.add_argument("--dump-unitary", default=None,
                   help="write the verified unitary's nonzero entries as CSV")
    v.set_defaults(fn=cmd_verify)

    w = sub.add_parser("sweep", help="emit a complexity sweep as CSV")
    w.add_argument("kind", choices=("figure4", "cluster", "ancilla"))
    w.add_argument("--n", default="3..30", help="n range for figure4, e.g. 3..30")
    w.add_argument("--nc", type=int, default=100)
    w.add_argument("--r", dest="r", type=int, default=5)
    w.add_argument("--r-range", dest="rrange", default="1..20")
    w.add_argument("--arch", choices=("fc", "lnn"), default="lnn")
    w.add_argument("--level", choices=("abstract", "ngs"), default="ngs")
    w.add_argument("--out", default=None, help="CSV path (default stdout)")
    w.add_argument("--plot", action="store_true",
                   help="also render a PNG next to the CSV")
    w.set_defaults(fn=cmd_sweep)

    e = sub.add_parser("export", help="export a circuit file as QASM or JSON")
    e.add_argument("circuit")
    e.add_argument("--format", choices=("qasm", "json"), default="qasm")
    e.add_argument("--out", default=None)
    e.set_defaults(fn=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.fn(ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
