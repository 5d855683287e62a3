"""QFT-based multi-controlled-X construction, routing, transpilation and
verification toolkit."""

from .phase import PhaseExponent, phase_normalize, dyadic, rotation_phase
from .ir import (Circuit, Gate, GateKind, circuit_concat, circuit_from_json,
                 circuit_inverse, circuit_to_json, gate_inverse)
from .builder import (BuildOptions, ClusterPlan, build_increment, build_mcx,
                      build_mcx_ancilla, build_phase_block, build_qft,
                      default_cutoff, optimal_ancillas, plan_ancilla)
from .routing import (Architecture, FC, LNN, build_aqft_lnn_star,
                      build_qft_lnn, check_legal, route_mcx_lnn)
from .scheduler import Schedule, circuit_depth, max_parallelism, schedule_asap
from .transpiler import (PassReport, decompose_gate_ngs, is_ngs,
                         pass_cancel_cx, pass_cancel_rz,
                         pass_merge_boundary_phases, pass_truncate, transpile)
from .simulator import (aligned_unitary, apply_circuit, basis_state,
                        equiv_global_phase, mcx_permutation, operator_distance,
                        shift_permutation, unitary_of)
from .analyzer import (ComplexityReport, block_metrics, compose_ancilla,
                       measure, mcx_metrics, predict, predict_qft,
                       sweep_ancilla, sweep_cluster, sweep_figure4,
                       transpile_mcx_ancilla)
from .qasm import circuit_to_qasm

__version__ = "0.1.0"
