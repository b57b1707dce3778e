"""Toffoli-optimized table-lookup circuit synthesis, verification, and costing."""

from .circuit import (
    Circuit,
    CircuitError,
    Gate,
    GateKind,
    QubitRef,
    RegisterSpec,
    ResourceEstimate,
    Role,
    append_gate,
    check_temp_and_pairing,
    count_resources,
    new_circuit,
)
from .gatefile import ParseError, parse_circuit, serialize_circuit
from .iteration import IterationSpec, IterationWindow, emit_unary_iteration
from .qrom import (
    LookupTable,
    QromPlan,
    SequentialSpec,
    XorSchedule,
    build_qrom,
    build_sequential_qroms,
    compute_xor_schedule,
    emit_copy,
    emit_restore,
    emit_select,
    plan_qrom,
    registers_for_plan,
)
from .baselines import SwapNetworkPlan, build_plain_qrom, build_selectswap_dirty
from .costs import (
    CostBreakdown,
    OptimizationResult,
    SweepRow,
    cost_bit_packet,
    cost_power2_packet,
    cost_prior_art,
    cost_select_copy,
    cost_sequential_fresh,
    cost_sequential_inplace,
    cost_uncompute,
    improvement_sweep,
    optimize_parameters,
    sweep_rows_to_csv,
)
from .simulate import (
    BitState,
    SimulationError,
    VerificationFailure,
    VerificationReport,
    batch_simulate,
    qubit_indexer,
    simulate,
    verify_qrom,
)
from .tablefile import format_table, load_table_file, parse_table_text

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CircuitError",
    "Gate",
    "GateKind",
    "QubitRef",
    "RegisterSpec",
    "ResourceEstimate",
    "Role",
    "append_gate",
    "check_temp_and_pairing",
    "count_resources",
    "new_circuit",
    "ParseError",
    "parse_circuit",
    "serialize_circuit",
    "IterationSpec",
    "IterationWindow",
    "emit_unary_iteration",
    "LookupTable",
    "QromPlan",
    "SequentialSpec",
    "XorSchedule",
    "build_qrom",
    "build_sequential_qroms",
    "compute_xor_schedule",
    "emit_copy",
    "emit_restore",
    "emit_select",
    "plan_qrom",
    "registers_for_plan",
    "SwapNetworkPlan",
    "build_plain_qrom",
    "build_selectswap_dirty",
    "CostBreakdown",
    "OptimizationResult",
    "SweepRow",
    "cost_bit_packet",
    "cost_power2_packet",
    "cost_prior_art",
    "cost_select_copy",
    "cost_sequential_fresh",
    "cost_sequential_inplace",
    "cost_uncompute",
    "improvement_sweep",
    "optimize_parameters",
    "sweep_rows_to_csv",
    "BitState",
    "SimulationError",
    "VerificationFailure",
    "VerificationReport",
    "batch_simulate",
    "qubit_indexer",
    "simulate",
    "verify_qrom",
    "format_table",
    "load_table_file",
    "parse_table_text",
]
