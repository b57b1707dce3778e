"""Exact bit-level simulation of permutation-gate circuits.

Every gate kind in the IR permutes computational basis states, so simulating
basis states is exact and, by linearity, determines the action on arbitrary
superpositions: if each |x>|0>|phi> maps to |x>|f(x)>|phi>, then any
sum of amplitudes over basis states maps term by term. Amplitudes never
enter the gate semantics and are not tracked.

Two entry points share the same semantics: ``simulate`` runs one assignment
through the gate list, ``batch_simulate`` runs a matrix of assignments with
vectorized bit operations (one row per qubit, one column per case). The
temp-AND discipline is enforced in both: computing onto a nonzero target or
uncomputing to a nonzero result raises, since either signals a builder bug.

Simulation of independent cases is embarrassingly parallel; a single run is
sequential by definition of the gate list.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, GateKind, QubitRef, Role

__all__ = [
    "SimulationError",
    "BitState",
    "simulate",
    "batch_simulate",
    "qubit_indexer",
    "VerificationFailure",
    "VerificationReport",
    "verify_qrom",
]


class SimulationError(RuntimeError):
    """A gate was applied to a state violating its precondition."""


@dataclass
class BitState:
    """Complete bit assignment for every qubit of a circuit."""

    sizes: dict[str, int]
    bits: dict[QubitRef, int]

    @classmethod
    def for_circuit(cls, circuit: Circuit, values: dict[str, int] | None = None) -> "BitState":
        """All-zero state, with named registers initialized to integer values
        (bit j of the value goes to offset j)."""
        values = dict(values or {})
        sizes = {reg.name: reg.size for reg in circuit.registers}
        bits: dict[QubitRef, int] = {}
        for reg in circuit.registers:
            value = values.pop(reg.name, 0)
            if not 0 <= value < 1 << reg.size:
                raise ValueError(f"value {value} does not fit register {reg.name!r}")
            for offset in range(reg.size):
                bits[QubitRef(reg.name, offset)] = (value >> offset) & 1
        if values:
            raise ValueError(f"unknown registers: {sorted(values)}")
        return cls(sizes, bits)

    def register_value(self, name: str) -> int:
        size = self.sizes[name]
        return sum(self.bits[QubitRef(name, j)] << j for j in range(size))

    def copy(self) -> "BitState":
        return BitState(dict(self.sizes), dict(self.bits))


def simulate(circuit: Circuit, initial: BitState) -> BitState:
    """Apply the gate list to a single basis-state assignment.

    X flips its target; CNOT xors the control into the target; TOFFOLI and
    TEMP_AND xor the AND of both controls in; CSWAP exchanges its two targets
    when the control is 1. TEMP_AND additionally requires a zero target
    before it fires, and TEMP_AND_UNCOMPUTE must leave the target at zero.
    """
    state = initial.copy()
    bits = state.bits
    for i, gate in enumerate(circuit.gates):
        kind = gate.kind
        ops = gate.operands
        if kind is GateKind.X:
            bits[ops[0]] ^= 1
        elif kind is GateKind.CNOT:
            bits[ops[1]] ^= bits[ops[0]]
        elif kind is GateKind.TOFFOLI:
            bits[ops[2]] ^= bits[ops[0]] & bits[ops[1]]
        elif kind is GateKind.TEMP_AND:
            if bits[ops[2]]:
                raise SimulationError(f"gate {i}: TEMP_AND target {ops[2]} is not 0")
            bits[ops[2]] = bits[ops[0]] & bits[ops[1]]
        elif kind is GateKind.TEMP_AND_UNCOMPUTE:
            bits[ops[2]] ^= bits[ops[0]] & bits[ops[1]]
            if bits[ops[2]]:
                raise SimulationError(
                    f"gate {i}: TEMP_AND_UNCOMPUTE left target {ops[2]} at 1"
                )
        elif kind is GateKind.CSWAP:
            if bits[ops[0]]:
                bits[ops[1]], bits[ops[2]] = bits[ops[2]], bits[ops[1]]
        else:  # pragma: no cover
            raise SimulationError(f"unknown gate kind {kind}")
    return state


def qubit_indexer(circuit: Circuit) -> dict[QubitRef, int]:
    """Flat row index for every qubit, in register declaration order."""
    index: dict[QubitRef, int] = {}
    for reg in circuit.registers:
        for offset in range(reg.size):
            index[QubitRef(reg.name, offset)] = len(index)
    return index


def batch_simulate(circuit: Circuit, bit_matrix: np.ndarray) -> np.ndarray:
    """Run many cases at once.

    ``bit_matrix`` has shape (num_qubits, num_cases) with rows ordered by
    ``qubit_indexer``; a fresh final matrix is returned. Semantics and
    temp-AND checks match ``simulate`` exactly, applied across all cases.
    """
    if bit_matrix.shape[0] != circuit.num_qubits:
        raise ValueError(
            f"bit matrix has {bit_matrix.shape[0]} rows, circuit has {circuit.num_qubits} qubits"
        )
    state = bit_matrix.astype(np.uint8, copy=True)
    index = qubit_indexer(circuit)
    for i, gate in enumerate(circuit.gates):
        kind = gate.kind
        rows = [index[ref] for ref in gate.operands]
        if kind is GateKind.X:
            state[rows[0]] ^= 1
        elif kind is GateKind.CNOT:
            state[rows[1]] ^= state[rows[0]]
        elif kind is GateKind.TOFFOLI:
            state[rows[2]] ^= state[rows[0]] & state[rows[1]]
        elif kind is GateKind.TEMP_AND:
            if state[rows[2]].any():
                raise SimulationError(f"gate {i}: TEMP_AND target is not 0 in some case")
            state[rows[2]] = state[rows[0]] & state[rows[1]]
        elif kind is GateKind.TEMP_AND_UNCOMPUTE:
            state[rows[2]] ^= state[rows[0]] & state[rows[1]]
            if state[rows[2]].any():
                raise SimulationError(
                    f"gate {i}: TEMP_AND_UNCOMPUTE left target at 1 in some case"
                )
        elif kind is GateKind.CSWAP:
            mask = state[rows[0]] & (state[rows[1]] ^ state[rows[2]])
            state[rows[1]] ^= mask
            state[rows[2]] ^= mask
        else:  # pragma: no cover
            raise SimulationError(f"unknown gate kind {kind}")
    return state


@dataclass(frozen=True, slots=True)
class VerificationFailure:
    x: int
    dirty_pattern: int
    observed_output: int
    observed_dirty: int
    diagnostics: str


@dataclass
class VerificationReport:
    cases_run: int
    failures: list[VerificationFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_qrom(
    circuit: Circuit,
    table,
    plan=None,
    dirty_trials: int = 10,
    seed: int = 0,
) -> VerificationReport:
    """Check the lookup contract for every address against random dirty states.

    For each x in [0, N) and ``dirty_trials`` seeded dirty patterns, the final
    state must have output = table entry x, every dirty bit back at its
    initial value, the address unchanged, and all work/temp qubits at 0.
    Failures are reported, not raised. ``plan``, when given, is only
    cross-checked against the table dimensions.

    The circuit's registers are located by role, so the same verifier covers
    the packeted builder, the swap-network baseline, and the plain builder.
    """
    if plan is not None and (plan.n_entries != table.n_entries or plan.bit_width != table.bit_width):
        raise ValueError("plan dimensions do not match table")

    n = table.n_entries
    b = table.bit_width
    index = qubit_indexer(circuit)

    q_regs = circuit.registers_with_role(Role.ADDRESS_Q)
    r_regs = circuit.registers_with_role(Role.ADDRESS_R)
    out_regs = circuit.registers_with_role(Role.OUTPUT)
    dirty_regs = circuit.registers_with_role(Role.DIRTY)
    if len(out_regs) != 1:
        raise ValueError("verify_qrom expects exactly one output register")
    out_reg = out_regs[0]
    r_bits = r_regs[0].size if r_regs else 0
    dirty_bits = sum(reg.size for reg in dirty_regs)

    trials = max(1, dirty_trials)
    rng = np.random.default_rng(seed)
    patterns = (
        rng.integers(0, 2, size=(trials, dirty_bits), dtype=np.uint8)
        if dirty_bits
        else np.zeros((trials, 0), dtype=np.uint8)
    )

    cases = n * trials
    matrix = np.zeros((circuit.num_qubits, cases), dtype=np.uint8)
    xs = np.repeat(np.arange(n), trials)
    trial_ids = np.tile(np.arange(trials), n)

    for j, x in enumerate(xs):
        q_val, r_val = x >> r_bits, x & ((1 << r_bits) - 1)
        for reg in q_regs:
            for off in range(reg.size):
                matrix[index[QubitRef(reg.name, off)], j] = (q_val >> off) & 1
        for reg in r_regs:
            for off in range(reg.size):
                matrix[index[QubitRef(reg.name, off)], j] = (r_val >> off) & 1
        pat = patterns[trial_ids[j]]
        pos = 0
        for reg in dirty_regs:
            for off in range(reg.size):
                matrix[index[QubitRef(reg.name, off)], j] = pat[pos]
                pos += 1

    initial = matrix.copy()
    final = batch_simulate(circuit, matrix)

    out_rows = [index[QubitRef(out_reg.name, off)] for off in range(out_reg.size)]
    dirty_rows = [
        index[QubitRef(reg.name, off)] for reg in dirty_regs for off in range(reg.size)
    ]
    addr_rows = [
        index[QubitRef(reg.name, off)]
        for reg in q_regs + r_regs
        for off in range(reg.size)
    ]
    clean_rows = [
        index[QubitRef(reg.name, off)]
        for reg in circuit.registers
        if reg.role in (Role.WORK, Role.TEMP)
        for off in range(reg.size)
    ]

    report = VerificationReport(cases_run=cases)
    for j in range(cases):
        x = int(xs[j])
        expected = table.entries[x]
        observed_out = _pack(final[:, j], out_rows)
        observed_dirty = _pack(final[:, j], dirty_rows)
        initial_dirty = _pack(initial[:, j], dirty_rows)
        problems = []
        if expected & ((1 << b) - 1) != observed_out & ((1 << b) - 1):
            problems.append(f"output {observed_out:#x} != f(x) {expected:#x}")
        if observed_dirty != initial_dirty:
            problems.append("dirty register not restored")
        if any(final[row, j] != initial[row, j] for row in addr_rows):
            problems.append("address register changed")
        if any(final[row, j] for row in clean_rows):
            problems.append("work/temp qubit left nonzero")
        if problems:
            report.failures.append(
                VerificationFailure(
                    x=x,
                    dirty_pattern=initial_dirty,
                    observed_output=observed_out,
                    observed_dirty=observed_dirty,
                    diagnostics="; ".join(problems),
                )
            )
    return report


def _pack(column: np.ndarray, rows: list[int]) -> int:
    value = 0
    for j, row in enumerate(rows):
        value |= int(column[row]) << j
    return value
