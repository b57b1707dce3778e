"""Prior-art lookup circuits used for differential testing.

``build_plain_qrom`` is the bare unary-iteration lookup: one window per
address, CNOT-loading the entry bits, at N - 1 Toffolis total.

``build_selectswap_dirty`` is the swap-network architecture with borrowed
registers: Select loads every block entry XOR-style into lam registers
(block 0 being a clean buffer), a multiplexed swap routes the addressed
register to the buffer, and two buffer copies around a second Select cancel
the borrowed bits out of the output. Exactly 2*(ceil(N/lam) - 1) +
4*b*(lam-1) Toffolis, with b*(lam-1) dirty qubits.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, GateKind, QubitRef, RegisterSpec, Role, check_temp_and_pairing, new_circuit
from .iteration import IterationSpec, IterationWindow, emit_unary_iteration
from .qrom import LookupTable, ceil_div, ceil_log2, is_power_of_two, work_size

__all__ = ["SwapNetworkPlan", "build_plain_qrom", "build_selectswap_dirty"]


@dataclass(frozen=True, slots=True)
class SwapNetworkPlan:
    """Multiplexed-swap parameters: lam registers of b qubits, swapped by the
    binary digits of r with b*(lam-1) CSWAPs per pass."""

    lam: int
    bit_width: int

    def __post_init__(self) -> None:
        if not is_power_of_two(self.lam) or self.lam < 2:
            raise ValueError(f"lam = {self.lam} must be a power of 2 >= 2")
        if self.bit_width < 1:
            raise ValueError("bit_width must be >= 1")


def build_plain_qrom(table: LookupTable) -> Circuit:
    """Unary-iteration lookup over all N addresses; N - 1 Toffolis."""
    n, b = table.n_entries, table.bit_width
    if n == 1:
        circuit = new_circuit([RegisterSpec("output", b, Role.OUTPUT)])
        for j in range(b):
            if (table.entries[0] >> j) & 1:
                circuit.append(GateKind.X, QubitRef("output", j))
        return circuit

    address_bits = ceil_log2(n)
    work_bits = max(address_bits, 2 if n == 2 else 1)
    circuit = new_circuit(
        [
            RegisterSpec("addr_q", address_bits, Role.ADDRESS_Q),
            RegisterSpec("output", b, Role.OUTPUT),
            RegisterSpec("work", work_bits, Role.WORK),
        ]
    )

    def window(win: IterationWindow) -> None:
        value = table.entries[win.index_value]
        for j in range(b):
            if (value >> j) & 1:
                circuit.append(GateKind.CNOT, win.select_wire, QubitRef("output", j))

    emit_unary_iteration(circuit, IterationSpec("addr_q", 0, n), window)
    check_temp_and_pairing(circuit)
    return circuit


def build_selectswap_dirty(table: LookupTable, lam: int) -> Circuit:
    """Swap-network lookup with borrowed registers, per the eight-step
    borrow discipline: Select, swap-in, buffer copy, swap-out, unloading
    Select, swap-in, buffer copy, swap-out."""
    n, b = table.n_entries, table.bit_width
    plan = SwapNetworkPlan(lam, b)
    if not lam < n:
        raise ValueError(f"lam = {lam} violates 1 < lam < N = {n}")
    q_range = ceil_div(n, lam)
    r_bits = lam.bit_length() - 1
    address_bits = max(ceil_log2(n), 1)
    q_bits = address_bits - r_bits

    circuit = new_circuit(
        [
            RegisterSpec("addr_q", q_bits, Role.ADDRESS_Q),
            RegisterSpec("addr_r", r_bits, Role.ADDRESS_R),
            RegisterSpec("output", b, Role.OUTPUT),
            RegisterSpec("buffer", b, Role.WORK),
            RegisterSpec("dirty", plan.bit_width * (plan.lam - 1), Role.DIRTY),
            RegisterSpec("work", work_size(q_range, lam), Role.WORK),
        ]
    )

    def block_qubit(block: int, j: int) -> QubitRef:
        # Block 0 is the clean buffer; blocks 1..lam-1 are borrowed.
        if block == 0:
            return QubitRef("buffer", j)
        return QubitRef("dirty", (block - 1) * b + j)

    def select() -> None:
        def window(win: IterationWindow) -> None:
            q = win.index_value
            for block in range(lam):
                value = table.padded(q * lam + block)
                for j in range(b):
                    if (value >> j) & 1:
                        circuit.append(GateKind.CNOT, win.select_wire, block_qubit(block, j))

        emit_unary_iteration(circuit, IterationSpec("addr_q", 0, q_range), window)

    def swap_network(inverse: bool) -> None:
        # Layer beta halves the distance-2^beta pairs; the forward order
        # routes block r to the buffer, the reversed order undoes it.
        layers = range(r_bits - 1, -1, -1) if inverse else range(r_bits)
        for beta in layers:
            step = 1 << beta
            for base in range(0, lam, 2 * step):
                for j in range(b):
                    circuit.append(
                        GateKind.CSWAP,
                        QubitRef("addr_r", beta),
                        block_qubit(base, j),
                        block_qubit(base + step, j),
                    )

    def buffer_copy() -> None:
        for j in range(b):
            circuit.append(GateKind.CNOT, QubitRef("buffer", j), QubitRef("output", j))

    select()
    swap_network(inverse=False)
    buffer_copy()
    swap_network(inverse=True)
    select()
    swap_network(inverse=False)
    buffer_copy()
    swap_network(inverse=True)
    check_temp_and_pairing(circuit)
    return circuit
