"""Select-and-copy table lookup with sequential bit packets.

The address x splits as x = q*lam + r, with r the low log2(lam) address bits.
Each round loads one packet of mu output bits: a Select iterates over q,
writing block-base data f(q*lam) straight into the output slice and writing
XOR-masked differences into lam-1 borrowed (dirty) mu-bit blocks; a Copy then
iterates r over 1..lam-1 and Toffoli-copies the addressed block onto the
output slice. Because consecutive Selects load the XOR of consecutive
packets' differences, one final unloading Select plus one temp-AND-assisted
Copy restores every borrowed qubit and completes the output.

Builders are pure functions of (table, plan): no shared mutable state, safe
to run across a parameter grid in parallel.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, GateKind, QubitRef, RegisterSpec, Role, check_temp_and_pairing, new_circuit
from .iteration import IterationSpec, IterationWindow, emit_unary_iteration

__all__ = [
    "LookupTable",
    "QromPlan",
    "XorSchedule",
    "SequentialSpec",
    "plan_qrom",
    "compute_xor_schedule",
    "registers_for_plan",
    "emit_select",
    "emit_copy",
    "emit_restore",
    "build_qrom",
    "build_sequential_qroms",
]


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def is_power_of_two(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def work_size(q_range: int, lam: int) -> int:
    """Clean work qubits: max(ceil(log2(N/lam rounded up)), log2(lam)).

    With a one-bit q register the select's alignment pair needs a second
    work qubit for its control, so the degenerate q_range == 2, lam == 2
    corner is padded to two (visible in the resource estimate).
    """
    w = max(ceil_log2(q_range), lam.bit_length() - 1)
    if q_range == 2:
        w = max(w, 2)
    return w


@dataclass(frozen=True, slots=True)
class LookupTable:
    """Classical data f: [0, N) -> [0, 2^b); bit j of an entry is the jth
    output bit, least significant first."""

    entries: tuple[int, ...]
    bit_width: int

    def __post_init__(self) -> None:
        if self.bit_width < 1:
            raise ValueError("bit_width must be >= 1")
        if len(self.entries) < 1:
            raise ValueError("table must have at least one entry")
        limit = 1 << self.bit_width
        for x, value in enumerate(self.entries):
            if not 0 <= value < limit:
                raise ValueError(f"entry {x} = {value} does not fit in {self.bit_width} bits")
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def n_entries(self) -> int:
        return len(self.entries)

    def padded(self, x: int) -> int:
        """Entry value with f(x) := 0 beyond the table (partial last block)."""
        return self.entries[x] if x < len(self.entries) else 0


@dataclass(frozen=True, slots=True)
class QromPlan:
    """Validated synthesis parameters plus all derived register sizes."""

    n_entries: int
    bit_width: int
    lam: int
    mu: int
    num_packets: int
    packet_sizes: tuple[int, ...]
    q_range: int
    address_bits: int
    q_bits: int
    r_bits: int
    dirty_qubits: int
    work_qubits: int

    def packet_span(self, packet: int) -> tuple[int, int]:
        """Output bit range [start, end) covered by a packet."""
        start = packet * self.mu
        return start, start + self.packet_sizes[packet]


def plan_qrom(n_entries: int, bit_width: int, lam: int, mu: int) -> QromPlan:
    """Validate parameters and derive the packet layout and register sizes.

    Requires lam a power of two with 1 < lam < N and 1 <= mu <= b. The dirty
    block depth is mu*(lam-1); work qubits follow ``work_size``.
    """
    if n_entries < 1 or bit_width < 1:
        raise ValueError("table dimensions must be positive")
    if not is_power_of_two(lam):
        raise ValueError(f"lam = {lam} is not a power of 2")
    if not 1 < lam < n_entries:
        raise ValueError(f"lam = {lam} violates 1 < lam < N = {n_entries}")
    if not 1 <= mu <= bit_width:
        raise ValueError(f"mu = {mu} violates 1 <= mu <= b = {bit_width}")

    num_packets = ceil_div(bit_width, mu)
    sizes = [mu] * (bit_width // mu)
    if bit_width % mu:
        sizes.append(bit_width % mu)
    q_range = ceil_div(n_entries, lam)
    address_bits = max(ceil_log2(n_entries), 1)
    r_bits = lam.bit_length() - 1
    q_bits = address_bits - r_bits
    return QromPlan(
        n_entries=n_entries,
        bit_width=bit_width,
        lam=lam,
        mu=mu,
        num_packets=num_packets,
        packet_sizes=tuple(sizes),
        q_range=q_range,
        address_bits=address_bits,
        q_bits=q_bits,
        r_bits=r_bits,
        dirty_qubits=mu * (lam - 1),
        work_qubits=work_size(q_range, lam),
    )


class XorSchedule:
    """Per-window classical bit masks driving the Selects.

    For block q and packet p, ``direct_bits(q, p)`` are the packet bits of
    f(q*lam) written straight to the output. For borrowed block l in
    1..lam-1, ``delta_bits(q, p, l)`` is what Select p xors into that block:
    packet 0 loads c(q, l) restricted to packet 0, later packets load the XOR
    of consecutive packets' c values, where c(q, l) = f(q*lam + l) XOR
    f(q*lam) bitwise (entries beyond the table read as 0). ``unload_bits``
    is the final packet's c value, which the restore Select uses to return
    every borrowed block to its initial state; the masks telescope so that
    XOR of all deltas equals the unload mask.
    """

    def __init__(self, plan: QromPlan, direct, delta, unload):
        self.plan = plan
        self._direct = direct
        self._delta = delta
        self._unload = unload

    def direct_bits(self, q: int, packet: int) -> int:
        return self._direct[packet][q]

    def delta_bits(self, q: int, packet: int, block: int) -> int:
        if not 1 <= block < self.plan.lam:
            raise ValueError(f"block {block} out of range 1..{self.plan.lam - 1}")
        return self._delta[packet][q][block - 1]

    def unload_bits(self, q: int, block: int) -> int:
        if not 1 <= block < self.plan.lam:
            raise ValueError(f"block {block} out of range 1..{self.plan.lam - 1}")
        return self._unload[q][block - 1]


def compute_xor_schedule(table: LookupTable, plan: QromPlan) -> XorSchedule:
    if table.n_entries != plan.n_entries or table.bit_width != plan.bit_width:
        raise ValueError("table dimensions do not match plan")
    mu, lam = plan.mu, plan.lam
    alpha = plan.num_packets

    def c_bit(q: int, block: int, bit: int) -> int:
        if bit >= plan.bit_width:
            return 0
        base = table.padded(q * lam)
        other = table.padded(q * lam + block)
        return ((other ^ base) >> bit) & 1

    direct = []
    delta = []
    for p in range(alpha):
        start, end = plan.packet_span(p)
        width = end - start
        direct.append(
            tuple(
                (table.padded(q * lam) >> start) & ((1 << width) - 1)
                for q in range(plan.q_range)
            )
        )
        rows = []
        for q in range(plan.q_range):
            row = []
            for block in range(1, lam):
                mask = 0
                for j in range(mu):
                    cur = c_bit(q, block, p * mu + j) if j < width else 0
                    prev = c_bit(q, block, (p - 1) * mu + j) if p > 0 else 0
                    mask |= (cur ^ prev) << j
                row.append(mask)
            rows.append(tuple(row))
        delta.append(tuple(rows))

    last = alpha - 1
    last_width = plan.packet_sizes[last]
    unload = []
    for q in range(plan.q_range):
        row = []
        for block in range(1, lam):
            mask = 0
            for j in range(last_width):
                mask |= c_bit(q, block, last * mu + j) << j
            row.append(mask)
        unload.append(tuple(row))

    return XorSchedule(plan, tuple(direct), tuple(delta), tuple(unload))


def registers_for_plan(plan: QromPlan) -> list[RegisterSpec]:
    """Register layout: q/r address split, b output bits, mu*(lam-1) dirty
    qubits in lam-1 contiguous mu-bit blocks, and the work register."""
    return [
        RegisterSpec("addr_q", plan.q_bits, Role.ADDRESS_Q),
        RegisterSpec("addr_r", plan.r_bits, Role.ADDRESS_R),
        RegisterSpec("output", plan.bit_width, Role.OUTPUT),
        RegisterSpec("dirty", plan.dirty_qubits, Role.DIRTY),
        RegisterSpec("work", plan.work_qubits, Role.WORK),
    ]


def _dirty_qubit(plan: QromPlan, block: int, bit: int) -> QubitRef:
    return QubitRef("dirty", (block - 1) * plan.mu + bit)


def _load(circuit: Circuit, wire: QubitRef | None, target: QubitRef) -> None:
    if wire is None:
        circuit.append(GateKind.X, target)
    else:
        circuit.append(GateKind.CNOT, wire, target)


def emit_select(circuit: Circuit, plan: QromPlan, schedule: XorSchedule, packet: int) -> Circuit:
    """One Select pass for a packet: iterate q over all blocks, CNOT-loading
    direct bits into the output slice and delta bits into the dirty blocks.
    Adds no Toffolis beyond the q-iteration scaffold.

    The circuit must carry the ``registers_for_plan`` layout (as must the
    other emitters); ``build_qrom`` wires this up for the common case.
    """
    if not 0 <= packet < plan.num_packets:
        raise ValueError(f"packet {packet} out of range")
    start, _ = plan.packet_span(packet)

    def window(win: IterationWindow) -> None:
        q = win.index_value
        direct = schedule.direct_bits(q, packet)
        for j in range(plan.packet_sizes[packet]):
            if (direct >> j) & 1:
                _load(circuit, win.select_wire, QubitRef("output", start + j))
        for block in range(1, plan.lam):
            mask = schedule.delta_bits(q, packet, block)
            for j in range(plan.mu):
                if (mask >> j) & 1:
                    _load(circuit, win.select_wire, _dirty_qubit(plan, block, j))

    spec = IterationSpec("addr_q", 0, plan.q_range)
    return emit_unary_iteration(circuit, spec, window)


def emit_copy(circuit: Circuit, plan: QromPlan, packet: int) -> Circuit:
    """One multiplexed Copy: iterate r over 1..lam-1 and, per window, Toffoli
    each dirty block bit onto its output slice bit. (lam-1) * packet size
    Toffolis plus the lam-2 scaffold; no data CNOTs."""
    if not 0 <= packet < plan.num_packets:
        raise ValueError(f"packet {packet} out of range")
    start, end = plan.packet_span(packet)

    def window(win: IterationWindow) -> None:
        block = win.index_value
        for j in range(end - start):
            circuit.append(
                GateKind.TOFFOLI,
                win.select_wire,
                _dirty_qubit(plan, block, j),
                QubitRef("output", start + j),
            )

    spec = IterationSpec("addr_r", 1, plan.lam)
    return emit_unary_iteration(circuit, spec, window)


def emit_restore(circuit: Circuit, plan: QromPlan, schedule: XorSchedule) -> Circuit:
    """Unload the final packet's masks from the dirty blocks, then fix the
    output.

    The unloading Select mirrors the loading ones. The final Copy iterates r
    and, for each of the mu dirty bits of the addressed block, holds the bit
    in a temp-AND and CNOTs it onto every output bit at that position modulo
    mu, clearing the borrowed-state mask the earlier copies left behind. The
    temp-AND target reuses the highest work qubit, which the r-iteration
    never touches.
    """

    def unload_window(win: IterationWindow) -> None:
        q = win.index_value
        for block in range(1, plan.lam):
            mask = schedule.unload_bits(q, block)
            for j in range(plan.mu):
                if (mask >> j) & 1:
                    _load(circuit, win.select_wire, _dirty_qubit(plan, block, j))

    emit_unary_iteration(circuit, IterationSpec("addr_q", 0, plan.q_range), unload_window)

    temp = QubitRef("work", plan.work_qubits - 1)

    def fix_window(win: IterationWindow) -> None:
        block = win.index_value
        for j in range(plan.mu):
            source = _dirty_qubit(plan, block, j)
            circuit.append(GateKind.TEMP_AND, win.select_wire, source, temp)
            for k in range(j, plan.bit_width, plan.mu):
                circuit.append(GateKind.CNOT, temp, QubitRef("output", k))
            circuit.append(GateKind.TEMP_AND_UNCOMPUTE, win.select_wire, source, temp)

    emit_unary_iteration(circuit, IterationSpec("addr_r", 1, plan.lam), fix_window)
    return circuit


def build_qrom(table: LookupTable, plan: QromPlan) -> Circuit:
    """Full lookup circuit: Select/Copy per packet, then the restore pass.

    The Toffoli count is exactly
    (ceil(b/mu)+1) * (ceil(N/lam) + lam - 3) + (lam-1) * (mu * (b//mu + 1) + b % mu)
    and the register sizes are exactly those of the plan.
    """
    schedule = compute_xor_schedule(table, plan)
    circuit = new_circuit(registers_for_plan(plan))
    for packet in range(plan.num_packets):
        emit_select(circuit, plan, schedule, packet)
        emit_copy(circuit, plan, packet)
    emit_restore(circuit, plan, schedule)
    check_temp_and_pairing(circuit)
    return circuit


@dataclass(frozen=True, slots=True)
class SequentialSpec:
    """A run of lookups over tables of identical shape, sharing one address
    register and one set of dirty blocks, writing to fresh output registers."""

    tables: tuple[LookupTable, ...]
    lam: int

    def __post_init__(self) -> None:
        if len(self.tables) < 1:
            raise ValueError("need at least one table")
        object.__setattr__(self, "tables", tuple(self.tables))
        first = self.tables[0]
        for t in self.tables[1:]:
            if t.n_entries != first.n_entries or t.bit_width != first.bit_width:
                raise ValueError("all tables must share N and b")
        if not is_power_of_two(self.lam):
            raise ValueError(f"lam = {self.lam} is not a power of 2")
        if not 1 < self.lam < first.n_entries:
            raise ValueError(f"lam = {self.lam} violates 1 < lam < N")


def build_sequential_qroms(spec: SequentialSpec) -> Circuit:
    """Back-to-back lookups with one shared unload.

    Select j loads table j's direct bits into output j and the XOR of
    consecutive tables' masks into the dirty blocks, so m tables need m+1
    Selects and m+1 Copies (the last Copy fixes all outputs at once):
    exactly (m+1) * (ceil(N/lam) + b*(lam-1) + lam - 3) Toffolis.
    """
    m = len(spec.tables)
    first = spec.tables[0]
    n, b, lam = first.n_entries, first.bit_width, spec.lam
    # Full-width packets: each table is one mu = b packet.
    plan = plan_qrom(n, b, lam, b)
    schedules = [compute_xor_schedule(t, plan) for t in spec.tables]

    registers = [
        RegisterSpec("addr_q", plan.q_bits, Role.ADDRESS_Q),
        RegisterSpec("addr_r", plan.r_bits, Role.ADDRESS_R),
    ]
    registers += [
        RegisterSpec(f"output_{i + 1}", b, Role.OUTPUT) for i in range(m)
    ]
    registers += [
        RegisterSpec("dirty", b * (lam - 1), Role.DIRTY),
        RegisterSpec("work", plan.work_qubits, Role.WORK),
    ]
    circuit = new_circuit(registers)

    def dirty_ref(block: int, j: int) -> QubitRef:
        return QubitRef("dirty", (block - 1) * b + j)

    def select(stage: int) -> None:
        # stage i in [0, m): load table i direct bits and delta vs table i-1;
        # stage m: unload table m-1's masks.
        def window(win: IterationWindow) -> None:
            q = win.index_value
            if stage < m:
                direct = schedules[stage].direct_bits(q, 0)
                for j in range(b):
                    if (direct >> j) & 1:
                        _load(circuit, win.select_wire, QubitRef(f"output_{stage + 1}", j))
            for block in range(1, lam):
                mask = schedules[stage].unload_bits(q, block) if stage < m else 0
                if stage > 0:
                    mask ^= schedules[stage - 1].unload_bits(q, block)
                for j in range(b):
                    if (mask >> j) & 1:
                        _load(circuit, win.select_wire, dirty_ref(block, j))

        emit_unary_iteration(circuit, IterationSpec("addr_q", 0, plan.q_range), window)

    def copy(stage: int) -> None:
        def window(win: IterationWindow) -> None:
            block = win.index_value
            for j in range(b):
                circuit.append(
                    GateKind.TOFFOLI,
                    win.select_wire,
                    dirty_ref(block, j),
                    QubitRef(f"output_{stage + 1}", j),
                )

        emit_unary_iteration(circuit, IterationSpec("addr_r", 1, lam), window)

    temp = QubitRef("work", plan.work_qubits - 1)

    def fix_all() -> None:
        def window(win: IterationWindow) -> None:
            block = win.index_value
            for j in range(b):
                source = dirty_ref(block, j)
                circuit.append(GateKind.TEMP_AND, win.select_wire, source, temp)
                for i in range(m):
                    circuit.append(GateKind.CNOT, temp, QubitRef(f"output_{i + 1}", j))
                circuit.append(GateKind.TEMP_AND_UNCOMPUTE, win.select_wire, source, temp)

        emit_unary_iteration(circuit, IterationSpec("addr_r", 1, lam), window)

    for stage in range(m):
        select(stage)
        copy(stage)
    select(m)
    fix_all()
    check_temp_and_pairing(circuit)
    return circuit
