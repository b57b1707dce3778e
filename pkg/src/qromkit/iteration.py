"""Sawtooth unary iteration over a contiguous index range.

The emitter is invoked once per index value, in ascending order, with a select
wire that is 1 exactly when the index register holds that value. Windows are
realized by a depth-first walk of the bit-prefix tree: the first child of a
node is computed with a temp-AND, its sibling is reached with a single CNOT,
and the temp-AND is released for free on the way back up. At the root the
index bits themselves serve as wires (X-conjugated for the 0 branch).

Costing convention: scaffolding spends exactly ``range_size - 1`` Toffolis.
The bare tree needs one less than that for ranges starting at 0, so the
emitter appends one temp-AND compute/uncompute alignment pair (net one
Toffoli, identity action) to match the standard controlled-iteration account
that all cost formulas in this package assume. The clean-qubit budget of
ceil(log2(range size)) work qubits covers both the tree wires and the
alignment target.

Callers promise that the index register holds a value below ``range_hi``;
select wires for values pruned above ``range_hi`` are not discriminated from
unreachable larger values. Values below ``range_lo`` are always discriminated
correctly, which is what the copy stage relies on for index 0.

Emission is pure appending into the caller's circuit; there is no shared
state, so concurrent emission into distinct circuits is safe.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .circuit import Circuit, GateKind, QubitRef

__all__ = ["IterationSpec", "IterationWindow", "emit_unary_iteration"]


@dataclass(frozen=True, slots=True)
class IterationWindow:
    """One activation window: ``select_wire`` is 1 iff the register holds
    ``index_value``. A ``None`` wire means the window is unconditionally on
    (single-value ranges where the register is promised to hold that value)."""

    index_value: int
    select_wire: QubitRef | None


@dataclass(frozen=True, slots=True)
class IterationSpec:
    """Iterate ``index_register`` over ``[range_lo, range_hi)``."""

    index_register: str
    range_lo: int
    range_hi: int

    @property
    def size(self) -> int:
        return self.range_hi - self.range_lo


def emit_unary_iteration(
    circuit: Circuit,
    spec: IterationSpec,
    emitter: Callable[[IterationWindow], None],
    *,
    work_register: str = "work",
) -> Circuit:
    """Emit the iteration scaffold, invoking ``emitter`` once per index value.

    The emitter appends its own gates to the circuit; gates controlled on the
    window's select wire fire only for the window's index value. After the
    full iteration every work qubit is back to 0 and the index register is
    unchanged. Scaffolding contributes exactly ``spec.size - 1`` Toffolis.

    Raises ValueError on an empty or out-of-bounds range, on insufficient
    work qubits, and on ranges whose start makes the exact scaffold cost
    unattainable (the builders here only use starts 0 and 1).
    """
    reg = circuit.register(spec.index_register)
    lo, hi = spec.range_lo, spec.range_hi
    if not 0 <= lo < hi:
        raise ValueError(f"empty or negative range [{lo}, {hi})")
    if hi > 1 << reg.size:
        raise ValueError(
            f"range [{lo}, {hi}) does not fit in {reg.size}-qubit register {reg.name!r}"
        )
    size = hi - lo

    if size == 1:
        _emit_single_window(circuit, reg, lo, emitter)
        return circuit

    levels = (hi - 1).bit_length()
    ands_expected = _scaffold_ands(lo, hi, levels)
    deficit = (size - 1) - ands_expected
    if deficit < 0:
        raise ValueError(
            f"range [{lo}, {hi}) cannot be scaffolded in exactly {size - 1} Toffolis"
        )

    work = circuit.register(work_register)
    needed = levels - 1
    if deficit:
        # Alignment pair target, plus a second control when the index
        # register cannot supply two.
        needed = max(needed, levels, 2 if reg.size < 2 else 0)
    if work.size < needed:
        raise ValueError(
            f"insufficient work qubits: need {needed}, register {work.name!r} has {work.size}"
        )

    ands_spent = 0

    def wire_slot(parent_height: int) -> QubitRef:
        # Child wires of a height-h parent live in slot levels-1-h; slots
        # increase toward the leaves, so they are disjoint along any path.
        return work[levels - 1 - parent_height]

    def walk(height: int, base: int, wire: QubitRef | None) -> None:
        nonlocal ands_spent
        if height == 0:
            emitter(IterationWindow(base, wire))
            return
        half = 1 << (height - 1)
        bit = reg[height - 1]
        left = _overlaps(base, base + half, lo, hi)
        right = _overlaps(base + half, base + 2 * half, lo, hi)

        if left and right:
            if wire is None:
                # Root split: the index bit itself is the child wire.
                circuit.append(GateKind.X, bit)
                walk(height - 1, base, bit)
                circuit.append(GateKind.X, bit)
                walk(height - 1, base + half, bit)
                return
            child = wire_slot(height)
            circuit.append(GateKind.X, bit)
            circuit.append(GateKind.TEMP_AND, wire, bit, child)
            ands_spent += 1
            walk(height - 1, base, child)
            circuit.append(GateKind.X, bit)
            # Sibling transition: flips the conditioned bit inside the AND.
            circuit.append(GateKind.CNOT, wire, child)
            walk(height - 1, base + half, child)
            circuit.append(GateKind.TEMP_AND_UNCOMPUTE, wire, bit, child)
            return

        if left:
            # Pruned sibling holds only values >= hi: reuse the wire below.
            walk(height - 1, base, wire)
            return

        # Pruned sibling holds values < lo, which are reachable: the bit
        # must stay conditioned so those inputs never open a window.
        if wire is None:
            walk(height - 1, base + half, bit)
            return
        child = wire_slot(height)
        circuit.append(GateKind.TEMP_AND, wire, bit, child)
        ands_spent += 1
        walk(height - 1, base + half, child)
        circuit.append(GateKind.TEMP_AND_UNCOMPUTE, wire, bit, child)

    walk(levels, 0, None)
    assert ands_spent == ands_expected, "scaffold cost precomputation out of sync"

    if deficit:
        target = work[levels - 1]
        if reg.size >= 2:
            c1, c2 = reg[reg.size - 1], reg[reg.size - 2]
        else:
            c1, c2 = reg[0], work[1]
        for _ in range(deficit):
            circuit.append(GateKind.TEMP_AND, c1, c2, target)
            circuit.append(GateKind.TEMP_AND_UNCOMPUTE, c1, c2, target)
    return circuit


def _emit_single_window(circuit, reg, value, emitter) -> None:
    # Single-value ranges carry no scaffold cost. With a one-qubit register
    # the register bit itself is an honest wire; otherwise the window is
    # trivially on and the caller's range promise pins the register value.
    if reg.size == 1:
        wire = reg[0]
        if value == 0:
            circuit.append(GateKind.X, wire)
            emitter(IterationWindow(value, wire))
            circuit.append(GateKind.X, wire)
        else:
            emitter(IterationWindow(value, wire))
    else:
        emitter(IterationWindow(value, None))


def _overlaps(a: int, b: int, lo: int, hi: int) -> bool:
    return max(a, lo) < min(b, hi)


def _scaffold_ands(lo: int, hi: int, levels: int) -> int:
    """Temp-AND count of the bare tree walk (no alignment pair)."""

    def rec(height: int, base: int, has_wire: bool) -> int:
        if height == 0:
            return 0
        half = 1 << (height - 1)
        left = _overlaps(base, base + half, lo, hi)
        right = _overlaps(base + half, base + 2 * half, lo, hi)
        if left and right:
            pay = 1 if has_wire else 0
            return pay + rec(height - 1, base, True) + rec(height - 1, base + half, True)
        if left:
            return rec(height - 1, base, has_wire)
        pay = 1 if has_wire else 0
        return pay + rec(height - 1, base + half, True)

    return rec(levels, 0, False)
