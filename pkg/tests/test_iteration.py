import numpy as np
import pytest

from qromkit import (
    GateKind,
    IterationSpec,
    IterationWindow,
    QubitRef,
    RegisterSpec,
    Role,
    count_resources,
    emit_unary_iteration,
    new_circuit,
)
from qromkit.simulate import batch_simulate, qubit_indexer


def iteration_circuit(index_bits, work_bits, probe_bits=0):
    regs = [
        RegisterSpec("idx", index_bits, Role.ADDRESS_Q),
        RegisterSpec("work", work_bits, Role.WORK),
    ]
    if probe_bits:
        regs.append(RegisterSpec("probe", probe_bits, Role.OUTPUT))
    return new_circuit(regs)


def run_iteration(lo, hi, index_bits=None, work_bits=None):
    index_bits = index_bits or max(1, (hi - 1).bit_length())
    work_bits = work_bits if work_bits is not None else max(2, index_bits)
    c = iteration_circuit(index_bits, work_bits)
    seen = []
    emit_unary_iteration(c, IterationSpec("idx", lo, hi), lambda w: seen.append(w.index_value))
    return c, seen


@pytest.mark.parametrize("size", list(range(1, 65)))
def test_scaffold_cost_is_size_minus_one(size):
    c, seen = run_iteration(0, size)
    assert count_resources(c).toffoli == size - 1
    assert seen == list(range(size))


@pytest.mark.parametrize("lam", [2, 4, 8, 16, 32, 64])
def test_copy_style_range_costs_lam_minus_two(lam):
    bits = lam.bit_length() - 1
    c, seen = run_iteration(1, lam, index_bits=bits, work_bits=max(1, bits))
    assert count_resources(c).toffoli == lam - 2
    assert seen == list(range(1, lam))


def test_single_value_range_is_free():
    c = iteration_circuit(3, 2)
    windows = []
    emit_unary_iteration(c, IterationSpec("idx", 5, 6), windows.append)
    assert count_resources(c).toffoli == 0
    assert len(windows) == 1 and windows[0].index_value == 5
    assert windows[0].select_wire is None


def test_two_value_range_uses_index_bit_as_wire():
    # lam = 2 copy degenerate: the single window over value 1 rides the
    # index qubit itself.
    c = iteration_circuit(1, 1)
    windows = []
    emit_unary_iteration(c, IterationSpec("idx", 1, 2), windows.append)
    assert count_resources(c).toffoli == 0
    assert windows[0].select_wire == QubitRef("idx", 0)
    assert c.gates == []


def emit_probe(circuit, lo, hi):
    def emitter(win: IterationWindow):
        target = QubitRef("probe", win.index_value - lo)
        if win.select_wire is None:
            circuit.append(GateKind.X, target)
        else:
            circuit.append(GateKind.CNOT, win.select_wire, target)

    emit_unary_iteration(circuit, IterationSpec("idx", lo, hi), emitter)


@pytest.mark.parametrize("index_bits", [1, 2, 3, 4, 5, 6])
def test_windows_fire_exactly_once_per_index(index_bits):
    # Exhaustive: every window v flips its probe iff the register holds v;
    # all work qubits return to 0 and the register is preserved.
    for hi in range(2, (1 << index_bits) + 1):
        c = iteration_circuit(index_bits, max(2, index_bits), probe_bits=hi)
        emit_probe(c, 0, hi)
        index = qubit_indexer(c)
        matrix = np.zeros((c.num_qubits, hi), dtype=np.uint8)
        for y in range(hi):
            for off in range(index_bits):
                matrix[index[QubitRef("idx", off)], y] = (y >> off) & 1
        initial = matrix.copy()
        final = batch_simulate(c, matrix)
        for y in range(hi):
            for v in range(hi):
                assert final[index[QubitRef("probe", v)], y] == (1 if y == v else 0)
        for off in range(c.register("work").size):
            assert not final[index[QubitRef("work", off)]].any()
        for off in range(index_bits):
            assert (final[index[QubitRef("idx", off)]] == initial[index[QubitRef("idx", off)]]).all()


@pytest.mark.parametrize("lam", [2, 4, 8, 16, 32, 64])
def test_copy_style_windows_stay_closed_at_zero(lam):
    # The r = 0 input must open no window: the whole register domain is
    # discriminated for ranges starting at 1.
    bits = lam.bit_length() - 1
    c = iteration_circuit(bits, max(1, bits), probe_bits=lam - 1)
    emit_probe(c, 1, lam)
    index = qubit_indexer(c)
    matrix = np.zeros((c.num_qubits, lam), dtype=np.uint8)
    for y in range(lam):
        for off in range(bits):
            matrix[index[QubitRef("idx", off)], y] = (y >> off) & 1
    final = batch_simulate(c, matrix)
    for y in range(lam):
        for v in range(1, lam):
            assert final[index[QubitRef("probe", v - 1)], y] == (1 if y == v else 0)


def test_emitter_order_strictly_ascending():
    _, seen = run_iteration(0, 25, index_bits=5, work_bits=5)
    assert seen == sorted(seen)
    assert len(set(seen)) == len(seen)


def test_empty_range_rejected():
    c = iteration_circuit(2, 2)
    with pytest.raises(ValueError, match="empty"):
        emit_unary_iteration(c, IterationSpec("idx", 2, 2), lambda w: None)


def test_range_must_fit_register():
    c = iteration_circuit(2, 2)
    with pytest.raises(ValueError, match="does not fit"):
        emit_unary_iteration(c, IterationSpec("idx", 0, 8), lambda w: None)


def test_insufficient_work_rejected():
    c = iteration_circuit(4, 1)
    with pytest.raises(ValueError, match="insufficient work"):
        emit_unary_iteration(c, IterationSpec("idx", 0, 16), lambda w: None)


def test_unsupported_range_start_rejected():
    # Starts other than 0 and 1 cannot hit the exact scaffold cost; the
    # emitter refuses rather than emitting an off-cost circuit.
    c = iteration_circuit(3, 3)
    with pytest.raises(ValueError, match="cannot be scaffolded"):
        emit_unary_iteration(c, IterationSpec("idx", 3, 8), lambda w: None)
