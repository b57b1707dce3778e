import numpy as np
import pytest

from qromkit import (
    BitState,
    GateKind,
    LookupTable,
    QubitRef,
    RegisterSpec,
    Role,
    SimulationError,
    batch_simulate,
    build_qrom,
    new_circuit,
    plan_qrom,
    simulate,
    verify_qrom,
)
from qromkit.simulate import qubit_indexer
from helpers import inverse_circuit, random_table


def single_register(size=4):
    return new_circuit([RegisterSpec("r", size, Role.DIRTY)])


def test_empty_circuit_identity():
    c = single_register()
    state = BitState.for_circuit(c, {"r": 0b1010})
    assert simulate(c, state).register_value("r") == 0b1010


def test_x_involution():
    c = single_register(1)
    c.append(GateKind.X, QubitRef("r", 0))
    c.append(GateKind.X, QubitRef("r", 0))
    state = BitState.for_circuit(c, {"r": 0})
    assert simulate(c, state).register_value("r") == 0


@pytest.mark.parametrize("controls,expect_flip", [(0b11, True), (0b01, False), (0b10, False), (0b00, False)])
def test_toffoli_truth_table(controls, expect_flip):
    c = single_register(3)
    c.append(GateKind.TOFFOLI, QubitRef("r", 0), QubitRef("r", 1), QubitRef("r", 2))
    state = BitState.for_circuit(c, {"r": controls})
    out = simulate(c, state).register_value("r")
    assert (out >> 2) & 1 == (1 if expect_flip else 0)


@pytest.mark.parametrize("control,swapped", [(1, True), (0, False)])
def test_cswap(control, swapped):
    c = single_register(3)
    c.append(GateKind.CSWAP, QubitRef("r", 0), QubitRef("r", 1), QubitRef("r", 2))
    state = BitState.for_circuit(c, {"r": control | 0b010})
    out = simulate(c, state).register_value("r")
    expected = (control | 0b100) if swapped else (control | 0b010)
    assert out == expected


def test_cnot():
    c = single_register(2)
    c.append(GateKind.CNOT, QubitRef("r", 0), QubitRef("r", 1))
    assert simulate(c, BitState.for_circuit(c, {"r": 0b01})).register_value("r") == 0b11
    assert simulate(c, BitState.for_circuit(c, {"r": 0b00})).register_value("r") == 0b00


def test_temp_and_requires_zero_target():
    c = single_register(3)
    c.append(GateKind.TEMP_AND, QubitRef("r", 0), QubitRef("r", 1), QubitRef("r", 2))
    with pytest.raises(SimulationError, match="not 0"):
        simulate(c, BitState.for_circuit(c, {"r": 0b100}))


def test_temp_and_uncompute_must_clear():
    c = single_register(3)
    c.append(GateKind.TEMP_AND_UNCOMPUTE, QubitRef("r", 0), QubitRef("r", 1), QubitRef("r", 2))
    with pytest.raises(SimulationError, match="left target"):
        simulate(c, BitState.for_circuit(c, {"r": 0b100}))


def test_batch_matches_scalar():
    table = random_table(16, 3, seed=5)
    plan = plan_qrom(16, 3, 4, 2)
    circuit = build_qrom(table, plan)
    index = qubit_indexer(circuit)
    rng = np.random.default_rng(9)
    cases = []
    for _ in range(20):
        x = int(rng.integers(0, 16))
        phi = int(rng.integers(0, 1 << plan.dirty_qubits))
        cases.append((x, phi))
    matrix = np.zeros((circuit.num_qubits, len(cases)), dtype=np.uint8)
    for j, (x, phi) in enumerate(cases):
        for off in range(plan.q_bits):
            matrix[index[QubitRef("addr_q", off)], j] = (x >> (plan.r_bits + off)) & 1
        for off in range(plan.r_bits):
            matrix[index[QubitRef("addr_r", off)], j] = (x >> off) & 1
        for off in range(plan.dirty_qubits):
            matrix[index[QubitRef("dirty", off)], j] = (phi >> off) & 1
    final = batch_simulate(circuit, matrix)
    for j, (x, phi) in enumerate(cases):
        state = BitState.for_circuit(
            circuit,
            {"addr_q": x >> plan.r_bits, "addr_r": x & (plan.lam - 1), "dirty": phi},
        )
        scalar = simulate(circuit, state)
        for ref, row in index.items():
            assert scalar.bits[ref] == final[row, j], (ref, j)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_reversibility(seed):
    # Forward then reversed-inverse is the identity on any valid input.
    table = random_table(33, 5, seed=seed)
    plan = plan_qrom(33, 5, 4, 3)
    circuit = build_qrom(table, plan)
    rng = np.random.default_rng(seed)
    x = int(rng.integers(0, 33))
    phi = int(rng.integers(0, 1 << plan.dirty_qubits))
    state = BitState.for_circuit(
        circuit,
        {"addr_q": x >> plan.r_bits, "addr_r": x & (plan.lam - 1), "dirty": phi},
    )
    forward = simulate(circuit, state)
    back = simulate(inverse_circuit(circuit), forward)
    assert back.bits == state.bits


def test_reversibility_swap_network():
    from qromkit import build_selectswap_dirty

    table = random_table(16, 3, seed=6)
    circuit = build_selectswap_dirty(table, 4)
    state = BitState.for_circuit(
        circuit, {"addr_q": 2, "addr_r": 3, "dirty": 0b101101011}
    )
    forward = simulate(circuit, state)
    back = simulate(inverse_circuit(circuit), forward)
    assert back.bits == state.bits


def test_batch_matches_scalar_with_cswaps():
    from qromkit import build_selectswap_dirty

    table = random_table(8, 2, seed=8)
    circuit = build_selectswap_dirty(table, 2)
    index = qubit_indexer(circuit)
    matrix = np.zeros((circuit.num_qubits, 8), dtype=np.uint8)
    states = []
    for j in range(8):
        x = j % 8
        values = {"addr_q": x >> 1, "addr_r": x & 1, "dirty": (x * 3) % 4}
        states.append(BitState.for_circuit(circuit, values))
        for ref, row in index.items():
            matrix[row, j] = states[-1].bits[ref]
    final = batch_simulate(circuit, matrix)
    for j, state in enumerate(states):
        scalar = simulate(circuit, state)
        for ref, row in index.items():
            assert scalar.bits[ref] == final[row, j]


class TestVerifyQrom:
    def test_spec_case(self):
        table = LookupTable((0, 1, 2, 3, 0, 1, 2, 3), 2)
        plan = plan_qrom(8, 2, 4, 1)
        circuit = build_qrom(table, plan)
        # x = 5 with all-ones dirty pattern: output 0b01, dirty unchanged.
        state = BitState.for_circuit(
            circuit, {"addr_q": 1, "addr_r": 1, "dirty": (1 << plan.dirty_qubits) - 1}
        )
        final = simulate(circuit, state)
        assert final.register_value("output") == 0b01
        assert final.register_value("dirty") == (1 << plan.dirty_qubits) - 1
        report = verify_qrom(circuit, table, plan, dirty_trials=10, seed=3)
        assert report.passed and report.cases_run == 80

    def test_constant_table(self):
        table = LookupTable((0b101,) * 16, 3)
        plan = plan_qrom(16, 3, 4, 2)
        report = verify_qrom(build_qrom(table, plan), table, plan, dirty_trials=4, seed=1)
        assert report.passed

    def test_non_power_table_exhaustive(self):
        table = random_table(100, 5, seed=17)
        plan = plan_qrom(100, 5, 4, 2)
        report = verify_qrom(build_qrom(table, plan), table, plan, dirty_trials=10, seed=2)
        assert report.passed
        assert report.cases_run == 1000

    def test_fault_injection_reported(self):
        table = random_table(16, 2, seed=4)
        plan = plan_qrom(16, 2, 4, 1)
        circuit = build_qrom(table, plan)
        circuit.append(GateKind.X, QubitRef("output", 0))
        report = verify_qrom(circuit, table, plan, dirty_trials=2, seed=0)
        assert not report.passed
        assert "output" in report.failures[0].diagnostics

    def test_plan_table_mismatch(self):
        table = random_table(16, 2, seed=4)
        plan = plan_qrom(8, 2, 4, 1)
        circuit = build_qrom(random_table(8, 2, seed=4), plan)
        with pytest.raises(ValueError, match="dimensions"):
            verify_qrom(circuit, table, plan)

    def test_seeded_reports_reproduce(self):
        table = random_table(16, 3, seed=5)
        plan = plan_qrom(16, 3, 4, 2)
        circuit = build_qrom(table, plan)
        circuit.append(GateKind.X, QubitRef("output", 1))
        first = verify_qrom(circuit, table, plan, dirty_trials=5, seed=9)
        second = verify_qrom(circuit, table, plan, dirty_trials=5, seed=9)
        assert [f.dirty_pattern for f in first.failures] == [
            f.dirty_pattern for f in second.failures
        ]
        assert first.cases_run == second.cases_run
