"""Line-based text format for circuits.

Header lines declare registers, then one gate per line, targets last::

    REGISTER addr_q 4 address_q
    REGISTER output 8 output
    TOFFOLI work 0 dirty 3 output 5

``#`` starts a comment (full line or trailing); lines are LF-terminated.
``parse_circuit(serialize_circuit(c))`` reproduces the register list and gate
list exactly.
"""
from __future__ import annotations

from .circuit import Circuit, GateKind, QubitRef, RegisterSpec, Role

__all__ = ["ParseError", "serialize_circuit", "parse_circuit"]


class ParseError(ValueError):
    """Malformed gate-list or table text; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def serialize_circuit(circuit: Circuit) -> str:
    lines = [
        f"REGISTER {reg.name} {reg.size} {reg.role.value}" for reg in circuit.registers
    ]
    for gate in circuit.gates:
        parts = [gate.kind.value]
        for ref in gate.operands:
            parts.append(ref.register)
            parts.append(str(ref.offset))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    registers: list[RegisterSpec] = []
    seen_names: set[str] = set()
    pending_gates: list[tuple[int, str, list[str]]] = []
    in_header = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "REGISTER":
            if not in_header:
                raise ParseError(lineno, "REGISTER after first gate line")
            if len(tokens) != 4:
                raise ParseError(lineno, "expected: REGISTER <name> <size> <role>")
            _, name, size_s, role_s = tokens
            try:
                size = int(size_s)
            except ValueError:
                raise ParseError(lineno, f"bad register size {size_s!r}") from None
            try:
                role = Role(role_s)
            except ValueError:
                raise ParseError(lineno, f"unknown register role {role_s!r}") from None
            if name in seen_names:
                raise ParseError(lineno, f"duplicate register name {name!r}")
            seen_names.add(name)
            registers.append(_make_register(lineno, name, size, role))
        else:
            in_header = False
            pending_gates.append((lineno, tokens[0], tokens[1:]))

    circuit = Circuit(registers)
    for lineno, kind_s, rest in pending_gates:
        try:
            kind = GateKind(kind_s)
        except ValueError:
            raise ParseError(lineno, f"unknown gate kind {kind_s!r}") from None
        if len(rest) % 2 != 0:
            raise ParseError(lineno, "operands must be <register> <offset> pairs")
        operands = []
        for reg_name, offset_s in zip(rest[::2], rest[1::2]):
            try:
                offset = int(offset_s)
            except ValueError:
                raise ParseError(lineno, f"bad qubit offset {offset_s!r}") from None
            operands.append(QubitRef(reg_name, offset))
        try:
            circuit.append(kind, *operands)
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    return circuit


def _make_register(lineno: int, name: str, size: int, role: Role) -> RegisterSpec:
    try:
        return RegisterSpec(name, size, role)
    except ValueError as exc:
        raise ParseError(lineno, str(exc)) from None
