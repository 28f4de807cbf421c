import re
from pathlib import Path

from ..exceptions import CircuitFormatError, ParameterError
from .ir import Circuit, Gate, GateKind


class FileReader:
    @staticmethod
    def read_full_content(file_path: Path) -> str:
        with open(file_path, 'r', encoding='ascii') as f:
            return f.read()

    @staticmethod
    def write_content(file_path: Path, content: str) -> None:
        with open(file_path, 'w', encoding='ascii', newline='\n') as f:
            f.write(content)


class CircuitParser:
    """Line-oriented circuit text.

    Header ``qubits N`` and optional ``clbits M``, then one gate per line:
    mnemonic, operand indices, angle in radians where the kind takes one.
    Mnemonics are case-insensitive; ``#`` starts a comment.
    """

    HEADER_PATTERNS = {
        'qubits': re.compile(r'^qubits\s+(\d+)$', re.IGNORECASE),
        'clbits': re.compile(r'^clbits\s+(\d+)$', re.IGNORECASE),
    }

    def parse_file(self, file_path: Path) -> Circuit:
        file_path = Path(file_path)
        circuit = self.parse_text(FileReader.read_full_content(file_path))
        circuit.name = file_path.stem
        return circuit

    def parse_text(self, text: str) -> Circuit:
        lines = [(i, raw.split('#', 1)[0].strip()) for i, raw in enumerate(text.splitlines(), start=1)]
        lines = [(i, line) for i, line in lines if line]
        if not lines:
            raise CircuitFormatError(1, "missing 'qubits N' header")

        n_qubits, n_clbits, body = self._extract_header(lines)
        written: set[int] = set()
        gates = []
        for lineno, line in body:
            gate = self._parse_gate_line(lineno, line, n_qubits, n_clbits)
            if gate.kind is GateKind.CONDX and gate.clbit not in written:
                raise CircuitFormatError(lineno, f'condx reads clbit {gate.clbit} before any measure')
            if gate.kind is GateKind.MEASURE:
                written.add(gate.clbit)
            gates.append(gate)
        return Circuit(n_qubits, gates, n_clbits)

    def _extract_header(self, lines: list[tuple[int, str]]) -> tuple[int, int, list[tuple[int, str]]]:
        lineno, first = lines[0]
        match = self.HEADER_PATTERNS['qubits'].match(first)
        if not match:
            raise CircuitFormatError(lineno, "first statement must be 'qubits N'")
        n_qubits = int(match.group(1))

        n_clbits = 0
        rest = lines[1:]
        if rest:
            match = self.HEADER_PATTERNS['clbits'].match(rest[0][1])
            if match:
                n_clbits = int(match.group(1))
                rest = rest[1:]
        return n_qubits, n_clbits, rest

    def _parse_gate_line(self, lineno: int, line: str, n_qubits: int, n_clbits: int) -> Gate:
        mnemonic, *fields = line.split()
        try:
            kind = GateKind(mnemonic.lower())
        except ValueError:
            raise CircuitFormatError(lineno, f'unknown mnemonic {mnemonic!r}') from None

        expected = kind.arity + (1 if kind.has_angle or kind.uses_clbit else 0)
        if len(fields) != expected:
            raise CircuitFormatError(lineno, f'{kind.value} expects {expected} field(s), got {len(fields)}')

        try:
            qubits = tuple(int(f) for f in fields[: kind.arity])
        except ValueError:
            raise CircuitFormatError(lineno, 'qubit operands must be integers') from None
        for q in qubits:
            if not 0 <= q < n_qubits:
                raise CircuitFormatError(lineno, f'qubit {q} outside 0..{n_qubits - 1}')

        angle = clbit = None
        if kind.has_angle:
            try:
                angle = float(fields[-1])
            except ValueError:
                raise CircuitFormatError(lineno, f'bad angle {fields[-1]!r}') from None
        elif kind.uses_clbit:
            try:
                clbit = int(fields[-1])
            except ValueError:
                raise CircuitFormatError(lineno, f'bad clbit {fields[-1]!r}') from None
            if not 0 <= clbit < n_clbits:
                raise CircuitFormatError(lineno, f'clbit {clbit} outside 0..{n_clbits - 1}')

        try:
            return Gate(kind, qubits, angle, clbit)
        except ParameterError as exc:
            raise CircuitFormatError(lineno, str(exc)) from None


def parse_circuit(text: str) -> Circuit:
    return CircuitParser().parse_text(text)


def emit_circuit(c: Circuit) -> str:
    lines = [f'qubits {c.n_qubits}']
    if c.n_clbits:
        lines.append(f'clbits {c.n_clbits}')
    for gate in c.gates:
        parts = [gate.kind.value, *(str(q) for q in gate.qubits)]
        if gate.angle is not None:
            parts.append(repr(gate.angle))
        if gate.clbit is not None:
            parts.append(str(gate.clbit))
        lines.append(' '.join(parts))
    return '\n'.join(lines) + '\n'
