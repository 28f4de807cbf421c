from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from ..exceptions import ParameterError


class GateKind(str, Enum):
    RX = 'rx'
    RZ = 'rz'
    H = 'h'
    X = 'x'
    SX = 'sx'
    RZZ = 'rzz'
    CX = 'cx'
    CZ = 'cz'
    SWAP = 'swap'
    MEASURE = 'measure'
    CONDX = 'condx'

    @property
    def arity(self) -> int:
        return 2 if self in TWO_QUBIT_KINDS else 1

    @property
    def has_angle(self) -> bool:
        return self in (GateKind.RX, GateKind.RZ, GateKind.RZZ)

    @property
    def uses_clbit(self) -> bool:
        return self in (GateKind.MEASURE, GateKind.CONDX)


TWO_QUBIT_KINDS = frozenset({GateKind.RZZ, GateKind.CX, GateKind.CZ, GateKind.SWAP})


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    angle: Optional[float] = None
    clbit: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', GateKind(self.kind))
        object.__setattr__(self, 'qubits', tuple(int(q) for q in self.qubits))
        if self.angle is not None:
            object.__setattr__(self, 'angle', float(self.angle))
        if len(self.qubits) != self.kind.arity:
            raise ParameterError('qubits', f'{self.kind.value} takes {self.kind.arity} operand(s), got {len(self.qubits)}')
        if self.kind.arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ParameterError('qubits', f'{self.kind.value} operands must be distinct')
        if self.kind.has_angle and self.angle is None:
            raise ParameterError('angle', f'{self.kind.value} needs an angle')
        if not self.kind.has_angle and self.angle is not None:
            raise ParameterError('angle', f'{self.kind.value} takes no angle')
        if self.kind.uses_clbit != (self.clbit is not None):
            raise ParameterError('clbit', f'{self.kind.value} clbit mismatch')

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in TWO_QUBIT_KINDS

    @property
    def pair(self) -> tuple[int, int]:
        """Unordered operand pair of a two-qubit gate as (min, max)."""
        a, b = self.qubits
        return (a, b) if a < b else (b, a)

    # constructors, mostly for tests and builders
    @classmethod
    def rx(cls, q: int, theta: float) -> 'Gate':
        return cls(GateKind.RX, (q,), float(theta))

    @classmethod
    def rz(cls, q: int, theta: float) -> 'Gate':
        return cls(GateKind.RZ, (q,), float(theta))

    @classmethod
    def h(cls, q: int) -> 'Gate':
        return cls(GateKind.H, (q,))

    @classmethod
    def x(cls, q: int) -> 'Gate':
        return cls(GateKind.X, (q,))

    @classmethod
    def sx(cls, q: int) -> 'Gate':
        return cls(GateKind.SX, (q,))

    @classmethod
    def rzz(cls, a: int, b: int, theta: float) -> 'Gate':
        return cls(GateKind.RZZ, (a, b), float(theta))

    @classmethod
    def cx(cls, control: int, target: int) -> 'Gate':
        return cls(GateKind.CX, (control, target))

    @classmethod
    def cz(cls, a: int, b: int) -> 'Gate':
        return cls(GateKind.CZ, (a, b))

    @classmethod
    def swap(cls, a: int, b: int) -> 'Gate':
        return cls(GateKind.SWAP, (a, b))

    @classmethod
    def measure(cls, q: int, clbit: int) -> 'Gate':
        return cls(GateKind.MEASURE, (q,), clbit=clbit)

    @classmethod
    def condx(cls, q: int, clbit: int) -> 'Gate':
        return cls(GateKind.CONDX, (q,), clbit=clbit)

    def remapped(self, mapping: dict[int, int] | list[int]) -> 'Gate':
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.angle, self.clbit)


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)
    n_clbits: int = 0
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        self.gates = list(self.gates)
        self.validate()

    def validate(self) -> None:
        written: set[int] = set()
        for pos, gate in enumerate(self.gates):
            for q in gate.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ParameterError('qubits', f'gate {pos}: qubit {q} outside 0..{self.n_qubits - 1}')
            if gate.clbit is not None:
                if not 0 <= gate.clbit < self.n_clbits:
                    raise ParameterError('clbit', f'gate {pos}: clbit {gate.clbit} outside 0..{self.n_clbits - 1}')
                if gate.kind is GateKind.CONDX and gate.clbit not in written:
                    raise ParameterError('clbit', f'gate {pos}: condx reads clbit {gate.clbit} before any measure')
                if gate.kind is GateKind.MEASURE:
                    written.add(gate.clbit)

    def append(self, gate: Gate) -> None:
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        self.gates.extend(gates)

    def two_qubit_positions(self) -> list[int]:
        return [i for i, g in enumerate(self.gates) if g.is_two_qubit]

    def count_two_qubit(self) -> int:
        return sum(1 for g in self.gates if g.is_two_qubit)

    def __len__(self) -> int:
        return len(self.gates)

    def copy(self) -> 'Circuit':
        return Circuit(self.n_qubits, list(self.gates), self.n_clbits, self.name)


def layers(c: Circuit) -> list[int]:
    """ASAP layer of every gate: 1 + the latest layer among earlier gates sharing a qubit."""
    depth = [0] * c.n_qubits
    result = []
    for gate in c.gates:
        layer = max(depth[q] for q in gate.qubits)
        result.append(layer)
        for q in gate.qubits:
            depth[q] = layer + 1
    return result


def layer_index(c: Circuit, position: int) -> int:
    if not 0 <= position < len(c.gates):
        raise ParameterError('position', f'{position} outside 0..{len(c.gates) - 1}')
    return layers(c)[position]


def replace_gate(c: Circuit, position: int, gates: Iterable[Gate], extra_clbits: int = 0) -> Circuit:
    """Copy of c with the gate at position replaced by gates."""
    if not 0 <= position < len(c.gates):
        raise ParameterError('gate_index', f'{position} outside 0..{len(c.gates) - 1}')
    new_gates = c.gates[:position] + list(gates) + c.gates[position + 1:]
    return Circuit(c.n_qubits, new_gates, c.n_clbits + extra_clbits, c.name)


def remove_gate(c: Circuit, position: int) -> Circuit:
    return replace_gate(c, position, ())
