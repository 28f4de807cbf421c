from dataclasses import dataclass, field
from typing import Iterable

from ..exceptions import ObservableFormatError, ParameterError

PAULI_CHARS = frozenset('IXYZ')


@dataclass
class Observable:
    """Real linear combination of Pauli strings; character i acts on qubit i."""

    n_qubits: int
    terms: list[tuple[float, str]] = field(default_factory=list)

    def __post_init__(self):
        for coeff, pauli in self.terms:
            if len(pauli) != self.n_qubits:
                raise ParameterError('pauli', f'{pauli!r} has length {len(pauli)}, expected {self.n_qubits}')
            if set(pauli) - PAULI_CHARS:
                raise ParameterError('pauli', f'{pauli!r} contains characters outside IXYZ')

    @classmethod
    def single(cls, pauli: str, coeff: float = 1.0) -> 'Observable':
        return cls(len(pauli), [(float(coeff), pauli)])

    @classmethod
    def from_sparse(cls, n_qubits: int, terms: Iterable[tuple[float, dict[int, str]]]) -> 'Observable':
        """Build from (coeff, {qubit: 'X'|'Y'|'Z'}) pairs."""
        dense = []
        for coeff, ops in terms:
            chars = ['I'] * n_qubits
            for q, p in ops.items():
                chars[q] = p
            dense.append((float(coeff), ''.join(chars)))
        return cls(n_qubits, dense)

    def remap(self, mapping: dict[int, int] | list[int], n_qubits: int) -> 'Observable':
        """Move the operator on qubit i to qubit mapping[i] of an n_qubits register."""
        out = []
        for coeff, pauli in self.terms:
            chars = ['I'] * n_qubits
            for q, p in enumerate(pauli):
                if p != 'I':
                    chars[mapping[q]] = p
            out.append((coeff, ''.join(chars)))
        return Observable(n_qubits, out)

    def __len__(self) -> int:
        return len(self.terms)


def parse_observable(text: str) -> Observable:
    """Parse "coefficient PAULISTRING" lines; '#' starts a comment."""
    terms: list[tuple[float, str]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ObservableFormatError(lineno, "expected 'coefficient PAULISTRING'")
        try:
            coeff = float(parts[0])
        except ValueError:
            raise ObservableFormatError(lineno, f'bad coefficient {parts[0]!r}') from None
        pauli = parts[1].upper()
        if set(pauli) - PAULI_CHARS:
            raise ObservableFormatError(lineno, f'bad Pauli string {parts[1]!r}')
        if width is None:
            width = len(pauli)
        elif len(pauli) != width:
            raise ObservableFormatError(lineno, f'Pauli string length {len(pauli)} differs from {width}')
        terms.append((coeff, pauli))

    if width is None:
        raise ObservableFormatError(1, 'no terms')
    return Observable(width, terms)


def emit_observable(obs: Observable) -> str:
    return ''.join(f'{coeff!r} {pauli}\n' for coeff, pauli in obs.terms)
