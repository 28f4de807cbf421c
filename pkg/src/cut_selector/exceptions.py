class CutSelectorError(Exception):
    """Base class for errors raised by the cut selector."""


class ParameterError(CutSelectorError, ValueError):
    """An invalid parameter; `field` names the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f'Invalid {field}: {message}')


class _LineError(CutSelectorError, ValueError):
    kind = 'input'

    def __init__(self, line: int, message: str):
        self.line = line
        self.reason = message
        super().__init__(f'{self.kind} line {line}: {message}')


class CircuitFormatError(_LineError):
    kind = 'circuit'


class GraphFormatError(_LineError):
    kind = 'graph'


class ObservableFormatError(_LineError):
    kind = 'observable'


class NoTwoQubitGatesError(CutSelectorError):
    """Selection or cutting requested on a circuit without two-qubit gates."""


class SimulationLimitError(CutSelectorError):
    """Circuit too wide for the requested simulation method."""


class RoutingError(CutSelectorError):
    """Circuit cannot be placed or routed on the coupling map."""
