"""
Exception hierarchy for the lab.

Every error raised on purpose by the package derives from LabError. Classes
also derive from the builtin that fits the situation so callers catching
ValueError or ArithmeticError keep working.
"""
from typing import List, Optional, Sequence, Tuple


class LabError(Exception):
    """Base class for all lab errors"""


class ConfigError(LabError, ValueError):
    """Invalid configuration, flag or config-file value"""


class ParameterError(ConfigError):
    """Invalid numeric parameter (degenerate sizes, empty ranges)"""


class ShapeError(LabError, ValueError):
    """Matrix or dataset dimension mismatch"""

    def __init__(self, message: str, *shapes: Tuple[int, ...]):
        if shapes:
            message = f"{message}: " + " vs ".join(str(tuple(s)) for s in shapes)
        super().__init__(message)
        self.shapes = shapes


class DegenerateInputError(LabError, ValueError):
    """Input with no direction (zero norm) where a direction is needed"""


class DataError(LabError):
    """Base class for dataset and I/O failures"""


class IdxFormatError(DataError):
    """IDX payload carries an unexpected magic number"""

    def __init__(self, observed_magic: int, expected_magic: int):
        super().__init__(
            f"IDX magic mismatch: observed 0x{observed_magic:08X}, expected 0x{expected_magic:08X}"
        )
        self.observed_magic = observed_magic
        self.expected_magic = expected_magic


class IdxLengthError(DataError):
    """IDX payload shorter (or longer) than its header claims"""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"IDX length mismatch: expected {expected} bytes, got {actual}")
        self.expected = expected
        self.actual = actual


class LabelDomainError(DataError):
    """Label byte outside the class range"""

    def __init__(self, value: int, index: int, num_classes: int):
        super().__init__(f"Label {value} at index {index} is outside [0, {num_classes - 1}]")
        self.value = value
        self.index = index


class PairingError(DataError):
    """Image and label sets do not pair up"""


class DatasetNotFoundError(DataError):
    """Expected dataset file is missing"""

    def __init__(self, path: str, searched: Optional[Sequence[str]] = None):
        message = f"Dataset file not found: {path}"
        if searched:
            message += f" (searched: {', '.join(searched)})"
        super().__init__(message)
        self.path = path


class NumericError(LabError, ArithmeticError):
    """Non-finite value produced during a backward pass"""

    def __init__(self, message: str, layer: Optional[int] = None, step: Optional[int] = None):
        details = []
        if layer is not None:
            details.append(f"layer={layer}")
        if step is not None:
            details.append(f"step={step}")
        if details:
            message = f"{message} ({', '.join(details)})"
        super().__init__(message)
        self.layer = layer
        self.step = step


class TrainingAborted(NumericError):
    """Training stopped on a non-finite loss or delta"""

    def __init__(self, step: int, rule: str, reason: str = "Non-finite loss",
                 partial_metrics: Optional[List] = None):
        super().__init__(f"{reason}, rule={rule}", step=step)
        self.rule = rule
        self.reason = reason
        self.partial_metrics = list(partial_metrics or [])
