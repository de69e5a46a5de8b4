"""
Dense matrix operations.

Thin, shape-checked wrappers around numpy. Every function returns a fresh
float64 array and leaves its inputs untouched. Sums over an inner dimension
accumulate in plain left-to-right order, never through BLAS.
"""
import math

import numpy as np

from src.models.data_models import Matrix
from src.models.exceptions import DegenerateInputError, ShapeError


def _require_2d(*matrices: Matrix) -> None:
    for m in matrices:
        if m.ndim != 2:
            raise ShapeError("Expected a 2-D matrix", m.shape)


def _require_same_shape(a: Matrix, b: Matrix, operation: str) -> None:
    _require_2d(a, b)
    if a.shape != b.shape:
        raise ShapeError(f"{operation} shape mismatch", a.shape, b.shape)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """
    Matrix product a x b.

    Raises:
        ShapeError: if a.cols != b.rows
    """
    _require_2d(a, b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError("matmul dimension mismatch", a.shape, b.shape)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.float64)
    for k in range(a.shape[1]):
        out += a[:, k:k + 1] * b[k:k + 1, :]
    return out


def transpose(a: Matrix) -> Matrix:
    """Transposed copy"""
    _require_2d(a)
    return np.ascontiguousarray(a.T)


def hadamard(a: Matrix, b: Matrix) -> Matrix:
    """Elementwise product of two same-shaped matrices"""
    _require_same_shape(a, b, "hadamard")
    return np.multiply(a, b)


def mean_rows(a: Matrix) -> Matrix:
    """1 x cols matrix of column means"""
    _require_2d(a)
    if a.shape[0] < 1:
        raise ShapeError("mean_rows needs at least one row", a.shape)
    total = np.zeros((1, a.shape[1]), dtype=np.float64)
    for i in range(a.shape[0]):
        total += a[i:i + 1, :]
    return total / a.shape[0]


def broadcast_rows(row: Matrix, rows: int) -> Matrix:
    """
    Replicate a 1 x cols row into a rows x cols matrix.

    This is the only broadcasting the backward rules rely on.
    """
    _require_2d(row)
    if row.shape[0] != 1:
        raise ShapeError("broadcast_rows expects a single row", row.shape)
    return np.repeat(row, rows, axis=0)


def add_row(a: Matrix, row: Matrix) -> Matrix:
    """Add a 1 x cols row to every row of a"""
    _require_2d(a, row)
    if row.shape != (1, a.shape[1]):
        raise ShapeError("row broadcast mismatch", a.shape, row.shape)
    return a + row


def subtract(a: Matrix, b: Matrix) -> Matrix:
    _require_same_shape(a, b, "subtract")
    return np.subtract(a, b)


def scale(a: Matrix, factor: float) -> Matrix:
    _require_2d(a)
    return a * float(factor)


def frobenius_dot(a: Matrix, b: Matrix) -> float:
    """Frobenius inner product <a, b>"""
    _require_same_shape(a, b, "frobenius_dot")
    return float(np.sum(np.multiply(a, b)))


def angle_degrees(a: Matrix, b: Matrix) -> float:
    """
    Angle between two matrices viewed as vectors, in degrees.

    Computed as arccos(<a,b> / sqrt(<a,a><b,b>)) clamped to [0, 180]; the
    single square root keeps angle(a, a) == 0 and angle(a, -a) == 180 exact.
    Each input is first divided by its largest magnitude, so the dot products
    stay in range for very small or very large entries.

    Raises:
        ShapeError: on shape mismatch
        DegenerateInputError: if either input has zero norm
    """
    _require_same_shape(a, b, "angle_degrees")
    a_max = float(np.max(np.abs(a)))
    b_max = float(np.max(np.abs(b)))
    if a_max == 0.0 or b_max == 0.0:
        raise DegenerateInputError("angle_degrees is undefined for a zero-norm matrix")
    a = a / a_max
    b = b / b_max
    aa = frobenius_dot(a, a)
    bb = frobenius_dot(b, b)
    cosine = frobenius_dot(a, b) / math.sqrt(aa * bb)
    cosine = min(1.0, max(-1.0, cosine))
    return min(180.0, max(0.0, math.degrees(math.acos(cosine))))


def is_finite(*matrices: Matrix) -> bool:
    """True when every entry of every matrix is finite"""
    return all(bool(np.all(np.isfinite(m))) for m in matrices)
