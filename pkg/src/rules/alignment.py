"""
Alignment diagnostics between two sets of updates.
"""
from typing import List, Optional

from src.models.data_models import UpdateSet
from src.models.exceptions import DegenerateInputError, ShapeError
from src.numerics.linalg import angle_degrees


def measure_alignment(u: UpdateSet, v: UpdateSet) -> List[Optional[float]]:
    """
    Per-layer angle in degrees between the weight updates of u and v.

    Layers where either update is all zeros are reported as None rather
    than failing the whole measurement.

    Raises:
        ShapeError: if u and v are not shaped alike
    """
    if len(u.weight_grads) != len(v.weight_grads):
        raise ShapeError("Update sets have different depths",
                         (len(u.weight_grads),), (len(v.weight_grads),))
    angles: List[Optional[float]] = []
    for a, b in zip(u.weight_grads, v.weight_grads):
        try:
            angles.append(angle_degrees(a, b))
        except DegenerateInputError:
            angles.append(None)
    return angles
