"""
Finite-difference check of the VBP updates on a small network.
"""
from typing import List, Optional

import numpy as np

from src.constants import (
    GRADCHECK_BATCH, GRADCHECK_DENOMINATOR_FLOOR, GRADCHECK_SIZES, GRADCHECK_STEP,
    GRADCHECK_THRESHOLD, STREAM_GRADCHECK,
)
from src.models.data_models import GradcheckEntry, GradcheckReport, Matrix, Mlp, RuleKind
from src.models.exceptions import ParameterError
from src.network.mlp import cross_entropy, forward, init_mlp
from src.numerics.rng import Rng, rand_normal, rand_uniform
from src.rules.backward import backward
from src.utils.logger import get_logger


def relative_error(analytic: Matrix, numeric: Matrix,
                   floor: float = GRADCHECK_DENOMINATOR_FLOOR) -> Matrix:
    """|a - n| / max(|a|, |n|, floor), elementwise"""
    denominator = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), floor)
    return np.abs(analytic - numeric) / denominator


def _loss(mlp: Mlp, X: Matrix, T: Matrix) -> float:
    return cross_entropy(forward(mlp, X).output, T)


def numeric_gradient(mlp: Mlp, X: Matrix, T: Matrix, tensor: Matrix, h: float) -> Matrix:
    """Central differences of the batch loss w.r.t. every entry of `tensor` (a parameter of mlp)"""
    grad = np.zeros_like(tensor)
    for index in np.ndindex(tensor.shape):
        original = tensor[index]
        tensor[index] = original + h
        plus = _loss(mlp, X, T)
        tensor[index] = original - h
        minus = _loss(mlp, X, T)
        tensor[index] = original
        grad[index] = (plus - minus) / (2.0 * h)
    return grad


def gradcheck(seed: int = 0, h: float = GRADCHECK_STEP, threshold: float = GRADCHECK_THRESHOLD,
              corrupt_layer: Optional[int] = None) -> GradcheckReport:
    """
    Compare VBP updates with central differences on a 4-3-2 network, batch of 2.

    Args:
        seed: Seed for weights, biases, inputs and labels
        h: Finite-difference step
        threshold: Largest relative error that still passes
        corrupt_layer: Negate the analytic weight update of this layer (0-based);
            used to confirm the check can fail

    Returns:
        GradcheckReport with the worst error per parameter tensor
    """
    if not h > 0:
        raise ParameterError(f"Finite-difference step must be positive, got {h}")

    sizes = GRADCHECK_SIZES
    mlp = init_mlp(sizes, seed)
    rng = Rng.substream(seed, STREAM_GRADCHECK)
    mlp.biases = [rand_uniform(rng, 1, d, -0.5, 0.5) for d in sizes[1:]]
    X = rand_normal(rng, GRADCHECK_BATCH, sizes[0])
    labels = rng.integers(GRADCHECK_BATCH, sizes[-1])
    T = np.zeros((GRADCHECK_BATCH, sizes[-1]), dtype=np.float64)
    T[np.arange(GRADCHECK_BATCH), labels] = 1.0

    updates = backward(RuleKind.VBP, mlp, None, forward(mlp, X), T)
    if corrupt_layer is not None:
        if not 0 <= corrupt_layer < mlp.num_layers:
            raise ParameterError(f"corrupt_layer must be in [0, {mlp.num_layers - 1}], got {corrupt_layer}")
        updates.weight_grads[corrupt_layer] = -updates.weight_grads[corrupt_layer]

    entries: List[GradcheckEntry] = []
    for k in range(mlp.num_layers):
        pairs = [
            (f"W{k + 1}", mlp.weights[k], updates.weight_grads[k]),
            (f"b{k + 1}", mlp.biases[k], updates.bias_grads[k]),
        ]
        for name, tensor, analytic in pairs:
            numeric = numeric_gradient(mlp, X, T, tensor, h)
            entries.append(GradcheckEntry(name=name, max_rel_err=float(np.max(relative_error(analytic, numeric)))))

    logger = get_logger()
    for entry in entries:
        logger.debug(f"gradcheck {entry.name}: max_rel_err={entry.max_rel_err:.3e}")

    return GradcheckReport(
        seed=seed, step=h, threshold=threshold,
        max_rel_err=max(e.max_rel_err for e in entries),
        entries=entries,
    )
