"""
Multilayer perceptron: initialization, forward pass, loss and accuracy.
"""
import math
from typing import Sequence

import numpy as np

from src.constants import PROBABILITY_FLOOR, STREAM_INIT
from src.models.data_models import ForwardTrace, Matrix, Mlp
from src.models.exceptions import ParameterError, ShapeError
from src.network import activations
from src.numerics import linalg
from src.numerics.rng import Rng, rand_uniform


def validate_sizes(sizes: Sequence[int]) -> None:
    """
    Check a layer-width list.

    Raises:
        ParameterError: fewer than two layers or a width below 1
    """
    if len(sizes) < 2:
        raise ParameterError(f"Need at least an input and an output layer, got {list(sizes)}")
    if any(int(s) < 1 for s in sizes):
        raise ParameterError(f"Every layer width must be at least 1, got {list(sizes)}")


def init_mlp(sizes: Sequence[int], seed: int) -> Mlp:
    """
    Initialize a network.

    W_l entries are uniform in [-1/sqrt(d_{l-1}), 1/sqrt(d_{l-1})) drawn layer
    by layer from the "init" sub-stream; biases start at zero.

    Args:
        sizes: Layer widths [d0, ..., dL]
        seed: Master seed

    Returns:
        Fresh Mlp
    """
    validate_sizes(sizes)
    rng = Rng.substream(seed, STREAM_INIT)
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        bound = 1.0 / math.sqrt(fan_in)
        weights.append(rand_uniform(rng, fan_out, fan_in, -bound, bound))
        biases.append(np.zeros((1, fan_out), dtype=np.float64))
    return Mlp(sizes=tuple(int(s) for s in sizes), weights=weights, biases=biases)


def forward(mlp: Mlp, X: Matrix) -> ForwardTrace:
    """
    Forward pass keeping every pre-activation and activation.

    z_l = y_{l-1} W_l^T + b_l; hidden layers apply the sigmoid, the output
    layer a row-wise softmax.

    Raises:
        ShapeError: if X does not have d0 columns
    """
    if X.ndim != 2 or X.shape[1] != mlp.sizes[0]:
        raise ShapeError("Input width does not match the network", X.shape, (X.shape[0], mlp.sizes[0]))

    activations_out = [X]
    pre_activations = []
    y = X
    last = mlp.num_layers - 1
    for k, (W, b) in enumerate(zip(mlp.weights, mlp.biases)):
        z = linalg.add_row(linalg.matmul(y, linalg.transpose(W)), b)
        y = activations.softmax(z) if k == last else activations.sigmoid(z)
        pre_activations.append(z)
        activations_out.append(y)
    return ForwardTrace(activations=activations_out, pre_activations=pre_activations)


def cross_entropy(probs: Matrix, targets: Matrix) -> float:
    """
    Mean negative log-probability of the true class.

    Probabilities are floored at 1e-12 before the log.

    Raises:
        ShapeError: on a shape mismatch
    """
    if probs.shape != targets.shape:
        raise ShapeError("cross_entropy shape mismatch", probs.shape, targets.shape)
    true_prob = np.sum(probs * targets, axis=1)
    return float(np.mean(-np.log(np.maximum(true_prob, PROBABILITY_FLOOR))))


def cross_entropy_sum(probs: Matrix, targets: Matrix) -> float:
    """Summed (not averaged) cross-entropy, for aggregating over chunks"""
    if probs.shape != targets.shape:
        raise ShapeError("cross_entropy shape mismatch", probs.shape, targets.shape)
    true_prob = np.sum(probs * targets, axis=1)
    return float(np.sum(-np.log(np.maximum(true_prob, PROBABILITY_FLOOR))))


def correct_count(probs: Matrix, targets: Matrix) -> int:
    """Rows whose argmax matches the target's (ties go to the lowest index)"""
    if probs.shape != targets.shape:
        raise ShapeError("accuracy shape mismatch", probs.shape, targets.shape)
    return int(np.sum(np.argmax(probs, axis=1) == np.argmax(targets, axis=1)))


def accuracy(probs: Matrix, targets: Matrix) -> float:
    """Fraction of rows classified correctly"""
    if probs.shape[0] == 0:
        return 0.0
    return correct_count(probs, targets) / probs.shape[0]
