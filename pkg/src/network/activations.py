"""
Activation functions.

The hidden-layer derivative lives here on its own so the backward rules can
be checked for whether they ever reach it.
"""
import numpy as np

from src.models.data_models import Matrix


def sigmoid(z: Matrix) -> Matrix:
    """
    Logistic function in the overflow-safe two-branch form.

    exp is only ever taken of -|z|, so large magnitudes saturate to 0 or 1
    instead of overflowing.
    """
    e = np.exp(-np.abs(z))
    return np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


def sigmoid_prime(z: Matrix) -> Matrix:
    """Derivative of the logistic function, sigma(z) * (1 - sigma(z))"""
    s = sigmoid(z)
    return s * (1.0 - s)


def softmax(z: Matrix) -> Matrix:
    """Row-wise softmax with max subtraction"""
    shifted = z - np.max(z, axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / np.sum(e, axis=1, keepdims=True)
