"""
Fixed random feedback weights.
"""
import math
from typing import Sequence

from src.constants import STREAM_FEEDBACK
from src.models.data_models import FeedbackWeights
from src.network.mlp import validate_sizes
from src.numerics.rng import Rng, rand_uniform


def init_feedback(sizes: Sequence[int], seed: int) -> FeedbackWeights:
    """
    Draw the backward matrices once for a whole run.

    B_l stands in for W_{l+1}^T, so it is shaped (d_l x d_{l+1}) with entries
    uniform in [-1/sqrt(d_{l+1}), 1/sqrt(d_{l+1})). Draws come from the
    "feedback" sub-stream and never touch the forward-weight stream.

    Args:
        sizes: Layer widths [d0, ..., dL]
        seed: Master seed

    Returns:
        FeedbackWeights with one matrix per hidden layer (empty without hidden layers)
    """
    validate_sizes(sizes)
    rng = Rng.substream(seed, STREAM_FEEDBACK)
    matrices = []
    for width, upstream in zip(sizes[1:-1], sizes[2:]):
        bound = 1.0 / math.sqrt(upstream)
        matrices.append(rand_uniform(rng, width, upstream, -bound, bound))
    return FeedbackWeights(matrices=matrices)
