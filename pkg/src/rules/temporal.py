"""
Temporal state for iterative temporal differencing.
"""
from typing import Sequence

import numpy as np

from src.constants import TEMPORAL_INIT_ACTIVATION, TEMPORAL_INIT_PRE_ACTIVATION
from src.models.data_models import ForwardTrace, TemporalState
from src.models.exceptions import ShapeError
from src.network.mlp import validate_sizes
from src.numerics import linalg


def init_temporal(sizes: Sequence[int]) -> TemporalState:
    """
    Fresh state: every hidden unit starts at y = 0.5, z = 0 (the sigmoid at zero input).
    """
    validate_sizes(sizes)
    hidden = list(sizes[1:-1])
    return TemporalState(
        mean_activations=[np.full((1, d), TEMPORAL_INIT_ACTIVATION) for d in hidden],
        mean_pre_activations=[np.full((1, d), TEMPORAL_INIT_PRE_ACTIVATION) for d in hidden],
        step=0,
    )


def check_temporal(ts: TemporalState, trace: ForwardTrace) -> None:
    """
    Raises:
        ShapeError: if the state does not match the trace's hidden layers
    """
    hidden_count = trace.num_layers - 1
    if len(ts.mean_activations) != hidden_count or len(ts.mean_pre_activations) != hidden_count:
        raise ShapeError(
            "Temporal state layer count does not match the trace",
            (len(ts.mean_activations),), (hidden_count,)
        )
    for k in range(hidden_count):
        width = trace.activations[k + 1].shape[1]
        for stored in (ts.mean_activations[k], ts.mean_pre_activations[k]):
            if stored.shape != (1, width):
                raise ShapeError(f"Temporal state shape mismatch at hidden layer {k + 1}",
                                 stored.shape, (1, width))


def update_temporal(ts: TemporalState, trace: ForwardTrace) -> TemporalState:
    """
    Remember this step's batch means; called once per step, after backward.

    Returns:
        New state; `ts` itself is left unchanged
    """
    check_temporal(ts, trace)
    hidden_count = trace.num_layers - 1
    return TemporalState(
        mean_activations=[linalg.mean_rows(trace.activations[k + 1]) for k in range(hidden_count)],
        mean_pre_activations=[linalg.mean_rows(trace.pre_activations[k]) for k in range(hidden_count)],
        step=ts.step + 1,
    )
