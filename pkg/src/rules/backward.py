"""
Backward rules.

All four rules share the output delta y_L - T and the update formulas
dW_l = delta_l^T y_{l-1} / m, db_l = column means of delta_l. They differ in
how a hidden delta is formed from the delta above it:

  VBP     (delta_{l+1} W_{l+1})   * sigma'(z_l)
  FBA     (delta_{l+1} B_l^T)     * sigma'(z_l)
  ITD_Y   (delta_{l+1} B_l^T)     * D_l,  D_l = y_l - y_prev
  ITD_DY  (delta_{l+1} B_l^T)     * D_l,  D_l = clamp(dy / dz, +-0.25)

ITD surrogates come either from batch means of consecutive steps (the
temporal state) or, when a reference trace is passed, from the same batch
run through the previous step's parameters.
"""
from typing import List, Optional

import numpy as np

from src.constants import ITD_DY_DENOMINATOR_FLOOR, SIGMOID_MAX_SLOPE
from src.models.data_models import (
    FeedbackWeights, ForwardTrace, Matrix, Mlp, RuleKind, TemporalState, UpdateSet,
)
from src.models.exceptions import ConfigError, NumericError, ShapeError
from src.network import activations
from src.numerics import linalg
from src.rules.temporal import check_temporal


def output_delta(trace: ForwardTrace, T: Matrix) -> Matrix:
    """
    delta_L = y_L - T, the softmax/cross-entropy gradient w.r.t. z_L.

    Raises:
        ShapeError: if T does not match the output
    """
    if trace.output.shape != T.shape:
        raise ShapeError("Targets do not match network output", trace.output.shape, T.shape)
    return linalg.subtract(trace.output, T)


def floor_magnitude(values: Matrix, floor: float) -> Matrix:
    """Keep the sign, raise magnitudes below `floor` to `floor` (zero counts as positive)"""
    return np.where(np.abs(values) < floor, np.copysign(floor, values), values)


def _derivative_modulation(trace: ForwardTrace, k: int) -> Matrix:
    return activations.sigmoid_prime(trace.pre_activations[k])


def _itd_y_modulation(trace: ForwardTrace, ts: Optional[TemporalState], k: int,
                      reference: Optional[ForwardTrace]) -> Matrix:
    current = trace.activations[k + 1]
    if reference is not None:
        return linalg.subtract(current, reference.activations[k + 1])
    diff = linalg.subtract(linalg.mean_rows(current), ts.mean_activations[k])
    return linalg.broadcast_rows(diff, trace.batch_size)


def _itd_dy_modulation(trace: ForwardTrace, ts: Optional[TemporalState], k: int,
                       reference: Optional[ForwardTrace]) -> Matrix:
    y = trace.activations[k + 1]
    z = trace.pre_activations[k]
    if reference is not None:
        dy = linalg.subtract(y, reference.activations[k + 1])
        dz = linalg.subtract(z, reference.pre_activations[k])
    else:
        dy = linalg.subtract(linalg.mean_rows(y), ts.mean_activations[k])
        dz = linalg.subtract(linalg.mean_rows(z), ts.mean_pre_activations[k])
    quotient = np.clip(dy / floor_magnitude(dz, ITD_DY_DENOMINATOR_FLOOR),
                       -SIGMOID_MAX_SLOPE, SIGMOID_MAX_SLOPE)
    if reference is not None:
        return quotient
    return linalg.broadcast_rows(quotient, trace.batch_size)


def hidden_modulation(rule: RuleKind, trace: ForwardTrace, ts: Optional[TemporalState], k: int,
                      reference: Optional[ForwardTrace] = None) -> Matrix:
    """
    Per-unit factor that multiplies the back-projected error of hidden layer k + 1.

    Returns:
        m x d_{k+1} matrix: sigma'(z) for VBP/FBA, the temporal surrogate for ITD rules
    """
    if rule is RuleKind.VBP or rule is RuleKind.FBA:
        return _derivative_modulation(trace, k)
    if rule is RuleKind.ITD_Y:
        return _itd_y_modulation(trace, ts, k, reference)
    if rule is RuleKind.ITD_DY:
        return _itd_dy_modulation(trace, ts, k, reference)
    raise ConfigError(f"Unhandled rule {rule}")


def _back_projection(rule: RuleKind, mlp: Mlp, fb: Optional[FeedbackWeights], upstream: Matrix,
                     k: int) -> Matrix:
    if rule is RuleKind.VBP:
        return linalg.matmul(upstream, mlp.weights[k + 1])
    return linalg.matmul(upstream, linalg.transpose(fb.matrices[k]))


def _check_inputs(rule: RuleKind, mlp: Mlp, fb: Optional[FeedbackWeights], trace: ForwardTrace,
                  ts: Optional[TemporalState], reference: Optional[ForwardTrace]) -> None:
    if trace.num_layers != mlp.num_layers:
        raise ShapeError("Trace depth does not match the network", (trace.num_layers,), (mlp.num_layers,))
    hidden_count = mlp.num_layers - 1
    if rule.uses_feedback and hidden_count > 0:
        if fb is None:
            raise ConfigError(f"Rule {rule.value} needs feedback weights")
        if len(fb.matrices) != hidden_count:
            raise ShapeError("Feedback depth does not match the network",
                             (len(fb.matrices),), (hidden_count,))
        for k, B in enumerate(fb.matrices):
            expected = (mlp.sizes[k + 1], mlp.sizes[k + 2])
            if B.shape != expected:
                raise ShapeError(f"Feedback matrix {k + 1} has the wrong shape", B.shape, expected)
    if rule.is_temporal and hidden_count > 0:
        if reference is not None:
            if reference.num_layers != trace.num_layers or reference.batch_size != trace.batch_size:
                raise ShapeError("Reference trace does not match the current trace",
                                 (reference.num_layers, reference.batch_size),
                                 (trace.num_layers, trace.batch_size))
        elif ts is None:
            raise ConfigError(f"Rule {rule.value} needs a temporal state")
        else:
            check_temporal(ts, trace)


def backward(rule: RuleKind, mlp: Mlp, fb: Optional[FeedbackWeights], trace: ForwardTrace,
             T: Matrix, ts: Optional[TemporalState] = None,
             reference: Optional[ForwardTrace] = None) -> UpdateSet:
    """
    Compute parameter updates under one rule.

    Args:
        rule: Backward rule
        mlp: Network that produced `trace`
        fb: Feedback weights (required by FBA-family rules)
        trace: Forward trace of the current batch
        T: One-hot targets of the batch
        ts: Temporal state (required by ITD rules unless `reference` is given)
        reference: Trace of the same batch under the previous parameters;
            switches ITD rules to per-example differencing

    Returns:
        UpdateSet shaped like the network; `ts` is not modified

    Raises:
        ShapeError: on mismatched inputs
        NumericError: if a delta turns non-finite
    """
    _check_inputs(rule, mlp, fb, trace, ts, reference)
    step = ts.step if ts is not None else None
    m = trace.batch_size
    L = mlp.num_layers

    deltas: List[Optional[Matrix]] = [None] * L
    deltas[L - 1] = output_delta(trace, T)
    if not linalg.is_finite(deltas[L - 1]):
        raise NumericError("Non-finite output delta", layer=L, step=step)

    for k in range(L - 2, -1, -1):
        projected = _back_projection(rule, mlp, fb, deltas[k + 1], k)
        delta = linalg.hadamard(projected, hidden_modulation(rule, trace, ts, k, reference))
        if not linalg.is_finite(delta):
            raise NumericError(f"Non-finite delta under rule {rule.value}", layer=k + 1, step=step)
        deltas[k] = delta

    weight_grads = [
        linalg.scale(linalg.matmul(linalg.transpose(deltas[k]), trace.activations[k]), 1.0 / m)
        for k in range(L)
    ]
    bias_grads = [linalg.mean_rows(deltas[k]) for k in range(L)]
    return UpdateSet(weight_grads=weight_grads, bias_grads=bias_grads)
