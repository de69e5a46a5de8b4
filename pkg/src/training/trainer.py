"""
Deterministic SGD training loop and evaluation.

One Trainer owns one run: its model copy, batch iterator and temporal state.
A metrics row at step s carries the loss of batch s and the test metrics of
the parameters before the step-s update.
"""
import math
import time
from typing import List, Optional, Tuple

from src.config.config import LabConfig
from src.constants import EVAL_CHUNK
from src.data.batching import BatchIterator
from src.models.data_models import (
    AlignmentSample, Dataset, FeedbackWeights, ItdMode, MetricsRow, Mlp, RuleKind,
    TrainResult, UpdateSet,
)
from src.models.exceptions import NumericError, ShapeError, TrainingAborted
from src.network.mlp import correct_count, cross_entropy, cross_entropy_sum, forward, init_mlp
from src.rules.alignment import measure_alignment
from src.rules.backward import backward
from src.rules.feedback import init_feedback
from src.rules.temporal import init_temporal, update_temporal
from src.utils.logger import get_logger


def apply_update(mlp: Mlp, updates: UpdateSet, lr: float) -> Mlp:
    """Plain SGD step W <- W - lr * dW, b <- b - lr * db, returning a new network"""
    return Mlp(
        sizes=mlp.sizes,
        weights=[W - lr * dW for W, dW in zip(mlp.weights, updates.weight_grads)],
        biases=[b - lr * db for b, db in zip(mlp.biases, updates.bias_grads)],
    )


def evaluate(mlp: Mlp, ds: Dataset, chunk: int = EVAL_CHUNK) -> Tuple[float, float]:
    """
    Loss and accuracy over a whole dataset, forwarded in chunks.

    Returns:
        (mean cross-entropy, accuracy)

    Raises:
        ShapeError: if the dataset does not fit the network
    """
    if ds.Y.shape[1] != mlp.sizes[-1]:
        raise ShapeError("Target width does not match the network output", ds.Y.shape, (ds.size, mlp.sizes[-1]))
    if ds.size == 0:
        return 0.0, 0.0

    loss_sum = 0.0
    correct = 0
    for start in range(0, ds.size, chunk):
        X = ds.X[start:start + chunk]
        Y = ds.Y[start:start + chunk]
        probs = forward(mlp, X).output
        loss_sum += cross_entropy_sum(probs, Y)
        correct += correct_count(probs, Y)
    return loss_sum / ds.size, correct / ds.size


def check_dataset(sizes, ds: Dataset, name: str) -> None:
    """
    Raises:
        ShapeError: if the dataset widths disagree with the layer sizes
    """
    if ds.width != sizes[0] or ds.num_classes != sizes[-1]:
        raise ShapeError(f"{name} dataset does not match layer sizes",
                         (ds.width, ds.num_classes), (sizes[0], sizes[-1]))


class Trainer:
    """Runs one training experiment"""

    def __init__(self, config: LabConfig, initial: Optional[Mlp] = None,
                 feedback: Optional[FeedbackWeights] = None):
        """
        Initialize the trainer.

        Args:
            config: Resolved configuration
            initial: Starting network (defaults to init_mlp(sizes, seed))
            feedback: Feedback weights (defaults to init_feedback(sizes, seed))
        """
        self.config = config
        self.logger = get_logger()
        t = config.train
        self.rule = t.rule
        self.sizes = t.sizes
        self.mlp = (initial if initial is not None else init_mlp(self.sizes, t.seed)).copy()
        self.feedback = feedback if feedback is not None else init_feedback(self.sizes, t.seed)
        self.temporal = init_temporal(self.sizes)
        self.previous: Optional[Mlp] = None

    def _alignment(self, updates: UpdateSet, trace, T) -> List[Optional[float]]:
        if self.rule is RuleKind.VBP:
            reference = updates
        else:
            reference = backward(RuleKind.VBP, self.mlp, None, trace, T)
        return measure_alignment(updates, reference)

    def train(self, train_ds: Dataset, test_ds: Dataset) -> TrainResult:
        """
        Run the configured number of steps.

        Returns:
            TrainResult with the final network, metrics rows, alignment history
            and the loss of every training batch

        Raises:
            ShapeError: if a dataset does not match the layer sizes
            TrainingAborted: on a non-finite loss or delta
        """
        t = self.config.train
        check_dataset(self.sizes, train_ds, "Training")
        check_dataset(self.sizes, test_ds, "Test")

        tag = self.rule.value
        same_batch = self.rule.is_temporal and t.itd_mode is ItdMode.SAME_BATCH
        iterator = BatchIterator(train_ds.size, t.batch, t.seed, self.config.data.sampling)
        rows: List[MetricsRow] = []
        history: List[AlignmentSample] = []
        batch_losses: List[float] = []
        layer_count = self.mlp.num_layers
        started = time.perf_counter()

        self.logger.run_started(tag, self.config.describe())

        for step in range(t.steps):
            X, T = iterator.next_batch(train_ds)
            trace = forward(self.mlp, X)
            train_loss = cross_entropy(trace.output, T)
            if not math.isfinite(train_loss):
                raise TrainingAborted(step=step, rule=tag, partial_metrics=rows)
            batch_losses.append(train_loss)

            reference = None
            if same_batch:
                reference = forward(self.previous if self.previous is not None else self.mlp, X)

            try:
                updates = backward(self.rule, self.mlp, self.feedback, trace, T, self.temporal, reference)
            except NumericError as e:
                raise TrainingAborted(step=step, rule=tag, reason=str(e), partial_metrics=rows) from e

            angles: Optional[List[Optional[float]]] = None
            if step % t.align_every == 0:
                angles = self._alignment(updates, trace, T)
                history.append(AlignmentSample(step=step, angles=angles))

            if step % t.eval_every == 0 or step == t.steps - 1:
                test_loss, test_acc = evaluate(self.mlp, test_ds)
                elapsed = (time.perf_counter() - started) * 1000.0 if self.config.output.wall_clock else 0.0
                row = MetricsRow(
                    step=step, rule=tag, seed=t.seed, train_loss=train_loss,
                    test_loss=test_loss, test_acc=test_acc,
                    alignment=angles if angles is not None else [None] * layer_count,
                    wall_ms=elapsed,
                )
                rows.append(row)
                self.logger.metrics_row(row)

            if self.rule.is_temporal:
                self.temporal = update_temporal(self.temporal, trace)
            if same_batch:
                self.previous = self.mlp
            self.mlp = apply_update(self.mlp, updates, t.lr)

        final = rows[-1]
        self.logger.info(
            f"Finished {t.steps} steps: test_acc={final.test_acc:.4f} test_loss={final.test_loss:.4f}",
            tag
        )
        return TrainResult(mlp=self.mlp, metrics=rows, alignment=history, batch_losses=batch_losses)


def train(config: LabConfig, train_ds: Dataset, test_ds: Dataset,
          initial: Optional[Mlp] = None, feedback: Optional[FeedbackWeights] = None) -> TrainResult:
    """Train one network under config.train.rule (see Trainer.train)"""
    return Trainer(config, initial=initial, feedback=feedback).train(train_ds, test_ds)
