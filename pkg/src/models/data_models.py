"""
Data models for the credit-assignment lab.

Dataclasses for datasets, networks, traces and training results, plus the
enumerations that tag rules and run modes. Matrices are float64 numpy arrays.
"""
import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
import numpy.typing as npt

# Dense row-major float64 matrix, the numeric carrier of every module
Matrix = npt.NDArray[np.float64]


class RuleKind(Enum):
    """Backward rule enumeration"""
    VBP = "vbp"
    FBA = "fba"
    ITD_Y = "itd-y"
    ITD_DY = "itd-dy"

    @property
    def uses_feedback(self) -> bool:
        """True for rules that send the error through fixed random feedback"""
        return self is not RuleKind.VBP

    @property
    def is_temporal(self) -> bool:
        """True for rules whose surrogate derivative needs the temporal state"""
        return self in (RuleKind.ITD_Y, RuleKind.ITD_DY)


class DataSource(Enum):
    """Dataset source enumeration"""
    MNIST = "mnist"
    SYNTH = "synth"


class SamplingMode(Enum):
    """Minibatch sampling enumeration"""
    EPOCH = "epoch"              # fresh permutation every epoch
    REPLACEMENT = "replacement"  # i.i.d. indices with replacement


class ItdMode(Enum):
    """Where the temporal difference of ITD rules is taken"""
    ACROSS_STEPS = "across-steps"  # batch means of consecutive training steps
    SAME_BATCH = "same-batch"      # current batch through previous-step parameters


@dataclass(frozen=True)
class ImageSet:
    """Raw IDX image payload"""
    count: int
    rows: int
    cols: int
    pixels: npt.NDArray[np.uint8]

    @property
    def pixels_per_image(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class LabelSet:
    """Raw IDX label payload"""
    count: int
    labels: npt.NDArray[np.uint8]


@dataclass(frozen=True)
class Dataset:
    """Normalized inputs X (n x d) in [0, 1] and one-hot targets Y (n x c)"""
    X: Matrix
    Y: Matrix
    num_classes: int

    @property
    def size(self) -> int:
        return int(self.X.shape[0])

    @property
    def width(self) -> int:
        return int(self.X.shape[1])

    @property
    def labels(self) -> npt.NDArray[np.int64]:
        """Class index of every row"""
        return np.argmax(self.Y, axis=1)


@dataclass
class Mlp:
    """
    Multilayer perceptron with sigmoid hidden units and a softmax output.

    weights[k] maps layer k to layer k+1 and is shaped (sizes[k+1], sizes[k]);
    biases[k] is a 1 x sizes[k+1] row.
    """
    sizes: Tuple[int, ...]
    weights: List[Matrix]
    biases: List[Matrix]

    @property
    def num_layers(self) -> int:
        """Number of weight layers L"""
        return len(self.weights)

    def copy(self) -> "Mlp":
        """Deep copy with independently owned parameter arrays"""
        return Mlp(
            sizes=tuple(self.sizes),
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
        )

    def parameters_equal(self, other: "Mlp") -> bool:
        """Bitwise parameter equality"""
        if tuple(self.sizes) != tuple(other.sizes):
            return False
        pairs = list(zip(self.weights, other.weights)) + list(zip(self.biases, other.biases))
        return all(np.array_equal(a, b) for a, b in pairs)


@dataclass(frozen=True)
class ForwardTrace:
    """
    Per-layer record of one forward pass over a minibatch.

    activations[0] is the input batch y0; activations[l] and
    pre_activations[l - 1] are y_l and z_l for l = 1..L.
    """
    activations: List[Matrix]
    pre_activations: List[Matrix]

    @property
    def batch_size(self) -> int:
        return int(self.activations[0].shape[0])

    @property
    def output(self) -> Matrix:
        return self.activations[-1]

    @property
    def num_layers(self) -> int:
        return len(self.pre_activations)


@dataclass(frozen=True)
class FeedbackWeights:
    """
    Fixed random backward matrices.

    matrices[k] stands in for weights[k + 1] transposed and is shaped
    (sizes[k+1], sizes[k+2]), one per hidden layer.
    """
    matrices: List[Matrix]

    def checksum(self) -> str:
        """SHA-256 over the raw bytes of every matrix"""
        digest = hashlib.sha256()
        for matrix in self.matrices:
            digest.update(np.ascontiguousarray(matrix).tobytes())
        return digest.hexdigest()


@dataclass(frozen=True)
class TemporalState:
    """Batch means of hidden activations and pre-activations from the previous step"""
    mean_activations: List[Matrix]
    mean_pre_activations: List[Matrix]
    step: int = 0


@dataclass(frozen=True)
class UpdateSet:
    """Per-layer weight and bias updates shaped like the network parameters"""
    weight_grads: List[Matrix]
    bias_grads: List[Matrix]


@dataclass
class MetricsRow:
    """One line of the metrics CSV"""
    step: int
    rule: str
    seed: int
    train_loss: float
    test_loss: float
    test_acc: float
    alignment: List[Optional[float]] = field(default_factory=list)
    wall_ms: float = 0.0


@dataclass(frozen=True)
class AlignmentSample:
    """Per-layer alignment angles measured at one step"""
    step: int
    angles: List[Optional[float]]


@dataclass
class TrainResult:
    """Outcome of a single training run"""
    mlp: Mlp
    metrics: List[MetricsRow]
    alignment: List[AlignmentSample] = field(default_factory=list)
    batch_losses: List[float] = field(default_factory=list)

    @property
    def final_row(self) -> Optional[MetricsRow]:
        return self.metrics[-1] if self.metrics else None


@dataclass
class RunOutcome:
    """Result of one rule inside a comparison"""
    rule: RuleKind
    metrics: List[MetricsRow]
    error: Optional[str] = None
    alignment: List[AlignmentSample] = field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return self.error is None


@dataclass
class CompareResult:
    """Results of the four-way comparison keyed by rule"""
    outcomes: Dict[RuleKind, RunOutcome]
    written_files: List[str] = field(default_factory=list)

    @property
    def all_succeeded(self) -> bool:
        return all(outcome.succeeded for outcome in self.outcomes.values())

    @property
    def failed_rules(self) -> List[RuleKind]:
        return [rule for rule, outcome in self.outcomes.items() if not outcome.succeeded]


@dataclass(frozen=True)
class GradcheckEntry:
    """Worst relative error for one parameter tensor"""
    name: str
    max_rel_err: float


@dataclass(frozen=True)
class GradcheckReport:
    """Finite-difference comparison of VBP updates"""
    seed: int
    step: float
    threshold: float
    max_rel_err: float
    entries: List[GradcheckEntry]

    @property
    def passed(self) -> bool:
        return self.max_rel_err <= self.threshold

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} max_rel_err={self.max_rel_err:.3e}"
