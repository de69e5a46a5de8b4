"""
Synthetic stand-in dataset.

Gaussian blobs, one per class, squashed into [0, 1] by a logistic map so the
data looks like normalized pixels. Blob centers depend on the seed only;
samples depend on seed and split, so train and test share their centers.
"""
from typing import Tuple

import numpy as np

from src.constants import STREAM_SYNTH_CENTERS
from src.models.data_models import Dataset, ImageSet, LabelSet
from src.models.exceptions import ParameterError
from src.network.activations import sigmoid
from src.numerics.rng import Rng, rand_normal


def synth_dataset(seed: int, n: int, d: int, c: int, split: str = "train",
                  noise: float = 1.0) -> Dataset:
    """
    Build a balanced blob dataset.

    Args:
        seed: Master seed
        n: Number of examples
        d: Input width
        c: Number of classes
        split: Sample-stream label ("train", "test", ...)
        noise: Standard deviation of each blob around its center

    Returns:
        Dataset with X in (0, 1) and one-hot Y; every class appears
        floor(n/c) or ceil(n/c) times

    Raises:
        ParameterError: unless n >= c >= 2 and d >= 1
    """
    if c < 2 or n < c or d < 1:
        raise ParameterError(f"synth_dataset needs n >= c >= 2 and d >= 1, got n={n}, d={d}, c={c}")

    centers = rand_normal(Rng.substream(seed, STREAM_SYNTH_CENTERS), c, d)

    sample_rng = Rng.substream(seed, f"synth-{split}")
    labels = (np.arange(n) % c)[sample_rng.permutation(n)]
    points = centers[labels] + rand_normal(sample_rng, n, d, std=noise)

    X = sigmoid(points)
    Y = np.zeros((n, c), dtype=np.float64)
    Y[np.arange(n), labels] = 1.0
    return Dataset(X=X, Y=Y, num_classes=c)


def dataset_to_idx(ds: Dataset, rows: int, cols: int) -> Tuple[ImageSet, LabelSet]:
    """
    Quantize a dataset into IDX image and label payloads.

    Args:
        ds: Dataset with X in [0, 1]
        rows, cols: Image shape; rows * cols must equal the dataset width

    Raises:
        ParameterError: on a width mismatch or more than 10 classes
    """
    if rows * cols != ds.width:
        raise ParameterError(f"Image shape {rows}x{cols} does not match width {ds.width}")
    if ds.num_classes > 10:
        raise ParameterError(f"IDX labels hold at most 10 classes, got {ds.num_classes}")

    pixels = np.rint(np.clip(ds.X, 0.0, 1.0) * 255.0).astype(np.uint8).reshape(-1)
    labels = ds.labels.astype(np.uint8)
    return (
        ImageSet(count=ds.size, rows=rows, cols=cols, pixels=pixels),
        LabelSet(count=ds.size, labels=labels),
    )
