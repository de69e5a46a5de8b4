"""
Deterministic minibatching.

In epoch mode the iterator walks a permutation of [0, n) and draws a fresh
permutation from its own sub-stream whenever one is used up; batches that
straddle the boundary take the tail of one permutation and the head of the
next, so every epoch still visits each index exactly once.
"""
from typing import Tuple

import numpy as np
import numpy.typing as npt

from src.constants import STREAM_BATCHES
from src.models.data_models import Dataset, Matrix, SamplingMode
from src.models.exceptions import ParameterError, ShapeError
from src.numerics.rng import Rng


class BatchIterator:
    """Single-owner minibatch iterator over a dataset of n examples"""

    def __init__(self, n: int, batch_size: int, seed: int,
                 sampling: SamplingMode = SamplingMode.EPOCH):
        """
        Initialize the iterator.

        Args:
            n: Number of examples
            batch_size: Examples per batch (1..n)
            seed: Master seed; the iterator uses the "batches" sub-stream
            sampling: Epoch permutation or sampling with replacement
        """
        if n < 1:
            raise ParameterError(f"Cannot batch an empty dataset (n={n})")
        if not 1 <= batch_size <= n:
            raise ParameterError(f"Batch size must be in [1, {n}], got {batch_size}")

        self.n = n
        self.batch_size = batch_size
        self.sampling = sampling
        self.rng = Rng.substream(seed, STREAM_BATCHES)
        self.epoch = 0
        self.cursor = 0
        self.batches_drawn = 0
        self.permutation = self.rng.permutation(n) if sampling is SamplingMode.EPOCH else None

    def next_indices(self) -> npt.NDArray[np.int64]:
        """Indices of the next batch"""
        if self.sampling is SamplingMode.REPLACEMENT:
            indices = self.rng.integers(self.batch_size, self.n)
            self.batches_drawn += 1
            self.epoch = (self.batches_drawn * self.batch_size) // self.n
            return indices

        parts = []
        needed = self.batch_size
        while needed > 0:
            take = min(needed, self.n - self.cursor)
            parts.append(self.permutation[self.cursor:self.cursor + take])
            self.cursor += take
            needed -= take
            if self.cursor == self.n:
                self.permutation = self.rng.permutation(self.n)
                self.cursor = 0
                self.epoch += 1
        self.batches_drawn += 1
        return np.concatenate(parts)

    def next_batch(self, ds: Dataset) -> Tuple[Matrix, Matrix]:
        """
        Next (X, Y) minibatch.

        Raises:
            ShapeError: if the dataset size differs from the iterator's n
        """
        if ds.size != self.n:
            raise ShapeError("Dataset size does not match iterator", (ds.size,), (self.n,))
        indices = self.next_indices()
        return ds.X[indices], ds.Y[indices]
