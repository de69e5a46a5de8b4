"""
MNIST dataset loading.

Resolves the data directory, reads the four canonical IDX files (raw or
gzip) and converts them into normalized Datasets.
"""
import os
from pathlib import Path
from typing import Mapping, Optional, Tuple

import numpy as np

from src.constants import (
    DEFAULT_DATA_DIR, ENV_DATA_DIR, GZIP_SUFFIX, MNIST_TEST_IMAGES, MNIST_TEST_LABELS,
    MNIST_TRAIN_IMAGES, MNIST_TRAIN_LABELS, NUM_CLASSES,
)
from src.data.idx_format import parse_idx_images, parse_idx_labels
from src.models.data_models import Dataset, ImageSet, LabelSet
from src.models.exceptions import DatasetNotFoundError, PairingError
from src.utils.logger import get_logger


def to_dataset(images: ImageSet, labels: LabelSet, num_classes: int = NUM_CLASSES) -> Dataset:
    """
    Pair images with labels into a normalized dataset.

    Pixels are scaled by 1/255 into [0, 1] with no centering; labels become
    one-hot rows over `num_classes` classes.

    Raises:
        PairingError: if image and label counts differ
    """
    if images.count != labels.count:
        raise PairingError(f"Image count {images.count} does not match label count {labels.count}")

    X = images.pixels.reshape(images.count, images.pixels_per_image).astype(np.float64) / 255.0
    Y = np.zeros((labels.count, num_classes), dtype=np.float64)
    Y[np.arange(labels.count), labels.labels.astype(np.int64)] = 1.0
    return Dataset(X=X, Y=Y, num_classes=num_classes)


def resolve_data_dir(explicit: Optional[str] = None,
                     environ: Optional[Mapping[str, str]] = None) -> Path:
    """
    Pick the data directory: explicit path, else BIOBP_DATA_DIR, else ./data.
    """
    env = os.environ if environ is None else environ
    if explicit:
        return Path(explicit)
    if env.get(ENV_DATA_DIR):
        return Path(env[ENV_DATA_DIR])
    return Path(DEFAULT_DATA_DIR)


def find_idx_file(data_dir: Path, name: str) -> Path:
    """
    Locate a canonical file, accepting an optional .gz suffix.

    Raises:
        DatasetNotFoundError: if neither variant exists
    """
    candidates = [data_dir / name, data_dir / f"{name}{GZIP_SUFFIX}"]
    for candidate in candidates:
        if candidate.is_file():
            return candidate
    raise DatasetNotFoundError(str(data_dir / name), searched=[str(c) for c in candidates])


def has_mnist_files(data_dir: Path) -> bool:
    """True when all four canonical files are present"""
    try:
        for name in (MNIST_TRAIN_IMAGES, MNIST_TRAIN_LABELS, MNIST_TEST_IMAGES, MNIST_TEST_LABELS):
            find_idx_file(data_dir, name)
    except DatasetNotFoundError:
        return False
    return True


def load_split(data_dir: Path, images_name: str, labels_name: str) -> Dataset:
    """Load one split (train or test) from its image and label files"""
    images_path = find_idx_file(data_dir, images_name)
    labels_path = find_idx_file(data_dir, labels_name)
    images = parse_idx_images(images_path.read_bytes())
    labels = parse_idx_labels(labels_path.read_bytes())
    return to_dataset(images, labels)


def load_mnist(data_dir: Optional[str] = None) -> Tuple[Dataset, Dataset]:
    """
    Load the canonical 60k/10k MNIST split.

    Args:
        data_dir: Explicit directory (falls back to BIOBP_DATA_DIR, then ./data)

    Returns:
        (train, test) datasets
    """
    logger = get_logger()
    directory = resolve_data_dir(data_dir)
    logger.info(f"Loading MNIST from {directory}")

    train = load_split(directory, MNIST_TRAIN_IMAGES, MNIST_TRAIN_LABELS)
    test = load_split(directory, MNIST_TEST_IMAGES, MNIST_TEST_LABELS)

    logger.info(f"Loaded {train.size} training and {test.size} test examples ({train.width} inputs)")
    return train, test
