"""
Lab Constants

This module centralizes all magic numbers, file names, environment variable
names and training defaults used throughout the lab to keep them in one place.
"""
from typing import Dict, Final, List, Tuple


# ============================================================================
# DIRECTORY AND FILE PATHS
# ============================================================================

DEFAULT_DATA_DIR: Final[str] = "data"
LOGS_DIR: Final[str] = "logs"
DEFAULT_METRICS_FILE: Final[str] = "metrics.csv"
DEFAULT_COMPARE_DIR: Final[str] = "compare"
DEFAULT_PLOT_FILE: Final[str] = "plot.svg"
COMBINED_METRICS_FILE: Final[str] = "metrics_combined.csv"
CHECKPOINT_SUFFIX: Final[str] = ".ckpt"
METADATA_SUFFIX: Final[str] = ".meta.yaml"

# Canonical MNIST file names (train images, train labels, test images, test labels)
MNIST_TRAIN_IMAGES: Final[str] = "train-images-idx3-ubyte"
MNIST_TRAIN_LABELS: Final[str] = "train-labels-idx1-ubyte"
MNIST_TEST_IMAGES: Final[str] = "t10k-images-idx3-ubyte"
MNIST_TEST_LABELS: Final[str] = "t10k-labels-idx1-ubyte"
GZIP_SUFFIX: Final[str] = ".gz"


# ============================================================================
# ENVIRONMENT VARIABLES
# ============================================================================

ENV_PREFIX: Final[str] = "BIOBP_"
ENV_DATA_DIR: Final[str] = "BIOBP_DATA_DIR"


# ============================================================================
# BINARY FORMATS
# ============================================================================

IDX_IMAGE_MAGIC: Final[int] = 0x00000803
IDX_LABEL_MAGIC: Final[int] = 0x00000801
IDX_IMAGE_HEADER_BYTES: Final[int] = 16
IDX_LABEL_HEADER_BYTES: Final[int] = 8
GZIP_PREFIX: Final[bytes] = b"\x1f\x8b"
NUM_CLASSES: Final[int] = 10

CHECKPOINT_MAGIC: Final[bytes] = b"BIOBP1"


# ============================================================================
# TRAINING DEFAULTS
# ============================================================================

DEFAULT_LEARNING_RATE: Final[float] = 1e-3
DEFAULT_STEPS: Final[int] = 100000
DEFAULT_BATCH_SIZE: Final[int] = 50
DEFAULT_HIDDEN: Final[Tuple[int, ...]] = (32,)
MNIST_INPUT_UNITS: Final[int] = 784
MNIST_IMAGE_SIDE: Final[int] = 28

DEFAULT_EVAL_EVERY: Final[int] = 500
DEFAULT_ALIGN_EVERY: Final[int] = 500
DEFAULT_SEED: Final[int] = 0
DEFAULT_WORKERS: Final[int] = 4

# Synthetic stand-in sizes
DEFAULT_SYNTH_TRAIN: Final[int] = 2000
DEFAULT_SYNTH_TEST: Final[int] = 500


# ============================================================================
# NUMERICS
# ============================================================================

SIGMOID_MAX_SLOPE: Final[float] = 0.25
ITD_DY_DENOMINATOR_FLOOR: Final[float] = 1e-6
PROBABILITY_FLOOR: Final[float] = 1e-12
EVAL_CHUNK: Final[int] = 1000

# Initial temporal state: sigmoid output and pre-activation at zero input
TEMPORAL_INIT_ACTIVATION: Final[float] = 0.5
TEMPORAL_INIT_PRE_ACTIVATION: Final[float] = 0.0

GRADCHECK_SIZES: Final[Tuple[int, ...]] = (4, 3, 2)
GRADCHECK_BATCH: Final[int] = 2
GRADCHECK_STEP: Final[float] = 1e-5
GRADCHECK_THRESHOLD: Final[float] = 1e-6
GRADCHECK_DENOMINATOR_FLOOR: Final[float] = 1e-4


# ============================================================================
# RNG SUB-STREAM LABELS
# ============================================================================

STREAM_INIT: Final[str] = "init"
STREAM_FEEDBACK: Final[str] = "feedback"
STREAM_BATCHES: Final[str] = "batches"
STREAM_SYNTH_CENTERS: Final[str] = "synth-centers"
STREAM_GRADCHECK: Final[str] = "gradcheck"


# ============================================================================
# METRICS CSV
# ============================================================================

METRICS_BASE_COLUMNS: Final[List[str]] = [
    "step", "rule", "seed", "train_loss", "test_loss", "test_acc",
]
METRICS_FLOAT_FORMAT: Final[str] = "%.9g"
METRICS_NAN_LITERAL: Final[str] = "nan"


# ============================================================================
# CLI EXIT CODES
# ============================================================================

EXIT_OK: Final[int] = 0
EXIT_CONFIG_ERROR: Final[int] = 2
EXIT_DATA_ERROR: Final[int] = 3
EXIT_NUMERIC_ABORT: Final[int] = 4
EXIT_PARTIAL_COMPARE: Final[int] = 5

EXIT_CODE_NAMES: Final[Dict[int, str]] = {
    EXIT_OK: "ok",
    EXIT_CONFIG_ERROR: "config error",
    EXIT_DATA_ERROR: "data/I-O error",
    EXIT_NUMERIC_ABORT: "numeric abort",
    EXIT_PARTIAL_COMPARE: "partial compare failure",
}


# ============================================================================
# SVG PLOT
# ============================================================================

SVG_WIDTH: Final[int] = 640
SVG_HEIGHT: Final[int] = 400
SVG_MARGIN: Final[int] = 60
SVG_DEFAULT_COLUMN: Final[str] = "test_acc"
SVG_PALETTE: Final[List[str]] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
]
