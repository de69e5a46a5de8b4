"""
Command implementations.

Each cmd_* takes parsed arguments and returns a process exit code. Errors
derived from LabError are mapped to exit codes by `run_command`.
"""
import sys
from argparse import Namespace
from pathlib import Path
from typing import Any, Callable, Dict, Tuple

from src.config.config import OPTIONS, LabConfig, LoggingConfig
from src.constants import (
    CHECKPOINT_SUFFIX, DEFAULT_COMPARE_DIR, DEFAULT_METRICS_FILE, EXIT_CONFIG_ERROR,
    EXIT_DATA_ERROR, EXIT_NUMERIC_ABORT, EXIT_OK, EXIT_PARTIAL_COMPARE, MNIST_IMAGE_SIDE,
    MNIST_TEST_IMAGES, MNIST_TEST_LABELS, MNIST_TRAIN_IMAGES, MNIST_TRAIN_LABELS, NUM_CLASSES,
)
from src.data.idx_format import serialize_idx_images, serialize_idx_labels
from src.data.mnist_loader import load_mnist
from src.data.synthetic import dataset_to_idx, synth_dataset
from src.models.data_models import DataSource, Dataset
from src.models.exceptions import ConfigError, DataError, LabError, NumericError, ShapeError
from src.network.checkpoint import save_checkpoint
from src.rules.feedback import init_feedback
from src.training.compare import run_compare
from src.training.gradcheck import gradcheck
from src.training.metrics_writer import write_metrics_csv
from src.training.run_metadata import build_metadata, metadata_path, write_metadata
from src.training.svg_plot import plot_files
from src.training.trainer import train
from src.utils.logger import get_logger, init_logger


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the documented exit code"""
    if isinstance(error, NumericError):
        return EXIT_NUMERIC_ABORT
    if isinstance(error, (DataError, ShapeError, OSError)):
        return EXIT_DATA_ERROR
    return EXIT_CONFIG_ERROR


def run_command(handler: Callable[[Namespace], int], args: Namespace) -> int:
    """Run a command, turning lab and I/O errors into a one-line diagnostic and an exit code"""
    try:
        return handler(args)
    except (LabError, OSError) as e:
        code = exit_code_for(e)
        print(f"error: {e}", file=sys.stderr)
        get_logger().error(f"{args.command} failed with exit code {code}: {e}")
        return code


def _setup_logging(settings: LoggingConfig) -> None:
    init_logger(
        log_to_file=settings.log_to_file,
        log_to_console=settings.log_to_console,
        log_level=settings.log_level,
        enable_detailed=settings.detailed_logging,
        log_dir=settings.log_dir,
    )


def resolve_config(args: Namespace) -> LabConfig:
    """Resolve flags, --config file and environment into a LabConfig, then start logging"""
    flags: Dict[str, Any] = {key: value for key, value in vars(args).items() if key in OPTIONS}
    config = LabConfig.resolve(flags, getattr(args, 'config', None))
    _setup_logging(config.logging)
    return config


def load_datasets(config: LabConfig) -> Tuple[Dataset, Dataset]:
    """Training and test data for the configured source"""
    if config.data.source is DataSource.SYNTH:
        t = config.train
        train_ds = synth_dataset(t.seed, config.data.synth_train, t.input_units, t.output_units, "train")
        test_ds = synth_dataset(t.seed, config.data.synth_test, t.input_units, t.output_units, "test")
        get_logger().info(f"Synthetic data: {train_ds.size} train / {test_ds.size} test examples")
        return train_ds, test_ds
    return load_mnist(config.data.data_dir)


def cmd_train(args: Namespace) -> int:
    config = resolve_config(args)
    print(config.describe(), flush=True)

    train_ds, test_ds = load_datasets(config)
    feedback = init_feedback(config.train.sizes, config.train.seed)
    result = train(config, train_ds, test_ds, feedback=feedback)

    metrics_path = Path(config.output.out or DEFAULT_METRICS_FILE)
    write_metrics_csv(result.metrics, metrics_path, result.mlp.num_layers)
    checkpoint = save_checkpoint(result.mlp, metrics_path.with_suffix(CHECKPOINT_SUFFIX))
    write_metadata(build_metadata(config, result, checkpoint, feedback.checksum()),
                   metadata_path(metrics_path))

    get_logger().info(f"Wrote {metrics_path} and {checkpoint}")
    return EXIT_OK


def cmd_compare(args: Namespace) -> int:
    config = resolve_config(args)
    print(config.describe(), flush=True)

    train_ds, test_ds = load_datasets(config)
    output_dir = Path(config.output.out or DEFAULT_COMPARE_DIR)
    result = run_compare(config, train_ds, test_ds, output_dir)

    for path in result.written_files:
        print(path)
    if not result.all_succeeded:
        failed = ", ".join(rule.value for rule in result.failed_rules)
        print(f"error: rule(s) failed: {failed}", file=sys.stderr)
        return EXIT_PARTIAL_COMPARE
    return EXIT_OK


def cmd_gradcheck(args: Namespace) -> int:
    _setup_logging(LoggingConfig.from_env())
    report = gradcheck(seed=args.seed, h=args.h)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_NUMERIC_ABORT


def cmd_synth_data(args: Namespace) -> int:
    _setup_logging(LoggingConfig.from_env())
    if not 2 <= args.classes <= NUM_CLASSES:
        raise ConfigError(f"--classes must be between 2 and {NUM_CLASSES}, got {args.classes}")

    width = MNIST_IMAGE_SIDE * MNIST_IMAGE_SIDE
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    splits = [
        ("train", args.n, MNIST_TRAIN_IMAGES, MNIST_TRAIN_LABELS),
        ("test", args.test_n, MNIST_TEST_IMAGES, MNIST_TEST_LABELS),
    ]
    for split, n, images_name, labels_name in splits:
        ds = synth_dataset(args.seed, n, width, args.classes, split)
        images, labels = dataset_to_idx(ds, MNIST_IMAGE_SIDE, MNIST_IMAGE_SIDE)
        (out_dir / images_name).write_bytes(serialize_idx_images(images))
        (out_dir / labels_name).write_bytes(serialize_idx_labels(labels))
        print(out_dir / images_name)
        print(out_dir / labels_name)

    get_logger().info(f"Wrote synthetic IDX dataset to {out_dir} (seed={args.seed}, classes={args.classes})")
    return EXIT_OK


def cmd_plot(args: Namespace) -> int:
    _setup_logging(LoggingConfig.from_env())
    svg = plot_files(args.inputs, args.column)
    target = Path(args.out)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, 'w', encoding='utf-8', newline='') as f:
        f.write(svg)
    print(target)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[Namespace], int]] = {
    'train': cmd_train,
    'compare': cmd_compare,
    'gradcheck': cmd_gradcheck,
    'synth-data': cmd_synth_data,
    'plot': cmd_plot,
}
