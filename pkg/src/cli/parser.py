"""
Argument parser for the biobp command line.

Flags left unset parse to None so that config-file and environment values
can fill them; the documented defaults are applied by LabConfig.
"""
import argparse

from src.constants import (
    DEFAULT_ALIGN_EVERY, DEFAULT_BATCH_SIZE, DEFAULT_COMPARE_DIR, DEFAULT_DATA_DIR,
    DEFAULT_EVAL_EVERY, DEFAULT_HIDDEN, DEFAULT_LEARNING_RATE, DEFAULT_METRICS_FILE,
    DEFAULT_PLOT_FILE, DEFAULT_SEED, DEFAULT_STEPS, DEFAULT_SYNTH_TEST, DEFAULT_SYNTH_TRAIN,
    DEFAULT_WORKERS, ENV_DATA_DIR, EXIT_CODE_NAMES, GRADCHECK_STEP, MNIST_IMAGE_SIDE,
    NUM_CLASSES, SVG_DEFAULT_COLUMN,
)
from src.models.data_models import DataSource, ItdMode, RuleKind, SamplingMode


def _choices(enum_cls):
    return [member.value for member in enum_cls]


def _epilog() -> str:
    codes = ", ".join(f"{code} {name}" for code, name in EXIT_CODE_NAMES.items())
    return f"Exit codes: {codes}."


def _add_run_options(p: argparse.ArgumentParser, out_help: str) -> None:
    """Flags shared by train and compare"""
    hidden = ",".join(str(h) for h in DEFAULT_HIDDEN)
    p.add_argument('--lr', type=float, default=None,
                   help=f"learning rate (default: {DEFAULT_LEARNING_RATE:g})")
    p.add_argument('--steps', type=int, default=None,
                   help=f"number of SGD steps (default: {DEFAULT_STEPS})")
    p.add_argument('--batch', type=int, default=None,
                   help=f"minibatch size (default: {DEFAULT_BATCH_SIZE})")
    p.add_argument('--hidden', default=None,
                   help=f"comma-separated hidden layer widths (default: {hidden})")
    p.add_argument('--seed', type=int, default=None,
                   help=f"master seed (default: {DEFAULT_SEED})")
    p.add_argument('--data', choices=_choices(DataSource), default=None,
                   help="dataset (default: mnist)")
    p.add_argument('--data-dir', dest='data_dir', default=None,
                   help=f"directory holding the MNIST IDX files "
                        f"(default: ${ENV_DATA_DIR} or ./{DEFAULT_DATA_DIR})")
    p.add_argument('--out', default=None, help=out_help)
    p.add_argument('--eval-every', dest='eval_every', type=int, default=None,
                   help=f"steps between metrics rows (default: {DEFAULT_EVAL_EVERY})")
    p.add_argument('--align-every', dest='align_every', type=int, default=None,
                   help=f"steps between alignment measurements (default: {DEFAULT_ALIGN_EVERY})")
    p.add_argument('--config', default=None,
                   help="flat key=value config file; flags override it, it overrides BIOBP_* variables")
    p.add_argument('--sampling', choices=_choices(SamplingMode), default=None,
                   help="minibatch sampling (default: epoch)")
    p.add_argument('--itd-mode', dest='itd_mode', choices=_choices(ItdMode), default=None,
                   help="how ITD rules take differences (default: across-steps)")
    p.add_argument('--synth-train', dest='synth_train', type=int, default=None,
                   help=f"synthetic training examples with --data synth (default: {DEFAULT_SYNTH_TRAIN})")
    p.add_argument('--synth-test', dest='synth_test', type=int, default=None,
                   help=f"synthetic test examples with --data synth (default: {DEFAULT_SYNTH_TEST})")
    p.add_argument('--wall-clock', dest='wall_clock', action='store_true', default=None,
                   help="record elapsed time in wall_ms (default: off, wall_ms is 0)")
    p.add_argument('--log-level', dest='log_level', default=None,
                   choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                   help="log level (default: INFO)")


def build_parser() -> argparse.ArgumentParser:
    """Build the top-level parser with one sub-parser per command"""
    parser = argparse.ArgumentParser(
        prog='biobp',
        description="Credit-assignment lab: train MLPs with backpropagation, feedback "
                    "alignment and iterative temporal differencing.",
        epilog=_epilog(),
    )
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    train = commands.add_parser('train', help="train one network under one rule", epilog=_epilog())
    train.add_argument('--rule', choices=_choices(RuleKind), default=None,
                       help="backward rule (default: vbp)")
    _add_run_options(train, f"metrics CSV path; checkpoint and metadata are written beside it "
                            f"(default: {DEFAULT_METRICS_FILE})")

    compare = commands.add_parser('compare', help="train all four rules from the same start",
                                  epilog=_epilog())
    _add_run_options(compare, f"output directory for the five metrics CSVs (default: {DEFAULT_COMPARE_DIR})")
    compare.add_argument('--workers', type=int, default=None,
                         help=f"rules trained concurrently (default: {DEFAULT_WORKERS})")

    gradcheck = commands.add_parser('gradcheck', help="finite-difference check of the VBP updates",
                                    epilog=_epilog())
    gradcheck.add_argument('--seed', type=int, default=DEFAULT_SEED,
                           help=f"seed of the test network and batch (default: {DEFAULT_SEED})")
    gradcheck.add_argument('--h', type=float, default=GRADCHECK_STEP,
                           help=f"finite-difference step (default: {GRADCHECK_STEP:g})")

    synth = commands.add_parser('synth-data', help="write a synthetic dataset as MNIST-style IDX files",
                                epilog=_epilog())
    synth.add_argument('--n', type=int, default=DEFAULT_SYNTH_TRAIN,
                       help=f"training examples (default: {DEFAULT_SYNTH_TRAIN})")
    synth.add_argument('--test-n', dest='test_n', type=int, default=DEFAULT_SYNTH_TEST,
                       help=f"test examples (default: {DEFAULT_SYNTH_TEST})")
    synth.add_argument('--classes', type=int, default=NUM_CLASSES,
                       help=f"number of classes, at most {NUM_CLASSES} (default: {NUM_CLASSES})")
    synth.add_argument('--seed', type=int, default=DEFAULT_SEED,
                       help=f"seed (default: {DEFAULT_SEED})")
    synth.add_argument('--out', default=DEFAULT_DATA_DIR,
                       help=f"output directory, images are {MNIST_IMAGE_SIDE}x{MNIST_IMAGE_SIDE} "
                            f"(default: {DEFAULT_DATA_DIR})")

    plot = commands.add_parser('plot', help="render metrics CSVs as an SVG line chart", epilog=_epilog())
    plot.add_argument('inputs', nargs='+', help="metrics CSV file(s)")
    plot.add_argument('--column', default=SVG_DEFAULT_COLUMN,
                      help=f"column to plot against step (default: {SVG_DEFAULT_COLUMN})")
    plot.add_argument('--out', default=DEFAULT_PLOT_FILE,
                      help=f"SVG output path (default: {DEFAULT_PLOT_FILE})")

    return parser
