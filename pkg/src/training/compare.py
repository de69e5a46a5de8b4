"""
Run all four rules under one configuration.

Every rule gets the same seed, so the four runs start from the same weights,
the same feedback matrices and the same batch order. Runs execute in a
thread pool; one failing run does not stop the others.
"""
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Union

from src.config.config import LabConfig
from src.constants import COMBINED_METRICS_FILE
from src.models.data_models import CompareResult, Dataset, MetricsRow, RuleKind, RunOutcome
from src.models.exceptions import TrainingAborted
from src.network.mlp import init_mlp
from src.rules.feedback import init_feedback
from src.training.metrics_writer import write_metrics_csv
from src.training.trainer import train
from src.utils.logger import get_logger

RULE_ORDER: List[RuleKind] = [RuleKind.VBP, RuleKind.FBA, RuleKind.ITD_Y, RuleKind.ITD_DY]


def metrics_file_name(rule: RuleKind) -> str:
    return f"metrics_{rule.value}.csv"


class CompareRunner:
    """Runs the four rules and collects their outcomes"""

    def __init__(self, config: LabConfig):
        self.config = config
        self.logger = get_logger()
        sizes = config.train.sizes
        self.initial = init_mlp(sizes, config.train.seed)
        self.feedback = init_feedback(sizes, config.train.seed)

    def _run_rule(self, rule: RuleKind, train_ds: Dataset, test_ds: Dataset) -> RunOutcome:
        try:
            result = train(self.config.with_rule(rule), train_ds, test_ds,
                           initial=self.initial, feedback=self.feedback)
            return RunOutcome(rule=rule, metrics=result.metrics, alignment=result.alignment)
        except TrainingAborted as e:
            self.logger.run_failed(rule.value, str(e), {'step': e.step, 'rows_kept': len(e.partial_metrics)})
            return RunOutcome(rule=rule, metrics=e.partial_metrics, error=str(e))
        except Exception as e:
            self.logger.run_failed(rule.value, str(e), {'exception_type': type(e).__name__})
            return RunOutcome(rule=rule, metrics=[], error=str(e))

    def run(self, train_ds: Dataset, test_ds: Dataset) -> Dict[RuleKind, RunOutcome]:
        """Train every rule; outcomes keyed in VBP, FBA, ITD-y, ITD-dy order"""
        workers = min(self.config.compare.workers, len(RULE_ORDER))
        self.logger.info(f"Comparing {len(RULE_ORDER)} rules with {workers} worker(s)")
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="rule") as pool:
            futures = {rule: pool.submit(self._run_rule, rule, train_ds, test_ds) for rule in RULE_ORDER}
            return {rule: futures[rule].result() for rule in RULE_ORDER}


def write_compare_files(outcomes: Dict[RuleKind, RunOutcome], output_dir: Union[str, Path],
                        num_layers: int) -> List[str]:
    """
    Write one CSV per rule plus the combined CSV.

    Returns:
        Paths written, per-rule files first
    """
    directory = Path(output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    written: List[str] = []
    combined: List[MetricsRow] = []
    for rule in RULE_ORDER:
        outcome = outcomes.get(rule)
        rows = outcome.metrics if outcome is not None else []
        written.append(str(write_metrics_csv(rows, directory / metrics_file_name(rule), num_layers)))
        combined.extend(rows)
    written.append(str(write_metrics_csv(combined, directory / COMBINED_METRICS_FILE, num_layers)))
    return written


def run_compare(config: LabConfig, train_ds: Dataset, test_ds: Dataset,
                output_dir: Optional[Union[str, Path]] = None) -> CompareResult:
    """
    Train VBP, FBA, ITD-y and ITD-dy under one configuration.

    Args:
        config: Base configuration; its rule is ignored
        train_ds: Training data
        test_ds: Test data
        output_dir: Where to write the CSV files (nothing is written when None)

    Returns:
        CompareResult with one outcome per rule
    """
    logger = get_logger()
    outcomes = CompareRunner(config).run(train_ds, test_ds)

    written: List[str] = []
    if output_dir is not None:
        written = write_compare_files(outcomes, output_dir, len(config.train.sizes) - 1)

    summary = {}
    for rule, outcome in outcomes.items():
        if outcome.succeeded and outcome.metrics:
            final = outcome.metrics[-1]
            summary[rule.value] = f"test_acc={final.test_acc:.4f} test_loss={final.test_loss:.4f}"
        else:
            summary[rule.value] = f"FAILED: {outcome.error}"
    logger.compare_summary(summary)
    return CompareResult(outcomes=outcomes, written_files=written)
