"""
Desk-scale MNIST runs (784-32-10, lr 1e-3, batch 50, 20000 steps).

Skipped unless the four MNIST files are available under BIOBP_DATA_DIR or ./data.
"""
import numpy as np
import pandas as pd
import pytest

from src.config.config import LabConfig
from src.data.mnist_loader import has_mnist_files, load_mnist, resolve_data_dir
from src.models.data_models import RuleKind
from src.training.trainer import train

DESK_STEPS = 20000
# TODO: re-measure on a pilot run and tighten toward the 0.90-0.95 band
VBP_FBA_FLOOR = 0.85
ITD_FLOOR = 0.20
ALIGNMENT_SEEDS = [0, 1, 2, 3, 4]
SMOOTHING = 100

pytestmark = [
    pytest.mark.slow,
    pytest.mark.skipif(not has_mnist_files(resolve_data_dir()), reason="MNIST files not available"),
]


@pytest.fixture(scope="module")
def mnist():
    return load_mnist()


def desk_config(rule: RuleKind, eval_every: int = 1000, align_every: int = 1000, seed: int = 0) -> LabConfig:
    return LabConfig.resolve({'rule': rule.value, 'steps': DESK_STEPS, 'eval_every': eval_every,
                              'align_every': align_every, 'seed': seed}, environ={})


def smoothed(losses):
    return pd.Series(losses).rolling(SMOOTHING).mean().dropna().to_numpy()


@pytest.mark.parametrize("rule", [RuleKind.VBP, RuleKind.FBA])
def test_backprop_and_feedback_alignment_learn(mnist, rule):
    train_ds, test_ds = mnist
    result = train(desk_config(rule), train_ds, test_ds)
    assert result.final_row.test_acc >= VBP_FBA_FLOOR


@pytest.mark.parametrize("rule", [RuleKind.ITD_Y, RuleKind.ITD_DY])
def test_temporal_differencing_beats_chance(mnist, rule):
    train_ds, test_ds = mnist
    result = train(desk_config(rule), train_ds, test_ds)
    assert result.final_row.test_acc > ITD_FLOOR
    curve = smoothed(result.batch_losses[:5000])
    assert curve[-1] < curve[0]


@pytest.mark.parametrize("seed", ALIGNMENT_SEEDS)
def test_fba_alignment_improves_over_training(mnist, seed):
    train_ds, test_ds = mnist
    result = train(desk_config(RuleKind.FBA, eval_every=DESK_STEPS, align_every=500, seed=seed),
                   train_ds, test_ds)
    hidden_angles = [sample.angles[0] for sample in result.alignment if sample.angles[0] is not None]
    assert 45.0 <= hidden_angles[0] <= 135.0
    assert np.median(hidden_angles[-10:]) < np.median(hidden_angles[:10])
