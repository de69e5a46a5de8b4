"""
YAML sidecar describing a finished training run.
"""
from pathlib import Path
from typing import Any, Dict, Union

import yaml

from src.config.config import LabConfig
from src.constants import METADATA_SUFFIX
from src.models.data_models import TrainResult


def metadata_path(metrics_path: Union[str, Path]) -> Path:
    """m.csv -> m.meta.yaml"""
    path = Path(metrics_path)
    return path.with_name(path.stem + METADATA_SUFFIX)


def build_metadata(config: LabConfig, result: TrainResult, checkpoint: Union[str, Path],
                   feedback_checksum: str) -> Dict[str, Any]:
    final = result.final_row
    return {
        'config': config.to_dict(),
        'rule': config.train.rule.value,
        'seed': config.train.seed,
        'decisions': {
            'loss': 'mean cross-entropy over the batch, probabilities floored at 1e-12',
            'output': 'softmax',
            'hidden_activation': 'sigmoid',
            'input_normalization': 'pixels / 255, no centering',
            'init': 'W uniform +-1/sqrt(fan_in), b = 0',
            'feedback_init': 'B uniform +-1/sqrt(fan_out)',
            'update': 'plain SGD',
            'sampling': config.data.sampling.value,
            'itd_mode': config.train.itd_mode.value,
        },
        'checkpoint': str(checkpoint),
        'feedback_sha256': feedback_checksum,
        'rows': len(result.metrics),
        'alignment_samples': len(result.alignment),
        'final': None if final is None else {
            'step': final.step,
            'train_loss': float(final.train_loss),
            'test_loss': float(final.test_loss),
            'test_acc': float(final.test_acc),
        },
    }


def write_metadata(metadata: Dict[str, Any], path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, 'w', encoding='utf-8') as f:
        yaml.safe_dump(metadata, f, sort_keys=False)
    return target


def read_metadata(path: Union[str, Path]) -> Dict[str, Any]:
    with open(path, 'r', encoding='utf-8') as f:
        return yaml.safe_load(f)
