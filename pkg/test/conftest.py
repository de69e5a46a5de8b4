"""
Shared fixtures for the lab tests.

Set HYPOTHESIS_PROFILE=ci for the heavier property runs.
"""
import os

import pytest
from hypothesis import HealthCheck, settings

from src.config.config import LabConfig, TrainConfig, DataConfig, OutputConfig, LoggingConfig
from src.data.synthetic import synth_dataset
from src.models.data_models import DataSource, RuleKind
from src.network.mlp import init_mlp
from src.utils.logger import init_logger

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

# Initialize logger before running tests
init_logger(log_to_file=False, log_to_console=False, log_level="INFO", enable_detailed=False)


@pytest.fixture(autouse=True)
def quiet_environment(monkeypatch):
    """Keep CLI runs from writing log files or reading stray BIOBP_* settings"""
    monkeypatch.setenv("BIOBP_LOG_TO_FILE", "false")
    monkeypatch.setenv("BIOBP_LOG_TO_CONSOLE", "false")
    yield
    init_logger(log_to_file=False, log_to_console=False, log_level="INFO", enable_detailed=False)


@pytest.fixture
def small_sizes():
    return (6, 5, 4, 3)


@pytest.fixture
def small_mlp(small_sizes):
    return init_mlp(small_sizes, seed=3)


@pytest.fixture
def synth_pair():
    """Tiny 2-class train/test split with 8 inputs"""
    train = synth_dataset(seed=5, n=200, d=8, c=2, split="train")
    test = synth_dataset(seed=5, n=100, d=8, c=2, split="test")
    return train, test


def make_config(rule: RuleKind = RuleKind.VBP, *, lr: float = 0.1, steps: int = 50, batch: int = 10,
                hidden=(6,), seed: int = 1, eval_every: int = 10, align_every: int = 10,
                input_units: int = 8, output_units: int = 2, **train_extra) -> LabConfig:
    """Small LabConfig for fast training tests"""
    train = TrainConfig(rule=rule, lr=lr, steps=steps, batch=batch, hidden=tuple(hidden), seed=seed,
                        eval_every=eval_every, align_every=align_every, input_units=input_units,
                        output_units=output_units, **train_extra)
    config = LabConfig(train=train, data=DataConfig(source=DataSource.SYNTH), output=OutputConfig(),
                       logging=LoggingConfig(log_to_file=False, log_to_console=False))
    return config


@pytest.fixture
def config_factory():
    return make_config
