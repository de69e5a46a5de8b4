"""
Configuration management for the lab.

Settings are grouped into section dataclasses aggregated by LabConfig.
Values are resolved with the precedence: command-line flags > config file
(flat key=value, read with python-dotenv) > BIOBP_* environment variables >
built-in defaults.
"""
import os
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

from dotenv import dotenv_values

from src.constants import (
    DEFAULT_ALIGN_EVERY, DEFAULT_BATCH_SIZE, DEFAULT_DATA_DIR, DEFAULT_EVAL_EVERY,
    DEFAULT_HIDDEN, DEFAULT_LEARNING_RATE, DEFAULT_SEED, DEFAULT_STEPS,
    DEFAULT_SYNTH_TEST, DEFAULT_SYNTH_TRAIN, DEFAULT_WORKERS, ENV_PREFIX,
    LOGS_DIR, MNIST_INPUT_UNITS, NUM_CLASSES,
)
from src.models.data_models import DataSource, ItdMode, RuleKind, SamplingMode
from src.models.exceptions import ConfigError


@dataclass
class TrainConfig:
    """Training run settings (defaults are the published hyper-parameters)"""
    rule: RuleKind = RuleKind.VBP
    lr: float = DEFAULT_LEARNING_RATE
    steps: int = DEFAULT_STEPS
    batch: int = DEFAULT_BATCH_SIZE
    hidden: Tuple[int, ...] = DEFAULT_HIDDEN
    seed: int = DEFAULT_SEED
    eval_every: int = DEFAULT_EVAL_EVERY
    align_every: int = DEFAULT_ALIGN_EVERY
    itd_mode: ItdMode = ItdMode.ACROSS_STEPS
    input_units: int = MNIST_INPUT_UNITS
    output_units: int = NUM_CLASSES

    @property
    def sizes(self) -> Tuple[int, ...]:
        """Layer widths [d0, d1, ..., dL]"""
        return (self.input_units, *self.hidden, self.output_units)


@dataclass
class DataConfig:
    """Dataset settings"""
    source: DataSource = DataSource.MNIST
    data_dir: str = DEFAULT_DATA_DIR
    sampling: SamplingMode = SamplingMode.EPOCH
    synth_train: int = DEFAULT_SYNTH_TRAIN
    synth_test: int = DEFAULT_SYNTH_TEST


@dataclass
class OutputConfig:
    """Output settings"""
    out: Optional[str] = None
    wall_clock: bool = False  # real elapsed time in wall_ms; 0 keeps files byte-identical


@dataclass
class CompareConfig:
    """Comparison settings"""
    workers: int = DEFAULT_WORKERS


@dataclass
class LoggingConfig:
    """Logging settings"""
    log_level: str = "INFO"
    log_to_file: bool = True
    log_to_console: bool = True
    detailed_logging: bool = False
    log_dir: str = LOGS_DIR

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "LoggingConfig":
        """Logging settings from BIOBP_* environment variables"""
        env = os.environ if environ is None else environ
        return cls(
            log_level=env.get(f'{ENV_PREFIX}LOG_LEVEL', 'INFO'),
            log_to_file=_parse_bool(env.get(f'{ENV_PREFIX}LOG_TO_FILE', 'true')),
            log_to_console=_parse_bool(env.get(f'{ENV_PREFIX}LOG_TO_CONSOLE', 'true')),
            detailed_logging=_parse_bool(env.get(f'{ENV_PREFIX}DETAILED_LOGGING', 'false')),
            log_dir=env.get(f'{ENV_PREFIX}LOG_DIR', LOGS_DIR),
        )


def _parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ('true', '1', 'yes', 'on'):
        return True
    if text in ('false', '0', 'no', 'off'):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _parse_hidden(value: Any) -> Tuple[int, ...]:
    if isinstance(value, (tuple, list)):
        return tuple(int(v) for v in value)
    parts = [p.strip() for p in str(value).split(',') if p.strip()]
    if not parts:
        raise ValueError("empty hidden layer list")
    return tuple(int(p) for p in parts)


def _parse_enum(enum_cls) -> Callable[[Any], Any]:
    def parse(value: Any):
        if isinstance(value, enum_cls):
            return value
        text = str(value).strip().lower()
        for member in enum_cls:
            if member.value == text:
                return member
        valid = ", ".join(m.value for m in enum_cls)
        raise ValueError(f"unknown value {value!r}; valid: {valid}")
    return parse


def _parse_level(value: Any) -> str:
    level = str(value).strip().upper()
    if level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
        raise ValueError(f"unknown log level {value!r}")
    return level


# key -> (section attribute, field name, parser)
OPTIONS: Dict[str, Tuple[str, str, Callable[[Any], Any]]] = {
    'rule': ('train', 'rule', _parse_enum(RuleKind)),
    'lr': ('train', 'lr', float),
    'steps': ('train', 'steps', int),
    'batch': ('train', 'batch', int),
    'hidden': ('train', 'hidden', _parse_hidden),
    'seed': ('train', 'seed', int),
    'eval_every': ('train', 'eval_every', int),
    'align_every': ('train', 'align_every', int),
    'itd_mode': ('train', 'itd_mode', _parse_enum(ItdMode)),
    'data': ('data', 'source', _parse_enum(DataSource)),
    'data_dir': ('data', 'data_dir', str),
    'sampling': ('data', 'sampling', _parse_enum(SamplingMode)),
    'synth_train': ('data', 'synth_train', int),
    'synth_test': ('data', 'synth_test', int),
    'out': ('output', 'out', str),
    'wall_clock': ('output', 'wall_clock', _parse_bool),
    'workers': ('compare', 'workers', int),
    'log_level': ('logging', 'log_level', _parse_level),
    'log_to_file': ('logging', 'log_to_file', _parse_bool),
    'log_to_console': ('logging', 'log_to_console', _parse_bool),
    'detailed_logging': ('logging', 'detailed_logging', _parse_bool),
    'log_dir': ('logging', 'log_dir', str),
}


def env_var_name(key: str) -> str:
    """Environment variable that feeds a config key (data_dir -> BIOBP_DATA_DIR)"""
    return f"{ENV_PREFIX}{key.upper()}"


def read_config_file(path: str) -> Dict[str, str]:
    """
    Read a flat key=value config file.

    Args:
        path: Path to the file

    Returns:
        Mapping of normalized keys (dashes become underscores) to raw values

    Raises:
        ConfigError: if the file is missing or holds an unknown key
    """
    if not os.path.isfile(path):
        raise ConfigError(f"Config file not found: {path}")
    values: Dict[str, str] = {}
    for raw_key, raw_value in dotenv_values(path).items():
        key = raw_key.strip().lower().replace('-', '_')
        if key not in OPTIONS:
            raise ConfigError(f"Unknown key '{raw_key}' in config file {path}")
        if raw_value is not None:
            values[key] = raw_value
    return values


class LabConfig:
    """Main configuration class"""

    def __init__(self, train: Optional[TrainConfig] = None, data: Optional[DataConfig] = None,
                 output: Optional[OutputConfig] = None, compare: Optional[CompareConfig] = None,
                 logging: Optional[LoggingConfig] = None):
        self.train = train or TrainConfig()
        self.data = data or DataConfig()
        self.output = output or OutputConfig()
        self.compare = compare or CompareConfig()
        self.logging = logging or LoggingConfig()

    @classmethod
    def resolve(cls, flags: Optional[Mapping[str, Any]] = None, config_file: Optional[str] = None,
                environ: Optional[Mapping[str, str]] = None) -> "LabConfig":
        """
        Build a configuration from every source.

        Args:
            flags: Parsed command-line values; None entries count as unset
            config_file: Optional key=value file
            environ: Environment mapping (defaults to os.environ)

        Returns:
            Validated LabConfig

        Raises:
            ConfigError: on unknown keys, unparsable values or violated invariants
        """
        env = os.environ if environ is None else environ
        raw: Dict[str, Any] = {}

        for key in OPTIONS:
            env_value = env.get(env_var_name(key))
            if env_value is not None and env_value != '':
                raw[key] = env_value

        if config_file:
            raw.update(read_config_file(config_file))

        for key, value in (flags or {}).items():
            if value is None:
                continue
            if key not in OPTIONS:
                raise ConfigError(f"Unknown option '{key}'")
            raw[key] = value

        config = cls()
        for key, value in raw.items():
            section_name, field_name, parser = OPTIONS[key]
            try:
                parsed = parser(value)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Invalid value for '{key}': {e}") from e
            setattr(getattr(config, section_name), field_name, parsed)

        config.validate()
        return config

    def validate(self) -> bool:
        """
        Validate configuration.

        Raises:
            ConfigError: describing the first violated constraint
        """
        t = self.train
        if not t.lr > 0:
            raise ConfigError(f"Learning rate must be positive, got {t.lr}")
        if t.steps < 1:
            raise ConfigError(f"Steps must be at least 1, got {t.steps}")
        if t.batch < 1:
            raise ConfigError(f"Batch size must be at least 1, got {t.batch}")
        if t.eval_every < 1 or t.align_every < 1:
            raise ConfigError("eval_every and align_every must be at least 1")
        if any(size < 1 for size in t.sizes) or len(t.sizes) < 2:
            raise ConfigError(f"Layer sizes must all be at least 1, got {list(t.sizes)}")
        if self.data.synth_train < NUM_CLASSES or self.data.synth_test < NUM_CLASSES:
            raise ConfigError(f"Synthetic splits need at least {NUM_CLASSES} examples")
        if self.compare.workers < 1:
            raise ConfigError(f"Workers must be at least 1, got {self.compare.workers}")
        return True

    def describe(self) -> str:
        """One-line config echo"""
        t = self.train
        hidden = ",".join(str(h) for h in t.hidden)
        return (
            f"rule={t.rule.value} lr={t.lr:g} batch={t.batch} hidden={hidden} "
            f"steps={t.steps} seed={t.seed} data={self.data.source.value}"
        )

    def with_rule(self, rule: RuleKind) -> "LabConfig":
        """Copy of this configuration with another rule"""
        train = TrainConfig(**{**asdict(self.train), 'rule': rule})
        return LabConfig(train=train, data=self.data, output=self.output,
                         compare=self.compare, logging=self.logging)

    def to_dict(self) -> Dict[str, Any]:
        """Plain-value view for metadata files"""
        def plain(section) -> Dict[str, Any]:
            out = {}
            for key, value in asdict(section).items():
                if hasattr(value, 'value'):
                    value = value.value
                elif isinstance(value, tuple):
                    value = list(value)
                out[key] = value
            return out

        return {
            'train': {**plain(self.train), 'sizes': list(self.train.sizes)},
            'data': plain(self.data),
            'output': plain(self.output),
            'compare': plain(self.compare),
        }
