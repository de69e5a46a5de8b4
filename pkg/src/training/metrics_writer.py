"""
Metrics CSV reading and writing.

Header: step,rule,seed,train_loss,test_loss,test_acc,align_l1..align_lL,wall_ms.
Floats are written with %.9g, missing alignment values as "nan", so two runs
with the same configuration produce byte-identical files.
"""
from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd

from src.constants import METRICS_BASE_COLUMNS, METRICS_FLOAT_FORMAT, METRICS_NAN_LITERAL
from src.models.data_models import MetricsRow
from src.models.exceptions import ConfigError, DataError, ShapeError
from src.utils.logger import get_logger


def alignment_columns(num_layers: int) -> List[str]:
    return [f"align_l{i}" for i in range(1, num_layers + 1)]


def metrics_columns(num_layers: int) -> List[str]:
    """Full column list for a network with `num_layers` weight layers"""
    return [*METRICS_BASE_COLUMNS, *alignment_columns(num_layers), "wall_ms"]


def rows_to_frame(rows: Sequence[MetricsRow], num_layers: int) -> pd.DataFrame:
    """
    Tabulate metrics rows.

    Raises:
        ShapeError: if a row carries the wrong number of alignment values
    """
    records = []
    for row in rows:
        if len(row.alignment) != num_layers:
            raise ShapeError("Alignment width does not match the layer count",
                             (len(row.alignment),), (num_layers,))
        record = {
            'step': int(row.step),
            'rule': row.rule,
            'seed': int(row.seed),
            'train_loss': float(row.train_loss),
            'test_loss': float(row.test_loss),
            'test_acc': float(row.test_acc),
        }
        for column, angle in zip(alignment_columns(num_layers), row.alignment):
            record[column] = float('nan') if angle is None else float(angle)
        record['wall_ms'] = float(row.wall_ms)
        records.append(record)

    frame = pd.DataFrame.from_records(records, columns=metrics_columns(num_layers))
    return frame.astype({'step': 'int64', 'seed': 'int64'}) if records else frame


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=METRICS_FLOAT_FORMAT,
                        na_rep=METRICS_NAN_LITERAL, lineterminator="\n")


def write_metrics_csv(rows: Sequence[MetricsRow], path: Union[str, Path], num_layers: int) -> Path:
    """
    Write metrics rows to a CSV file.

    Args:
        rows: Rows in step order
        path: Destination file (parent directories are created)
        num_layers: Weight layers of the network, one align column each

    Returns:
        Path written
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    text = frame_to_csv(rows_to_frame(rows, num_layers))
    with open(target, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    get_logger().debug(f"Wrote {len(rows)} metrics rows to {target}")
    return target


def read_metrics_csv(path: Union[str, Path]) -> pd.DataFrame:
    """
    Read a metrics CSV (any file with at least a header row).

    Raises:
        DataError: if the file is missing or unreadable
        ConfigError: if the file has no header
    """
    source = Path(path)
    if not source.is_file():
        raise DataError(f"Metrics file not found: {source}")
    try:
        return pd.read_csv(source)
    except pd.errors.EmptyDataError as e:
        raise ConfigError(f"Metrics file {source} is empty") from e
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataError(f"Cannot parse metrics file {source}: {e}") from e
