"""
Model checkpoint container.

Layout: magic b"BIOBP1", u32 LE layer count, u32 LE widths, then W_1, b_1,
W_2, b_2, ... as little-endian float64 in row-major order.
"""
import struct
from pathlib import Path
from typing import Union

import numpy as np

from src.constants import CHECKPOINT_MAGIC
from src.models.data_models import Mlp
from src.models.exceptions import DataError, IdxLengthError, ParameterError
from src.network.mlp import validate_sizes
from src.utils.logger import get_logger

_F64_LE = np.dtype('<f8')


def encode_checkpoint(mlp: Mlp) -> bytes:
    """Serialize a network into the checkpoint layout"""
    parts = [CHECKPOINT_MAGIC, struct.pack('<I', len(mlp.sizes))]
    parts.append(struct.pack(f'<{len(mlp.sizes)}I', *mlp.sizes))
    for W, b in zip(mlp.weights, mlp.biases):
        parts.append(np.ascontiguousarray(W, dtype=_F64_LE).tobytes())
        parts.append(np.ascontiguousarray(b, dtype=_F64_LE).tobytes())
    return b"".join(parts)


def decode_checkpoint(payload: bytes) -> Mlp:
    """
    Parse a checkpoint.

    Raises:
        DataError: on a wrong magic
        IdxLengthError: when the payload length disagrees with the widths
    """
    magic_len = len(CHECKPOINT_MAGIC)
    if payload[:magic_len] != CHECKPOINT_MAGIC:
        raise DataError(f"Not a checkpoint: magic {payload[:magic_len]!r}")
    offset = magic_len
    if len(payload) < offset + 4:
        raise IdxLengthError(expected=offset + 4, actual=len(payload))
    (count,) = struct.unpack_from('<I', payload, offset)
    offset += 4
    if len(payload) < offset + 4 * count:
        raise IdxLengthError(expected=offset + 4 * count, actual=len(payload))
    sizes = struct.unpack_from(f'<{count}I', payload, offset)
    offset += 4 * count
    try:
        validate_sizes(sizes)
    except ParameterError as e:
        raise DataError(f"Checkpoint holds invalid layer widths: {e}") from e

    expected = offset + 8 * sum(o * i + o for i, o in zip(sizes[:-1], sizes[1:]))
    if len(payload) != expected:
        raise IdxLengthError(expected=expected, actual=len(payload))

    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        W = np.frombuffer(payload, dtype=_F64_LE, count=fan_out * fan_in, offset=offset)
        offset += 8 * fan_out * fan_in
        b = np.frombuffer(payload, dtype=_F64_LE, count=fan_out, offset=offset)
        offset += 8 * fan_out
        weights.append(W.astype(np.float64).reshape(fan_out, fan_in))
        biases.append(b.astype(np.float64).reshape(1, fan_out))
    return Mlp(sizes=tuple(sizes), weights=weights, biases=biases)


def save_checkpoint(mlp: Mlp, path: Union[str, Path]) -> Path:
    """Write a checkpoint atomically (temp file, then rename)"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    temp_file = target.with_suffix(target.suffix + '.tmp')
    temp_file.write_bytes(encode_checkpoint(mlp))
    temp_file.replace(target)
    get_logger().debug(f"Saved checkpoint {target} (sizes={list(mlp.sizes)})")
    return target


def load_checkpoint(path: Union[str, Path]) -> Mlp:
    """Read a checkpoint written by save_checkpoint"""
    return decode_checkpoint(Path(path).read_bytes())
