"""
IDX container parsing and writing.

Images: big-endian u32 magic 0x00000803, count, rows, cols, then count*rows*cols
pixel bytes. Labels: magic 0x00000801, count, then count label bytes.
Gzip-compressed payloads (1F 8B prefix) are inflated transparently.
"""
import gzip
import struct

import numpy as np

from src.constants import (
    GZIP_PREFIX, IDX_IMAGE_HEADER_BYTES, IDX_IMAGE_MAGIC, IDX_LABEL_HEADER_BYTES,
    IDX_LABEL_MAGIC, NUM_CLASSES,
)
from src.models.data_models import ImageSet, LabelSet
from src.models.exceptions import (
    IdxFormatError, IdxLengthError, LabelDomainError, ParameterError,
)


def maybe_decompress(payload: bytes) -> bytes:
    """Inflate gzip payloads, pass raw ones through"""
    if payload[:2] == GZIP_PREFIX:
        return gzip.decompress(payload)
    return payload


def _read_header(payload: bytes, header_bytes: int, expected_magic: int) -> tuple:
    if len(payload) < 4:
        raise IdxLengthError(expected=header_bytes, actual=len(payload))
    (magic,) = struct.unpack('>I', payload[:4])
    if magic != expected_magic:
        raise IdxFormatError(observed_magic=magic, expected_magic=expected_magic)
    if len(payload) < header_bytes:
        raise IdxLengthError(expected=header_bytes, actual=len(payload))
    return struct.unpack(f'>{header_bytes // 4}I', payload[:header_bytes])


def parse_idx_images(payload: bytes) -> ImageSet:
    """
    Parse an IDX image file.

    Args:
        payload: Complete file contents (raw or gzip)

    Returns:
        ImageSet with a flat uint8 pixel array

    Raises:
        IdxFormatError: magic is not 0x00000803
        IdxLengthError: byte count disagrees with the header
    """
    payload = maybe_decompress(payload)
    _, count, rows, cols = _read_header(payload, IDX_IMAGE_HEADER_BYTES, IDX_IMAGE_MAGIC)

    expected = IDX_IMAGE_HEADER_BYTES + count * rows * cols
    if len(payload) != expected:
        raise IdxLengthError(expected=expected, actual=len(payload))

    pixels = np.frombuffer(payload, dtype=np.uint8, offset=IDX_IMAGE_HEADER_BYTES).copy()
    return ImageSet(count=count, rows=rows, cols=cols, pixels=pixels)


def parse_idx_labels(payload: bytes) -> LabelSet:
    """
    Parse an IDX label file.

    Args:
        payload: Complete file contents (raw or gzip)

    Returns:
        LabelSet

    Raises:
        IdxFormatError: magic is not 0x00000801
        IdxLengthError: byte count disagrees with the header
        LabelDomainError: a label is 10 or larger
    """
    payload = maybe_decompress(payload)
    _, count = _read_header(payload, IDX_LABEL_HEADER_BYTES, IDX_LABEL_MAGIC)

    expected = IDX_LABEL_HEADER_BYTES + count
    if len(payload) != expected:
        raise IdxLengthError(expected=expected, actual=len(payload))

    labels = np.frombuffer(payload, dtype=np.uint8, offset=IDX_LABEL_HEADER_BYTES).copy()
    out_of_range = np.flatnonzero(labels >= NUM_CLASSES)
    if out_of_range.size:
        index = int(out_of_range[0])
        raise LabelDomainError(value=int(labels[index]), index=index, num_classes=NUM_CLASSES)
    return LabelSet(count=count, labels=labels)


def serialize_idx_images(images: ImageSet) -> bytes:
    """Raw IDX bytes for an ImageSet (inverse of parse_idx_images)"""
    if images.pixels.size != images.count * images.rows * images.cols:
        raise ParameterError(
            f"ImageSet holds {images.pixels.size} pixels, header implies "
            f"{images.count * images.rows * images.cols}"
        )
    header = struct.pack('>4I', IDX_IMAGE_MAGIC, images.count, images.rows, images.cols)
    return header + np.asarray(images.pixels, dtype=np.uint8).tobytes()


def serialize_idx_labels(labels: LabelSet) -> bytes:
    """Raw IDX bytes for a LabelSet (inverse of parse_idx_labels)"""
    if labels.labels.size != labels.count:
        raise ParameterError(f"LabelSet holds {labels.labels.size} labels, header says {labels.count}")
    header = struct.pack('>2I', IDX_LABEL_MAGIC, labels.count)
    return header + np.asarray(labels.labels, dtype=np.uint8).tobytes()
