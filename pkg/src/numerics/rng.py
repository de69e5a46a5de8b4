"""
Seeded pseudo-randomness.

A splitmix64 stream is counter based: draw i of a stream in state s is
mix(s + (i + 1) * GAMMA). That lets numpy generate whole blocks at once while
producing exactly the sequence the scalar algorithm would. Sub-streams hash
the master seed together with a purpose label, so adding a new consumer never
shifts the draws of existing ones.
"""
import hashlib
import math

import numpy as np
import numpy.typing as npt

from src.models.data_models import Matrix
from src.models.exceptions import ParameterError

_MASK64 = (1 << 64) - 1
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_SHIFT30 = np.uint64(30)
_SHIFT27 = np.uint64(27)
_SHIFT31 = np.uint64(31)
_SHIFT11 = np.uint64(11)
_TWO_POW_53 = float(1 << 53)


def _mix(z: npt.NDArray[np.uint64]) -> npt.NDArray[np.uint64]:
    z = (z ^ (z >> _SHIFT30)) * _MUL1
    z = (z ^ (z >> _SHIFT27)) * _MUL2
    return z ^ (z >> _SHIFT31)


def derive_seed(seed: int, label: str) -> int:
    """
    Mix a master seed with a purpose label into a 64-bit sub-stream seed.

    Args:
        seed: Master seed (any integer, reduced modulo 2**64)
        label: Purpose label such as "init" or "feedback"

    Returns:
        64-bit unsigned seed
    """
    payload = f"{seed & _MASK64}:{label}".encode("utf-8")
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


class Rng:
    """splitmix64 generator owned by exactly one consumer"""

    def __init__(self, seed: int):
        """
        Initialize the generator.

        Args:
            seed: Initial 64-bit state
        """
        self.state = int(seed) & _MASK64

    @classmethod
    def substream(cls, seed: int, label: str) -> "Rng":
        """Independent stream for one purpose derived from a master seed"""
        return cls(derive_seed(seed, label))

    def next_uint64(self, count: int) -> npt.NDArray[np.uint64]:
        """Next `count` raw 64-bit outputs"""
        if count < 0:
            raise ParameterError(f"Draw count must be non-negative, got {count}")
        steps = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            states = np.uint64(self.state) + steps * _GAMMA
            out = _mix(states)
        self.state = (self.state + count * int(_GAMMA)) & _MASK64
        return out

    def uniform(self, count: int) -> npt.NDArray[np.float64]:
        """`count` floats uniform in [0, 1) with 53-bit resolution"""
        return (self.next_uint64(count) >> _SHIFT11).astype(np.float64) / _TWO_POW_53

    def normal(self, count: int) -> npt.NDArray[np.float64]:
        """`count` standard normal draws (Box-Muller, two uniforms per draw)"""
        u = self.uniform(2 * count)
        radius = np.sqrt(-2.0 * np.log1p(-u[:count]))
        return radius * np.cos(2.0 * math.pi * u[count:])

    def integers(self, count: int, high: int) -> npt.NDArray[np.int64]:
        """`count` integers uniform in [0, high)"""
        if high < 1:
            raise ParameterError(f"Upper bound must be positive, got {high}")
        return np.minimum(np.floor(self.uniform(count) * high), high - 1).astype(np.int64)

    def permutation(self, n: int) -> npt.NDArray[np.int64]:
        """Uniformly shuffled arrangement of range(n)"""
        return np.argsort(self.next_uint64(n), kind="stable").astype(np.int64)


def rand_uniform(rng: Rng, rows: int, cols: int, lo: float, hi: float) -> Matrix:
    """
    Matrix of i.i.d. uniform entries in [lo, hi).

    Args:
        rng: Generator to advance
        rows, cols: Output shape
        lo, hi: Half-open interval bounds

    Raises:
        ParameterError: if lo >= hi or the shape is empty
    """
    if not lo < hi:
        raise ParameterError(f"rand_uniform needs lo < hi, got lo={lo}, hi={hi}")
    if rows < 1 or cols < 1:
        raise ParameterError(f"rand_uniform needs a positive shape, got {rows}x{cols}")
    values = lo + (hi - lo) * rng.uniform(rows * cols)
    # rounding in lo + span * u can land on hi itself
    values = np.minimum(values, np.nextafter(hi, lo))
    return values.reshape(rows, cols)


def rand_normal(rng: Rng, rows: int, cols: int, mean: float = 0.0,
                std: float = 1.0) -> Matrix:
    """Matrix of i.i.d. normal entries"""
    if rows < 1 or cols < 1:
        raise ParameterError(f"rand_normal needs a positive shape, got {rows}x{cols}")
    if std <= 0:
        raise ParameterError(f"rand_normal needs std > 0, got {std}")
    return (mean + std * rng.normal(rows * cols)).reshape(rows, cols)
