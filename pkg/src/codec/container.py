"""
SVDC Container for svdc
Bit-exact little-endian binary format holding truncated SVD factors

Layout:
  0-3   magic "SVDC"
  4     version (1)
  5     precision (0 = f32, 1 = f64)
  6-7   reserved, zero
  8     u32 rows m, u32 cols n, u32 rank k
  20    f64 total_energy, f64 pixel_peak
  36    sigma_k (k), u_k (m*k, column-major), v_k (n*k, column-major)
"""

import struct
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from config.settings import CODEC_CONFIG
from core.exceptions import BadMagic, CorruptContainer, UnsupportedVersion

_HEADER = struct.Struct("<4sBBHIIIdd")
HEADER_SIZE = _HEADER.size


class Precision(Enum):
    F32 = 0
    F64 = 1

    @property
    def dtype(self) -> np.dtype:
        return np.dtype("<f4") if self is Precision.F32 else np.dtype("<f8")

    @property
    def width(self) -> int:
        return self.dtype.itemsize

    @classmethod
    def parse(cls, value: Union[str, "Precision"]) -> "Precision":
        if isinstance(value, Precision):
            return value
        try:
            return cls[str(value).upper()]
        except KeyError:
            raise ValueError(f"unknown precision {value!r}, expected f32 or f64") from None


@dataclass(frozen=True, eq=False)
class CompressedImage:
    """
    Header fields plus payload arrays stored at the declared precision.
    u_k is m x k and v_k is n x k.
    """
    rows: int
    cols: int
    k: int
    precision: Precision
    total_energy: float
    pixel_peak: float
    sigma_k: np.ndarray
    u_k: np.ndarray
    v_k: np.ndarray
    version: int = 1

    def __post_init__(self):
        dtype = self.precision.dtype
        for name in ("sigma_k", "u_k", "v_k"):
            array = np.asarray(getattr(self, name)).astype(dtype)
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        self.validate()

    def validate(self) -> None:
        m, n, k = self.rows, self.cols, self.k
        if m < 1 or n < 1:
            raise CorruptContainer(f"invalid dimensions {m}x{n}")
        if not 1 <= k <= min(m, n):
            raise CorruptContainer(f"rank k={k} outside 1..{min(m, n)}")
        if self.sigma_k.shape != (k,) or self.u_k.shape != (m, k) or self.v_k.shape != (n, k):
            raise CorruptContainer(
                f"payload shapes {self.sigma_k.shape}, {self.u_k.shape}, {self.v_k.shape} "
                f"do not match m={m}, n={n}, k={k}"
            )
        payload = (self.sigma_k, self.u_k, self.v_k)
        if not all(np.all(np.isfinite(a)) for a in payload):
            raise CorruptContainer("payload contains NaN or Inf")
        if not (np.isfinite(self.total_energy) and np.isfinite(self.pixel_peak)):
            raise CorruptContainer("header contains NaN or Inf")
        retained = float(np.sum(self.sigma_k.astype(np.float64) ** 2))
        # f32 rounding can push the retained energy a hair past the stored f64 total
        slack = 1e-6 if self.precision is Precision.F32 else 1e-12
        if self.total_energy < retained * (1.0 - slack):
            raise CorruptContainer(f"total energy {self.total_energy!r} below retained energy {retained!r}")

    @property
    def scalar_count(self) -> int:
        return self.k + self.rows * self.k + self.cols * self.k

    @property
    def byte_size(self) -> int:
        return HEADER_SIZE + self.scalar_count * self.precision.width

    def same_as(self, other: "CompressedImage") -> bool:
        """Field-for-field equality with bit-identical payloads."""
        return (
            (self.rows, self.cols, self.k, self.precision, self.version)
            == (other.rows, other.cols, other.k, other.precision, other.version)
            and struct.pack("<dd", self.total_energy, self.pixel_peak)
            == struct.pack("<dd", other.total_energy, other.pixel_peak)
            and self.sigma_k.tobytes() == other.sigma_k.tobytes()
            and self.u_k.tobytes() == other.u_k.tobytes()
            and self.v_k.tobytes() == other.v_k.tobytes()
        )


def write_container(c: CompressedImage) -> bytes:
    header = _HEADER.pack(
        CODEC_CONFIG["magic"], c.version, c.precision.value, 0,
        c.rows, c.cols, c.k, c.total_energy, c.pixel_peak
    )
    dtype = c.precision.dtype
    parts = [
        header,
        c.sigma_k.astype(dtype).tobytes(),
        c.u_k.astype(dtype).tobytes(order="F"),
        c.v_k.astype(dtype).tobytes(order="F")
    ]
    return b"".join(parts)


def read_container(data: bytes) -> CompressedImage:
    magic = CODEC_CONFIG["magic"]
    if data[:4] != magic:
        if len(data) < len(magic) and magic.startswith(bytes(data)):
            raise CorruptContainer(f"truncated magic: {len(data)} of {len(magic)} bytes")
        raise BadMagic(bytes(data[:4]), magic)
    if len(data) < HEADER_SIZE:
        raise CorruptContainer(f"truncated header: {len(data)} of {HEADER_SIZE} bytes")
    _, version, precision_code, reserved, m, n, k, total_energy, pixel_peak = _HEADER.unpack_from(data)
    if version != CODEC_CONFIG["version"]:
        raise UnsupportedVersion(version)
    if reserved != 0:
        raise CorruptContainer(f"reserved bytes must be zero, got {reserved}")
    try:
        precision = Precision(precision_code)
    except ValueError:
        raise CorruptContainer(f"unknown precision code {precision_code}") from None
    if m < 1 or n < 1 or not 1 <= k <= min(m, n):
        raise CorruptContainer(f"invalid header dimensions m={m}, n={n}, k={k}")

    width = precision.width
    expected = HEADER_SIZE + (k + m * k + n * k) * width
    if len(data) != expected:
        raise CorruptContainer(f"payload length mismatch: expected {expected} bytes, got {len(data)}")

    offset = HEADER_SIZE
    sigma_k = np.frombuffer(data, dtype=precision.dtype, count=k, offset=offset)
    offset += k * width
    u_k = np.frombuffer(data, dtype=precision.dtype, count=m * k, offset=offset).reshape((m, k), order="F")
    offset += m * k * width
    v_k = np.frombuffer(data, dtype=precision.dtype, count=n * k, offset=offset).reshape((n, k), order="F")

    return CompressedImage(
        rows=m, cols=n, k=k, precision=precision,
        total_energy=total_energy, pixel_peak=pixel_peak,
        sigma_k=sigma_k, u_k=u_k, v_k=v_k, version=version
    )
