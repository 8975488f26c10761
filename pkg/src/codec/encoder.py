"""
SVD Encoder/Decoder for svdc
Rank-k encoding into a container, pixel-domain decoding, compression accounting
"""

import logging

import numpy as np

from core.exceptions import CorruptContainer, InputError, RankOutOfRange
from codec.container import HEADER_SIZE, CompressedImage, Precision
from image_io.conversion import quantize_pixels
from linalg.matrix import Matrix
from linalg.svd import SvdFactors, SvdOptions, TruncatedSvd, reconstruct, svd, truncate

logger = logging.getLogger(__name__)


def encode_factors(image: Matrix, factors: SvdFactors, k: int, precision=Precision.F32) -> CompressedImage:
    """Container for an image whose factorization is already known."""
    precision = Precision.parse(precision)
    t = truncate(factors, k)
    compressed = CompressedImage(
        rows=t.source_rows,
        cols=t.source_cols,
        k=k,
        precision=precision,
        total_energy=t.total_energy,
        pixel_peak=float(np.max(image.data)),
        sigma_k=t.sigma_k,
        u_k=t.u_k.data,
        v_k=t.v_k.data
    )
    if precision is Precision.F32 and logger.isEnabledFor(logging.DEBUG):
        deviation = np.max(np.abs(reconstruct(to_truncated(compressed)).data - reconstruct(t).data))
        logger.debug("f32 storage deviation at k=%d: %.3e gray levels", k, deviation)
    return compressed


def encode(image: Matrix, k: int, precision=Precision.F32, opts: SvdOptions = None) -> CompressedImage:
    """Factor the image and keep its first k singular triplets."""
    if not 1 <= k <= min(image.shape):
        raise RankOutOfRange(k, min(image.shape))
    if np.any(image.data < 0.0) or np.any(image.data > 255.0):
        raise InputError("encode expects 8-bit pixel values in [0, 255]")
    return encode_factors(image, svd(image, opts), k, precision)


def to_truncated(c: CompressedImage) -> TruncatedSvd:
    """Lift a container's payload back to a double-precision truncation."""
    try:
        return TruncatedSvd(
            k=c.k,
            u_k=Matrix(c.u_k.astype(np.float64)),
            sigma_k=c.sigma_k.astype(np.float64),
            v_k=Matrix(c.v_k.astype(np.float64)),
            source_rows=c.rows,
            source_cols=c.cols,
            total_energy=c.total_energy
        )
    except InputError as exc:
        raise CorruptContainer(str(exc)) from exc


def decode(c: CompressedImage) -> Matrix:
    """Reconstruct, clamp to [0, 255] and round half away from zero."""
    c.validate()
    return Matrix(quantize_pixels(reconstruct(to_truncated(c)).data).astype(np.float64))


def compression_ratio(m: int, n: int, k: int) -> float:
    """Stored values ratio m*n / (k (m + n + 1)); above 1 means compression."""
    if m < 1 or n < 1:
        raise InputError(f"invalid dimensions {m}x{n}")
    if not 1 <= k <= min(m, n):
        raise RankOutOfRange(k, min(m, n))
    return (m * n) / (k * (m + n + 1))


def byte_compression_ratio(m: int, n: int, k: int, precision=Precision.F32) -> float:
    """Raw 8-bit image bytes over container bytes, header included."""
    precision = Precision.parse(precision)
    compression_ratio(m, n, k)
    return (m * n) / (HEADER_SIZE + k * (m + n + 1) * precision.width)


def break_even_rank(m: int, n: int) -> int:
    """Largest k that still compresses in stored-value terms."""
    bound = (m * n) / (m + n + 1)
    k = int(np.floor(bound))
    return k - 1 if k == bound else k
