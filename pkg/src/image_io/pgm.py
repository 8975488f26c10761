"""
PGM Reader/Writer for svdc
Binary PGM (P5) with maxval <= 255; binary PPM (P6) is folded to gray on read
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from core.exceptions import (BadSignature, InputError, MalformedHeader,
                             MaxvalUnsupported, TruncatedPixelData)

logger = logging.getLogger(__name__)

_WHITESPACE = b" \t\n\r\x0b\x0c"


@dataclass(frozen=True, eq=False)
class ImageGray:
    """8-bit grayscale image, pixels row-major as a (height, width) uint8 array."""
    pixels: np.ndarray
    maxval: int = 255

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise InputError(f"image must be 2-D with positive dimensions, got shape {pixels.shape}")
        if pixels.dtype != np.uint8:
            if np.any(pixels < 0) or np.any(pixels > 255):
                raise InputError("pixel values must lie in [0, 255]")
            pixels = pixels.astype(np.uint8)
        pixels = np.ascontiguousarray(pixels).copy()
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ImageGray):
            return NotImplemented
        return self.maxval == other.maxval and np.array_equal(self.pixels, other.pixels)


def _parse_header(data: bytes, fields: int) -> Tuple[List[int], int]:
    """
    Read `fields` decimal integers after the 2-byte signature.
    Comments run from '#' to end of line. Returns the values and the
    offset just past the single whitespace byte that ends the header.
    """
    values = []
    pos = 2
    size = len(data)
    while len(values) < fields:
        while pos < size and (data[pos] in _WHITESPACE or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                while pos < size and data[pos] not in b"\r\n":
                    pos += 1
            else:
                pos += 1
        start = pos
        while pos < size and data[pos] in b"0123456789":
            pos += 1
        if start == pos:
            raise MalformedHeader(f"expected a decimal header field at byte {start}")
        values.append(int(data[start:pos]))
    if pos >= size or data[pos] not in _WHITESPACE:
        raise MalformedHeader("header must end with a single whitespace byte")
    return values, pos + 1


def _read_raster(data: bytes, channels: int) -> Tuple[np.ndarray, int]:
    (width, height, maxval), offset = _parse_header(data, 3)
    if width < 1 or height < 1:
        raise MalformedHeader(f"invalid dimensions {width}x{height}")
    if maxval < 1:
        raise MalformedHeader(f"invalid maxval {maxval}")
    if maxval > 255:
        raise MaxvalUnsupported(maxval)
    expected = width * height * channels
    raster = data[offset:offset + expected]
    if len(raster) < expected:
        raise TruncatedPixelData(expected, len(raster))
    shape = (height, width, channels) if channels > 1 else (height, width)
    return np.frombuffer(raster, dtype=np.uint8).reshape(shape), maxval


def read_pgm(data: bytes) -> ImageGray:
    """Parse a binary PGM (P5) byte string."""
    if data[:2] != b"P5":
        raise BadSignature(f"not a binary PGM: signature {data[:2]!r}")
    pixels, maxval = _read_raster(data, 1)
    if maxval != 255:
        # rescale to the full 8-bit range so every image shares L = 255
        pixels = np.floor(pixels.astype(np.float64) * 255.0 / maxval + 0.5).astype(np.uint8)
    return ImageGray(pixels)


def read_pnm(data: bytes) -> ImageGray:
    """P5 natively; P6 colour converted to gray with Rec. 601 luma."""
    signature = data[:2]
    if signature == b"P5":
        return read_pgm(data)
    if signature == b"P6":
        from image_io.conversion import rgb_to_gray
        rgb, maxval = _read_raster(data, 3)
        if maxval != 255:
            rgb = np.floor(rgb.astype(np.float64) * 255.0 / maxval + 0.5).astype(np.uint8)
        return ImageGray(rgb_to_gray(rgb))
    raise BadSignature(f"unsupported PNM signature {signature!r} (only P5 and P6)")


def write_pgm(img: ImageGray) -> bytes:
    """Serialise as "P5\\n{width} {height}\\n255\\n" followed by raw pixels."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def load_image(path: Union[str, Path]) -> ImageGray:
    data = Path(path).read_bytes()
    img = read_pnm(data)
    logger.info("read %s (%dx%d)", path, img.width, img.height)
    return img


def save_image(img: ImageGray, path: Union[str, Path]) -> None:
    Path(path).write_bytes(write_pgm(img))
    logger.info("wrote %s (%dx%d)", path, img.width, img.height)
